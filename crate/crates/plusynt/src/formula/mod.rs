//! Finite-trace formulas, their quantified combinations, and traces.
//!
//! Two dialects of finite-trace formulas are supported: future-only
//! (`X`, `X[!]`, `F`, `G`, `U`, `R`) and pure-past (`Y`, `Y[!]`, `O`,
//! `H`, `S`). The specification level combines quantified atoms
//! `E[..]`, `A[..]`, `AE[..]`, `EA[..]` with Boolean connectives.

mod eval;
mod parser;
mod pnf;

pub mod lasso;

pub use parser::{parse_plus, parse_trace_formula};

use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

/// Which finite-trace dialect a formula belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dialect {
    Ltlf,
    Ppltl,
}

/// A finite-trace formula. Future and past operators share one AST; the
/// dialect invariants are enforced by the parser and checked by
/// [`TraceFormula::check_dialect`].
///
/// `X` is weak next and `X[!]` strong next; `Y` is weak yesterday and
/// `Y[!]` strong yesterday. `last` and `first` are expanded at
/// construction time.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TraceFormula {
    True,
    False,
    Prop(String),
    Not(Box<TraceFormula>),
    And(Box<TraceFormula>, Box<TraceFormula>),
    Or(Box<TraceFormula>, Box<TraceFormula>),
    WeakNext(Box<TraceFormula>),
    StrongNext(Box<TraceFormula>),
    Eventually(Box<TraceFormula>),
    Always(Box<TraceFormula>),
    Until(Box<TraceFormula>, Box<TraceFormula>),
    Release(Box<TraceFormula>, Box<TraceFormula>),
    WeakYesterday(Box<TraceFormula>),
    StrongYesterday(Box<TraceFormula>),
    Once(Box<TraceFormula>),
    Historically(Box<TraceFormula>),
    Since(Box<TraceFormula>, Box<TraceFormula>),
}

impl TraceFormula {
    pub fn not(self) -> Self {
        TraceFormula::Not(Box::new(self))
    }

    pub fn and(self, rhs: Self) -> Self {
        TraceFormula::And(Box::new(self), Box::new(rhs))
    }

    pub fn or(self, rhs: Self) -> Self {
        TraceFormula::Or(Box::new(self), Box::new(rhs))
    }

    pub fn implies(self, rhs: Self) -> Self {
        self.not().or(rhs)
    }

    pub fn prop(name: &str) -> Self {
        TraceFormula::Prop(name.to_string())
    }

    /// `last = ¬X[!] true`: satisfied exactly at the final position.
    pub fn last() -> Self {
        TraceFormula::StrongNext(Box::new(TraceFormula::True)).not()
    }

    /// `first = Y false = ¬Y[!] true`: satisfied exactly at position 0.
    pub fn first() -> Self {
        TraceFormula::StrongYesterday(Box::new(TraceFormula::True)).not()
    }

    pub fn uses_future(&self) -> bool {
        use TraceFormula::*;
        match self {
            WeakNext(_) | StrongNext(_) | Eventually(_) | Always(_) | Until(..) | Release(..) => true,
            True | False | Prop(_) => false,
            Not(a) | Once(a) | Historically(a) | WeakYesterday(a) | StrongYesterday(a) => a.uses_future(),
            And(a, b) | Or(a, b) | Since(a, b) => a.uses_future() || b.uses_future(),
        }
    }

    pub fn uses_past(&self) -> bool {
        use TraceFormula::*;
        match self {
            WeakYesterday(_) | StrongYesterday(_) | Once(_) | Historically(_) | Since(..) => true,
            True | False | Prop(_) => false,
            Not(a) | Eventually(a) | Always(a) | WeakNext(a) | StrongNext(a) => a.uses_past(),
            And(a, b) | Or(a, b) | Until(a, b) | Release(a, b) => a.uses_past() || b.uses_past(),
        }
    }

    /// Checks the dialect invariant: an `ltlf` formula contains no past
    /// operators, a `ppltl` formula no future operators.
    pub fn check_dialect(&self, dialect: Dialect) -> Result<()> {
        match dialect {
            Dialect::Ltlf if self.uses_past() => {
                Err(Error::MixedDialect("past operator inside an ltlf body".into()))
            }
            Dialect::Ppltl if self.uses_future() => {
                Err(Error::MixedDialect("future operator inside a ppltl body".into()))
            }
            _ => Ok(()),
        }
    }

    /// Collects the propositions of the formula into `out`, deduplicated.
    pub fn collect_props(&self, out: &mut Vec<String>) {
        use TraceFormula::*;
        match self {
            Prop(p) => {
                if !out.iter().any(|q| q == p) {
                    out.push(p.clone());
                }
            }
            True | False => {}
            Not(a) | WeakNext(a) | StrongNext(a) | Eventually(a) | Always(a) | WeakYesterday(a)
            | StrongYesterday(a) | Once(a) | Historically(a) => a.collect_props(out),
            And(a, b) | Or(a, b) | Until(a, b) | Release(a, b) | Since(a, b) => {
                a.collect_props(out);
                b.collect_props(out);
            }
        }
    }
}

fn fmt_trace(f: &mut fmt::Formatter<'_>, phi: &TraceFormula, prec: u8) -> fmt::Result {
    use TraceFormula::*;
    // precedence: 0 or, 1 and, 2 until-family, 3 unary, 4 primary
    let (my, s): (u8, String) = match phi {
        True => (4, "true".into()),
        False => (4, "false".into()),
        Prop(p) => (4, p.clone()),
        Not(_) | WeakNext(_) | StrongNext(_) | Eventually(_) | Always(_) | WeakYesterday(_)
        | StrongYesterday(_) | Once(_) | Historically(_) => (3, String::new()),
        Until(..) | Release(..) | Since(..) => (2, String::new()),
        And(..) => (1, String::new()),
        Or(..) => (0, String::new()),
    };
    let paren = my < prec;
    if paren {
        write!(f, "(")?;
    }
    match phi {
        True | False | Prop(_) => write!(f, "{s}")?,
        Not(a) => {
            write!(f, "!")?;
            fmt_trace(f, a, 4)?;
        }
        WeakNext(a) => {
            write!(f, "X ")?;
            fmt_trace(f, a, 3)?;
        }
        StrongNext(a) => {
            write!(f, "X[!] ")?;
            fmt_trace(f, a, 3)?;
        }
        Eventually(a) => {
            write!(f, "F ")?;
            fmt_trace(f, a, 3)?;
        }
        Always(a) => {
            write!(f, "G ")?;
            fmt_trace(f, a, 3)?;
        }
        WeakYesterday(a) => {
            write!(f, "Y ")?;
            fmt_trace(f, a, 3)?;
        }
        StrongYesterday(a) => {
            write!(f, "Y[!] ")?;
            fmt_trace(f, a, 3)?;
        }
        Once(a) => {
            write!(f, "O ")?;
            fmt_trace(f, a, 3)?;
        }
        Historically(a) => {
            write!(f, "H ")?;
            fmt_trace(f, a, 3)?;
        }
        Until(a, b) => {
            fmt_trace(f, a, 3)?;
            write!(f, " U ")?;
            fmt_trace(f, b, 2)?;
        }
        Release(a, b) => {
            fmt_trace(f, a, 3)?;
            write!(f, " R ")?;
            fmt_trace(f, b, 2)?;
        }
        Since(a, b) => {
            fmt_trace(f, a, 3)?;
            write!(f, " S ")?;
            fmt_trace(f, b, 2)?;
        }
        And(a, b) => {
            fmt_trace(f, a, 2)?;
            write!(f, " && ")?;
            fmt_trace(f, b, 1)?;
        }
        Or(a, b) => {
            fmt_trace(f, a, 1)?;
            write!(f, " || ")?;
            fmt_trace(f, b, 0)?;
        }
    }
    if paren {
        write!(f, ")")?;
    }
    Ok(())
}

impl fmt::Display for TraceFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_trace(f, self, 0)
    }
}

/// Prefix quantifier of an atom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantifier {
    /// `E[..]`: some nonempty finite prefix satisfies the body.
    Exists,
    /// `A[..]`: every nonempty finite prefix satisfies the body.
    Forall,
    /// `AE[..]`: infinitely many prefixes satisfy the body.
    ForallExists,
    /// `EA[..]`: all but finitely many prefixes satisfy the body.
    ExistsForall,
}

impl Quantifier {
    pub fn keyword(self) -> &'static str {
        match self {
            Quantifier::Exists => "E",
            Quantifier::Forall => "A",
            Quantifier::ForallExists => "AE",
            Quantifier::ExistsForall => "EA",
        }
    }

    /// Dual under negation: `!E[p] = A[!p]`, `!AE[p] = EA[!p]`, etc.
    pub fn dual(self) -> Self {
        match self {
            Quantifier::Exists => Quantifier::Forall,
            Quantifier::Forall => Quantifier::Exists,
            Quantifier::ForallExists => Quantifier::ExistsForall,
            Quantifier::ExistsForall => Quantifier::ForallExists,
        }
    }

    /// Guarantee and safety atoms become local events of the game
    /// objective; recurrence and persistence atoms stay Emerson-Lei.
    pub fn is_local(self) -> bool {
        matches!(self, Quantifier::Exists | Quantifier::Forall)
    }
}

/// A Boolean combination of quantified finite-trace atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlusFormula {
    True,
    False,
    Atom(Quantifier, TraceFormula),
    Not(Box<PlusFormula>),
    And(Box<PlusFormula>, Box<PlusFormula>),
    Or(Box<PlusFormula>, Box<PlusFormula>),
}

impl PlusFormula {
    pub fn atom(q: Quantifier, body: TraceFormula) -> Self {
        PlusFormula::Atom(q, body)
    }

    pub fn not(self) -> Self {
        PlusFormula::Not(Box::new(self))
    }

    pub fn and(self, rhs: Self) -> Self {
        PlusFormula::And(Box::new(self), Box::new(rhs))
    }

    pub fn or(self, rhs: Self) -> Self {
        PlusFormula::Or(Box::new(self), Box::new(rhs))
    }

    pub fn implies(self, rhs: Self) -> Self {
        self.not().or(rhs)
    }

    /// Conjunction of a nonempty list.
    pub fn conj(mut parts: Vec<PlusFormula>) -> Self {
        let mut acc = parts.pop().expect("conj of empty list");
        while let Some(p) = parts.pop() {
            acc = p.and(acc);
        }
        acc
    }

    pub fn contains_negation(&self) -> bool {
        match self {
            PlusFormula::Not(_) => true,
            PlusFormula::And(a, b) | PlusFormula::Or(a, b) => {
                a.contains_negation() || b.contains_negation()
            }
            _ => false,
        }
    }

    /// Atoms in left-to-right order. Indices into this list name the
    /// objective events of the induced game.
    pub fn atoms(&self) -> Vec<(Quantifier, &TraceFormula)> {
        let mut out = Vec::new();
        self.walk_atoms(&mut out);
        out
    }

    fn walk_atoms<'a>(&'a self, out: &mut Vec<(Quantifier, &'a TraceFormula)>) {
        match self {
            PlusFormula::Atom(q, body) => out.push((*q, body)),
            PlusFormula::Not(a) => a.walk_atoms(out),
            PlusFormula::And(a, b) | PlusFormula::Or(a, b) => {
                a.walk_atoms(out);
                b.walk_atoms(out);
            }
            PlusFormula::True | PlusFormula::False => {}
        }
    }

    /// The shared dialect of all atom bodies. Bodies without temporal
    /// operators fit either dialect.
    pub fn dialect(&self) -> Result<Dialect> {
        let mut future = false;
        let mut past = false;
        for (_, body) in self.atoms() {
            future |= body.uses_future();
            past |= body.uses_past();
        }
        if future && past {
            return Err(Error::MixedDialect("formula mixes future and past atom bodies".into()));
        }
        Ok(if past { Dialect::Ppltl } else { Dialect::Ltlf })
    }

    pub fn collect_props(&self, out: &mut Vec<String>) {
        match self {
            PlusFormula::Atom(_, body) => body.collect_props(out),
            PlusFormula::Not(a) => a.collect_props(out),
            PlusFormula::And(a, b) | PlusFormula::Or(a, b) => {
                a.collect_props(out);
                b.collect_props(out);
            }
            PlusFormula::True | PlusFormula::False => {}
        }
    }

    pub fn props(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_props(&mut out);
        out
    }
}

fn fmt_plus(f: &mut fmt::Formatter<'_>, psi: &PlusFormula, prec: u8) -> fmt::Result {
    // precedence: 0 or, 1 and, 2 unary, 3 primary
    let my: u8 = match psi {
        PlusFormula::True | PlusFormula::False | PlusFormula::Atom(..) => 3,
        PlusFormula::Not(_) => 2,
        PlusFormula::And(..) => 1,
        PlusFormula::Or(..) => 0,
    };
    let paren = my < prec;
    if paren {
        write!(f, "(")?;
    }
    match psi {
        PlusFormula::True => write!(f, "true")?,
        PlusFormula::False => write!(f, "false")?,
        PlusFormula::Atom(q, body) => write!(f, "{}[{}]", q.keyword(), body)?,
        PlusFormula::Not(a) => {
            write!(f, "!")?;
            fmt_plus(f, a, 3)?;
        }
        PlusFormula::And(a, b) => {
            fmt_plus(f, a, 2)?;
            write!(f, " && ")?;
            fmt_plus(f, b, 1)?;
        }
        PlusFormula::Or(a, b) => {
            fmt_plus(f, a, 1)?;
            write!(f, " || ")?;
            fmt_plus(f, b, 0)?;
        }
    }
    if paren {
        write!(f, ")")?;
    }
    Ok(())
}

impl fmt::Display for PlusFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_plus(f, self, 0)
    }
}

/// An ordered set of atomic propositions. A letter is the bitmask of the
/// propositions it contains, so the alphabet `2^AP` has `1 << len()`
/// letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    props: Vec<String>,
}

pub type Letter = u32;

impl Alphabet {
    pub fn new(props: Vec<String>) -> Self {
        Alphabet { props }
    }

    pub fn from_names(names: &[&str]) -> Arc<Self> {
        Arc::new(Alphabet::new(names.iter().map(|s| s.to_string()).collect()))
    }

    pub fn len(&self) -> usize {
        self.props.len()
    }

    pub fn is_empty(&self) -> bool {
        self.props.is_empty()
    }

    pub fn props(&self) -> &[String] {
        &self.props
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.props.iter().position(|p| p == name)
    }

    pub fn letter_count(&self) -> usize {
        1usize << self.props.len()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        0..self.letter_count() as Letter
    }

    pub fn letter_from_names(&self, names: &[&str]) -> Letter {
        let mut l = 0;
        for n in names {
            let i = self.index_of(n).unwrap_or_else(|| panic!("undeclared proposition {n}"));
            l |= 1 << i;
        }
        l
    }

    pub fn letter_display(&self, letter: Letter) -> String {
        let names: Vec<&str> = self
            .props
            .iter()
            .enumerate()
            .filter(|(i, _)| letter >> i & 1 == 1)
            .map(|(_, p)| p.as_str())
            .collect();
        format!("{{{}}}", names.join(","))
    }
}

/// A finite trace: a nonempty (for evaluation) sequence of letters over a
/// fixed alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub alphabet: Arc<Alphabet>,
    pub letters: Vec<Letter>,
}

impl Trace {
    pub fn new(alphabet: Arc<Alphabet>, letters: Vec<Letter>) -> Self {
        Trace { alphabet, letters }
    }

    /// Builds a trace from per-position proposition names; for tests.
    pub fn from_names(alphabet: &Arc<Alphabet>, positions: &[&[&str]]) -> Self {
        let letters = positions.iter().map(|names| alphabet.letter_from_names(names)).collect();
        Trace::new(alphabet.clone(), letters)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}
