//! Emerson-Lei and Manna-Pnueli objective formulas.
//!
//! An objective is a positive Boolean formula over temporal atoms about
//! event literals: `GF`/`FG` atoms are the Emerson-Lei core, `F`/`G`
//! atoms add prefix-dependent guarantee/safety obligations over local
//! events. A complemented literal `!e` holds at a node iff `e` is not in
//! its label.

use std::fmt;

use crate::formula::{PlusFormula, Quantifier};
use crate::game::ColorSet;
use crate::{Error, Result};

/// Bitmask over objective events (event id = bit position).
pub type EventSet = u32;

/// An event or its complement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub event: u16,
    pub positive: bool,
}

impl Literal {
    pub fn pos(event: u16) -> Self {
        Literal { event, positive: true }
    }

    pub fn neg(event: u16) -> Self {
        Literal { event, positive: false }
    }

    pub fn complement(self) -> Self {
        Literal { event: self.event, positive: !self.positive }
    }

    /// Truth at a node labeled `gamma`.
    pub fn holds_at(self, gamma: EventSet) -> bool {
        (gamma >> self.event & 1 == 1) == self.positive
    }
}

/// Temporal shape of an atom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AtomOp {
    /// `GF l`: infinitely often.
    InfOften,
    /// `FG l`: eventually always.
    EvAlways,
    /// `F l`: at least once (local).
    Once,
    /// `G l`: always (local).
    Always,
}

impl AtomOp {
    pub fn is_local(self) -> bool {
        matches!(self, AtomOp::Once | AtomOp::Always)
    }

    fn display(self) -> &'static str {
        match self {
            AtomOp::InfOften => "GF",
            AtomOp::EvAlways => "FG",
            AtomOp::Once => "F",
            AtomOp::Always => "G",
        }
    }
}

/// Positive Boolean objective formula; built through the smart
/// constructors, which flatten nested connectives and fold constants.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ObjFormula {
    True,
    False,
    Atom(AtomOp, Literal),
    And(Vec<ObjFormula>),
    Or(Vec<ObjFormula>),
}

impl ObjFormula {
    pub fn gf(l: Literal) -> Self {
        ObjFormula::Atom(AtomOp::InfOften, l)
    }

    pub fn fg(l: Literal) -> Self {
        ObjFormula::Atom(AtomOp::EvAlways, l)
    }

    pub fn f(l: Literal) -> Self {
        ObjFormula::Atom(AtomOp::Once, l)
    }

    pub fn g(l: Literal) -> Self {
        ObjFormula::Atom(AtomOp::Always, l)
    }

    pub fn and(parts: Vec<ObjFormula>) -> Self {
        let mut flat = Vec::new();
        for p in parts {
            match p {
                ObjFormula::True => {}
                ObjFormula::False => return ObjFormula::False,
                ObjFormula::And(inner) => flat.extend(inner),
                other => {
                    if !flat.contains(&other) {
                        flat.push(other);
                    }
                }
            }
        }
        match flat.len() {
            0 => ObjFormula::True,
            1 => flat.pop().unwrap(),
            _ => ObjFormula::And(flat),
        }
    }

    pub fn or(parts: Vec<ObjFormula>) -> Self {
        let mut flat = Vec::new();
        for p in parts {
            match p {
                ObjFormula::False => {}
                ObjFormula::True => return ObjFormula::True,
                ObjFormula::Or(inner) => flat.extend(inner),
                other => {
                    if !flat.contains(&other) {
                        flat.push(other);
                    }
                }
            }
        }
        match flat.len() {
            0 => ObjFormula::False,
            1 => flat.pop().unwrap(),
            _ => ObjFormula::Or(flat),
        }
    }

    pub fn is_el(&self) -> bool {
        match self {
            ObjFormula::True | ObjFormula::False => true,
            ObjFormula::Atom(op, _) => !op.is_local(),
            ObjFormula::And(ps) | ObjFormula::Or(ps) => ps.iter().all(|p| p.is_el()),
        }
    }

    pub fn atoms(&self) -> Vec<(AtomOp, Literal)> {
        let mut out = Vec::new();
        self.walk(&mut |op, l| {
            if !out.contains(&(op, l)) {
                out.push((op, l));
            }
        });
        out
    }

    fn walk(&self, f: &mut impl FnMut(AtomOp, Literal)) {
        match self {
            ObjFormula::Atom(op, l) => f(*op, *l),
            ObjFormula::And(ps) | ObjFormula::Or(ps) => {
                for p in ps {
                    p.walk(f);
                }
            }
            _ => {}
        }
    }

    /// Events used by local (`F`/`G`) atoms, split by operator.
    pub fn local_events(&self) -> (EventSet, EventSet) {
        let mut once = 0;
        let mut always = 0;
        self.walk(&mut |op, l| match op {
            AtomOp::Once => once |= 1 << l.event,
            AtomOp::Always => always |= 1 << l.event,
            _ => {}
        });
        (once, always)
    }

    /// Events used by `GF`/`FG` atoms.
    pub fn el_events(&self) -> EventSet {
        let mut set = 0;
        self.walk(&mut |op, l| {
            if !op.is_local() {
                set |= 1 << l.event;
            }
        });
        set
    }

    /// Dual formula: `eval(negate(phi))` is the complement of
    /// `eval(phi)` on every infinite play.
    pub fn negate(&self) -> ObjFormula {
        match self {
            ObjFormula::True => ObjFormula::False,
            ObjFormula::False => ObjFormula::True,
            ObjFormula::Atom(op, l) => {
                let dual = match op {
                    AtomOp::InfOften => AtomOp::EvAlways,
                    AtomOp::EvAlways => AtomOp::InfOften,
                    AtomOp::Once => AtomOp::Always,
                    AtomOp::Always => AtomOp::Once,
                };
                ObjFormula::Atom(dual, l.complement())
            }
            ObjFormula::And(ps) => ObjFormula::or(ps.iter().map(|p| p.negate()).collect()),
            ObjFormula::Or(ps) => ObjFormula::and(ps.iter().map(|p| p.negate()).collect()),
        }
    }

    /// Evaluates local atoms against the memory value `locals`:
    /// `F e`/`G e` become true iff `e ∈ locals`. The result is an
    /// Emerson-Lei formula, constant-folded.
    pub fn partial_eval(&self, locals: EventSet) -> ObjFormula {
        match self {
            ObjFormula::Atom(op, l) if op.is_local() => {
                debug_assert!(l.positive, "local atoms use plain events");
                if locals >> l.event & 1 == 1 {
                    ObjFormula::True
                } else {
                    ObjFormula::False
                }
            }
            ObjFormula::And(ps) => ObjFormula::and(ps.iter().map(|p| p.partial_eval(locals)).collect()),
            ObjFormula::Or(ps) => ObjFormula::or(ps.iter().map(|p| p.partial_eval(locals)).collect()),
            other => other.clone(),
        }
    }

    /// Replaces every local `F`/`G` atom with `GF` over the same event,
    /// sound on arenas carrying local-event memory.
    pub fn locals_to_el(&self) -> ObjFormula {
        match self {
            ObjFormula::Atom(op, l) if op.is_local() => ObjFormula::gf(*l),
            ObjFormula::And(ps) => ObjFormula::and(ps.iter().map(|p| p.locals_to_el()).collect()),
            ObjFormula::Or(ps) => ObjFormula::or(ps.iter().map(|p| p.locals_to_el()).collect()),
            other => other.clone(),
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, prec: u8, events: Option<&[String]>) -> fmt::Result {
        let name = |l: &Literal| -> String {
            let base = match events {
                Some(names) => names[l.event as usize].clone(),
                None => format!("{}", l.event),
            };
            if l.positive {
                base
            } else {
                format!("!{base}")
            }
        };
        match self {
            ObjFormula::True => write!(f, "true"),
            ObjFormula::False => write!(f, "false"),
            ObjFormula::Atom(op, l) => write!(f, "{} {}", op.display(), name(l)),
            ObjFormula::And(ps) => {
                let paren = prec > 1;
                if paren {
                    write!(f, "(")?;
                }
                for (i, p) in ps.iter().enumerate() {
                    if i > 0 {
                        write!(f, " & ")?;
                    }
                    p.fmt_prec(f, 2, events)?;
                }
                if paren {
                    write!(f, ")")
                } else {
                    Ok(())
                }
            }
            ObjFormula::Or(ps) => {
                let paren = prec > 0;
                if paren {
                    write!(f, "(")?;
                }
                for (i, p) in ps.iter().enumerate() {
                    if i > 0 {
                        write!(f, " | ")?;
                    }
                    p.fmt_prec(f, 1, events)?;
                }
                if paren {
                    write!(f, ")")
                } else {
                    Ok(())
                }
            }
        }
    }
}

impl fmt::Display for ObjFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0, None)
    }
}

/// An objective: named events plus the formula over them. Node labelings
/// `γ` live with the arenas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Objective {
    pub events: Vec<String>,
    pub formula: ObjFormula,
}

impl Objective {
    pub fn new(events: Vec<String>, formula: ObjFormula) -> Self {
        Objective { events, formula }
    }

    pub fn event_count(&self) -> usize {
        self.events.len()
    }

    pub fn event_id(&self, name: &str) -> Option<u16> {
        self.events.iter().position(|e| e == name).map(|i| i as u16)
    }

    pub fn display_formula(&self) -> String {
        struct D<'a>(&'a Objective);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.formula.fmt_prec(f, 0, Some(&self.0.events))
            }
        }
        format!("{}", D(self))
    }

    pub fn negate(&self) -> Objective {
        Objective { events: self.events.clone(), formula: self.formula.negate() }
    }

    /// Truth of the objective on the lasso `stem · cycle^ω`, from the
    /// node labels alone. The play-level oracle for all solvers.
    pub fn eval_on_lasso(
        &self,
        gamma: &dyn Fn(u32) -> EventSet,
        stem: &[u32],
        cycle: &[u32],
    ) -> Result<bool> {
        if cycle.is_empty() {
            return Err(Error::malformed("lasso", "empty cycle"));
        }
        Ok(eval_formula_on_lasso(&self.formula, gamma, stem, cycle))
    }
}

fn eval_formula_on_lasso(
    phi: &ObjFormula,
    gamma: &dyn Fn(u32) -> EventSet,
    stem: &[u32],
    cycle: &[u32],
) -> bool {
    match phi {
        ObjFormula::True => true,
        ObjFormula::False => false,
        ObjFormula::And(ps) => ps.iter().all(|p| eval_formula_on_lasso(p, gamma, stem, cycle)),
        ObjFormula::Or(ps) => ps.iter().any(|p| eval_formula_on_lasso(p, gamma, stem, cycle)),
        ObjFormula::Atom(op, l) => match op {
            AtomOp::InfOften => cycle.iter().any(|&v| l.holds_at(gamma(v))),
            AtomOp::EvAlways => cycle.iter().all(|&v| l.holds_at(gamma(v))),
            AtomOp::Once => stem.iter().chain(cycle).any(|&v| l.holds_at(gamma(v))),
            AtomOp::Always => stem.iter().chain(cycle).all(|&v| l.holds_at(gamma(v))),
        },
    }
}

/// How quantified atoms are mapped onto objective atoms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObjectiveMode {
    /// Guarantee and safety are reduced to recurrence: every quantifier
    /// except `EA` becomes `GF`.
    El,
    /// Native mapping: `E -> F`, `A -> G`, `AE -> GF`, `EA -> FG`.
    Mp,
}

/// Builds the game objective of a positive-normal-form specification:
/// event `i` names atom `i`, and the Boolean skeleton is preserved.
pub fn objective_from_plus(psi: &PlusFormula, mode: ObjectiveMode) -> Result<Objective> {
    if !psi.is_pnf() {
        return Err(Error::precondition("objective_from_plus requires positive normal form"));
    }
    let atoms = psi.atoms();
    let events: Vec<String> = (1..=atoms.len()).map(|i| i.to_string()).collect();
    let mut next = 0u16;
    let formula = build_obj(psi, mode, &mut next);
    Ok(Objective { events, formula })
}

fn build_obj(psi: &PlusFormula, mode: ObjectiveMode, next: &mut u16) -> ObjFormula {
    match psi {
        PlusFormula::True => ObjFormula::True,
        PlusFormula::False => ObjFormula::False,
        PlusFormula::Not(_) => unreachable!("checked PNF"),
        PlusFormula::And(a, b) => {
            let fa = build_obj(a, mode, next);
            let fb = build_obj(b, mode, next);
            ObjFormula::and(vec![fa, fb])
        }
        PlusFormula::Or(a, b) => {
            let fa = build_obj(a, mode, next);
            let fb = build_obj(b, mode, next);
            ObjFormula::or(vec![fa, fb])
        }
        PlusFormula::Atom(q, _) => {
            let lit = Literal::pos(*next);
            *next += 1;
            match (mode, q) {
                (ObjectiveMode::El, Quantifier::ExistsForall) => ObjFormula::fg(lit),
                (ObjectiveMode::El, _) => ObjFormula::gf(lit),
                (ObjectiveMode::Mp, Quantifier::Exists) => ObjFormula::f(lit),
                (ObjectiveMode::Mp, Quantifier::Forall) => ObjFormula::g(lit),
                (ObjectiveMode::Mp, Quantifier::ForallExists) => ObjFormula::gf(lit),
                (ObjectiveMode::Mp, Quantifier::ExistsForall) => ObjFormula::fg(lit),
            }
        }
    }
}

/// The monolithic Emerson-Lei reduction of an MP objective: local atoms
/// become `GF` atoms over the memory-bearing labeling.
pub fn el_reduction(objective: &Objective) -> Objective {
    Objective { events: objective.events.clone(), formula: objective.formula.locals_to_el() }
}

/// The color space of an Emerson-Lei formula: one color per atom
/// literal, `GF l` contributing `l` (tracked infinitely often) and
/// `FG l` contributing the complement (tracked finitely often). A set of
/// colors then decides the formula, which is what the Zielonka tree is
/// built over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorSpace {
    colors: Vec<Literal>,
}

impl ColorSpace {
    /// Colors needed by `phi`, in canonical (event, polarity) order,
    /// optionally seeded with extra plain events.
    pub fn for_formula(phi: &ObjFormula, extra_events: EventSet) -> Result<ColorSpace> {
        if !phi.is_el() {
            return Err(Error::precondition("color space is defined for EL formulas"));
        }
        let mut colors: Vec<Literal> = Vec::new();
        let mut add = |l: Literal| {
            if !colors.contains(&l) {
                colors.push(l);
            }
        };
        for e in 0..32u16 {
            if extra_events >> e & 1 == 1 {
                add(Literal::pos(e));
            }
        }
        phi.walk(&mut |op, l| match op {
            AtomOp::InfOften => add(l),
            AtomOp::EvAlways => add(l.complement()),
            _ => unreachable!("checked EL"),
        });
        colors.sort();
        Ok(ColorSpace { colors })
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn colors(&self) -> &[Literal] {
        &self.colors
    }

    pub fn full(&self) -> ColorSet {
        if self.colors.is_empty() {
            0
        } else {
            (1u32 << self.colors.len()) - 1
        }
    }

    fn index_of(&self, l: Literal) -> Option<usize> {
        self.colors.iter().position(|&c| c == l)
    }

    /// Colors shown by a node labeled `gamma`.
    pub fn colors_at(&self, gamma: EventSet) -> ColorSet {
        let mut set = 0;
        for (i, l) in self.colors.iter().enumerate() {
            if l.holds_at(gamma) {
                set |= 1 << i;
            }
        }
        set
    }

    /// Whether the set of infinitely recurring colors `delta` satisfies
    /// `phi`: `GF l` holds iff `l`'s color recurs, `FG l` iff the
    /// complement color does not.
    pub fn sat(&self, phi: &ObjFormula, delta: ColorSet) -> bool {
        match phi {
            ObjFormula::True => true,
            ObjFormula::False => false,
            ObjFormula::And(ps) => ps.iter().all(|p| self.sat(p, delta)),
            ObjFormula::Or(ps) => ps.iter().any(|p| self.sat(p, delta)),
            ObjFormula::Atom(op, l) => match op {
                AtomOp::InfOften => {
                    let i = self.index_of(*l).expect("color interned");
                    delta >> i & 1 == 1
                }
                AtomOp::EvAlways => {
                    let i = self.index_of(l.complement()).expect("color interned");
                    delta >> i & 1 == 0
                }
                _ => unreachable!("checked EL"),
            },
        }
    }

    /// Display of a color set in terms of literal names.
    pub fn set_display(&self, set: ColorSet, events: &[String]) -> String {
        let names: Vec<String> = self
            .colors
            .iter()
            .enumerate()
            .filter(|(i, _)| set >> i & 1 == 1)
            .map(|(_, l)| {
                let base = events
                    .get(l.event as usize)
                    .cloned()
                    .unwrap_or_else(|| l.event.to_string());
                if l.positive {
                    base
                } else {
                    format!("¬{base}")
                }
            })
            .collect();
        format!("{{{}}}", names.join(","))
    }
}
