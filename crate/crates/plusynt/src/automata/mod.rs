//! Explicit-state automata over `2^AP`.
//!
//! Letters are proposition bitmasks, transitions are letter-indexed
//! arrays, accepting sets are boolean vectors. The alphabet is enumerated
//! explicitly; the proposition count per automaton is capped by
//! [`crate::Budget::ap_cap`].

mod determinize;
mod ltlf_to_nfa;
mod minimize;
mod ppltl_to_dfa;
mod transform;

pub use determinize::determinize;
pub use ltlf_to_nfa::ltlf_to_nfa;
pub use minimize::minimize;
pub use ppltl_to_dfa::ppltl_to_dfa;
pub use transform::{fresh_initial, sinkify};

use std::sync::Arc;

use crate::formula::{Alphabet, Letter, Quantifier, Trace, TraceFormula};
use crate::{Budget, Error, Result};

/// Nondeterministic finite automaton.
#[derive(Debug, Clone)]
pub struct Nfa {
    pub alphabet: Arc<Alphabet>,
    /// `transitions[q][a]` lists the successors of `q` under letter `a`.
    pub transitions: Vec<Vec<Vec<u32>>>,
    pub initial: Vec<u32>,
    pub accepting: Vec<bool>,
}

impl Nfa {
    pub fn state_count(&self) -> usize {
        self.transitions.len()
    }

    /// Nonempty-word acceptance by explicit subset simulation.
    pub fn accepts(&self, trace: &Trace) -> bool {
        let mut current: Vec<u32> = self.initial.clone();
        if trace.is_empty() {
            return false;
        }
        for &letter in &trace.letters {
            let mut next: Vec<u32> = Vec::new();
            for &q in &current {
                for &q2 in &self.transitions[q as usize][letter as usize] {
                    if !next.contains(&q2) {
                        next.push(q2);
                    }
                }
            }
            current = next;
        }
        current.iter().any(|&q| self.accepting[q as usize])
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph nfa {\n  rankdir=LR;\n  init [shape=point];\n");
        for q in 0..self.state_count() {
            let shape = if self.accepting[q] { "doublecircle" } else { "circle" };
            out.push_str(&format!("  q{q} [shape={shape}];\n"));
        }
        for &q in &self.initial {
            out.push_str(&format!("  init -> q{q};\n"));
        }
        for (q, rows) in self.transitions.iter().enumerate() {
            for (a, succs) in rows.iter().enumerate() {
                for &q2 in succs {
                    out.push_str(&format!(
                        "  q{q} -> q{q2} [label=\"{}\"];\n",
                        self.alphabet.letter_display(a as Letter)
                    ));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Sink-state transformation applied to a DFA, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sinkified {
    None,
    /// Accepting states are accepting self-loop sinks.
    Exists,
    /// Non-accepting states are non-accepting self-loop sinks.
    Forall,
}

/// Complete deterministic finite automaton.
#[derive(Debug, Clone)]
pub struct Dfa {
    pub alphabet: Arc<Alphabet>,
    /// `delta[q][a]` is the unique successor; total by construction.
    pub delta: Vec<Vec<u32>>,
    pub initial: u32,
    pub accepting: Vec<bool>,
    /// The initial state has no incoming transitions.
    pub has_fresh_initial: bool,
    pub sinkified: Sinkified,
}

impl Dfa {
    pub fn state_count(&self) -> usize {
        self.delta.len()
    }

    pub fn step(&self, q: u32, letter: Letter) -> u32 {
        self.delta[q as usize][letter as usize]
    }

    /// State reached after reading the whole trace from the initial state.
    pub fn run(&self, trace: &Trace) -> u32 {
        trace.letters.iter().fold(self.initial, |q, &a| self.step(q, a))
    }

    pub fn accepts(&self, trace: &Trace) -> bool {
        if trace.is_empty() {
            return false;
        }
        self.accepting[self.run(trace) as usize]
    }

    /// Whether `self` and `other` accept the same nonempty words, by
    /// product reachability. Intended for tests and small automata.
    pub fn language_equal(&self, other: &Dfa) -> bool {
        assert_eq!(self.alphabet, other.alphabet);
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![(self.initial, other.initial)];
        seen.insert((self.initial, other.initial));
        while let Some((p, q)) = stack.pop() {
            for a in self.alphabet.letters() {
                let pair = (self.step(p, a), other.step(q, a));
                if self.accepting[pair.0 as usize] != other.accepting[pair.1 as usize] {
                    return false;
                }
                if seen.insert(pair) {
                    stack.push(pair);
                }
            }
        }
        true
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph dfa {\n  rankdir=LR;\n  init [shape=point];\n");
        for q in 0..self.state_count() {
            let shape = if self.accepting[q] { "doublecircle" } else { "circle" };
            out.push_str(&format!("  q{q} [shape={shape}];\n"));
        }
        out.push_str(&format!("  init -> q{};\n", self.initial));
        for (q, row) in self.delta.iter().enumerate() {
            for (a, &q2) in row.iter().enumerate() {
                out.push_str(&format!(
                    "  q{q} -> q{q2} [label=\"{}\"];\n",
                    self.alphabet.letter_display(a as Letter)
                ));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Builds the minimized DFA of a finite-trace formula in either dialect.
pub fn formula_to_dfa(phi: &TraceFormula, alphabet: &Arc<Alphabet>, budget: &Budget) -> Result<Dfa> {
    if alphabet.len() > budget.ap_cap {
        return Err(Error::precondition(format!(
            "alphabet has {} propositions, cap is {}",
            alphabet.len(),
            budget.ap_cap
        )));
    }
    let dfa = if phi.uses_past() {
        ppltl_to_dfa(phi, alphabet, budget)?
    } else {
        let nfa = ltlf_to_nfa(phi, alphabet, budget)?;
        determinize(&nfa, budget)?
    };
    Ok(minimize(&dfa))
}

/// Step 1 tailoring of a component DFA for its quantifier: fresh initial
/// state, initial-acceptance flip, and (when `sink` is set) the sink
/// transformation that freezes guarantee/safety progress.
pub fn tailor_for_quantifier(dfa: &Dfa, quantifier: Quantifier, sink: bool) -> Dfa {
    let mut d = fresh_initial(dfa);
    match quantifier {
        Quantifier::Forall => {
            d.accepting[d.initial as usize] = true;
            if sink {
                d = sinkify(&d, Quantifier::Forall).expect("fresh initial is guaranteed");
            }
        }
        Quantifier::Exists => {
            d.accepting[d.initial as usize] = false;
            if sink {
                d = sinkify(&d, Quantifier::Exists).expect("fresh initial is guaranteed");
            }
        }
        Quantifier::ForallExists | Quantifier::ExistsForall => {}
    }
    d
}
