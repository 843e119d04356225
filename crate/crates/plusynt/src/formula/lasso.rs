//! Ground-truth evaluation of specification formulas on ultimately
//! periodic traces.
//!
//! Each atom's DFA is run around the lasso; the quantifier is then a
//! question about which nonempty prefixes of `stem · cycle^ω` are
//! accepted, answered from the transient and periodic acceptance flags of
//! the induced run. This evaluator is the semantic oracle for the
//! normal-form rewriting and for all game-level constructions.

use std::sync::Arc;

use crate::automata::{formula_to_dfa, Dfa};
use crate::formula::{Alphabet, Letter, PlusFormula, Quantifier};
use crate::{Budget, Error, Result};

/// Evaluates specification formulas on lassos, caching one DFA per atom.
pub struct LassoEvaluator {
    psi: PlusFormula,
    alphabet: Arc<Alphabet>,
    atom_dfas: Vec<Dfa>,
}

impl LassoEvaluator {
    pub fn new(psi: &PlusFormula, alphabet: &Arc<Alphabet>, budget: &Budget) -> Result<Self> {
        let mut atom_dfas = Vec::new();
        for (_, body) in psi.atoms() {
            atom_dfas.push(formula_to_dfa(body, alphabet, budget)?);
        }
        Ok(LassoEvaluator { psi: psi.clone(), alphabet: alphabet.clone(), atom_dfas })
    }

    /// Truth of the formula on the infinite trace `stem · cycle^ω`.
    pub fn eval(&self, stem: &[Letter], cycle: &[Letter]) -> Result<bool> {
        if cycle.is_empty() {
            return Err(Error::precondition("lasso cycle must be nonempty"));
        }
        let mut atom_at = 0;
        Ok(self.eval_rec(&self.psi, stem, cycle, &mut atom_at))
    }

    fn eval_rec(&self, psi: &PlusFormula, stem: &[Letter], cycle: &[Letter], atom_at: &mut usize) -> bool {
        match psi {
            PlusFormula::True => true,
            PlusFormula::False => false,
            PlusFormula::Not(a) => !self.eval_rec(a, stem, cycle, atom_at),
            PlusFormula::And(a, b) => {
                let va = self.eval_rec(a, stem, cycle, atom_at);
                let vb = self.eval_rec(b, stem, cycle, atom_at);
                va && vb
            }
            PlusFormula::Or(a, b) => {
                let va = self.eval_rec(a, stem, cycle, atom_at);
                let vb = self.eval_rec(b, stem, cycle, atom_at);
                va || vb
            }
            PlusFormula::Atom(q, _) => {
                let dfa = &self.atom_dfas[*atom_at];
                *atom_at += 1;
                atom_on_lasso(dfa, *q, stem, cycle)
            }
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }
}

/// Decides `Q[body]` on the lasso from the acceptance flags of the DFA
/// run: the flags over one detected period answer the "infinitely many" /
/// "all but finitely many" questions, the transient flags the rest.
fn atom_on_lasso(dfa: &Dfa, quantifier: Quantifier, stem: &[Letter], cycle: &[Letter]) -> bool {
    let mut transient_flags = Vec::new();
    let mut state = dfa.initial;
    for &letter in stem {
        state = dfa.step(state, letter);
        transient_flags.push(dfa.accepting[state as usize]);
    }

    // unroll cycles until the state at a cycle boundary repeats
    let mut boundary_states = vec![state];
    let mut per_cycle_flags: Vec<Vec<bool>> = Vec::new();
    let (first, _repeat) = loop {
        let mut flags = Vec::with_capacity(cycle.len());
        for &letter in cycle {
            state = dfa.step(state, letter);
            flags.push(dfa.accepting[state as usize]);
        }
        per_cycle_flags.push(flags);
        if let Some(first) = boundary_states.iter().position(|&s| s == state) {
            break (first, boundary_states.len());
        }
        boundary_states.push(state);
    };

    // cycles before `first` are transient, the rest repeat forever
    for flags in &per_cycle_flags[..first] {
        transient_flags.extend_from_slice(flags);
    }
    let periodic_flags: Vec<bool> =
        per_cycle_flags[first..].iter().flatten().copied().collect();

    match quantifier {
        Quantifier::Exists => {
            transient_flags.iter().any(|&f| f) || periodic_flags.iter().any(|&f| f)
        }
        Quantifier::Forall => {
            transient_flags.iter().all(|&f| f) && periodic_flags.iter().all(|&f| f)
        }
        Quantifier::ForallExists => periodic_flags.iter().any(|&f| f),
        Quantifier::ExistsForall => periodic_flags.iter().all(|&f| f),
    }
}

/// One-shot convenience wrapper around [`LassoEvaluator`].
pub fn eval_plus_on_lasso(
    psi: &PlusFormula,
    alphabet: &Arc<Alphabet>,
    stem: &[Letter],
    cycle: &[Letter],
) -> Result<bool> {
    LassoEvaluator::new(psi, alphabet, &Budget::default())?.eval(stem, cycle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse_plus, Dialect};

    fn ae() -> Arc<Alphabet> {
        Alphabet::from_names(&["a"])
    }

    #[test]
    fn recurrence_of_final_a() {
        let psi = parse_plus("AE[F(a && X false)]", Dialect::Ltlf).unwrap();
        let alphabet = ae();
        // every prefix ends in a letter containing a
        assert!(eval_plus_on_lasso(&psi, &alphabet, &[], &[1]).unwrap());
        // alternating {a},{}: the a-ending prefixes still recur
        assert!(eval_plus_on_lasso(&psi, &alphabet, &[], &[1, 0]).unwrap());
        // a never occurs in the cycle, so only finitely many prefixes accept
        assert!(!eval_plus_on_lasso(&psi, &alphabet, &[1], &[0]).unwrap());
    }

    #[test]
    fn persistence_needs_cofinite_acceptance() {
        let psi = parse_plus("EA[F(a && X false)]", Dialect::Ltlf).unwrap();
        let alphabet = ae();
        assert!(eval_plus_on_lasso(&psi, &alphabet, &[0], &[1]).unwrap());
        assert!(!eval_plus_on_lasso(&psi, &alphabet, &[], &[1, 0]).unwrap());
    }

    #[test]
    fn exists_true_holds_everywhere() {
        let psi = parse_plus("E[true]", Dialect::Ltlf).unwrap();
        let alphabet = ae();
        assert!(eval_plus_on_lasso(&psi, &alphabet, &[], &[0]).unwrap());
        assert!(eval_plus_on_lasso(&psi, &alphabet, &[1, 0], &[0, 1, 0]).unwrap());
    }

    /// to_pnf preserves lasso truth, exhaustively at small bounds.
    #[test]
    fn pnf_preserves_lasso_truth_exhaustively() {
        let sources = [
            "!E[F a]",
            "!A[G a]",
            "!AE[F(a && X false)]",
            "!EA[G(a || !b)]",
            "!(E[F a] && !A[G b])",
            "AE[F(a && X false)] -> E[F(b && X false)]",
        ];
        let alphabet = Alphabet::from_names(&["a", "b"]);
        for src in sources {
            let psi = parse_plus(src, Dialect::Ltlf).unwrap();
            let pnf = psi.to_pnf();
            assert!(pnf.is_pnf());
            let ev1 = LassoEvaluator::new(&psi, &alphabet, &Budget::default()).unwrap();
            let ev2 = LassoEvaluator::new(&pnf, &alphabet, &Budget::default()).unwrap();
            let letters = alphabet.letter_count() as u32;
            for stem_len in 0..=3usize {
                for cycle_len in 1..=3usize {
                    for stem_id in 0..letters.pow(stem_len as u32) {
                        for cycle_id in 0..letters.pow(cycle_len as u32) {
                            let stem: Vec<u32> =
                                (0..stem_len).map(|i| stem_id / letters.pow(i as u32) % letters).collect();
                            let cycle: Vec<u32> =
                                (0..cycle_len).map(|i| cycle_id / letters.pow(i as u32) % letters).collect();
                            assert_eq!(
                                ev1.eval(&stem, &cycle).unwrap(),
                                ev2.eval(&stem, &cycle).unwrap(),
                                "{src} on stem {stem:?} cycle {cycle:?}"
                            );
                        }
                    }
                }
            }
        }
    }
}
