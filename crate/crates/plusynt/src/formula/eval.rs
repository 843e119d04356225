//! Reference evaluators for both dialects, applied clause by clause.
//!
//! These are the semantic ground truth for the automata constructions:
//! every DFA built elsewhere is tested against them exhaustively on small
//! traces.

use crate::formula::{Dialect, Trace, TraceFormula};
use crate::{Error, Result};

impl TraceFormula {
    /// Future-dialect satisfaction `tau, i |= phi`.
    ///
    /// `X[!]` demands a next position; `U` demands its witness strictly
    /// before the trace ends. Empty traces are rejected.
    pub fn eval_ltlf(&self, tau: &Trace, i: usize) -> Result<bool> {
        if tau.is_empty() {
            return Err(Error::precondition("eval_ltlf on empty trace"));
        }
        if i >= tau.len() {
            return Err(Error::precondition("eval_ltlf position out of range"));
        }
        self.check_dialect(Dialect::Ltlf)?;
        Ok(self.eval_at(tau, i))
    }

    /// Past-dialect satisfaction `tau, i |= phi`.
    pub fn eval_ppltl(&self, tau: &Trace, i: usize) -> Result<bool> {
        if tau.is_empty() {
            return Err(Error::precondition("eval_ppltl on empty trace"));
        }
        if i >= tau.len() {
            return Err(Error::precondition("eval_ppltl position out of range"));
        }
        self.check_dialect(Dialect::Ppltl)?;
        Ok(self.eval_at(tau, i))
    }

    /// Trace membership in `[phi]`: position 0 for future formulas, the
    /// final position for past formulas.
    pub fn trace_satisfies(&self, tau: &Trace) -> Result<bool> {
        if self.uses_past() {
            self.eval_ppltl(tau, tau.len().saturating_sub(1))
        } else {
            self.eval_ltlf(tau, 0)
        }
    }

    pub(crate) fn eval_at(&self, tau: &Trace, i: usize) -> bool {
        use TraceFormula::*;
        let n = tau.len();
        match self {
            True => true,
            False => false,
            Prop(p) => match tau.alphabet.index_of(p) {
                Some(bit) => tau.letters[i] >> bit & 1 == 1,
                None => false,
            },
            Not(a) => !a.eval_at(tau, i),
            And(a, b) => a.eval_at(tau, i) && b.eval_at(tau, i),
            Or(a, b) => a.eval_at(tau, i) || b.eval_at(tau, i),
            StrongNext(a) => i + 1 < n && a.eval_at(tau, i + 1),
            WeakNext(a) => i + 1 >= n || a.eval_at(tau, i + 1),
            Eventually(a) => (i..n).any(|j| a.eval_at(tau, j)),
            Always(a) => (i..n).all(|j| a.eval_at(tau, j)),
            Until(a, b) => {
                (i..n).any(|j| b.eval_at(tau, j) && (i..j).all(|k| a.eval_at(tau, k)))
            }
            Release(a, b) => {
                // phi R psi = !(!phi U !psi)
                !(i..n).any(|j| !b.eval_at(tau, j) && (i..j).all(|k| !a.eval_at(tau, k)))
            }
            StrongYesterday(a) => i > 0 && a.eval_at(tau, i - 1),
            WeakYesterday(a) => i == 0 || a.eval_at(tau, i - 1),
            Once(a) => (0..=i).any(|j| a.eval_at(tau, j)),
            Historically(a) => (0..=i).all(|j| a.eval_at(tau, j)),
            Since(a, b) => {
                (0..=i).rev().any(|j| b.eval_at(tau, j) && (j + 1..=i).all(|k| a.eval_at(tau, k)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse_trace_formula, Alphabet};
    use std::sync::Arc;

    fn ab() -> Arc<Alphabet> {
        Alphabet::from_names(&["a", "b"])
    }

    #[test]
    fn eventually_with_last_needs_final_a() {
        let phi = parse_trace_formula("F(a && X false)", Dialect::Ltlf).unwrap();
        let t1 = Trace::from_names(&ab(), &[&["a"]]);
        assert!(phi.eval_ltlf(&t1, 0).unwrap());
        let t2 = Trace::from_names(&ab(), &[&["a"], &[]]);
        assert!(!phi.eval_ltlf(&t2, 0).unwrap());
    }

    #[test]
    fn strong_next_fails_at_trace_end() {
        let phi = parse_trace_formula("X! true", Dialect::Ltlf).unwrap();
        for letter in [&[][..], &["a"][..]] {
            let t = Trace::from_names(&ab(), &[letter]);
            assert!(!phi.eval_ltlf(&t, 0).unwrap());
        }
    }

    #[test]
    fn once_looks_backwards() {
        let phi = parse_trace_formula("O a", Dialect::Ppltl).unwrap();
        let t = Trace::from_names(&ab(), &[&[], &["a"]]);
        assert!(phi.eval_ppltl(&t, 1).unwrap());
        assert!(!phi.eval_ppltl(&t, 0).unwrap());
    }

    #[test]
    fn strong_yesterday_fails_at_start() {
        let phi = parse_trace_formula("Y! true", Dialect::Ppltl).unwrap();
        let t = Trace::from_names(&ab(), &[&["a"], &["b"]]);
        assert!(!phi.eval_ppltl(&t, 0).unwrap());
        assert!(phi.eval_ppltl(&t, 1).unwrap());
    }

    #[test]
    fn last_first_positions() {
        let last = parse_trace_formula("last", Dialect::Ltlf).unwrap();
        let first = parse_trace_formula("first", Dialect::Ppltl).unwrap();
        let t = Trace::from_names(&ab(), &[&["a"], &["b"], &[]]);
        for i in 0..3 {
            assert_eq!(last.eval_ltlf(&t, i).unwrap(), i == 2);
            assert_eq!(first.eval_ppltl(&t, i).unwrap(), i == 0);
        }
    }

    #[test]
    fn until_demands_witness_before_end() {
        let phi = parse_trace_formula("a U b", Dialect::Ltlf).unwrap();
        let yes = Trace::from_names(&ab(), &[&["a"], &["b"]]);
        assert!(phi.eval_ltlf(&yes, 0).unwrap());
        let no = Trace::from_names(&ab(), &[&["a"]]);
        assert!(!phi.eval_ltlf(&no, 0).unwrap());
    }

    #[test]
    fn empty_trace_is_rejected() {
        let phi = TraceFormula::True;
        let t = Trace::new(ab(), vec![]);
        assert!(phi.eval_ltlf(&t, 0).is_err());
    }

    /// eval(!phi) = !eval(phi), exhaustively on small traces.
    #[test]
    fn negation_is_complement() {
        let formulas = [
            "a U b",
            "F(a && X false)",
            "G(a -> X b)",
            "a R b",
            "X! (a || b)",
        ];
        let alphabet = ab();
        for src in formulas {
            let phi = parse_trace_formula(src, Dialect::Ltlf).unwrap();
            let neg = phi.clone().not();
            for len in 1..=3usize {
                for id in 0..alphabet.letter_count().pow(len as u32) {
                    let mut letters = Vec::new();
                    let mut rest = id;
                    for _ in 0..len {
                        letters.push((rest % alphabet.letter_count()) as u32);
                        rest /= alphabet.letter_count();
                    }
                    let t = Trace::new(alphabet.clone(), letters);
                    for i in 0..len {
                        assert_eq!(
                            neg.eval_ltlf(&t, i).unwrap(),
                            !phi.eval_ltlf(&t, i).unwrap()
                        );
                    }
                }
            }
        }
    }
}
