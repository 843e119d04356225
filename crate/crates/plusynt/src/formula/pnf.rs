//! Positive normal form at the specification level.
//!
//! Negation is pushed through the Boolean structure and absorbed into the
//! atoms via the quantifier dualities
//!
//! ```text
//! !E[p]  = A[!p]      !A[p]  = E[!p]
//! !AE[p] = EA[!p]     !EA[p] = AE[!p]
//! ```
//!
//! which follow from complementing the set of prefixes satisfying the
//! body. The rewriting is validated against the lasso-level evaluator in
//! the test suite.

use crate::formula::PlusFormula;

impl PlusFormula {
    /// Rewrites into an equivalent negation-free formula.
    pub fn to_pnf(&self) -> PlusFormula {
        self.pnf(false)
    }

    pub fn is_pnf(&self) -> bool {
        !self.contains_negation()
    }

    fn pnf(&self, negated: bool) -> PlusFormula {
        match self {
            PlusFormula::True => {
                if negated {
                    PlusFormula::False
                } else {
                    PlusFormula::True
                }
            }
            PlusFormula::False => {
                if negated {
                    PlusFormula::True
                } else {
                    PlusFormula::False
                }
            }
            PlusFormula::Atom(q, body) => {
                if negated {
                    PlusFormula::Atom(q.dual(), body.clone().not())
                } else {
                    PlusFormula::Atom(*q, body.clone())
                }
            }
            PlusFormula::Not(a) => a.pnf(!negated),
            PlusFormula::And(a, b) => {
                let (a, b) = (a.pnf(negated), b.pnf(negated));
                if negated {
                    a.or(b)
                } else {
                    a.and(b)
                }
            }
            PlusFormula::Or(a, b) => {
                let (a, b) = (a.pnf(negated), b.pnf(negated));
                if negated {
                    a.and(b)
                } else {
                    a.or(b)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::formula::{parse_plus, Dialect, PlusFormula, Quantifier, TraceFormula};

    #[test]
    fn negated_exists_becomes_forall() {
        let psi = parse_plus("!E[F a]", Dialect::Ltlf).unwrap().to_pnf();
        match psi {
            PlusFormula::Atom(Quantifier::Forall, body) => {
                assert!(matches!(body, TraceFormula::Not(_)));
            }
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn negated_forall_exists_becomes_exists_forall() {
        let psi = parse_plus("!AE[F a]", Dialect::Ltlf).unwrap().to_pnf();
        assert!(matches!(psi, PlusFormula::Atom(Quantifier::ExistsForall, _)));
    }

    #[test]
    fn positive_formula_is_a_fixpoint() {
        let psi = parse_plus("A[G d] && (E[F a] || AE[F b])", Dialect::Ltlf).unwrap();
        assert!(psi.is_pnf());
        assert_eq!(psi.to_pnf(), psi);
    }

    #[test]
    fn double_negation_cancels() {
        let psi = parse_plus("!!E[F a]", Dialect::Ltlf).unwrap().to_pnf();
        assert!(matches!(psi, PlusFormula::Atom(Quantifier::Exists, TraceFormula::Eventually(_))));
    }
}
