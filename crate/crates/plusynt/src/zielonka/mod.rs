//! Zielonka trees of Emerson-Lei formulas and the fixpoint equation
//! systems extracted from them.

mod fixpoint;
mod tree;

pub use fixpoint::{Case, FixKind, FixpointSystem, Rhs};
pub use tree::ZielonkaTree;

#[cfg(test)]
pub(crate) mod testutil {
    use crate::game::{Literal, ObjFormula};

    /// (FG !a | GF b) & (FG !a | FG !d) & GF c over events a, b, c, d.
    pub(crate) fn running_example() -> ObjFormula {
        let fg_na = ObjFormula::fg(Literal::neg(0));
        let gf_b = ObjFormula::gf(Literal::pos(1));
        let gf_c = ObjFormula::gf(Literal::pos(2));
        let fg_nd = ObjFormula::fg(Literal::neg(3));
        ObjFormula::and(vec![
            ObjFormula::or(vec![fg_na.clone(), gf_b]),
            ObjFormula::or(vec![fg_na, fg_nd]),
            gf_c,
        ])
    }
}
