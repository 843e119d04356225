//! Fixpoint equation system of a Zielonka tree.
//!
//! One variable per vertex: winning vertices are greatest fixpoints,
//! losing vertices least fixpoints. Inner vertices combine their
//! children (intersection at winning, union at losing vertices). A leaf
//! equation case-splits on the colors shown by the current node and
//! routes one controllable-predecessor step to the variable of the
//! deepest vertex on its branch whose label still contains them.

use crate::game::ColorSet;
use crate::zielonka::ZielonkaTree;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixKind {
    Lfp,
    Gfp,
}

/// One case of a leaf equation: nodes showing colors within `within`
/// but not within the next-deeper label route to `anchor`.
#[derive(Debug, Clone)]
pub struct Case {
    pub anchor: u32,
    pub within: ColorSet,
    /// Label of the next vertex towards the leaf; `None` on the leaf
    /// itself. The case applies when the shown colors are not contained
    /// in it.
    pub deeper: Option<ColorSet>,
}

#[derive(Debug, Clone)]
pub enum Rhs {
    /// Union of child variables (losing inner vertex).
    Union(Vec<u32>),
    /// Intersection of child variables (winning inner vertex).
    Intersection(Vec<u32>),
    /// Leaf case split, ordered from the leaf's own case up to the root.
    Cases(Vec<Case>),
}

#[derive(Debug, Clone)]
pub struct FixpointSystem {
    pub kinds: Vec<FixKind>,
    pub rhs: Vec<Rhs>,
}

impl FixpointSystem {
    pub fn of_tree(tree: &ZielonkaTree) -> FixpointSystem {
        let mut kinds = Vec::with_capacity(tree.len());
        let mut rhs = Vec::with_capacity(tree.len());
        for (t, v) in tree.vertices.iter().enumerate() {
            kinds.push(if v.winning { FixKind::Gfp } else { FixKind::Lfp });
            if v.children.is_empty() {
                let path = tree.path_to(t as u32);
                let mut cases = Vec::with_capacity(path.len());
                for (j, &anchor) in path.iter().enumerate().rev() {
                    cases.push(Case {
                        anchor,
                        within: tree.vertices[anchor as usize].label,
                        deeper: path.get(j + 1).map(|&d| tree.vertices[d as usize].label),
                    });
                }
                rhs.push(Rhs::Cases(cases));
            } else if v.winning {
                rhs.push(Rhs::Intersection(v.children.clone()));
            } else {
                rhs.push(Rhs::Union(v.children.clone()));
            }
        }
        FixpointSystem { kinds, rhs }
    }

    pub fn len(&self) -> usize {
        self.kinds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kinds.is_empty()
    }

    /// Alternation depth: the longest kind-alternating chain along a
    /// branch, which for these systems equals the tree height.
    pub fn alternation_depth(&self, tree: &ZielonkaTree) -> u32 {
        tree.height()
    }

    /// Textual rendering, one equation per line.
    pub fn render(&self, tree: &ZielonkaTree, events: &[String]) -> String {
        let mut out = String::new();
        for t in 0..self.len() {
            let kind = match self.kinds[t] {
                FixKind::Lfp => "LFP",
                FixKind::Gfp => "GFP",
            };
            let body = match &self.rhs[t] {
                Rhs::Union(children) => children
                    .iter()
                    .map(|c| format!("X{}", c + 1))
                    .collect::<Vec<_>>()
                    .join(" ∪ "),
                Rhs::Intersection(children) => children
                    .iter()
                    .map(|c| format!("X{}", c + 1))
                    .collect::<Vec<_>>()
                    .join(" ∩ "),
                Rhs::Cases(cases) => cases
                    .iter()
                    .map(|case| {
                        let cond = self.render_condition(tree, case, events);
                        if cond.is_empty() {
                            format!("Cpre(X{})", case.anchor + 1)
                        } else {
                            format!("({cond} ∩ Cpre(X{}))", case.anchor + 1)
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" ∪ "),
            };
            out.push_str(&format!("X{} =_{kind} {body}\n", t + 1));
        }
        out
    }

    fn render_condition(&self, tree: &ZielonkaTree, case: &Case, events: &[String]) -> String {
        let colors = tree.colors.colors();
        // the condition "color i shown" is the literal itself; "color i
        // not shown" is its complement
        let shown = |i: usize, positive: bool| -> String {
            let l = if positive { colors[i] } else { colors[i].complement() };
            let base = events
                .get(l.event as usize)
                .cloned()
                .unwrap_or_else(|| l.event.to_string());
            if l.positive {
                base
            } else {
                format!("¬{base}")
            }
        };
        let mut parts: Vec<String> = Vec::new();
        if let Some(deeper) = case.deeper {
            let escape = case.within & !deeper;
            let options: Vec<String> =
                (0..colors.len()).filter(|i| escape >> i & 1 == 1).map(|i| shown(i, true)).collect();
            match options.len() {
                0 => {}
                1 => parts.push(options.into_iter().next().unwrap()),
                _ => parts.push(format!("({})", options.join(" ∨ "))),
            }
        }
        for i in 0..colors.len() {
            if case.within >> i & 1 == 0 {
                parts.push(shown(i, false));
            }
        }
        parts.join(" ∧ ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{ColorSpace, Literal, ObjFormula};
    use crate::Budget;

    fn tree_of(phi: &ObjFormula) -> ZielonkaTree {
        let colors = ColorSpace::for_formula(phi, 0).unwrap();
        ZielonkaTree::build(phi, colors, &Budget::default()).unwrap()
    }

    #[test]
    fn buechi_system_is_the_textbook_pair() {
        let phi = ObjFormula::gf(Literal::pos(0));
        let tree = tree_of(&phi);
        let sys = FixpointSystem::of_tree(&tree);
        assert_eq!(sys.kinds, vec![FixKind::Gfp, FixKind::Lfp]);
        assert!(matches!(&sys.rhs[0], Rhs::Intersection(c) if c == &vec![1]));
        match &sys.rhs[1] {
            Rhs::Cases(cases) => {
                assert_eq!(cases.len(), 2);
                // self case first, root case second
                assert_eq!(cases[0].anchor, 1);
                assert_eq!(cases[1].anchor, 0);
            }
            other => panic!("expected cases, got {other:?}"),
        }
    }

    #[test]
    fn true_root_is_a_single_gfp() {
        let tree = tree_of(&ObjFormula::True);
        let sys = FixpointSystem::of_tree(&tree);
        assert_eq!(sys.len(), 1);
        assert_eq!(sys.kinds[0], FixKind::Gfp);
        match &sys.rhs[0] {
            Rhs::Cases(cases) => assert_eq!(cases.len(), 1),
            other => panic!("expected cases, got {other:?}"),
        }
    }

    #[test]
    fn running_example_shape() {
        let tree = tree_of(&crate::zielonka::testutil::running_example());
        let sys = FixpointSystem::of_tree(&tree);
        // vertex ids: 0 root, 1 {a,b,c}, 2 {b,c,d}, 3 {a,b}, 4 {a,c},
        //             5 {b,d}, 6 {c}, 7 {}
        assert_eq!(sys.kinds[0], FixKind::Lfp);
        assert!(matches!(&sys.rhs[0], Rhs::Union(c) if c == &vec![1, 2]));
        assert_eq!(sys.kinds[1], FixKind::Gfp);
        assert!(matches!(&sys.rhs[1], Rhs::Intersection(c) if c == &vec![3, 4]));
        assert!(matches!(&sys.rhs[2], Rhs::Intersection(c) if c == &vec![5]));
        assert_eq!(sys.kinds[4], FixKind::Lfp);
        assert!(matches!(&sys.rhs[4], Rhs::Union(c) if c == &vec![6]));
        // deepest leaf {} under the branch root -> {a,b,c} -> {a,c} -> {c} -> {}
        match &sys.rhs[7] {
            Rhs::Cases(cases) => {
                assert_eq!(cases.len(), 5);
                let anchors: Vec<u32> = cases.iter().map(|c| c.anchor).collect();
                assert_eq!(anchors, vec![7, 6, 4, 1, 0]);
            }
            other => panic!("expected cases, got {other:?}"),
        }
        // alternation depth equals tree height
        assert_eq!(sys.alternation_depth(&tree), 5);
    }

    #[test]
    fn render_matches_reference_notation() {
        let events: Vec<String> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        let tree = tree_of(&crate::zielonka::testutil::running_example());
        let sys = FixpointSystem::of_tree(&tree);
        let text = sys.render(&tree, &events);
        assert!(text.contains("X1 =_LFP X2 ∪ X3"));
        assert!(text.contains("X2 =_GFP X4 ∩ X5"));
        // leaf {a,b}: self case, then c ∧ ¬d to its winning parent, then d to the root
        assert!(text.contains("X4 =_LFP (¬c ∧ ¬d ∩ Cpre(X4)) ∪ (c ∧ ¬d ∩ Cpre(X2)) ∪ (d ∩ Cpre(X1))"));
    }
}
