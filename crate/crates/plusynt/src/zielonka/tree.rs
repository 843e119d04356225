//! Zielonka tree construction.
//!
//! The root carries the full color set. Every vertex `t` has one child
//! per set that is maximal among the proper subsets of `l(t)` whose
//! satisfaction value differs from `l(t)`'s, so winning and losing
//! vertices strictly alternate along every branch. Children are ordered
//! by their label bitmask, which makes trees, equation systems, and
//! extracted strategies reproducible.

use std::collections::HashMap;

use crate::game::{ColorSet, ColorSpace, ObjFormula, Objective};
use crate::{Budget, Error, Result};

#[derive(Debug, Clone)]
pub struct Vertex {
    pub label: ColorSet,
    pub parent: Option<u32>,
    pub children: Vec<u32>,
    pub winning: bool,
    pub depth: u32,
}

#[derive(Debug, Clone)]
pub struct ZielonkaTree {
    pub colors: ColorSpace,
    pub formula: ObjFormula,
    pub vertices: Vec<Vertex>,
    /// Root-to-leaf label paths are nested strictly decreasing sets.
    pub leaves: Vec<u32>,
}

impl ZielonkaTree {
    /// Builds the tree of `phi` over the given color space, whose full
    /// set becomes the root label. The space must contain every color
    /// `phi` needs; [`ColorSpace::for_formula`] computes exactly those.
    pub fn build(phi: &ObjFormula, colors: ColorSpace, budget: &Budget) -> Result<ZielonkaTree> {
        budget.check_events(colors.len())?;
        let mut sat_cache: HashMap<ColorSet, bool> = HashMap::new();
        let mut sat = |delta: ColorSet| -> bool {
            *sat_cache.entry(delta).or_insert_with(|| colors.sat(phi, delta))
        };

        let mut vertices = vec![Vertex {
            label: colors.full(),
            parent: None,
            children: Vec::new(),
            winning: sat(colors.full()),
            depth: 0,
        }];
        let mut at = 0;
        while at < vertices.len() {
            let label = vertices[at].label;
            let flipped = !vertices[at].winning;
            let depth = vertices[at].depth;
            let children = maximal_flipping_subsets(label, flipped, &mut sat);
            for child_label in children {
                let id = vertices.len() as u32;
                vertices.push(Vertex {
                    label: child_label,
                    parent: Some(at as u32),
                    children: Vec::new(),
                    winning: flipped,
                    depth: depth + 1,
                });
                vertices[at].children.push(id);
            }
            at += 1;
        }
        let leaves = (0..vertices.len() as u32).filter(|&t| vertices[t as usize].children.is_empty()).collect();
        Ok(ZielonkaTree { colors, formula: phi.clone(), vertices, leaves })
    }

    pub fn for_objective(objective: &Objective, budget: &Budget) -> Result<ZielonkaTree> {
        if !objective.formula.is_el() {
            return Err(Error::precondition("Zielonka trees are built for EL objectives"));
        }
        let colors = ColorSpace::for_formula(&objective.formula, 0)?;
        ZielonkaTree::build(&objective.formula, colors, budget)
    }

    pub fn root(&self) -> u32 {
        0
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn height(&self) -> u32 {
        self.vertices.iter().map(|v| v.depth).max().unwrap_or(0) + 1
    }

    /// Path of vertex ids from the root to `t`, inclusive.
    pub fn path_to(&self, t: u32) -> Vec<u32> {
        let mut path = vec![t];
        let mut cur = t;
        while let Some(p) = self.vertices[cur as usize].parent {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    /// The deepest vertex on the root-to-`leaf` path whose label
    /// contains `shown`; falls back to the root, whose label is full.
    pub fn anchor(&self, leaf: u32, shown: ColorSet) -> u32 {
        let mut best = self.root();
        for t in self.path_to(leaf) {
            if shown & !self.vertices[t as usize].label == 0 {
                best = t;
            }
        }
        best
    }

    /// Number of memory values the tree requires of a winning strategy:
    /// obligations multiply at winning vertices and are reused across the
    /// alternatives of losing vertices.
    pub fn memory_bound(&self, t: u32) -> usize {
        let v = &self.vertices[t as usize];
        if v.children.is_empty() {
            1
        } else if v.winning {
            v.children.iter().map(|&c| self.memory_bound(c)).sum()
        } else {
            v.children.iter().map(|&c| self.memory_bound(c)).max().unwrap_or(1)
        }
    }

    /// The subtree a winning strategy actually navigates: winning
    /// vertices keep every child (each is an obligation to rotate
    /// through); at a losing vertex one escape branch is retained, the
    /// one realizing the memory bound. Ties break to the smaller label.
    pub fn existential_subtree(&self) -> ZielonkaTree {
        let mut keep = vec![false; self.vertices.len()];
        self.mark_existential(self.root(), &mut keep);
        let mut remap: HashMap<u32, u32> = HashMap::new();
        let mut vertices = Vec::new();
        for (t, v) in self.vertices.iter().enumerate() {
            if !keep[t] {
                continue;
            }
            let id = vertices.len() as u32;
            remap.insert(t as u32, id);
            vertices.push(Vertex {
                label: v.label,
                parent: v.parent.map(|p| remap[&p]),
                children: Vec::new(),
                winning: v.winning,
                depth: v.depth,
            });
        }
        for (t, v) in self.vertices.iter().enumerate() {
            if keep[t] {
                if let Some(p) = v.parent {
                    let id = remap[&(t as u32)];
                    let parent = remap[&p];
                    vertices[parent as usize].children.push(id);
                }
            }
        }
        let leaves = (0..vertices.len() as u32).filter(|&t| vertices[t as usize].children.is_empty()).collect();
        ZielonkaTree { colors: self.colors.clone(), formula: self.formula.clone(), vertices, leaves }
    }

    fn mark_existential(&self, t: u32, keep: &mut [bool]) {
        keep[t as usize] = true;
        let v = &self.vertices[t as usize];
        if v.winning {
            for &c in &v.children {
                self.mark_existential(c, keep);
            }
        } else if let Some(&best) = v
            .children
            .iter()
            .max_by_key(|&&c| (self.memory_bound(c), std::cmp::Reverse(self.vertices[c as usize].label)))
        {
            self.mark_existential(best, keep);
        }
    }

    /// DOT rendering: boxes are winning vertices, circles losing ones.
    pub fn to_dot(&self, events: &[String]) -> String {
        let mut out = String::from("digraph zielonka {\n");
        for (t, v) in self.vertices.iter().enumerate() {
            let shape = if v.winning { "box" } else { "circle" };
            out.push_str(&format!(
                "  t{t} [shape={shape},label=\"{}\"];\n",
                self.colors.set_display(v.label, events)
            ));
        }
        for (t, v) in self.vertices.iter().enumerate() {
            for &c in &v.children {
                out.push_str(&format!("  t{t} -> t{c};\n"));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Maximal proper subsets of `label` whose satisfaction equals
/// `target`, in increasing bitmask order. Enumerates the downward
/// closure of `label` with memoized evaluation.
fn maximal_flipping_subsets(
    label: ColorSet,
    target: bool,
    sat: &mut impl FnMut(ColorSet) -> bool,
) -> Vec<ColorSet> {
    if label == 0 {
        return Vec::new();
    }
    let mut hits: Vec<ColorSet> = Vec::new();
    // enumerate proper submasks of label
    let mut sub = label.wrapping_sub(1) & label;
    loop {
        if sat(sub) == target {
            hits.push(sub);
        }
        if sub == 0 {
            break;
        }
        sub = sub.wrapping_sub(1) & label;
    }
    // keep the maximal ones; sort descending by popcount so any cover
    // appears before what it covers
    hits.sort_by_key(|s| std::cmp::Reverse(s.count_ones()));
    let mut maximal: Vec<ColorSet> = Vec::new();
    for s in hits {
        if !maximal.iter().any(|&m| s & !m == 0) {
            maximal.push(s);
        }
    }
    maximal.sort_unstable();
    maximal
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Literal;

    fn space_of(phi: &ObjFormula) -> ColorSpace {
        ColorSpace::for_formula(phi, 0).unwrap()
    }

    use crate::zielonka::testutil::running_example;

    #[test]
    fn running_example_has_eight_vertices() {
        let phi = running_example();
        let colors = space_of(&phi);
        // FG !a and FG !d contribute the plain colors a and d
        assert_eq!(colors.len(), 4);
        let tree = ZielonkaTree::build(&phi, colors, &Budget::default()).unwrap();
        assert_eq!(tree.len(), 8);

        let events: Vec<String> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        let label = |t: u32| tree.colors.set_display(tree.vertices[t as usize].label, &events);

        let root = tree.root();
        assert_eq!(label(root), "{a,b,c,d}");
        assert!(!tree.vertices[root as usize].winning);

        let kids = &tree.vertices[root as usize].children;
        assert_eq!(kids.len(), 2);
        let (t2, t3) = (kids[0], kids[1]);
        assert_eq!(label(t2), "{a,b,c}");
        assert_eq!(label(t3), "{b,c,d}");
        assert!(tree.vertices[t2 as usize].winning && tree.vertices[t3 as usize].winning);

        let kids2 = &tree.vertices[t2 as usize].children;
        assert_eq!(kids2.len(), 2);
        let (t4, t5) = (kids2[0], kids2[1]);
        assert_eq!(label(t4), "{a,b}");
        assert_eq!(label(t5), "{a,c}");
        assert!(!tree.vertices[t4 as usize].winning && !tree.vertices[t5 as usize].winning);

        let kids3 = &tree.vertices[t3 as usize].children;
        assert_eq!(kids3.len(), 1);
        assert_eq!(label(kids3[0]), "{b,d}");

        let kids5 = &tree.vertices[t5 as usize].children;
        assert_eq!(kids5.len(), 1);
        let t7 = kids5[0];
        assert_eq!(label(t7), "{c}");
        assert!(tree.vertices[t7 as usize].winning);

        let kids7 = &tree.vertices[t7 as usize].children;
        assert_eq!(kids7.len(), 1);
        assert_eq!(label(kids7[0]), "{}");
        assert!(!tree.vertices[kids7[0] as usize].winning);

        assert!(tree.vertices[t4 as usize].children.is_empty());
        assert_eq!(tree.memory_bound(tree.root()), 2);
    }

    #[test]
    fn buechi_chain() {
        let phi = ObjFormula::gf(Literal::pos(0));
        let tree = ZielonkaTree::build(&phi, space_of(&phi), &Budget::default()).unwrap();
        assert_eq!(tree.len(), 2);
        assert!(tree.vertices[0].winning);
        assert!(!tree.vertices[1].winning);
        assert_eq!(tree.vertices[1].label, 0);
        assert_eq!(tree.leaves.len(), 1);
    }

    #[test]
    fn true_formula_is_single_winning_root() {
        let phi = ObjFormula::True;
        let tree = ZielonkaTree::build(&phi, space_of(&phi), &Budget::default()).unwrap();
        assert_eq!(tree.len(), 1);
        assert!(tree.vertices[0].winning);
    }

    /// S |= phi iff the deepest vertex on the canonical descent whose
    /// label contains S is winning, for every color subset.
    #[test]
    fn descent_classifies_all_subsets() {
        let formulas = vec![
            running_example(),
            ObjFormula::and(vec![
                ObjFormula::or(vec![ObjFormula::fg(Literal::neg(0)), ObjFormula::gf(Literal::pos(1))]),
                ObjFormula::or(vec![ObjFormula::fg(Literal::neg(2)), ObjFormula::gf(Literal::pos(3))]),
            ]),
            ObjFormula::or(vec![
                ObjFormula::and(vec![ObjFormula::gf(Literal::pos(0)), ObjFormula::gf(Literal::pos(1))]),
                ObjFormula::fg(Literal::neg(2)),
            ]),
        ];
        for phi in formulas {
            let colors = space_of(&phi);
            let tree = ZielonkaTree::build(&phi, colors.clone(), &Budget::default()).unwrap();
            for s in 0..=colors.full() {
                // canonical descent: keep stepping into a child containing s
                let mut at = tree.root();
                loop {
                    let next = tree.vertices[at as usize]
                        .children
                        .iter()
                        .copied()
                        .find(|&c| s & !tree.vertices[c as usize].label == 0);
                    match next {
                        Some(c) => at = c,
                        None => break,
                    }
                }
                assert_eq!(
                    tree.vertices[at as usize].winning,
                    colors.sat(&phi, s),
                    "{phi} on {s:b}"
                );
            }
        }
    }

    #[test]
    fn alternation_along_branches() {
        let phi = running_example();
        let tree = ZielonkaTree::build(&phi, space_of(&phi), &Budget::default()).unwrap();
        for (t, v) in tree.vertices.iter().enumerate() {
            if let Some(p) = v.parent {
                assert_ne!(v.winning, tree.vertices[p as usize].winning, "vertex {t}");
                assert!(tree.height() <= tree.colors.len() as u32 + 1);
            }
        }
    }

    #[test]
    fn existential_subtree_keeps_winning_children() {
        let phi = running_example();
        let tree = ZielonkaTree::build(&phi, space_of(&phi), &Budget::default()).unwrap();
        let sub = tree.existential_subtree();
        // the losing root retains its higher-memory branch, in which the
        // winning vertex keeps both obligations
        assert_eq!(sub.leaves.len(), tree.memory_bound(tree.root()));
        let root_kids = &sub.vertices[0].children;
        assert_eq!(root_kids.len(), 1);
        let kept = &sub.vertices[root_kids[0] as usize];
        assert_eq!(kept.children.len(), 2);
    }

    #[test]
    fn chain_and_singleton_subtrees_unchanged() {
        for phi in [ObjFormula::gf(Literal::pos(0)), ObjFormula::True] {
            let tree = ZielonkaTree::build(&phi, space_of(&phi), &Budget::default()).unwrap();
            let sub = tree.existential_subtree();
            assert_eq!(sub.len(), tree.len());
        }
    }
}
