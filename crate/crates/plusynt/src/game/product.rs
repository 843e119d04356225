//! Product transition system over component DFAs and the induced
//! synthesis arena.
//!
//! Only states reachable from the joint initial state are materialized.
//! The synthesis arena is kept compact: the intermediate
//! `(q, x)`/`(q, x, y)` move nodes are implicit, and the controllable
//! predecessor quantifies over system and environment choices directly.
//! An expanded three-layer arena is available for differential testing.

use std::collections::HashMap;
use std::hash::{BuildHasherDefault, Hasher};
use std::sync::Arc;

use crate::automata::Dfa;
use crate::formula::{Alphabet, Letter};
use crate::game::{Arena, EventSet, Owner};
use crate::{Budget, Error, NodeSet, Result};

/// Multiply-xor hasher for short state vectors; the default SipHash is
/// noticeably slow on the exploration path.
#[derive(Default)]
pub struct FxHasher(u64);

impl Hasher for FxHasher {
    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = (self.0 ^ b as u64).wrapping_mul(0x100000001b3);
        }
    }

    fn write_u16(&mut self, v: u16) {
        self.0 = (self.0 ^ v as u64).wrapping_mul(0x100000001b3);
    }

    fn finish(&self) -> u64 {
        self.0
    }
}

type FxMap<K, V> = HashMap<K, V, BuildHasherDefault<FxHasher>>;

/// Reachable product of component DFAs sharing one alphabet.
pub struct Product {
    pub alphabet: Arc<Alphabet>,
    pub components: Vec<Dfa>,
    /// Component state vectors, indexed by product state id.
    pub states: Vec<Box<[u16]>>,
    index: FxMap<Box<[u16]>, u32>,
    /// `gamma[q] = {i | q_i accepting in component i}`.
    pub gamma: Vec<EventSet>,
    pub initial: u32,
}

impl Product {
    pub fn build(components: Vec<Dfa>, budget: &Budget) -> Result<Product> {
        let alphabet = components
            .first()
            .map(|d| d.alphabet.clone())
            .ok_or_else(|| Error::precondition("product of zero automata"))?;
        for d in &components {
            if d.alphabet != alphabet {
                return Err(Error::precondition("product components must share the alphabet"));
            }
        }
        let mut product = Product {
            alphabet,
            components,
            states: Vec::new(),
            index: FxMap::default(),
            gamma: Vec::new(),
            initial: 0,
        };
        let init: Box<[u16]> = product.components.iter().map(|d| d.initial as u16).collect();
        product.initial = product.intern(init);

        let mut at = 0;
        while at < product.states.len() {
            budget.check_states(product.states.len())?;
            budget.check_deadline("product construction")?;
            for letter in 0..product.alphabet.letter_count() as Letter {
                let next = product.step_vector(at as u32, letter);
                product.intern(next);
            }
            at += 1;
        }
        Ok(product)
    }

    fn intern(&mut self, state: Box<[u16]>) -> u32 {
        if let Some(&id) = self.index.get(&state) {
            return id;
        }
        let id = self.states.len() as u32;
        let mut gamma: EventSet = 0;
        for (i, (&qi, dfa)) in state.iter().zip(&self.components).enumerate() {
            if dfa.accepting[qi as usize] {
                gamma |= 1 << i;
            }
        }
        self.index.insert(state.clone(), id);
        self.states.push(state);
        self.gamma.push(gamma);
        id
    }

    fn step_vector(&self, q: u32, letter: Letter) -> Box<[u16]> {
        self.states[q as usize]
            .iter()
            .zip(&self.components)
            .map(|(&qi, dfa)| dfa.delta[qi as usize][letter as usize] as u16)
            .collect()
    }

    pub fn step(&self, q: u32, letter: Letter) -> u32 {
        let v = self.step_vector(q, letter);
        *self.index.get(&v).expect("product is closed under steps")
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Local events whose component automata are in an accepting state:
    /// the restriction of the labeling to guarantee/safety indices.
    pub fn local_label(&self, q: u32, local_events: EventSet) -> EventSet {
        self.gamma[q as usize] & local_events
    }
}

/// The synthesis game over a product: the system proposes `x ⊆ X`, the
/// environment answers `y ⊆ Y`, and the product steps on `x ∪ y`.
/// Per-state move groups are compiled to deduplicated successor lists so
/// that fixpoint scans avoid letter enumeration.
pub struct CompactArena {
    pub product: Product,
    pub x_letters: Vec<Letter>,
    pub y_letters: Vec<Letter>,
    /// For state `q` and system move `xi`, the distinct successors are
    /// `moves[offsets[q * xs + xi] .. offsets[q * xs + xi + 1]]`.
    offsets: Vec<u32>,
    moves: Vec<u32>,
}

impl CompactArena {
    pub fn build(product: Product, inputs: &[String], outputs: &[String], budget: &Budget) -> Result<CompactArena> {
        let alphabet = product.alphabet.clone();
        let mut x_positions = Vec::new();
        let mut y_positions = Vec::new();
        for (i, p) in alphabet.props().iter().enumerate() {
            let in_x = outputs.iter().any(|o| o == p);
            let in_y = inputs.iter().any(|o| o == p);
            match (in_x, in_y) {
                (true, false) => x_positions.push(i),
                (false, true) => y_positions.push(i),
                (true, true) => {
                    return Err(Error::precondition(format!("proposition {p} is both input and output")))
                }
                (false, false) => {
                    return Err(Error::precondition(format!("proposition {p} is not declared")))
                }
            }
        }
        let scatter = |positions: &[usize]| -> Vec<Letter> {
            (0..1u32 << positions.len())
                .map(|bits| {
                    positions
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| bits >> j & 1 == 1)
                        .map(|(_, &p)| 1u32 << p)
                        .sum()
                })
                .collect()
        };
        let x_letters = scatter(&x_positions);
        let y_letters = scatter(&y_positions);

        let xs = x_letters.len();
        let mut offsets = Vec::with_capacity(product.len() * xs + 1);
        let mut moves: Vec<u32> = Vec::new();
        offsets.push(0);
        let mut dedup: Vec<u32> = Vec::new();
        for q in 0..product.len() as u32 {
            budget.check_deadline("arena compilation")?;
            for &x in &x_letters {
                dedup.clear();
                for &y in &y_letters {
                    let succ = product.step(q, x | y);
                    if !dedup.contains(&succ) {
                        dedup.push(succ);
                    }
                }
                moves.extend_from_slice(&dedup);
                offsets.push(moves.len() as u32);
            }
        }
        Ok(CompactArena { product, x_letters, y_letters, offsets, moves })
    }

    pub fn len(&self) -> usize {
        self.product.len()
    }

    pub fn is_empty(&self) -> bool {
        self.product.is_empty()
    }

    pub fn x_count(&self) -> usize {
        self.x_letters.len()
    }

    /// Distinct successors of `q` under system move `xi`.
    pub fn successors(&self, q: u32, xi: usize) -> &[u32] {
        let base = q as usize * self.x_letters.len() + xi;
        let lo = self.offsets[base] as usize;
        let hi = self.offsets[base + 1] as usize;
        &self.moves[lo..hi]
    }

    pub fn gamma(&self, q: u32) -> EventSet {
        self.product.gamma[q as usize]
    }

    /// `{q | ∃x ∀y: δ(q, x ∪ y) ∈ target}`.
    pub fn cpre(&self, target: &NodeSet, out: &mut NodeSet) {
        out.clear();
        for q in 0..self.len() as u32 {
            if self.cpre_member(q, target) {
                out.insert(q);
            }
        }
    }

    pub fn cpre_member(&self, q: u32, target: &NodeSet) -> bool {
        (0..self.x_count()).any(|xi| self.successors(q, xi).iter().all(|&w| target.contains(w)))
    }

    /// `{q | ∀x ∃y: δ(q, x ∪ y) ∈ target}`: one step of environment
    /// control, used for duality checks and attractors.
    pub fn cpre_env(&self, target: &NodeSet, out: &mut NodeSet) {
        out.clear();
        for q in 0..self.len() as u32 {
            if self.cpre_env_member(q, target) {
                out.insert(q);
            }
        }
    }

    pub fn cpre_env_member(&self, q: u32, target: &NodeSet) -> bool {
        (0..self.x_count()).all(|xi| self.successors(q, xi).iter().any(|&w| target.contains(w)))
    }

    /// Lowest system move whose every outcome lands in `target`.
    pub fn witness_move(&self, q: u32, target: &NodeSet) -> Option<usize> {
        (0..self.x_count()).find(|&xi| self.successors(q, xi).iter().all(|&w| target.contains(w)))
    }
}

/// The three-layer arena `Q ∪ Q×2^X ∪ Q×2^X×2^Y` with explicit move
/// nodes, for differential testing against the compact form. Move nodes
/// inherit the label of their base state, so objective truth transfers
/// between the two forms.
pub fn expand_synthesis_arena(compact: &CompactArena) -> (Arena, Vec<u32>) {
    let q_count = compact.len();
    let xs = compact.x_letters.len();
    let ys = compact.y_letters.len();
    let total = q_count * (1 + xs + xs * ys);
    let mut owner = Vec::with_capacity(total);
    let mut gamma = Vec::with_capacity(total);
    let mut succ: Vec<Vec<u32>> = Vec::with_capacity(total);

    let base = |q: usize| q as u32;
    let xnode = |q: usize, xi: usize| (q_count + q * xs + xi) as u32;
    let ynode = |q: usize, xi: usize, yi: usize| (q_count + q_count * xs + (q * xs + xi) * ys + yi) as u32;

    for q in 0..q_count {
        owner.push(Owner::System);
        gamma.push(compact.gamma(q as u32));
        succ.push((0..xs).map(|xi| xnode(q, xi)).collect());
    }
    for q in 0..q_count {
        for xi in 0..xs {
            owner.push(Owner::Environment);
            gamma.push(compact.gamma(q as u32));
            succ.push((0..ys).map(|yi| ynode(q, xi, yi)).collect());
        }
    }
    for q in 0..q_count {
        for xi in 0..xs {
            for yi in 0..ys {
                owner.push(Owner::Environment);
                gamma.push(compact.gamma(q as u32));
                let letter = compact.x_letters[xi] | compact.y_letters[yi];
                succ.push(vec![base(compact.product.step(q as u32, letter) as usize)]);
            }
        }
    }
    let arena = Arena::new(owner, gamma, succ).expect("expansion is well-formed");
    let bases = (0..q_count as u32).collect();
    (arena, bases)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::formula_to_dfa;
    use crate::formula::{parse_trace_formula, Dialect};

    fn dfa(src: &str, alphabet: &Arc<Alphabet>) -> Dfa {
        let phi = parse_trace_formula(src, Dialect::Ltlf).unwrap();
        formula_to_dfa(&phi, alphabet, &Budget::default()).unwrap()
    }

    #[test]
    fn two_components_product_gamma() {
        let alphabet = Alphabet::from_names(&["a", "b"]);
        let d1 = dfa("F a", &alphabet);
        let d2 = dfa("F b", &alphabet);
        assert_eq!(d1.state_count(), 2);
        let p = Product::build(vec![d1, d2], &Budget::default()).unwrap();
        assert!(p.len() <= 4);
        // initial state accepts neither component
        assert_eq!(p.gamma[p.initial as usize], 0);
        // after reading {a,b} both components accept
        let q = p.step(p.initial, 0b11);
        assert_eq!(p.gamma[q as usize], 0b11);
    }

    #[test]
    fn singleton_product_is_isomorphic() {
        let alphabet = Alphabet::from_names(&["a"]);
        let d = dfa("F a", &alphabet);
        let states = d.state_count();
        let p = Product::build(vec![d], &Budget::default()).unwrap();
        assert_eq!(p.len(), states);
    }

    #[test]
    fn disjoint_components_multiply() {
        let alphabet = Alphabet::from_names(&["a", "b"]);
        let d1 = dfa("F a", &alphabet);
        let d2 = dfa("F b", &alphabet);
        let (r1, r2) = (d1.state_count(), d2.state_count());
        let p = Product::build(vec![d1, d2], &Budget::default()).unwrap();
        assert_eq!(p.len(), r1 * r2);
    }

    #[test]
    fn expanded_arena_node_count() {
        let alphabet = Alphabet::from_names(&["x", "y"]);
        let d = Dfa {
            alphabet,
            delta: vec![vec![0; 4]],
            initial: 0,
            accepting: vec![true],
            has_fresh_initial: false,
            sinkified: crate::automata::Sinkified::None,
        };
        let p = Product::build(vec![d], &Budget::default()).unwrap();
        let compact = CompactArena::build(
            p,
            &["y".to_string()],
            &["x".to_string()],
            &Budget::default(),
        )
        .unwrap();
        let (arena, _) = expand_synthesis_arena(&compact);
        // 1 + 2^|X| + 2^|X| * 2^|Y|
        assert_eq!(arena.len(), 1 + 2 + 4);
    }
}
