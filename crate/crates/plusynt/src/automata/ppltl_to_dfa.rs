//! Direct past-dialect translation to DFA.
//!
//! A state is the truth valuation of the temporal subformulas at the
//! position read last: yesterday-nodes store their argument's value,
//! since/once/historically-nodes store their own. The successor valuation
//! is computed bottom-up from the new letter and the previous valuation,
//! and a state accepts exactly when the whole formula holds at the
//! position just read.

use std::collections::HashMap;
use std::sync::Arc;

use crate::automata::{Dfa, Sinkified};
use crate::formula::{Alphabet, Letter, TraceFormula};
use crate::{Budget, Error, Result};

/// Temporal subformulas needing one memory bit each, in postorder.
fn collect_memory_nodes<'a>(phi: &'a TraceFormula, out: &mut Vec<&'a TraceFormula>) {
    use TraceFormula::*;
    match phi {
        True | False | Prop(_) => {}
        Not(a) | Once(a) | Historically(a) | WeakYesterday(a) | StrongYesterday(a) => {
            collect_memory_nodes(a, out)
        }
        And(a, b) | Or(a, b) | Since(a, b) => {
            collect_memory_nodes(a, out);
            collect_memory_nodes(b, out);
        }
        WeakNext(_) | StrongNext(_) | Eventually(_) | Always(_) | Until(..) | Release(..) => {
            unreachable!("future operator in ppltl translation")
        }
    }
    if matches!(phi, Once(_) | Historically(_) | Since(..) | WeakYesterday(_) | StrongYesterday(_)) {
        if !out.iter().any(|f| *f == phi) {
            out.push(phi);
        }
    }
}

struct Translator<'a> {
    nodes: Vec<&'a TraceFormula>,
    alphabet: &'a Alphabet,
}

impl<'a> Translator<'a> {
    /// Value of `phi` at the new position, given the previous memory bits
    /// (`None` encodes the pre-trace state). Fills `new_bits` for the
    /// memory nodes it passes: yesterday-nodes store their argument's
    /// current value, the others store their own.
    fn value(&self, phi: &TraceFormula, letter: Letter, prev: Option<u64>, new_bits: &mut u64) -> bool {
        use TraceFormula::*;
        let store = |bits: &mut u64, idx: usize, v: bool| {
            if v {
                *bits |= 1 << idx;
            } else {
                *bits &= !(1 << idx);
            }
        };
        match phi {
            True => true,
            False => false,
            Prop(p) => self.alphabet.index_of(p).is_some_and(|bit| letter >> bit & 1 == 1),
            Not(a) => !self.value(a, letter, prev, new_bits),
            And(a, b) => {
                let va = self.value(a, letter, prev, new_bits);
                let vb = self.value(b, letter, prev, new_bits);
                va && vb
            }
            Or(a, b) => {
                let va = self.value(a, letter, prev, new_bits);
                let vb = self.value(b, letter, prev, new_bits);
                va || vb
            }
            StrongYesterday(a) => {
                let va = self.value(a, letter, prev, new_bits);
                store(new_bits, self.node_index(phi), va);
                match prev {
                    None => false,
                    Some(bits) => bits >> self.node_index(phi) & 1 == 1,
                }
            }
            WeakYesterday(a) => {
                let va = self.value(a, letter, prev, new_bits);
                store(new_bits, self.node_index(phi), va);
                match prev {
                    None => true,
                    Some(bits) => bits >> self.node_index(phi) & 1 == 1,
                }
            }
            Once(a) => {
                let now = self.value(a, letter, prev, new_bits);
                let before = prev.is_some_and(|bits| bits >> self.node_index(phi) & 1 == 1);
                let v = now || before;
                store(new_bits, self.node_index(phi), v);
                v
            }
            Historically(a) => {
                let now = self.value(a, letter, prev, new_bits);
                let before = prev.is_none_or(|bits| bits >> self.node_index(phi) & 1 == 1);
                let v = now && before;
                store(new_bits, self.node_index(phi), v);
                v
            }
            Since(a, b) => {
                let va = self.value(a, letter, prev, new_bits);
                let vb = self.value(b, letter, prev, new_bits);
                let before = prev.is_some_and(|bits| bits >> self.node_index(phi) & 1 == 1);
                let v = vb || (va && before);
                store(new_bits, self.node_index(phi), v);
                v
            }
            WeakNext(_) | StrongNext(_) | Eventually(_) | Always(_) | Until(..) | Release(..) => {
                unreachable!("future operator in ppltl translation")
            }
        }
    }

    fn node_index(&self, phi: &TraceFormula) -> usize {
        self.nodes.iter().position(|f| *f == phi).expect("memory node registered")
    }
}

pub fn ppltl_to_dfa(phi: &TraceFormula, alphabet: &Arc<Alphabet>, budget: &Budget) -> Result<Dfa> {
    if phi.uses_future() {
        return Err(Error::precondition("ppltl_to_dfa requires a past-dialect formula"));
    }
    let mut nodes = Vec::new();
    collect_memory_nodes(phi, &mut nodes);
    if nodes.len() > 60 {
        return Err(Error::precondition("too many temporal subformulas for the bit encoding"));
    }
    let translator = Translator { nodes, alphabet };

    // state 0 is the pre-trace state; others are (bits, accepting) pairs
    let mut index: HashMap<(u64, bool), u32> = HashMap::new();
    let mut states: Vec<Option<(u64, bool)>> = vec![None];
    let mut delta: Vec<Vec<u32>> = Vec::new();

    let mut at = 0;
    while at < states.len() {
        budget.check_states(states.len())?;
        let prev = states[at].map(|(bits, _)| bits);
        let mut row = Vec::with_capacity(alphabet.letter_count());
        for letter in alphabet.letters() {
            let mut new_bits = 0u64;
            let accepting = translator.value(phi, letter, prev, &mut new_bits);
            let key = (new_bits, accepting);
            let id = *index.entry(key).or_insert_with(|| {
                states.push(Some(key));
                states.len() as u32 - 1
            });
            row.push(id);
        }
        delta.push(row);
        at += 1;
    }

    let accepting = states.iter().map(|s| s.map(|(_, acc)| acc).unwrap_or(false)).collect();

    Ok(Dfa {
        alphabet: alphabet.clone(),
        delta,
        initial: 0,
        accepting,
        has_fresh_initial: true,
        sinkified: Sinkified::None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse_trace_formula, Dialect, Trace};

    fn dfa_for(src: &str, props: &[&str]) -> Dfa {
        let alphabet = Alphabet::from_names(props);
        let phi = parse_trace_formula(src, Dialect::Ppltl).unwrap();
        ppltl_to_dfa(&phi, &alphabet, &Budget::default()).unwrap()
    }

    #[test]
    fn once_a_tracks_history() {
        let dfa = dfa_for("O a", &["a"]);
        let alphabet = dfa.alphabet.clone();
        assert!(dfa.accepts(&Trace::from_names(&alphabet, &[&[], &["a"]])));
        assert!(!dfa.accepts(&Trace::from_names(&alphabet, &[&[]])));
        assert!(dfa.accepts(&Trace::from_names(&alphabet, &[&["a"], &[]])));
    }

    #[test]
    fn first_accepts_exactly_length_one() {
        let dfa = dfa_for("first", &["a"]);
        let alphabet = dfa.alphabet.clone();
        assert!(dfa.accepts(&Trace::from_names(&alphabet, &[&[]])));
        assert!(dfa.accepts(&Trace::from_names(&alphabet, &[&["a"]])));
        assert!(!dfa.accepts(&Trace::from_names(&alphabet, &[&[], &[]])));
        assert!(!dfa.accepts(&Trace::from_names(&alphabet, &[&[], &[], &["a"]])));
    }

    #[test]
    fn historically_requires_every_letter() {
        let dfa = dfa_for("H a", &["a", "b"]);
        let alphabet = dfa.alphabet.clone();
        assert!(dfa.accepts(&Trace::from_names(&alphabet, &[&["a"], &["a", "b"]])));
        assert!(!dfa.accepts(&Trace::from_names(&alphabet, &[&["a"], &["b"]])));
    }

    #[test]
    fn language_matches_eval_on_small_traces() {
        for src in ["O a", "H a", "a S b", "Y a", "Y! (a || b)", "first && a", "O(a && first)"] {
            let dfa = dfa_for(src, &["a", "b"]);
            let phi = parse_trace_formula(src, Dialect::Ppltl).unwrap();
            let alphabet = dfa.alphabet.clone();
            for len in 1..=3usize {
                for id in 0..alphabet.letter_count().pow(len as u32) {
                    let mut letters = Vec::new();
                    let mut rest = id;
                    for _ in 0..len {
                        letters.push((rest % alphabet.letter_count()) as u32);
                        rest /= alphabet.letter_count();
                    }
                    let t = Trace::new(alphabet.clone(), letters);
                    assert_eq!(
                        dfa.accepts(&t),
                        phi.eval_ppltl(&t, len - 1).unwrap(),
                        "{src} on {:?}",
                        t.letters
                    );
                }
            }
        }
    }
}
