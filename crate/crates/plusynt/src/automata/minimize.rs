//! Moore partition refinement on the reachable part of a complete DFA.

use std::collections::HashMap;

use crate::automata::{Dfa, Sinkified};

/// Returns the minimal complete DFA with the same nonempty-word language.
///
/// Freshness and sink flags are dropped: minimization may merge the
/// initial state into a cycle and collapse sink structure, so it is
/// applied before those transformations, never after.
pub fn minimize(dfa: &Dfa) -> Dfa {
    // restrict to reachable states
    let mut reach: Vec<u32> = vec![dfa.initial];
    let mut seen = vec![false; dfa.state_count()];
    seen[dfa.initial as usize] = true;
    let mut at = 0;
    while at < reach.len() {
        let q = reach[at];
        at += 1;
        for &q2 in &dfa.delta[q as usize] {
            if !seen[q2 as usize] {
                seen[q2 as usize] = true;
                reach.push(q2);
            }
        }
    }

    // class per state; start from the acceptance split and refine until
    // the class count stops growing (refinement is monotone)
    let mut class: Vec<u32> = dfa.accepting.iter().map(|&a| a as u32).collect();
    let mut class_count = 2;
    loop {
        let mut signature_ids: HashMap<(u32, Vec<u32>), u32> = HashMap::new();
        let mut next_class = vec![0u32; dfa.state_count()];
        for &q in &reach {
            let sig: Vec<u32> =
                dfa.delta[q as usize].iter().map(|&q2| class[q2 as usize]).collect();
            let id = signature_ids.len() as u32;
            let entry = *signature_ids.entry((class[q as usize], sig)).or_insert(id);
            next_class[q as usize] = entry;
        }
        let next_count = signature_ids.len();
        class = next_class;
        if next_count == class_count {
            break;
        }
        class_count = next_count;
    }

    // one representative per class, in first-seen order
    let mut rep_of_class: HashMap<u32, u32> = HashMap::new();
    let mut reps: Vec<u32> = Vec::new();
    for &q in &reach {
        rep_of_class.entry(class[q as usize]).or_insert_with(|| {
            reps.push(q);
            reps.len() as u32 - 1
        });
    }

    let delta = reps
        .iter()
        .map(|&q| {
            dfa.delta[q as usize]
                .iter()
                .map(|&q2| rep_of_class[&class[q2 as usize]])
                .collect()
        })
        .collect();
    let accepting = reps.iter().map(|&q| dfa.accepting[q as usize]).collect();

    Dfa {
        alphabet: dfa.alphabet.clone(),
        delta,
        initial: rep_of_class[&class[dfa.initial as usize]],
        accepting,
        has_fresh_initial: false,
        sinkified: Sinkified::None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{determinize, ltlf_to_nfa};
    use crate::formula::{parse_trace_formula, Alphabet, Dialect};
    use crate::Budget;

    #[test]
    fn duplicate_accepting_states_collapse() {
        let alphabet = Alphabet::from_names(&["a"]);
        // F a with a duplicated accepting state glued on by hand
        let dfa = Dfa {
            alphabet: alphabet.clone(),
            delta: vec![vec![0, 1], vec![2, 2], vec![1, 1]],
            initial: 0,
            accepting: vec![false, true, true],
            has_fresh_initial: false,
            sinkified: Sinkified::None,
        };
        let min = minimize(&dfa);
        assert_eq!(min.state_count(), 2);
        assert!(min.language_equal(&dfa));
    }

    #[test]
    fn idempotent_on_minimal_input() {
        let alphabet = Alphabet::from_names(&["a", "b"]);
        let phi = parse_trace_formula("a U b", Dialect::Ltlf).unwrap();
        let nfa = ltlf_to_nfa(&phi, &alphabet, &Budget::default()).unwrap();
        let min = minimize(&determinize(&nfa, &Budget::default()).unwrap());
        let again = minimize(&min);
        assert_eq!(min.state_count(), again.state_count());
        assert!(min.language_equal(&again));
    }
}
