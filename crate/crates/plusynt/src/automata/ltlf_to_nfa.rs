//! Formula progression: future-dialect formula to NFA.
//!
//! States are sets of obligations about the remaining suffix. Reading a
//! letter expands the conjunction of the current obligations one step;
//! the disjuncts of the expansion are the successor states. An obligation
//! carries a strength marker: a strong obligation requires another
//! position to exist, so a run may stop only in states whose obligations
//! are all weak.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::automata::Nfa;
use crate::formula::{Alphabet, Letter, TraceFormula};
use crate::{Budget, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Strength {
    Weak,
    Strong,
}

type Obligation = (Strength, TraceFormula);
type State = BTreeSet<Obligation>;

/// Disjunctive normal form over obligation sets: the outer vector is a
/// disjunction, each clause a conjunction of deferred obligations. An
/// empty clause means "satisfied with nothing deferred".
type Dnf = Vec<State>;

fn dnf_false() -> Dnf {
    Vec::new()
}

fn dnf_true() -> Dnf {
    vec![BTreeSet::new()]
}

fn dnf_unit(strength: Strength, phi: TraceFormula) -> Dnf {
    let mut clause = BTreeSet::new();
    clause.insert((strength, phi));
    vec![clause]
}

fn dnf_or(mut a: Dnf, b: Dnf) -> Dnf {
    for clause in b {
        if !a.contains(&clause) {
            a.push(clause);
        }
    }
    a
}

fn dnf_and(a: &Dnf, b: &Dnf) -> Dnf {
    let mut out: Dnf = Vec::new();
    for ca in a {
        for cb in b {
            let mut clause = ca.clone();
            clause.extend(cb.iter().cloned());
            if !out.contains(&clause) {
                out.push(clause);
            }
        }
    }
    out
}

/// One-step expansion of `phi` under `letter`: the Boolean combination of
/// next-position obligations left after checking the current position.
fn step(phi: &TraceFormula, letter: Letter, alphabet: &Alphabet) -> Dnf {
    use TraceFormula::*;
    match phi {
        True => dnf_true(),
        False => dnf_false(),
        Prop(p) => {
            let holds = alphabet.index_of(p).is_some_and(|bit| letter >> bit & 1 == 1);
            if holds {
                dnf_true()
            } else {
                dnf_false()
            }
        }
        Not(inner) => match &**inner {
            // NNF keeps negation on propositions only.
            Prop(p) => {
                let holds = alphabet.index_of(p).is_some_and(|bit| letter >> bit & 1 == 1);
                if holds {
                    dnf_false()
                } else {
                    dnf_true()
                }
            }
            other => unreachable!("progression expects NNF, found !({other})"),
        },
        And(a, b) => dnf_and(&step(a, letter, alphabet), &step(b, letter, alphabet)),
        Or(a, b) => dnf_or(step(a, letter, alphabet), step(b, letter, alphabet)),
        StrongNext(a) => dnf_unit(Strength::Strong, (**a).clone()),
        WeakNext(a) => dnf_unit(Strength::Weak, (**a).clone()),
        Eventually(a) => dnf_or(step(a, letter, alphabet), dnf_unit(Strength::Strong, phi.clone())),
        Always(a) => dnf_and(&step(a, letter, alphabet), &dnf_unit(Strength::Weak, phi.clone())),
        Until(a, b) => {
            // b now, or (a now and the until deferred to an existing next position)
            let defer = dnf_and(&step(a, letter, alphabet), &dnf_unit(Strength::Strong, phi.clone()));
            dnf_or(step(b, letter, alphabet), defer)
        }
        Release(a, b) => {
            // b now and (a now or the release deferred, vacuous at the end)
            let defer = dnf_or(step(a, letter, alphabet), dnf_unit(Strength::Weak, phi.clone()));
            dnf_and(&step(b, letter, alphabet), &defer)
        }
        WeakYesterday(_) | StrongYesterday(_) | Once(_) | Historically(_) | Since(..) => {
            unreachable!("past operator in ltlf progression")
        }
    }
}

/// Negation normal form for the future dialect.
fn nnf(phi: &TraceFormula, negated: bool) -> TraceFormula {
    use TraceFormula::*;
    match phi {
        True => {
            if negated {
                False
            } else {
                True
            }
        }
        False => {
            if negated {
                True
            } else {
                False
            }
        }
        Prop(_) => {
            if negated {
                phi.clone().not()
            } else {
                phi.clone()
            }
        }
        Not(a) => nnf(a, !negated),
        And(a, b) => {
            let (a, b) = (nnf(a, negated), nnf(b, negated));
            if negated {
                a.or(b)
            } else {
                a.and(b)
            }
        }
        Or(a, b) => {
            let (a, b) = (nnf(a, negated), nnf(b, negated));
            if negated {
                a.and(b)
            } else {
                a.or(b)
            }
        }
        StrongNext(a) => {
            let a = nnf(a, negated);
            if negated {
                WeakNext(Box::new(a))
            } else {
                StrongNext(Box::new(a))
            }
        }
        WeakNext(a) => {
            let a = nnf(a, negated);
            if negated {
                StrongNext(Box::new(a))
            } else {
                WeakNext(Box::new(a))
            }
        }
        Eventually(a) => {
            let a = nnf(a, negated);
            if negated {
                Always(Box::new(a))
            } else {
                Eventually(Box::new(a))
            }
        }
        Always(a) => {
            let a = nnf(a, negated);
            if negated {
                Eventually(Box::new(a))
            } else {
                Always(Box::new(a))
            }
        }
        Until(a, b) => {
            let (a, b) = (nnf(a, negated), nnf(b, negated));
            if negated {
                Release(Box::new(a), Box::new(b))
            } else {
                Until(Box::new(a), Box::new(b))
            }
        }
        Release(a, b) => {
            let (a, b) = (nnf(a, negated), nnf(b, negated));
            if negated {
                Until(Box::new(a), Box::new(b))
            } else {
                Release(Box::new(a), Box::new(b))
            }
        }
        WeakYesterday(_) | StrongYesterday(_) | Once(_) | Historically(_) | Since(..) => {
            unreachable!("past operator in ltlf nnf")
        }
    }
}

/// Builds an NFA accepting exactly the nonempty finite traces that
/// satisfy `phi` at position 0.
pub fn ltlf_to_nfa(phi: &TraceFormula, alphabet: &Arc<Alphabet>, budget: &Budget) -> Result<Nfa> {
    if phi.uses_past() {
        return Err(Error::precondition("ltlf_to_nfa requires a future-dialect formula"));
    }
    let normalized = nnf(phi, false);

    let mut index: HashMap<State, u32> = HashMap::new();
    let mut states: Vec<State> = Vec::new();
    let mut intern = |s: State, states: &mut Vec<State>| -> u32 {
        if let Some(&i) = index.get(&s) {
            return i;
        }
        let i = states.len() as u32;
        index.insert(s.clone(), i);
        states.push(s);
        i
    };

    // Position 0 must exist, so the initial obligation is strong.
    let mut initial_state = BTreeSet::new();
    initial_state.insert((Strength::Strong, normalized));
    let initial = intern(initial_state, &mut states);

    let mut transitions: Vec<Vec<Vec<u32>>> = Vec::new();
    let mut frontier = vec![initial];
    while let Some(q) = frontier.pop() {
        while transitions.len() <= q as usize {
            transitions.push(Vec::new());
        }
        if !transitions[q as usize].is_empty() {
            continue;
        }
        let obligations = states[q as usize].clone();
        let mut rows = Vec::with_capacity(alphabet.letter_count());
        for letter in alphabet.letters() {
            let mut dnf = dnf_true();
            for (_, ob) in &obligations {
                dnf = dnf_and(&dnf, &step(ob, letter, alphabet));
                if dnf.is_empty() {
                    break;
                }
            }
            let mut succs = Vec::with_capacity(dnf.len());
            for clause in dnf {
                let id = intern(clause, &mut states);
                budget.check_states(states.len())?;
                if !succs.contains(&id) {
                    succs.push(id);
                }
                if transitions.len() <= id as usize || transitions[id as usize].is_empty() {
                    frontier.push(id);
                }
            }
            rows.push(succs);
        }
        transitions[q as usize] = rows;
    }

    // A run may end only where every pending obligation is weak.
    let accepting = states
        .iter()
        .map(|s| s.iter().all(|(strength, _)| *strength == Strength::Weak))
        .collect();

    while transitions.len() < states.len() {
        transitions.push(vec![Vec::new(); alphabet.letter_count()]);
    }

    Ok(Nfa { alphabet: alphabet.clone(), transitions, initial: vec![initial], accepting })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse_trace_formula, Dialect, Trace};

    fn nfa_for(src: &str, props: &[&str]) -> Nfa {
        let alphabet = Alphabet::from_names(props);
        let phi = parse_trace_formula(src, Dialect::Ltlf).unwrap();
        ltlf_to_nfa(&phi, &alphabet, &Budget::default()).unwrap()
    }

    #[test]
    fn until_language_samples() {
        let nfa = nfa_for("a U b", &["a", "b"]);
        let alphabet = nfa.alphabet.clone();
        assert!(nfa.accepts(&Trace::from_names(&alphabet, &[&["b"]])));
        assert!(nfa.accepts(&Trace::from_names(&alphabet, &[&["a"], &["b"]])));
        assert!(!nfa.accepts(&Trace::from_names(&alphabet, &[&["a"]])));
    }

    #[test]
    fn false_has_empty_language() {
        let nfa = nfa_for("false", &["a"]);
        let alphabet = nfa.alphabet.clone();
        for len in 1..=3 {
            for word in 0..(1u32 << len) {
                let letters = (0..len).map(|i| word >> i & 1).collect();
                assert!(!nfa.accepts(&Trace::new(alphabet.clone(), letters)));
            }
        }
    }

    #[test]
    fn language_matches_eval_on_small_traces() {
        for src in ["F(a && X false)", "a U b", "G(a -> X b)", "X! a", "a R b", "F a && G(b || a)"] {
            let nfa = nfa_for(src, &["a", "b"]);
            let phi = parse_trace_formula(src, Dialect::Ltlf).unwrap();
            let alphabet = nfa.alphabet.clone();
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
                        nfa.accepts(&t),
                        phi.eval_ltlf(&t, 0).unwrap(),
                        "{src} on {:?}",
                        t.letters
                    );
                }
            }
        }
    }
}
