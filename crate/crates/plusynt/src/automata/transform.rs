//! Initial-state freshening and the sink-state transformation.

use crate::automata::{Dfa, Sinkified};
use crate::formula::Quantifier;
use crate::{Error, Result};

/// Returns a language-equal DFA whose initial state has no incoming
/// transitions, adding at most one state.
pub fn fresh_initial(dfa: &Dfa) -> Dfa {
    let has_incoming = dfa
        .delta
        .iter()
        .any(|row| row.iter().any(|&q| q == dfa.initial));
    let mut out = dfa.clone();
    if has_incoming {
        let clone_id = out.state_count() as u32;
        out.delta.push(out.delta[out.initial as usize].clone());
        out.accepting.push(out.accepting[out.initial as usize]);
        out.initial = clone_id;
    }
    out.has_fresh_initial = true;
    out
}

/// Turns accepting (`Exists`) or non-accepting (`Forall`) states into
/// self-loop sinks. The initial-acceptance flip of the synthesis pipeline
/// is applied by the caller beforehand; this transformation only freezes
/// states, which gives the automaton one bit of memory: whether the
/// relevant set has been visited.
pub fn sinkify(dfa: &Dfa, quantifier: Quantifier) -> Result<Dfa> {
    if !dfa.has_fresh_initial {
        return Err(Error::precondition("sinkify requires a fresh initial state"));
    }
    let mut out = dfa.clone();
    match quantifier {
        Quantifier::Exists => {
            for q in 0..out.state_count() {
                if out.accepting[q] {
                    out.delta[q].fill(q as u32);
                }
            }
            out.sinkified = Sinkified::Exists;
        }
        Quantifier::Forall => {
            for q in 0..out.state_count() {
                if !out.accepting[q] {
                    out.delta[q].fill(q as u32);
                }
            }
            out.sinkified = Sinkified::Forall;
        }
        _ => return Err(Error::precondition("sinkify applies to Exists/Forall only")),
    }
    Ok(out)
}
