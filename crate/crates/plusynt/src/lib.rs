//! Reactive synthesis for LTLf+ and PPLTL+.
//!
//! The pipeline turns a positive Boolean combination of quantified
//! finite-trace formulas into deterministic finite automata, assembles a
//! game over their product, solves it, and emits a verified winning
//! strategy as a Mealy-style transducer.
//!
//! Two solving backends are provided:
//!
//! * an Emerson-Lei game solver that evaluates the fixpoint equation
//!   system extracted from the Zielonka tree of the objective, and
//! * a Manna-Pnueli game solver that partitions the arena by local-event
//!   memory into a DAG of simpler Emerson-Lei games and solves them
//!   bottom-up (with a pure attractor fast path for obligation
//!   objectives).
//!
//! An independent solver based on a latest-appearance-record reduction to
//! parity games serves as a test oracle, and every extracted strategy can
//! be checked by a one-player emptiness test against the negated
//! objective.

pub mod automata;
pub mod bench;
pub mod formula;
pub mod game;
pub mod mp;
pub mod solver;
pub mod synth;
pub mod zielonka;

mod bitset;
mod budget;
mod error;

pub use bitset::NodeSet;
pub use budget::Budget;
pub use error::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
