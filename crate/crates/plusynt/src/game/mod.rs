//! Objectives, game arenas, and the product construction.

mod arena;
mod objective;
mod product;

pub use arena::{Arena, Owner};
pub use objective::{
    el_reduction, objective_from_plus, AtomOp, ColorSpace, EventSet, Literal, ObjFormula,
    Objective, ObjectiveMode,
};
pub use product::{expand_synthesis_arena, CompactArena, Product};

pub type ColorSet = u32;
