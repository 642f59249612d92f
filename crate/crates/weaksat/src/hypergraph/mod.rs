//! The d-partite d-uniform hypergraph model.
//!
//! A host graph has `d` vertex classes of `n` vertices each, labeled `1..=n`;
//! an edge takes exactly one vertex from each class and is identified with a
//! d-tuple in `[n]^d`. Everything downstream (constructions, closure,
//! saturation processes, searches) works on this representation.

mod constructions;
mod graph;
mod pattern;
mod process;
mod witness;

pub use constructions::{build_g0, build_gk, build_lower_bound_gadget, ConstructionError};
pub use graph::{DPartiteGraph, Edge, GraphError, MAX_CELLS};
pub use pattern::{Mode, Pattern, PatternError};
pub use process::{
    greedy_closure, greedy_closure_with_order, is_weakly_saturated, verify_process,
    weight_process, ProcessStep, ProcessViolation, SaturationProcess,
};
pub use witness::{contains_oriented_complete, contains_pattern_copy, new_copy_witness, CopyWitness};
