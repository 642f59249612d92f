//! Exact combinatorics of weak and strong saturation in d-partite d-uniform
//! hypergraphs.
//!
//! The crate has four parts:
//!
//! - [`hypergraph`]: the host-graph model (edges are d-tuples over `[n]^d`),
//!   extremal constructions, copy-witness search, greedy closure, and
//!   saturation-process verification.
//! - [`formulas`]: exact big-integer evaluators for the saturation counts
//!   `q_n`, `W`, the directed variant, the inclusion-exclusion expansions,
//!   and the permutation-relaxed set-count `Q`, each with an independent
//!   enumeration route.
//! - [`families`]: two-families set-pair systems over partitioned ground
//!   sets, condition verifiers, the extremal construction, and the reduction
//!   from saturation processes to family pairs.
//! - [`search`]: brute-force certification of minimum saturation numbers on
//!   tiny instances, the independent oracle layer for everything above.
//!
//! All counting is exact (arbitrary precision); all operations are pure
//! functions over immutable values and safe to call concurrently.

pub mod families;
pub mod formulas;
pub mod hypergraph;
pub mod search;

mod util;

pub use families::{
    build_extremal, saturation_to_families, verify_conditions, ConditionViolation, FamilyPair,
    TheoremVariant,
};
pub use formulas::{CountMethod, CountResult};
pub use hypergraph::{
    build_g0, build_gk, build_lower_bound_gadget, contains_oriented_complete, greedy_closure,
    is_weakly_saturated, new_copy_witness, verify_process, weight_process, CopyWitness,
    DPartiteGraph, Edge, Mode, Pattern, ProcessViolation, SaturationProcess,
};
pub use search::{
    conjecture_table, min_strong_saturation, min_weak_saturation, strong_sat_check,
    SearchCertificate, SearchOptions, SearchOutcome,
};
