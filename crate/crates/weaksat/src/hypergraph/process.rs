use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::constructions::{build_g0, ConstructionError};
use super::graph::{DPartiteGraph, Edge};
use super::pattern::{Mode, Pattern};
use super::witness::{first_missing_tuple, new_copy_witness, CopyWitness};

/// One saturation step: an added edge together with the pattern copy it
/// completes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProcessStep {
    pub edge: Edge,
    #[serde(flatten)]
    pub witness: CopyWitness,
}

/// An ordered list of edge additions, each carrying its copy witness.
/// Replayed from a base graph by [`verify_process`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct SaturationProcess {
    pub steps: Vec<ProcessStep>,
}

impl SaturationProcess {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("process serialization");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

/// Why a replay was rejected. Step indices are 1-based.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ProcessViolation {
    #[error("malformed input: {reason}")]
    Malformed { reason: String },
    #[error("step {step}: edge already present")]
    EdgeAlreadyPresent { step: usize },
    #[error("step {step}: witness incomplete: {reason}")]
    WitnessIncomplete { step: usize, reason: String },
    #[error("step {step}: wrong sizes: {reason}")]
    WrongSizes { step: usize, reason: String },
    #[error("not complete after {steps} steps: {missing} edges still missing")]
    NotCompleteAtEnd { steps: usize, missing: usize },
}

/// Replays `proc` from `g` and accepts iff every step adds a fresh edge whose
/// witness is a complete pattern copy through it (sizes matching the pattern
/// under the step's orientation), and the final graph is complete.
pub fn verify_process(
    g: &DPartiteGraph,
    proc: &SaturationProcess,
    pattern: &Pattern,
) -> Result<(), ProcessViolation> {
    if g.d() != pattern.d() || g.n() != pattern.n() {
        return Err(ProcessViolation::Malformed {
            reason: format!(
                "graph is {}^{}, pattern expects {}^{}",
                g.n(),
                g.d(),
                pattern.n(),
                pattern.d()
            ),
        });
    }
    let d = g.d();
    let n = g.n();
    let mut cur = g.clone();
    for (t, step) in proc.steps.iter().enumerate() {
        let step_no = t + 1;
        if step.edge.d() != d || step.edge.coords().iter().any(|&x| x == 0 || x > n) {
            return Err(ProcessViolation::Malformed {
                reason: format!("step {step_no}: edge {} outside the lattice", step.edge),
            });
        }
        if cur.contains(&step.edge) {
            return Err(ProcessViolation::EdgeAlreadyPresent { step: step_no });
        }
        check_witness_shape(step_no, step, pattern)?;
        if let Some(missing) = first_missing_tuple(&cur, &step.witness.classes, &step.edge) {
            return Err(ProcessViolation::WitnessIncomplete {
                step: step_no,
                reason: format!("tuple {missing} absent"),
            });
        }
        cur.insert(&step.edge);
    }
    if !cur.is_complete() {
        return Err(ProcessViolation::NotCompleteAtEnd {
            steps: proc.steps.len(),
            missing: cur.cell_count() - cur.edge_count(),
        });
    }
    Ok(())
}

fn check_witness_shape(
    step_no: usize,
    step: &ProcessStep,
    pattern: &Pattern,
) -> Result<(), ProcessViolation> {
    let d = pattern.d();
    let n = pattern.n();
    let w = &step.witness;
    let wrong = |reason: String| ProcessViolation::WrongSizes {
        step: step_no,
        reason,
    };
    if w.classes.len() != d {
        return Err(wrong(format!("{} class sets, expected {d}", w.classes.len())));
    }
    let mut sorted_pi = w.orientation.clone();
    sorted_pi.sort_unstable();
    if !sorted_pi.iter().copied().eq(1..=d) {
        return Err(wrong(format!("orientation {:?} is not a permutation of 1..={d}", w.orientation)));
    }
    if pattern.mode() == Mode::Directed && w.orientation.iter().copied().ne(1..=d) {
        return Err(wrong("directed mode requires the identity orientation".into()));
    }
    for (i, set) in w.classes.iter().enumerate() {
        let want = pattern.p()[w.orientation[i] - 1];
        if set.len() != want {
            return Err(wrong(format!(
                "class {} holds {} vertices, orientation demands {want}",
                i + 1,
                set.len()
            )));
        }
        if set.iter().any(|&v| v == 0 || v > n) {
            return Err(wrong(format!("class {} contains a label outside 1..={n}", i + 1)));
        }
    }
    for (i, (&x, set)) in step.edge.coords().iter().zip(&w.classes).enumerate() {
        if !set.contains(&x) {
            return Err(ProcessViolation::WitnessIncomplete {
                step: step_no,
                reason: format!("witness class {} does not contain edge coordinate {x}", i + 1),
            });
        }
    }
    Ok(())
}

/// Greedy closure in canonical (lattice) candidate order. Returns the closed
/// graph and the process built along the way; `g` is weakly saturated iff
/// the closure is complete. The closed edge set does not depend on the
/// candidate order, only the process does.
pub fn greedy_closure(g: &DPartiteGraph, pattern: &Pattern) -> (DPartiteGraph, SaturationProcess) {
    let order: Vec<Edge> = g.non_edges().collect();
    greedy_closure_with_order(g, pattern, &order)
}

/// Greedy closure restricted to the given candidate list: repeatedly sweeps
/// `order`, adding any listed non-edge that currently admits a witness, until
/// a full sweep adds nothing. Non-edges absent from `order` are never added.
pub fn greedy_closure_with_order(
    g: &DPartiteGraph,
    pattern: &Pattern,
    order: &[Edge],
) -> (DPartiteGraph, SaturationProcess) {
    let mut cur = g.clone();
    let mut steps = Vec::new();
    let mut pending: Vec<Edge> = order.iter().filter(|e| !cur.contains(e)).cloned().collect();
    loop {
        let before = pending.len();
        pending.retain(|e| {
            if cur.contains(e) {
                return false;
            }
            match new_copy_witness(&cur, e, pattern) {
                Some(witness) => {
                    cur.insert(e);
                    steps.push(ProcessStep {
                        edge: e.clone(),
                        witness,
                    });
                    false
                }
                None => true,
            }
        });
        if pending.is_empty() || pending.len() == before {
            break;
        }
    }
    (cur, SaturationProcess { steps })
}

/// Lean saturation test: closes the graph without recording witnesses.
pub fn is_weakly_saturated(g: &DPartiteGraph, pattern: &Pattern) -> bool {
    let mut cur = g.clone();
    let mut pending: Vec<Edge> = g.non_edges().collect();
    loop {
        let before = pending.len();
        pending.retain(|e| {
            if new_copy_witness(&cur, e, pattern).is_some() {
                cur.insert(e);
                false
            } else {
                true
            }
        });
        if pending.is_empty() {
            return true;
        }
        if pending.len() == before {
            return false;
        }
    }
}

/// The weight-ordered saturation process of the extremal construction: the
/// non-edges of `build_g0(pattern)` in nondecreasing weight (ties broken
/// lexicographically on coordinates), each witnessed by the copy spanned by
/// the first `p_j - 1` labels of every class, where `j` is the rank of the
/// class's coordinate among the edge's coordinates (ties by class index).
pub fn weight_process(pattern: &Pattern) -> Result<SaturationProcess, ConstructionError> {
    let g0 = build_g0(pattern)?;
    let mut non_edges: Vec<Edge> = g0.non_edges().collect();
    non_edges.sort_by_key(|e| (e.weight(), e.coords().to_vec()));
    let steps = non_edges
        .into_iter()
        .map(|edge| {
            let witness = rank_witness(&edge, pattern);
            ProcessStep { edge, witness }
        })
        .collect();
    Ok(SaturationProcess { steps })
}

/// Witness used by the weight process: class `i`, whose coordinate is the
/// j-th smallest of the edge, contributes labels `1..p_j - 1` plus the
/// coordinate itself.
fn rank_witness(e: &Edge, pattern: &Pattern) -> CopyWitness {
    let d = pattern.d();
    let mut by_value: Vec<usize> = (0..d).collect();
    by_value.sort_by_key(|&i| (e.coords()[i], i));
    let mut orientation = vec![0usize; d];
    for (rank, &class) in by_value.iter().enumerate() {
        orientation[class] = rank + 1;
    }
    let classes = (0..d)
        .map(|i| {
            let p_rank = pattern.p()[orientation[i] - 1];
            let mut set: BTreeSet<usize> = (1..p_rank).collect();
            set.insert(e.coords()[i]);
            set
        })
        .collect();
    CopyWitness {
        classes,
        orientation,
    }
}
