//! Set-pair systems over partitioned ground sets.
//!
//! A [`FamilyPair`] holds two equally long sequences of sets `A_i`, `B_i`
//! over disjoint parts `X_1..X_d`, together with per-part caps. The
//! verifier checks the four cross-intersection conditions, the builder
//! produces the extremal pair whose length meets the `Q` bound exactly, and
//! the reduction turns a verified saturation process into such a pair.

use std::cmp::Reverse;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formulas::{q_enumerate, FormulaError};
use crate::hypergraph::{verify_process, DPartiteGraph, Pattern, ProcessViolation, SaturationProcess};
use crate::util::{combinations, sorted_dominated};

/// An element of the partitioned ground set: `(part, label)`, both 1-based.
pub type Element = (usize, usize);

/// Sum of the labels of a set's members (part indices do not contribute).
pub fn set_weight(set: &BTreeSet<Element>) -> usize {
    set.iter().map(|&(_, label)| label).sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyPairEntry {
    pub a: BTreeSet<Element>,
    pub b: BTreeSet<Element>,
}

/// Two families of subsets of `X_1 ∪ .. ∪ X_d` with per-part caps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyPair {
    /// Part sizes `|X_1|, .., |X_d|`.
    pub parts: Vec<usize>,
    pub caps_a: Vec<usize>,
    pub caps_b: Vec<usize>,
    pub pairs: Vec<FamilyPairEntry>,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("caps and parts must share one nonzero length")]
    ShapeMismatch,
    #[error("pair {i}: element ({part},{label}) outside the ground set")]
    ElementOutOfRange { i: usize, part: usize, label: usize },
    #[error("invalid saturation process: {0}")]
    InvalidProcess(#[from] ProcessViolation),
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

impl FamilyPair {
    pub fn h(&self) -> usize {
        self.pairs.len()
    }

    pub fn d(&self) -> usize {
        self.parts.len()
    }

    /// Structural validation: shape agreement and element ranges.
    pub fn validate(&self) -> Result<(), FamilyError> {
        let d = self.parts.len();
        if d == 0 || self.caps_a.len() != d || self.caps_b.len() != d {
            return Err(FamilyError::ShapeMismatch);
        }
        for (i, entry) in self.pairs.iter().enumerate() {
            for &(part, label) in entry.a.iter().chain(entry.b.iter()) {
                if part == 0 || part > d || label == 0 || label > self.parts[part - 1] {
                    return Err(FamilyError::ElementOutOfRange {
                        i: i + 1,
                        part,
                        label,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("family serialization");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

/// Which cap discipline condition 4 uses: `New` accepts any permutation of
/// the `a`-caps per pair, `Alon` pins the identity assignment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TheoremVariant {
    New,
    Alon,
}

/// First violated condition, with 1-based pair indices.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ConditionViolation {
    #[error("condition 1 violated at pair {i}: A_{i} intersects B_{i}")]
    NotDisjoint { i: usize },
    #[error("condition 2 violated at pairs ({i},{j}): A_{i} misses B_{j}")]
    MissingIntersection { i: usize, j: usize },
    #[error("condition 3 violated at pair {i}, part {j}: |B ∩ X_{j}| = {got} > {cap}")]
    BCapExceeded { i: usize, j: usize, got: usize, cap: usize },
    #[error("condition 4 violated at pair {i}: {reason}")]
    ACapExceeded { i: usize, reason: String },
    #[error("malformed family pair: {0}")]
    Invalid(String),
}

/// Word-packed set representation for the pairwise intersection sweep.
struct PackedPair {
    a: Vec<u64>,
    b: Vec<u64>,
}

fn pack(set: &BTreeSet<Element>, offsets: &[usize], words: usize) -> Vec<u64> {
    let mut out = vec![0u64; words];
    for &(part, label) in set {
        let bit = offsets[part - 1] + label - 1;
        out[bit / 64] |= 1 << (bit % 64);
    }
    out
}

fn intersects(x: &[u64], y: &[u64]) -> bool {
    x.iter().zip(y).any(|(a, b)| a & b != 0)
}

/// Checks the cross-intersection conditions in order:
///
/// 1. `A_i ∩ B_i = ∅` for every `i`;
/// 2. `A_i ∩ B_j ≠ ∅` for every `i < j` (every `i ≠ j` when `nonskew`);
/// 3. `|B_i ∩ X_j| <= caps_b[j]`;
/// 4. per pair, the part counts of `A_i` fit under the `a`-caps, via some
///    permutation (`New`) or identically (`Alon`).
///
/// Reports the first violated condition with its indices.
pub fn verify_conditions(
    fp: &FamilyPair,
    variant: TheoremVariant,
    nonskew: bool,
) -> Result<(), ConditionViolation> {
    fp.validate()
        .map_err(|e| ConditionViolation::Invalid(e.to_string()))?;
    let d = fp.d();
    let h = fp.h();
    let mut offsets = vec![0usize; d];
    let mut total = 0usize;
    for (j, &size) in fp.parts.iter().enumerate() {
        offsets[j] = total;
        total += size;
    }
    let words = total.div_ceil(64).max(1);
    let packed: Vec<PackedPair> = fp
        .pairs
        .iter()
        .map(|entry| PackedPair {
            a: pack(&entry.a, &offsets, words),
            b: pack(&entry.b, &offsets, words),
        })
        .collect();

    // condition 1
    for (i, pp) in packed.iter().enumerate() {
        if intersects(&pp.a, &pp.b) {
            return Err(ConditionViolation::NotDisjoint { i: i + 1 });
        }
    }
    // condition 2
    for i in 0..h {
        for j in i + 1..h {
            if !intersects(&packed[i].a, &packed[j].b) {
                return Err(ConditionViolation::MissingIntersection { i: i + 1, j: j + 1 });
            }
            if nonskew && !intersects(&packed[j].a, &packed[i].b) {
                return Err(ConditionViolation::MissingIntersection { i: j + 1, j: i + 1 });
            }
        }
    }
    // condition 3
    for (i, entry) in fp.pairs.iter().enumerate() {
        let counts = part_counts(&entry.b, d);
        for (j, (&got, &cap)) in counts.iter().zip(&fp.caps_b).enumerate() {
            if got > cap {
                return Err(ConditionViolation::BCapExceeded {
                    i: i + 1,
                    j: j + 1,
                    got,
                    cap,
                });
            }
        }
    }
    // condition 4
    for (i, entry) in fp.pairs.iter().enumerate() {
        let counts = part_counts(&entry.a, d);
        match variant {
            TheoremVariant::Alon => {
                if let Some(j) = (0..d).find(|&j| counts[j] > fp.caps_a[j]) {
                    return Err(ConditionViolation::ACapExceeded {
                        i: i + 1,
                        reason: format!(
                            "|A ∩ X_{}| = {} > {} under the identity assignment",
                            j + 1,
                            counts[j],
                            fp.caps_a[j]
                        ),
                    });
                }
            }
            TheoremVariant::New => {
                if !sorted_dominated(&counts, &fp.caps_a) {
                    return Err(ConditionViolation::ACapExceeded {
                        i: i + 1,
                        reason: format!(
                            "part counts {counts:?} fit under no permutation of caps {:?}",
                            fp.caps_a
                        ),
                    });
                }
            }
        }
    }
    Ok(())
}

fn part_counts(set: &BTreeSet<Element>, d: usize) -> Vec<usize> {
    let mut counts = vec![0usize; d];
    for &(part, _) in set {
        counts[part - 1] += 1;
    }
    counts
}

/// Builds the extremal pair meeting the `Q(a, b)` bound: the qualifying
/// `B`-sets over parts `U_j = [max(a) + b_j]`, ordered by decreasing weight
/// (ties broken lexicographically on the sorted element lists), each paired
/// with `A_i ∩ U_j = [a_{pi(j)} + b_j] \ B_i` for the permutation chosen by
/// matching sorted thresholds against the ascending `a` (index order breaks
/// ties). The output passes [`verify_conditions`] with the `New` variant and
/// has length exactly `q_enumerate(a, b)`.
pub fn build_extremal(a: &[usize], b: &[usize]) -> Result<FamilyPair, FamilyError> {
    if a.is_empty() || a.len() != b.len() {
        return Err(FamilyError::ShapeMismatch);
    }
    let d = a.len();
    let a_star = *a.iter().max().unwrap();
    let parts: Vec<usize> = b.iter().map(|&bi| a_star + bi).collect();

    // enumerate qualifying B-sets
    let per_part: Vec<Vec<Vec<usize>>> = b
        .iter()
        .zip(&parts)
        .map(|(&bi, &size)| {
            let pool: Vec<usize> = (1..=size).collect();
            combinations(&pool, bi).collect()
        })
        .collect();
    let mut qualifying: Vec<BTreeSet<Element>> = Vec::new();
    let mut idx = vec![0usize; d];
    'outer: loop {
        let m: Vec<usize> = (0..d)
            .map(|j| {
                let combo = &per_part[j][idx[j]];
                if combo.is_empty() {
                    0
                } else {
                    combo[combo.len() - 1] - b[j]
                }
            })
            .collect();
        if sorted_dominated(&m, a) {
            let set: BTreeSet<Element> = (0..d)
                .flat_map(|j| per_part[j][idx[j]].iter().map(move |&l| (j + 1, l)))
                .collect();
            qualifying.push(set);
        }
        let mut j = d;
        loop {
            if j == 0 {
                break 'outer;
            }
            j -= 1;
            idx[j] += 1;
            if idx[j] < per_part[j].len() {
                break;
            }
            idx[j] = 0;
        }
    }
    qualifying.sort_by_key(|set| {
        let elems: Vec<Element> = set.iter().copied().collect();
        (Reverse(set_weight(set)), elems)
    });

    let pairs = qualifying
        .into_iter()
        .map(|b_set| {
            let pi = threshold_permutation(&b_set, a, b);
            let mut a_set: BTreeSet<Element> = BTreeSet::new();
            for j in 0..d {
                let cap = a[pi[j] - 1] + b[j];
                for l in 1..=cap {
                    if !b_set.contains(&(j + 1, l)) {
                        a_set.insert((j + 1, l));
                    }
                }
            }
            FamilyPairEntry { a: a_set, b: b_set }
        })
        .collect();

    Ok(FamilyPair {
        parts,
        caps_a: a.to_vec(),
        caps_b: b.to_vec(),
        pairs,
    })
}

/// Deterministic valid permutation for a qualifying `B`-set: parts sorted by
/// their threshold `m_j` (index breaking ties) receive the `a`-caps sorted
/// ascending (index breaking ties). Returns `pi` with `m_j <= a[pi(j)]`.
fn threshold_permutation(b_set: &BTreeSet<Element>, a: &[usize], b: &[usize]) -> Vec<usize> {
    let d = a.len();
    let mut m = vec![0usize; d];
    for j in 0..d {
        if b[j] > 0 {
            let max_label = b_set
                .iter()
                .filter(|&&(part, _)| part == j + 1)
                .map(|&(_, l)| l)
                .max()
                .expect("|B ∩ U_j| = b_j > 0");
            m[j] = max_label - b[j];
        }
    }
    let mut part_order: Vec<usize> = (0..d).collect();
    part_order.sort_by_key(|&j| (m[j], j));
    let mut cap_order: Vec<usize> = (0..d).collect();
    cap_order.sort_by_key(|&j| (a[j], j));
    let mut pi = vec![0usize; d];
    for (part, cap) in part_order.into_iter().zip(cap_order) {
        debug_assert!(m[part] <= a[cap]);
        pi[part] = cap + 1;
    }
    pi
}

/// Turns a verified saturation process into a family pair: `A_i` is every
/// host vertex outside the i-th witness copy, `B_i` is the i-th added edge's
/// vertex set, with caps `a = (n - p_1, .., n - p_d)` and `b = (1, .., 1)`.
/// Rejects invalid processes.
pub fn saturation_to_families(
    g: &DPartiteGraph,
    proc: &SaturationProcess,
    pattern: &Pattern,
) -> Result<FamilyPair, FamilyError> {
    verify_process(g, proc, pattern)?;
    let d = pattern.d();
    let n = pattern.n();
    let pairs = proc
        .steps
        .iter()
        .map(|step| {
            let a: BTreeSet<Element> = (0..d)
                .flat_map(|j| {
                    let class = &step.witness.classes[j];
                    (1..=n)
                        .filter(|l| !class.contains(l))
                        .map(move |l| (j + 1, l))
                })
                .collect();
            let b: BTreeSet<Element> = step
                .edge
                .coords()
                .iter()
                .enumerate()
                .map(|(j, &l)| (j + 1, l))
                .collect();
            FamilyPairEntry { a, b }
        })
        .collect();
    Ok(FamilyPair {
        parts: vec![n; d],
        caps_a: pattern.p().iter().map(|&p| n - p).collect(),
        caps_b: vec![1; d],
        pairs,
    })
}

/// The `Q(a, b)` bound the family length is measured against.
pub fn family_bound(a: &[usize], b: &[usize]) -> Result<num_bigint::BigUint, FamilyError> {
    Ok(q_enumerate(a, b)?.value)
}
