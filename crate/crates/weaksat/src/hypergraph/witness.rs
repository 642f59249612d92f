use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::graph::{DPartiteGraph, Edge};
use super::pattern::Pattern;
use crate::util::combinations;

/// A concrete pattern copy: `classes[i]` is the vertex set the copy uses in
/// class `i`, and `orientation` is the permutation `pi` of `1..=d` under
/// which `|classes[i]| = p[pi(i)]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CopyWitness {
    pub classes: Vec<BTreeSet<usize>>,
    pub orientation: Vec<usize>,
}

impl CopyWitness {
    /// True when every tuple spanned by the witness classes, except possibly
    /// `through`, is an edge of `g`.
    pub fn is_complete_in(&self, g: &DPartiteGraph, through: &Edge) -> bool {
        first_missing_tuple(g, &self.classes, through).is_none()
    }
}

/// First spanned tuple (other than `through`) missing from `g`, in
/// lexicographic order; `None` when the copy is complete.
pub(crate) fn first_missing_tuple(
    g: &DPartiteGraph,
    classes: &[BTreeSet<usize>],
    through: &Edge,
) -> Option<Edge> {
    let sets: Vec<Vec<usize>> = classes.iter().map(|s| s.iter().copied().collect()).collect();
    let mut idx = vec![0usize; sets.len()];
    if sets.iter().any(|s| s.is_empty()) {
        return None;
    }
    loop {
        let coords: Vec<usize> = idx.iter().zip(&sets).map(|(&i, s)| s[i]).collect();
        let e = Edge::new(coords);
        if e != *through && !g.contains(&e) {
            return Some(e);
        }
        // odometer
        let mut i = sets.len();
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < sets[i].len() {
                break;
            }
            idx[i] = 0;
        }
    }
}

/// Searches for a new pattern copy created by adding `e` to `g`: vertex sets
/// `S_i` containing `e_i` with `|S_i| = p[pi(i)]` for some admissible
/// orientation, every spanned tuple except `e` already in `g`.
///
/// The search is deterministic: orientations are tried in the order of
/// [`Pattern::orientations`], classes are extended in increasing index, and
/// candidate vertices are taken in increasing label, so the first witness
/// found is a fixed function of the inputs. `e` is expected to be a non-edge
/// of `g`; the copy is then necessarily new.
pub fn new_copy_witness(g: &DPartiteGraph, e: &Edge, pattern: &Pattern) -> Option<CopyWitness> {
    assert_eq!(g.d(), pattern.d(), "graph and pattern arity differ");
    assert_eq!(g.n(), pattern.n(), "graph and pattern class size differ");
    for pi in pattern.orientations() {
        let sizes = pattern.sizes_under(&pi);
        if let Some(classes) = anchored_copy(g, e, &sizes) {
            return Some(CopyWitness {
                classes,
                orientation: pi,
            });
        }
    }
    None
}

/// Depth-first search for class sets of the given sizes through `e`.
fn anchored_copy(g: &DPartiteGraph, e: &Edge, sizes: &[usize]) -> Option<Vec<BTreeSet<usize>>> {
    let d = g.d();
    let mut chosen: Vec<BTreeSet<usize>> = Vec::with_capacity(d);
    if extend_class(g, e, sizes, &mut chosen) {
        Some(chosen)
    } else {
        None
    }
}

fn extend_class(
    g: &DPartiteGraph,
    e: &Edge,
    sizes: &[usize],
    chosen: &mut Vec<BTreeSet<usize>>,
) -> bool {
    let i = chosen.len();
    if i == g.d() {
        return true;
    }
    let anchor = e.coords()[i];
    let pool: Vec<usize> = (1..=g.n()).filter(|&v| v != anchor).collect();
    if sizes[i] == 0 || sizes[i] > g.n() {
        return false;
    }
    for extra in combinations(&pool, sizes[i] - 1) {
        let mut set: BTreeSet<usize> = extra.into_iter().collect();
        set.insert(anchor);
        if prefix_spanned(g, e, chosen, &set) {
            chosen.push(set);
            if extend_class(g, e, sizes, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Checks every tuple combining the already-chosen class sets, the candidate
/// set for the current class, and `e`'s coordinates for the classes not yet
/// chosen. All of them must lie in `g + e`; they are a subset of the tuples
/// the finished witness has to span, so this prunes soundly.
fn prefix_spanned(
    g: &DPartiteGraph,
    e: &Edge,
    chosen: &[BTreeSet<usize>],
    candidate: &BTreeSet<usize>,
) -> bool {
    let d = g.d();
    let i = chosen.len();
    let mut sets: Vec<Vec<usize>> = chosen.iter().map(|s| s.iter().copied().collect()).collect();
    sets.push(candidate.iter().copied().collect());
    for coord in e.coords()[i + 1..d].iter() {
        sets.push(vec![*coord]);
    }
    let mut idx = vec![0usize; d];
    loop {
        let coords: Vec<usize> = idx.iter().zip(&sets).map(|(&k, s)| s[k]).collect();
        let t = Edge::new(coords);
        if t != *e && !g.contains(&t) {
            return false;
        }
        let mut k = d;
        loop {
            if k == 0 {
                return true;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < sets[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// True iff `g` contains a complete d-partite subhypergraph holding
/// `sizes[pi(i)]` vertices in class `i`. `pi` is 1-based; a size exceeding
/// `n` makes the answer `false`.
pub fn contains_oriented_complete(g: &DPartiteGraph, sizes: &[usize], pi: &[usize]) -> bool {
    assert_eq!(sizes.len(), g.d());
    assert_eq!(pi.len(), g.d());
    let mut sorted_pi = pi.to_vec();
    sorted_pi.sort_unstable();
    assert!(
        sorted_pi.iter().copied().eq(1..=g.d()),
        "orientation must be a permutation of 1..=d"
    );
    let targets: Vec<usize> = pi.iter().map(|&j| sizes[j - 1]).collect();
    if targets.iter().any(|&t| t == 0 || t > g.n()) {
        return false;
    }
    let mut chosen: Vec<Vec<usize>> = Vec::with_capacity(g.d());
    complete_exists(g, &targets, &mut chosen)
}

fn complete_exists(g: &DPartiteGraph, targets: &[usize], chosen: &mut Vec<Vec<usize>>) -> bool {
    let i = chosen.len();
    if i == g.d() {
        return spans_all(g, chosen);
    }
    let pool: Vec<usize> = (1..=g.n()).collect();
    for set in combinations(&pool, targets[i]) {
        chosen.push(set);
        if complete_exists(g, targets, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

fn spans_all(g: &DPartiteGraph, sets: &[Vec<usize>]) -> bool {
    let d = sets.len();
    let mut idx = vec![0usize; d];
    loop {
        let coords: Vec<usize> = idx.iter().zip(sets).map(|(&k, s)| s[k]).collect();
        if !g.contains(&Edge::new(coords)) {
            return false;
        }
        let mut k = d;
        loop {
            if k == 0 {
                return true;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < sets[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// True iff `g` contains a copy of the pattern clique under any admissible
/// orientation (the identity only, in directed mode).
pub fn contains_pattern_copy(g: &DPartiteGraph, pattern: &Pattern) -> bool {
    pattern
        .orientations()
        .iter()
        .any(|pi| contains_oriented_complete(g, pattern.p(), pi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(d: usize, n: usize, edges: &[&[usize]]) -> DPartiteGraph {
        let mut g = DPartiteGraph::empty(d, n).unwrap();
        for e in edges {
            g.insert(&Edge::new(e.to_vec()));
        }
        g
    }

    #[test]
    fn witness_picks_matching_orientation() {
        let g = graph(2, 2, &[&[1, 1], &[1, 2]]);
        let pat = Pattern::undirected(2, vec![1, 2]).unwrap();
        let w = new_copy_witness(&g, &Edge::new(vec![2, 1]), &pat).unwrap();
        assert_eq!(w.classes[0], BTreeSet::from([1, 2]));
        assert_eq!(w.classes[1], BTreeSet::from([1]));
        assert_eq!(w.orientation, vec![2, 1]);
    }

    #[test]
    fn single_edge_is_its_own_k11() {
        let g = DPartiteGraph::empty(2, 1).unwrap();
        let pat = Pattern::undirected(1, vec![1, 1]).unwrap();
        let w = new_copy_witness(&g, &Edge::new(vec![1, 1]), &pat).unwrap();
        assert_eq!(w.classes, vec![BTreeSet::from([1]), BTreeSet::from([1])]);
    }

    #[test]
    fn no_witness_when_copy_needs_more_edges() {
        let g = DPartiteGraph::empty(2, 2).unwrap();
        let pat = Pattern::undirected(2, vec![1, 2]).unwrap();
        assert!(new_copy_witness(&g, &Edge::new(vec![1, 1]), &pat).is_none());
    }

    #[test]
    fn directed_mode_pins_orientation() {
        let g = graph(2, 2, &[&[1, 1], &[1, 2]]);
        // Undirected finds the swapped copy; directed (1,2) needs two columns
        // at the anchor's row and fails here.
        let und = Pattern::undirected(2, vec![1, 2]).unwrap();
        let dir = Pattern::directed(2, vec![1, 2]).unwrap();
        let e = Edge::new(vec![2, 1]);
        assert!(new_copy_witness(&g, &e, &und).is_some());
        assert!(new_copy_witness(&g, &e, &dir).is_none());

        let dir_rev = Pattern::directed(2, vec![2, 1]).unwrap();
        assert!(new_copy_witness(&g, &e, &dir_rev).is_some());
    }

    #[test]
    fn oriented_complete_detection() {
        // edges {(2,3),(3,2),(3,3)} on [3]^2
        let g = graph(2, 3, &[&[2, 3], &[3, 2], &[3, 3]]);
        assert!(contains_oriented_complete(&g, &[2, 1], &[1, 2])); // {2,3} x {3}
        assert!(contains_oriented_complete(&g, &[2, 1], &[2, 1])); // {3} x {2,3}
        assert!(!contains_oriented_complete(&g, &[2, 2], &[1, 2]));

        let empty = DPartiteGraph::empty(2, 3).unwrap();
        assert!(!contains_oriented_complete(&empty, &[1, 1], &[1, 2]));
    }

    #[test]
    fn pattern_copy_detection() {
        let g = graph(2, 2, &[&[1, 1], &[1, 2]]);
        assert!(contains_pattern_copy(&g, &Pattern::undirected(2, vec![1, 2]).unwrap()));
        assert!(!contains_pattern_copy(&g, &Pattern::undirected(2, vec![2, 2]).unwrap()));
        assert!(contains_pattern_copy(&g, &Pattern::directed(2, vec![1, 2]).unwrap()));
        assert!(!contains_pattern_copy(&g, &Pattern::directed(2, vec![2, 1]).unwrap()));
    }
}
