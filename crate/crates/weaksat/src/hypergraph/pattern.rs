use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::util::next_permutation;

/// How pattern copies may sit inside the host graph.
///
/// `Undirected` allows the multiset of class sizes to be assigned to the
/// host classes by any permutation; `Directed` pins size `p_i` to class `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Undirected,
    Directed,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PatternError {
    #[error("pattern needs at least one class size")]
    Empty,
    #[error("host class size n must be at least 1")]
    ZeroN,
    #[error("class size {size} out of range 1..={n}")]
    SizeOutOfRange { size: usize, n: usize },
}

/// The clique shape `K^d_{p_1..p_d}` inside hosts with classes of size `n`.
///
/// In undirected mode the sizes are stored in canonical ascending order; in
/// directed mode the given order is preserved.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pattern {
    n: usize,
    p: Vec<usize>,
    mode: Mode,
}

impl Pattern {
    pub fn new(n: usize, p: Vec<usize>, mode: Mode) -> Result<Self, PatternError> {
        if p.is_empty() {
            return Err(PatternError::Empty);
        }
        if n == 0 {
            return Err(PatternError::ZeroN);
        }
        if let Some(&size) = p.iter().find(|&&s| s == 0 || s > n) {
            return Err(PatternError::SizeOutOfRange { size, n });
        }
        let mut p = p;
        if mode == Mode::Undirected {
            p.sort_unstable();
        }
        Ok(Pattern { n, p, mode })
    }

    pub fn undirected(n: usize, p: Vec<usize>) -> Result<Self, PatternError> {
        Pattern::new(n, p, Mode::Undirected)
    }

    pub fn directed(n: usize, p: Vec<usize>) -> Result<Self, PatternError> {
        Pattern::new(n, p, Mode::Directed)
    }

    pub fn d(&self) -> usize {
        self.p.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Class sizes, ascending in undirected mode.
    pub fn p(&self) -> &[usize] {
        &self.p
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// The admissible orientations, each a permutation `pi` of `1..=d` read
    /// as "class `i` receives `p[pi(i)]` vertices". Undirected patterns get
    /// one representative per distinct size assignment (repeated sizes do
    /// not spawn duplicates), ordered lexicographically by the induced size
    /// vector; directed patterns get the identity only.
    pub fn orientations(&self) -> Vec<Vec<usize>> {
        let d = self.d();
        match self.mode {
            Mode::Directed => vec![(1..=d).collect()],
            Mode::Undirected => {
                let mut sizes = self.p.clone(); // sorted ascending already
                let mut out = Vec::new();
                loop {
                    out.push(self.orientation_for_sizes(&sizes));
                    if !next_permutation(&mut sizes) {
                        break;
                    }
                }
                out
            }
        }
    }

    /// Canonical permutation realizing a given size vector: class `i` maps to
    /// the smallest unused index `j` with `p[j] == sizes[i]`.
    fn orientation_for_sizes(&self, sizes: &[usize]) -> Vec<usize> {
        let d = self.d();
        let mut used = vec![false; d];
        let mut pi = Vec::with_capacity(d);
        for &s in sizes {
            let j = (0..d)
                .find(|&j| !used[j] && self.p[j] == s)
                .expect("sizes is a rearrangement of p");
            used[j] = true;
            pi.push(j + 1);
        }
        pi
    }

    /// Class sizes induced by an orientation: `sizes[i] = p[pi(i)]`.
    pub fn sizes_under(&self, pi: &[usize]) -> Vec<usize> {
        pi.iter().map(|&j| self.p[j - 1]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn undirected_sorts_sizes() {
        let pat = Pattern::undirected(4, vec![3, 1, 2]).unwrap();
        assert_eq!(pat.p(), &[1, 2, 3]);
        let dir = Pattern::directed(4, vec![3, 1, 2]).unwrap();
        assert_eq!(dir.p(), &[3, 1, 2]);
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(matches!(
            Pattern::undirected(2, vec![3]),
            Err(PatternError::SizeOutOfRange { size: 3, n: 2 })
        ));
        assert!(matches!(Pattern::undirected(0, vec![1]), Err(PatternError::ZeroN)));
        assert!(matches!(Pattern::undirected(2, vec![]), Err(PatternError::Empty)));
    }

    #[test]
    fn orientations_collapse_repeats() {
        let pat = Pattern::undirected(3, vec![2, 2]).unwrap();
        assert_eq!(pat.orientations(), vec![vec![1, 2]]);

        let pat = Pattern::undirected(3, vec![1, 2]).unwrap();
        assert_eq!(pat.orientations(), vec![vec![1, 2], vec![2, 1]]);

        let pat = Pattern::undirected(3, vec![1, 1, 2]).unwrap();
        // size vectors (1,1,2), (1,2,1), (2,1,1)
        assert_eq!(pat.orientations().len(), 3);

        let dir = Pattern::directed(3, vec![2, 1]).unwrap();
        assert_eq!(dir.orientations(), vec![vec![1, 2]]);
    }

    #[test]
    fn sizes_under_orientation() {
        let pat = Pattern::undirected(3, vec![1, 2]).unwrap();
        assert_eq!(pat.sizes_under(&[2, 1]), vec![2, 1]);
    }
}
