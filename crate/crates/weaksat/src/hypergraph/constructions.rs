use thiserror::Error;

use super::graph::{DPartiteGraph, Edge, GraphError};
use super::pattern::{Mode, Pattern};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("construction is defined for undirected patterns only")]
    DirectedMode,
    #[error("shape mismatch: {reason}")]
    ShapeMismatch { reason: String },
    #[error("invalid parameters: {reason}")]
    InvalidParams { reason: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The extremal construction: the graph on `[n]^d` whose non-edges are
/// exactly the tuples whose i-th smallest coordinate is at least `p_i` for
/// every `i`. Its edge count is `n^d - q_n(p)`, and it is weakly saturated
/// for the pattern.
pub fn build_g0(pattern: &Pattern) -> Result<DPartiteGraph, ConstructionError> {
    if pattern.mode() == Mode::Directed {
        return Err(ConstructionError::DirectedMode);
    }
    let mut g = DPartiteGraph::empty(pattern.d(), pattern.n())?;
    for cell in 0..g.cell_count() {
        let e = g.edge_at(cell);
        if !sorted_dominates(&e, pattern.p()) {
            g.insert(&e);
        }
    }
    Ok(g)
}

/// True when the sorted coordinates of `e` dominate `p` pointwise.
fn sorted_dominates(e: &Edge, p: &[usize]) -> bool {
    e.sorted().iter().zip(p).all(|(x, t)| x >= t)
}

/// Doubles the host: classes of size `2n` carrying `h` on labels `1..=n`,
/// the complement of the extremal construction on labels `n+1..=2n`, and
/// every mixed tuple. The result has `(2n)^d - (n^d - |h|) - |G0|` edges and
/// is weakly saturated for the all-`(n+1)` pattern whenever `h` is weakly
/// saturated for `pattern`.
pub fn build_lower_bound_gadget(
    h: &DPartiteGraph,
    pattern: &Pattern,
) -> Result<DPartiteGraph, ConstructionError> {
    if h.d() != pattern.d() || h.n() != pattern.n() {
        return Err(ConstructionError::ShapeMismatch {
            reason: format!(
                "graph is {}^{}, pattern expects {}^{}",
                h.n(),
                h.d(),
                pattern.n(),
                pattern.d()
            ),
        });
    }
    let g0 = build_g0(pattern)?;
    let d = h.d();
    let n = h.n();
    let mut out = DPartiteGraph::empty(d, 2 * n)?;
    for cell in 0..out.cell_count() {
        let e = out.edge_at(cell);
        let low = e.coords().iter().all(|&x| x <= n);
        let high = e.coords().iter().all(|&x| x > n);
        let present = if low {
            h.contains(&e)
        } else if high {
            let shifted = Edge::new(e.coords().iter().map(|&x| x - n).collect());
            !g0.contains(&shifted)
        } else {
            true
        };
        if present {
            out.insert(&e);
        }
    }
    Ok(out)
}

/// Bipartite strong-saturation construction: `p - 1` labels per class
/// complete to the other class, labels `p..p+k-1` spanning a complete `k x k`
/// block, and the remaining labels holding total degree exactly `q - 1`
/// through a fixed circulant among themselves (remaining label at offset `i`
/// meets offsets `i, i+1, ..., i+q-p-1` modulo the remainder count). Edge
/// count is `(p+q-2)n - (p-1)(q-1) - k(q-p-k)`.
pub fn build_gk(n: usize, p: usize, q: usize, k: usize) -> Result<DPartiteGraph, ConstructionError> {
    let invalid = |reason: String| ConstructionError::InvalidParams { reason };
    if p == 0 || q == 0 || n == 0 {
        return Err(invalid("n, p, q must be at least 1".into()));
    }
    if p > q {
        return Err(invalid(format!("need p <= q, got p={p}, q={q}")));
    }
    if q > n {
        return Err(invalid(format!("need q <= n, got q={q}, n={n}")));
    }
    if k > q - p {
        return Err(invalid(format!("need k <= q-p, got k={k}, q-p={}", q - p)));
    }
    let r = n - (p - 1) - k; // remaining labels per class; >= 1 since q <= n
    let t = q - p; // degree each remaining vertex needs beyond the complete part
    if t > r {
        return Err(invalid(format!(
            "remaining labels cannot reach degree q-1: need n >= q-1+k, got n={n}, q={q}, k={k}"
        )));
    }
    let mut g = DPartiteGraph::empty(2, n)?;
    let block = |x: usize| x >= p && x < p + k;
    let remaining = |x: usize| x >= p + k;
    let circulant = |x: usize, y: usize| {
        let i = x - (p + k);
        let j = y - (p + k);
        (j + r - i) % r < t
    };
    for x in 1..=n {
        for y in 1..=n {
            let present = x < p
                || y < p
                || (block(x) && block(y))
                || (remaining(x) && remaining(y) && circulant(x, y));
            if present {
                g.insert(&Edge::new(vec![x, y]));
            }
        }
    }
    Ok(g)
}
