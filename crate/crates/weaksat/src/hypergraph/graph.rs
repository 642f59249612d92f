use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest number of tuple-lattice cells a host graph may occupy. Desk-scale
/// guard: a presence map of this size is 2 MiB.
pub const MAX_CELLS: usize = 1 << 24;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("d and n must be at least 1")]
    ZeroDimension,
    #[error("lattice too large: n^d = {cells} exceeds the {max} cell cap")]
    TooLarge { cells: usize, max: usize },
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// One edge of a d-partite d-uniform host: coordinate `i` names the vertex
/// of class `i`, labels are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Edge(Vec<usize>);

impl Edge {
    pub fn new(coords: Vec<usize>) -> Edge {
        Edge(coords)
    }

    pub fn coords(&self) -> &[usize] {
        &self.0
    }

    pub fn d(&self) -> usize {
        self.0.len()
    }

    /// Nondecreasing rearrangement of the coordinates, repetitions included.
    pub fn sorted(&self) -> Vec<usize> {
        let mut s = self.0.clone();
        s.sort_unstable();
        s
    }

    /// Sum of the coordinates.
    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Edge set over the tuple lattice `[n]^d`, stored as a presence bitmap.
///
/// Cells are indexed row-major with the first coordinate most significant,
/// so ascending cell order is lexicographic order on coordinate tuples.
#[derive(Clone, PartialEq, Eq)]
pub struct DPartiteGraph {
    d: usize,
    n: usize,
    words: Vec<u64>,
    count: usize,
}

impl DPartiteGraph {
    pub fn empty(d: usize, n: usize) -> Result<Self, GraphError> {
        if d == 0 || n == 0 {
            return Err(GraphError::ZeroDimension);
        }
        let cells = checked_cells(d, n)?;
        Ok(DPartiteGraph {
            d,
            n,
            words: vec![0; cells.div_ceil(64)],
            count: 0,
        })
    }

    pub fn complete(d: usize, n: usize) -> Result<Self, GraphError> {
        let mut g = DPartiteGraph::empty(d, n)?;
        let cells = g.cell_count();
        for w in g.words.iter_mut() {
            *w = u64::MAX;
        }
        let spare = g.words.len() * 64 - cells;
        if spare > 0 {
            let last = g.words.len() - 1;
            g.words[last] >>= spare;
        }
        g.count = cells;
        Ok(g)
    }

    /// Builds a graph on at most 64 cells directly from a presence mask.
    pub fn from_mask(d: usize, n: usize, mask: u64) -> Result<Self, GraphError> {
        let mut g = DPartiteGraph::empty(d, n)?;
        let cells = g.cell_count();
        assert!(cells <= 64, "from_mask needs n^d <= 64");
        assert!(cells == 64 || mask < (1u64 << cells), "mask has bits outside the lattice");
        g.words[0] = mask;
        g.count = mask.count_ones() as usize;
        Ok(g)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cell_count(&self) -> usize {
        self.n.pow(self.d as u32)
    }

    pub fn edge_count(&self) -> usize {
        self.count
    }

    pub fn is_complete(&self) -> bool {
        self.count == self.cell_count()
    }

    pub fn same_shape(&self, other: &DPartiteGraph) -> bool {
        self.d == other.d && self.n == other.n
    }

    /// Lattice cell of an edge. Panics on coordinates outside `[n]^d`.
    pub fn cell_of(&self, e: &Edge) -> usize {
        assert_eq!(e.d(), self.d, "edge arity {} does not match d = {}", e.d(), self.d);
        let mut idx = 0usize;
        for &x in e.coords() {
            assert!(x >= 1 && x <= self.n, "label {x} outside 1..={}", self.n);
            idx = idx * self.n + (x - 1);
        }
        idx
    }

    /// Edge at a lattice cell (inverse of [`cell_of`](Self::cell_of)).
    pub fn edge_at(&self, mut cell: usize) -> Edge {
        assert!(cell < self.cell_count());
        let mut coords = vec![0usize; self.d];
        for i in (0..self.d).rev() {
            coords[i] = cell % self.n + 1;
            cell /= self.n;
        }
        Edge::new(coords)
    }

    pub fn contains_cell(&self, cell: usize) -> bool {
        self.words[cell / 64] >> (cell % 64) & 1 == 1
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.contains_cell(self.cell_of(e))
    }

    /// Adds an edge; returns `true` if it was absent.
    pub fn insert(&mut self, e: &Edge) -> bool {
        let cell = self.cell_of(e);
        let was = self.contains_cell(cell);
        if !was {
            self.words[cell / 64] |= 1 << (cell % 64);
            self.count += 1;
        }
        !was
    }

    pub fn remove(&mut self, e: &Edge) -> bool {
        let cell = self.cell_of(e);
        let was = self.contains_cell(cell);
        if was {
            self.words[cell / 64] &= !(1 << (cell % 64));
            self.count -= 1;
        }
        was
    }

    /// Complement relative to the complete host `K^d_{n,..,n}`.
    pub fn complement(&self) -> DPartiteGraph {
        let cells = self.cell_count();
        let mut out = self.clone();
        for w in out.words.iter_mut() {
            *w = !*w;
        }
        let spare = out.words.len() * 64 - cells;
        if spare > 0 {
            let last = out.words.len() - 1;
            out.words[last] &= u64::MAX >> spare;
        }
        out.count = cells - self.count;
        out
    }

    /// Edges in ascending lattice (lexicographic) order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.cell_count())
            .filter(|&c| self.contains_cell(c))
            .map(|c| self.edge_at(c))
    }

    /// Non-edges in ascending lattice (lexicographic) order.
    pub fn non_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.cell_count())
            .filter(|&c| !self.contains_cell(c))
            .map(|c| self.edge_at(c))
    }

    /// Text form: a `d n` header line, then one edge per line as d
    /// space-separated labels, in lattice order.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.d, self.n);
        for e in self.edges() {
            let line: Vec<String> = e.coords().iter().map(|x| x.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the text form. Blank lines and `#` comments are ignored;
    /// duplicate edge lines collapse.
    pub fn from_text(s: &str) -> Result<Self, GraphError> {
        let mut graph: Option<DPartiteGraph> = None;
        for (no, raw) in s.lines().enumerate() {
            let line_no = no + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Result<Vec<usize>, _> = line.split_whitespace().map(str::parse).collect();
            let fields = fields.map_err(|e| GraphError::Parse {
                line: line_no,
                reason: format!("expected integers: {e}"),
            })?;
            match graph.as_mut() {
                None => {
                    if fields.len() != 2 {
                        return Err(GraphError::Parse {
                            line: line_no,
                            reason: "header must be `d n`".into(),
                        });
                    }
                    graph = Some(DPartiteGraph::empty(fields[0], fields[1]).map_err(|e| {
                        GraphError::Parse {
                            line: line_no,
                            reason: e.to_string(),
                        }
                    })?);
                }
                Some(g) => {
                    if fields.len() != g.d {
                        return Err(GraphError::Parse {
                            line: line_no,
                            reason: format!("edge needs {} labels, got {}", g.d, fields.len()),
                        });
                    }
                    if let Some(&x) = fields.iter().find(|&&x| x == 0 || x > g.n) {
                        return Err(GraphError::Parse {
                            line: line_no,
                            reason: format!("label {x} outside 1..={}", g.n),
                        });
                    }
                    g.insert(&Edge::new(fields));
                }
            }
        }
        graph.ok_or(GraphError::Parse {
            line: 0,
            reason: "missing `d n` header".into(),
        })
    }
}

impl fmt::Debug for DPartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DPartiteGraph(d={}, n={}, edges={})", self.d, self.n, self.count)
    }
}

fn checked_cells(d: usize, n: usize) -> Result<usize, GraphError> {
    let mut cells: usize = 1;
    for _ in 0..d {
        cells = cells.checked_mul(n).ok_or(GraphError::TooLarge {
            cells: usize::MAX,
            max: MAX_CELLS,
        })?;
        if cells > MAX_CELLS {
            return Err(GraphError::TooLarge { cells, max: MAX_CELLS });
        }
    }
    Ok(cells)
}
