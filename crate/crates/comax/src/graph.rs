//! The comaximal graph of a Lie algebra: vertices are the proper nontrivial
//! subalgebras, and two vertices are adjacent exactly when together they
//! generate the whole algebra.

use crate::enumerate::SubalgebraInventory;
use crate::field::Field;
use crate::lie::LieAlgebra;
use crate::linalg::Subspace;
use crate::sl2;
use serde::Serialize;
use std::collections::BTreeMap;

/// Dense symmetric adjacency matrix backed by per-row u64 bitsets.
#[derive(Debug, Clone)]
pub struct AdjMatrix {
    n: usize,
    row_words: usize,
    words: Vec<u64>,
}

impl AdjMatrix {
    pub fn new(n: usize) -> AdjMatrix {
        let row_words = n.div_ceil(64).max(1);
        AdjMatrix {
            n,
            row_words,
            words: vec![0; n * row_words],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn words_per_row(&self) -> usize {
        self.row_words
    }

    pub fn set(&mut self, i: usize, j: usize) {
        assert!(i != j, "no loops");
        self.words[i * self.row_words + j / 64] |= 1 << (j % 64);
        self.words[j * self.row_words + i / 64] |= 1 << (i % 64);
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.words[i * self.row_words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.words[i * self.row_words..(i + 1) * self.row_words]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let row = self.row(i);
        (0..self.n).filter(move |&j| row[j / 64] >> (j % 64) & 1 == 1)
    }

    /// All edges as (i, j) pairs with i < j, in vertex order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in self.neighbors(i) {
                if j > i {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// The complement on the same vertex set (no loops).
    pub fn complement(&self) -> AdjMatrix {
        let mut c = AdjMatrix::new(self.n);
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if !self.get(i, j) {
                    c.set(i, j);
                }
            }
        }
        c
    }
}

/// Classification of a vertex, used for labels, colors, and per-kind
/// degree profiles. Lines split into nilpotent/split/nonsplit only in the
/// sl2 case over odd q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexKind {
    Line,
    NilpotentLine,
    SplitLine,
    NonsplitLine,
    Plane,
    Other,
}

impl VertexKind {
    pub fn prefix(self) -> &'static str {
        match self {
            VertexKind::Line => "L",
            VertexKind::NilpotentLine => "N",
            VertexKind::SplitLine => "S",
            VertexKind::NonsplitLine => "NS",
            VertexKind::Plane => "B",
            VertexKind::Other => "U",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ComaximalGraph {
    name: String,
    field: Field,
    vertices: Vec<Subspace>,
    kinds: Vec<VertexKind>,
    adj: AdjMatrix,
}

impl ComaximalGraph {
    /// Build the graph from an enumerated inventory. Vertices keep the
    /// inventory's canonical order (dimension, then representation bytes),
    /// so identical inputs give identical graphs.
    pub fn build(algebra: &LieAlgebra, inventory: &SubalgebraInventory) -> ComaximalGraph {
        let vertices = inventory.vertices();
        let n = vertices.len();
        let dim = algebra.dim();
        let field = algebra.field().clone();
        let mut adj = AdjMatrix::new(n);
        for i in 0..n {
            for j in (i + 1)..n {
                // The generated subalgebra contains the plain sum, so a
                // full-dimensional sum settles adjacency without closure.
                let s = Subspace::sum(&field, &vertices[i], &vertices[j]);
                let joined = if s.dim() == dim {
                    true
                } else {
                    algebra.generated_subalgebra(&s).dim() == dim
                };
                if joined {
                    adj.set(i, j);
                }
            }
        }
        let kinds = vertices
            .iter()
            .map(|v| match v.dim() {
                1 => VertexKind::Line,
                2 => VertexKind::Plane,
                _ => VertexKind::Other,
            })
            .collect();
        ComaximalGraph {
            name: algebra.name().to_string(),
            field,
            vertices,
            kinds,
            adj,
        }
    }

    /// Split line vertices into nilpotent/split/nonsplit using the sl2
    /// discriminant. Only meaningful when the algebra is the standard sl2
    /// over odd q; errors otherwise.
    pub fn refine_sl2_kinds(&mut self) -> Result<(), sl2::Sl2Error> {
        for i in 0..self.vertices.len() {
            if self.kinds[i] != VertexKind::Line {
                continue;
            }
            let kind = sl2::classify_line(&self.field, &self.vertices[i])?;
            self.kinds[i] = match kind {
                sl2::LineKind::Nilpotent => VertexKind::NilpotentLine,
                sl2::LineKind::Split => VertexKind::SplitLine,
                sl2::LineKind::Nonsplit => VertexKind::NonsplitLine,
            };
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj.get(i, j)
    }

    pub fn adj(&self) -> &AdjMatrix {
        &self.adj
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj.degree(i)
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj.neighbors(i)
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n()).map(|i| self.degree(i)).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adj.edges()
    }

    pub fn vertex(&self, i: usize) -> &Subspace {
        &self.vertices[i]
    }

    pub fn vertices(&self) -> &[Subspace] {
        &self.vertices
    }

    pub fn kind(&self, i: usize) -> VertexKind {
        self.kinds[i]
    }

    pub fn label(&self, i: usize) -> String {
        format!(
            "{}{}",
            self.kinds[i].prefix(),
            self.vertices[i].format_compact(&self.field)
        )
    }

    pub fn find_vertex(&self, s: &Subspace) -> Option<usize> {
        self.vertices.iter().position(|v| v == s)
    }

    pub fn is_isolated(&self, i: usize) -> bool {
        self.degree(i) == 0
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.is_isolated(i)).collect()
    }

    /// The induced subgraph on the given vertices (kept in the given order).
    pub fn induced(&self, keep: &[usize]) -> ComaximalGraph {
        let mut adj = AdjMatrix::new(keep.len());
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate().skip(a + 1) {
                if self.adj.get(i, j) {
                    adj.set(a, b);
                }
            }
        }
        ComaximalGraph {
            name: self.name.clone(),
            field: self.field.clone(),
            vertices: keep.iter().map(|&i| self.vertices[i].clone()).collect(),
            kinds: keep.iter().map(|&i| self.kinds[i]).collect(),
            adj,
        }
    }

    /// The star graph: this graph minus its isolated vertices.
    pub fn star(&self) -> ComaximalGraph {
        let keep: Vec<usize> = (0..self.n()).filter(|&i| !self.is_isolated(i)).collect();
        let mut g = self.induced(&keep);
        g.name = format!("{}*", self.name);
        g
    }

    /// Degree sequence, non-increasing.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n()).map(|i| self.degree(i)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// degree -> count, per vertex kind.
    pub fn degree_profile(&self) -> BTreeMap<VertexKind, BTreeMap<usize, usize>> {
        let mut out: BTreeMap<VertexKind, BTreeMap<usize, usize>> = BTreeMap::new();
        for i in 0..self.n() {
            *out.entry(self.kinds[i])
                .or_default()
                .entry(self.degree(i))
                .or_default() += 1;
        }
        out
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ColoringError {
    #[error("vertex kinds are not the nilpotent/split/nonsplit refinement")]
    KindsNotRefined,
    #[error("line vertex {0} lies in no plane vertex")]
    LineWithoutBorel(usize),
}

/// The structural coloring of an sl2 comaximal graph: each Borel (plane)
/// gets its own color, each nonsplit line its own fresh color, and every
/// nilpotent or split line inherits the color of the first Borel (in
/// vertex order) containing it. Same-colored vertices are then subalgebras
/// of one Borel, hence never adjacent, and exactly
/// (q^2 + q + 2)/2 colors are used.
pub fn borel_coloring(g: &ComaximalGraph) -> Result<Vec<usize>, ColoringError> {
    if (0..g.n()).any(|i| g.kind(i) == VertexKind::Line) {
        return Err(ColoringError::KindsNotRefined);
    }
    let planes: Vec<usize> = (0..g.n())
        .filter(|&i| g.kind(i) == VertexKind::Plane)
        .collect();
    let mut colors = vec![usize::MAX; g.n()];
    for (c, &p) in planes.iter().enumerate() {
        colors[p] = c;
    }
    let mut next = planes.len();
    for i in 0..g.n() {
        match g.kind(i) {
            VertexKind::NonsplitLine => {
                colors[i] = next;
                next += 1;
            }
            VertexKind::NilpotentLine | VertexKind::SplitLine => {
                let owner = planes
                    .iter()
                    .copied()
                    .find(|&p| g.vertex(p).contains(g.field(), g.vertex(i)))
                    .ok_or(ColoringError::LineWithoutBorel(i))?;
                colors[i] = colors[owner];
            }
            _ => {}
        }
    }
    Ok(colors)
}
