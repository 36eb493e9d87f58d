//! Report assembly: computed invariant blocks for the comaximal graph, its
//! star, and the Frattini-restricted subgraph, joined with the closed-form
//! predictions into a check table with match/mismatch verdicts.
//!
//! Everything here is deterministic: identical configurations produce
//! byte-identical JSON, and parsing an emitted report and re-serializing
//! it reproduces the bytes exactly.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::catalog::{self, CatalogAlgebra, CatalogError, FamilyId};
use crate::enumerate::{enumerate_subalgebras, SubalgebraInventory};
use crate::field::{Field, FieldError};
use crate::graph::{borel_coloring, ComaximalGraph, VertexKind};
use crate::invariants::{self, Distance};
use crate::lie::LieAlgebra;
use crate::linalg::Subspace;
use crate::planar;
use crate::predict::{self, Prediction};
use crate::sl2::Sl2Error;
use crate::solve::{self, Solved};

pub const REPORT_SCHEMA: &str = "comax-report-v1";
pub const SWEEP_SCHEMA: &str = "comax-sweep-v1";

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("line-kind refinement failed: {0}")]
    Sl2(#[from] Sl2Error),
}

/// One verification run: a family (or the placeholder used when loading an
/// algebra from a file), a field, optional family parameters, and flags.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub family: String,
    pub field: String,
    pub params: BTreeMap<String, String>,
    pub check: bool,
    pub star_focus: bool,
    pub budget: u64,
}

impl RunConfig {
    pub fn new(family: &str, field: &str) -> RunConfig {
        RunConfig {
            family: family.to_string(),
            field: field.to_string(),
            params: BTreeMap::new(),
            check: false,
            star_focus: false,
            budget: solve::DEFAULT_BUDGET,
        }
    }

    pub fn checked(mut self) -> RunConfig {
        self.check = true;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Match,
    Mismatch,
    Unpredicted,
    Undecided,
    Conflict,
}

/// One row of the verification table.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub invariant: String,
    pub predicted: Option<Value>,
    pub computed: Value,
    pub status: Status,
    pub rule: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VertexRow {
    pub index: usize,
    pub label: String,
    pub kind: String,
    pub dim: usize,
    pub degree: usize,
}

/// The full computed invariant bundle of one graph. NP-hard invariants are
/// numbers, or the string "undecided" if the node budget ran out.
#[derive(Debug, Clone, Serialize)]
pub struct GraphBlock {
    pub name: String,
    pub order: usize,
    pub size: usize,
    pub degree_sequence: Vec<usize>,
    pub is_connected: bool,
    pub diameter: Distance,
    pub radius: Distance,
    pub girth: Distance,
    pub is_complete: bool,
    pub is_regular: bool,
    pub every_vertex_on_triangle: bool,
    pub center: Vec<usize>,
    pub isolated_vertices: Vec<usize>,
    pub clique_number: Value,
    pub clique_witness: Option<Vec<usize>>,
    pub chromatic_number: Value,
    pub coloring: Option<Vec<usize>>,
    pub independence_number: Value,
    pub independence_witness: Option<Vec<usize>>,
    pub domination_number: Value,
    pub domination_witness: Option<Vec<usize>>,
    pub is_planar: bool,
    pub vertices: Vec<VertexRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InventoryBlock {
    pub counts: BTreeMap<usize, usize>,
    pub by_dim: BTreeMap<usize, Vec<Vec<String>>>,
    pub maximals: Vec<Vec<String>>,
    pub frattini: Vec<String>,
    pub frattini_dim: usize,
    pub line_kinds: Option<Vec<String>>,
}

/// Connectivity data of the subgraph induced on vertices not contained in
/// the Frattini subalgebra.
#[derive(Debug, Clone, Serialize)]
pub struct RestrictedBlock {
    pub order: usize,
    pub excluded: Vec<usize>,
    pub is_connected: bool,
    pub diameter: Distance,
}

#[derive(Debug, Clone, Serialize)]
pub struct AlgebraBlock {
    pub name: String,
    pub family: Option<String>,
    pub params: BTreeMap<String, String>,
    pub field: String,
    pub dim: usize,
    pub derived_dim: usize,
    pub structure: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfigBlock {
    pub family: Option<String>,
    pub field: String,
    pub params: BTreeMap<String, String>,
    pub check: bool,
    pub star: bool,
    pub budget: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub matches: usize,
    pub mismatches: usize,
    pub conflicts: usize,
    pub undecided: usize,
    pub unpredicted: usize,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: String,
    pub config: ConfigBlock,
    pub algebra: AlgebraBlock,
    pub inventory: InventoryBlock,
    pub graph: GraphBlock,
    pub star: GraphBlock,
    pub restricted: RestrictedBlock,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

/// A finished run: the report plus the built graphs, kept for DOT export.
pub struct RunOutput {
    pub report: Report,
    pub graph: ComaximalGraph,
    pub star: ComaximalGraph,
}

fn kind_name(k: VertexKind) -> &'static str {
    match k {
        VertexKind::Line => "line",
        VertexKind::NilpotentLine => "nilpotent-line",
        VertexKind::SplitLine => "split-line",
        VertexKind::NonsplitLine => "nonsplit-line",
        VertexKind::Plane => "plane",
        VertexKind::Other => "other",
    }
}

fn undecided() -> Value {
    Value::String("undecided".to_string())
}

fn rows_of(s: &Subspace, field: &Field) -> Vec<String> {
    s.rows()
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| field.format_element(e))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect()
}

/// Compute the full invariant bundle of one graph, with a node budget for
/// the exact solvers and an optional proper-coloring hint.
pub fn graph_block(g: &ComaximalGraph, budget: u64, hint: Option<&[usize]>) -> GraphBlock {
    let adj = g.adj();
    let m = invariants::metrics(adj);
    let clique = solve::max_clique(adj, budget);
    let chromatic = solve::chromatic_number(adj, budget, hint)
        .expect("structural coloring hints are proper by construction");
    let independence = solve::max_independent_set(adj, budget);
    let domination = solve::min_dominating_set(adj, budget);

    // Cross-invariant sanity that holds in every finite simple graph.
    if let (Solved::Exact(c), Solved::Exact(x)) = (&clique, &chromatic) {
        assert!(c.size <= x.chi, "clique number exceeded chromatic number");
    }
    if let Solved::Exact(d) = &domination {
        assert!(d.gamma <= m.order, "dominating set larger than the graph");
    }
    let degree_sequence = g.degree_sequence();
    assert_eq!(
        degree_sequence.iter().sum::<usize>(),
        2 * m.size,
        "degree sum must be twice the size"
    );

    // Planarity pipeline: a clique on five vertices settles it, then the
    // edge-count bound, then the full embedding algorithm.
    let is_planar = match &clique {
        Solved::Exact(c) if c.size >= 5 => false,
        _ if m.order >= 3 && m.size > 3 * m.order - 6 => false,
        _ => planar::is_planar(adj),
    };

    GraphBlock {
        name: g.name().to_string(),
        order: m.order,
        size: m.size,
        degree_sequence,
        is_connected: m.is_connected,
        diameter: m.diameter,
        radius: m.radius,
        girth: m.girth,
        is_complete: m.is_complete,
        is_regular: m.is_regular,
        every_vertex_on_triangle: m.every_vertex_on_triangle,
        center: invariants::center(adj),
        isolated_vertices: g.isolated_vertices(),
        clique_number: match &clique {
            Solved::Exact(c) => Value::from(c.size),
            Solved::Undecided => undecided(),
        },
        clique_witness: clique.exact().map(|c| c.witness),
        chromatic_number: match &chromatic {
            Solved::Exact(c) => Value::from(c.chi),
            Solved::Undecided => undecided(),
        },
        coloring: chromatic.exact().map(|c| c.coloring),
        independence_number: match &independence {
            Solved::Exact(c) => Value::from(c.size),
            Solved::Undecided => undecided(),
        },
        independence_witness: independence.exact().map(|c| c.witness),
        domination_number: match &domination {
            Solved::Exact(d) => Value::from(d.gamma),
            Solved::Undecided => undecided(),
        },
        domination_witness: domination.exact().map(|d| d.witness),
        is_planar,
        vertices: (0..g.n())
            .map(|i| VertexRow {
                index: i,
                label: g.label(i),
                kind: kind_name(g.kind(i)).to_string(),
                dim: g.vertex(i).dim(),
                degree: g.degree(i),
            })
            .collect(),
    }
}

fn inventory_block(
    inv: &SubalgebraInventory,
    field: &Field,
    g: &ComaximalGraph,
    refined: bool,
) -> InventoryBlock {
    let by_dim: BTreeMap<usize, Vec<Vec<String>>> = inv
        .by_dim
        .iter()
        .map(|(&d, subs)| (d, subs.iter().map(|s| rows_of(s, field)).collect()))
        .collect();
    let line_kinds = refined.then(|| {
        (0..g.n())
            .filter(|&i| g.vertex(i).dim() == 1)
            .map(|i| kind_name(g.kind(i)).to_string())
            .collect()
    });
    InventoryBlock {
        counts: inv.by_dim.iter().map(|(&d, v)| (d, v.len())).collect(),
        by_dim,
        maximals: inv.maximals.iter().map(|s| rows_of(s, field)).collect(),
        frattini: rows_of(&inv.frattini, field),
        frattini_dim: inv.frattini.dim(),
        line_kinds,
    }
}

/// Everything the per-invariant observers may consult.
struct Ctx<'a> {
    cat: Option<&'a CatalogAlgebra>,
    inv: &'a SubalgebraInventory,
    g: &'a ComaximalGraph,
    star: &'a ComaximalGraph,
    gb: &'a GraphBlock,
    sb: &'a GraphBlock,
    rb: &'a RestrictedBlock,
}

enum Obs {
    Val(Value),
    Undecided,
}

impl Ctx<'_> {
    fn field(&self) -> &Field {
        self.g.field()
    }

    fn marker(&self, key: &str) -> &Subspace {
        let cat = self.cat.expect("marker observers need a catalog family");
        cat.markers
            .get(key)
            .unwrap_or_else(|| panic!("family {} has no marker {key}", cat.id.name()))
    }

    fn marker_vertex(&self, key: &str) -> usize {
        self.g
            .find_vertex(self.marker(key))
            .unwrap_or_else(|| panic!("marker {key} is not a vertex"))
    }

    fn dim_vertices(&self, d: usize) -> Vec<usize> {
        (0..self.g.n())
            .filter(|&i| self.g.vertex(i).dim() == d)
            .collect()
    }

    fn kind_vertices(&self, k: VertexKind) -> Vec<usize> {
        (0..self.g.n()).filter(|&i| self.g.kind(i) == k).collect()
    }

    /// Lines contained in the family's distinguished plane V, minus any
    /// line markers (eigenlines and the derived/central lines), which the
    /// degree tables single out.
    fn generic_v_lines(&self) -> Vec<usize> {
        let v = self.marker("V").clone();
        let named: Vec<usize> = ["derived_line", "central_line", "eigenline1", "eigenline2"]
            .iter()
            .filter_map(|key| {
                self.cat
                    .unwrap()
                    .markers
                    .get(*key)
                    .and_then(|s| self.g.find_vertex(s))
            })
            .collect();
        self.dim_vertices(1)
            .into_iter()
            .filter(|&i| v.contains(self.field(), self.g.vertex(i)) && !named.contains(&i))
            .collect()
    }

    fn lines_inside_v(&self) -> Vec<usize> {
        let v = self.marker("V").clone();
        self.dim_vertices(1)
            .into_iter()
            .filter(|&i| v.contains(self.field(), self.g.vertex(i)))
            .collect()
    }

    fn lines_outside_v(&self) -> Vec<usize> {
        let v = self.marker("V").clone();
        self.dim_vertices(1)
            .into_iter()
            .filter(|&i| !v.contains(self.field(), self.g.vertex(i)))
            .collect()
    }

    fn labels(&self, indices: &[usize]) -> Vec<String> {
        indices.iter().map(|&i| self.g.label(i)).collect()
    }

    /// The common degree of a vertex class, or the sorted distinct degrees
    /// when the class is not regular (which a prediction join will flag).
    fn class_degree(&self, indices: &[usize]) -> Value {
        let degrees: BTreeSet<usize> = indices.iter().map(|&i| self.g.degree(i)).collect();
        if degrees.len() == 1 {
            Value::from(*degrees.iter().next().unwrap())
        } else {
            Value::from(degrees.into_iter().collect::<Vec<_>>())
        }
    }

    fn independent_set(&self, indices: &[usize]) -> bool {
        indices
            .iter()
            .enumerate()
            .all(|(a, &i)| indices[a + 1..].iter().all(|&j| !self.g.adjacent(i, j)))
    }

    fn clique_set(&self, indices: &[usize]) -> bool {
        indices
            .iter()
            .enumerate()
            .all(|(a, &i)| indices[a + 1..].iter().all(|&j| self.g.adjacent(i, j)))
    }

    fn frattini_contained(&self) -> Vec<usize> {
        (0..self.g.n())
            .filter(|&i| self.inv.frattini.contains(self.field(), self.g.vertex(i)))
            .collect()
    }
}

fn observe(ctx: &Ctx, name: &str) -> Obs {
    use Obs::Val;
    let v = match name {
        "order" => Value::from(ctx.gb.order),
        "size" => Value::from(ctx.gb.size),
        "line_count" => Value::from(ctx.dim_vertices(1).len()),
        "plane_count" => Value::from(ctx.dim_vertices(2).len()),
        "isolated_vertices" => Value::from(ctx.labels(&ctx.gb.isolated_vertices)),
        "is_connected" => Value::from(ctx.gb.is_connected),
        "diameter" => serde_json::to_value(ctx.gb.diameter).unwrap(),
        "radius" => serde_json::to_value(ctx.gb.radius).unwrap(),
        "girth" => serde_json::to_value(ctx.gb.girth).unwrap(),
        "is_regular" => Value::from(ctx.gb.is_regular),
        "is_complete" => Value::from(ctx.gb.is_complete),
        "every_vertex_on_triangle" => Value::from(ctx.gb.every_vertex_on_triangle),
        "is_planar" => Value::from(ctx.gb.is_planar),
        "degree_sequence" => Value::from(ctx.gb.degree_sequence.clone()),
        "clique_number" | "chromatic_number" | "independence_number" => {
            let v = match name {
                "clique_number" => &ctx.gb.clique_number,
                "chromatic_number" => &ctx.gb.chromatic_number,
                _ => &ctx.gb.independence_number,
            };
            if *v == undecided() {
                return Obs::Undecided;
            }
            v.clone()
        }
        "domination_number" => {
            // Computed on the whole graph unless isolated vertices force
            // the star graph (every isolated vertex dominates only itself).
            let v = if ctx.gb.isolated_vertices.is_empty() {
                &ctx.gb.domination_number
            } else {
                &ctx.sb.domination_number
            };
            if *v == undecided() {
                return Obs::Undecided;
            }
            v.clone()
        }
        "law_isolated_iff_frattini" => {
            let frat = ctx.frattini_contained();
            if frat == ctx.gb.isolated_vertices {
                Value::Bool(true)
            } else {
                let iso: BTreeSet<usize> = ctx.gb.isolated_vertices.iter().copied().collect();
                let fr: BTreeSet<usize> = frat.iter().copied().collect();
                let only_iso: Vec<usize> = iso.difference(&fr).copied().collect();
                let only_fr: Vec<usize> = fr.difference(&iso).copied().collect();
                json!({
                    "equal": false,
                    "isolated_not_in_frattini": ctx.labels(&only_iso),
                    "frattini_not_isolated": ctx.labels(&only_fr),
                })
            }
        }
        "law_complete_iff_all_lines" => Value::Bool(ctx.gb.is_complete == ctx.inv.all_lines()),
        "law_restricted_diameter_le_3" => {
            Value::Bool(ctx.rb.is_connected && ctx.rb.diameter <= Distance::Val(3))
        }
        "count_nilpotent_lines" => Value::from(ctx.kind_vertices(VertexKind::NilpotentLine).len()),
        "count_split_lines" => Value::from(ctx.kind_vertices(VertexKind::SplitLine).len()),
        "count_nonsplit_lines" => Value::from(ctx.kind_vertices(VertexKind::NonsplitLine).len()),
        "degree_planes" | "degree_borels" => ctx.class_degree(&ctx.dim_vertices(2)),
        "degree_lines" => ctx.class_degree(&ctx.dim_vertices(1)),
        "degree_nilpotent_lines" => ctx.class_degree(&ctx.kind_vertices(VertexKind::NilpotentLine)),
        "degree_split_lines" => ctx.class_degree(&ctx.kind_vertices(VertexKind::SplitLine)),
        "degree_nonsplit_lines" => ctx.class_degree(&ctx.kind_vertices(VertexKind::NonsplitLine)),
        "degree_noncentral_lines" => {
            let z = ctx.marker_vertex("Z");
            let lines: Vec<usize> = ctx
                .dim_vertices(1)
                .into_iter()
                .filter(|&i| i != z)
                .collect();
            ctx.class_degree(&lines)
        }
        "degree_special_lines" => {
            let set = [
                ctx.marker_vertex("derived_line"),
                ctx.marker_vertex("central_line"),
            ];
            ctx.class_degree(&set)
        }
        "degree_eigenlines" => {
            let set = [
                ctx.marker_vertex("eigenline1"),
                ctx.marker_vertex("eigenline2"),
            ];
            ctx.class_degree(&set)
        }
        "degree_other_v_lines" => ctx.class_degree(&ctx.generic_v_lines()),
        "degree_outside_lines" => ctx.class_degree(&ctx.lines_outside_v()),
        "degree_v" => Value::from(ctx.g.degree(ctx.marker_vertex("V"))),
        "degree_v_lines" => ctx.class_degree(&ctx.lines_inside_v()),
        "lines_independent" => Value::Bool(ctx.independent_set(&ctx.dim_vertices(1))),
        "v_lines_independent" => Value::Bool(ctx.independent_set(&ctx.lines_inside_v())),
        "outside_lines_clique" => Value::Bool(ctx.clique_set(&ctx.lines_outside_v())),
        "noncentral_lines_multipartite" => Value::Bool(noncentral_multipartite(ctx)),
        "outside_adjacency_law" => Value::Bool(outside_adjacency_law(ctx)),
        "star_order" => Value::from(ctx.sb.order),
        "star_regular_degree" => {
            let degrees: BTreeSet<usize> = (0..ctx.star.n()).map(|i| ctx.star.degree(i)).collect();
            match degrees.len() {
                1 => Value::from(*degrees.iter().next().unwrap()),
                _ => Value::from(degrees.into_iter().collect::<Vec<_>>()),
            }
        }
        "center_labels" => Value::from(ctx.labels(&ctx.gb.center)),
        "distance_line_a_to_plane_b" => {
            let a = ctx.marker_vertex("line_a");
            let b = ctx.marker_vertex("plane_b");
            serde_json::to_value(invariants::distance(ctx.g.adj(), a, b)).unwrap()
        }
        other => panic!("no observer for invariant {other:?}"),
    };
    Val(v)
}

/// Heisenberg structure check: the noncentral lines fall into q+1 groups
/// of size q (grouped by the central plane spanned with Z), adjacent
/// exactly across groups.
fn noncentral_multipartite(ctx: &Ctx) -> bool {
    let field = ctx.field().clone();
    let q = field.q() as usize;
    let z_vertex = ctx.marker_vertex("Z");
    let z = ctx.g.vertex(z_vertex).clone();
    let lines: Vec<usize> = ctx
        .dim_vertices(1)
        .into_iter()
        .filter(|&i| i != z_vertex)
        .collect();
    let mut parts: BTreeMap<Subspace, Vec<usize>> = BTreeMap::new();
    for &i in &lines {
        let plane = Subspace::sum(&field, ctx.g.vertex(i), &z);
        parts.entry(plane).or_default().push(i);
    }
    if parts.len() != q + 1 || parts.values().any(|p| p.len() != q) {
        return false;
    }
    let part_of: BTreeMap<usize, usize> = parts
        .values()
        .enumerate()
        .flat_map(|(pi, vs)| vs.iter().map(move |&v| (v, pi)))
        .collect();
    lines.iter().enumerate().all(|(a, &i)| {
        lines[a + 1..]
            .iter()
            .all(|&j| ctx.g.adjacent(i, j) == (part_of[&i] != part_of[&j]))
    })
}

/// Outside-line adjacency law: lines not in V have a unique generator
/// x + a y + b z, read off the canonical basis row; two of them are
/// adjacent exactly when both coordinates differ.
fn outside_adjacency_law(ctx: &Ctx) -> bool {
    let field = ctx.field();
    let coords: Vec<(usize, Vec<u64>)> = ctx
        .lines_outside_v()
        .into_iter()
        .map(|i| {
            let row = &ctx.g.vertex(i).rows()[0];
            assert!(
                field.is_one(&row[0]),
                "line outside V must have a unit x-coordinate in canonical form"
            );
            (i, vec![field.index(&row[1]), field.index(&row[2])])
        })
        .collect();
    coords.iter().enumerate().all(|(n, (i, ab))| {
        coords[n + 1..]
            .iter()
            .all(|(j, cd)| ctx.g.adjacent(*i, *j) == (ab[0] != cd[0] && ab[1] != cd[1]))
    })
}

/// Invariants observed on every run, in report order; prediction rows not
/// in this list follow in their table order.
const STANDARD_ROWS: &[&str] = &[
    "order",
    "size",
    "line_count",
    "plane_count",
    "isolated_vertices",
    "is_connected",
    "diameter",
    "radius",
    "girth",
    "is_regular",
    "is_complete",
    "every_vertex_on_triangle",
    "clique_number",
    "chromatic_number",
    "independence_number",
    "domination_number",
    "is_planar",
    "law_isolated_iff_frattini",
    "law_complete_iff_all_lines",
    "law_restricted_diameter_le_3",
];

fn check_row(name: &str, pred: Option<&Prediction>, obs: Obs) -> Check {
    let (computed, decided) = match obs {
        Obs::Val(v) => (v, true),
        Obs::Undecided => (undecided(), false),
    };
    let (status, predicted, rule) = match pred {
        None => (Status::Unpredicted, None, None),
        Some(p) => {
            let status = if !decided {
                Status::Undecided
            } else if computed == p.value {
                Status::Match
            } else if p.claim_check {
                Status::Conflict
            } else {
                Status::Mismatch
            };
            (status, Some(p.value.clone()), Some(p.rule.to_string()))
        }
    };
    Check {
        invariant: name.to_string(),
        predicted,
        computed,
        status,
        rule,
    }
}

fn build_checks(ctx: &Ctx, preds: &[Prediction]) -> Vec<Check> {
    let by_name: BTreeMap<&str, &Prediction> = preds.iter().map(|p| (p.invariant, p)).collect();
    let mut rows = Vec::new();
    for &name in STANDARD_ROWS {
        rows.push(check_row(
            name,
            by_name.get(name).copied(),
            observe(ctx, name),
        ));
    }
    for p in preds {
        if !STANDARD_ROWS.contains(&p.invariant) {
            rows.push(check_row(p.invariant, Some(p), observe(ctx, p.invariant)));
        }
    }
    rows
}

pub fn summarize(checks: &[Check]) -> Summary {
    let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
    let mismatches = count(Status::Mismatch);
    let undecided = count(Status::Undecided);
    Summary {
        matches: count(Status::Match),
        mismatches,
        conflicts: count(Status::Conflict),
        undecided,
        unpredicted: count(Status::Unpredicted),
        ok: mismatches == 0 && undecided == 0,
    }
}

/// Build and verify a catalog family.
pub fn run(config: &RunConfig) -> Result<RunOutput, RunError> {
    let field = Field::parse(&config.field)?;
    let (id, params) = catalog::resolve_family(&config.family, &field, &config.params)?;
    id.supported_over(&field)?;
    let cat = catalog::build(id, &field, &params)?;
    assemble(Some((&cat, params)), &cat.algebra, config)
}

/// Verify an algebra loaded from structure constants; only the three
/// general laws have predictions.
pub fn run_loaded(algebra: &LieAlgebra, config: &RunConfig) -> Result<RunOutput, RunError> {
    assemble(None, algebra, config)
}

fn assemble(
    cat: Option<(&CatalogAlgebra, BTreeMap<String, String>)>,
    algebra: &LieAlgebra,
    config: &RunConfig,
) -> Result<RunOutput, RunError> {
    let (cat, resolved_params) = match cat {
        Some((c, p)) => (Some(c), p),
        None => (None, BTreeMap::new()),
    };
    let field = algebra.field().clone();
    let inv = enumerate_subalgebras(algebra);
    let mut g = ComaximalGraph::build(algebra, &inv);

    let is_sl2 = cat.is_some_and(|c| c.id == FamilyId::Sl2);
    let mut hint: Option<Vec<usize>> = None;
    if is_sl2 {
        g.refine_sl2_kinds()?;
        hint = Some(borel_coloring(&g).expect("kinds were just refined"));
    }

    let star = g.star();
    let star_hint: Option<Vec<usize>> = hint.as_ref().map(|h| {
        (0..g.n())
            .filter(|&i| !g.is_isolated(i))
            .map(|i| h[i])
            .collect()
    });

    let keep: Vec<usize> = (0..g.n())
        .filter(|&i| !inv.frattini.contains(&field, g.vertex(i)))
        .collect();
    let excluded: Vec<usize> = (0..g.n())
        .filter(|&i| inv.frattini.contains(&field, g.vertex(i)))
        .collect();
    let restricted = g.induced(&keep);
    let rb = RestrictedBlock {
        order: restricted.n(),
        excluded,
        is_connected: invariants::is_connected(restricted.adj()),
        diameter: invariants::diameter(restricted.adj()),
    };

    let gb = graph_block(&g, config.budget, hint.as_deref());
    let sb = graph_block(&star, config.budget, star_hint.as_deref());

    let preds: Vec<Prediction> = if config.check {
        match cat {
            Some(c) => predict::predictions(c, &g),
            None => predict::laws(),
        }
    } else {
        Vec::new()
    };
    let ctx = Ctx {
        cat,
        inv: &inv,
        g: &g,
        star: &star,
        gb: &gb,
        sb: &sb,
        rb: &rb,
    };
    let checks = if config.check {
        build_checks(&ctx, &preds)
    } else {
        Vec::new()
    };
    let summary = summarize(&checks);

    let report = Report {
        schema: REPORT_SCHEMA.to_string(),
        config: ConfigBlock {
            family: cat.map(|_| config.family.clone()),
            field: field.designation(),
            params: config.params.clone(),
            check: config.check,
            star: config.star_focus,
            budget: config.budget,
        },
        algebra: AlgebraBlock {
            name: algebra.name().to_string(),
            family: cat.map(|c| c.id.name().to_string()),
            params: resolved_params,
            field: field.designation(),
            dim: algebra.dim(),
            derived_dim: algebra.derived_dim(),
            structure: crate::io::format_algebra(algebra),
        },
        inventory: inventory_block(&inv, &field, &g, is_sl2),
        graph: gb,
        star: sb,
        restricted: rb,
        checks,
        summary,
    };
    Ok(RunOutput {
        report,
        graph: g,
        star,
    })
}

/// Serialize any report deterministically: pretty JSON plus a final
/// newline. Re-serializing a parsed report reproduces the bytes.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

/// Render the human-readable report text.
pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    let a = &report.algebra;
    out.push_str(&format!(
        "algebra {}: dim {} over F_{}, derived dim {}\n",
        a.name, a.dim, a.field, a.derived_dim
    ));
    let counts: Vec<String> = report
        .inventory
        .counts
        .iter()
        .map(|(d, c)| format!("{c} of dim {d}"))
        .collect();
    out.push_str(&format!(
        "inventory: {}; frattini dim {}\n",
        if counts.is_empty() {
            "no proper nontrivial subalgebras".to_string()
        } else {
            counts.join(", ")
        },
        report.inventory.frattini_dim
    ));
    for block in [&report.graph, &report.star] {
        out.push_str(&render_block_line(block));
    }
    if report.graph.order == 0 {
        out.push_str("note: the graph has no vertices\n");
    }
    out.push_str(&format!(
        "restricted graph (vertices not in the frattini subalgebra): order {}, {}, diameter {}\n",
        report.restricted.order,
        if report.restricted.is_connected {
            "connected"
        } else {
            "disconnected"
        },
        report.restricted.diameter
    ));
    if !report.checks.is_empty() {
        out.push_str("checks:\n");
        for c in &report.checks {
            let status = match c.status {
                Status::Match => "match      ",
                Status::Mismatch => "MISMATCH   ",
                Status::Unpredicted => "unpredicted",
                Status::Undecided => "UNDECIDED  ",
                Status::Conflict => "CONFLICT   ",
            };
            let predicted = c
                .predicted
                .as_ref()
                .map(|v| format!(" predicted {v},"))
                .unwrap_or_default();
            let rule = c
                .rule
                .as_ref()
                .map(|s| format!("  [{s}]"))
                .unwrap_or_default();
            out.push_str(&format!(
                "  [{status}] {}:{predicted} computed {}{rule}\n",
                c.invariant, c.computed
            ));
        }
        let s = &report.summary;
        out.push_str(&format!(
            "summary: {} match, {} mismatch, {} conflict, {} undecided, {} unpredicted -> {}\n",
            s.matches,
            s.mismatches,
            s.conflicts,
            s.undecided,
            s.unpredicted,
            if s.ok { "ok" } else { "FAIL" }
        ));
    }
    out
}

fn render_block_line(b: &GraphBlock) -> String {
    format!(
        "graph {}: order {}, size {}, {}, diameter {}, radius {}, girth {}, \
         clique {}, chromatic {}, independence {}, domination {}, planar {}\n",
        b.name,
        b.order,
        b.size,
        if b.is_connected {
            "connected"
        } else {
            "disconnected"
        },
        b.diameter,
        b.radius,
        b.girth,
        b.clique_number,
        b.chromatic_number,
        b.independence_number,
        b.domination_number,
        b.is_planar
    )
}

// ---------------------------------------------------------------------
// Sweep: every requested (family, field) cell, in parallel, with a
// deterministic summary table.
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct SweepCell {
    pub family: String,
    pub field: String,
    pub status: String,
    pub reason: Option<String>,
    pub matches: usize,
    pub mismatches: usize,
    pub conflicts: usize,
    pub undecided: usize,
    pub unpredicted: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub schema: String,
    pub fields: Vec<String>,
    pub cells: Vec<SweepCell>,
    pub ok: bool,
}

fn sweep_cell(id: FamilyId, field_str: &str, budget: u64) -> SweepCell {
    let empty = SweepCell {
        family: id.name().to_string(),
        field: field_str.to_string(),
        status: "ok".to_string(),
        reason: None,
        matches: 0,
        mismatches: 0,
        conflicts: 0,
        undecided: 0,
        unpredicted: 0,
    };
    let field = match Field::parse(field_str) {
        Ok(f) => f,
        Err(e) => {
            return SweepCell {
                status: "error".to_string(),
                reason: Some(e.to_string()),
                ..empty
            }
        }
    };
    if let Err(e) = id.supported_over(&field) {
        return SweepCell {
            status: "skipped".to_string(),
            reason: Some(e.to_string()),
            ..empty
        };
    }
    let mut config = RunConfig::new(id.name(), field_str).checked();
    config.budget = budget;
    match run(&config) {
        Ok(out) => {
            let s = &out.report.summary;
            SweepCell {
                matches: s.matches,
                mismatches: s.mismatches,
                conflicts: s.conflicts,
                undecided: s.undecided,
                unpredicted: s.unpredicted,
                ..empty
            }
        }
        Err(e) => SweepCell {
            status: "error".to_string(),
            reason: Some(e.to_string()),
            ..empty
        },
    }
}

/// Run every (family, field) pair; cells run in parallel but the table
/// order is fixed by the input order.
pub fn sweep(families: &[FamilyId], fields: &[String], budget: u64) -> SweepReport {
    use rayon::prelude::*;
    let jobs: Vec<(FamilyId, String)> = families
        .iter()
        .flat_map(|&id| fields.iter().map(move |f| (id, f.clone())))
        .collect();
    let cells: Vec<SweepCell> = jobs
        .par_iter()
        .map(|(id, f)| sweep_cell(*id, f, budget))
        .collect();
    let ok = cells
        .iter()
        .all(|c| c.status != "error" && c.mismatches == 0 && c.undecided == 0);
    SweepReport {
        schema: SWEEP_SCHEMA.to_string(),
        fields: fields.to_vec(),
        cells,
        ok,
    }
}

/// Apply the COMAX_THREADS cap to the global worker pool. Silently keeps
/// the default when unset or unparsable, and when a pool already exists.
pub fn init_threads() {
    if let Ok(v) = std::env::var("COMAX_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n > 0 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
        }
    }
}

pub fn render_sweep_text(sw: &SweepReport) -> String {
    let mut out = String::new();
    out.push_str(
        "family               field  status   match mismatch conflict undecided unpredicted\n",
    );
    for c in &sw.cells {
        out.push_str(&format!(
            "{:<20} {:<6} {:<8} {:>5} {:>8} {:>8} {:>9} {:>11}{}\n",
            c.family,
            c.field,
            c.status,
            c.matches,
            c.mismatches,
            c.conflicts,
            c.undecided,
            c.unpredicted,
            c.reason
                .as_ref()
                .map(|r| format!("  ({r})"))
                .unwrap_or_default()
        ));
    }
    out.push_str(&format!("sweep -> {}\n", if sw.ok { "ok" } else { "FAIL" }));
    out
}
