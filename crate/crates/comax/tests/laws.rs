//! Cross-module structural laws, checked against first-principles oracles:
//! adjacency is re-derived from the generated-subalgebra definition, the
//! dimension-3 geometry laws are checked pairwise, and a few invariant
//! values with no closed form are pinned to brute-force results.

use std::collections::BTreeMap;

use comax::catalog::{self, CatalogAlgebra, FamilyId, ALL_FAMILIES};
use comax::enumerate::{enumerate_subalgebras, gaussian_binomial};
use comax::field::Field;
use comax::graph::{ComaximalGraph, VertexKind};
use comax::invariants;
use comax::lie::LieAlgebra;
use comax::linalg::Subspace;
use comax::solve;

fn build(id: FamilyId, field_spec: &str) -> (CatalogAlgebra, ComaximalGraph) {
    let field = Field::parse(field_spec).unwrap();
    let cat = catalog::build(id, &field, &BTreeMap::new()).unwrap();
    let inv = enumerate_subalgebras(&cat.algebra);
    let g = ComaximalGraph::build(&cat.algebra, &inv);
    (cat, g)
}

/// Every (family, field) cell that exists, over small fields.
fn small_cells() -> Vec<(FamilyId, &'static str)> {
    let mut cells = Vec::new();
    for id in ALL_FAMILIES {
        for field_spec in ["2", "3"] {
            let field = Field::parse(field_spec).unwrap();
            if id.supported_over(&field).is_ok() {
                cells.push((id, field_spec));
            }
        }
    }
    cells
}

/// Adjacency in the built graph agrees with the definition: A ~ B exactly
/// when the subalgebra generated by A and B is the whole algebra. The
/// builder uses a dimension shortcut, so this is an independent oracle.
#[test]
fn adjacency_matches_generated_subalgebra_definition() {
    for (id, field_spec) in small_cells() {
        let (cat, g) = build(id, field_spec);
        let l: &LieAlgebra = &cat.algebra;
        for i in 0..g.n() {
            for j in (i + 1)..g.n() {
                let generated =
                    l.generated_subalgebra(&Subspace::sum(l.field(), g.vertex(i), g.vertex(j)));
                let comaximal = generated.dim() == l.dim();
                assert_eq!(
                    g.adjacent(i, j),
                    comaximal,
                    "{}/{field_spec}: vertices {i},{j}",
                    id.name()
                );
                assert_eq!(g.adjacent(j, i), g.adjacent(i, j), "symmetry");
            }
            assert!(!g.adjacent(i, i), "irreflexive");
        }
    }
}

/// In dimension 3 the graph is governed by plane geometry: planes are
/// pairwise adjacent, a line is adjacent to a plane exactly when it is
/// not contained in it, and two lines are adjacent exactly when their
/// span fails to be a subalgebra.
#[test]
fn dim3_geometry_laws_hold_pairwise() {
    let dim3: Vec<(FamilyId, &str)> = small_cells()
        .into_iter()
        .filter(|(id, _)| id.dim() == 3)
        .collect();
    assert!(dim3.len() >= 15, "expected most dim-3 cells to exist");
    for (id, field_spec) in dim3 {
        let (cat, g) = build(id, field_spec);
        let l = &cat.algebra;
        let field = l.field();
        let lines: Vec<usize> = (0..g.n()).filter(|&i| g.vertex(i).dim() == 1).collect();
        let planes: Vec<usize> = (0..g.n()).filter(|&i| g.vertex(i).dim() == 2).collect();
        for (a, &p) in planes.iter().enumerate() {
            for &r in &planes[a + 1..] {
                assert!(
                    g.adjacent(p, r),
                    "{}/{field_spec}: planes {p},{r}",
                    id.name()
                );
            }
        }
        for &line in &lines {
            for &plane in &planes {
                let contained = g.vertex(plane).contains(field, g.vertex(line));
                assert_eq!(
                    g.adjacent(line, plane),
                    !contained,
                    "{}/{field_spec}: line {line} vs plane {plane}",
                    id.name()
                );
            }
        }
        for (a, &x) in lines.iter().enumerate() {
            for &y in &lines[a + 1..] {
                let span = Subspace::sum(field, g.vertex(x), g.vertex(y));
                assert_eq!(
                    g.adjacent(x, y),
                    !l.is_subalgebra(&span),
                    "{}/{field_spec}: lines {x},{y}",
                    id.name()
                );
            }
        }
    }
}

/// Line and plane counts in dimension 3 agree with the Gaussian binomial
/// count of all subspaces whenever every subspace is a subalgebra
/// (abelian and scalar cases), and are bounded by it otherwise.
#[test]
fn subspace_counts_bounded_by_gaussian_binomials() {
    for (id, field_spec) in small_cells() {
        if id.dim() != 3 {
            continue;
        }
        let (_, g) = build(id, field_spec);
        let q = Field::parse(field_spec).unwrap().q();
        let all = gaussian_binomial(3, 1, q);
        let lines = (0..g.n()).filter(|&i| g.vertex(i).dim() == 1).count() as u64;
        let planes = (0..g.n()).filter(|&i| g.vertex(i).dim() == 2).count() as u64;
        assert_eq!(
            lines,
            all,
            "{}/{field_spec}: every line is a subalgebra",
            id.name()
        );
        assert!(
            planes <= gaussian_binomial(3, 2, q),
            "{}/{field_spec}",
            id.name()
        );
        if matches!(id, FamilyId::Abelian3 | FamilyId::Case3Scalar) {
            assert_eq!(
                planes,
                gaussian_binomial(3, 2, q),
                "{}/{field_spec}",
                id.name()
            );
        }
    }
}

/// Each Borel subalgebra of sl2 contains exactly one nilpotent line and
/// q split lines, and no nonsplit line lies in any Borel.
#[test]
fn sl2_borel_line_census() {
    for (field_spec, q) in [("3", 3usize), ("5", 5usize)] {
        let (_, mut g) = build(FamilyId::Sl2, field_spec);
        g.refine_sl2_kinds().unwrap();
        let borels: Vec<usize> = (0..g.n()).filter(|&i| g.vertex(i).dim() == 2).collect();
        assert_eq!(borels.len(), q + 1);
        let field = g.field().clone();
        for &b in &borels {
            let mut nilpotent = 0;
            let mut split = 0;
            let mut nonsplit = 0;
            for i in 0..g.n() {
                if g.vertex(i).dim() == 1 && g.vertex(b).contains(&field, g.vertex(i)) {
                    match g.kind(i) {
                        VertexKind::NilpotentLine => nilpotent += 1,
                        VertexKind::SplitLine => split += 1,
                        VertexKind::NonsplitLine => nonsplit += 1,
                        other => panic!("unrefined line kind {other:?}"),
                    }
                }
            }
            assert_eq!(
                (nilpotent, split, nonsplit),
                (1, q, 0),
                "borel {b} over F_{q}"
            );
        }
    }
}

/// Invariant values with no closed form, pinned to brute-force results so
/// regressions in the exact solvers are caught on real graphs.
#[test]
fn pinned_solver_values_on_small_graphs() {
    // 3-dimensional abelian algebra over F_2: domination number 3 (no two
    // vertices cover all 14; three planes in general position do).
    let (_, g) = build(FamilyId::Abelian3, "2");
    let gamma = solve::min_dominating_set(g.adj(), solve::DEFAULT_BUDGET)
        .exact()
        .unwrap();
    assert_eq!(gamma.gamma, 3);
    assert!(solve::verify_dominating(g.adj(), &gamma.witness));

    // Heisenberg over F_2 with the central line removed: chromatic number
    // 3 (the graph is K_{2,2,2} plus three pairwise adjacent planes, and a
    // proper 3-coloring pairs each plane with the part it contains).
    let (_, g) = build(FamilyId::Heisenberg3, "2");
    let star = g.star();
    let chi = solve::chromatic_number(star.adj(), solve::DEFAULT_BUDGET, None)
        .unwrap()
        .exact()
        .unwrap();
    assert_eq!(chi.chi, 3);
    assert!(solve::verify_coloring(star.adj(), &chi.coloring, 3));

    // sl2 over F_3: independence number 5 (not in any closed form).
    let (_, g) = build(FamilyId::Sl2, "3");
    let alpha = solve::max_independent_set(g.adj(), solve::DEFAULT_BUDGET)
        .exact()
        .unwrap();
    assert_eq!(alpha.size, 5);
    assert!(solve::verify_independent(g.adj(), &alpha.witness));
}

/// The graph never changes under vertex-order-preserving rebuilds, and
/// metrics are pure functions of the adjacency matrix.
#[test]
fn rebuild_is_deterministic() {
    for (id, field_spec) in [(FamilyId::Sl2, "3"), (FamilyId::Solvable2B, "2")] {
        let (_, g1) = build(id, field_spec);
        let (_, g2) = build(id, field_spec);
        assert_eq!(g1.n(), g2.n());
        for i in 0..g1.n() {
            assert_eq!(g1.label(i), g2.label(i));
            for j in 0..g1.n() {
                assert_eq!(g1.adjacent(i, j), g2.adjacent(i, j));
            }
        }
        assert_eq!(invariants::metrics(g1.adj()), invariants::metrics(g2.adj()));
    }
}
