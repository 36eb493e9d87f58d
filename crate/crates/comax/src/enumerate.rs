//! Exhaustive enumeration of subspaces and subalgebras.
//!
//! Subspaces of dimension d are generated directly in canonical reduced
//! row-echelon form, one matrix per pivot-column pattern and free-entry
//! assignment, so each subspace appears exactly once and the count matches
//! the Gaussian binomial coefficient by construction.

use crate::field::Field;
use crate::lie::LieAlgebra;
use crate::linalg::{Subspace, Vector};
use std::collections::BTreeMap;

/// Gaussian binomial [n choose d]_q, the number of d-dimensional subspaces
/// of F_q^n, by the Pascal-style recurrence (exact integer arithmetic).
pub fn gaussian_binomial(n: usize, d: usize, q: u64) -> u64 {
    if d > n {
        return 0;
    }
    let mut row = vec![0u128; d + 1];
    row[0] = 1;
    for i in 1..=n {
        let hi = d.min(i);
        for j in (1..=hi).rev() {
            let qj = (q as u128).pow(j as u32);
            row[j] = row[j].checked_mul(qj).expect("desk-scale counts") + row[j - 1];
        }
    }
    u64::try_from(row[d]).expect("desk-scale counts")
}

/// All d-dimensional subspaces of F_q^n, sorted canonically.
pub fn enumerate_subspaces(field: &Field, n: usize, d: usize) -> Vec<Subspace> {
    if d > n {
        return Vec::new();
    }
    if d == 0 {
        return vec![Subspace::zero(n)];
    }
    let q = field.q();
    let mut out: Vec<Subspace> = Vec::with_capacity(gaussian_binomial(n, d, q) as usize);
    // Pivot-column subsets in lexicographic order via bitmask scan.
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != d {
            continue;
        }
        let pivots: Vec<usize> = (0..n).filter(|&c| mask & (1 << c) != 0).collect();
        // Free positions: (row, col) with col not a pivot and col > pivot(row).
        let mut free: Vec<(usize, usize)> = Vec::new();
        for (r, &pc) in pivots.iter().enumerate() {
            for c in (pc + 1)..n {
                if mask & (1 << c) == 0 {
                    free.push((r, c));
                }
            }
        }
        let combos = q.pow(free.len() as u32);
        for assignment in 0..combos {
            let mut rows: Vec<Vector> = (0..d)
                .map(|r| {
                    let mut row = vec![field.zero(); n];
                    row[pivots[r]] = field.one();
                    row
                })
                .collect();
            let mut a = assignment;
            for &(r, c) in &free {
                rows[r][c] = field.element(a % q);
                a /= q;
            }
            let s = Subspace::span(field, n, &rows);
            debug_assert_eq!(s.rows(), &rows[..], "pattern matrix was not canonical");
            out.push(s);
        }
    }
    out.sort();
    debug_assert_eq!(out.len() as u64, gaussian_binomial(n, d, q));
    out
}

/// Every proper nontrivial subalgebra of L, grouped by dimension, with the
/// maximal subalgebras and the Frattini subalgebra F(L) (intersection of all
/// maximal subalgebras).
#[derive(Debug, Clone)]
pub struct SubalgebraInventory {
    pub by_dim: BTreeMap<usize, Vec<Subspace>>,
    pub maximals: Vec<Subspace>,
    pub frattini: Subspace,
}

impl SubalgebraInventory {
    pub fn count(&self, d: usize) -> usize {
        self.by_dim.get(&d).map_or(0, |v| v.len())
    }

    pub fn total(&self) -> usize {
        self.by_dim.values().map(|v| v.len()).sum()
    }

    /// Flattened vertex list in canonical order: by (dimension, basis bytes).
    pub fn vertices(&self) -> Vec<Subspace> {
        self.by_dim.values().flatten().cloned().collect()
    }

    /// True when no proper nontrivial subalgebra has dimension >= 2.
    pub fn all_lines(&self) -> bool {
        self.by_dim.keys().all(|&d| d == 1)
    }
}

/// Filter the exhaustive subspace enumeration through bracket closure.
pub fn enumerate_subalgebras(l: &LieAlgebra) -> SubalgebraInventory {
    let n = l.dim();
    let field = l.field();
    let mut by_dim: BTreeMap<usize, Vec<Subspace>> = BTreeMap::new();
    for d in 1..n {
        let subs: Vec<Subspace> = enumerate_subspaces(field, n, d)
            .into_iter()
            .filter(|s| l.is_subalgebra(s))
            .collect();
        if !subs.is_empty() {
            by_dim.insert(d, subs);
        }
    }

    // Maximal = not strictly contained in another proper subalgebra. When no
    // nontrivial proper subalgebra exists (n = 1), the zero subalgebra is the
    // unique maximal one.
    let all: Vec<Subspace> = by_dim.values().flatten().cloned().collect();
    let mut maximals: Vec<Subspace> = all
        .iter()
        .filter(|s| {
            !all.iter()
                .any(|t| t.dim() > s.dim() && t.contains(field, s))
        })
        .cloned()
        .collect();
    if maximals.is_empty() {
        maximals.push(Subspace::zero(n));
    }
    maximals.sort();

    let mut frattini = Subspace::full(field, n);
    for m in &maximals {
        frattini = Subspace::intersect(field, &frattini, m);
    }

    SubalgebraInventory {
        by_dim,
        maximals,
        frattini,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::all_vectors;
    use std::collections::BTreeSet;

    fn f(q: u64) -> Field {
        match q {
            4 => Field::new(2, 2, None).unwrap(),
            9 => Field::new(3, 2, None).unwrap(),
            _ => Field::new(q, 1, None).unwrap(),
        }
    }

    #[test]
    fn gaussian_binomial_values() {
        assert_eq!(gaussian_binomial(3, 1, 2), 7);
        assert_eq!(gaussian_binomial(3, 2, 2), 7);
        assert_eq!(gaussian_binomial(3, 1, 3), 13);
        assert_eq!(gaussian_binomial(3, 2, 3), 13);
        assert_eq!(gaussian_binomial(3, 1, 4), 21);
        assert_eq!(gaussian_binomial(3, 1, 5), 31);
        assert_eq!(gaussian_binomial(4, 1, 3), 40);
        assert_eq!(gaussian_binomial(4, 2, 3), 130);
        assert_eq!(gaussian_binomial(4, 3, 3), 40);
        assert_eq!(gaussian_binomial(4, 1, 5), 156);
        assert_eq!(gaussian_binomial(2, 1, 9), 10);
        assert_eq!(gaussian_binomial(5, 2, 2), 155);
        assert_eq!(gaussian_binomial(3, 0, 7), 1);
        assert_eq!(gaussian_binomial(3, 3, 7), 1);
        assert_eq!(gaussian_binomial(2, 3, 7), 0);
    }

    /// Oracle: spans of all d-tuples of vectors, deduplicated canonically.
    fn spans_by_brute_force(field: &Field, n: usize, d: usize) -> BTreeSet<Subspace> {
        let all = all_vectors(field, n);
        let mut set = BTreeSet::new();
        let total = all.len().pow(d as u32);
        for mut idx in 0..total {
            let gens: Vec<Vector> = (0..d)
                .map(|_| {
                    let v = all[idx % all.len()].clone();
                    idx /= all.len();
                    v
                })
                .collect();
            let s = Subspace::span(field, n, &gens);
            if s.dim() == d {
                set.insert(s);
            }
        }
        set
    }

    #[test]
    fn enumeration_matches_brute_force_spans() {
        for q in [2u64, 3] {
            let field = f(q);
            for n in 1..=3 {
                for d in 0..=n {
                    let listed = enumerate_subspaces(&field, n, d);
                    assert_eq!(listed.len() as u64, gaussian_binomial(n, d, q));
                    let distinct: BTreeSet<Subspace> = listed.iter().cloned().collect();
                    assert_eq!(distinct.len(), listed.len(), "duplicates emitted");
                    if d > 0 {
                        assert_eq!(distinct, spans_by_brute_force(&field, n, d));
                    }
                    // Canonical order.
                    let mut sorted = listed.clone();
                    sorted.sort();
                    assert_eq!(listed, sorted);
                }
            }
        }
    }

    #[test]
    fn enumeration_counts_for_larger_cells() {
        let field = f(5);
        assert_eq!(enumerate_subspaces(&field, 3, 1).len(), 31);
        assert_eq!(enumerate_subspaces(&field, 3, 2).len(), 31);
        let f4 = f(4);
        assert_eq!(enumerate_subspaces(&f4, 3, 1).len(), 21);
        assert_eq!(enumerate_subspaces(&f4, 3, 2).len(), 21);
    }

    fn coords(field: &Field, cs: &[i64]) -> Vector {
        cs.iter().map(|&c| field.from_signed(c)).collect()
    }

    #[test]
    fn heisenberg_inventory() {
        let field = f(2);
        let l = LieAlgebra::build(
            field.clone(),
            3,
            "heisenberg",
            &[(0, 1, coords(&field, &[0, 0, 1]))],
        )
        .unwrap();
        let inv = enumerate_subalgebras(&l);
        assert_eq!(inv.count(1), 7); // every line is a subalgebra
        assert_eq!(inv.count(2), 3); // exactly the planes containing the center
        let z = Subspace::line(&field, &coords(&field, &[0, 0, 1]));
        for plane in &inv.by_dim[&2] {
            assert!(plane.contains(&field, &z));
        }
        assert_eq!(inv.maximals, inv.by_dim[&2]);
        assert_eq!(inv.frattini, z);
    }

    #[test]
    fn abelian_inventory() {
        let field = f(3);
        let l = LieAlgebra::build(field.clone(), 3, "abelian", &[]).unwrap();
        let inv = enumerate_subalgebras(&l);
        assert_eq!(inv.count(1), 13);
        assert_eq!(inv.count(2), 13);
        assert_eq!(inv.maximals.len(), 13);
        assert!(inv.frattini.is_zero());
        assert_eq!(inv.total(), 26);
        assert!(!inv.all_lines());
    }

    #[test]
    fn sl2_inventory_has_maximal_lines() {
        let field = f(3);
        let l = LieAlgebra::build(
            field.clone(),
            3,
            "sl2",
            &[
                (0, 1, coords(&field, &[0, 0, 1])),
                (0, 2, coords(&field, &[-2, 0, 0])),
                (1, 2, coords(&field, &[0, 2, 0])),
            ],
        )
        .unwrap();
        let inv = enumerate_subalgebras(&l);
        assert_eq!(inv.count(1), 13);
        assert_eq!(inv.count(2), 4);
        // Maximals: the 4 planes plus the 3 lines lying in no plane.
        assert_eq!(inv.maximals.len(), 7);
        assert!(inv.frattini.is_zero());
    }

    #[test]
    fn dim1_inventory() {
        let field = f(5);
        let l = LieAlgebra::build(field.clone(), 1, "dim1", &[]).unwrap();
        let inv = enumerate_subalgebras(&l);
        assert_eq!(inv.total(), 0);
        assert_eq!(inv.maximals, vec![Subspace::zero(1)]);
        assert!(inv.frattini.is_zero());
    }

    #[test]
    fn vertex_order_is_by_dim_then_bytes() {
        let field = f(2);
        let l = LieAlgebra::build(field.clone(), 3, "abelian", &[]).unwrap();
        let verts = enumerate_subalgebras(&l).vertices();
        assert_eq!(verts.len(), 14);
        for w in verts.windows(2) {
            assert!(w[0].sort_key() < w[1].sort_key());
        }
        assert_eq!(verts[0].dim(), 1);
        assert_eq!(verts[13].dim(), 2);
    }
}
