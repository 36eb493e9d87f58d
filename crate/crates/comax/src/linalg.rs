//! Row-reduced linear algebra over a finite field: vectors, canonical
//! subspaces (unique RREF basis matrices), sums, intersections, membership.
//!
//! Canonical form makes subspace equality and hashing structural, so
//! subspaces can be deduplicated, sorted, and used as graph vertices with no
//! extra normalization.

use crate::field::{Field, FieldElement};

pub type Vector = Vec<FieldElement>;

pub fn zero_vector(field: &Field, n: usize) -> Vector {
    vec![field.zero(); n]
}

pub fn vec_is_zero(field: &Field, v: &[FieldElement]) -> bool {
    v.iter().all(|c| field.is_zero(c))
}

pub fn vec_add(field: &Field, a: &[FieldElement], b: &[FieldElement]) -> Vector {
    a.iter().zip(b).map(|(x, y)| field.add(x, y)).collect()
}

pub fn vec_sub(field: &Field, a: &[FieldElement], b: &[FieldElement]) -> Vector {
    a.iter().zip(b).map(|(x, y)| field.sub(x, y)).collect()
}

pub fn vec_scale(field: &Field, c: &FieldElement, a: &[FieldElement]) -> Vector {
    a.iter().map(|x| field.mul(c, x)).collect()
}

/// All q^n vectors of F_q^n in index order (row index = little-endian base-q
/// digits mapped through the field's element order).
pub fn all_vectors(field: &Field, n: usize) -> Vec<Vector> {
    let q = field.q();
    let total = q.pow(n as u32);
    (0..total)
        .map(|mut i| {
            (0..n)
                .map(|_| {
                    let e = field.element(i % q);
                    i /= q;
                    e
                })
                .collect()
        })
        .collect()
}

/// In-place reduced row echelon form; returns the nonzero rows (pivots
/// normalized to 1, pivot columns cleared elsewhere, pivots strictly
/// increasing by row).
fn rref(field: &Field, n: usize, vectors: &[Vector]) -> Vec<Vector> {
    let mut rows: Vec<Vector> = vectors.to_vec();
    for row in &rows {
        assert_eq!(row.len(), n, "vector has wrong ambient dimension");
    }
    let mut r = 0;
    for col in 0..n {
        let Some(pivot) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][col])) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = field.inv(&rows[r][col]).unwrap();
        rows[r] = vec_scale(field, &inv, &rows[r]);
        for i in 0..rows.len() {
            if i != r && !field.is_zero(&rows[i][col]) {
                let factor = rows[i][col].clone();
                rows[i] = vec_sub(field, &rows[i], &vec_scale(field, &factor, &rows[r]));
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    rows
}

/// A linear subspace of F_q^n in canonical form. Equality, hashing and
/// ordering are structural; ordering is by (dimension, flattened coefficient
/// bytes of the basis matrix).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    n: usize,
    rows: Vec<Vector>,
}

impl Subspace {
    pub fn zero(n: usize) -> Subspace {
        Subspace {
            n,
            rows: Vec::new(),
        }
    }

    pub fn full(field: &Field, n: usize) -> Subspace {
        let rows = (0..n)
            .map(|i| {
                let mut v = zero_vector(field, n);
                v[i] = field.one();
                v
            })
            .collect();
        Subspace { n, rows }
    }

    pub fn span(field: &Field, n: usize, vectors: &[Vector]) -> Subspace {
        Subspace {
            n,
            rows: rref(field, n, vectors),
        }
    }

    pub fn line(field: &Field, v: &[FieldElement]) -> Subspace {
        Subspace::span(field, v.len(), &[v.to_vec()])
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.n
    }

    /// Membership: reduce v by the RREF rows and test for zero.
    pub fn contains_vector(&self, field: &Field, v: &[FieldElement]) -> bool {
        assert_eq!(v.len(), self.n);
        let mut w = v.to_vec();
        for row in &self.rows {
            let pc = row.iter().position(|c| field.is_one(c)).unwrap();
            if !field.is_zero(&w[pc]) {
                let factor = w[pc].clone();
                w = vec_sub(field, &w, &vec_scale(field, &factor, row));
            }
        }
        vec_is_zero(field, &w)
    }

    pub fn contains(&self, field: &Field, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains_vector(field, r))
    }

    pub fn sum(field: &Field, a: &Subspace, b: &Subspace) -> Subspace {
        assert_eq!(a.n, b.n, "subspaces of different ambient spaces");
        let mut vs = a.rows.clone();
        vs.extend(b.rows.iter().cloned());
        Subspace::span(field, a.n, &vs)
    }

    /// Intersection via the left kernel of the stacked basis matrix: a row
    /// combination (c, d) with sum(c_i a_i) + sum(d_j b_j) = 0 exhibits the
    /// intersection vector sum(c_i a_i).
    pub fn intersect(field: &Field, a: &Subspace, b: &Subspace) -> Subspace {
        assert_eq!(a.n, b.n, "subspaces of different ambient spaces");
        if a.is_zero() || b.is_zero() {
            return Subspace::zero(a.n);
        }
        let m = a.dim() + b.dim();
        let n = a.n;
        // Augmented rows [row | identity coordinates], eliminate on the first
        // n columns only.
        let mut rows: Vec<Vector> = Vec::with_capacity(m);
        for (idx, src) in a.rows.iter().chain(b.rows.iter()).enumerate() {
            let mut row = src.clone();
            row.extend((0..m).map(|j| if j == idx { field.one() } else { field.zero() }));
            rows.push(row);
        }
        let mut r = 0;
        for col in 0..n {
            let Some(pivot) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][col])) else {
                continue;
            };
            rows.swap(r, pivot);
            let inv = field.inv(&rows[r][col]).unwrap();
            rows[r] = vec_scale(field, &inv, &rows[r]);
            for i in 0..rows.len() {
                if i != r && !field.is_zero(&rows[i][col]) {
                    let factor = rows[i][col].clone();
                    rows[i] = vec_sub(field, &rows[i], &vec_scale(field, &factor, &rows[r]));
                }
            }
            r += 1;
        }
        let mut witnesses: Vec<Vector> = Vec::new();
        for row in &rows[r..] {
            let combo = &row[n..];
            let mut v = zero_vector(field, n);
            for (i, c) in combo.iter().take(a.dim()).enumerate() {
                v = vec_add(field, &v, &vec_scale(field, c, &a.rows[i]));
            }
            witnesses.push(v);
        }
        Subspace::span(field, n, &witnesses)
    }

    /// Sort key: (dimension, concatenated coefficient digits of the basis).
    pub fn sort_key(&self) -> (usize, Vec<u64>) {
        let flat = self
            .rows
            .iter()
            .flat_map(|row| row.iter().flat_map(|e| e.rep().iter().copied()))
            .collect();
        (self.rows.len(), flat)
    }

    /// Rows as display strings, elements space-separated: `"1 0 2"`.
    pub fn format_rows(&self, field: &Field) -> Vec<String> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| field.format_element(e))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect()
    }

    /// Compact one-line form: `[1 0 0; 0 0 1]`.
    pub fn format_compact(&self, field: &Field) -> String {
        format!("[{}]", self.format_rows(field).join("; "))
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}
