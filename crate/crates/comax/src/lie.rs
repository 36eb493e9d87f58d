//! Finite-dimensional Lie algebras over a finite field, given by structure
//! constants: `table[i][j]` is the coordinate vector of [e_i, e_j] in the
//! basis e_1..e_n.
//!
//! Validation is report-style: every violated axiom instance (alternating,
//! antisymmetry, Jacobi) is listed with its basis indices rather than
//! stopping at the first failure.

use crate::field::{Field, FieldElement};
use crate::linalg::{vec_add, vec_is_zero, vec_scale, zero_vector, Subspace, Vector};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("structure table has wrong shape: {0}")]
    Shape(String),
    #[error(transparent)]
    Field(#[from] crate::field::FieldError),
    #[error("Lie axioms violated: {0}")]
    Invalid(ValidationReport),
}

/// One violated axiom instance, with 1-based basis indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// [e_i, e_i] != 0
    Alternating { i: usize },
    /// table entry for (i, j) is not the negative of the entry for (j, i)
    Antisymmetry { i: usize, j: usize },
    /// cyclic Jacobi sum over (e_i, e_j, e_k) is nonzero
    Jacobi { i: usize, j: usize, k: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::Alternating { i } => write!(f, "[e{i},e{i}] != 0"),
            Violation::Antisymmetry { i, j } => write!(f, "[e{i},e{j}] != -[e{j},e{i}]"),
            Violation::Jacobi { i, j, k } => {
                write!(f, "Jacobi identity fails on (e{i},e{j},e{k})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.ok() {
            return write!(f, "all axioms hold");
        }
        let msgs: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", msgs.join("; "))
    }
}

#[derive(Debug, Clone)]
pub struct LieAlgebra {
    field: Field,
    dim: usize,
    /// table[i][j] = coordinates of [e_i, e_j]; full n x n x n tensor.
    table: Vec<Vec<Vector>>,
    name: String,
}

impl LieAlgebra {
    /// Wrap a full structure tensor; checks shape and element canonicity but
    /// not the Lie axioms (see [`LieAlgebra::validate`]).
    pub fn from_table(
        field: Field,
        table: Vec<Vec<Vector>>,
        name: impl Into<String>,
    ) -> Result<LieAlgebra, LieError> {
        let dim = table.len();
        if dim == 0 {
            return Err(LieError::Shape("dimension must be at least 1".into()));
        }
        for row in &table {
            if row.len() != dim {
                return Err(LieError::Shape(format!(
                    "expected {dim} columns, found {}",
                    row.len()
                )));
            }
            for entry in row {
                if entry.len() != dim {
                    return Err(LieError::Shape(format!(
                        "expected coordinate vectors of length {dim}, found {}",
                        entry.len()
                    )));
                }
                for c in entry {
                    field.check_element(c)?;
                }
            }
        }
        Ok(LieAlgebra {
            field,
            dim,
            table,
            name: name.into(),
        })
    }

    /// Build from the pairs (i, j, [e_i,e_j]) with i < j (0-based); the
    /// antisymmetric completion and zero diagonal are filled in. Axioms are
    /// then validated; any violation is an error.
    pub fn build(
        field: Field,
        dim: usize,
        name: impl Into<String>,
        pairs: &[(usize, usize, Vector)],
    ) -> Result<LieAlgebra, LieError> {
        let zero = zero_vector(&field, dim);
        let mut table = vec![vec![zero; dim]; dim];
        for (i, j, v) in pairs {
            assert!(i < j && *j < dim, "pairs must have i < j < dim");
            table[*i][*j] = v.clone();
            table[*j][*i] = v.iter().map(|c| field.neg(c)).collect();
        }
        let alg = LieAlgebra::from_table(field, table, name)?;
        let report = alg.validate();
        if !report.ok() {
            return Err(LieError::Invalid(report));
        }
        Ok(alg)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn table(&self) -> &[Vec<Vector>] {
        &self.table
    }

    /// Report every violated axiom instance over basis tuples.
    pub fn validate(&self) -> ValidationReport {
        let f = &self.field;
        let n = self.dim;
        let mut violations = Vec::new();
        for i in 0..n {
            if !vec_is_zero(f, &self.table[i][i]) {
                violations.push(Violation::Alternating { i: i + 1 });
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let neg: Vector = self.table[j][i].iter().map(|c| f.neg(c)).collect();
                if self.table[i][j] != neg {
                    violations.push(Violation::Antisymmetry { i: i + 1, j: j + 1 });
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let e = |m: usize| -> Vector {
                        let mut v = zero_vector(f, n);
                        v[m] = f.one();
                        v
                    };
                    let term1 = self.bracket(&self.table[i][j], &e(k));
                    let term2 = self.bracket(&self.table[j][k], &e(i));
                    let term3 = self.bracket(&self.table[k][i], &e(j));
                    let sum = vec_add(f, &vec_add(f, &term1, &term2), &term3);
                    if !vec_is_zero(f, &sum) {
                        violations.push(Violation::Jacobi {
                            i: i + 1,
                            j: j + 1,
                            k: k + 1,
                        });
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    /// Bilinear extension: [u, v] = sum over i, j of u_i v_j [e_i, e_j].
    pub fn bracket(&self, u: &[FieldElement], v: &[FieldElement]) -> Vector {
        let f = &self.field;
        assert_eq!(u.len(), self.dim);
        assert_eq!(v.len(), self.dim);
        let mut out = zero_vector(f, self.dim);
        for (i, ui) in u.iter().enumerate() {
            if f.is_zero(ui) {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if f.is_zero(vj) {
                    continue;
                }
                let coeff = f.mul(ui, vj);
                out = vec_add(f, &out, &vec_scale(f, &coeff, &self.table[i][j]));
            }
        }
        out
    }

    pub fn span(&self, vectors: &[Vector]) -> Subspace {
        Subspace::span(&self.field, self.dim, vectors)
    }

    /// The derived algebra [L, L]: span of all structure vectors.
    pub fn derived_subalgebra(&self) -> Subspace {
        let mut vs = Vec::new();
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                vs.push(self.table[i][j].clone());
            }
        }
        self.span(&vs)
    }

    pub fn derived_dim(&self) -> usize {
        self.derived_subalgebra().dim()
    }

    /// Is the subspace closed under the bracket?
    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        let rows = s.rows();
        for (i, u) in rows.iter().enumerate() {
            for v in &rows[i + 1..] {
                if !s.contains_vector(&self.field, &self.bracket(u, v)) {
                    return false;
                }
            }
        }
        true
    }

    /// Smallest subalgebra containing the subspace: alternate bracket rounds
    /// with linear closure until the dimension stabilizes (at most n rounds).
    pub fn generated_subalgebra(&self, s: &Subspace) -> Subspace {
        let mut cur = s.clone();
        loop {
            let rows = cur.rows();
            let mut vs: Vec<Vector> = rows.to_vec();
            for (i, u) in rows.iter().enumerate() {
                for v in &rows[i + 1..] {
                    vs.push(self.bracket(u, v));
                }
            }
            let next = self.span(&vs);
            if next.dim() == cur.dim() {
                return next;
            }
            cur = next;
        }
    }

    /// The subalgebra generated by two subspaces together.
    pub fn generated_by(&self, a: &Subspace, b: &Subspace) -> Subspace {
        self.generated_subalgebra(&Subspace::sum(&self.field, a, b))
    }
}
