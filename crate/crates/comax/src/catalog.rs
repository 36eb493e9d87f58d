//! Built-in algebra families with known structure, used both as test
//! subjects and as the targets of closed-form predictions.
//!
//! Each builder fixes a basis, fills in the structure constants, validates
//! the Lie axioms, and records *markers*: named subspaces (derived plane V,
//! center Z, eigenlines, the distance-3 witness pair, ...) that later checks
//! refer to.

use crate::field::{Field, FieldElement};
use crate::lie::{LieAlgebra, LieError};
use crate::linalg::{Subspace, Vector};
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown family {0:?} (known: {})", known_names())]
    UnknownFamily(String),
    #[error("family {family} does not exist over F_{q}: {reason}")]
    UnsupportedField {
        family: &'static str,
        q: u64,
        reason: String,
    },
    #[error("bad parameter: {0}")]
    BadParam(String),
    #[error(transparent)]
    Lie(#[from] LieError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyId {
    Abelian1,
    Abelian2,
    Abelian3,
    Nonabelian2,
    Heisenberg3,
    Solvable2B,
    Case3Irreducible,
    Case3TwoEigen,
    Case3Jordan,
    Case3Scalar,
    Sl2,
    Su2,
    Diam3Example,
}

pub const ALL_FAMILIES: [FamilyId; 13] = [
    FamilyId::Abelian1,
    FamilyId::Abelian2,
    FamilyId::Abelian3,
    FamilyId::Nonabelian2,
    FamilyId::Heisenberg3,
    FamilyId::Solvable2B,
    FamilyId::Case3Irreducible,
    FamilyId::Case3TwoEigen,
    FamilyId::Case3Jordan,
    FamilyId::Case3Scalar,
    FamilyId::Sl2,
    FamilyId::Su2,
    FamilyId::Diam3Example,
];

fn known_names() -> String {
    ALL_FAMILIES
        .iter()
        .map(|f| f.name())
        .collect::<Vec<_>>()
        .join(", ")
}

impl FamilyId {
    pub fn name(self) -> &'static str {
        match self {
            FamilyId::Abelian1 => "abelian1",
            FamilyId::Abelian2 => "abelian2",
            FamilyId::Abelian3 => "abelian3",
            FamilyId::Nonabelian2 => "nonabelian2",
            FamilyId::Heisenberg3 => "heisenberg3",
            FamilyId::Solvable2B => "solvable2B",
            FamilyId::Case3Irreducible => "case3_irreducible",
            FamilyId::Case3TwoEigen => "case3_two_eigen",
            FamilyId::Case3Jordan => "case3_jordan",
            FamilyId::Case3Scalar => "case3_scalar",
            FamilyId::Sl2 => "sl2",
            FamilyId::Su2 => "su2",
            FamilyId::Diam3Example => "diam3_example",
        }
    }

    pub fn parse(s: &str) -> Result<FamilyId, CatalogError> {
        let canonical = s.trim();
        let alias = match canonical {
            "dim1" => "abelian1",
            "dim2" | "dim2_abelian" => "abelian2",
            "heisenberg" => "heisenberg3",
            other => other,
        };
        ALL_FAMILIES
            .iter()
            .copied()
            .find(|f| f.name().eq_ignore_ascii_case(alias))
            .ok_or_else(|| CatalogError::UnknownFamily(s.to_string()))
    }

    pub fn dim(self) -> usize {
        match self {
            FamilyId::Abelian1 => 1,
            FamilyId::Abelian2 | FamilyId::Nonabelian2 => 2,
            FamilyId::Diam3Example => 4,
            _ => 3,
        }
    }

    /// Can the algebra itself be built over this field? (The sl2/su2 tensors
    /// exist for every q; only two distinct nonzero eigenvalues need q >= 3.)
    pub fn buildable_over(self, field: &Field) -> Result<(), CatalogError> {
        if self == FamilyId::Case3TwoEigen && field.q() < 3 {
            return Err(CatalogError::UnsupportedField {
                family: self.name(),
                q: field.q(),
                reason: "needs two distinct nonzero eigenvalues".into(),
            });
        }
        Ok(())
    }

    /// Do the family's closed-form predictions apply over this field?
    /// (sl2 and su2 results assume odd q.) Sweeps only visit supported cells.
    pub fn supported_over(self, field: &Field) -> Result<(), CatalogError> {
        self.buildable_over(field)?;
        if matches!(self, FamilyId::Sl2 | FamilyId::Su2) && field.q().is_multiple_of(2) {
            return Err(CatalogError::UnsupportedField {
                family: self.name(),
                q: field.q(),
                reason: "classification assumes odd q".into(),
            });
        }
        Ok(())
    }
}

/// A built catalog algebra: the Lie algebra plus named marker subspaces.
#[derive(Debug, Clone)]
pub struct CatalogAlgebra {
    pub id: FamilyId,
    pub algebra: LieAlgebra,
    pub markers: BTreeMap<&'static str, Subspace>,
}

fn expected_derived_dim(id: FamilyId, q: u64) -> usize {
    match id {
        FamilyId::Abelian1 | FamilyId::Abelian2 | FamilyId::Abelian3 => 0,
        FamilyId::Nonabelian2 | FamilyId::Heisenberg3 | FamilyId::Solvable2B => 1,
        FamilyId::Case3Irreducible
        | FamilyId::Case3TwoEigen
        | FamilyId::Case3Jordan
        | FamilyId::Case3Scalar
        | FamilyId::Diam3Example => 2,
        // Over even q the sl2 table degenerates (2x = 2y = 0 leaves only
        // [x,y] = h), so the derived algebra collapses to the line <h>.
        FamilyId::Sl2 => {
            if q % 2 == 1 {
                3
            } else {
                1
            }
        }
        FamilyId::Su2 => 3,
    }
}

fn quadratic_has_root(field: &Field, c0: &FieldElement, c1: &FieldElement) -> bool {
    field.elements().any(|r| {
        let val = field.add(&field.add(&field.mul(&r, &r), &field.mul(c1, &r)), c0);
        field.is_zero(&val)
    })
}

/// First monic quadratic t^2 + c1*t + c0 with no root in F_q, by the pair
/// index c0 + c1*q. Its companion action u1 -> u2 -> -c0*u1 - c1*u2 is the
/// default irreducible 2x2 operator (a degree-2 polynomial is irreducible
/// exactly when it is rootless).
fn first_irreducible_quadratic(field: &Field) -> (FieldElement, FieldElement) {
    for idx in 0..field.q() * field.q() {
        let c0 = field.element(idx % field.q());
        let c1 = field.element(idx / field.q());
        if !quadratic_has_root(field, &c0, &c1) {
            return (c0, c1);
        }
    }
    unreachable!("irreducible quadratics exist over every finite field")
}

/// A 2x2 matrix over the field, row-major: row i holds the coordinates of
/// the image of the i-th basis vector.
type Mat2 = [[FieldElement; 2]; 2];

fn parse_mat2(field: &Field, s: &str) -> Result<Mat2, CatalogError> {
    let rows: Vec<&str> = s.split(';').collect();
    if rows.len() != 2 {
        return Err(CatalogError::BadParam(format!(
            "matrix must be `a,b;c,d`, got {s:?}"
        )));
    }
    let mut out: Vec<[FieldElement; 2]> = Vec::new();
    for r in rows {
        let cells: Vec<&str> = r.split(',').collect();
        if cells.len() != 2 {
            return Err(CatalogError::BadParam(format!(
                "matrix row must have two entries, got {r:?}"
            )));
        }
        let a = field
            .parse_element(cells[0])
            .map_err(|e| CatalogError::BadParam(e.to_string()))?;
        let b = field
            .parse_element(cells[1])
            .map_err(|e| CatalogError::BadParam(e.to_string()))?;
        out.push([a, b]);
    }
    Ok([out[0].clone(), out[1].clone()])
}

/// Does the operator have an eigenvalue in F_q? Exhaustive determinant scan,
/// valid in every characteristic.
fn has_eigenvalue(field: &Field, m: &Mat2) -> bool {
    field.elements().any(|lambda| {
        let a = field.sub(&m[0][0], &lambda);
        let d = field.sub(&m[1][1], &lambda);
        let det = field.sub(&field.mul(&a, &d), &field.mul(&m[0][1], &m[1][0]));
        field.is_zero(&det)
    })
}

fn eigenvalues(field: &Field, m: &Mat2) -> Vec<FieldElement> {
    field
        .elements()
        .filter(|lambda| {
            let a = field.sub(&m[0][0], lambda);
            let d = field.sub(&m[1][1], lambda);
            let det = field.sub(&field.mul(&a, &d), &field.mul(&m[0][1], &m[1][0]));
            field.is_zero(&det)
        })
        .collect()
}

fn format_mat2(field: &Field, m: &Mat2) -> String {
    format!(
        "{},{};{},{}",
        field.format_element(&m[0][0]),
        field.format_element(&m[0][1]),
        field.format_element(&m[1][0]),
        field.format_element(&m[1][1])
    )
}

/// Classify a raw 2x2 action matrix into its rational-canonical-form bucket
/// and return the builder family plus normalized parameters. Scaling the
/// acting generator divides the matrix by a nonzero constant, so two
/// distinct eigenvalues normalize to (1, mu) and a repeated Jordan
/// eigenvalue normalizes to 1; a scalar matrix normalizes to the identity.
///
/// A singular matrix is rejected: the derived subalgebra it generates is a
/// proper subspace of the plane it acts on, which lands in a different
/// family entirely.
pub fn detect_case3(
    field: &Field,
    matrix: &str,
) -> Result<(FamilyId, BTreeMap<String, String>), CatalogError> {
    let m = parse_mat2(field, matrix)?;
    let det = field.sub(
        &field.mul(&m[0][0], &m[1][1]),
        &field.mul(&m[0][1], &m[1][0]),
    );
    if field.is_zero(&det) {
        return Err(CatalogError::BadParam(
            "matrix is singular, so the derived subalgebra is smaller than the plane it acts on"
                .into(),
        ));
    }
    let mut params = BTreeMap::new();
    let roots = eigenvalues(field, &m);
    match roots.len() {
        0 => {
            params.insert("matrix".to_string(), format_mat2(field, &m));
            Ok((FamilyId::Case3Irreducible, params))
        }
        2 => {
            // Element order fixes which eigenvalue scales to 1.
            let mu = field.div(&roots[1], &roots[0]).expect("nonsingular");
            params.insert("mu".to_string(), field.format_element(&mu));
            Ok((FamilyId::Case3TwoEigen, params))
        }
        1 => {
            let lambda = &roots[0];
            let scalar = m[0][0] == *lambda
                && m[1][1] == *lambda
                && field.is_zero(&m[0][1])
                && field.is_zero(&m[1][0]);
            if scalar {
                Ok((FamilyId::Case3Scalar, params))
            } else {
                params.insert("lambda".to_string(), "1".to_string());
                Ok((FamilyId::Case3Jordan, params))
            }
        }
        _ => unreachable!("a quadratic has at most two roots in a field"),
    }
}

/// Resolve a family name plus user parameters into a concrete builder
/// invocation. The umbrella name `case3` takes a raw `matrix` parameter and
/// dispatches to the subcase detected from its eigenvalues; every other
/// name passes through unchanged.
pub fn resolve_family(
    name: &str,
    field: &Field,
    params: &BTreeMap<String, String>,
) -> Result<(FamilyId, BTreeMap<String, String>), CatalogError> {
    if name.trim() == "case3" {
        for key in params.keys() {
            if key != "matrix" {
                return Err(CatalogError::BadParam(format!(
                    "case3 does not take parameter {key:?} (allowed: matrix)"
                )));
            }
        }
        let matrix = params.get("matrix").ok_or_else(|| {
            CatalogError::BadParam("case3 requires a matrix parameter `a,b;c,d`".into())
        })?;
        return detect_case3(field, matrix);
    }
    let id = FamilyId::parse(name)?;
    Ok((id, params.clone()))
}

fn get_param<'a>(
    params: &'a BTreeMap<String, String>,
    allowed: &[&str],
    family: FamilyId,
) -> Result<Option<(&'a str, &'a str)>, CatalogError> {
    for key in params.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(CatalogError::BadParam(format!(
                "family {} does not take parameter {key:?} (allowed: {})",
                family.name(),
                if allowed.is_empty() {
                    "none".to_string()
                } else {
                    allowed.join(", ")
                }
            )));
        }
    }
    Ok(params.iter().next().map(|(k, v)| (k.as_str(), v.as_str())))
}

/// Build a catalog algebra over the field, with optional family parameters
/// (`mu`, `lambda`, `matrix`).
pub fn build(
    id: FamilyId,
    field: &Field,
    params: &BTreeMap<String, String>,
) -> Result<CatalogAlgebra, CatalogError> {
    id.buildable_over(field)?;
    let f = field.clone();
    let name = format!("{}(F_{})", id.name(), field.designation());
    let coords = |cs: &[i64]| -> Vector { cs.iter().map(|&c| f.from_signed(c)).collect() };
    let line = |i: usize, n: usize| -> Subspace {
        let mut v = vec![f.zero(); n];
        v[i] = f.one();
        Subspace::line(&f, &v)
    };
    let plane = |i: usize, j: usize, n: usize| -> Subspace {
        let mut u = vec![f.zero(); n];
        u[i] = f.one();
        let mut v = vec![f.zero(); n];
        v[j] = f.one();
        Subspace::span(&f, n, &[u, v])
    };

    let mut markers: BTreeMap<&'static str, Subspace> = BTreeMap::new();
    let (dim, pairs): (usize, Vec<(usize, usize, Vector)>) = match id {
        FamilyId::Abelian1 => {
            get_param(params, &[], id)?;
            (1, vec![])
        }
        FamilyId::Abelian2 => {
            get_param(params, &[], id)?;
            (2, vec![])
        }
        FamilyId::Abelian3 => {
            get_param(params, &[], id)?;
            (3, vec![])
        }
        FamilyId::Nonabelian2 => {
            // Basis (x, y): [x, y] = y.
            get_param(params, &[], id)?;
            (2, vec![(0, 1, coords(&[0, 1]))])
        }
        FamilyId::Heisenberg3 => {
            // Basis (e, f, h): [e, f] = h; h is central.
            get_param(params, &[], id)?;
            markers.insert("Z", line(2, 3));
            (3, vec![(0, 1, coords(&[0, 0, 1]))])
        }
        FamilyId::Solvable2B => {
            // Basis (x, y, z): [x, y] = y, z central.
            get_param(params, &[], id)?;
            markers.insert("V", plane(1, 2, 3));
            markers.insert("derived_line", line(1, 3));
            markers.insert("central_line", line(2, 3));
            (3, vec![(0, 1, coords(&[0, 1, 0]))])
        }
        FamilyId::Case3Irreducible => {
            // Basis (x, v1, v2): ad x acts on V = <v1, v2> without
            // eigenvalues in F_q.
            let m = match get_param(params, &["matrix"], id)? {
                Some((_, v)) => {
                    let m = parse_mat2(&f, v)?;
                    if has_eigenvalue(&f, &m) {
                        return Err(CatalogError::BadParam(
                            "matrix has an eigenvalue in F_q; its action is not irreducible".into(),
                        ));
                    }
                    m
                }
                None => {
                    let (c0, c1) = first_irreducible_quadratic(&f);
                    // Companion: v1 -> v2, v2 -> -c0 v1 - c1 v2.
                    [[f.zero(), f.one()], [f.neg(&c0), f.neg(&c1)]]
                }
            };
            markers.insert("V", plane(1, 2, 3));
            (
                3,
                vec![
                    (0, 1, vec![f.zero(), m[0][0].clone(), m[0][1].clone()]),
                    (0, 2, vec![f.zero(), m[1][0].clone(), m[1][1].clone()]),
                ],
            )
        }
        FamilyId::Case3TwoEigen => {
            // Basis (x, v1, v2): [x, v1] = v1, [x, v2] = mu v2, mu not 0 or 1.
            let mu = match get_param(params, &["mu"], id)? {
                Some((_, v)) => f
                    .parse_element(v)
                    .map_err(|e| CatalogError::BadParam(e.to_string()))?,
                None => f.element(2), // first element that is neither 0 nor 1
            };
            if f.is_zero(&mu) || f.is_one(&mu) {
                return Err(CatalogError::BadParam("mu must differ from 0 and 1".into()));
            }
            markers.insert("V", plane(1, 2, 3));
            markers.insert("eigenline1", line(1, 3));
            markers.insert("eigenline2", line(2, 3));
            (
                3,
                vec![
                    (0, 1, coords(&[0, 1, 0])),
                    (0, 2, vec![f.zero(), f.zero(), mu]),
                ],
            )
        }
        FamilyId::Case3Jordan => {
            // Basis (x, v1, v2): [x, v1] = lambda v1, [x, v2] = v1 + lambda v2.
            let lambda = match get_param(params, &["lambda"], id)? {
                Some((_, v)) => f
                    .parse_element(v)
                    .map_err(|e| CatalogError::BadParam(e.to_string()))?,
                None => f.one(),
            };
            if f.is_zero(&lambda) {
                return Err(CatalogError::BadParam("lambda must be nonzero".into()));
            }
            markers.insert("V", plane(1, 2, 3));
            markers.insert("eigenline", line(1, 3));
            (
                3,
                vec![
                    (0, 1, vec![f.zero(), lambda.clone(), f.zero()]),
                    (0, 2, vec![f.zero(), f.one(), lambda]),
                ],
            )
        }
        FamilyId::Case3Scalar => {
            // Basis (x, v1, v2): ad x is the identity on V.
            get_param(params, &[], id)?;
            markers.insert("V", plane(1, 2, 3));
            (
                3,
                vec![(0, 1, coords(&[0, 1, 0])), (0, 2, coords(&[0, 0, 1]))],
            )
        }
        FamilyId::Sl2 => {
            // Basis (x, y, h): [x,y] = h, [h,x] = 2x, [h,y] = -2y.
            get_param(params, &[], id)?;
            (
                3,
                vec![
                    (0, 1, coords(&[0, 0, 1])),
                    (0, 2, coords(&[-2, 0, 0])),
                    (1, 2, coords(&[0, 2, 0])),
                ],
            )
        }
        FamilyId::Su2 => {
            // Basis (e1, e2, e3): cyclic cross-product brackets.
            get_param(params, &[], id)?;
            (
                3,
                vec![
                    (0, 1, coords(&[0, 0, 1])),
                    (1, 2, coords(&[1, 0, 0])),
                    (0, 2, coords(&[0, -1, 0])),
                ],
            )
        }
        FamilyId::Diam3Example => {
            // Basis (a, b1, b2, x): B = <b1, b2> abelian, [a, -] = 0,
            // ad x acts irreducibly on B.
            let m = match get_param(params, &["matrix"], id)? {
                Some((_, v)) => {
                    let m = parse_mat2(&f, v)?;
                    if has_eigenvalue(&f, &m) {
                        return Err(CatalogError::BadParam(
                            "matrix has an eigenvalue in F_q; its action is not irreducible".into(),
                        ));
                    }
                    m
                }
                None => {
                    let (c0, c1) = first_irreducible_quadratic(&f);
                    [[f.zero(), f.one()], [f.neg(&c0), f.neg(&c1)]]
                }
            };
            markers.insert("line_a", line(0, 4));
            markers.insert("plane_b", plane(1, 2, 4));
            // [b_i, x] = -[x, b_i].
            (
                4,
                vec![
                    (
                        1,
                        3,
                        vec![f.zero(), f.neg(&m[0][0]), f.neg(&m[0][1]), f.zero()],
                    ),
                    (
                        2,
                        3,
                        vec![f.zero(), f.neg(&m[1][0]), f.neg(&m[1][1]), f.zero()],
                    ),
                ],
            )
        }
    };

    let algebra = LieAlgebra::build(f, dim, name, &pairs)?;
    assert_eq!(
        algebra.derived_dim(),
        expected_derived_dim(id, field.q()),
        "derived dimension of {} over F_{} is off",
        id.name(),
        field.designation()
    );
    Ok(CatalogAlgebra {
        id,
        algebra,
        markers,
    })
}

/// Build with no parameters (the deterministic defaults).
pub fn build_default(id: FamilyId, field: &Field) -> Result<CatalogAlgebra, CatalogError> {
    build(id, field, &BTreeMap::new())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u64) -> Field {
        match q {
            4 => Field::new(2, 2, None).unwrap(),
            9 => Field::new(3, 2, None).unwrap(),
            _ => Field::new(q, 1, None).unwrap(),
        }
    }

    #[test]
    fn every_family_builds_and_has_expected_derived_dim() {
        for id in ALL_FAMILIES {
            for q in [2u64, 3, 4, 5] {
                let field = f(q);
                if id.buildable_over(&field).is_err() {
                    continue;
                }
                let cat = build_default(id, &field).unwrap();
                assert_eq!(cat.algebra.dim(), id.dim());
                assert!(cat.algebra.validate().ok());
                assert_eq!(
                    cat.algebra.derived_dim(),
                    expected_derived_dim(id, q),
                    "{} over F_{q}",
                    id.name()
                );
            }
        }
    }

    #[test]
    fn names_round_trip_and_aliases() {
        for id in ALL_FAMILIES {
            assert_eq!(FamilyId::parse(id.name()).unwrap(), id);
        }
        assert_eq!(FamilyId::parse("dim1").unwrap(), FamilyId::Abelian1);
        assert_eq!(
            FamilyId::parse("heisenberg").unwrap(),
            FamilyId::Heisenberg3
        );
        assert!(FamilyId::parse("so8").is_err());
    }

    #[test]
    fn two_eigen_validity() {
        let f2 = f(2);
        assert!(matches!(
            build_default(FamilyId::Case3TwoEigen, &f2),
            Err(CatalogError::UnsupportedField { .. })
        ));
        let f3 = f(3);
        let cat = build_default(FamilyId::Case3TwoEigen, &f3).unwrap();
        // Default mu = element(2) = 2 over F_3.
        assert_eq!(
            cat.algebra.table()[0][2],
            vec![f3.zero(), f3.zero(), f3.from_int(2)]
        );
        let mut params = BTreeMap::new();
        params.insert("mu".to_string(), "1".to_string());
        assert!(matches!(
            build(FamilyId::Case3TwoEigen, &f3, &params),
            Err(CatalogError::BadParam(_))
        ));
        // Extension-field parameter.
        let f4 = f(4);
        let mut params = BTreeMap::new();
        params.insert("mu".to_string(), "t".to_string());
        assert!(build(FamilyId::Case3TwoEigen, &f4, &params).is_ok());
    }

    #[test]
    fn jordan_rejects_zero_lambda() {
        let f3 = f(3);
        let mut params = BTreeMap::new();
        params.insert("lambda".to_string(), "0".to_string());
        assert!(matches!(
            build(FamilyId::Case3Jordan, &f3, &params),
            Err(CatalogError::BadParam(_))
        ));
        params.insert("lambda".to_string(), "2".to_string());
        assert!(build(FamilyId::Case3Jordan, &f3, &params).is_ok());
    }

    #[test]
    fn irreducible_matrix_param() {
        let f3 = f(3);
        let mut params = BTreeMap::new();
        params.insert("matrix".to_string(), "1,0;0,1".to_string());
        assert!(matches!(
            build(FamilyId::Case3Irreducible, &f3, &params),
            Err(CatalogError::BadParam(_))
        ));
        // Rotation-like matrix with char poly t^2 + 1, irreducible mod 3.
        params.insert("matrix".to_string(), "0,1;-1,0".to_string());
        let cat = build(FamilyId::Case3Irreducible, &f3, &params).unwrap();
        assert_eq!(cat.algebra.derived_dim(), 2);
    }

    #[test]
    fn default_irreducible_action_has_no_eigenvalue() {
        for q in [2u64, 3, 4, 5] {
            let field = f(q);
            let (c0, c1) = first_irreducible_quadratic(&field);
            let m: Mat2 = [
                [field.zero(), field.one()],
                [field.neg(&c0), field.neg(&c1)],
            ];
            assert!(!has_eigenvalue(&field, &m), "q={q}");
            // Minimality: every earlier pair in index order has a root.
            let chosen = field.index(&c0) + field.q() * field.index(&c1);
            for idx in 0..chosen {
                let e0 = field.element(idx % field.q());
                let e1 = field.element(idx / field.q());
                assert!(quadratic_has_root(&field, &e0, &e1), "q={q} idx={idx}");
            }
        }
    }

    #[test]
    fn unknown_param_rejected() {
        let f3 = f(3);
        let mut params = BTreeMap::new();
        params.insert("mu".to_string(), "2".to_string());
        assert!(matches!(
            build(FamilyId::Sl2, &f3, &params),
            Err(CatalogError::BadParam(_))
        ));
    }

    #[test]
    fn sl2_even_q_builds_but_is_unsupported() {
        let f2 = f(2);
        assert!(FamilyId::Sl2.buildable_over(&f2).is_ok());
        assert!(FamilyId::Sl2.supported_over(&f2).is_err());
        let cat = build_default(FamilyId::Sl2, &f2).unwrap();
        assert_eq!(cat.algebra.derived_dim(), 1);
        assert!(FamilyId::Su2.supported_over(&f2).is_err());
        assert!(FamilyId::Heisenberg3.supported_over(&f2).is_ok());
    }

    #[test]
    fn markers_present() {
        let f3 = f(3);
        let h = build_default(FamilyId::Heisenberg3, &f3).unwrap();
        assert!(h.markers.contains_key("Z"));
        let s = build_default(FamilyId::Solvable2B, &f3).unwrap();
        for k in ["V", "derived_line", "central_line"] {
            assert!(s.markers.contains_key(k));
        }
        let d = build_default(FamilyId::Diam3Example, &f3).unwrap();
        let b = &d.markers["plane_b"];
        assert!(d.algebra.is_subalgebra(b));
        assert_eq!(b.dim(), 2);
        // The derived algebra is exactly B.
        assert_eq!(&d.algebra.derived_subalgebra(), b);
        let a = &d.markers["line_a"];
        // <a> + B is an abelian subalgebra, so the pair is not adjacent.
        let join = d.algebra.generated_by(a, b);
        assert_eq!(join.dim(), 3);
    }

    #[test]
    fn matrix_detection_normalizes_each_subcase() {
        let f5 = f(5);
        // Distinct eigenvalues 2 and 3: scaling the generator by 2^{-1}
        // turns the spectrum into (1, 3/2) = (1, 4).
        let (id, p) = detect_case3(&f5, "2,0;0,3").unwrap();
        assert_eq!(id, FamilyId::Case3TwoEigen);
        assert_eq!(p["mu"], "4");
        // Non-diagonal matrix with split spectrum {1, 4}: mu = 4.
        let (id, p) = detect_case3(&f5, "0,1;4,0").unwrap();
        assert_eq!(id, FamilyId::Case3TwoEigen);
        assert_eq!(p["mu"], "4");
        // Scalar action.
        let (id, p) = detect_case3(&f5, "3,0;0,3").unwrap();
        assert_eq!(id, FamilyId::Case3Scalar);
        assert!(p.is_empty());
        // Double eigenvalue 3 but not scalar: a Jordan block, normalized to 1.
        let (id, p) = detect_case3(&f5, "3,1;0,3").unwrap();
        assert_eq!(id, FamilyId::Case3Jordan);
        assert_eq!(p["lambda"], "1");
        // No eigenvalues (char poly t^2 - 2, and 2 is not a square mod 5):
        // irreducible, matrix kept but canonically reprinted.
        let (id, p) = detect_case3(&f5, "0,1;2,-0").unwrap();
        assert_eq!(id, FamilyId::Case3Irreducible);
        assert_eq!(p["matrix"], "0,1;2,0");
        let cat = build(id, &f5, &p).unwrap();
        assert_eq!(cat.algebra.derived_dim(), 2);
        // Singular matrices are not in this case at all.
        assert!(matches!(
            detect_case3(&f5, "1,0;0,0"),
            Err(CatalogError::BadParam(_))
        ));
        // Detected parameters always build.
        for m in ["2,0;0,3", "3,1;0,3", "3,0;0,3", "1,2;2,1", "0,1;2,0"] {
            let (id, p) = detect_case3(&f5, m).unwrap();
            let cat = build(id, &f5, &p).unwrap();
            assert_eq!(cat.algebra.derived_dim(), 2, "matrix {m}");
        }
    }

    #[test]
    fn detection_over_extension_field() {
        let f4 = f(4);
        // In characteristic 2, "1,1;1,0" has char poly t^2 + t + 1, whose
        // roots are exactly the two elements outside the prime subfield.
        let (id, p) = detect_case3(&f4, "1,1;1,0").unwrap();
        assert_eq!(id, FamilyId::Case3TwoEigen);
        // Roots t and t+1 in element order; mu = (1+t)/t = t.
        assert_eq!(p["mu"], "t");
        assert!(build(id, &f4, &p).is_ok());
    }

    #[test]
    fn umbrella_name_resolves_and_others_pass_through() {
        let f3 = f(3);
        let mut params = BTreeMap::new();
        params.insert("matrix".to_string(), "0,1;-1,0".to_string());
        let (id, p) = resolve_family("case3", &f3, &params).unwrap();
        assert_eq!(id, FamilyId::Case3Irreducible);
        assert_eq!(p["matrix"], "0,1;2,0");
        // Missing matrix is an error, as is any stray parameter.
        assert!(matches!(
            resolve_family("case3", &f3, &BTreeMap::new()),
            Err(CatalogError::BadParam(_))
        ));
        params.insert("mu".to_string(), "2".to_string());
        assert!(matches!(
            resolve_family("case3", &f3, &params),
            Err(CatalogError::BadParam(_))
        ));
        // Everything else resolves by name with parameters untouched.
        let mut mu = BTreeMap::new();
        mu.insert("mu".to_string(), "2".to_string());
        let (id, p) = resolve_family("case3_two_eigen", &f3, &mu).unwrap();
        assert_eq!(id, FamilyId::Case3TwoEigen);
        assert_eq!(p, mu);
        assert!(matches!(
            resolve_family("case9", &f3, &BTreeMap::new()),
            Err(CatalogError::UnknownFamily(_))
        ));
    }
}
