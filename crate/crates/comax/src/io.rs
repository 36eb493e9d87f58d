//! Plain-text structure-constants format.
//!
//! ```text
//! # any comment
//! field 3
//! dim 3
//! bracket 1 2 : 0 0 1
//! ```
//!
//! `field` takes `p` or `p^k` (the modulus of an extension field is the
//! deterministic auto-selected one). `bracket i j : c_1 .. c_n` gives the
//! coordinates of [e_i, e_j] for one pair i < j (1-based); missing pairs are
//! zero and the antisymmetric completion is implied. Coefficients are
//! integers over a prime field, or polynomials in `t` (like `1+2*t`) over an
//! extension field. The Lie axioms are validated on load.

use crate::field::Field;
use crate::lie::{LieAlgebra, LieError};
use crate::linalg::Vector;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Lie(#[from] LieError),
}

fn perr(line: usize, message: impl Into<String>) -> LoadError {
    LoadError::Parse {
        line,
        message: message.into(),
    }
}

/// Parse the text format into a validated Lie algebra.
pub fn parse_algebra(text: &str) -> Result<LieAlgebra, LoadError> {
    let mut field: Option<Field> = None;
    let mut dim: Option<usize> = None;
    let mut pairs: Vec<(usize, usize, Vector)> = Vec::new();
    let mut seen: std::collections::BTreeSet<(usize, usize)> = Default::default();

    for (idx, raw) in text.lines().enumerate() {
        let lno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match keyword {
            "field" => {
                if field.is_some() {
                    return Err(perr(lno, "duplicate field header"));
                }
                field = Some(Field::parse(rest.trim()).map_err(|e| perr(lno, e.to_string()))?);
            }
            "dim" => {
                if dim.is_some() {
                    return Err(perr(lno, "duplicate dim header"));
                }
                let d: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| perr(lno, format!("bad dimension {:?}", rest.trim())))?;
                if d < 1 {
                    return Err(perr(lno, "dimension must be at least 1"));
                }
                dim = Some(d);
            }
            "bracket" => {
                let f = field
                    .as_ref()
                    .ok_or_else(|| perr(lno, "bracket before field header"))?;
                let n = dim.ok_or_else(|| perr(lno, "bracket before dim header"))?;
                let (idx_part, coeff_part) = rest
                    .split_once(':')
                    .ok_or_else(|| perr(lno, "expected `bracket i j : c_1 .. c_n`"))?;
                let ids: Vec<&str> = idx_part.split_whitespace().collect();
                if ids.len() != 2 {
                    return Err(perr(lno, "expected exactly two basis indices"));
                }
                let i: usize = ids[0]
                    .parse()
                    .map_err(|_| perr(lno, format!("bad index {:?}", ids[0])))?;
                let j: usize = ids[1]
                    .parse()
                    .map_err(|_| perr(lno, format!("bad index {:?}", ids[1])))?;
                if !(1 <= i && i < j && j <= n) {
                    return Err(perr(lno, format!("indices must satisfy 1 <= i < j <= {n}")));
                }
                if !seen.insert((i, j)) {
                    return Err(perr(lno, format!("duplicate pair ({i}, {j})")));
                }
                let coeffs: Vec<&str> = coeff_part.split_whitespace().collect();
                if coeffs.len() != n {
                    return Err(perr(
                        lno,
                        format!("expected {n} coefficients, found {}", coeffs.len()),
                    ));
                }
                let v: Vector = coeffs
                    .iter()
                    .map(|s| f.parse_element(s))
                    .collect::<Result<_, _>>()
                    .map_err(|e| perr(lno, e.to_string()))?;
                pairs.push((i - 1, j - 1, v));
            }
            other => {
                return Err(perr(lno, format!("unknown directive {other:?}")));
            }
        }
    }

    let field = field.ok_or_else(|| perr(0, "missing field header"))?;
    let dim = dim.ok_or_else(|| perr(0, "missing dim header"))?;
    Ok(LieAlgebra::build(field, dim, "loaded", &pairs)?)
}

/// Serialize in the same format (nonzero pairs with i < j only).
pub fn format_algebra(l: &LieAlgebra) -> String {
    let f = l.field();
    let mut out = String::new();
    out.push_str(&format!("# {}\n", l.name()));
    out.push_str(&format!("field {}\n", f.designation()));
    out.push_str(&format!("dim {}\n", l.dim()));
    for i in 0..l.dim() {
        for j in (i + 1)..l.dim() {
            let v = &l.table()[i][j];
            if v.iter().all(|c| f.is_zero(c)) {
                continue;
            }
            let coeffs: Vec<String> = v.iter().map(|c| f.format_element(c)).collect();
            out.push_str(&format!(
                "bracket {} {} : {}\n",
                i + 1,
                j + 1,
                coeffs.join(" ")
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEISENBERG_F2: &str = "\
# Heisenberg algebra over F_2
field 2
dim 3
bracket 1 2 : 0 0 1
";

    #[test]
    fn parses_heisenberg() {
        let l = parse_algebra(HEISENBERG_F2).unwrap();
        assert_eq!(l.dim(), 3);
        assert_eq!(l.field().q(), 2);
        assert_eq!(l.derived_dim(), 1);
    }

    #[test]
    fn round_trip() {
        let l = parse_algebra(HEISENBERG_F2).unwrap();
        let text = format_algebra(&l);
        let l2 = parse_algebra(&text).unwrap();
        assert_eq!(l.table(), l2.table());

        // Extension-field round trip with polynomial coefficients.
        let src = "field 2^2\ndim 2\nbracket 1 2 : 0 1+t\n";
        let l3 = parse_algebra(src).unwrap();
        let text3 = format_algebra(&l3);
        let l4 = parse_algebra(&text3).unwrap();
        assert_eq!(l3.table(), l4.table());
    }

    #[test]
    fn error_line_numbers() {
        let bad_header = "field 6\ndim 2\n";
        match parse_algebra(bad_header) {
            Err(LoadError::Parse { line: 1, .. }) => {}
            other => panic!("expected parse error on line 1, got {other:?}"),
        }

        let bad_index = "field 3\ndim 3\nbracket 2 1 : 0 0 1\n";
        match parse_algebra(bad_index) {
            Err(LoadError::Parse { line: 3, .. }) => {}
            other => panic!("expected parse error on line 3, got {other:?}"),
        }

        let dup = "field 3\ndim 3\nbracket 1 2 : 0 0 1\nbracket 1 2 : 0 0 1\n";
        match parse_algebra(dup) {
            Err(LoadError::Parse { line: 4, .. }) => {}
            other => panic!("expected duplicate-pair error on line 4, got {other:?}"),
        }

        let arity = "field 3\ndim 3\nbracket 1 2 : 0 0\n";
        match parse_algebra(arity) {
            Err(LoadError::Parse { line: 3, .. }) => {}
            other => panic!("expected arity error on line 3, got {other:?}"),
        }

        let elem = "field 3\ndim 2\nbracket 1 2 : 0 t\n";
        match parse_algebra(elem) {
            Err(LoadError::Parse { line: 3, .. }) => {}
            other => panic!("expected element error on line 3, got {other:?}"),
        }

        let unknown = "field 3\ndim 2\nbrackets 1 2 : 0 0\n";
        assert!(matches!(
            parse_algebra(unknown),
            Err(LoadError::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn axioms_validated_on_load() {
        // [e1,e2] = e3, [e2,e3] = e1, [e1,e3] = -e1 breaks Jacobi.
        let src = "\
field 3
dim 3
bracket 1 2 : 0 0 1
bracket 2 3 : 1 0 0
bracket 1 3 : -1 0 0
";
        match parse_algebra(src) {
            Err(LoadError::Lie(LieError::Invalid(report))) => {
                assert!(!report.ok());
            }
            other => panic!("expected validation failure, got {other:?}"),
        }
    }

    #[test]
    fn missing_headers() {
        assert!(matches!(
            parse_algebra("dim 2\n"),
            Err(LoadError::Parse { line: 0, .. })
        ));
        assert!(matches!(
            parse_algebra("field 3\n"),
            Err(LoadError::Parse { line: 0, .. })
        ));
    }
}
