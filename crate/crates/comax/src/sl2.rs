//! sl2-specific classification, in the standard basis (x, y, h) with
//! [h,x] = 2x, [h,y] = -2y, [x,y] = h, over F_q with q odd.
//!
//! A line spanned by u = a*x + b*y + c*h is classified by the discriminant
//! d(u) = c^2 + ab: ad u is nilpotent iff d = 0, diagonalizable over F_q
//! ("split") iff d is a nonzero square, and irreducible ("nonsplit") iff d is
//! a nonsquare. The Borel (maximal solvable) subalgebras admit the closed
//! parametrization B = <x, h> and B(alpha) = <h + alpha*x, y + alpha^2/4 * x>
//! for alpha in F_q, giving q + 1 planes in total.

use crate::field::{Field, FieldElement};
use crate::linalg::Subspace;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Sl2Error {
    #[error("sl2 line classification requires odd q (got q = {0})")]
    EvenField(u64),
    #[error("expected a line (dimension 1), got dimension {0}")]
    NotALine(usize),
    #[error("expected ambient dimension 3, got {0}")]
    WrongAmbient(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LineKind {
    Nilpotent,
    Split,
    Nonsplit,
}

impl LineKind {
    pub fn label(self) -> &'static str {
        match self {
            LineKind::Nilpotent => "nilpotent",
            LineKind::Split => "split",
            LineKind::Nonsplit => "nonsplit",
        }
    }
}

fn check_line(field: &Field, line: &Subspace) -> Result<(), Sl2Error> {
    if field.q().is_multiple_of(2) {
        return Err(Sl2Error::EvenField(field.q()));
    }
    if line.ambient() != 3 {
        return Err(Sl2Error::WrongAmbient(line.ambient()));
    }
    if line.dim() != 1 {
        return Err(Sl2Error::NotALine(line.dim()));
    }
    Ok(())
}

/// The discriminant c^2 + ab of the canonical generator (a, b, c).
pub fn discriminant(field: &Field, line: &Subspace) -> Result<FieldElement, Sl2Error> {
    check_line(field, line)?;
    let g = &line.rows()[0];
    let (a, b, c) = (&g[0], &g[1], &g[2]);
    Ok(field.add(&field.mul(c, c), &field.mul(a, b)))
}

/// Classify a line of sl2 by its discriminant. The kind is well defined:
/// scaling the generator by s scales the discriminant by s^2, which preserves
/// zero / square / nonsquare.
pub fn classify_line(field: &Field, line: &Subspace) -> Result<LineKind, Sl2Error> {
    let d = discriminant(field, line)?;
    if field.is_zero(&d) {
        return Ok(LineKind::Nilpotent);
    }
    // q odd was already checked, so is_square cannot fail here.
    if field.is_square(&d).expect("odd q") {
        Ok(LineKind::Split)
    } else {
        Ok(LineKind::Nonsplit)
    }
}

/// The q + 1 Borel subalgebras in closed form: <x, h> and, for each alpha,
/// <h + alpha*x, y + alpha^2/4 * x>.
pub fn borels_closed_form(field: &Field) -> Result<Vec<Subspace>, Sl2Error> {
    if field.q().is_multiple_of(2) {
        return Err(Sl2Error::EvenField(field.q()));
    }
    let zero = field.zero();
    let one = field.one();
    let quarter = field
        .inv(&field.from_int(4))
        .expect("4 invertible for odd q");
    let mut out = Vec::with_capacity(field.q() as usize + 1);
    out.push(Subspace::span(
        field,
        3,
        &[
            vec![one.clone(), zero.clone(), zero.clone()],
            vec![zero.clone(), zero.clone(), one.clone()],
        ],
    ));
    for alpha in field.elements() {
        let a2_4 = field.mul(&quarter, &field.mul(&alpha, &alpha));
        out.push(Subspace::span(
            field,
            3,
            &[
                vec![alpha.clone(), zero.clone(), one.clone()],
                vec![a2_4, one.clone(), zero.clone()],
            ],
        ));
    }
    Ok(out)
}

/// How many Borel subalgebras contain the line. Computed two independent
/// ways — the quadratic root-count criterion and exhaustive containment over
/// the closed-form list — and cross-checked before returning.
pub fn borel_membership_count(field: &Field, line: &Subspace) -> Result<usize, Sl2Error> {
    check_line(field, line)?;
    let g = &line.rows()[0];
    let (a, b, c) = (&g[0], &g[1], &g[2]);

    // Closed form: the line lies in B iff b = 0, and in B(alpha) iff
    // a = c*alpha + b*alpha^2/4; the quadratic in alpha has discriminant
    // exactly c^2 + ab.
    let in_b = field.is_zero(b) as usize;
    let quadratic_roots = if field.is_zero(b) {
        if field.is_zero(c) {
            // a != 0 (nonzero generator): the equation a = 0 has no solution.
            0
        } else {
            1
        }
    } else {
        let disc = field.add(&field.mul(c, c), &field.mul(a, b));
        if field.is_zero(&disc) {
            1
        } else if field.is_square(&disc).expect("odd q") {
            2
        } else {
            0
        }
    };
    let closed = in_b + quadratic_roots;

    let exhaustive = borels_closed_form(field)?
        .iter()
        .filter(|borel| borel.contains(field, line))
        .count();
    assert_eq!(
        closed, exhaustive,
        "closed-form and exhaustive Borel membership disagree"
    );
    Ok(closed)
}
