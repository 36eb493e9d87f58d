//! Exact arithmetic in finite fields F_q, q = p^k.
//!
//! A [`Field`] is a context object carrying (p, k, modulus); elements are
//! canonical coefficient vectors of length k over the prime field (polynomial
//! basis 1, t, ..., t^{k-1}, lowest degree first). For k = 1 there is no
//! modulus; for k > 1 the modulus is a monic degree-k polynomial irreducible
//! over F_p, either supplied or auto-selected as the first irreducible in
//! index order (index of a coefficient vector = sum of c_i * p^i).
//!
//! ```
//! use comax::field::Field;
//! let f9 = Field::new(3, 2, None).unwrap();          // modulus auto-selected: t^2 + 1
//! let t = f9.element(3);                             // reps are indexed 0..q, zero first
//! assert_eq!(f9.mul(&t, &t), f9.from_int(2));        // t^2 = -1 = 2
//! ```

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    BadDegree,
    #[error("field order p^k overflows u64")]
    Overflow,
    #[error("modulus given for a prime field (k = 1)")]
    ModulusForPrimeField,
    #[error("bad modulus: {0}")]
    BadModulus(String),
    #[error("modulus {0} is reducible over F_{1}")]
    ReducibleModulus(String, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("squareness is undefined for even q (every element is a square)")]
    EvenOrderSquare,
    #[error("element has {got} coefficients, field expects {want}")]
    ForeignElement { want: usize, got: usize },
    #[error("coefficient {0} out of range for characteristic {1}")]
    CoefficientRange(u64, u64),
    #[error("cannot parse field designation {0:?} (expected \"p\" or \"p^k\")")]
    BadDesignation(String),
    #[error("cannot parse field element {0:?}: {1}")]
    BadElement(String, String),
}

/// An element of a finite field: canonical coefficient vector, length = k,
/// entries in [0, p). Only meaningful relative to the `Field` it came from.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FieldElement {
    rep: Vec<u64>,
}

impl FieldElement {
    pub fn rep(&self) -> &[u64] {
        &self.rep
    }
}

/// A finite field F_q with q = p^k, represented as F_p[t]/(modulus) for k > 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field {
    p: u64,
    k: usize,
    q: u64,
    /// Monic, degree k, lowest-degree-first (length k + 1); `None` iff k = 1.
    modulus: Option<Vec<u64>>,
}

impl Field {
    /// Build F_{p^k}. With `modulus: None` and k > 1, the modulus is the
    /// irreducible monic degree-k polynomial of smallest index.
    pub fn new(p: u64, k: usize, modulus: Option<&[u64]>) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if k < 1 {
            return Err(FieldError::BadDegree);
        }
        let mut q: u64 = 1;
        for _ in 0..k {
            q = q.checked_mul(p).ok_or(FieldError::Overflow)?;
        }
        let modulus = match (k, modulus) {
            (1, None) => None,
            (1, Some(_)) => return Err(FieldError::ModulusForPrimeField),
            (_, Some(m)) => {
                if m.len() != k + 1 {
                    return Err(FieldError::BadModulus(format!(
                        "expected {} coefficients, got {}",
                        k + 1,
                        m.len()
                    )));
                }
                if m[k] != 1 {
                    return Err(FieldError::BadModulus("not monic".into()));
                }
                if let Some(&c) = m.iter().find(|&&c| c >= p) {
                    return Err(FieldError::CoefficientRange(c, p));
                }
                if !poly_is_irreducible(m, p) {
                    return Err(FieldError::ReducibleModulus(format_poly(m), p));
                }
                Some(m.to_vec())
            }
            (_, None) => Some(first_irreducible(p, k)),
        };
        Ok(Field { p, k, q, modulus })
    }

    /// Parse a designation like `"5"` or `"2^2"` and build the field with an
    /// auto-selected modulus.
    pub fn parse(s: &str) -> Result<Field, FieldError> {
        let bad = || FieldError::BadDesignation(s.to_string());
        let (p, k) = match s.split_once('^') {
            None => (s.trim().parse::<u64>().map_err(|_| bad())?, 1),
            Some((a, b)) => (
                a.trim().parse::<u64>().map_err(|_| bad())?,
                b.trim().parse::<usize>().map_err(|_| bad())?,
            ),
        };
        Field::new(p, k, None)
    }

    pub fn designation(&self) -> String {
        if self.k == 1 {
            format!("{}", self.p)
        } else {
            format!("{}^{}", self.p, self.k)
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> Option<&[u64]> {
        self.modulus.as_deref()
    }

    pub fn modulus_string(&self) -> Option<String> {
        self.modulus.as_deref().map(format_poly)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            rep: vec![0; self.k],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// The image of the integer n (constant polynomial n mod p).
    pub fn from_int(&self, n: u64) -> FieldElement {
        let mut rep = vec![0; self.k];
        rep[0] = n % self.p;
        FieldElement { rep }
    }

    /// Signed integer image: -2 maps to p - 2, etc.
    pub fn from_signed(&self, n: i64) -> FieldElement {
        let mut rep = vec![0; self.k];
        rep[0] = n.rem_euclid(self.p as i64) as u64;
        FieldElement { rep }
    }

    /// Element with the given index in [0, q); index = sum of rep[i] * p^i.
    pub fn element(&self, index: u64) -> FieldElement {
        debug_assert!(index < self.q);
        let mut rep = vec![0; self.k];
        let mut n = index;
        for c in rep.iter_mut() {
            *c = n % self.p;
            n /= self.p;
        }
        FieldElement { rep }
    }

    pub fn index(&self, a: &FieldElement) -> u64 {
        self.guard(a);
        a.rep.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    /// All q elements in index order, zero first.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(|i| self.element(i))
    }

    /// Boundary check: does this element structurally belong to this field?
    pub fn check_element(&self, a: &FieldElement) -> Result<(), FieldError> {
        if a.rep.len() != self.k {
            return Err(FieldError::ForeignElement {
                want: self.k,
                got: a.rep.len(),
            });
        }
        if let Some(&c) = a.rep.iter().find(|&&c| c >= self.p) {
            return Err(FieldError::CoefficientRange(c, self.p));
        }
        Ok(())
    }

    fn guard(&self, a: &FieldElement) {
        debug_assert_eq!(a.rep.len(), self.k, "element from a different field");
    }

    pub fn is_zero(&self, a: &FieldElement) -> bool {
        a.rep.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self, a: &FieldElement) -> bool {
        a.rep[0] == 1 && a.rep[1..].iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.guard(a);
        self.guard(b);
        let rep = a
            .rep
            .iter()
            .zip(&b.rep)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        FieldElement { rep }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        self.guard(a);
        let rep = a.rep.iter().map(|&x| (self.p - x) % self.p).collect();
        FieldElement { rep }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.guard(a);
        self.guard(b);
        if self.k == 1 {
            let x = (a.rep[0] as u128 * b.rep[0] as u128) % self.p as u128;
            return FieldElement {
                rep: vec![x as u64],
            };
        }
        let mut prod = poly_mul(&a.rep, &b.rep, self.p);
        poly_reduce(&mut prod, self.modulus.as_ref().unwrap(), self.p);
        prod.resize(self.k, 0);
        FieldElement { rep: prod }
    }

    /// a^e by square-and-multiply; a^0 = 1 for every a (including 0).
    pub fn pow(&self, a: &FieldElement, e: u64) -> FieldElement {
        let mut base = a.clone();
        let mut e = e;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        if self.is_zero(a) {
            return Err(FieldError::DivisionByZero);
        }
        // a^(q-2) is the inverse in the unit group of order q-1.
        Ok(self.pow(a, self.q - 2))
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Euler criterion: a is a square iff a = 0 or a^((q-1)/2) = 1.
    /// Only defined for odd q; for even q every element is a square and the
    /// call is rejected.
    pub fn is_square(&self, a: &FieldElement) -> Result<bool, FieldError> {
        if self.q.is_multiple_of(2) {
            return Err(FieldError::EvenOrderSquare);
        }
        if self.is_zero(a) {
            return Ok(true);
        }
        Ok(self.is_one(&self.pow(a, (self.q - 1) / 2)))
    }

    /// Parse an element: an integer for prime fields, or a polynomial in t
    /// like `1+2*t`, `t^2+1`, `-1+t` for extension fields. Integer
    /// coefficients are reduced mod p; a leading `-` negates a term.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement, FieldError> {
        let err = |m: &str| FieldError::BadElement(s.to_string(), m.to_string());
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(err("empty"));
        }
        let mut rep = vec![0i64; self.k];
        // Split into signed terms on '+' / '-'.
        let mut terms: Vec<(i64, &str)> = Vec::new();
        let mut start = 0;
        let mut sign = 1i64;
        let bytes = text.as_bytes();
        let mut i = 0;
        if bytes[0] == b'-' {
            sign = -1;
            start = 1;
            i = 1;
        } else if bytes[0] == b'+' {
            start = 1;
            i = 1;
        }
        while i <= bytes.len() {
            if i == bytes.len() || bytes[i] == b'+' || bytes[i] == b'-' {
                if i == start {
                    return Err(err("empty term"));
                }
                terms.push((sign, &text[start..i]));
                if i < bytes.len() {
                    sign = if bytes[i] == b'-' { -1 } else { 1 };
                    start = i + 1;
                }
            }
            i += 1;
        }
        for (sign, term) in terms {
            let (coeff, deg) = match term.split_once('*') {
                Some((c, tpart)) => {
                    let c: u64 = c.parse().map_err(|_| err("bad coefficient"))?;
                    (
                        c,
                        parse_t_power(tpart).ok_or_else(|| err("bad power of t"))?,
                    )
                }
                None => {
                    if let Some(d) = parse_t_power(term) {
                        (1, d)
                    } else {
                        let c: u64 = term.parse().map_err(|_| err("bad coefficient"))?;
                        (c, 0)
                    }
                }
            };
            if deg >= self.k {
                return Err(err("degree too large for this field"));
            }
            rep[deg] += sign * (coeff % self.p) as i64;
        }
        let p = self.p as i64;
        let rep = rep.iter().map(|&c| (c.rem_euclid(p)) as u64).collect();
        Ok(FieldElement { rep })
    }

    /// Canonical printing: integers for prime fields, sparse polynomials in t
    /// (lowest degree first) for extension fields; zero prints as `0`.
    pub fn format_element(&self, a: &FieldElement) -> String {
        self.guard(a);
        if self.k == 1 {
            return format!("{}", a.rep[0]);
        }
        let terms: Vec<String> = a
            .rep
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c != 0)
            .map(|(i, &c)| match (c, i) {
                (c, 0) => format!("{c}"),
                (1, 1) => "t".to_string(),
                (1, i) => format!("t^{i}"),
                (c, 1) => format!("{c}*t"),
                (c, i) => format!("{c}*t^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }
}

fn parse_t_power(s: &str) -> Option<usize> {
    if s == "t" {
        return Some(1);
    }
    s.strip_prefix("t^")?.parse().ok()
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Full product of two coefficient vectors over F_p.
fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let c = (out[i + j] as u128 + x as u128 * y as u128) % p as u128;
            out[i + j] = c as u64;
        }
    }
    out
}

/// Reduce in place modulo a monic polynomial (lowest degree first).
fn poly_reduce(v: &mut Vec<u64>, modulus: &[u64], p: u64) {
    let deg_m = modulus.len() - 1;
    while v.len() > deg_m {
        let lead = *v.last().unwrap();
        let shift = v.len() - 1 - deg_m;
        if lead != 0 {
            for (i, &m) in modulus.iter().enumerate() {
                let sub = (lead as u128 * m as u128) % p as u128;
                let idx = shift + i;
                v[idx] = ((v[idx] as u128 + p as u128 * p as u128 - sub) % p as u128) as u64;
            }
        }
        v.pop();
    }
}

/// Remainder of num divided by a monic den, coefficients over F_p.
fn poly_rem(num: &[u64], den: &[u64], p: u64) -> Vec<u64> {
    let mut v = num.to_vec();
    poly_reduce(&mut v, den, p);
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Exhaustive trial division: no monic factor of degree 1..=deg/2.
fn poly_is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        // All monic polynomials of degree d, low coefficients in index order.
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut n = idx;
            for _ in 0..d {
                g.push(n % p);
                n /= p;
            }
            g.push(1);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The monic irreducible degree-k polynomial whose low-coefficient vector has
/// the smallest index (sum of c_i * p^i).
fn first_irreducible(p: u64, k: usize) -> Vec<u64> {
    let count = p.checked_pow(k as u32).expect("desk-scale fields only");
    for idx in 0..count {
        let mut f = Vec::with_capacity(k + 1);
        let mut n = idx;
        for _ in 0..k {
            f.push(n % p);
            n /= p;
        }
        f.push(1);
        if poly_is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials of every degree exist over F_p")
}

/// Print a raw coefficient vector (lowest degree first) as a polynomial in t.
pub fn format_poly(coeffs: &[u64]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|&(_, &c)| c != 0)
        .map(|(i, &c)| match (c, i) {
            (c, 0) => format!("{c}"),
            (1, 1) => "t".to_string(),
            (1, i) => format!("t^{i}"),
            (c, 1) => format!("{c}*t"),
            (c, i) => format!("{c}*t^{i}"),
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}
