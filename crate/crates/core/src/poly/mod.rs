//! Exact arithmetic: rationals, binary and ternary forms, symmetric 3x3
//! matrices of binary forms, univariate polynomials with resultants, and
//! real or imaginary quadratic fields.
//!
//! Text format for forms is a sum of terms `c * S^a T^b` or `c * X^i Y^j Z^k`
//! in graded lexicographic order (`S > T`, `X > Y > Z`). Coefficients are exact
//! `num` or `num/den` strings; negative terms after the first are written with
//! ` - `. Variables with exponent zero are omitted and the zero form prints as `0`.

mod binform;
mod linalg;
mod quadext;
mod symmat;
mod ternform;
mod unipoly;

pub use binform::BinForm;
pub use linalg::{bareiss_det, rational_rows_to_integer};
pub use quadext::QuadExtNum;
pub use symmat::{det3, SymMat3};
pub use ternform::{Monomial3, TernForm};
pub use unipoly::{resultant_uni, UniPoly};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};

pub type BigRat = BigRational;

pub fn rat(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_rat(s: &str) -> Result<BigRat> {
    s.trim()
        .parse::<BigRat>()
        .map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
}

pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a BigRat>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Exact square root of a nonnegative rational, if it is a square.
pub fn rational_sqrt(x: &BigRat) -> Option<BigRat> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| BigRat::new(n, d))
}

pub(crate) fn write_term(
    out: &mut String,
    first: bool,
    coeff: &BigRat,
    vars: &[(&str, u32)],
) {
    let monomial: Vec<String> = vars
        .iter()
        .filter(|(_, e)| *e > 0)
        .map(|(v, e)| format!("{v}^{e}"))
        .collect();
    let magnitude = coeff.abs();
    if first {
        if coeff.is_negative() {
            out.push('-');
        }
    } else if coeff.is_negative() {
        out.push_str(" - ");
    } else {
        out.push_str(" + ");
    }
    out.push_str(&magnitude.to_string());
    if !monomial.is_empty() {
        out.push_str(" * ");
        out.push_str(&monomial.join(" "));
    }
}

/// Splits `text` into signed terms and parses each into a coefficient and
/// exponents for `vars`.
pub(crate) fn parse_terms(text: &str, vars: &[&str]) -> Result<Vec<(BigRat, Vec<u32>)>> {
    let text = text.trim();
    if text == "0" {
        return Ok(Vec::new());
    }
    let mut terms = Vec::new();
    let mut sign_negative = false;
    let mut rest = text;
    if let Some(stripped) = rest.strip_prefix('-') {
        sign_negative = true;
        rest = stripped;
    }
    loop {
        let (term, next) = match (rest.find(" + "), rest.find(" - ")) {
            (None, None) => (rest, None),
            (Some(p), None) => (&rest[..p], Some((false, &rest[p + 3..]))),
            (None, Some(m)) => (&rest[..m], Some((true, &rest[m + 3..]))),
            (Some(p), Some(m)) if p < m => (&rest[..p], Some((false, &rest[p + 3..]))),
            (Some(_), Some(m)) => (&rest[..m], Some((true, &rest[m + 3..]))),
        };
        let (coeff_text, mono_text) = match term.split_once('*') {
            Some((c, m)) => (c.trim(), m.trim()),
            None => (term.trim(), ""),
        };
        let mut coeff = parse_rat(coeff_text)?;
        if sign_negative {
            coeff = -coeff;
        }
        let mut exps = vec![0u32; vars.len()];
        for factor in mono_text.split_whitespace() {
            let (v, e) = factor.split_once('^').unwrap_or((factor, "1"));
            let idx = vars
                .iter()
                .position(|x| *x == v)
                .ok_or_else(|| Error::Parse(format!("unknown variable {v:?}")))?;
            exps[idx] += e
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?;
        }
        terms.push((coeff, exps));
        match next {
            Some((neg, tail)) => {
                sign_negative = neg;
                rest = tail;
            }
            None => break,
        }
    }
    Ok(terms)
}
