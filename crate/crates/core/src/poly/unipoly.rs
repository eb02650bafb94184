use std::ops::{Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{bareiss_det, lcm_of_denominators, BigRat};
use crate::error::{Error, Result};

/// Dense univariate polynomial, `coeffs[k]` multiplies `x^k`. Trailing zeros
/// are trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<BigRat>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        UniPoly::new(
            coeffs
                .iter()
                .map(|&c| BigRat::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigRat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRat) -> BigRat {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRat::zero(), |acc, c| acc * x + c)
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => self.clone(),
            Some(l) => {
                let inv = l.recip();
                UniPoly::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn rem(&self, divisor: &UniPoly) -> Result<UniPoly> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = divisor.coeffs[dd].recip();
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let q = &r[r.len() - 1] * &lead_inv;
            for (k, c) in divisor.coeffs.iter().enumerate() {
                r[shift + k] -= &q * c;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Ok(UniPoly::new(r))
    }

    /// Monic greatest common divisor; zero only when both inputs are zero.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("b is nonzero");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Newton interpolation through `(x_i, y_i)` with distinct `x_i`.
    pub fn interpolate(points: &[(BigRat, BigRat)]) -> UniPoly {
        let n = points.len();
        let mut div: Vec<BigRat> = points.iter().map(|(_, y)| y.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                div[i] = (&div[i] - &div[i - 1]) / (&points[i].0 - &points[i - level].0);
            }
        }
        let mut acc = UniPoly::zero();
        for i in (0..n).rev() {
            // acc = acc * (x - x_i) + div[i]
            let shifted = &acc * &UniPoly::new(vec![-points[i].0.clone(), BigRat::one()]);
            acc = &shifted + &UniPoly::new(vec![div[i].clone()]);
        }
        acc
    }
}

impl std::ops::Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let get = |p: &UniPoly, k: usize| p.coeffs.get(k).cloned().unwrap_or_else(BigRat::zero);
        UniPoly::new((0..n).map(|k| get(self, k) + get(rhs, k)).collect())
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let neg = UniPoly::new(rhs.coeffs.iter().map(|c| -c).collect());
        self + &neg
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![BigRat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

/// Resultant as the determinant of the Sylvester matrix. Rows are cleared of
/// denominators first and the scale is divided back out, so the value is the
/// exact rational resultant.
pub fn resultant_uni(f: &UniPoly, g: &UniPoly) -> Result<BigRat> {
    let (df, dg) = match (f.degree(), g.degree()) {
        (None, None) => return Err(Error::ZeroPolynomials),
        (None, Some(0)) | (Some(0), None) => return Ok(BigRat::one()),
        (None, _) | (_, None) => return Ok(BigRat::zero()),
        (Some(a), Some(b)) => (a, b),
    };
    if df == 0 && dg == 0 {
        return Ok(BigRat::one());
    }
    let lf = lcm_of_denominators(&f.coeffs);
    let lg = lcm_of_denominators(&g.coeffs);
    let fi: Vec<BigInt> = f
        .coeffs
        .iter()
        .map(|c| (c * BigRat::from_integer(lf.clone())).to_integer())
        .collect();
    let gi: Vec<BigInt> = g
        .coeffs
        .iter()
        .map(|c| (c * BigRat::from_integer(lg.clone())).to_integer())
        .collect();
    let n = df + dg;
    let mut rows = Vec::with_capacity(n);
    for shift in 0..dg {
        let mut row = vec![BigInt::zero(); n];
        for (k, c) in fi.iter().rev().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..df {
        let mut row = vec![BigInt::zero(); n];
        for (k, c) in gi.iter().rev().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    let det = bareiss_det(rows);
    // Res(lf f, lg g) = lf^dg lg^df Res(f, g)
    let scale = num_traits::pow(lf, dg) * num_traits::pow(lg, df);
    Ok(BigRat::new(det, scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn resultant_examples() {
        // Res(x - 1, x - 2) = g(1) = -1
        assert_eq!(resultant_uni(&p(&[-1, 1]), &p(&[-2, 1])).unwrap(), rat(-1));
        assert_eq!(resultant_uni(&p(&[-1, 0, 1]), &p(&[-1, 1])).unwrap(), rat(0));
        let f = &p(&[-3, 1]) * &p(&[5, 1]);
        let g = &p(&[-3, 1]) * &p(&[-7, 1]);
        assert_eq!(f.gcd(&g).degree(), Some(1));
        assert_eq!(resultant_uni(&f, &g).unwrap(), rat(0));
        assert!(matches!(
            resultant_uni(&UniPoly::zero(), &UniPoly::zero()),
            Err(Error::ZeroPolynomials)
        ));
    }

    #[test]
    fn resultant_with_fractions_matches_root_product() {
        // f = (x - 1/2)(x + 3), g = 2x - 5: Res = lc(f)^1 * g(1/2) * g(-3)
        let f = UniPoly::new(vec![
            BigRat::new((-3).into(), 2.into()),
            BigRat::new(5.into(), 2.into()),
            rat(1),
        ]);
        let g = p(&[-5, 2]);
        assert_eq!(resultant_uni(&f, &g).unwrap(), rat((1 - 5) * (-6 - 5)));
    }

    #[test]
    fn gcd_and_interpolation() {
        let f = &p(&[-3, 1]) * &p(&[5, 1]);
        let g = &p(&[-3, 1]) * &p(&[-7, 1]);
        assert_eq!(f.gcd(&g), p(&[-3, 1]));
        let target = p(&[4, 0, -3, 1]);
        let pts: Vec<(BigRat, BigRat)> = (0..4).map(|i| (rat(i), target.eval(&rat(i)))).collect();
        assert_eq!(UniPoly::interpolate(&pts), target);
    }

    fn monic_from_roots(roots: &[i64]) -> UniPoly {
        roots
            .iter()
            .fold(p(&[1]), |acc, &r| &acc * &p(&[-r, 1]))
    }

    fn product_formula(f_roots: &[i64], g: &UniPoly) -> BigRat {
        f_roots.iter().map(|&r| g.eval(&rat(r))).product()
    }

    proptest! {
        #[test]
        fn resultant_is_multiplicative(
            fr in proptest::collection::vec(-9i64..9, 1..4),
            hr in proptest::collection::vec(-9i64..9, 1..4),
            gr in proptest::collection::vec(-9i64..9, 1..4),
        ) {
            let f = monic_from_roots(&fr);
            let h = monic_from_roots(&hr);
            let g = monic_from_roots(&gr);
            let fh = &f * &h;
            let lhs = resultant_uni(&fh, &g).unwrap();
            let rhs = resultant_uni(&f, &g).unwrap() * resultant_uni(&h, &g).unwrap();
            prop_assert_eq!(&lhs, &rhs);
            // Res(f, g) = prod over roots of f of g(root) for monic f
            prop_assert_eq!(resultant_uni(&f, &g).unwrap(), product_formula(&fr, &g));
        }
    }
}
