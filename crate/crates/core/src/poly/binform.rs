use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{parse_terms, write_term, BigRat};
use crate::error::{Error, Result};

/// Homogeneous form in `(S, T)`; `coeffs[k]` multiplies `S^(d-k) T^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinForm {
    coeffs: Vec<BigRat>,
}

impl BinForm {
    pub fn new(coeffs: Vec<BigRat>) -> Self {
        assert!(!coeffs.is_empty(), "a binary form has degree >= 0");
        BinForm { coeffs }
    }

    pub fn zero(degree: usize) -> Self {
        BinForm {
            coeffs: vec![BigRat::zero(); degree + 1],
        }
    }

    pub fn constant(c: BigRat) -> Self {
        BinForm { coeffs: vec![c] }
    }

    pub fn s() -> Self {
        BinForm::new(vec![BigRat::one(), BigRat::zero()])
    }

    pub fn t() -> Self {
        BinForm::new(vec![BigRat::zero(), BigRat::one()])
    }

    /// `a S + b T`.
    pub fn linear(a: BigRat, b: BigRat) -> Self {
        BinForm::new(vec![a, b])
    }

    /// `c S^a T^b`.
    pub fn monomial(c: BigRat, s_exp: usize, t_exp: usize) -> Self {
        let mut f = BinForm::zero(s_exp + t_exp);
        f.coeffs[t_exp] = c;
        f
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    /// Coefficient of `S^s_exp T^t_exp`; zero when the total degree differs.
    pub fn coeff(&self, s_exp: usize, t_exp: usize) -> BigRat {
        if s_exp + t_exp != self.degree() {
            return BigRat::zero();
        }
        self.coeffs[t_exp].clone()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn eval(&self, s: &BigRat, t: &BigRat) -> BigRat {
        let d = self.degree();
        let mut acc = BigRat::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc += c * num_traits::pow(s.clone(), d - k) * num_traits::pow(t.clone(), k);
        }
        acc
    }

    pub fn scale(&self, c: &BigRat) -> BinForm {
        BinForm::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, n: usize) -> BinForm {
        (0..n).fold(BinForm::constant(BigRat::one()), |acc, _| &acc * self)
    }

    /// Exact division by `S^s_exp T^t_exp`.
    pub fn div_monomial(&self, s_exp: usize, t_exp: usize) -> Result<BinForm> {
        let d = self.degree();
        if s_exp + t_exp > d {
            return Err(Error::InexactDivision(format!(
                "degree {d} form by S^{s_exp} T^{t_exp}"
            )));
        }
        let mut out = Vec::with_capacity(d - s_exp - t_exp + 1);
        for (k, c) in self.coeffs.iter().enumerate() {
            let s_here = d - k;
            let divisible = k >= t_exp && s_here >= s_exp;
            if divisible {
                out.push(c.clone());
            } else if !c.is_zero() {
                return Err(Error::InexactDivision(format!(
                    "term S^{s_here} T^{k} not divisible by S^{s_exp} T^{t_exp}"
                )));
            }
        }
        Ok(BinForm::new(out))
    }

    pub fn parse(text: &str, degree: usize) -> Result<BinForm> {
        let mut f = BinForm::zero(degree);
        for (c, e) in parse_terms(text, &["S", "T"])? {
            if (e[0] + e[1]) as usize != degree {
                return Err(Error::Parse(format!(
                    "term of degree {} in a form of degree {degree}",
                    e[0] + e[1]
                )));
            }
            f.coeffs[e[1] as usize] += c;
        }
        Ok(f)
    }
}

impl fmt::Display for BinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree() as u32;
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = k as u32;
            let first = out.is_empty();
            write_term(&mut out, first, c, &[("S", d - k), ("T", k)]);
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

impl Add for &BinForm {
    type Output = BinForm;
    fn add(self, rhs: &BinForm) -> BinForm {
        assert_eq!(self.degree(), rhs.degree(), "adding forms of different degree");
        BinForm::new(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &BinForm {
    type Output = BinForm;
    fn sub(self, rhs: &BinForm) -> BinForm {
        assert_eq!(self.degree(), rhs.degree(), "subtracting forms of different degree");
        BinForm::new(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &BinForm {
    type Output = BinForm;
    fn neg(self) -> BinForm {
        BinForm::new(self.coeffs.iter().map(|a| -a).collect())
    }
}

impl Mul for &BinForm {
    type Output = BinForm;
    fn mul(self, rhs: &BinForm) -> BinForm {
        let mut out = BinForm::zero(self.degree() + rhs.degree());
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for BinForm {
            type Output = BinForm;
            fn $m(self, rhs: BinForm) -> BinForm { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);
