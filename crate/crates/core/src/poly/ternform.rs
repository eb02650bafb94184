use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{lcm_of_denominators, parse_terms, write_term, BigRat};
use crate::error::{Error, Result};

/// Exponents of `X^i Y^j Z^k`.
pub type Monomial3 = [u32; 3];

/// Homogeneous form in `(X, Y, Z)` with sparse rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TernForm {
    degree: u32,
    terms: BTreeMap<Monomial3, BigRat>,
}

impl TernForm {
    pub fn zero(degree: u32) -> Self {
        TernForm {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: BigRat) -> Self {
        let mut f = TernForm::zero(0);
        f.set([0, 0, 0], c);
        f
    }

    pub fn var(index: usize) -> Self {
        let mut e = [0; 3];
        e[index] = 1;
        TernForm::monomial(BigRat::one(), e)
    }

    pub fn x() -> Self {
        TernForm::var(0)
    }

    pub fn y() -> Self {
        TernForm::var(1)
    }

    pub fn z() -> Self {
        TernForm::var(2)
    }

    pub fn monomial(c: BigRat, exps: Monomial3) -> Self {
        let mut f = TernForm::zero(exps.iter().sum());
        f.set(exps, c);
        f
    }

    /// `a X + b Y + c Z`.
    pub fn linear(coeffs: &[BigRat; 3]) -> Self {
        let mut f = TernForm::zero(1);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = [0; 3];
            e[i] = 1;
            f.set(e, c.clone());
        }
        f
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn set(&mut self, exps: Monomial3, c: BigRat) {
        assert_eq!(exps.iter().sum::<u32>(), self.degree, "inhomogeneous term");
        if c.is_zero() {
            self.terms.remove(&exps);
        } else {
            self.terms.insert(exps, c);
        }
    }

    pub fn coeff(&self, exps: Monomial3) -> BigRat {
        self.terms.get(&exps).cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero terms in graded lexicographic order, `X > Y > Z`.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial3, &BigRat)> {
        self.terms.iter().rev()
    }

    pub fn eval(&self, point: &[BigRat; 3]) -> BigRat {
        let mut acc = BigRat::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (v, &k) in point.iter().zip(e) {
                term *= num_traits::pow(v.clone(), k as usize);
            }
            acc += term;
        }
        acc
    }

    pub fn scale(&self, c: &BigRat) -> TernForm {
        let mut out = TernForm::zero(self.degree);
        for (e, v) in &self.terms {
            out.set(*e, v * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> TernForm {
        let mut acc = TernForm::constant(BigRat::one());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn partial(&self, var: usize) -> TernForm {
        if self.degree == 0 {
            return TernForm::zero(0);
        }
        let mut out = TernForm::zero(self.degree - 1);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut d = *e;
            d[var] -= 1;
            out.set(d, c * BigRat::from_integer(BigInt::from(e[var])));
        }
        out
    }

    pub fn gradient(&self) -> [TernForm; 3] {
        [self.partial(0), self.partial(1), self.partial(2)]
    }

    /// Substitutes `X -> images[0]`, `Y -> images[1]`, `Z -> images[2]` for
    /// linear forms `images`.
    pub fn compose_linear(&self, images: &[TernForm; 3]) -> TernForm {
        for im in images {
            assert_eq!(im.degree, 1, "substitution must be linear");
        }
        let powers: Vec<Vec<TernForm>> = images
            .iter()
            .map(|im| {
                let mut p = vec![TernForm::constant(BigRat::one())];
                for k in 1..=self.degree {
                    let next = &p[k as usize - 1] * im;
                    p.push(next);
                }
                p
            })
            .collect();
        let mut out = TernForm::zero(self.degree);
        for (e, c) in &self.terms {
            let term = &(&powers[0][e[0] as usize] * &powers[1][e[1] as usize])
                * &powers[2][e[2] as usize];
            out = &out + &term.scale(c);
        }
        out
    }

    /// The integer multiple with coprime coefficients whose leading term in
    /// graded lexicographic order is positive.
    pub fn primitive(&self) -> TernForm {
        let Some((_, lead)) = self.terms().next() else {
            return self.clone();
        };
        let l = lcm_of_denominators(self.terms.values());
        let ints: Vec<BigInt> = self
            .terms
            .values()
            .map(|c| (c * BigRat::from_integer(l.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let mut factor = BigRat::new(l, g);
        if lead.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    pub fn parse(text: &str, degree: u32) -> Result<TernForm> {
        let mut f = TernForm::zero(degree);
        for (c, e) in parse_terms(text, &["X", "Y", "Z"])? {
            let exps = [e[0], e[1], e[2]];
            if exps.iter().sum::<u32>() != degree {
                return Err(Error::Parse(format!(
                    "term of degree {} in a form of degree {degree}",
                    exps.iter().sum::<u32>()
                )));
            }
            let sum = f.coeff(exps) + c;
            f.set(exps, sum);
        }
        Ok(f)
    }
}

impl fmt::Display for TernForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (e, c) in self.terms() {
            let first = out.is_empty();
            write_term(
                &mut out,
                first,
                c,
                &[("X", e[0]), ("Y", e[1]), ("Z", e[2])],
            );
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

impl Add for &TernForm {
    type Output = TernForm;
    fn add(self, rhs: &TernForm) -> TernForm {
        assert!(
            self.degree == rhs.degree || self.is_zero() || rhs.is_zero(),
            "adding forms of different degree"
        );
        let degree = if self.is_zero() { rhs.degree } else { self.degree };
        let mut out = TernForm {
            degree,
            terms: self.terms.clone(),
        };
        for (e, c) in &rhs.terms {
            let sum = out.coeff(*e) + c;
            out.set(*e, sum);
        }
        out
    }
}

impl Neg for &TernForm {
    type Output = TernForm;
    fn neg(self) -> TernForm {
        self.scale(&-BigRat::one())
    }
}

impl Sub for &TernForm {
    type Output = TernForm;
    fn sub(self, rhs: &TernForm) -> TernForm {
        self + &(-rhs)
    }
}

impl Mul for &TernForm {
    type Output = TernForm;
    fn mul(self, rhs: &TernForm) -> TernForm {
        let mut out = TernForm::zero(self.degree + rhs.degree);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let e = [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
                let sum = out.coeff(e) + x * y;
                out.set(e, sum);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for TernForm {
            type Output = TernForm;
            fn $m(self, rhs: TernForm) -> TernForm { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);
