use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{rational_sqrt, BigRat};
use crate::error::{Error, Result};

/// `a + b sqrt(delta)` in `Q(sqrt(delta))` for a squarefree `delta` other than 0 and 1.
///
/// Binary operations require both operands to share `delta`; mixing fields panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExtNum {
    delta: BigInt,
    a: BigRat,
    b: BigRat,
}

impl QuadExtNum {
    pub fn new(delta: BigInt, a: BigRat, b: BigRat) -> Self {
        assert!(
            !delta.is_zero() && !delta.is_one(),
            "delta must be a squarefree integer other than 0 and 1"
        );
        QuadExtNum { delta, a, b }
    }

    /// Like [`QuadExtNum::new`] but checks that `delta` is squarefree.
    pub fn checked(delta: BigInt, a: BigRat, b: BigRat) -> Result<Self> {
        if delta.is_zero() || delta.is_one() {
            return Err(Error::DegenerateParameters(format!("field parameter {delta}")));
        }
        if crate::arith::squarefree_part(&delta)? != delta {
            return Err(Error::DegenerateParameters(format!("{delta} is not squarefree")));
        }
        Ok(QuadExtNum::new(delta, a, b))
    }

    pub fn rational(delta: &BigInt, a: BigRat) -> Self {
        QuadExtNum::new(delta.clone(), a, BigRat::zero())
    }

    pub fn sqrt_delta(delta: &BigInt) -> Self {
        QuadExtNum::new(delta.clone(), BigRat::zero(), BigRat::one())
    }

    pub fn delta(&self) -> &BigInt {
        &self.delta
    }

    pub fn rational_part(&self) -> &BigRat {
        &self.a
    }

    pub fn irrational_part(&self) -> &BigRat {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadExtNum::new(self.delta.clone(), self.a.clone(), -&self.b)
    }

    pub fn norm(&self) -> BigRat {
        &self.a * &self.a - BigRat::from_integer(self.delta.clone()) * &self.b * &self.b
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let c = self.conj();
        Ok(QuadExtNum::new(self.delta.clone(), &c.a / &n, &c.b / &n))
    }

    pub fn div(&self, rhs: &QuadExtNum) -> Result<Self> {
        Ok(self * &rhs.inverse()?)
    }

    /// True when the value lies in `Q` and is the square of a rational.
    pub fn is_square_in_base(&self) -> bool {
        self.is_rational() && rational_sqrt(&self.a).is_some()
    }

    fn same_field(&self, rhs: &QuadExtNum) {
        assert_eq!(self.delta, rhs.delta, "operands live in different quadratic fields");
    }
}

impl fmt::Display for QuadExtNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let root = format!("sqrt({})", self.delta);
        let irr = if self.b.is_one() {
            root
        } else if (-&self.b).is_one() {
            format!("-{root}")
        } else {
            format!("{}*{root}", self.b)
        };
        if self.a.is_zero() {
            write!(f, "{irr}")
        } else if self.b.is_negative() {
            write!(f, "{} - {}", self.a, irr.trim_start_matches('-'))
        } else {
            write!(f, "{} + {irr}", self.a)
        }
    }
}

impl Add for &QuadExtNum {
    type Output = QuadExtNum;
    fn add(self, rhs: &QuadExtNum) -> QuadExtNum {
        self.same_field(rhs);
        QuadExtNum::new(self.delta.clone(), &self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub for &QuadExtNum {
    type Output = QuadExtNum;
    fn sub(self, rhs: &QuadExtNum) -> QuadExtNum {
        self.same_field(rhs);
        QuadExtNum::new(self.delta.clone(), &self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Neg for &QuadExtNum {
    type Output = QuadExtNum;
    fn neg(self) -> QuadExtNum {
        QuadExtNum::new(self.delta.clone(), -&self.a, -&self.b)
    }
}

impl Mul for &QuadExtNum {
    type Output = QuadExtNum;
    fn mul(self, rhs: &QuadExtNum) -> QuadExtNum {
        self.same_field(rhs);
        let d = BigRat::from_integer(self.delta.clone());
        QuadExtNum::new(
            self.delta.clone(),
            &self.a * &rhs.a + d * &self.b * &rhs.b,
            &self.a * &rhs.b + &self.b * &rhs.a,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;
    use proptest::prelude::*;

    fn q(delta: i64, a: i64, b: i64) -> QuadExtNum {
        QuadExtNum::new(BigInt::from(delta), rat(a), rat(b))
    }

    #[test]
    fn examples_in_q_sqrt2() {
        assert_eq!(&q(2, 1, 1) * &q(2, 1, -1), q(2, -1, 0));
        assert_eq!(q(2, 3, 2).norm(), rat(1));
        assert_eq!(q(2, 1, 1).inverse().unwrap(), q(2, -1, 1));
        assert!(matches!(q(2, 0, 0).inverse(), Err(Error::DivisionByZero)));
        assert_eq!(q(2, 1, -1).to_string(), "1 - sqrt(2)");
    }

    #[test]
    fn base_squares() {
        assert!(q(5, 9, 0).is_square_in_base());
        assert!(!q(5, 3, 0).is_square_in_base());
        assert!(!q(5, 9, 1).is_square_in_base());
        assert!(QuadExtNum::checked(BigInt::from(12), rat(1), rat(0)).is_err());
        assert!(QuadExtNum::checked(BigInt::from(-15), rat(1), rat(0)).is_ok());
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(
            delta in prop::sample::select(vec![-1i64, 2, 3, -7, 17, 769]),
            a in -1000i64..1000, b in -1000i64..1000,
            c in -1000i64..1000, d in -1000i64..1000,
        ) {
            let x = q(delta, a, b);
            let y = q(delta, c, d);
            prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
            prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
            if !x.is_zero() {
                let one = &x * &x.inverse().unwrap();
                prop_assert_eq!(one, q(delta, 1, 0));
            }
        }
    }
}
