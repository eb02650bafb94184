use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::squarefree_part;
use crate::error::{Error, Result};
use crate::poly::{lcm_of_denominators, rational_sqrt, BigRat, QuadExtNum, SymMat3, TernForm};

type Mat3 = [[BigRat; 3]; 3];

/// A line `a X + b Y + c Z = 0` with coefficients in `Q(sqrt(delta))`.
/// Rational lines are carried in `Q(sqrt(-1))` with zero irrational parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadLine {
    pub coeffs: [QuadExtNum; 3],
}

impl QuadLine {
    pub fn new(coeffs: [QuadExtNum; 3]) -> Self {
        assert!(
            coeffs[0].delta() == coeffs[1].delta() && coeffs[1].delta() == coeffs[2].delta(),
            "line coefficients in different fields"
        );
        QuadLine { coeffs }
    }

    pub fn rational(coeffs: [BigRat; 3]) -> Self {
        let d = -BigInt::one();
        QuadLine {
            coeffs: coeffs.map(|c| QuadExtNum::rational(&d, c)),
        }
    }

    pub fn delta(&self) -> &BigInt {
        self.coeffs[0].delta()
    }

    pub fn conj(&self) -> QuadLine {
        QuadLine {
            coeffs: std::array::from_fn(|i| self.coeffs[i].conj()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(QuadExtNum::is_zero)
    }

    pub fn is_rational_up_to_scalar(&self) -> bool {
        let Some(pivot) = self.coeffs.iter().find(|c| !c.is_zero()) else {
            return true;
        };
        let inv = pivot.inverse().expect("nonzero");
        self.coeffs.iter().all(|c| (c * &inv).is_rational())
    }

    /// Coefficients as text, `[a, b, c]`.
    pub fn coeff_strings(&self) -> [String; 3] {
        std::array::from_fn(|i| self.coeffs[i].to_string())
    }
}

impl fmt::Display for QuadLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = ["X", "Y", "Z"];
        let mut first = true;
        for (c, v) in self.coeffs.iter().zip(vars) {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            write!(f, "({c}) * {v}")?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Serialize for QuadLine {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeff_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadLine {
    fn deserialize<D: serde::Deserializer<'de>>(_: D) -> std::result::Result<Self, D::Error> {
        Err(serde::de::Error::custom(
            "lines are recomputed from the quartic data, not parsed",
        ))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberSplit {
    /// One-based index of the root `a_i`.
    pub index: usize,
    #[serde(serialize_with = "ser_display")]
    pub root: BigRat,
    #[serde(serialize_with = "ser_display")]
    pub delta: BigInt,
    /// Primitive integral kernel vector of the fiber matrix.
    #[serde(serialize_with = "ser_display_vec")]
    pub kernel: [BigInt; 3],
    /// `lines[0] * lines[1] = lambda * conic`.
    #[serde(serialize_with = "ser_display")]
    pub lambda: BigRat,
    pub lines: [QuadLine; 2],
}

fn ser_display<T: fmt::Display, S: serde::Serializer>(
    v: &T,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn ser_display_vec<S: serde::Serializer>(
    v: &[BigInt; 3],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().serialize(s)
}

/// Symmetric matrix of a ternary quadratic form.
pub fn conic_matrix(q: &TernForm) -> Mat3 {
    assert_eq!(q.degree(), 2, "expected a quadratic form");
    let half = BigRat::new(BigInt::one(), BigInt::from(2));
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut e = [0u32; 3];
            e[i] += 1;
            e[j] += 1;
            let c = q.coeff(e);
            if i == j {
                c
            } else {
                c * &half
            }
        })
    })
}

fn quadratic_from_matrix(n: &Mat3) -> TernForm {
    let mut q = TernForm::zero(2);
    for i in 0..3 {
        for j in 0..3 {
            let mut e = [0u32; 3];
            e[i] += 1;
            e[j] += 1;
            let prev = q.coeff(e);
            q.set(e, prev + &n[i][j]);
        }
    }
    q
}

fn cross(a: &[BigRat; 3], b: &[BigRat; 3]) -> [BigRat; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn rank3(n: &Mat3) -> usize {
    let d = cross(&n[0], &n[1])
        .iter()
        .zip(&n[2])
        .fold(BigRat::zero(), |acc, (x, y)| acc + x * y);
    if !d.is_zero() {
        return 3;
    }
    let pairs = [(0, 1), (0, 2), (1, 2)];
    if pairs
        .iter()
        .any(|&(a, b)| cross(&n[a], &n[b]).iter().any(|x| !x.is_zero()))
    {
        return 2;
    }
    if n.iter().flatten().any(|x| !x.is_zero()) {
        1
    } else {
        0
    }
}

fn primitive_integer(v: &[BigRat; 3]) -> [BigInt; 3] {
    let l = lcm_of_denominators(v.iter());
    let ints: Vec<BigInt> = v
        .iter()
        .map(|c| (c * BigRat::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let mut out: [BigInt; 3] = std::array::from_fn(|i| &ints[i] / &g);
    let last = out.iter().rev().find(|x| !x.is_zero()).cloned().expect("nonzero");
    if last.is_negative() {
        out = out.map(|x| -x);
    }
    out
}

/// Factors a rank-2 ternary quadratic form, given by its symmetric matrix,
/// into two conjugate lines over `Q(sqrt(delta))`.
pub fn split_conic(n: &Mat3, root_label: &str) -> Result<(BigInt, [BigInt; 3], BigRat, [QuadLine; 2])> {
    let rank = rank3(n);
    if rank != 2 {
        return Err(Error::UnexpectedFiberRank {
            root: root_label.to_string(),
            rank,
        });
    }
    let kernel_rat = [(0, 1), (0, 2), (1, 2)]
        .iter()
        .map(|&(a, b)| cross(&n[a], &n[b]))
        .find(|v| v.iter().any(|x| !x.is_zero()))
        .expect("rank 2");
    let k = primitive_integer(&kernel_rat);
    let p = (0..3).rev().find(|&i| !k[i].is_zero()).expect("nonzero kernel");
    let others: Vec<usize> = (0..3).filter(|&i| i != p).collect();
    let (i, j) = (others[0], others[1]);
    let (alpha, beta, gamma) = (n[i][i].clone(), n[i][j].clone(), n[j][j].clone());
    let disc = &beta * &beta - &alpha * &gamma;
    if disc.is_zero() {
        return Err(Error::Internal("degenerate 2x2 restriction".into()));
    }
    if rational_sqrt(&disc).is_some() {
        return Err(Error::RationalLines {
            root: root_label.to_string(),
        });
    }
    let delta = squarefree_part(&(disc.numer() * disc.denom()))?;
    // disc = s^2 delta
    let s = rational_sqrt(&(&disc / BigRat::from_integer(delta.clone())))
        .ok_or_else(|| Error::Internal("square class mismatch".into()))?;

    // y_i = x_i - (k_i / k_p) x_p, similarly y_j
    let kp = BigRat::from_integer(k[p].clone());
    let ratio = |m: usize| BigRat::from_integer(k[m].clone()) / &kp;
    let q = |a: BigRat, b: BigRat| QuadExtNum::new(delta.clone(), a, b);
    // line = u y_i + w y_j with (u, w) the leading coordinate first
    let (lead, lead_idx, other_idx) = if !alpha.is_zero() {
        (alpha.clone(), i, j)
    } else {
        (gamma.clone(), j, i)
    };
    let make = |sign: i64| {
        let u = q(lead.clone(), BigRat::zero());
        let w = q(beta.clone(), &s * BigRat::from_integer(sign.into()));
        let mut coeffs: [QuadExtNum; 3] = std::array::from_fn(|_| q(BigRat::zero(), BigRat::zero()));
        coeffs[lead_idx] = u.clone();
        coeffs[other_idx] = w.clone();
        let rl = q(ratio(lead_idx), BigRat::zero());
        let ro = q(ratio(other_idx), BigRat::zero());
        coeffs[p] = -&(&(&u * &rl) + &(&w * &ro));
        QuadLine::new(coeffs)
    };
    let lines = [make(1), make(-1)];
    Ok((delta, k, lead, lines))
}

/// Splits the fiber of `M` over `(S, T) = (1, a)`.
pub fn split_degenerate_fiber(m: &SymMat3, a: &BigRat) -> Result<FiberSplit> {
    let n = m.eval(&BigRat::one(), a);
    let (delta, kernel, lambda, lines) = split_conic(&n, &a.to_string())?;
    Ok(FiberSplit {
        index: 0,
        root: a.clone(),
        delta,
        kernel,
        lambda,
        lines,
    })
}

impl FiberSplit {
    /// Whether `lines[0] * lines[1] = lambda * conic` exactly and the lines are
    /// Galois conjugate.
    pub fn reproduces(&self, n: &Mat3) -> bool {
        let conic = quadratic_from_matrix(n);
        let [l0, l1] = &self.lines;
        for e in monomials2() {
            let mut acc = QuadExtNum::rational(self.lines[0].delta(), BigRat::zero());
            for a in 0..3 {
                for b in 0..3 {
                    let mut f = [0u32; 3];
                    f[a] += 1;
                    f[b] += 1;
                    if f == e {
                        acc = &acc + &(&l0.coeffs[a] * &l1.coeffs[b]);
                    }
                }
            }
            let target = &self.lambda * conic.coeff(e);
            if !acc.is_rational() || *acc.rational_part() != target {
                return false;
            }
        }
        l0.conj() == *l1
    }
}

fn monomials2() -> Vec<[u32; 3]> {
    vec![[2, 0, 0], [1, 1, 0], [1, 0, 1], [0, 2, 0], [0, 1, 1], [0, 0, 2]]
}

type QPoly = Vec<QuadExtNum>;

fn qpoly_mul(a: &QPoly, b: &QPoly, zero: &QuadExtNum) -> QPoly {
    let mut out = vec![zero.clone(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// Restriction of `f` to the line through `p` and `q` as coefficients of
/// `s^(d-k) t^k`.
fn restrict(f: &TernForm, p: &[QuadExtNum; 3], q: &[QuadExtNum; 3]) -> QPoly {
    let zero = QuadExtNum::rational(p[0].delta(), BigRat::zero());
    let one = QuadExtNum::rational(p[0].delta(), BigRat::one());
    let d = f.degree() as usize;
    // powers[v][k] = (p_v s + q_v t)^k
    let powers: Vec<Vec<QPoly>> = (0..3)
        .map(|v| {
            let lin = vec![p[v].clone(), q[v].clone()];
            let mut ps = vec![vec![one.clone()]];
            for k in 1..=d {
                let next = qpoly_mul(&ps[k - 1], &lin, &zero);
                ps.push(next);
            }
            ps
        })
        .collect();
    let mut out = vec![zero.clone(); d + 1];
    for (e, c) in f.terms() {
        let term = qpoly_mul(
            &qpoly_mul(&powers[0][e[0] as usize], &powers[1][e[1] as usize], &zero),
            &powers[2][e[2] as usize],
            &zero,
        );
        let cq = QuadExtNum::rational(p[0].delta(), c.clone());
        for (k, t) in term.iter().enumerate() {
            out[k] = &out[k] + &(&cq * t);
        }
    }
    out
}

/// Whether `f` restricted to the line is a nonzero constant times a square.
pub fn verify_bitangent(f: &TernForm, line: &QuadLine) -> Result<bool> {
    if line.is_zero() {
        return Err(Error::ZeroLine);
    }
    if f.degree() != 4 {
        return Err(Error::DegenerateParameters("expected a quartic".into()));
    }
    let [a, b, c] = &line.coeffs;
    let z = || QuadExtNum::rational(a.delta(), BigRat::zero());
    let o = || QuadExtNum::rational(a.delta(), BigRat::one());
    let (p, q) = if !c.is_zero() {
        ([c.clone(), z(), -a], [z(), c.clone(), -b])
    } else if !b.is_zero() {
        ([b.clone(), -a, z()], [z(), z(), o()])
    } else {
        ([z(), o(), z()], [z(), z(), o()])
    };
    let r = restrict(f, &p, &q);
    if r.iter().all(QuadExtNum::is_zero) {
        return Err(Error::LineOnCurve);
    }
    let two = QuadExtNum::rational(a.delta(), BigRat::from_integer(2.into()));
    if !r[0].is_zero() {
        let inv = r[0].inverse()?;
        let pk: Vec<QuadExtNum> = r.iter().map(|x| x * &inv).collect();
        let al = pk[1].div(&two)?;
        let be = (&pk[2] - &(&al * &al)).div(&two)?;
        Ok(pk[3] == &(&two * &al) * &be && pk[4] == &be * &be)
    } else {
        let disc = &(&r[3] * &r[3]) - &(&(&two * &two) * &(&r[2] * &r[4]));
        Ok(r[1].is_zero() && disc.is_zero())
    }
}
