//! Conic bundle construction: the sextic `F`, the forms `g` and `h`, the
//! symmetric matrix `M(S, T)` with `det M = -F`, and the plane quartic cut out
//! by the discriminant of the biquadratic `(X, Y, Z) M (X, Y, Z)^T` in `(S, T)`.

mod fiber;
mod smooth;

pub use fiber::{
    conic_matrix, split_conic, split_degenerate_fiber, verify_bitangent, FiberSplit, QuadLine,
};
pub use smooth::{is_smooth, smooth_by_elimination, smooth_by_macaulay};

use num_traits::{One, Zero};

use crate::arith::ParamTuple;
use crate::error::{Error, Result};
use crate::poly::{det3, BigRat, BinForm, SymMat3, TernForm};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionInput {
    pub a: [BigRat; 5],
    pub u: BigRat,
}

impl ConstructionInput {
    pub fn new(a: [BigRat; 5], u: BigRat) -> Self {
        ConstructionInput { a, u }
    }

    pub fn from_params(params: &ParamTuple) -> Self {
        ConstructionInput {
            a: params.a_values(),
            u: params.u.clone(),
        }
    }

    /// `a1 a2 a3 a4 a5 u`.
    pub fn c(&self) -> BigRat {
        self.a.iter().product::<BigRat>() * &self.u
    }

    /// `a1 a2 a3 a4 a5 u^2`.
    pub fn a6(&self) -> BigRat {
        self.c() * &self.u
    }

    pub fn roots(&self) -> [BigRat; 6] {
        let [a1, a2, a3, a4, a5] = self.a.clone();
        [a1, a2, a3, a4, a5, self.a6()]
    }
}

/// `F = (a1 S - T) ... (a6 S - T)` together with `a6` and `c`.
#[allow(non_snake_case)]
pub fn build_F(input: &ConstructionInput) -> Result<(BinForm, BigRat, BigRat)> {
    if input.u.is_zero() || input.a.iter().any(Zero::is_zero) {
        return Err(Error::DegenerateParameters("a_i and u must be nonzero".into()));
    }
    let roots = input.roots();
    for i in 0..6 {
        for j in 0..i {
            if roots[i] == roots[j] {
                return Err(Error::DegenerateParameters(format!(
                    "a{} = a{} = {}",
                    j + 1,
                    i + 1,
                    roots[i]
                )));
            }
        }
    }
    let f = roots.iter().fold(BinForm::constant(BigRat::one()), |acc, a| {
        &acc * &BinForm::linear(a.clone(), -BigRat::one())
    });
    let [.., a6] = roots;
    Ok((f, a6, input.c()))
}

/// The pair `(g, h)` with `g(1, 0) = c` making `det M = -F`.
#[allow(non_snake_case)]
pub fn solve_gh(F: &BinForm, c: &BigRat) -> Result<(BinForm, BinForm)> {
    if F.degree() != 6 {
        return Err(Error::DegenerateParameters(format!("F has degree {}", F.degree())));
    }
    let two = BigRat::from_integer(2.into());
    let g0 = (-F.coeff(1, 5) - BigRat::one()) / &two;
    let g1 = (-F.coeff(2, 4) + &g0 * &g0) / &two;
    let g = BinForm::new(vec![c.clone(), g1, g0]);
    let t3 = BinForm::monomial(BigRat::one(), 0, 3);
    let t5s = BinForm::monomial(BigRat::one(), 1, 5);
    let inner = &t3 - &(&g * &BinForm::s());
    let numerator = &(&t5s - &(&inner * &inner)) + F;
    let h = numerator.div_monomial(3, 1)?;
    Ok((g, h))
}

/// `[[-ST + T^2, ST, g], [ST, S^2, T^2], [g, T^2, h]]`.
pub fn assemble_m(g: &BinForm, h: &BinForm) -> SymMat3 {
    let one = BigRat::one();
    let st = BinForm::monomial(one.clone(), 1, 1);
    let s2 = BinForm::monomial(one.clone(), 2, 0);
    let t2 = BinForm::monomial(one.clone(), 0, 2);
    let m11 = &t2 - &st;
    SymMat3::new([m11, st, g.clone(), s2, t2, h.clone()])
}

/// `q0, q1, q2` with `(X, Y, Z) M (X, Y, Z)^T = q0 S^2 + q1 S T + q2 T^2`.
pub fn biquadratic_parts(m: &SymMat3) -> [TernForm; 3] {
    std::array::from_fn(|k| {
        let mut q = TernForm::zero(2);
        for i in 0..3 {
            for j in 0..3 {
                let entry = m.get(i, j);
                assert_eq!(entry.degree(), 2, "matrix entries are quadratic");
                let mut e = [0u32; 3];
                e[i] += 1;
                e[j] += 1;
                let prev = q.coeff(e);
                q.set(e, prev + &entry.coeffs()[k]);
            }
        }
        q
    })
}

/// `q1^2 - 4 q0 q2` as computed, before normalization.
pub fn discriminant_raw(m: &SymMat3) -> TernForm {
    let [q0, q1, q2] = biquadratic_parts(m);
    let four = BigRat::from_integer(4.into());
    &(&q1 * &q1) - &(&q0 * &q2).scale(&four)
}

/// The discriminant quartic scaled to a primitive integral form with positive
/// leading coefficient.
pub fn discriminant_quartic(m: &SymMat3) -> TernForm {
    discriminant_raw(m).primitive()
}

#[allow(non_snake_case)]
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicBundle {
    pub input: ConstructionInput,
    pub a6: BigRat,
    pub c: BigRat,
    pub F: BinForm,
    pub g: BinForm,
    pub h: BinForm,
    pub M: SymMat3,
    pub quartic: TernForm,
    pub quartic_raw: TernForm,
}

impl ConicBundle {
    /// Runs the construction and checks `det M = -F`.
    #[allow(non_snake_case)]
    pub fn build(input: &ConstructionInput) -> Result<ConicBundle> {
        let (F, a6, c) = build_F(input)?;
        let (g, h) = solve_gh(&F, &c)?;
        let M = assemble_m(&g, &h);
        if det3(&M) != -&F {
            return Err(Error::Internal("det M differs from -F".into()));
        }
        let quartic_raw = discriminant_raw(&M);
        let quartic = quartic_raw.primitive();
        Ok(ConicBundle {
            input: input.clone(),
            a6,
            c,
            F,
            g,
            h,
            M,
            quartic,
            quartic_raw,
        })
    }

    pub fn from_params(params: &ParamTuple) -> Result<ConicBundle> {
        ConicBundle::build(&ConstructionInput::from_params(params))
    }

    pub fn det_matches(&self) -> bool {
        det3(&self.M) == -&self.F
    }

    /// Splits all six degenerate fibers.
    pub fn split_fibers(&self) -> Result<Vec<FiberSplit>> {
        self.input
            .roots()
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let mut s = split_degenerate_fiber(&self.M, a)?;
                s.index = i + 1;
                Ok(s)
            })
            .collect()
    }
}
