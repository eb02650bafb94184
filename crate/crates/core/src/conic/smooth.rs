use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly::{
    bareiss_det, rat, rational_rows_to_integer, resultant_uni, BigRat, Monomial3, TernForm,
    UniPoly,
};

const SHIFT_RANGE: i64 = 5;
const MACAULAY_ATTEMPTS: usize = 24;

/// `f(X + l Y, Y, Z + m Y)`.
fn shear(f: &TernForm, l: &BigRat, m: &BigRat) -> TernForm {
    let x = &TernForm::x() + &TernForm::y().scale(l);
    let z = &TernForm::z() + &TernForm::y().scale(m);
    f.compose_linear(&[x, TernForm::y(), z])
}

/// Coefficients in `Y` of `p(x, Y, 1)`.
fn restrict_to_column(p: &TernForm, x: &BigRat) -> UniPoly {
    let mut coeffs = vec![BigRat::zero(); p.degree() as usize + 1];
    for (e, c) in p.terms() {
        coeffs[e[1] as usize] += c * num_traits::pow(x.clone(), e[0] as usize);
    }
    UniPoly::new(coeffs)
}

/// `Res_Y(p, q)` at `Z = 1` as a polynomial in `X`, for cubics monic up to a
/// constant in `Y`.
fn resultant_in_x(p: &TernForm, q: &TernForm) -> Result<UniPoly> {
    let degree = (p.degree() * q.degree()) as i64;
    let points = (0..=degree)
        .map(|k| {
            let x = rat(k);
            let r = resultant_uni(&restrict_to_column(p, &x), &restrict_to_column(q, &x))?;
            Ok((x, r))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(UniPoly::interpolate(&points))
}

/// Certifies smoothness by projecting the common zeros of the partials from
/// `[0:1:0]`. `Some(true)` when the two resultants share no root; `None` when
/// the test is inconclusive.
pub fn smooth_by_elimination(f: &TernForm) -> Option<bool> {
    assert_eq!(f.degree(), 4, "expected a quartic");
    for l in -SHIFT_RANGE..=SHIFT_RANGE {
        for m in -SHIFT_RANGE..=SHIFT_RANGE {
            let g = shear(f, &rat(l), &rat(m));
            let [p1, p2, p3] = g.gradient();
            if [&p1, &p2, &p3].iter().any(|p| p.coeff([0, 3, 0]).is_zero()) {
                continue;
            }
            let r12 = resultant_in_x(&p1, &p2).ok()?;
            let r13 = resultant_in_x(&p1, &p3).ok()?;
            let top = |r: &UniPoly| r.coeffs().get(9).is_none_or(Zero::is_zero);
            if top(&r12) && top(&r13) {
                return None;
            }
            if r12.is_zero() || r13.is_zero() {
                return None;
            }
            return match r12.gcd(&r13).degree() {
                Some(0) => Some(true),
                _ => None,
            };
        }
    }
    None
}

fn monomials(degree: u32) -> Vec<Monomial3> {
    let mut out = Vec::new();
    for i in (0..=degree).rev() {
        for j in (0..=degree - i).rev() {
            out.push([i, j, degree - i - j]);
        }
    }
    out
}

/// `(det M, det A)` for the Macaulay matrix of three ternary cubics in degree 7
/// and its extraneous minor.
fn macaulay_dets(partials: &[TernForm; 3]) -> (BigInt, BigInt) {
    let cols = monomials(7);
    let index = |e: &Monomial3| cols.iter().position(|c| c == e).expect("degree 7 monomial");
    let mut rows: Vec<Vec<BigRat>> = Vec::with_capacity(cols.len());
    let mut non_reduced = Vec::new();
    for (r, m) in cols.iter().enumerate() {
        let divisible: Vec<usize> = (0..3).filter(|&i| m[i] >= 3).collect();
        if divisible.len() >= 2 {
            non_reduced.push(r);
        }
        let i = divisible[0];
        let mut shift = *m;
        shift[i] -= 3;
        let mut row = vec![BigRat::zero(); cols.len()];
        for (e, c) in partials[i].terms() {
            let target = [e[0] + shift[0], e[1] + shift[1], e[2] + shift[2]];
            row[index(&target)] = c.clone();
        }
        rows.push(row);
    }
    let ints = rational_rows_to_integer(&rows);
    let minor: Vec<Vec<BigInt>> = non_reduced
        .iter()
        .map(|&r| non_reduced.iter().map(|&c| ints[r][c].clone()).collect())
        .collect();
    (bareiss_det(ints), bareiss_det(minor))
}

fn unimodular_change(f: &TernForm, rng: &mut ChaCha8Rng) -> TernForm {
    let mut c = || rat(rng.gen_range(-3..=3));
    let (a, b, d) = (c(), c(), c());
    let (e, g, h) = (c(), c(), c());
    let (x, y, z) = (TernForm::x(), TernForm::y(), TernForm::z());
    let upper = [
        &(&x + &y.scale(&a)) + &z.scale(&b),
        &y + &z.scale(&d),
        z.clone(),
    ];
    let lower = [
        x.clone(),
        &y + &x.scale(&e),
        &(&z + &x.scale(&g)) + &y.scale(&h),
    ];
    f.compose_linear(&upper).compose_linear(&lower)
}

/// Decides smoothness with the Macaulay resultant of the three partials. When
/// the extraneous minor vanishes the coordinates are changed and the test is
/// repeated; `Err` only if every attempt is degenerate.
pub fn smooth_by_macaulay(f: &TernForm) -> Result<bool> {
    assert_eq!(f.degree(), 4, "expected a quartic");
    let mut rng = ChaCha8Rng::seed_from_u64(0x4d41);
    let mut g = f.clone();
    for _ in 0..MACAULAY_ATTEMPTS {
        let (det_m, det_a) = macaulay_dets(&g.gradient());
        if !det_m.is_zero() {
            return Ok(true);
        }
        if !det_a.is_zero() {
            return Ok(false);
        }
        g = unimodular_change(f, &mut rng);
    }
    Err(Error::Internal(
        "Macaulay extraneous factor vanished in every coordinate system".into(),
    ))
}

/// Smoothness over an algebraic closure. Undecidable inputs count as singular,
/// so a `true` answer is always certified.
pub fn is_smooth(f: &TernForm) -> bool {
    if f.is_zero() {
        return false;
    }
    if smooth_by_elimination(f) == Some(true) {
        return true;
    }
    smooth_by_macaulay(f).unwrap_or(false)
}
