use super::{BigRat, BinForm};

/// Symmetric 3x3 matrix of binary forms, stored as its upper triangle
/// `m11, m12, m13, m22, m23, m33`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymMat3 {
    entries: [BinForm; 6],
}

impl SymMat3 {
    pub fn new(entries: [BinForm; 6]) -> Self {
        SymMat3 { entries }
    }

    fn slot(i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        match (i, j) {
            (0, 0) => 0,
            (0, 1) => 1,
            (0, 2) => 2,
            (1, 1) => 3,
            (1, 2) => 4,
            (2, 2) => 5,
            _ => panic!("index out of range for a 3x3 matrix"),
        }
    }

    /// Entry at zero-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &BinForm {
        &self.entries[Self::slot(i, j)]
    }

    pub fn entries(&self) -> &[BinForm; 6] {
        &self.entries
    }

    pub fn eval(&self, s: &BigRat, t: &BigRat) -> [[BigRat; 3]; 3] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.get(i, j).eval(s, t)))
    }
}

/// Determinant by the symmetric expansion
/// `m11 (m22 m33 - m23^2) - m12 (m12 m33 - m13 m23) + m13 (m12 m23 - m13 m22)`.
pub fn det3(m: &SymMat3) -> BinForm {
    let [a, b, c, d, e, f] = m.entries();
    let minor1 = &(d * f) - &(e * e);
    let minor2 = &(b * f) - &(c * e);
    let minor3 = &(b * e) - &(c * d);
    &(&(a * &minor1) - &(b * &minor2)) + &(c * &minor3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;
    use proptest::prelude::*;

    fn leibniz(m: &SymMat3) -> BinForm {
        let perms: [([usize; 3], i64); 6] = [
            ([0, 1, 2], 1),
            ([1, 2, 0], 1),
            ([2, 0, 1], 1),
            ([0, 2, 1], -1),
            ([2, 1, 0], -1),
            ([1, 0, 2], -1),
        ];
        let mut acc = BinForm::zero(6);
        for (p, sign) in perms {
            let term = &(m.get(0, p[0]) * m.get(1, p[1])) * m.get(2, p[2]);
            acc = &acc + &term.scale(&rat(sign));
        }
        acc
    }

    fn quad(c: [i64; 3]) -> BinForm {
        BinForm::new(c.iter().map(|&x| rat(x)).collect())
    }

    #[test]
    fn diagonal_squares() {
        let s2 = BinForm::monomial(rat(1), 2, 0);
        let z = BinForm::zero(2);
        let m = SymMat3::new([s2.clone(), z.clone(), z.clone(), s2.clone(), z, s2]);
        assert_eq!(det3(&m), BinForm::monomial(rat(1), 6, 0));
    }

    proptest! {
        #[test]
        fn det3_matches_leibniz(c in proptest::collection::vec(-50i64..50, 18)) {
            let e: Vec<BinForm> = c.chunks(3).map(|w| quad([w[0], w[1], w[2]])).collect();
            let m = SymMat3::new(e.try_into().unwrap());
            prop_assert_eq!(det3(&m), leibniz(&m));
        }

        #[test]
        fn scaling_a_row_scales_det(c in proptest::collection::vec(-20i64..20, 18), l in -9i64..9) {
            let e: Vec<BinForm> = c.chunks(3).map(|w| quad([w[0], w[1], w[2]])).collect();
            let m = SymMat3::new(e.try_into().unwrap());
            // scaling row and column 1 of a symmetric matrix scales det by l^2
            let lam = rat(l);
            let scaled = SymMat3::new([
                m.get(0, 0).scale(&(&lam * &lam)),
                m.get(0, 1).scale(&lam),
                m.get(0, 2).scale(&lam),
                m.get(1, 1).clone(),
                m.get(1, 2).clone(),
                m.get(2, 2).clone(),
            ]);
            prop_assert_eq!(det3(&scaled), det3(&m).scale(&(&lam * &lam)));
        }
    }
}
