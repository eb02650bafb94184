use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{lcm_of_denominators, BigRat};

/// Fraction-free Gaussian elimination (Bareiss) with row pivoting.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Scales each row by the lcm of its denominators. The determinant changes
/// by a nonzero factor only.
pub fn rational_rows_to_integer(rows: &[Vec<BigRat>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let l = lcm_of_denominators(row);
            row.iter()
                .map(|x| (x * BigRat::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn small_determinants() {
        assert_eq!(bareiss_det(m(&[&[2, 3], &[1, 4]])), BigInt::from(5));
        assert_eq!(bareiss_det(m(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(
            bareiss_det(m(&[&[0, 2, 1], &[3, 0, 0], &[1, 1, 1]])),
            BigInt::from(-3)
        );
        assert_eq!(bareiss_det(m(&[&[1, 2], &[2, 4]])), BigInt::zero());
    }

    #[test]
    fn matches_leibniz_on_4x4() {
        let a = m(&[&[3, -1, 4, 1], &[5, 9, -2, 6], &[5, 3, 5, -8], &[9, 7, 9, 3]]);
        let perms = permutations(4);
        let mut expected = BigInt::zero();
        for p in perms {
            let mut term = BigInt::from(parity(&p));
            for (i, &j) in p.iter().enumerate() {
                term *= &a[i][j];
            }
            expected += term;
        }
        assert_eq!(bareiss_det(a), expected);
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    fn parity(p: &[usize]) -> i64 {
        let mut inversions = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }
}
