use num_bigint::{BigInt, Sign as BigSign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::BigRat;

const TRIAL_LIMIT: u64 = 1 << 16;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the first twelve prime bases are exact below 2^64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `is_prime` for signed or oversized inputs.
pub fn is_prime_checked(n: &BigInt) -> Result<bool> {
    if n.is_negative() {
        return Err(Error::OutOfRange(format!("{n} is negative")));
    }
    let v = n
        .to_u64()
        .ok_or_else(|| Error::OutOfRange(format!("{n} exceeds 64 bits")))?;
    Ok(is_prime(v))
}

fn pollard_rho(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!()
}

fn factor_u64_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    factor_u64_into(d, out);
    factor_u64_into(n / d, out);
}

/// Prime factorization of `|n|` as sorted `(prime, exponent)` pairs.
pub fn factorize(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    if n.is_zero() {
        return Err(Error::FactorizationFailed("0".into()));
    }
    let mut rest = n.abs();
    let mut primes: Vec<BigInt> = Vec::new();
    let mut p = 2u64;
    while p < TRIAL_LIMIT {
        let bp = BigInt::from(p);
        if &bp * &bp > rest {
            break;
        }
        while (&rest % &bp).is_zero() {
            primes.push(bp.clone());
            rest /= &bp;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        match rest.to_u64() {
            Some(v) => {
                let mut small = Vec::new();
                factor_u64_into(v, &mut small);
                primes.extend(small.into_iter().map(BigInt::from));
            }
            None => {
                let root = rest.sqrt();
                if &root * &root == rest && root.to_u64().is_some() {
                    let mut small = Vec::new();
                    factor_u64_into(root.to_u64().unwrap(), &mut small);
                    for q in small {
                        primes.push(BigInt::from(q));
                        primes.push(BigInt::from(q));
                    }
                } else {
                    return Err(Error::FactorizationFailed(n.to_string()));
                }
            }
        }
    }
    primes.sort();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    for q in primes {
        match out.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    Ok(out)
}

/// Squarefree integer in the square class of `n`, keeping the sign.
pub fn squarefree_part(n: &BigInt) -> Result<BigInt> {
    let mut acc = if n.sign() == BigSign::Minus {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    for (p, e) in factorize(n)? {
        if e % 2 == 1 {
            acc *= p;
        }
    }
    Ok(acc)
}

/// Squarefree integer representing the class of `x` in `Q^* / (Q^*)^2`.
pub fn squarefree_part_rat(x: &BigRat) -> Result<BigInt> {
    if x.is_zero() {
        return Err(Error::FactorizationFailed("0".into()));
    }
    squarefree_part(&(x.numer() * x.denom()))
}
