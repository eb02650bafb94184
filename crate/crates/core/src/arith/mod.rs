//! Arithmetic over `Q` for the Galois side of the construction: Kronecker and
//! Hilbert symbols, ramification of quadratic fields, parameter validation and
//! search, and decomposition groups inside `Gal(L/Q) = F_2^5`.
//!
//! `L = Q(sqrt(b1), ..., sqrt(b5))`. A Galois element is a [`GalVec`] whose bit
//! `j` records whether it negates `sqrt(b_{j+1})`.

mod factor;

pub use factor::{factorize, is_prime, is_prime_checked, squarefree_part, squarefree_part_rat};

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{parse_rat, BigRat};

/// Kronecker symbol `(a | n)`.
pub fn kronecker(a: i64, n: i64) -> i32 {
    let (mut a, mut n) = (a as i128, n as i128);
    if n == 0 {
        return (a == 1 || a == -1) as i32;
    }
    let mut result = 1;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    let twos = n.trailing_zeros();
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        if twos % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            result = -result;
        }
        n >>= twos;
    }
    // Jacobi symbol for odd positive n
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// A place of `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Place {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if matches!(s, "inf" | "infinity" | "oo") {
            return Ok(Place::Infinite);
        }
        let p: u64 = s
            .parse()
            .map_err(|_| Error::Parse(format!("bad place {s:?}")))?;
        if !is_prime(p) {
            return Err(Error::Parse(format!("{p} is not prime")));
        }
        Ok(Place::Finite(p))
    }
}

impl Serialize for Place {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn valuation(mut n: i128, p: i128) -> (u32, i128) {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    (v, n)
}

/// Hilbert symbol `(a, b)_v` for nonzero integers.
pub fn hilbert_symbol(a: i64, b: i64, place: Place) -> i32 {
    assert!(a != 0 && b != 0, "Hilbert symbol of zero");
    match place {
        Place::Infinite => {
            if a < 0 && b < 0 {
                -1
            } else {
                1
            }
        }
        Place::Finite(2) => {
            let (alpha, u) = valuation(a as i128, 2);
            let (beta, v) = valuation(b as i128, 2);
            let eps = |x: i128| ((x - 1) / 2).rem_euclid(2);
            let omega = |x: i128| ((x * x - 1) / 8).rem_euclid(2);
            let e = eps(u) * eps(v) + alpha as i128 * omega(v) + beta as i128 * omega(u);
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Place::Finite(p) => {
            let pi = p as i128;
            let (alpha, u) = valuation(a as i128, pi);
            let (beta, v) = valuation(b as i128, pi);
            let mut s = 1;
            if (alpha * beta) % 2 == 1 && (p - 1) / 2 % 2 == 1 {
                s = -s;
            }
            let leg = |x: i128| kronecker(x.rem_euclid(pi) as i64, p as i64);
            if beta % 2 == 1 {
                s *= leg(u);
            }
            if alpha % 2 == 1 {
                s *= leg(v);
            }
            s
        }
    }
}

/// Primes ramified in `Q(sqrt(b))` for squarefree `b`.
pub fn ramified_primes(b: i64) -> Result<Vec<u64>> {
    if b == 0 || b == 1 {
        return Err(Error::DegenerateParameters(format!("Q(sqrt({b})) is not a quadratic field")));
    }
    let mut out: Vec<u64> = factorize(&BigInt::from(b))?
        .into_iter()
        .map(|(p, _)| p.to_u64().expect("factor of an i64"))
        .filter(|&p| p != 2)
        .collect();
    if b.rem_euclid(4) != 1 {
        out.insert(0, 2);
    }
    Ok(out)
}

/// An element of `Gal(L/Q) = F_2^5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GalVec(u8);

impl GalVec {
    pub const ZERO: GalVec = GalVec(0);

    pub fn new(bits: u8) -> Self {
        assert!(bits < 32, "GalVec has 5 coordinates");
        GalVec(bits)
    }

    pub fn from_coords(c: [u8; 5]) -> Self {
        GalVec(c.iter().enumerate().fold(0, |acc, (i, &x)| acc | ((x & 1) << i)))
    }

    pub fn unit(i: usize) -> Self {
        GalVec(1 << i)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn coord(self, i: usize) -> u8 {
        (self.0 >> i) & 1
    }

    pub fn coords(self) -> [u8; 5] {
        std::array::from_fn(|i| self.coord(i))
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl std::ops::Add for GalVec {
    type Output = GalVec;
    fn add(self, rhs: GalVec) -> GalVec {
        GalVec(self.0 ^ rhs.0)
    }
}

impl fmt::Display for GalVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coords();
        write!(f, "({},{},{},{},{})", c[0], c[1], c[2], c[3], c[4])
    }
}

impl Serialize for GalVec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords().serialize(s)
    }
}

impl<'de> Deserialize<'de> for GalVec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let c = <[u8; 5]>::deserialize(d)?;
        if c.iter().any(|&x| x > 1) {
            return Err(serde::de::Error::custom("GalVec coordinates are bits"));
        }
        Ok(GalVec::from_coords(c))
    }
}

/// All elements of the span of `gens`, sorted.
pub fn galvec_span(gens: &[GalVec]) -> Vec<GalVec> {
    let mut set = BTreeSet::from([GalVec::ZERO]);
    for &g in gens {
        let shifted: Vec<GalVec> = set.iter().map(|&x| x + g).collect();
        set.extend(shifted);
    }
    set.into_iter().collect()
}

/// Construction data: `b1..b5` and the free rational `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamTuple {
    pub b: [i64; 5],
    pub u: BigRat,
}

impl ParamTuple {
    pub fn new(b: [i64; 5], u: BigRat) -> Self {
        ParamTuple { b, u }
    }

    pub fn with_default_u(b: [i64; 5]) -> Self {
        ParamTuple {
            b,
            u: default_u(&b),
        }
    }

    /// `a1..a5 = (b1 b5, b2 b4, b3, b4, b5)`.
    pub fn a_values(&self) -> [BigRat; 5] {
        let b = self.b.map(|x| BigRat::from_integer(BigInt::from(x)));
        [
            &b[0] * &b[4],
            &b[1] * &b[3],
            b[2].clone(),
            b[3].clone(),
            b[4].clone(),
        ]
    }

    pub fn worked_example() -> Self {
        ParamTuple::with_default_u([-1, 17, 89, 257, 769])
    }
}

/// `u = -1 / (b4 b5)`.
pub fn default_u(b: &[i64; 5]) -> BigRat {
    -BigRat::new(BigInt::one(), BigInt::from(b[3]) * BigInt::from(b[4]))
}

impl Serialize for ParamTuple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            b: &'a [i64; 5],
            u: String,
        }
        Repr {
            b: &self.b,
            u: self.u.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ParamTuple {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            b: [i64; 5],
            u: String,
        }
        let r = Repr::deserialize(d)?;
        let u = parse_rat(&r.u).map_err(serde::de::Error::custom)?;
        Ok(ParamTuple { b: r.b, u })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ValidationFailure {
    NotSquarefree { b: i64 },
    TrivialField { b: i64 },
    Repeated { b: i64 },
    Dependent { rank: usize },
    RamifiedPrimeCount { index: usize, b: i64, primes: Vec<u64> },
    SharedRamifiedPrime { prime: u64 },
    NotLocalSquare { place: u64, index: usize, b: i64 },
}

impl fmt::Display for ValidationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationFailure::NotSquarefree { b } => write!(f, "{b} is not squarefree"),
            ValidationFailure::TrivialField { b } => write!(f, "{b} does not define a quadratic field"),
            ValidationFailure::Repeated { b } => write!(f, "{b} appears more than once"),
            ValidationFailure::Dependent { rank } => {
                write!(f, "square classes span only rank {rank}, need 5")
            }
            ValidationFailure::RamifiedPrimeCount { index, b, primes } => write!(
                f,
                "Q(sqrt({b})) (b{}) is ramified at {:?}, need exactly one prime",
                index + 1,
                primes
            ),
            ValidationFailure::SharedRamifiedPrime { prime } => {
                write!(f, "{prime} ramifies in more than one field")
            }
            ValidationFailure::NotLocalSquare { place, index, b } => write!(
                f,
                "decomposition group at {place} is not cyclic: b{} = {b} is not a square in Q_{place}",
                index + 1
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamificationInfo {
    pub b: i64,
    pub primes: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub b: [i64; 5],
    pub pass: bool,
    pub ramification: Vec<RamificationInfo>,
    pub failures: Vec<ValidationFailure>,
}

impl ValidationReport {
    pub fn summary(&self) -> String {
        if self.pass {
            return "PASS".into();
        }
        self.failures
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join("; ")
    }

    pub fn fails_at_place(&self, p: u64) -> bool {
        self.failures
            .iter()
            .any(|f| matches!(f, ValidationFailure::NotLocalSquare { place, .. } if *place == p))
    }
}

/// Square-class vectors over the primes (with `-1` as an extra generator),
/// packed into bitmasks over a shared prime index.
fn square_class_vectors(values: &[BigInt]) -> Result<Vec<u128>> {
    let mut index: Vec<BigInt> = vec![-BigInt::one()];
    let mut out = Vec::with_capacity(values.len());
    for v in values {
        let mut mask = 0u128;
        if v.is_negative() {
            mask |= 1;
        }
        for (p, e) in factorize(v)? {
            if e % 2 == 0 {
                continue;
            }
            let pos = match index.iter().position(|q| *q == p) {
                Some(pos) => pos,
                None => {
                    index.push(p);
                    index.len() - 1
                }
            };
            if pos >= 128 {
                return Err(Error::OutOfRange("more than 127 distinct primes".into()));
            }
            mask |= 1 << pos;
        }
        out.push(mask);
    }
    Ok(out)
}

fn f2_rank(vectors: &[u128]) -> usize {
    let mut basis: Vec<u128> = Vec::new();
    for &v in vectors {
        let mut x = v;
        for &b in &basis {
            x = x.min(x ^ b);
        }
        if x != 0 {
            basis.push(x);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

fn is_local_square(b: i64, p: u64) -> bool {
    if p == 2 {
        b.rem_euclid(8) == 1
    } else {
        kronecker(b, p as i64) == 1
    }
}

/// Checks that `Q(sqrt(b1), ..., sqrt(b5))` has Galois group `F_2^5` with every
/// decomposition group cyclic, through the single-ramified-prime pattern.
pub fn validate_params(b: &[i64; 5]) -> ValidationReport {
    let mut failures = Vec::new();
    let mut ramification = Vec::new();

    for (i, &x) in b.iter().enumerate() {
        if x == 0 || x == 1 {
            failures.push(ValidationFailure::TrivialField { b: x });
            continue;
        }
        match squarefree_part(&BigInt::from(x)) {
            Ok(sf) if sf == BigInt::from(x) => {}
            _ => failures.push(ValidationFailure::NotSquarefree { b: x }),
        }
        if b[..i].contains(&x) {
            failures.push(ValidationFailure::Repeated { b: x });
        }
    }
    if !failures.is_empty() {
        return ValidationReport {
            b: *b,
            pass: false,
            ramification,
            failures,
        };
    }

    let values: Vec<BigInt> = b.iter().map(|&x| BigInt::from(x)).collect();
    let rank = square_class_vectors(&values).map(|v| f2_rank(&v)).unwrap_or(0);
    if rank != 5 {
        failures.push(ValidationFailure::Dependent { rank });
    }

    let mut unique: Vec<Option<u64>> = Vec::with_capacity(5);
    for (i, &x) in b.iter().enumerate() {
        let primes = ramified_primes(x).unwrap_or_default();
        if primes.len() != 1 {
            failures.push(ValidationFailure::RamifiedPrimeCount {
                index: i,
                b: x,
                primes: primes.clone(),
            });
            unique.push(None);
        } else {
            unique.push(Some(primes[0]));
        }
        ramification.push(RamificationInfo { b: x, primes });
    }
    let mut seen = BTreeSet::new();
    for p in unique.iter().flatten() {
        if !seen.insert(*p) {
            failures.push(ValidationFailure::SharedRamifiedPrime { prime: *p });
        }
    }
    for (i, p) in unique.iter().enumerate() {
        let Some(p) = *p else { continue };
        for (j, &bj) in b.iter().enumerate() {
            if j != i && !is_local_square(bj, p) {
                failures.push(ValidationFailure::NotLocalSquare {
                    place: p,
                    index: j,
                    b: bj,
                });
            }
        }
    }

    ValidationReport {
        b: *b,
        pass: failures.is_empty(),
        ramification,
        failures,
    }
}

/// Finds `(-1, q2, q3, q4, q5)` with primes `q_i = 1 mod 8` below `bound` that
/// are pairwise quadratic residues. Seed 0 scans candidates in increasing order;
/// other seeds scan a seeded shuffle. Returns the tuple with `u = -1/(b4 b5)`.
pub fn search_params(bound: u64, seed: u64) -> Result<ParamTuple> {
    let mut candidates: Vec<u64> = (2..bound).filter(|&q| q % 8 == 1 && is_prime(q)).collect();
    if seed != 0 {
        candidates.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    let compatible = |x: u64, y: u64| kronecker(x as i64, y as i64) == 1;

    fn extend(
        chosen: &mut Vec<u64>,
        start: usize,
        candidates: &[u64],
        compatible: &dyn Fn(u64, u64) -> bool,
    ) -> bool {
        if chosen.len() == 4 {
            return true;
        }
        for k in start..candidates.len() {
            let q = candidates[k];
            if chosen.iter().all(|&c| compatible(c, q)) {
                chosen.push(q);
                if extend(chosen, k + 1, candidates, compatible) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    let mut chosen = Vec::with_capacity(4);
    if !extend(&mut chosen, 0, &candidates, &compatible) {
        return Err(Error::SearchExhausted(bound));
    }
    chosen.sort_unstable();
    let b = [
        -1,
        chosen[0] as i64,
        chosen[1] as i64,
        chosen[2] as i64,
        chosen[3] as i64,
    ];
    let report = validate_params(&b);
    if !report.pass {
        return Err(Error::Internal(format!(
            "search produced an invalid tuple {b:?}: {}",
            report.summary()
        )));
    }
    Ok(ParamTuple::with_default_u(b))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceCert {
    pub place: Place,
    /// Basis of the inertia subgroup (images of local units).
    pub inertia: Vec<GalVec>,
    /// Image of the uniformizer (the sign `-1` at the real place).
    pub frobenius: GalVec,
    /// Every element of the decomposition group.
    pub decomposition: Vec<GalVec>,
    /// A generator when the group is cyclic.
    pub generator: Option<GalVec>,
    pub cyclic: bool,
}

fn least_nonresidue(p: u64) -> i64 {
    (2..p as i64)
        .find(|&n| kronecker(n, p as i64) == -1)
        .expect("odd primes have nonresidues")
}

/// Decomposition group at `place` as the image of the local Artin map: `a` in
/// `Q_v^*` acts on `sqrt(b_j)` by the Hilbert symbol `(a, b_j)_v`.
pub fn decomposition_generator(params: &ParamTuple, place: Place) -> PlaceCert {
    let vector = |a: i64| {
        let mut bits = 0u8;
        for (j, &bj) in params.b.iter().enumerate() {
            if hilbert_symbol(a, bj, place) == -1 {
                bits |= 1 << j;
            }
        }
        GalVec(bits)
    };
    let (units, uniformizer): (Vec<i64>, i64) = match place {
        Place::Infinite => (Vec::new(), -1),
        Place::Finite(2) => (vec![-1, 5], 2),
        Place::Finite(p) => (vec![least_nonresidue(p)], p as i64),
    };
    let inertia_gens: Vec<GalVec> = units.iter().map(|&a| vector(a)).collect();
    let inertia = galvec_span(&inertia_gens)
        .into_iter()
        .filter(|g| !g.is_zero())
        .collect::<Vec<_>>();
    let frobenius = vector(uniformizer);
    let mut gens = inertia_gens;
    gens.push(frobenius);
    let decomposition = galvec_span(&gens);
    let cyclic = decomposition.len() <= 2;
    let generator = cyclic.then(|| *decomposition.last().expect("contains zero"));
    PlaceCert {
        place,
        inertia,
        frobenius,
        decomposition,
        generator,
        cyclic,
    }
}

/// Whether the square classes of `a1..a6` span the same subgroup of
/// `Q^* / (Q^*)^2` as `b1..b5`.
pub fn splitting_field_check(a: &[BigRat; 6], b: &[i64; 5]) -> Result<bool> {
    let mut values: Vec<BigInt> = Vec::with_capacity(11);
    for x in a {
        if x.is_zero() {
            return Err(Error::DegenerateParameters("a_i = 0".into()));
        }
        values.push(x.numer() * x.denom());
    }
    values.extend(b.iter().map(|&x| BigInt::from(x)));
    let vectors = square_class_vectors(&values)?;
    let rank_a = f2_rank(&vectors[..6]);
    let rank_b = f2_rank(&vectors[6..]);
    let rank_all = f2_rank(&vectors);
    Ok(rank_a == rank_b && rank_b == rank_all)
}

/// Ramified primes of the tuple followed by 2, then every other prime up to
/// `bound`, then the real place. No duplicates.
pub fn sampled_places(b: &[i64; 5], bound: u64, extra: &[Place]) -> Vec<Place> {
    let mut finite: BTreeSet<u64> = BTreeSet::new();
    for &x in b {
        if let Ok(ps) = ramified_primes(x) {
            finite.extend(ps);
        }
    }
    finite.insert(2);
    finite.extend((2..=bound).filter(|&p| is_prime(p)));
    let mut places: Vec<Place> = finite.into_iter().map(Place::Finite).collect();
    for p in extra {
        if !places.contains(p) {
            places.push(*p);
        }
    }
    places.retain(|p| *p != Place::Infinite);
    places.sort();
    places.push(Place::Infinite);
    places
}

pub(crate) fn parse_b_list(text: &str) -> Result<[i64; 5]> {
    let values: Vec<i64> = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad integer {s:?}")))
        })
        .collect::<Result<_>>()?;
    values
        .try_into()
        .map_err(|v: Vec<i64>| Error::Parse(format!("expected 5 values, got {}", v.len())))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Euler-style residue oracle for an odd prime or small odd modulus.
    fn legendre_brute(a: i64, p: i64) -> i32 {
        let r = a.rem_euclid(p);
        if r == 0 {
            return 0;
        }
        if (1..p).any(|x| (x * x) % p == r) {
            1
        } else {
            -1
        }
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(17, 89), 1);
        assert_eq!(kronecker(2, 7), 1);
        for a in -20..20 {
            assert_eq!(kronecker(a, 1), 1);
        }
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(kronecker(-1, 3), -1);
        assert_eq!(kronecker(6, 9), 0);
    }

    #[test]
    fn kronecker_matches_residues_for_odd_primes() {
        for p in [3i64, 5, 7, 11, 13, 17, 89, 257] {
            for a in -60..60 {
                assert_eq!(kronecker(a, p), legendre_brute(a, p), "a={a} p={p}");
            }
        }
    }

    #[test]
    fn ramified_prime_examples() {
        assert_eq!(ramified_primes(-1).unwrap(), vec![2]);
        assert_eq!(ramified_primes(17).unwrap(), vec![17]);
        assert_eq!(ramified_primes(3).unwrap(), vec![2, 3]);
        assert_eq!(ramified_primes(-15).unwrap(), vec![3, 5]);
    }

    #[test]
    fn hilbert_symbol_sanity() {
        // (-1, -1)_2 = -1, (2, 5)_5 = (2|5) = -1, (-1, 17)_17 = 1
        assert_eq!(hilbert_symbol(-1, -1, Place::Finite(2)), -1);
        assert_eq!(hilbert_symbol(2, 5, Place::Finite(5)), -1);
        assert_eq!(hilbert_symbol(-1, 17, Place::Finite(17)), 1);
        assert_eq!(hilbert_symbol(-1, -1, Place::Infinite), -1);
        // product formula over all places
        for (a, b) in [(-1i64, 17i64), (3, 5), (-6, 35), (2, -1), (7, 11), (-3, -5)] {
            let mut places: Vec<Place> = vec![Place::Infinite];
            places.extend([2u64, 3, 5, 7, 11, 13, 17].map(Place::Finite));
            let prod: i32 = places.iter().map(|&v| hilbert_symbol(a, b, v)).product();
            assert_eq!(prod, 1, "({a}, {b})");
        }
    }

    #[test]
    fn worked_tuple_validates() {
        let r = validate_params(&[-1, 17, 89, 257, 769]);
        assert!(r.pass, "{}", r.summary());
    }

    #[test]
    fn perturbed_tuples_fail_for_the_stated_reasons() {
        let r = validate_params(&[-1, 5, 89, 257, 769]);
        assert!(!r.pass);
        assert!(r.fails_at_place(2), "{}", r.summary());
        let r = validate_params(&[-1, 3, 89, 257, 769]);
        assert!(!r.pass);
        assert!(r.failures.iter().any(|f| matches!(
            f,
            ValidationFailure::RamifiedPrimeCount { b: 3, primes, .. } if primes == &vec![2, 3]
        )));
    }

    #[test]
    fn search_examples() {
        let t = search_params(1000, 0).unwrap();
        assert!(validate_params(&t.b).pass);
        assert!(matches!(search_params(30, 0), Err(Error::SearchExhausted(30))));
        for seed in 1..6 {
            let t = search_params(2000, seed).unwrap();
            assert!(validate_params(&t.b).pass);
        }
    }

    #[test]
    fn decomposition_examples_for_worked_tuple() {
        let params = ParamTuple::worked_example();
        let c3 = decomposition_generator(&params, Place::Finite(3));
        assert_eq!(c3.generator, Some(GalVec::from_coords([1, 1, 1, 1, 0])));
        assert!(c3.inertia.is_empty());
        let c17 = decomposition_generator(&params, Place::Finite(17));
        assert_eq!(c17.decomposition, vec![GalVec::ZERO, GalVec::unit(1)]);
        assert!(c17.cyclic);
        let inf = decomposition_generator(&params, Place::Infinite);
        assert_eq!(inf.generator, Some(GalVec::from_coords([1, 0, 0, 0, 0])));
    }

    #[test]
    fn splitting_field_examples() {
        let params = ParamTuple::worked_example();
        let a5 = params.a_values();
        let a6 = a5.iter().product::<BigRat>() * &params.u * &params.u;
        let a = [
            a5[0].clone(),
            a5[1].clone(),
            a5[2].clone(),
            a5[3].clone(),
            a5[4].clone(),
            a6,
        ];
        assert!(splitting_field_check(&a, &params.b).unwrap());
        let b = params.b;
        let bb = b.map(|x| BigRat::from_integer(BigInt::from(x)));
        let prod: BigRat = bb.iter().product();
        let same = [
            bb[0].clone(),
            bb[1].clone(),
            bb[2].clone(),
            bb[3].clone(),
            bb[4].clone(),
            prod,
        ];
        assert!(splitting_field_check(&same, &b).unwrap());
        let squares = [4, 9, 25, 1, 49, 121].map(|x| BigRat::from_integer(BigInt::from(x)));
        assert!(!splitting_field_check(&squares, &b).unwrap());
    }

    #[test]
    fn place_parsing() {
        assert_eq!("inf".parse::<Place>().unwrap(), Place::Infinite);
        assert_eq!("17".parse::<Place>().unwrap(), Place::Finite(17));
        assert!("15".parse::<Place>().is_err());
    }
}
