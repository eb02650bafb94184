//! The symplectic space `F_2^6`, its 64 quadratic forms and the group `Sp_6(F_2)`.
//!
//! Vectors are 6-bit masks in the basis order `(e1, e2, e3, f1, f2, f3)`, so bit
//! `i` for `i < 3` is the `e_{i+1}` coordinate and bit `i + 3` is `f_{i+1}`.
//! The Gram matrix is `[[0, I3], [I3, 0]]`.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Order of `Sp_6(F_2)`.
pub const SP6_ORDER: usize = 1_451_520;

/// Bitmask over form indices selecting forms of Arf invariant 0.
pub const EVEN_FORMS: u64 = forms_with_arf(0);
/// Bitmask over form indices selecting forms of Arf invariant 1.
pub const ODD_FORMS: u64 = forms_with_arf(1);

const fn forms_with_arf(parity: u8) -> u64 {
    let mut mask = 0u64;
    let mut q = 0u8;
    while q < 64 {
        if ((q & 7) & (q >> 3)).count_ones() as u8 & 1 == parity {
            mask |= 1 << q;
        }
        q += 1;
    }
    mask
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct F2Vec6(u8);

impl F2Vec6 {
    pub const ZERO: F2Vec6 = F2Vec6(0);

    pub fn new(bits: u8) -> Self {
        assert!(bits < 64, "F2Vec6 has 6 coordinates");
        F2Vec6(bits)
    }

    /// `e_i` for `i` in `1..=3`.
    pub fn e(i: usize) -> Self {
        assert!((1..=3).contains(&i));
        F2Vec6(1 << (i - 1))
    }

    /// `f_i` for `i` in `1..=3`.
    pub fn f(i: usize) -> Self {
        assert!((1..=3).contains(&i));
        F2Vec6(1 << (i + 2))
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn all() -> impl Iterator<Item = F2Vec6> {
        (0..64).map(F2Vec6)
    }

    pub fn nonzero() -> impl Iterator<Item = F2Vec6> {
        (1..64).map(F2Vec6)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl std::ops::Add for F2Vec6 {
    type Output = F2Vec6;
    fn add(self, rhs: F2Vec6) -> F2Vec6 {
        F2Vec6(self.0 ^ rhs.0)
    }
}

impl fmt::Display for F2Vec6 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..6 {
            write!(f, "{}", (self.0 >> i) & 1)?;
        }
        Ok(())
    }
}

#[inline]
fn pairing_bits(x: u8, y: u8) -> u8 {
    let cross = ((x & 7) & (y >> 3)) ^ ((x >> 3) & (y & 7));
    (cross.count_ones() & 1) as u8
}

/// The standard symplectic pairing on `F_2^6`.
pub fn pairing(x: F2Vec6, y: F2Vec6) -> u8 {
    pairing_bits(x.0, y.0)
}

/// A quadratic form whose polar form is the standard pairing, stored by its
/// values on the six basis vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuadForm(u8);

impl QuadForm {
    pub fn from_basis_values(bits: u8) -> Self {
        assert!(bits < 64, "a quadratic form is fixed by 6 basis values");
        QuadForm(bits)
    }

    /// Index in `0..64`, equal to the basis-value bitmask.
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn basis_values(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = QuadForm> {
        (0..64).map(QuadForm)
    }

    pub fn eval(self, x: F2Vec6) -> u8 {
        eval_bits(self.0, x.0)
    }

    pub fn arf(self) -> u8 {
        (((self.0 & 7) & (self.0 >> 3)).count_ones() & 1) as u8
    }

    pub fn is_even(self) -> bool {
        self.arf() == 0
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        F2Vec6(self.0).fmt(f)
    }
}

// Q(x) = sum x_i Q(b_i) + sum_{i<j} x_i x_j <b_i, b_j>, and the only
// nonzero pairings among basis vectors are <e_k, f_k>.
#[inline]
fn eval_bits(q: u8, x: u8) -> u8 {
    let linear = (x & q).count_ones();
    let cross = ((x & 7) & (x >> 3)).count_ones();
    ((linear + cross) & 1) as u8
}

pub fn eval_form(q: QuadForm, x: F2Vec6) -> u8 {
    q.eval(x)
}

pub fn arf(q: QuadForm) -> u8 {
    q.arf()
}

/// Parity class of quadratic forms: `Plus` is Arf 0, `Minus` is Arf 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn mask(self) -> u64 {
        match self {
            Sign::Plus => EVEN_FORMS,
            Sign::Minus => ODD_FORMS,
        }
    }

    pub fn arf(self) -> u8 {
        match self {
            Sign::Plus => 0,
            Sign::Minus => 1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Clone, Debug)]
pub struct FormSet {
    pub omega_plus: Vec<QuadForm>,
    pub omega_minus: Vec<QuadForm>,
}

pub fn all_forms() -> FormSet {
    let (omega_plus, omega_minus) = QuadForm::all().partition(|q| q.is_even());
    FormSet {
        omega_plus,
        omega_minus,
    }
}

pub fn forms_in_mask(mask: u64) -> Vec<QuadForm> {
    QuadForm::all().filter(|q| mask >> q.0 & 1 == 1).collect()
}

/// An element of `Sp_6(F_2)`, acting on column vectors. Column `j` (the image of
/// basis vector `j`) occupies bits `6j..6j+6` of the encoding.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SpElement(u64);

impl fmt::Debug for SpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SpElement({:#011x})", self.0)
    }
}

impl fmt::Display for SpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:09x}", self.0)
    }
}

impl SpElement {
    pub const IDENTITY: SpElement = SpElement(
        1 | (2 << 6) | (4 << 12) | (8 << 18) | (16 << 24) | (32 << 30),
    );

    pub fn from_columns(cols: [F2Vec6; 6]) -> Self {
        let mut enc = 0u64;
        for (j, c) in cols.iter().enumerate() {
            enc |= (c.0 as u64) << (6 * j);
        }
        SpElement(enc)
    }

    /// Rebuilds an element from its 36-bit encoding, checking it is symplectic.
    pub fn from_encoding(enc: u64) -> Option<Self> {
        if enc >> 36 != 0 {
            return None;
        }
        let g = SpElement(enc);
        g.is_symplectic().then_some(g)
    }

    pub fn encoding(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn column(self, j: usize) -> F2Vec6 {
        F2Vec6(((self.0 >> (6 * j)) & 63) as u8)
    }

    pub fn columns(self) -> [F2Vec6; 6] {
        std::array::from_fn(|j| self.column(j))
    }

    /// The transvection `x -> x + <x, v> v`.
    pub fn transvection(v: F2Vec6) -> Self {
        let cols = std::array::from_fn(|j| {
            let b = F2Vec6(1 << j);
            if pairing(b, v) == 1 {
                b + v
            } else {
                b
            }
        });
        SpElement::from_columns(cols)
    }

    #[inline]
    pub fn apply(self, x: F2Vec6) -> F2Vec6 {
        let mut out = 0u8;
        let mut bits = x.0;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            out ^= ((self.0 >> (6 * j)) & 63) as u8;
            bits &= bits - 1;
        }
        F2Vec6(out)
    }

    /// Composition `self ∘ rhs` (apply `rhs` first).
    #[inline]
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, rhs: SpElement) -> SpElement {
        let mut enc = 0u64;
        for j in 0..6 {
            enc |= (self.apply(rhs.column(j)).0 as u64) << (6 * j);
        }
        SpElement(enc)
    }

    /// For a symplectic `g`, `g^{-1} = J g^T J`.
    pub fn inverse(self) -> SpElement {
        let swap = |i: usize| (i + 3) % 6;
        let mut enc = 0u64;
        for j in 0..6 {
            let mut col = 0u8;
            for i in 0..6 {
                // entry (i, j) of J g^T J is entry (swap j, swap i) of g
                let bit = (self.column(swap(i)).0 >> swap(j)) & 1;
                col |= bit << i;
            }
            enc |= (col as u64) << (6 * j);
        }
        SpElement(enc)
    }

    pub fn conjugate_by(self, s: SpElement) -> SpElement {
        s.mul(self).mul(s.inverse())
    }

    /// Gram identity `<g b_i, g b_j> = <b_i, b_j>` on all basis pairs.
    pub fn is_symplectic(self) -> bool {
        for i in 0..6 {
            for j in (i + 1)..6 {
                let expected = pairing_bits(1 << i, 1 << j);
                if pairing(self.column(i), self.column(j)) != expected {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_identity(self) -> bool {
        self == SpElement::IDENTITY
    }

    pub fn order(self) -> usize {
        let mut x = self;
        let mut n = 1;
        while !x.is_identity() {
            x = x.mul(self);
            n += 1;
        }
        n
    }

    /// Bitmask over form indices of the forms fixed by this element.
    pub fn fixed_form_mask(self) -> u64 {
        // g.Q = Q iff Q(g b_k) = Q(b_k) for every basis vector b_k.
        let cols = self.columns();
        let mut mask = 0u64;
        for q in 0..64u8 {
            if (0..6).all(|k| eval_bits(q, cols[k].0) == (q >> k) & 1) {
                mask |= 1 << q;
            }
        }
        mask
    }
}

/// The left action `(g.Q)(x) = Q(g^{-1} x)`.
pub fn act(g: SpElement, q: QuadForm) -> QuadForm {
    let inv = g.inverse();
    let mut bits = 0u8;
    for k in 0..6 {
        bits |= eval_bits(q.0, inv.column(k).0) << k;
    }
    QuadForm(bits)
}

pub fn fixed_forms(g: SpElement, sign: Sign) -> Vec<QuadForm> {
    forms_in_mask(g.fixed_form_mask() & sign.mask())
}

/// The full group as a sorted table of encodings.
#[derive(Clone, Debug)]
pub struct GroupTable {
    pub elements: Vec<SpElement>,
    pub generators: Vec<SpElement>,
}

impl GroupTable {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: SpElement) -> bool {
        self.elements.binary_search(&g).is_ok()
    }
}

/// Transvections that generate `Sp_6(F_2)`.
pub fn sp6_generators() -> Vec<SpElement> {
    let e = F2Vec6::e;
    let f = F2Vec6::f;
    [e(1), e(2), e(3), f(1), f(2), f(3), e(1) + e(2), e(2) + e(3)]
        .into_iter()
        .map(SpElement::transvection)
        .collect()
}

/// Enumerates `Sp_6(F_2)` as the set of matrices whose columns form a symplectic
/// basis `(e1', e2', e3', f1', f2', f3')`.
pub fn generate_sp6() -> GroupTable {
    fn extend(chosen: &mut Vec<(F2Vec6, F2Vec6)>, out: &mut Vec<SpElement>) {
        if chosen.len() == 3 {
            let cols = [
                chosen[0].0,
                chosen[1].0,
                chosen[2].0,
                chosen[0].1,
                chosen[1].1,
                chosen[2].1,
            ];
            out.push(SpElement::from_columns(cols));
            return;
        }
        let orthogonal = |v: F2Vec6, chosen: &[(F2Vec6, F2Vec6)]| {
            chosen
                .iter()
                .all(|&(a, b)| pairing(v, a) == 0 && pairing(v, b) == 0)
        };
        for e in F2Vec6::nonzero() {
            if !orthogonal(e, chosen) {
                continue;
            }
            for f in F2Vec6::nonzero() {
                if pairing(e, f) == 1 && orthogonal(f, chosen) {
                    chosen.push((e, f));
                    extend(chosen, out);
                    chosen.pop();
                }
            }
        }
    }

    let mut elements = Vec::with_capacity(SP6_ORDER);
    extend(&mut Vec::with_capacity(3), &mut elements);
    elements.sort_unstable();
    GroupTable {
        elements,
        generators: sp6_generators(),
    }
}

/// Shared copy of the full group table.
pub fn sp6() -> &'static GroupTable {
    static TABLE: OnceLock<GroupTable> = OnceLock::new();
    TABLE.get_or_init(generate_sp6)
}

/// Breadth-first closure of a finite set of generators; the result is sorted.
pub fn closure(generators: &[SpElement]) -> Vec<SpElement> {
    let mut seen: HashSet<SpElement> = HashSet::new();
    seen.insert(SpElement::IDENTITY);
    let mut queue = VecDeque::from([SpElement::IDENTITY]);
    while let Some(x) = queue.pop_front() {
        for &s in generators {
            let y = x.mul(s);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<SpElement> = seen.into_iter().collect();
    out.sort_unstable();
    out
}

pub fn form_orbit(q: QuadForm, generators: &[SpElement]) -> Vec<QuadForm> {
    let mut seen = 1u64 << q.0;
    let mut queue = VecDeque::from([q]);
    while let Some(x) = queue.pop_front() {
        for &s in generators {
            let y = act(s, x);
            if seen >> y.0 & 1 == 0 {
                seen |= 1 << y.0;
                queue.push_back(y);
            }
        }
    }
    forms_in_mask(seen)
}

pub fn vector_orbit(v: F2Vec6, generators: &[SpElement]) -> Vec<F2Vec6> {
    let mut seen = 1u64 << v.0;
    let mut queue = VecDeque::from([v]);
    while let Some(x) = queue.pop_front() {
        for &s in generators {
            let y = s.apply(x);
            if seen >> y.0 & 1 == 0 {
                seen |= 1 << y.0;
                queue.push_back(y);
            }
        }
    }
    F2Vec6::all().filter(|x| seen >> x.0 & 1 == 1).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StabTarget {
    Form(QuadForm),
    Vector(F2Vec6),
}

/// Elements of the full group fixing `target`, in sorted order.
pub fn stabilizer_elements(target: StabTarget) -> Result<Vec<SpElement>> {
    let table = sp6();
    match target {
        StabTarget::Vector(v) if v.is_zero() => Err(Error::ZeroVector),
        StabTarget::Vector(v) => Ok(table
            .elements
            .iter()
            .copied()
            .filter(|g| g.apply(v) == v)
            .collect()),
        StabTarget::Form(q) => Ok(table
            .elements
            .iter()
            .copied()
            .filter(|g| g.fixed_form_mask() >> q.0 & 1 == 1)
            .collect()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_on_basis() {
        for i in 1..=3 {
            for j in 1..=3 {
                assert_eq!(pairing(F2Vec6::e(i), F2Vec6::f(j)), (i == j) as u8);
                assert_eq!(pairing(F2Vec6::f(j), F2Vec6::e(i)), (i == j) as u8);
                assert_eq!(pairing(F2Vec6::e(i), F2Vec6::e(j)), 0);
                assert_eq!(pairing(F2Vec6::f(i), F2Vec6::f(j)), 0);
            }
        }
        for x in F2Vec6::all() {
            assert_eq!(pairing(x, x), 0);
        }
    }

    #[test]
    fn eval_examples() {
        let zero = QuadForm::from_basis_values(0);
        assert_eq!(zero.eval(F2Vec6::e(1) + F2Vec6::f(1)), 1);
        let q = QuadForm::from_basis_values(0b000001);
        assert_eq!(q.eval(F2Vec6::e(1) + F2Vec6::e(2)), 1);
        for q in QuadForm::all() {
            assert_eq!(q.eval(F2Vec6::ZERO), 0);
            for k in 0..6 {
                assert_eq!(q.eval(F2Vec6::new(1 << k)), (q.0 >> k) & 1);
            }
        }
    }

    #[test]
    fn polarization_identity_holds_for_every_form() {
        for q in QuadForm::all() {
            for x in F2Vec6::all() {
                for y in F2Vec6::all() {
                    assert_eq!(q.eval(x + y) ^ q.eval(x) ^ q.eval(y), pairing(x, y));
                }
            }
        }
    }

    #[test]
    fn arf_examples_and_counts() {
        assert_eq!(QuadForm::from_basis_values(0).arf(), 0);
        assert_eq!(QuadForm::from_basis_values(0b001001).arf(), 1);
        let forms = all_forms();
        assert_eq!(forms.omega_plus.len(), 36);
        assert_eq!(forms.omega_minus.len(), 28);
        assert_eq!(EVEN_FORMS.count_ones(), 36);
        assert_eq!(ODD_FORMS.count_ones(), 28);
        assert_eq!(EVEN_FORMS & ODD_FORMS, 0);
    }

    #[test]
    fn inverse_and_identity() {
        let t = SpElement::transvection(F2Vec6::e(1) + F2Vec6::f(2));
        assert!(t.is_symplectic());
        assert!(t.mul(t).is_identity());
        assert_eq!(t.order(), 2);
        let g = sp6_generators()
            .into_iter()
            .fold(SpElement::IDENTITY, |acc, s| acc.mul(s));
        assert!(g.mul(g.inverse()).is_identity());
        assert!(g.inverse().mul(g).is_identity());
        assert_eq!(SpElement::from_encoding(g.encoding()), Some(g));
    }

    #[test]
    fn transvection_fixed_point_law() {
        for v in F2Vec6::nonzero() {
            let t = SpElement::transvection(v);
            let mask = t.fixed_form_mask();
            for q in QuadForm::all() {
                assert_eq!(mask >> q.index() & 1 == 1, q.eval(v) == 1, "v={v} q={q}");
                assert_eq!(act(t, q) == q, q.eval(v) == 1);
            }
        }
    }

    #[test]
    fn transvection_e1_fixes_sixteen_of_each_parity() {
        let t = SpElement::transvection(F2Vec6::e(1));
        assert_eq!(fixed_forms(t, Sign::Minus).len(), 16);
        assert_eq!(fixed_forms(t, Sign::Plus).len(), 16);
        assert_eq!(fixed_forms(SpElement::IDENTITY, Sign::Minus).len(), 28);
    }

    #[test]
    fn identity_acts_trivially() {
        for q in QuadForm::all() {
            assert_eq!(act(SpElement::IDENTITY, q), q);
        }
    }

    #[test]
    fn orbits_under_generators() {
        let gens = sp6_generators();
        let odd = QuadForm::from_basis_values(0b001001);
        assert_eq!(form_orbit(odd, &gens), all_forms().omega_minus);
        assert_eq!(form_orbit(QuadForm::from_basis_values(0), &gens).len(), 36);
        assert_eq!(vector_orbit(F2Vec6::e(1), &gens).len(), 63);
    }

    #[test]
    fn zero_vector_has_no_stabilizer() {
        assert!(matches!(
            stabilizer_elements(StabTarget::Vector(F2Vec6::ZERO)),
            Err(Error::ZeroVector)
        ));
    }
}
