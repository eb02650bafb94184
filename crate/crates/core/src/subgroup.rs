//! Subgroups of `Sp_6(F_2)` given by explicit element lists: closure, the
//! fixed-point conditions on even and odd forms, Sylow 2-subgroups, and
//! classification of elementary abelian subgroups of order 32.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symplectic::{
    closure, forms_in_mask, sp6, stabilizer_elements, F2Vec6, QuadForm, Sign, SpElement,
    StabTarget, SP6_ORDER,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    /// Sorted by encoding.
    pub elements: Vec<SpElement>,
    pub generators: Vec<SpElement>,
    pub ambient_order: usize,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: SpElement) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn full() -> Subgroup {
        let table = sp6();
        Subgroup {
            elements: table.elements.clone(),
            generators: table.generators.clone(),
            ambient_order: SP6_ORDER,
        }
    }

    /// Wraps a sorted, closed element list and picks a small generating set.
    pub fn from_elements(mut elements: Vec<SpElement>, ambient_order: usize) -> Subgroup {
        elements.sort_unstable();
        elements.dedup();
        let generators = greedy_generators(&elements);
        Subgroup {
            elements,
            generators,
            ambient_order,
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|&a| self.generators.iter().all(|&b| a.mul(b) == b.mul(a)))
    }

    pub fn is_elementary_abelian_2(&self) -> bool {
        self.elements.iter().all(|g| g.mul(*g).is_identity()) && self.is_abelian()
    }

    pub fn conjugate(&self, s: SpElement) -> Vec<SpElement> {
        let inv = s.inverse();
        let mut out: Vec<SpElement> = self.elements.iter().map(|&h| s.mul(h).mul(inv)).collect();
        out.sort_unstable();
        out
    }

    /// A basis of an elementary abelian 2-group: scan elements in sorted order
    /// and keep each one not yet in the span of those already kept.
    pub fn canonical_basis(&self) -> Vec<SpElement> {
        let mut span: Vec<SpElement> = vec![SpElement::IDENTITY];
        let mut basis = Vec::new();
        for &g in &self.elements {
            if span.contains(&g) {
                continue;
            }
            let shifted: Vec<SpElement> = span.iter().map(|&h| h.mul(g)).collect();
            span.extend(shifted);
            basis.push(g);
        }
        basis
    }
}

fn greedy_generators(elements: &[SpElement]) -> Vec<SpElement> {
    let mut order: Vec<SpElement> = elements.to_vec();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(0x5eed));
    let mut gens = Vec::new();
    let mut current: Vec<SpElement> = vec![SpElement::IDENTITY];
    for g in order {
        if current.len() == elements.len() {
            break;
        }
        if current.binary_search(&g).is_err() {
            gens.push(g);
            current = closure(&gens);
        }
    }
    gens
}

pub fn subgroup_closure(generators: &[SpElement]) -> Subgroup {
    Subgroup {
        elements: closure(generators),
        generators: generators.to_vec(),
        ambient_order: SP6_ORDER,
    }
}

/// Stabilizer of an even form (index 36), an odd form (index 28) or a nonzero
/// vector (index 63).
pub fn stabilizer_subgroup(target: StabTarget) -> Result<Subgroup> {
    Ok(Subgroup::from_elements(stabilizer_elements(target)?, SP6_ORDER))
}

/// Which bullet of the fixed-point condition a subgroup fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum StarVerdict {
    Pass,
    /// Some form of the given parity is fixed by every element.
    CommonFixedForm,
    /// This element fixes no form of the given parity.
    ElementWithoutFixedForm { element: SpElement },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementCount {
    pub element: SpElement,
    pub fixed: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CondReport {
    pub sign: Sign,
    pub common_fixed: Vec<QuadForm>,
    pub per_element_fixed_counts: Vec<ElementCount>,
    pub verdict: StarVerdict,
}

impl CondReport {
    pub fn passed(&self) -> bool {
        self.verdict == StarVerdict::Pass
    }

    /// Recomputes the verdict from the stored sets alone.
    pub fn rederive_verdict(&self) -> StarVerdict {
        if !self.common_fixed.is_empty() {
            return StarVerdict::CommonFixedForm;
        }
        match self.per_element_fixed_counts.iter().find(|c| c.fixed == 0) {
            Some(c) => StarVerdict::ElementWithoutFixedForm { element: c.element },
            None => StarVerdict::Pass,
        }
    }
}

/// Evaluates the fixed-point condition of the given sign on every element of `group`.
pub fn check_star(group: &Subgroup, sign: Sign) -> CondReport {
    let parity = sign.mask();
    let mut common = parity;
    let mut counts = Vec::with_capacity(group.order());
    for &g in &group.elements {
        let fixed = g.fixed_form_mask() & parity;
        common &= fixed;
        counts.push(ElementCount {
            element: g,
            fixed: fixed.count_ones(),
        });
    }
    let mut report = CondReport {
        sign,
        common_fixed: forms_in_mask(common),
        per_element_fixed_counts: counts,
        verdict: StarVerdict::Pass,
    };
    report.verdict = report.rederive_verdict();
    report
}

fn two_part(n: usize) -> usize {
    1 << n.trailing_zeros()
}

/// A Sylow 2-subgroup of `group`, grown one factor of 2 at a time by
/// adjoining an element that normalizes the current 2-subgroup and squares into it.
pub fn sylow2(group: &Subgroup) -> Result<Subgroup> {
    let target = two_part(group.order());
    let mut gens: Vec<SpElement> = Vec::new();
    let mut current = vec![SpElement::IDENTITY];
    while current.len() < target {
        let contains = |set: &[SpElement], x: SpElement| set.binary_search(&x).is_ok();
        let found = group.elements.iter().copied().find(|&g| {
            if contains(&current, g) || !contains(&current, g.mul(g)) {
                return false;
            }
            let inv = g.inverse();
            gens.iter().all(|&h| contains(&current, g.mul(h).mul(inv)))
        });
        let Some(g) = found else {
            return Err(Error::SylowStalled {
                order: current.len(),
                target,
            });
        };
        gens.push(g);
        current = closure(&gens);
    }
    if current.len() != target {
        return Err(Error::Internal(format!(
            "2-subgroup overshot: order {} for 2-part {target}",
            current.len()
        )));
    }
    Ok(Subgroup {
        elements: current,
        generators: gens,
        ambient_order: group.order(),
    })
}

/// All subgroups of the 2-group `p` isomorphic to `F_2^5`, in sorted order.
pub fn enumerate_ea32(p: &Subgroup) -> Vec<Subgroup> {
    let involutions: Vec<SpElement> = p
        .elements
        .iter()
        .copied()
        .filter(|g| !g.is_identity() && g.mul(*g).is_identity())
        .collect();

    // layer k holds each elementary abelian subgroup of order 2^k once,
    // keyed by its sorted element list and carrying a basis
    let mut layer: HashMap<Vec<SpElement>, Vec<SpElement>> = HashMap::new();
    layer.insert(vec![SpElement::IDENTITY], Vec::new());
    for _ in 0..5 {
        let mut next: HashMap<Vec<SpElement>, Vec<SpElement>> = HashMap::new();
        for (elements, basis) in &layer {
            for &t in &involutions {
                if elements.binary_search(&t).is_ok()
                    || !basis.iter().all(|&b| b.mul(t) == t.mul(b))
                {
                    continue;
                }
                let mut grown: Vec<SpElement> = elements
                    .iter()
                    .flat_map(|&h| [h, h.mul(t)])
                    .collect();
                grown.sort_unstable();
                next.entry(grown).or_insert_with(|| {
                    let mut b = basis.clone();
                    b.push(t);
                    b
                });
            }
        }
        layer = next;
    }
    let mut out: Vec<Subgroup> = layer
        .into_iter()
        .map(|(elements, generators)| Subgroup {
            elements,
            generators,
            ambient_order: p.order(),
        })
        .collect();
    out.sort_by(|a, b| a.elements.cmp(&b.elements));
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AmbientLabel {
    Sp6,
    U63,
    U36,
}

impl fmt::Display for AmbientLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AmbientLabel::Sp6 => "sp6",
            AmbientLabel::U63 => "u63",
            AmbientLabel::U36 => "u36",
        })
    }
}

impl std::str::FromStr for AmbientLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sp6" => Ok(AmbientLabel::Sp6),
            "u63" => Ok(AmbientLabel::U63),
            "u36" => Ok(AmbientLabel::U36),
            other => Err(Error::Parse(format!("unknown ambient group {other:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct EAClass {
    /// Lexicographically least element list over the conjugacy class.
    pub representative: Subgroup,
    pub ambient_label: AmbientLabel,
    pub orbit_size: usize,
    pub normalizer_order: usize,
}

/// Partitions `subs` into classes under conjugation by `ambient`. Each orbit is
/// closed completely under the ambient generators, so representatives of
/// different classes are certified non-conjugate.
pub fn classify_up_to_conjugacy(
    subs: &[Subgroup],
    ambient: &Subgroup,
    label: AmbientLabel,
) -> Vec<EAClass> {
    let mut assigned: HashSet<&[SpElement]> = HashSet::new();
    let mut classes = Vec::new();
    for sub in subs {
        if assigned.contains(sub.elements.as_slice()) {
            continue;
        }
        let mut orbit: HashSet<Vec<SpElement>> = HashSet::new();
        orbit.insert(sub.elements.clone());
        let mut queue = VecDeque::from([sub.elements.clone()]);
        let inverses: Vec<SpElement> = ambient.generators.iter().map(|s| s.inverse()).collect();
        while let Some(h) = queue.pop_front() {
            for (&s, &inv) in ambient.generators.iter().zip(&inverses) {
                let mut c: Vec<SpElement> = h.iter().map(|&x| s.mul(x).mul(inv)).collect();
                c.sort_unstable();
                if !orbit.contains(&c) {
                    orbit.insert(c.clone());
                    queue.push_back(c);
                }
            }
        }
        for other in subs {
            if orbit.contains(&other.elements) {
                assigned.insert(other.elements.as_slice());
            }
        }
        let representative = orbit.iter().min().cloned().expect("orbit is nonempty");
        classes.push(EAClass {
            representative: Subgroup::from_elements(representative, ambient.order()),
            ambient_label: label,
            orbit_size: orbit.len(),
            normalizer_order: ambient.order() / orbit.len(),
        });
    }
    classes.sort_by(|a, b| a.representative.elements.cmp(&b.representative.elements));
    classes
}

/// Ambient group for a label: the full group, the stabilizer of `e1`, or the
/// stabilizer of the zero form (which is even).
pub fn ambient_group(label: AmbientLabel) -> Result<Subgroup> {
    match label {
        AmbientLabel::Sp6 => Ok(Subgroup::full()),
        AmbientLabel::U63 => stabilizer_subgroup(StabTarget::Vector(F2Vec6::e(1))),
        AmbientLabel::U36 => {
            stabilizer_subgroup(StabTarget::Form(QuadForm::from_basis_values(0)))
        }
    }
}

/// Conjugacy classes of `F_2^5` subgroups of the ambient group.
pub fn ea32_classes(label: AmbientLabel) -> Result<Vec<EAClass>> {
    let ambient = ambient_group(label)?;
    let sylow = sylow2(&ambient)?;
    let subs = enumerate_ea32(&sylow);
    Ok(classify_up_to_conjugacy(&subs, &ambient, label))
}

/// The first class representative (in canonical order) of `F_2^5` inside the
/// stabilizer of `e1` that passes both fixed-point conditions.
pub fn pick_certified_e() -> Result<Subgroup> {
    static PICKED: OnceLock<std::result::Result<Subgroup, String>> = OnceLock::new();
    PICKED
        .get_or_init(|| {
            let classes = ea32_classes(AmbientLabel::U63).map_err(|e| e.to_string())?;
            classes
                .into_iter()
                .map(|c| c.representative)
                .find(|e| check_star(e, Sign::Minus).passed() && check_star(e, Sign::Plus).passed())
                .map(|e| {
                    let generators = e.canonical_basis();
                    Subgroup { generators, ..e }
                })
                .ok_or_else(|| Error::NoCertifiedSubgroup.to_string())
        })
        .clone()
        .map_err(|msg| {
            if msg == Error::NoCertifiedSubgroup.to_string() {
                Error::NoCertifiedSubgroup
            } else {
                Error::Internal(msg)
            }
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::{fixed_forms, sp6_generators};

    fn t(v: u8) -> SpElement {
        SpElement::transvection(F2Vec6::new(v))
    }

    #[test]
    fn closure_small_cases() {
        assert_eq!(subgroup_closure(&[]).order(), 1);
        assert_eq!(subgroup_closure(&[t(1)]).order(), 2);
        // transvections along a totally isotropic plane commute
        let g = subgroup_closure(&[t(1), t(2), t(3)]);
        assert_eq!(g.order(), 8);
        assert!(g.is_elementary_abelian_2());
    }

    #[test]
    fn trivial_group_fails_minus_on_common_fixed_forms() {
        let report = check_star(&subgroup_closure(&[]), Sign::Minus);
        assert_eq!(report.common_fixed.len(), 28);
        assert_eq!(report.verdict, StarVerdict::CommonFixedForm);
    }

    #[test]
    fn check_star_matches_brute_force() {
        let samples = [
            vec![t(1)],
            vec![t(1), t(2)],
            vec![t(1), t(8)],
            vec![t(1), t(2), t(4)],
            sp6_generators()[..3].to_vec(),
            vec![t(9), t(18), t(36)],
        ];
        for gens in samples {
            let g = subgroup_closure(&gens);
            for sign in [Sign::Plus, Sign::Minus] {
                let report = check_star(&g, sign);
                let all: Vec<QuadForm> = forms_in_mask(sign.mask());
                let common: Vec<QuadForm> = all
                    .iter()
                    .copied()
                    .filter(|q| g.elements.iter().all(|&x| fixed_forms(x, sign).contains(q)))
                    .collect();
                let every_has_fixed = g
                    .elements
                    .iter()
                    .all(|&x| !fixed_forms(x, sign).is_empty());
                assert_eq!(report.common_fixed, common);
                assert_eq!(report.passed(), common.is_empty() && every_has_fixed);
            }
        }
    }

    #[test]
    fn ea32_of_itself() {
        let e = subgroup_closure(&[t(1), t(2), t(4), t(3), t(5)]);
        assert_eq!(e.order(), 32);
        let found = enumerate_ea32(&e);
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].elements, e.elements);
        let classes = classify_up_to_conjugacy(&found, &e, AmbientLabel::Sp6);
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].normalizer_order, 32);
    }

    #[test]
    fn canonical_basis_spans() {
        let e = subgroup_closure(&[t(1), t(2), t(4), t(3), t(5)]);
        let basis = e.canonical_basis();
        assert_eq!(basis.len(), 5);
        assert_eq!(closure(&basis), e.elements);
    }

    #[test]
    fn ambient_label_round_trip() {
        for l in [AmbientLabel::Sp6, AmbientLabel::U63, AmbientLabel::U36] {
            assert_eq!(l.to_string().parse::<AmbientLabel>().unwrap(), l);
        }
        assert!("u28".parse::<AmbientLabel>().is_err());
    }
}
