//! End-to-end certificate: group conditions on the chosen `F_2^5`, cyclic
//! decomposition groups at sampled places, the quartic with its smoothness and
//! split fibers, and the two Hasse-failure verdicts. Verdicts are a pure
//! function of the stored sections, see [`recheck`].

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{
    decomposition_generator, sampled_places, splitting_field_check, validate_params, GalVec,
    ParamTuple, Place, PlaceCert, ValidationReport,
};
use crate::conic::{is_smooth, smooth_by_elimination, verify_bitangent, ConicBundle};
use crate::error::{Error, Result};
use crate::poly::{rat, BigRat};
use crate::subgroup::{check_star, pick_certified_e, CondReport, Subgroup};
use crate::symplectic::{QuadForm, Sign, SpElement};

pub const FORMAT_VERSION: u32 = 1;
pub const DEFAULT_PLACE_BOUND: u64 = 100;
const RETRY_PRIMES: [i64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSection {
    pub ambient: String,
    /// Images of the standard basis of `Gal(L/Q)`, in order.
    pub generators: Vec<SpElement>,
    pub star_minus: CondReport,
    pub star_plus: CondReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceEntry {
    #[serde(flatten)]
    pub cert: PlaceCert,
    /// Odd and even forms fixed by the generator mapped into the group.
    pub fixed_odd: Vec<QuadForm>,
    pub fixed_even: Vec<QuadForm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArithmeticSection {
    pub validation: ValidationReport,
    pub place_bound: u64,
    pub places: Vec<PlaceEntry>,
    pub splitting_field: bool,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberRecord {
    pub index: usize,
    pub root: String,
    pub delta: String,
    pub kernel: [String; 3],
    pub lambda: String,
    pub lines: [[String; 3]; 2],
    pub bitangent: [bool; 2],
}

#[allow(non_snake_case)]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometrySection {
    pub a6: String,
    pub c: String,
    pub F: String,
    pub g: String,
    pub h: String,
    pub smooth: bool,
    pub smooth_method: String,
    pub fibers: Vec<FiberRecord>,
    pub rational_point: [i64; 3],
    pub rational_point_on_curve: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub bitangent_hasse_failure: bool,
    pub sdr_hasse_failure: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Versions {
    pub crate_version: String,
    pub format: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub params: ParamTuple,
    pub quartic: String,
    pub group: GroupSection,
    pub arithmetic: ArithmeticSection,
    pub geometry: GeometrySection,
    pub verdicts: Verdicts,
    pub versions: Versions,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.verdicts.bitangent_hasse_failure && self.verdicts.sdr_hasse_failure
    }
}

/// Image in the group of a Galois element under the coordinate map.
pub fn galois_to_group(v: GalVec, generators: &[SpElement]) -> SpElement {
    generators
        .iter()
        .enumerate()
        .filter(|(i, _)| v.coord(*i) == 1)
        .fold(SpElement::IDENTITY, |acc, (_, &g)| acc.mul(g))
}

fn forms_fixed(g: SpElement, sign: Sign) -> Vec<QuadForm> {
    crate::symplectic::fixed_forms(g, sign)
}

fn derive_verdicts(
    star_minus: &CondReport,
    star_plus: &CondReport,
    smooth: bool,
    places: &[PlaceEntry],
    splitting_field: bool,
    rational_point: bool,
) -> Verdicts {
    let bitangent = star_minus.rederive_verdict() == crate::subgroup::StarVerdict::Pass
        && smooth
        && places.iter().all(|p| p.cert.cyclic)
        && splitting_field;
    let sdr = bitangent
        && star_plus.rederive_verdict() == crate::subgroup::StarVerdict::Pass
        && rational_point;
    Verdicts {
        bitangent_hasse_failure: bitangent,
        sdr_hasse_failure: sdr,
    }
}

/// Place certificate together with the forms its generator fixes in `e`.
pub fn place_entry(params: &ParamTuple, place: Place, e: &Subgroup) -> PlaceEntry {
    let cert = decomposition_generator(params, place);
    let (fixed_odd, fixed_even) = match cert.generator {
        Some(g) => {
            let el = galois_to_group(g, &e.generators);
            (forms_fixed(el, Sign::Minus), forms_fixed(el, Sign::Plus))
        }
        None => (Vec::new(), Vec::new()),
    };
    PlaceEntry {
        cert,
        fixed_odd,
        fixed_even,
    }
}

/// Runs the full pipeline for one parameter tuple.
pub fn run_certify(params: &ParamTuple, extra_places: &[Place], place_bound: u64) -> Result<Certificate> {
    let validation = validate_params(&params.b);
    if !validation.pass {
        return Err(Error::Validation(Box::new(validation)));
    }
    let bundle = ConicBundle::from_params(params)?;
    let smooth = is_smooth(&bundle.quartic);
    if !smooth {
        return Err(Error::NotSmooth {
            suggested_u: (&params.u * rat(RETRY_PRIMES[0])).to_string(),
        });
    }
    let smooth_method = if smooth_by_elimination(&bundle.quartic) == Some(true) {
        "resultant elimination"
    } else {
        "Macaulay resultant"
    };

    let mut fibers = Vec::new();
    for s in bundle.split_fibers()? {
        let mut bitangent = [false; 2];
        for (k, line) in s.lines.iter().enumerate() {
            bitangent[k] = verify_bitangent(&bundle.quartic, line)?;
        }
        fibers.push(FiberRecord {
            index: s.index,
            root: s.root.to_string(),
            delta: s.delta.to_string(),
            kernel: s.kernel.clone().map(|k| k.to_string()),
            lambda: s.lambda.to_string(),
            lines: [s.lines[0].coeff_strings(), s.lines[1].coeff_strings()],
            bitangent,
        });
    }
    let origin = [rat(0), rat(1), rat(0)];
    let rational_point_on_curve = bundle.quartic.eval(&origin).is_zero();

    let e = pick_certified_e()?;
    let star_minus = check_star(&e, Sign::Minus);
    let star_plus = check_star(&e, Sign::Plus);

    let places: Vec<PlaceEntry> = sampled_places(&params.b, place_bound, extra_places)
        .into_iter()
        .map(|p| place_entry(params, p, &e))
        .collect();
    let roots = bundle.input.roots();
    let splitting_field = splitting_field_check(&roots, &params.b)?;

    let verdicts = derive_verdicts(
        &star_minus,
        &star_plus,
        smooth,
        &places,
        splitting_field,
        rational_point_on_curve,
    );
    Ok(Certificate {
        params: params.clone(),
        quartic: bundle.quartic.to_string(),
        group: GroupSection {
            ambient: "u63".into(),
            generators: e.generators.clone(),
            star_minus,
            star_plus,
        },
        arithmetic: ArithmeticSection {
            validation,
            place_bound,
            places,
            splitting_field,
            note: "places not sampled are unramified in L, so their decomposition groups \
                   are generated by a Frobenius element and have order at most 2"
                .into(),
        },
        geometry: GeometrySection {
            a6: bundle.a6.to_string(),
            c: bundle.c.to_string(),
            F: bundle.F.to_string(),
            g: bundle.g.to_string(),
            h: bundle.h.to_string(),
            smooth,
            smooth_method: smooth_method.into(),
            fibers,
            rational_point: [0, 1, 0],
            rational_point_on_curve,
        },
        verdicts,
        versions: Versions {
            crate_version: env!("CARGO_PKG_VERSION").into(),
            format: FORMAT_VERSION,
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Attempt {
    pub u: String,
    pub outcome: String,
}

/// [`run_certify`] with up to `retries` re-samplings of `u` (multiplying by
/// successive small primes) when the quartic is singular. Every attempt is
/// recorded.
pub fn certify_with_retry(
    params: &ParamTuple,
    extra_places: &[Place],
    place_bound: u64,
    retries: usize,
) -> (Result<Certificate>, Vec<Attempt>) {
    retry_with(params, retries, |p| run_certify(p, extra_places, place_bound))
}

fn retry_with<T>(
    params: &ParamTuple,
    retries: usize,
    mut run: impl FnMut(&ParamTuple) -> Result<T>,
) -> (Result<T>, Vec<Attempt>) {
    let mut attempts = Vec::new();
    let mut current = params.clone();
    for k in 0..=retries {
        let result = run(&current);
        match result {
            Err(Error::NotSmooth { .. }) if k < retries => {
                attempts.push(Attempt {
                    u: current.u.to_string(),
                    outcome: "not smooth".into(),
                });
                let factor = rat(RETRY_PRIMES[k % RETRY_PRIMES.len()]);
                current = ParamTuple::new(current.b, &current.u * factor);
            }
            other => {
                attempts.push(Attempt {
                    u: current.u.to_string(),
                    outcome: match &other {
                        Ok(_) => "certified".into(),
                        Err(e) => e.to_string(),
                    },
                });
                return (other, attempts);
            }
        }
    }
    unreachable!("the last attempt always returns")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecheckReport {
    pub verdicts: Verdicts,
    pub agrees: bool,
    /// Places whose mapped generator fixes no odd form.
    pub inconsistent_places: Vec<Place>,
}

/// Recomputes the verdicts from the stored sections alone and checks that every
/// stored place generator, mapped into the stored group, fixes a stored odd form.
pub fn recheck(cert: &Certificate) -> RecheckReport {
    let verdicts = derive_verdicts(
        &cert.group.star_minus,
        &cert.group.star_plus,
        cert.geometry.smooth,
        &cert.arithmetic.places,
        cert.arithmetic.splitting_field,
        cert.geometry.rational_point_on_curve,
    );
    let inconsistent_places = cert
        .arithmetic
        .places
        .iter()
        .filter(|p| match p.cert.generator {
            Some(g) => {
                let el = galois_to_group(g, &cert.group.generators);
                let fixed = forms_fixed(el, Sign::Minus);
                fixed.is_empty() || fixed != p.fixed_odd
            }
            None => true,
        })
        .map(|p| p.cert.place)
        .collect();
    RecheckReport {
        agrees: verdicts == cert.verdicts,
        verdicts,
        inconsistent_places,
    }
}

/// `u` from its command-line form: `auto` or an exact rational.
pub fn parse_u(text: &str, b: &[i64; 5]) -> Result<BigRat> {
    if text.trim() == "auto" {
        return Ok(crate::arith::default_u(b));
    }
    let u = crate::poly::parse_rat(text)?;
    if u.is_zero() {
        return Err(Error::Parse("u must be nonzero".into()));
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn singular_until(n: usize) -> impl FnMut(&ParamTuple) -> Result<BigRat> {
        let mut calls = 0;
        move |p| {
            calls += 1;
            if calls <= n {
                Err(Error::NotSmooth {
                    suggested_u: String::new(),
                })
            } else {
                Ok(p.u.clone())
            }
        }
    }

    #[test]
    fn retry_resamples_u_and_records_attempts() {
        let p = ParamTuple::worked_example();
        let (result, attempts) = retry_with(&p, 3, singular_until(2));
        assert_eq!(result.unwrap(), &p.u * rat(6));
        let outcomes: Vec<&str> = attempts.iter().map(|a| a.outcome.as_str()).collect();
        assert_eq!(outcomes, ["not smooth", "not smooth", "certified"]);
        assert_eq!(attempts[1].u, (&p.u * rat(2)).to_string());
    }

    #[test]
    fn retry_stops_after_the_budget() {
        let p = ParamTuple::worked_example();
        let (result, attempts) = retry_with(&p, 2, singular_until(usize::MAX));
        assert!(matches!(result, Err(Error::NotSmooth { .. })));
        assert_eq!(attempts.len(), 3);
        let (result, attempts) = retry_with(&p, 0, singular_until(1));
        assert!(result.is_err());
        assert_eq!(attempts.len(), 1);
    }

    #[test]
    fn verdicts_rederive_and_tampering_is_detected() {
        let cert = run_certify(&ParamTuple::worked_example(), &[], 30).unwrap();
        assert!(cert.passed());
        let report = recheck(&cert);
        assert!(report.agrees && report.inconsistent_places.is_empty());
        let mut bad = cert.clone();
        bad.geometry.rational_point_on_curve = false;
        assert!(!recheck(&bad).agrees);
    }
}
