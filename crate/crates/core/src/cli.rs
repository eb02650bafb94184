use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::arith::{decomposition_generator, parse_b_list, search_params, validate_params, ParamTuple, Place};
use crate::certificate::{
    certify_with_retry, galois_to_group, parse_u, recheck, Certificate, DEFAULT_PLACE_BOUND,
};
use crate::conic::{is_smooth, ConicBundle};
use crate::error::Error;
use crate::subgroup::{check_star, ea32_classes, pick_certified_e, AmbientLabel};
use crate::symplectic::{
    all_forms, form_orbit, fixed_forms, sp6, sp6_generators, stabilizer_elements, F2Vec6,
    QuadForm, Sign, StabTarget,
};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_INVALID: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "quartic-hasse", version, about = "Certified plane quartics over Q violating the Hasse principle for bitangents")]
pub struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Orders, orbit sizes and elementary abelian class counts.
    GroupAudit,
    /// Conjugacy classes of subgroups isomorphic to F_2^5.
    #[command(name = "classify-ea32")]
    ClassifyEa32 {
        #[arg(long, value_parser = ["sp6", "u63", "u36"])]
        ambient: String,
    },
    /// Search for a parameter tuple (-1, q2, q3, q4, q5).
    SearchParams {
        #[arg(long, default_value_t = 1000)]
        bound: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Build the conic bundle and the quartic.
    Construct(TupleArgs),
    /// Full certificate.
    Certify {
        #[command(flatten)]
        tuple: TupleArgs,
        /// Extra places to sample, e.g. `3,101,inf`.
        #[arg(long, value_delimiter = ',')]
        places: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_PLACE_BOUND)]
        place_bound: u64,
        /// Re-samplings of u when the quartic is singular.
        #[arg(long, default_value_t = 3)]
        retries: usize,
        /// Also write the JSON certificate here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decomposition group at one place and the forms its image fixes.
    CheckPlace {
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        p: String,
    },
    /// Recompute the verdicts of a stored JSON certificate.
    Recheck { path: PathBuf },
}

#[derive(Args, Debug)]
pub struct TupleArgs {
    /// Comma-separated b1..b5.
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
    /// Rational u, or `auto` for -1/(b4 b5).
    #[arg(long, default_value = "auto", allow_hyphen_values = true)]
    pub u: String,
}

impl TupleArgs {
    fn params(&self) -> Result<ParamTuple, Error> {
        let b = parse_b_list(&self.b)?;
        let u = parse_u(&self.u, &b)?;
        Ok(ParamTuple::new(b, u))
    }
}

enum Outcome {
    Pass,
    Fail,
}

fn print_line(text: &str) {
    use std::io::Write;
    // a closed pipe (e.g. `| head`) is not an error for a report printer
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) {
    if json {
        print_line(&serde_json::to_string_pretty(value).expect("serializable"));
    } else {
        print_line(&text());
    }
}

fn fail_json(json: bool, err: &Error) {
    if json {
        let detail = match err {
            Error::Validation(r) => serde_json::to_value(r.as_ref()).expect("serializable"),
            _ => serde_json::Value::Null,
        };
        print_line(
            &serde_json::to_string_pretty(&json!({
                "status": "fail",
                "error": err.to_string(),
                "detail": detail,
            }))
            .expect("serializable"),
        );
    } else {
        eprintln!("FAIL: {err}");
    }
}

fn is_input_error(e: &Error) -> bool {
    matches!(e, Error::Parse(_) | Error::OutOfRange(_))
}

/// Parses `argv` and runs the subcommand; returns the process exit code.
pub fn cli_main<I, T>(argv: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INVALID } else { EXIT_PASS });
        }
    };
    let json = cli.json;
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::from(EXIT_PASS),
        Ok(Outcome::Fail) => ExitCode::from(EXIT_FAIL),
        Err(e) if is_input_error(&e) => {
            fail_json(json, &e);
            ExitCode::from(EXIT_INVALID)
        }
        Err(e) => {
            fail_json(json, &e);
            ExitCode::from(EXIT_FAIL)
        }
    }
}

#[derive(Serialize)]
struct GroupAudit {
    sp6_order: usize,
    even_forms: usize,
    odd_forms: usize,
    stabilizer_odd_form: usize,
    stabilizer_even_form: usize,
    stabilizer_vector: usize,
    orbit_even: usize,
    orbit_odd: usize,
    ea32_classes: serde_json::Value,
    sp6_classes_passing_both: usize,
}

fn group_audit() -> Result<GroupAudit, Error> {
    let forms = all_forms();
    let gens = sp6_generators();
    let odd = QuadForm::from_basis_values(0b001001);
    let even = QuadForm::from_basis_values(0);
    let sp = ea32_classes(AmbientLabel::Sp6)?;
    let passing = sp
        .iter()
        .filter(|c| {
            check_star(&c.representative, Sign::Minus).passed()
                && check_star(&c.representative, Sign::Plus).passed()
        })
        .count();
    Ok(GroupAudit {
        sp6_order: sp6().len(),
        even_forms: forms.omega_plus.len(),
        odd_forms: forms.omega_minus.len(),
        stabilizer_odd_form: stabilizer_elements(StabTarget::Form(odd))?.len(),
        stabilizer_even_form: stabilizer_elements(StabTarget::Form(even))?.len(),
        stabilizer_vector: stabilizer_elements(StabTarget::Vector(F2Vec6::e(1)))?.len(),
        orbit_even: form_orbit(even, &gens).len(),
        orbit_odd: form_orbit(odd, &gens).len(),
        ea32_classes: json!({
            "sp6": sp.len(),
            "u63": ea32_classes(AmbientLabel::U63)?.len(),
            "u36": ea32_classes(AmbientLabel::U36)?.len(),
        }),
        sp6_classes_passing_both: passing,
    })
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    let json = cli.json;
    match cli.command {
        Command::GroupAudit => {
            let a = group_audit()?;
            emit(json, &a, || {
                format!(
                    "|Sp6(F2)| = {}\n|Omega+| = {}, |Omega-| = {}\n\
                     stabilizers: odd form {}, even form {}, nonzero vector {}\n\
                     orbits: even {}, odd {}\n\
                     F2^5 classes: sp6 {}, u63 {}, u36 {}\n\
                     sp6 classes passing both conditions: {}",
                    a.sp6_order,
                    a.even_forms,
                    a.odd_forms,
                    a.stabilizer_odd_form,
                    a.stabilizer_even_form,
                    a.stabilizer_vector,
                    a.orbit_even,
                    a.orbit_odd,
                    a.ea32_classes["sp6"],
                    a.ea32_classes["u63"],
                    a.ea32_classes["u36"],
                    a.sp6_classes_passing_both
                )
            });
            Ok(Outcome::Pass)
        }
        Command::ClassifyEa32 { ambient } => {
            let label: AmbientLabel = ambient.parse()?;
            let classes = ea32_classes(label)?;
            let value = json!({
                "ambient": label.to_string(),
                "count": classes.len(),
                "classes": classes.iter().map(|c| json!({
                    "generators": c.representative.canonical_basis(),
                    "orbit_size": c.orbit_size,
                    "normalizer_order": c.normalizer_order,
                    "star_minus": check_star(&c.representative, Sign::Minus).passed(),
                    "star_plus": check_star(&c.representative, Sign::Plus).passed(),
                })).collect::<Vec<_>>(),
            });
            emit(json, &value, || classes.len().to_string());
            Ok(Outcome::Pass)
        }
        Command::SearchParams { bound, seed } => {
            let t = search_params(bound, seed)?;
            emit(json, &t, || {
                let b: Vec<String> = t.b.iter().map(ToString::to_string).collect();
                format!("b = {}\nu = {}", b.join(","), t.u)
            });
            Ok(Outcome::Pass)
        }
        Command::Construct(args) => {
            let params = args.params()?;
            let bundle = ConicBundle::from_params(&params)?;
            let smooth = is_smooth(&bundle.quartic);
            let value = json!({
                "params": params,
                "a6": bundle.a6.to_string(),
                "c": bundle.c.to_string(),
                "F": bundle.F.to_string(),
                "g": bundle.g.to_string(),
                "h": bundle.h.to_string(),
                "quartic": bundle.quartic.to_string(),
                "smooth": smooth,
            });
            emit(json, &value, || {
                format!(
                    "a6 = {}\nc = {}\nF = {}\ng = {}\nh = {}\nquartic = {}\nsmooth = {}",
                    bundle.a6, bundle.c, bundle.F, bundle.g, bundle.h, bundle.quartic, smooth
                )
            });
            Ok(if smooth { Outcome::Pass } else { Outcome::Fail })
        }
        Command::Certify {
            tuple,
            places,
            place_bound,
            retries,
            out,
        } => {
            let params = tuple.params()?;
            let extra: Vec<Place> = places
                .iter()
                .filter(|s| !s.trim().is_empty())
                .map(|s| s.parse())
                .collect::<Result<_, _>>()?;
            let (result, attempts) = certify_with_retry(&params, &extra, place_bound, retries);
            let cert = result?;
            if let Some(path) = out {
                let text = serde_json::to_string_pretty(&cert).expect("serializable");
                std::fs::write(&path, text + "\n")
                    .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))?;
            }
            emit(json, &cert, || certificate_text(&cert, attempts.len()));
            Ok(if cert.passed() { Outcome::Pass } else { Outcome::Fail })
        }
        Command::CheckPlace { b, p } => {
            let b = parse_b_list(&b)?;
            let place: Place = p.parse()?;
            let params = ParamTuple::with_default_u(b);
            let report = validate_params(&b);
            let cert = decomposition_generator(&params, place);
            let e = pick_certified_e()?;
            let fixed_odd = cert
                .generator
                .map(|g| fixed_forms(galois_to_group(g, &e.generators), Sign::Minus))
                .unwrap_or_default();
            let value = json!({
                "validation": report,
                "place": cert,
                "fixed_odd_forms": fixed_odd,
            });
            emit(json, &value, || {
                let gen = cert
                    .generator
                    .map_or("none (not cyclic)".to_string(), |g| g.to_string());
                format!(
                    "place {}\ngenerator {}\ncyclic {}\nfixed odd forms {}",
                    cert.place,
                    gen,
                    cert.cyclic,
                    fixed_odd.len()
                )
            });
            Ok(if cert.cyclic && !fixed_odd.is_empty() {
                Outcome::Pass
            } else {
                Outcome::Fail
            })
        }
        Command::Recheck { path } => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
            let cert: Certificate = serde_json::from_str(&text)
                .map_err(|e| Error::Parse(format!("bad certificate: {e}")))?;
            let report = recheck(&cert);
            emit(json, &report, || {
                format!(
                    "bitangent_hasse_failure {}\nsdr_hasse_failure {}\nagrees with stored verdicts {}\ninconsistent places {}",
                    report.verdicts.bitangent_hasse_failure,
                    report.verdicts.sdr_hasse_failure,
                    report.agrees,
                    report.inconsistent_places.len()
                )
            });
            Ok(if report.agrees && report.inconsistent_places.is_empty() && cert.passed() {
                Outcome::Pass
            } else {
                Outcome::Fail
            })
        }
    }
}

fn certificate_text(cert: &Certificate, attempts: usize) -> String {
    let b: Vec<String> = cert.params.b.iter().map(ToString::to_string).collect();
    let mut out = vec![
        format!("b = {}", b.join(",")),
        format!("u = {}", cert.params.u),
        format!("attempts = {attempts}"),
        format!("quartic = {}", cert.quartic),
        format!("smooth = {} ({})", cert.geometry.smooth, cert.geometry.smooth_method),
        format!(
            "[0:1:0] on curve = {}",
            cert.geometry.rational_point_on_curve
        ),
    ];
    for f in &cert.geometry.fibers {
        out.push(format!(
            "fiber {} over T/S = {}: delta = {}, bitangent = {:?}",
            f.index, f.root, f.delta, f.bitangent
        ));
    }
    out.push(format!(
        "star(-) {}, star(+) {}",
        cert.group.star_minus.passed(),
        cert.group.star_plus.passed()
    ));
    let cyclic = cert.arithmetic.places.iter().filter(|p| p.cert.cyclic).count();
    out.push(format!(
        "places sampled {}, cyclic {}",
        cert.arithmetic.places.len(),
        cyclic
    ));
    out.push(format!("splitting field matches = {}", cert.arithmetic.splitting_field));
    out.push(format!(
        "bitangent_hasse_failure = {}",
        cert.verdicts.bitangent_hasse_failure
    ));
    out.push(format!("sdr_hasse_failure = {}", cert.verdicts.sdr_hasse_failure));
    out.join("\n")
}
