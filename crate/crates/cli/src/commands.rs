//! Subcommand implementations.

use std::path::Path;

use csck_core::flat::{build_f, FlatProblem};
use csck_core::momentum::{
    build_lambda_negative_profile, build_profile, build_profile_at_c0, solve_lambda_negative, sup_allowable_c,
    BundleProblem, BundleProfile,
};
use csck_core::oracle::{Thresholds, VerificationReport};
use csck_core::projective::{build_projective_profile, c_m_range, solve_b_given_c_m, CmRange};
use csck_core::scalar::{format_rational, parse_rational};
use csck_core::Rational;
use num_traits::Signed;

use crate::args::{BundleArgs, FlatArgs, OutputArgs, ProjectiveArgs, ThresholdArgs, VerifyArgs};
use crate::document::{InputRecord, Profile, ProfileDocument, Tolerances};
use crate::error::{CliResult, Failure};
use crate::output::{print_stdout, svg, write_csv, write_text, Table};
use crate::samples::{default_t_range, default_tau_range, flat_table, momentum_table};

/// Parses rational inputs and records how each was read.
#[derive(Default)]
struct Inputs(Vec<InputRecord>);

impl Inputs {
    fn rational(&mut self, name: &str, given: &str) -> CliResult<Rational> {
        let v = parse_rational(given).map_err(|e| Failure::input(format!("--{name}: {e}")))?;
        self.0.push(InputRecord::new(name, given, &v));
        Ok(v)
    }
}

fn positive(name: &str, x: f64) -> CliResult<f64> {
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(Failure::input(format!("{name} must be a positive number, got {x}")))
    }
}

/// Default thresholds with the flag overrides applied.
pub fn thresholds(base: Thresholds, args: &ThresholdArgs) -> CliResult<Thresholds> {
    let mut th = base;
    if let Some(x) = args.curvature_tol {
        th.curvature = positive("--curvature-tol", x)?;
    }
    if let Some(x) = args.ode_tol {
        th.ode_gap = positive("--ode-tol", x)?;
    }
    if let Some(x) = args.fit_tol {
        th.fit_relative = positive("--fit-tol", x)?;
        th.fit_relative_degenerate = th.fit_relative_degenerate.max(x);
    }
    Ok(th)
}

fn tolerances(out: &OutputArgs) -> CliResult<Tolerances> {
    Ok(Tolerances { solver: positive("--tol", out.tol)?, thresholds: thresholds(Thresholds::default(), &out.thresholds)? })
}

fn failing_checks(report: &VerificationReport) -> String {
    report.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect::<Vec<_>>().join(", ")
}

/// Verifies (unless disabled), writes the document and plot data, and turns
/// a failed verification into exit code 3 after everything is written.
fn finish(mut doc: ProfileDocument, profile: &Profile, table: impl FnOnce() -> CliResult<Table>, out: &OutputArgs) -> CliResult<()> {
    let report = (!out.no_verify).then(|| profile.verify(&doc.tolerances.thresholds));
    if let Some(r) = &report {
        doc.attach(r);
    }
    if out.csv.is_some() || out.svg.is_some() {
        let t = table()?;
        if let Some(path) = &out.csv {
            write_csv(&t, Some(path))?;
        }
        if let Some(path) = &out.svg {
            write_text(&svg(&t), path)?;
        }
    }
    emit_json(&doc.to_json(), out.json.as_deref())?;
    match report {
        Some(r) if !r.pass => Err(Failure::verification(format!("verification failed: {}", failing_checks(&r)))),
        _ => Ok(()),
    }
}

fn emit_json(text: &str, path: Option<&Path>) -> CliResult<()> {
    match path {
        Some(p) => write_text(&format!("{text}\n"), p),
        None => print_stdout(text),
    }
}

pub fn flat(args: &FlatArgs) -> CliResult<()> {
    let mut inputs = Inputs::default();
    let a = inputs.rational("a", &args.a)?;
    let c = inputs.rational("c", &args.c)?;
    let prob = FlatProblem::new(args.n, a, c)?;
    let profile = build_f(&prob)?;
    let doc = ProfileDocument::flat(&profile, inputs.0, tolerances(&args.out)?);
    let (lo, hi) = default_t_range(&profile);
    let (lo, hi) = (args.t_min.unwrap_or(lo), args.t_max.unwrap_or(hi));
    let count = args.out.samples;
    let wrapped = Profile::Flat(profile.clone());
    finish(doc, &wrapped, || flat_table(&profile, lo, hi, count), &args.out)
}

fn momentum_sampler<'a>(p: &'a BundleProfile, tau_max: Option<f64>, count: usize) -> impl FnOnce() -> CliResult<Table> + 'a {
    move || {
        let (lo, hi) = default_tau_range(p);
        momentum_table(p, lo, tau_max.unwrap_or(hi), count)
    }
}

pub fn bundle(args: &BundleArgs) -> CliResult<()> {
    let mut inputs = Inputs::default();
    let lambda = inputs.rational("lambda", &args.lambda)?;
    let c_m = inputs.rational("cM", &args.c_m)?;
    let a = inputs.rational("a", &args.a)?;
    let c = args.c.as_deref().map(|s| inputs.rational("c", s)).transpose()?;
    let tol = tolerances(&args.out)?;
    let (m, n) = (args.m, args.n);
    let mut solutions = Vec::new();
    let mut sup = None;
    let profile = if lambda.is_negative() {
        if c.is_some() || args.at_c0 {
            return Err(Failure::input("for lambda < 0 the curvature c is solved for; omit --c and --at-c0"));
        }
        solutions = solve_lambda_negative(m, n, &lambda, &c_m, &a, tol.solver)?;
        if solutions.is_empty() {
            return Err(Failure::no_solution(format!(
                "no b in ({}, {}) closes the profile for cM = {}",
                format_rational(&a),
                format_rational(&-lambda.recip()),
                format_rational(&c_m)
            )));
        }
        let sol = solutions
            .get(args.root)
            .ok_or_else(|| Failure::input(format!("--root {} but only {} solution(s)", args.root, solutions.len())))?;
        build_lambda_negative_profile(m, n, &lambda, &c_m, &a, sol)?
    } else if lambda.is_positive() {
        let s = sup_allowable_c(m, n, &lambda, &c_m, &a, tol.solver)?;
        let profile = if args.at_c0 {
            build_profile_at_c0(m, n, &lambda, &c_m, &a, tol.solver)?.0
        } else {
            let c = c.ok_or_else(|| Failure::input("give --c or --at-c0"))?;
            let prob = BundleProblem::new(m, n, lambda.clone(), c_m.clone(), c.clone(), a.clone())?;
            build_profile(&prob).map_err(|e| Failure::input(format!("{e} (c0 = {:.10})", s.c0)))?
        };
        sup = Some(s);
        profile
    } else {
        let c = match (c, args.at_c0) {
            (_, true) => c_m.clone(),
            (Some(c), false) => c,
            (None, false) => return Err(Failure::input("give --c or --at-c0")),
        };
        build_profile(&BundleProblem::new(m, n, lambda.clone(), c_m.clone(), c, a.clone())?)?
    };
    let doc = ProfileDocument::bundle(&profile, sup.as_ref(), &solutions, inputs.0, tol);
    let table = momentum_sampler(&profile, args.tau_max, args.out.samples);
    let wrapped = Profile::Bundle(profile.clone());
    finish(doc, &wrapped, table, &args.out)
}

fn range_text(r: &CmRange) -> String {
    match r {
        CmRange::All => "all real values".into(),
        CmRange::Above(lo) => format!("({lo}, ∞)"),
    }
}

pub fn projective(args: &ProjectiveArgs) -> CliResult<()> {
    let mut inputs = Inputs::default();
    let lambda = inputs.rational("lambda", &args.lambda)?;
    let a = inputs.rational("a", &args.a)?;
    let tol = tolerances(&args.out)?;
    let (m, n) = (args.m, args.n);
    let range = c_m_range(m, n, &lambda)?;
    let mut roots = Vec::new();
    let b = match (&args.b, &args.c_m) {
        (Some(b), _) => inputs.rational("b", b)?,
        (None, Some(cm)) => {
            let c_m = inputs.rational("cM", cm)?;
            roots = solve_b_given_c_m(m, n, &lambda, &a, &c_m, tol.solver).map_err(|e| {
                let mut f = Failure::from_core(e, true);
                f.error = f.error.context(format!("cM must lie in {}", range_text(&range)));
                f
            })?;
            let root = roots.get(args.root).ok_or_else(|| {
                if roots.is_empty() {
                    Failure::no_solution(format!("no b closes the profile for cM = {}", format_rational(&c_m)))
                } else {
                    Failure::input(format!("--root {} but only {} root(s)", args.root, roots.len()))
                }
            })?;
            root.b.clone()
        }
        (None, None) => return Err(Failure::input("give --b or --cM")),
    };
    let profile = build_projective_profile(m, n, &lambda, &a, &b).map_err(|e| Failure::from_core(e, true))?;
    let doc = ProfileDocument::projective(&profile, &roots, Some(range), inputs.0, tol);
    let table = momentum_sampler(&profile.profile, None, args.out.samples);
    let wrapped = Profile::Projective(profile.clone());
    finish(doc, &wrapped, table, &args.out)
}

/// Verifies a stored document; the report goes to stdout or `--json`.
pub fn verify(args: &VerifyArgs) -> CliResult<()> {
    let text = std::fs::read_to_string(&args.document)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", args.document.display())))?;
    let doc = ProfileDocument::from_json(&text)?;
    let th = thresholds(doc.tolerances.thresholds.clone(), &args.thresholds)?;
    let report = doc.rebuild()?.verify(&th);
    let text = serde_json::to_string_pretty(&report).expect("reports serialize");
    emit_json(&text, args.json.as_deref())?;
    for c in &report.checks {
        eprintln!("{} {} = {:e} ({})", if c.pass { "PASS" } else { "FAIL" }, c.name, c.value, c.threshold);
    }
    if report.pass {
        Ok(())
    } else {
        Err(Failure::verification(format!("verification failed: {}", failing_checks(&report))))
    }
}
