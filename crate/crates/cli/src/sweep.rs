//! Parameter sweeps.
//!
//! A sweep file is JSON:
//!
//! ```json
//! { "family": "projective",
//!   "parameters": { "m": 1, "n": 2, "lambda": "1", "a": "1",
//!                   "b": { "geomspace": ["1.01", "1000", 40] } } }
//! ```
//!
//! Each parameter is a scalar (number or rational string), a list, or one
//! of `{"values": [...]}`, `{"linspace": [lo, hi, count]}`,
//! `{"geomspace": [lo, hi, count]}`. Rows are the cartesian product in the
//! family's column order, last parameter varying fastest.

use std::collections::BTreeMap;
use std::path::Path;

use csck_core::flat::{build_f, FlatProblem};
use csck_core::momentum::{
    build_profile, build_profile_at_c0, solve_lambda_negative, sup_allowable_c, BundleProblem, BundleProfile,
};
use csck_core::projective::{build_projective_profile, hl_values, solve_b_given_c_m};
use csck_core::scalar::{approximate, parse_rational, ratio_to_f64};
use csck_core::Rational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::Value;

use crate::error::{CliResult, Failure};
use crate::output::{num, write_records};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Flat,
    Bundle,
    Projective,
    /// `H₁/H₂` of the two-point problem at `(a, b)`.
    H,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub family: Family,
    /// Bundle family: use the supremum c₀ instead of a given `c`.
    #[serde(default)]
    pub at_c0: bool,
    pub parameters: BTreeMap<String, Value>,
}

impl Family {
    /// Accepted parameters in column order.
    fn parameters(self) -> &'static [&'static str] {
        match self {
            Family::Flat => &["n", "a", "c"],
            Family::Bundle => &["m", "n", "lambda", "cM", "a", "c"],
            Family::Projective => &["m", "n", "lambda", "a", "b", "cM"],
            Family::H => &["m", "n", "lambda", "a", "b", "b_over_a"],
        }
    }

    fn outputs(self) -> &'static [&'static str] {
        match self {
            Family::Flat => &["endpoint_class", "b", "kappa"],
            Family::Bundle => &["c0", "c_used", "b", "kappa_a", "case_tag", "solutions"],
            Family::Projective => &["b_roots", "cM_value", "c_value", "kappa_a", "extension_ok"],
            Family::H => &["H1", "H2", "H"],
        }
    }

    fn required(self) -> &'static [&'static str] {
        match self {
            Family::Flat => &["n", "a", "c"],
            Family::Bundle => &["m", "n", "lambda", "cM", "a"],
            Family::Projective | Family::H => &["m", "n", "lambda", "a"],
        }
    }
}

fn malformed(msg: impl std::fmt::Display) -> Failure {
    Failure::input(format!("malformed sweep spec: {msg}"))
}

fn scalar(name: &str, v: &Value) -> CliResult<Rational> {
    let text = match v {
        Value::Number(x) => x.to_string(),
        Value::String(s) => s.clone(),
        other => return Err(malformed(format!("{name}: expected a number or string, got {other}"))),
    };
    parse_rational(&text).map_err(|e| malformed(format!("{name}: {e}")))
}

fn spacing(name: &str, args: &Value, geometric: bool) -> CliResult<Vec<Rational>> {
    let Some([lo, hi, count]) = args.as_array().and_then(|a| <&[Value; 3]>::try_from(a.as_slice()).ok()) else {
        return Err(malformed(format!("{name}: expected [lo, hi, count]")));
    };
    let (lo, hi) = (scalar(name, lo)?, scalar(name, hi)?);
    let count = count.as_u64().ok_or_else(|| malformed(format!("{name}: count must be a nonnegative integer")))? as usize;
    match count {
        0 => return Ok(Vec::new()),
        1 => return Ok(vec![lo]),
        _ => {}
    }
    if geometric {
        if !lo.is_positive() || !hi.is_positive() {
            return Err(malformed(format!("{name}: geomspace needs positive endpoints")));
        }
        let (l, h) = (ratio_to_f64(&lo).ln(), ratio_to_f64(&hi).ln());
        return (0..count)
            .map(|k| {
                let x = (l + (h - l) * k as f64 / (count - 1) as f64).exp();
                approximate(x, 1e-12 * x).map_err(|e| malformed(format!("{name}: {e}")))
            })
            .collect();
    }
    let steps = Rational::from_integer(((count - 1) as i64).into());
    Ok((0..count).map(|k| &lo + (&hi - &lo) * Rational::from_integer((k as i64).into()) / &steps).collect())
}

fn axis(name: &str, v: &Value) -> CliResult<Vec<Rational>> {
    match v {
        Value::Array(xs) => xs.iter().map(|x| scalar(name, x)).collect(),
        Value::Object(o) if o.len() == 1 => {
            let (kind, args) = o.iter().next().expect("one entry");
            match kind.as_str() {
                "values" => axis(name, args),
                "linspace" => spacing(name, args, false),
                "geomspace" => spacing(name, args, true),
                other => Err(malformed(format!("{name}: unknown grid kind '{other}'"))),
            }
        }
        Value::Object(_) => Err(malformed(format!("{name}: a grid object has exactly one key"))),
        _ => Ok(vec![scalar(name, v)?]),
    }
}

/// A validated sweep: column names and the grid points.
pub struct Plan {
    pub family: Family,
    pub at_c0: bool,
    pub names: Vec<&'static str>,
    pub points: Vec<Vec<Rational>>,
}

impl Plan {
    pub fn new(spec: &SweepSpec) -> CliResult<Self> {
        let accepted = spec.family.parameters();
        if let Some(unknown) = spec.parameters.keys().find(|k| !accepted.contains(&k.as_str())) {
            return Err(malformed(format!("unknown parameter '{unknown}' for this family")));
        }
        if let Some(missing) = spec.family.required().iter().find(|k| !spec.parameters.contains_key(**k)) {
            return Err(malformed(format!("missing parameter '{missing}'")));
        }
        let has = |k: &str| spec.parameters.contains_key(k);
        match spec.family {
            Family::Bundle if !spec.at_c0 && !has("c") => return Err(malformed("bundle sweeps need c or at_c0")),
            Family::Projective if has("b") == has("cM") => return Err(malformed("projective sweeps need exactly one of b, cM")),
            Family::H if has("b") == has("b_over_a") => return Err(malformed("h sweeps need exactly one of b, b_over_a")),
            _ => {}
        }
        let names: Vec<&'static str> = accepted.iter().copied().filter(|k| has(k)).collect();
        let mut points: Vec<Vec<Rational>> = vec![Vec::new()];
        for name in &names {
            let values = axis(name, &spec.parameters[*name])?;
            points = points
                .iter()
                .flat_map(|p| values.iter().map(move |v| [p.as_slice(), std::slice::from_ref(v)].concat()))
                .collect();
        }
        Ok(Plan { family: spec.family, at_c0: spec.at_c0, names, points })
    }

    pub fn header(&self) -> Vec<String> {
        let outputs = self.family.outputs().iter().copied();
        self.names.iter().copied().chain(outputs).chain(["status", "message"]).map(String::from).collect()
    }

    /// Evaluates every point in a work pool; rows come back in grid order.
    pub fn rows(&self, tol: f64) -> Vec<Vec<String>> {
        self.points.par_iter().map(|p| self.row(p, tol)).collect()
    }

    fn row(&self, point: &[Rational], tol: f64) -> Vec<String> {
        let mut row: Vec<String> = self
            .names
            .iter()
            .zip(point)
            .map(|(name, v)| if matches!(*name, "m" | "n") { v.to_string() } else { num(ratio_to_f64(v)) })
            .collect();
        let width = self.family.outputs().len();
        match self.evaluate(point, tol) {
            Ok(out) => {
                row.extend(out);
                row.extend(["ok".to_string(), String::new()]);
            }
            Err(e) => {
                row.extend(std::iter::repeat_n(String::new(), width));
                row.extend(["error".to_string(), e]);
            }
        }
        row
    }

    fn evaluate(&self, point: &[Rational], tol: f64) -> Result<Vec<String>, String> {
        let get = |k: &str| self.names.iter().position(|n| *n == k).map(|i| &point[i]);
        let int = |k: &str| -> Result<u32, String> {
            let v = get(k).ok_or_else(|| format!("missing {k}"))?;
            if !v.is_integer() {
                return Err(format!("{k} must be an integer"));
            }
            v.to_integer().to_u32().ok_or_else(|| format!("{k} out of range"))
        };
        let q = |k: &str| get(k).cloned().ok_or_else(|| format!("missing {k}"));
        let e = |err: csck_core::CoreError| err.to_string();
        match self.family {
            Family::Flat => {
                let p = build_f(&FlatProblem::new(int("n")?, q("a")?, q("c")?).map_err(e)?).map_err(e)?;
                Ok(vec![format!("{:?}", p.endpoint_class), num(p.b()), p.kappa.map(num).unwrap_or_default()])
            }
            Family::Bundle => self.bundle_row(int("m")?, int("n")?, q("lambda")?, q("cM")?, q("a")?, get("c").cloned(), tol),
            Family::Projective => {
                let (m, n, lambda, a) = (int("m")?, int("n")?, q("lambda")?, q("a")?);
                let (bs, cms, cs) = match get("b") {
                    Some(b) => {
                        let p = build_projective_profile(m, n, &lambda, &a, b).map_err(e)?;
                        (vec![b.clone()], vec![p.c_m], vec![p.c])
                    }
                    None => {
                        let roots = solve_b_given_c_m(m, n, &lambda, &a, &q("cM")?, tol).map_err(e)?;
                        if roots.is_empty() {
                            return Err("no root b".into());
                        }
                        let cms = roots.iter().map(|r| r.c_m.clone()).collect();
                        let cs = roots.iter().map(|r| r.c.clone()).collect();
                        (roots.into_iter().map(|r| r.b).collect(), cms, cs)
                    }
                };
                let first = build_projective_profile(m, n, &lambda, &a, &bs[0]).map_err(e)?;
                let join = |v: &[Rational]| v.iter().map(|x| num(ratio_to_f64(x))).collect::<Vec<_>>().join(";");
                Ok(vec![join(&bs), join(&cms), join(&cs), num(first.profile.kappa_a), first.extension_ok.to_string()])
            }
            Family::H => {
                let a = q("a")?;
                let b = match get("b") {
                    Some(b) => b.clone(),
                    None => &a * q("b_over_a")?,
                };
                let h = hl_values(int("m")?, int("n")?, &q("lambda")?, &a, &b).map_err(e)?;
                if h.h2.is_zero() {
                    return Err("H2 vanishes".into());
                }
                Ok(vec![num(ratio_to_f64(&h.h1)), num(ratio_to_f64(&h.h2)), num(ratio_to_f64(&(&h.h1 / &h.h2)))])
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn bundle_row(
        &self,
        m: u32,
        n: u32,
        lambda: Rational,
        c_m: Rational,
        a: Rational,
        c: Option<Rational>,
        tol: f64,
    ) -> Result<Vec<String>, String> {
        let e = |err: csck_core::CoreError| err.to_string();
        let describe = |p: &BundleProfile, c0: String, count: String| {
            let tag = serde_json::to_value(p.case_tag).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
            vec![c0, num(ratio_to_f64(&p.problem.c)), num(p.b_approx()), num(p.kappa_a), tag, count]
        };
        if lambda.is_negative() {
            let sols = solve_lambda_negative(m, n, &lambda, &c_m, &a, tol).map_err(e)?;
            let first = sols.first().ok_or("no b closes the profile")?;
            let p = csck_core::momentum::build_lambda_negative_profile(m, n, &lambda, &c_m, &a, first).map_err(e)?;
            return Ok(describe(&p, String::new(), sols.len().to_string()));
        }
        if lambda.is_positive() {
            let s = sup_allowable_c(m, n, &lambda, &c_m, &a, tol).map_err(e)?;
            let p = if self.at_c0 {
                build_profile_at_c0(m, n, &lambda, &c_m, &a, tol).map_err(e)?.0
            } else {
                let c = c.ok_or("missing c")?;
                build_profile(&BundleProblem::new(m, n, lambda, c_m, c, a).map_err(e)?).map_err(e)?
            };
            return Ok(describe(&p, num(s.c0), String::new()));
        }
        let c = if self.at_c0 { c_m.clone() } else { c.ok_or("missing c")? };
        let p = build_profile(&BundleProblem::new(m, n, lambda, c_m.clone(), c, a).map_err(e)?).map_err(e)?;
        Ok(describe(&p, num(ratio_to_f64(&c_m)), String::new()))
    }
}

pub fn run(spec_path: &Path, csv: Option<&Path>, tol: f64) -> CliResult<()> {
    let text = std::fs::read_to_string(spec_path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", spec_path.display())))?;
    let spec: SweepSpec = serde_json::from_str(&text).map_err(malformed)?;
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Failure::input("--tol must be positive"));
    }
    let plan = Plan::new(&spec)?;
    write_records(&plan.header(), plan.rows(tol), csv)
}
