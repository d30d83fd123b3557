//! Named datasets behind the reference plots.

use std::path::Path;

use csck_core::flat::{build_f, FlatProblem};
use csck_core::momentum::{build_profile_at_c0, split_p};
use csck_core::numeric::linspace;
use csck_core::projective::{build_projective_profile, c_m_of_b, solve_b_given_c_m};
use csck_core::scalar::{f64_to_ratio, rat, ratio, ratio_to_f64};
use csck_core::Rational;

use crate::error::{CliResult, Failure};
use crate::output::{svg, write_csv, write_text, Table};
use crate::samples::{default_tau_range, flat_table, momentum_table};

pub struct Dataset {
    pub name: &'static str,
    pub description: &'static str,
    build: fn(usize) -> CliResult<Table>,
}

impl Dataset {
    pub fn table(&self, samples: usize) -> CliResult<Table> {
        (self.build)(samples)
    }
}

fn flat(n: u32, a: i64, c: i64, lo: f64, hi: f64, samples: usize) -> CliResult<Table> {
    let p = build_f(&FlatProblem::new(n, rat(a), rat(c))?)?;
    flat_table(&p, lo, hi, samples)
}

fn supremum_psi(samples: usize) -> CliResult<Table> {
    let (p0, p1) = split_p(1, 2, &rat(1), &rat(-4), &rat(1));
    let mut t = Table::new(&["tau", "psi"]);
    for tau in linspace(1.25, 12.0, samples) {
        let x = f64_to_ratio(tau)?;
        t.rows.push(vec![tau, ratio_to_f64(&(p0.eval(&x) / p1.eval(&x)))]);
    }
    Ok(t)
}

fn supremum_phi(samples: usize) -> CliResult<Table> {
    let (p, _) = build_profile_at_c0(1, 2, &rat(1), &rat(-4), &rat(1), 1e-12)?;
    let (lo, hi) = default_tau_range(&p);
    momentum_table(&p, lo, hi, samples)
}

fn closing(lambda: Rational, a: Rational, b: Rational, samples: usize) -> CliResult<Table> {
    let p = build_projective_profile(1, 2, &lambda, &a, &b)?;
    let (lo, hi) = default_tau_range(&p.profile);
    momentum_table(&p.profile, lo, hi, samples)
}

fn closing_root(c_m: i64, a: Rational, index: usize, samples: usize) -> CliResult<Table> {
    let roots = solve_b_given_c_m(1, 2, &rat(-1), &a, &rat(c_m), 1e-14)?;
    let root = roots.get(index).ok_or_else(|| Failure::no_solution("missing closing root"))?;
    closing(rat(-1), a, root.b.clone(), samples)
}

fn closing_curve(samples: usize) -> CliResult<Table> {
    let a = ratio(1, 1000);
    let mut t = Table::new(&["b", "c_M"]);
    for b in linspace(0.002, 0.9995, samples) {
        let cm = c_m_of_b(1, 2, &rat(-1), &a, &f64_to_ratio(b)?)?;
        t.rows.push(vec![b, ratio_to_f64(&cm)]);
    }
    Ok(t)
}

pub const DATASETS: &[Dataset] = &[
    Dataset { name: "flat-c0", description: "phi(t) for n=2, a=1, c=0", build: |s| flat(2, 1, 0, -6.0, 6.0, s) },
    Dataset {
        name: "flat-c0-surface",
        description: "det g = exp(-nt) F(phi) for n=2, a=1, c=0; rotate (t, det_g) for the surface",
        build: |s| flat(2, 1, 0, -8.0, 4.0, s),
    },
    Dataset { name: "flat-c-6", description: "phi(t) for n=2, a=1, c=-6", build: |s| flat(2, 1, -6, -6.0, -0.01, s) },
    Dataset { name: "flat-c1", description: "phi(t) for n=2, a=1, c=1", build: |s| flat(2, 1, 1, -6.0, 6.0, s) },
    Dataset {
        name: "bundle-supremum-psi",
        description: "psi = P0/P1 for m=1, n=2, lambda=1, cM=-4, a=1; its minimum is c0",
        build: supremum_psi,
    },
    Dataset {
        name: "bundle-supremum-phi",
        description: "phi(tau) at c = c0 for m=1, n=2, lambda=1, cM=-4, a=1",
        build: supremum_phi,
    },
    Dataset {
        name: "projective-b2",
        description: "closing phi(tau) for m=1, n=2, lambda=1, a=1, b=2",
        build: |s| closing(rat(1), rat(1), rat(2), s),
    },
    Dataset {
        name: "projective-cm-curve",
        description: "c_M(b) for m=1, n=2, lambda=-1, a=1/1000; crossings with c_M=2 are the closing roots",
        build: closing_curve,
    },
    Dataset {
        name: "projective-cm2-first",
        description: "closing phi(tau) for lambda=-1, cM=2, a=1/1000, smaller root b",
        build: |s| closing_root(2, ratio(1, 1000), 0, s),
    },
    Dataset {
        name: "projective-cm2-second",
        description: "closing phi(tau) for lambda=-1, cM=2, a=1/1000, larger root b",
        build: |s| closing_root(2, ratio(1, 1000), 1, s),
    },
    Dataset {
        name: "projective-cm-2",
        description: "closing phi(tau) for lambda=-1, cM=-2, a=1/10",
        build: |s| closing_root(-2, ratio(1, 10), 0, s),
    },
];

pub fn find(name: &str) -> CliResult<&'static Dataset> {
    DATASETS.iter().find(|d| d.name == name).ok_or_else(|| {
        let names: Vec<_> = DATASETS.iter().map(|d| d.name).collect();
        Failure::input(format!("unknown dataset '{name}'; available: {}", names.join(", ")))
    })
}

pub fn emit(d: &Dataset, samples: usize, csv: Option<&Path>, svg_path: Option<&Path>) -> CliResult<()> {
    let t = d.table(samples)?;
    write_csv(&t, csv)?;
    if let Some(p) = svg_path {
        write_text(&svg(&t), p)?;
    }
    Ok(())
}

pub fn emit_all(dir: &Path, samples: usize) -> CliResult<()> {
    std::fs::create_dir_all(dir).map_err(|e| Failure::input(format!("cannot create {}: {e}", dir.display())))?;
    for d in DATASETS {
        let csv = dir.join(format!("{}.csv", d.name));
        let svg_path = dir.join(format!("{}.svg", d.name));
        emit(d, samples, Some(&csv), Some(&svg_path))?;
    }
    Ok(())
}
