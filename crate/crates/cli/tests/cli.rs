use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn csck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_csck")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn constant<'a>(doc: &'a Value, name: &str) -> &'a Value {
    doc["constants"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap_or_else(|| panic!("no constant {name}"))
}

fn csv_rows(p: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_path(p).unwrap();
    let header = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r.records().map(|x| x.unwrap().iter().map(String::from).collect()).collect();
    (header, rows)
}

fn column(rows: &[Vec<String>], header: &[String], name: &str) -> Vec<f64> {
    let i = header.iter().position(|h| h == name).unwrap();
    rows.iter().map(|r| r[i].parse().unwrap()).collect()
}

#[test]
fn flat_curve_data_matches_closed_form() {
    let dir = TempDir::new().unwrap();
    let (doc, csv, svg) = (path(&dir, "f.json"), path(&dir, "f.csv"), path(&dir, "f.svg"));
    let out = csck(&["flat", "--n", "2", "--a", "1", "--c", "0", "--csv", s(&csv), "--svg", s(&svg), "--json", s(&doc)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let (header, rows) = csv_rows(&csv);
    assert_eq!(header, ["t", "phi", "u", "det_g"]);
    assert_eq!(rows.len(), 401);
    let mantissa = rows[0][0].trim_start_matches('-').split('e').next().unwrap();
    assert_eq!(mantissa.len(), 18, "{}", rows[0][0]);
    for (t, phi) in column(&rows, &header, "t").iter().zip(column(&rows, &header, "phi")) {
        assert!((t - ((phi - 1.0).ln() - 1.0 / (phi - 1.0))).abs() < 1e-9);
    }
    assert!(std::fs::read_to_string(&svg).unwrap().contains("<polyline"));
    let d = json(&doc);
    assert_eq!(d["schema_version"], "1");
    assert_eq!(d["verification"]["pass"], true);
    assert_eq!(d["polynomial"]["coefficients"], serde_json::json!(["1", "-2", "1"]));
}

#[test]
fn flat_examples() {
    let dir = TempDir::new().unwrap();
    let doc = path(&dir, "f.json");
    assert_eq!(code(&csck(&["flat", "--n", "2", "--a", "1", "--c", "-6", "--json", s(&doc)])), 0);
    assert_eq!(json(&doc)["polynomial"]["coefficients"], serde_json::json!(["3", "-5", "1", "1"]));
    assert_eq!(code(&csck(&["flat", "--n", "2", "--a", "1", "--c", "1", "--json", s(&doc)])), 0);
    let d = json(&doc);
    assert_eq!(constant(&d, "kappa")["exact"], "8/3");
    assert_eq!(constant(&d, "b")["exact"], "4");
    assert_eq!(d["endpoint_class"], "FiniteSimpleRoot");
}

#[test]
fn decimal_inputs_are_snapped_and_recorded() {
    let dir = TempDir::new().unwrap();
    let doc = path(&dir, "f.json");
    let out = csck(&["flat", "--n", "2", "--a", "0.5", "--c", "-1.25", "--no-verify", "--json", s(&doc)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let d = json(&doc);
    assert_eq!(d["parameters"]["a"], "1/2");
    assert_eq!(d["inputs"][1]["given"], "-1.25");
    assert_eq!(d["inputs"][1]["value"], "-5/4");
    assert_eq!(d["inputs"][1]["snapped"], true);
    assert!(d.get("verification").is_none());
    assert_eq!(d["tolerances"]["thresholds"]["curvature"], 1e-5);
}

#[test]
fn tolerance_flags_are_recorded() {
    let dir = TempDir::new().unwrap();
    let doc = path(&dir, "f.json");
    let out = csck(&["flat", "--n", "2", "--a", "1", "--c", "0", "--curvature-tol", "1e-4", "--tol", "1e-8", "--json", s(&doc)]);
    assert_eq!(code(&out), 0);
    let d = json(&doc);
    assert_eq!(d["tolerances"]["solver"], 1e-8);
    assert_eq!(d["tolerances"]["thresholds"]["curvature"], 1e-4);
    assert_eq!(code(&csck(&["flat", "--n", "2", "--a", "1", "--c", "0", "--tol", "-1"])), 2);
}

#[test]
fn bundle_examples() {
    let dir = TempDir::new().unwrap();
    let doc = path(&dir, "b.json");
    let out = csck(&["bundle", "--m", "1", "--n", "2", "--lambda", "1", "--cM", "-4", "--a", "1", "--at-c0", "--json", s(&doc)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let d = json(&doc);
    assert!((constant(&d, "c0")["approx"].as_f64().unwrap() + 0.3094).abs() < 5e-4);
    assert!((constant(&d, "b_extremal")["approx"].as_f64().unwrap() - 4.4641).abs() < 5e-4);
    assert_eq!(d["case_tag"], "CaseIV_Estar_doubleroot");

    let out = csck(&["bundle", "--m", "1", "--n", "2", "--lambda", "0", "--cM", "3", "--c", "3", "--a", "1", "--json", s(&doc)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let d = json(&doc);
    assert_eq!(d["total_space"], "Estar");
    assert!(d["asymptotics"].as_array().unwrap().iter().any(|m| m["location"] == "PunctureZero"));

    let out = csck(&["bundle", "--m", "1", "--n", "2", "--lambda", "-1", "--cM", "2", "--a", "1/1000", "--json", s(&doc)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let d = json(&doc);
    let sols = d["solutions"].as_array().unwrap();
    assert_eq!(sols.len(), 1);
    assert_eq!(sols[0]["b"], "999/1000");
    assert!((sols[0]["c_approx"].as_f64().unwrap() - 11.97607).abs() < 1e-4);
    assert_eq!(d["case_tag"], "LambdaNeg_Estar");
}

#[test]
fn projective_examples() {
    let dir = TempDir::new().unwrap();
    let (doc, csv) = (path(&dir, "p.json"), path(&dir, "p.csv"));
    let out = csck(&["projective", "--m", "1", "--n", "2", "--lambda", "1", "--a", "1", "--b", "2", "--json", s(&doc), "--csv", s(&csv)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let d = json(&doc);
    assert_eq!(d["parameters"]["cM"], "610/13");
    assert_eq!(d["parameters"]["c"], "276/13");
    assert_eq!(d["polynomial"]["coefficients"], serde_json::json!(["64/13", "-114/13", "1", "60/13", "-23/13"]));
    assert_eq!(d["denominator"]["coefficients"], serde_json::json!(["0", "1", "1"]));
    assert_eq!(d["extension_ok"], true);
    assert_eq!(d["cM_range"], serde_json::json!({"Above": "4"}));
    let (header, rows) = csv_rows(&csv);
    assert_eq!(header, ["tau", "phi"]);
    let phi = column(&rows, &header, "phi");
    assert!(phi[0].abs() < 1e-15 && phi.last().unwrap().abs() < 1e-12);

    let out = csck(&["projective", "--m", "1", "--n", "2", "--lambda", "-1", "--a", "1/10", "--cM", "-2", "--json", s(&doc)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let sol = &json(&doc)["solutions"][0];
    assert!((sol["b_approx"].as_f64().unwrap() - 0.61146).abs() < 1e-4);
    assert!((sol["c_approx"].as_f64().unwrap() - 5.02242).abs() < 1e-3);

    let out = csck(&["projective", "--m", "1", "--n", "2", "--lambda", "-1", "--a", "1/1000", "--cM", "2", "--root", "1", "--json", s(&doc)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let d = json(&doc);
    assert_eq!(d["solutions"].as_array().unwrap().len(), 2);
    assert_eq!(d["parameters"]["b"], d["solutions"][1]["b"]);
}

#[test]
fn projective_range_error_quotes_the_range() {
    let out = csck(&["projective", "--m", "1", "--n", "2", "--lambda", "1", "--a", "1", "--cM", "3"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("(4, ∞)"), "{}", stderr(&out));
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["flat", "--n", "2", "--a", "1", "--c", "5"], 2),
        (&["flat", "--n", "2", "--a", "x", "--c", "0"], 2),
        (&["flat", "--n", "2", "--a", "1"], 2),
        (&["bundle", "--m", "1", "--n", "2", "--lambda", "1", "--cM", "5", "--c", "1", "--a", "1"], 2),
        (&["bundle", "--m", "1", "--n", "2", "--lambda", "1", "--cM", "5", "--a", "1"], 2),
        (&["bundle", "--m", "1", "--n", "2", "--lambda", "-1", "--cM", "-2", "--a", "1/10"], 2),
        (&["bundle", "--m", "1", "--n", "2", "--lambda", "-1", "--cM", "1", "--a", "1/10", "--no-verify"], 4),
        (&["projective", "--m", "1", "--n", "2", "--lambda", "0", "--a", "1", "--b", "2"], 2),
        (&["projective", "--m", "1", "--n", "2", "--lambda", "-1", "--a", "1/10", "--cM", "100"], 4),
        (&["projective", "--m", "1", "--n", "2", "--lambda", "1", "--a", "1"], 2),
        (&["plot-data", "--dataset", "nonexistent"], 2),
        (&["verify", "/nonexistent/doc.json"], 2),
    ];
    for (args, want) in cases {
        let out = csck(args);
        assert_eq!(code(&out), *want, "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn verify_round_trip_and_corruption() {
    let dir = TempDir::new().unwrap();
    let doc = path(&dir, "p.json");
    let report = path(&dir, "r.json");
    assert_eq!(code(&csck(&["projective", "--m", "1", "--n", "2", "--lambda", "1", "--a", "1", "--b", "2", "--json", s(&doc)])), 0);
    let out = csck(&["verify", s(&doc), "--json", s(&report)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let r = json(&report);
    assert_eq!(r["pass"], true);
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));

    let mut d = json(&doc);
    d["polynomial"]["coefficients"][2] = Value::String("1001/1000".into());
    let bad = path(&dir, "bad.json");
    std::fs::write(&bad, serde_json::to_string(&d).unwrap()).unwrap();
    let out = csck(&["verify", s(&bad), "--json", s(&report)]);
    assert_eq!(code(&out), 3);
    let r = json(&report);
    assert!(r["checks"].as_array().unwrap().iter().any(|c| c["name"] == "curvature_residual" && c["pass"] == false));

    let empty = path(&dir, "empty.json");
    std::fs::write(&empty, "").unwrap();
    assert_eq!(code(&csck(&["verify", s(&empty)])), 2);
    std::fs::write(&empty, "{\"schema_version\": \"1\"}").unwrap();
    assert_eq!(code(&csck(&["verify", s(&empty)])), 2);
}

#[test]
fn verify_accepts_every_command_output() {
    let dir = TempDir::new().unwrap();
    let doc = path(&dir, "d.json");
    let runs: &[&[&str]] = &[
        &["flat", "--n", "3", "--a", "1", "--c", "-2"],
        &["bundle", "--m", "1", "--n", "2", "--lambda", "1", "--cM", "5", "--c", "-1", "--a", "1"],
        &["bundle", "--m", "1", "--n", "2", "--lambda", "1", "--cM", "-8", "--a", "1", "--at-c0"],
        &["projective", "--m", "1", "--n", "2", "--lambda", "-1", "--a", "1/10", "--cM", "-2"],
    ];
    for args in runs {
        let mut full = args.to_vec();
        full.extend(["--no-verify", "--json", s(&doc)]);
        assert_eq!(code(&csck(&full)), 0, "{args:?}");
        let out = csck(&["verify", s(&doc)]);
        assert_eq!(code(&out), 0, "{args:?}: {}", stderr(&out));
        let r: Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(r["pass"], true);
    }
}

#[test]
fn bundle_perturbed_polynomial_fails_verification() {
    let dir = TempDir::new().unwrap();
    let doc = path(&dir, "b.json");
    assert_eq!(code(&csck(&["bundle", "--m", "1", "--n", "2", "--lambda", "1", "--cM", "5", "--c", "-1", "--a", "1", "--json", s(&doc)])), 0);
    let mut d = json(&doc);
    let c3: String = d["polynomial"]["coefficients"][3].as_str().unwrap().into();
    let c = csck_core::scalar::parse_rational(&c3).unwrap() + csck_core::scalar::ratio(1, 1000);
    d["polynomial"]["coefficients"][3] = Value::String(csck_core::scalar::format_rational(&c));
    std::fs::write(&doc, serde_json::to_string(&d).unwrap()).unwrap();
    assert_eq!(code(&csck(&["verify", s(&doc)])), 3);
}

fn sweep(dir: &TempDir, spec: &str) -> (Output, PathBuf) {
    let (spec_path, csv) = (path(dir, "spec.json"), path(dir, "out.csv"));
    std::fs::write(&spec_path, spec).unwrap();
    (csck(&["sweep", s(&spec_path), "--csv", s(&csv)]), csv)
}

#[test]
fn sweep_closing_curvature_approaches_four() {
    let dir = TempDir::new().unwrap();
    let spec = r#"{"family":"projective","parameters":{"m":1,"n":2,"lambda":"1","a":"1","b":{"geomspace":["1.01","1000",30]}}}"#;
    let (out, csv) = sweep(&dir, spec);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let (header, rows) = csv_rows(&csv);
    assert_eq!(rows.len(), 30);
    let b = column(&rows, &header, "b");
    assert!(b.windows(2).all(|w| w[0] < w[1]), "rows out of grid order");
    let cm = column(&rows, &header, "cM_value");
    assert!(cm.windows(2).all(|w| w[1] < w[0]) && cm.iter().all(|&x| x > 4.0));
    assert!((cm.last().unwrap() - 4.0).abs() < 0.01);
}

#[test]
fn sweep_h_grows_as_zeta_shrinks() {
    let dir = TempDir::new().unwrap();
    let spec = r#"{"family":"h","parameters":{"m":1,"n":2,"lambda":-1,"a":{"geomspace":["1/10","1e-6",11]},"b_over_a":2}}"#;
    let (out, csv) = sweep(&dir, spec);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let (header, rows) = csv_rows(&csv);
    let h = column(&rows, &header, "H");
    assert!(h.windows(2).all(|w| w[1] > w[0]) && *h.last().unwrap() > 1e10);
}

#[test]
fn sweep_edge_cases() {
    let dir = TempDir::new().unwrap();
    let (out, csv) = sweep(&dir, r#"{"family":"flat","parameters":{"n":2,"a":"1","c":{"linspace":[-1,1,0]}}}"#);
    assert_eq!(code(&out), 0);
    assert_eq!(std::fs::read_to_string(&csv).unwrap(), "n,a,c,endpoint_class,b,kappa,status,message\n");

    let (out, csv) = sweep(&dir, r#"{"family":"bundle","parameters":{"m":1,"n":2,"lambda":1,"cM":5,"a":1,"c":[-1,1,-2]}}"#);
    assert_eq!(code(&out), 0);
    let (header, rows) = csv_rows(&csv);
    let status: Vec<_> = rows.iter().map(|r| r[header.len() - 2].as_str()).collect();
    assert_eq!(status, ["ok", "error", "ok"]);
    assert!(rows[1].last().unwrap().contains("supremum"));

    for bad in [
        "not json",
        r#"{"family":"flat","parameters":{"n":2,"a":1}}"#,
        r#"{"family":"flat","parameters":{"n":2,"a":1,"c":0,"q":1}}"#,
        r#"{"family":"projective","parameters":{"m":1,"n":2,"lambda":1,"a":1}}"#,
        r#"{"family":"flat","parameters":{"n":2,"a":1,"c":{"logspace":[1,2,3]}}}"#,
    ] {
        assert_eq!(code(&sweep(&dir, bad).0), 2, "{bad}");
    }
}

#[test]
fn plot_data_emits_every_dataset() {
    let dir = TempDir::new().unwrap();
    let out = csck(&["plot-data", "--all", "--dir", s(dir.path()), "--samples", "64"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let listing = stdout(&csck(&["plot-data", "--list"]));
    let names: Vec<&str> = listing.lines().map(|l| l.split_whitespace().next().unwrap()).collect();
    assert_eq!(names.len(), 11);
    for name in names {
        let (header, rows) = csv_rows(&dir.path().join(format!("{name}.csv")));
        assert_eq!(rows.len(), 64, "{name}");
        assert!(header == ["t", "phi", "u", "det_g"] || header[0] == "tau" || header[0] == "b", "{name}: {header:?}");
        assert!(dir.path().join(format!("{name}.svg")).exists());
    }
    let out = csck(&["plot-data", "--dataset", "projective-b2", "--samples", "5"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).lines().count(), 6);
}
