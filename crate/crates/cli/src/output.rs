//! CSV tables and polyline SVG.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use crate::error::{CliResult, ExitKind, Failure};

/// Numeric cells carry 17 significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// A numeric table whose first column is the abscissa.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn records(&self) -> impl Iterator<Item = Vec<String>> + '_ {
        self.rows.iter().map(|r| r.iter().map(|&x| num(x)).collect())
    }
}

fn io_failure(path: &Path, err: impl std::fmt::Display) -> Failure {
    Failure::new(ExitKind::Input, anyhow::anyhow!("cannot write {}: {err}", path.display()))
}

fn closed_pipe(err: &std::io::Error) -> bool {
    err.kind() == std::io::ErrorKind::BrokenPipe
}

/// Prints `text` and a newline to stdout. A closed reader ends output quietly.
pub fn print_stdout(text: &str) -> CliResult<()> {
    match writeln!(std::io::stdout().lock(), "{text}") {
        Err(e) if !closed_pipe(&e) => Err(io_failure(Path::new("<stdout>"), e)),
        _ => Ok(()),
    }
}

/// Writes a header and string records to `path`, or to stdout when `None`.
pub fn write_records<I>(header: &[String], rows: I, path: Option<&Path>) -> CliResult<()>
where
    I: IntoIterator<Item = Vec<String>>,
{
    let sink: Box<dyn Write> = match path {
        Some(p) => Box::new(std::fs::File::create(p).map_err(|e| io_failure(p, e))?),
        None => Box::new(std::io::stdout().lock()),
    };
    let shown = path.unwrap_or(Path::new("<stdout>"));
    let mut w = csv::Writer::from_writer(sink);
    let result = (|| {
        w.write_record(header)?;
        for row in rows {
            w.write_record(&row)?;
        }
        w.flush().map_err(csv::Error::from)
    })();
    match result {
        Err(e) if !matches!(e.kind(), csv::ErrorKind::Io(io) if closed_pipe(io)) => Err(io_failure(shown, e)),
        _ => Ok(()),
    }
}

pub fn write_csv(table: &Table, path: Option<&Path>) -> CliResult<()> {
    write_records(&table.header, table.records(), path)
}

pub fn write_text(text: &str, path: &Path) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| io_failure(path, e))
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 40.0;

/// Renders columns 2.. of `table` against column 1 as polylines. Non-finite
/// values split a polyline.
pub fn svg(table: &Table) -> String {
    let finite = |x: &f64| x.is_finite();
    let xs: Vec<f64> = table.rows.iter().map(|r| r[0]).filter(finite).collect();
    let ys: Vec<f64> = table.rows.iter().flat_map(|r| r[1..].iter().copied()).filter(finite).collect();
    let span = |v: &[f64]| {
        let lo = v.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if lo.is_finite() && hi > lo {
            (lo, hi)
        } else if lo.is_finite() {
            (lo - 1.0, lo + 1.0)
        } else {
            (0.0, 1.0)
        }
    };
    let (x0, x1) = span(&xs);
    let (y0, y1) = span(&ys);
    let px = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let py = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);
    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#);
    let _ = writeln!(
        out,
        r#"<rect x="{MARGIN}" y="{MARGIN}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        WIDTH - 2.0 * MARGIN,
        HEIGHT - 2.0 * MARGIN
    );
    let _ = writeln!(out, r#"<text x="{MARGIN}" y="{}" font-size="12">{} in [{x0:.4}, {x1:.4}]</text>"#, HEIGHT - 10.0, table.header[0]);
    let _ = writeln!(out, r#"<text x="{MARGIN}" y="25" font-size="12">[{y0:.4}, {y1:.4}]</text>"#);
    let colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];
    for col in 1..table.header.len() {
        let mut segments: Vec<Vec<String>> = vec![Vec::new()];
        for r in &table.rows {
            let (x, y) = (r[0], r[col]);
            if x.is_finite() && y.is_finite() {
                segments.last_mut().unwrap().push(format!("{:.2},{:.2}", px(x), py(y)));
            } else if !segments.last().unwrap().is_empty() {
                segments.push(Vec::new());
            }
        }
        let color = colors[(col - 1) % colors.len()];
        for s in segments.iter().filter(|s| s.len() > 1) {
            let _ = writeln!(out, r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#, s.join(" "));
        }
    }
    out.push_str("</svg>\n");
    out
}
