//! CSV and JSON writers. Floats are written with 17 significant digits.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::equations::Point;
use crate::error::Result;

use super::run::ErrorReport;

/// `x` in scientific notation with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn errors_csv(report: &ErrorReport) -> String {
    let mut s = String::from("grid,variable,l2,linf,eoc,steps,seconds\n");
    for r in &report.rows {
        let eoc = r.eoc.map(fmt_f64).unwrap_or_default();
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{}",
            r.grid,
            r.variable,
            fmt_f64(r.l2),
            fmt_f64(r.linf),
            eoc,
            r.steps,
            fmt_f64(r.seconds)
        );
    }
    s
}

/// One row per solution point: `x[,y]` followed by the variables.
pub fn solution_csv(nodes: &[Point], values: &[Vec<f64>], variables: &[String], two_d: bool) -> String {
    let mut s = String::from(if two_d { "x,y" } else { "x" });
    for v in variables {
        s.push(',');
        s.push_str(v);
    }
    s.push('\n');
    for (x, u) in nodes.iter().zip(values) {
        s.push_str(&fmt_f64(x[0]));
        if two_d {
            s.push(',');
            s.push_str(&fmt_f64(x[1]));
        }
        for v in u {
            s.push(',');
            s.push_str(&fmt_f64(*v));
        }
        s.push('\n');
    }
    s
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, text)?;
    Ok(())
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| crate::Error::Io(e.to_string()))?;
    write_text(path, &(text + "\n"))
}
