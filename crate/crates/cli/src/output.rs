//! Rendering for the three output formats.
//!
//! The human format prints values as grouped decimal digits, e.g.
//! `4.21024 43824 07082 x 10^-1`, which is easy to eyeball against tables.
//! The csv and json formats use Rust's shortest round-trip float printing so
//! downstream tools can parse values back bit for bit.

use serde::Serialize;
use specquad::{Complex, ConvergenceTable, EvalReport};
use std::fmt::Write as _;

/// One evaluation, flattened for serialization.
#[derive(Debug, Clone, Serialize)]
pub struct OutputRecord {
    pub function: String,
    pub nu: f64,
    pub z_re: f64,
    pub z_im: f64,
    pub value_re: f64,
    pub value_im: f64,
    pub est_error: f64,
    pub mesh_points: usize,
    pub halvings: u32,
    pub converged: bool,
}

impl OutputRecord {
    pub fn from_report(function: &str, nu: f64, z: Complex, rep: &EvalReport) -> Self {
        OutputRecord {
            function: function.to_string(),
            nu,
            z_re: z.re,
            z_im: z.im,
            value_re: rep.value.re,
            value_im: rep.value.im,
            est_error: rep.result.est_error,
            mesh_points: rep.result.mesh_points,
            halvings: rep.result.halvings_used,
            converged: rep.result.converged,
        }
    }
}

/// 16 significant digits in groups of five: `1.40690 07287 78469 x 10^6`.
/// Zero prints without sign or exponent.
pub fn group_digits(x: f64) -> String {
    if x == 0.0 {
        return "0.00000 00000 00000".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let s = format!("{x:.15e}");
    let (mant, exp) = s.split_once('e').expect("exponential format");
    let (int, frac) = mant.split_once('.').expect("mantissa has a point");
    let mut out = format!("{int}.{} {} {}", &frac[0..5], &frac[5..10], &frac[10..15]);
    if exp != "0" {
        let _ = write!(out, " x 10^{exp}");
    }
    out
}

fn push_kv(out: &mut String, key: &str, val: &str) {
    let _ = writeln!(out, "{key:<12} {val}");
}

/// Multi-line `key value` block for one evaluation.
pub fn eval_human(rec: &OutputRecord) -> String {
    let mut out = String::new();
    push_kv(&mut out, "function", &rec.function);
    push_kv(&mut out, "nu", &format!("{}", rec.nu));
    if rec.z_im == 0.0 {
        push_kv(&mut out, "z", &format!("{}", rec.z_re));
    } else {
        push_kv(&mut out, "z re", &format!("{}", rec.z_re));
        push_kv(&mut out, "z im", &format!("{}", rec.z_im));
    }
    if rec.value_im == 0.0 {
        push_kv(&mut out, "value", &group_digits(rec.value_re));
    } else {
        push_kv(&mut out, "value re", &group_digits(rec.value_re));
        push_kv(&mut out, "value im", &group_digits(rec.value_im));
    }
    push_kv(&mut out, "est error", &format!("{:.2e}", rec.est_error));
    push_kv(&mut out, "mesh points", &format!("{}", rec.mesh_points));
    push_kv(&mut out, "halvings", &format!("{}", rec.halvings));
    push_kv(&mut out, "converged", if rec.converged { "yes" } else { "no" });
    out
}

pub const EVAL_CSV_HEADER: &str =
    "function,nu,z_re,z_im,value_re,value_im,est_error,mesh_points,halvings,converged";

pub fn eval_csv(rec: &OutputRecord) -> String {
    format!(
        "{}\n{},{},{},{},{},{},{},{},{},{}\n",
        EVAL_CSV_HEADER,
        rec.function,
        rec.nu,
        rec.z_re,
        rec.z_im,
        rec.value_re,
        rec.value_im,
        rec.est_error,
        rec.mesh_points,
        rec.halvings,
        rec.converged,
    )
}

pub fn eval_json(rec: &OutputRecord) -> String {
    let mut s = serde_json::to_string_pretty(rec).expect("record serializes");
    s.push('\n');
    s
}

#[derive(Debug, Clone, Serialize)]
struct RowOut {
    inv_h: f64,
    mesh_points: usize,
    estimate_re: f64,
    estimate_im: f64,
}

fn rows_out(table: &ConvergenceTable) -> Vec<RowOut> {
    table
        .rows
        .iter()
        .map(|r| RowOut {
            inv_h: r.inv_h,
            mesh_points: r.mesh_points,
            estimate_re: r.estimate.re,
            estimate_im: r.estimate.im,
        })
        .collect()
}

pub const TABLE_CSV_HEADER: &str = "inv_h,mesh_points,estimate_re,estimate_im";

pub fn table_csv(table: &ConvergenceTable) -> String {
    let mut out = String::from(TABLE_CSV_HEADER);
    out.push('\n');
    for r in rows_out(table) {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            r.inv_h, r.mesh_points, r.estimate_re, r.estimate_im
        );
    }
    out
}

pub fn table_human(rec: &OutputRecord, table: &ConvergenceTable) -> String {
    let complex = table.rows.iter().any(|r| r.estimate.im != 0.0);
    let mut out = String::new();
    if complex {
        let _ = writeln!(out, "{:>8} {:>6}  {:<26} estimate im", "1/h", "mesh", "estimate re");
    } else {
        let _ = writeln!(out, "{:>8} {:>6}  estimate", "1/h", "mesh");
    }
    for r in &table.rows {
        if complex {
            let _ = writeln!(
                out,
                "{:>8} {:>6}  {:<26} {}",
                r.inv_h,
                r.mesh_points,
                group_digits(r.estimate.re),
                group_digits(r.estimate.im)
            );
        } else {
            let _ = writeln!(
                out,
                "{:>8} {:>6}  {}",
                r.inv_h,
                r.mesh_points,
                group_digits(r.estimate.re)
            );
        }
    }
    out.push('\n');
    out.push_str(&eval_human(rec));
    out
}

pub fn table_json(rec: &OutputRecord, table: &ConvergenceTable) -> String {
    #[derive(Serialize)]
    struct TableOut<'a> {
        record: &'a OutputRecord,
        rows: Vec<RowOut>,
    }
    let mut s = serde_json::to_string_pretty(&TableOut {
        record: rec,
        rows: rows_out(table),
    })
    .expect("table serializes");
    s.push('\n');
    s
}

pub const CHECKS_CSV_HEADER: &str = "group,case,residual,tolerance,pass";

pub fn checks_human(checks: &[crate::checks::Check]) -> String {
    let mut out = String::new();
    for c in checks {
        let _ = writeln!(
            out,
            "{}  {:<18} {:<24} residual {:<12.3e} tol {:e}",
            if c.pass { "PASS" } else { "FAIL" },
            c.group,
            c.case,
            c.residual,
            c.tolerance
        );
    }
    let passed = checks.iter().filter(|c| c.pass).count();
    let _ = writeln!(
        out,
        "\n{} checks: {} passed, {} failed",
        checks.len(),
        passed,
        checks.len() - passed
    );
    out
}

pub fn checks_csv(checks: &[crate::checks::Check]) -> String {
    let mut out = String::from(CHECKS_CSV_HEADER);
    out.push('\n');
    for c in checks {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            c.group, c.case, c.residual, c.tolerance, c.pass
        );
    }
    out
}

pub fn checks_json(checks: &[crate::checks::Check]) -> String {
    let mut s = serde_json::to_string_pretty(checks).expect("checks serialize");
    s.push('\n');
    s
}
