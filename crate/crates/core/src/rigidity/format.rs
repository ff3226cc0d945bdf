use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use super::report::{IdentityRecord, RigidityReport, Status, WeightRecord};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(Error::Config(format!("unknown format {other:?}"))),
        }
    }
}

fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn csv_rows(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8 fields")
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Skipped => "skipped",
    }
}

fn weight_row(w: &WeightRecord) -> Vec<String> {
    vec![
        w.weight.clone(),
        w.height.to_string(),
        w.casimir_exponent.clone(),
        format!("{:e}", w.kappa_modulus_value),
        w.is_phase.to_string(),
    ]
}

const WEIGHT_HEADER: [&str; 5] = [
    "weight",
    "height",
    "casimir_exponent",
    "kappa_modulus",
    "is_phase",
];

fn identity_row(r: &IdentityRecord) -> Vec<String> {
    vec![
        r.suite.to_string(),
        r.name.clone(),
        status_str(r.status).to_string(),
        r.backend.clone(),
        format!("{:e}", r.defect),
        r.detail.clone().unwrap_or_default(),
    ]
}

const IDENTITY_HEADER: [&str; 6] = ["suite", "name", "status", "backend", "defect", "detail"];

pub fn render_weights(weights: &[WeightRecord], format: Format) -> String {
    match format {
        Format::Json => json(weights),
        Format::Csv => csv_rows(&WEIGHT_HEADER, weights.iter().map(weight_row)),
        Format::Text => {
            let mut out = String::new();
            let width = weights
                .iter()
                .map(|w| w.weight.len())
                .max()
                .unwrap_or(6)
                .max(6);
            let _ = writeln!(
                out,
                "{:width$}  {:>6}  {:>10}  {:>14}  phase",
                "weight", "height", "exponent", "|kappa|"
            );
            for w in weights {
                let _ = writeln!(
                    out,
                    "{:width$}  {:>6}  {:>10}  {:>14.6e}  {}",
                    w.weight,
                    w.height,
                    w.casimir_exponent,
                    w.kappa_modulus_value,
                    if w.is_phase { "yes" } else { "no" }
                );
            }
            out
        }
    }
}

pub fn render_identities(records: &[IdentityRecord], format: Format) -> String {
    match format {
        Format::Json => json(records),
        Format::Csv => csv_rows(&IDENTITY_HEADER, records.iter().map(identity_row)),
        Format::Text => {
            let mut out = String::new();
            for r in records {
                let _ = write!(
                    out,
                    "{:7} [{}/{}] {}  (defect {:.2e})",
                    status_str(r.status).to_uppercase(),
                    r.suite,
                    r.backend,
                    r.name,
                    r.defect
                );
                if let Some(d) = &r.detail {
                    let _ = write!(out, "  {d}");
                }
                out.push('\n');
            }
            out
        }
    }
}

pub fn render(report: &RigidityReport, format: Format) -> String {
    match format {
        Format::Json => json(report),
        Format::Csv => {
            let mut rows = Vec::new();
            for w in &report.weights {
                let mut row = vec!["weight".to_string()];
                row.extend(weight_row(w));
                row.push(String::new());
                rows.push(row);
            }
            for r in &report.identities {
                let mut row = vec!["identity".to_string()];
                row.extend(identity_row(r));
                rows.push(row);
            }
            if let Some(d) = &report.defect_51 {
                rows.push(vec![
                    "defect_51".into(),
                    d.omega.clone(),
                    d.value.map(|v| format!("{v:e}")).unwrap_or_default(),
                    d.positive.map(|p| p.to_string()).unwrap_or_default(),
                    String::new(),
                    String::new(),
                    d.note.clone().unwrap_or_default(),
                ]);
            }
            if let Some(s) = &report.spectrum_check {
                for c in &s.checks {
                    rows.push(vec![
                        "spectrum_check".into(),
                        c.n.to_string(),
                        format!("{:e}", c.distance),
                        c.passed.to_string(),
                        String::new(),
                        String::new(),
                        String::new(),
                    ]);
                }
            }
            let v = &report.verdict;
            rows.push(vec![
                "verdict".into(),
                serde_json::to_value(v.status)
                    .ok()
                    .and_then(|s| s.as_str().map(str::to_string))
                    .unwrap_or_default(),
                v.exit_code.to_string(),
                v.degenerate.to_string(),
                String::new(),
                String::new(),
                v.message.clone(),
            ]);
            csv_rows(&["section", "a", "b", "c", "d", "e", "f"], rows)
        }
        Format::Text => {
            let c = &report.config;
            let mut out = format!(
                "{}\ntype {}  mu = {}  omega index {}  backend {}  height <= {}  power <= {}\n\n",
                report.version,
                c.lie_type,
                c.mu,
                c.omega_index,
                c.backend,
                c.max_height,
                c.max_power
            );
            out.push_str(&render_weights(&report.weights, Format::Text));
            out.push('\n');
            out.push_str(&render_identities(&report.identities, Format::Text));
            if let Some(d) = &report.defect_51 {
                match d.value {
                    Some(v) => {
                        let _ = writeln!(out, "\ndefect_51 at omega = {}: {v:.6e}", d.omega);
                    }
                    None => {
                        let _ = writeln!(
                            out,
                            "\ndefect_51 skipped: {}",
                            d.note.as_deref().unwrap_or("")
                        );
                    }
                }
            }
            if let Some(s) = &report.spectrum_check {
                for ch in &s.checks {
                    let _ = writeln!(
                        out,
                        "spectrum mu={} vs {} at n={}: distance {:.2e} {}",
                        s.mu,
                        s.negated_mu,
                        ch.n,
                        ch.distance,
                        if ch.passed { "ok" } else { "MISMATCH" }
                    );
                }
            }
            let _ = writeln!(
                out,
                "\nverdict: {} (exit {})",
                report.verdict.message, report.verdict.exit_code
            );
            out
        }
    }
}
