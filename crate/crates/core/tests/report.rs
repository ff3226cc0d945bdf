use std::process::Command;

use rigidity::lie::{LieType, Series};
use rigidity::rigidity::{rigidity_report, Backend, RunConfig, VerdictStatus};
use rigidity::scalars::{rational, BigRational};

fn cfg(series: Series, rank: usize, mu: BigRational, max_height: u32) -> RunConfig {
    RunConfig {
        lie_type: LieType::new(series, rank).unwrap(),
        mu,
        omega_index: 0,
        max_height,
        max_power: 3,
        backend: Backend::Cyclotomic,
        threshold: 4096,
    }
}

#[test]
fn exit_status_sweep() {
    let types = [
        (Series::A, 1),
        (Series::A, 2),
        (Series::A, 3),
        (Series::B, 2),
        (Series::B, 3),
        (Series::C, 2),
        (Series::C, 3),
        (Series::D, 4),
    ];
    for (series, rank) in types {
        let mut mus = vec![rational(1, 2), rational(2, 1)];
        if series == Series::A {
            mus.push(rational(-1, 2));
        }
        for mu in mus {
            let c = cfg(series, rank, mu, 6);
            let report = rigidity_report(&c).unwrap();
            assert_eq!(
                report.verdict.status,
                VerdictStatus::Pass,
                "{} mu={}: {:#?}",
                c.lie_type,
                c.mu,
                report.verdict
            );
            for w in &report.weights {
                assert_eq!(w.is_phase, w.height == 0, "{}", w.weight);
            }
        }
    }
}

#[test]
fn degenerate_control_run() {
    for mu in [rational(1, 1), rational(-1, 1)] {
        let report = rigidity_report(&cfg(Series::A, 2, mu, 3)).unwrap();
        assert!(report.verdict.degenerate);
        assert_eq!(report.verdict.exit_code, 0);
        assert!(report.weights.iter().all(|w| w.is_phase));
    }
}

#[test]
fn json_schema_top_level() {
    let report = rigidity_report(&cfg(Series::A, 1, rational(1, 2), 3)).unwrap();
    let value = serde_json::to_value(&report).unwrap();
    let keys: Vec<&str> = value
        .as_object()
        .unwrap()
        .keys()
        .map(String::as_str)
        .collect();
    for k in [
        "config",
        "weights",
        "identities",
        "defect_51",
        "spectrum_check",
        "verdict",
        "version",
    ] {
        assert!(keys.contains(&k), "{k} missing from {keys:?}");
    }
    let w = &value["weights"][1];
    assert_eq!(w["casimir_exponent"], "3/2");
    assert_eq!(w["kappa_modulus"], "zeta(0/1)*|mu|^(3/2)");
}

fn cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_rigidity"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
    )
}

#[test]
fn cli_exit_codes() {
    assert_eq!(cli(&["report"]).0, 0);
    assert_eq!(
        cli(&["report", "--type", "B", "--rank", "2", "--mu", "-1/2"]).0,
        5
    );
    assert_eq!(cli(&["report", "--mu", "0"]).0, 5);
    assert_eq!(cli(&["report", "--type", "D", "--rank", "3"]).0, 5);
    assert_eq!(cli(&["verify", "--suite", "tl", "--rank", "2"]).0, 5);
    assert_eq!(cli(&["defect51", "--rank", "3", "--threshold", "16"]).0, 4);
    assert_eq!(cli(&["defect51", "--rank", "2"]).0, 0);
    assert_eq!(
        cli(&["spectrum-sign-check", "--rank", "2", "--threshold", "8"]).0,
        4
    );
    // A budget too small for the braiding suite leaves the report incomplete.
    let (code, body) = cli(&["report", "--threshold", "4"]);
    assert_eq!(code, 4);
    assert!(body.contains("\"skipped\""));
}

#[test]
fn cli_formats() {
    let (code, csv) = cli(&["kappa-table", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(
        csv.lines().next().unwrap(),
        "weight,height,casimir_exponent,kappa_modulus,is_phase"
    );
    assert_eq!(csv.lines().count(), 5);
    let (code, text) = cli(&[
        "verify",
        "--suite",
        "hecke",
        "--backend",
        "rational",
        "--format",
        "text",
    ]);
    assert_eq!(code, 0);
    assert!(text.lines().all(|l| l.starts_with("PASS")));
    let (code, json) = cli(&["defect51", "--mu", "1"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert!(v["defect_51"].as_f64().unwrap() <= 1e-9);
}
