use std::path::PathBuf;
use std::process::Command;

use warpconv::report::CheckReport;
use warpconv_cli::output::{emit_report, to_json, to_text, Format};
use warpconv_cli::{run_config, run_suite, RunConfig, RunError, Suite, SuiteOutput};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_warpconv"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("warpconv-cli-{name}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn small() -> RunConfig {
    RunConfig {
        lemma_trials: 6,
        max_model_dim: 12,
        split_instances: 3,
        covariance_instances: 3,
        geometry_samples: 200,
        witness_samples: 30,
        sweep_deltas: vec![1.0],
        ..RunConfig::default()
    }
}

#[test]
fn suite_alone_matches_suite_inside_all() {
    let cfg = small();
    let alone = run_suite(&cfg, Suite::Scattering, false).unwrap();
    let all = run_suite(&cfg, Suite::All, false).unwrap();
    for r in &alone.reports {
        assert_eq!(all.get(&r.check_id), Some(r), "{}", r.check_id);
    }
    assert!(all.all_pass(), "{:?}", all.failures().collect::<Vec<_>>());
}

#[test]
fn reports_are_sorted_and_anchored() {
    let out = run_suite(&small(), Suite::Geometry, false).unwrap();
    assert!(out.reports.windows(2).all(|w| w[0].check_id <= w[1].check_id));
    assert!(out.reports.iter().all(|r| !r.anchor.is_empty() && r.runtime_ms.is_none()));
    let timed = run_suite(&small(), Suite::Geometry, true).unwrap();
    assert!(timed.reports.iter().all(|r| r.runtime_ms.is_some()));
}

#[test]
fn kappa_zero_deforms_nothing() {
    let cfg = RunConfig {
        kappa: vec![0.0],
        ..small()
    };
    let out = run_config(
        &RunConfig {
            suites: vec![Suite::Axioms, Suite::Scattering],
            ..cfg
        },
        false,
    )
    .unwrap();
    assert!(out.all_pass(), "{:?}", out.failures().collect::<Vec<_>>());
    let phase = out.get("scattering.phase_formula[kappa=0]").unwrap();
    assert!(phase.residual < 1e-14);
    assert!(out.phases.iter().all(|row| row.phase_re == 1.0 && row.phase_im == 0.0));
}

#[test]
fn tighter_configured_tolerance_is_applied() {
    let mut cfg = small();
    cfg.tolerances.exact = 1e-30;
    let out = run_suite(&cfg, Suite::Geometry, false).unwrap();
    let r = out.get("geometry.fact_i[kappa=1]").unwrap();
    assert_eq!(r.tol, 1e-30);
    assert_eq!(r.pass, r.residual < 1e-30);
}

#[test]
fn json_round_trips() {
    let out = run_suite(&small(), Suite::Scattering, false).unwrap();
    let text = to_json(&out).unwrap();
    let back: Vec<CheckReport> = serde_json::from_str(&text).unwrap();
    assert_eq!(back, out.reports);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    let keys: Vec<&str> = value[0].as_object().unwrap().keys().map(String::as_str).collect();
    for key in ["check_id", "anchor", "params", "residual", "tol", "pass", "runtime_ms"] {
        assert!(keys.contains(&key), "{key}");
    }
}

#[test]
fn text_summary_has_traceability_matrix() {
    let out = run_suite(&small(), Suite::Germ, false).unwrap();
    let text = to_text(&out);
    assert!(text.starts_with(&format!("{n}/{n} checks passed", n = out.reports.len())));
    assert!(text.contains("traceability"));
    assert!(text.contains("germ: wedge-stability and wedge-reflection locality: 3/3"));
}

#[test]
fn empty_selection_is_an_error() {
    let err = emit_report(&SuiteOutput::default(), Format::Json, None).unwrap_err();
    assert!(matches!(err, RunError::Config(_)));
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn csv_tables() {
    let dir = scratch("csv");
    let status = bin()
        .args(["--suite", "scattering", "--format", "csv", "--out"])
        .arg(&dir)
        .status()
        .unwrap();
    assert!(status.success());
    let phases = std::fs::read_to_string(dir.join("phases.csv")).unwrap();
    assert!(phases.starts_with("d,m,kappa,p,q,direction,phase_re,phase_im,witness\n"));
    assert!(phases.contains("(1.4142135623730951;-1),(1.4142135623730951;1),in,-0.951363128125847"));
    let cesaro = std::fs::read_to_string(dir.join("cesaro.csv")).unwrap();
    assert_eq!(cesaro.lines().count(), 5);
    assert!(std::fs::read_to_string(dir.join("reports.csv")).unwrap().starts_with("check_id,anchor,"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn exit_codes() {
    let ok = bin().args(["--suite", "germ"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8(ok.stdout).unwrap().trim_start().starts_with('['));

    assert_eq!(bin().args(["--dim", "1"]).output().unwrap().status.code(), Some(2));
    assert_eq!(bin().args(["--suite", "nope"]).output().unwrap().status.code(), Some(2));
    assert_eq!(bin().args(["--format", "csv", "--suite", "germ"]).output().unwrap().status.code(), Some(2));

    let dir = scratch("exit");
    let big = dir.join("big.toml");
    std::fs::write(&big, "d = 3\nlattice_k = 10\n").unwrap();
    let guarded = bin().arg("--config").arg(&big).args(["--suite", "axioms"]).output().unwrap();
    assert_eq!(guarded.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&guarded.stderr).contains("exceeds the limit"));

    // a tolerance no check can meet is a hard failure
    let strict = dir.join("strict.toml");
    std::fs::write(&strict, "[tolerances]\nexact = 1e-300\n").unwrap();
    let failed = bin().arg("--config").arg(&strict).args(["--suite", "geometry"]).output().unwrap();
    assert_eq!(failed.status.code(), Some(1));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn flags_override_the_file() {
    let dir = scratch("flags");
    let cfg = dir.join("cfg.toml");
    std::fs::write(&cfg, "seed = 5\nkappa = [3.0]\n").unwrap();
    let out = bin()
        .arg("--config")
        .arg(&cfg)
        .args(["--suite", "scattering", "--kappa", "0.5,2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let reports: Vec<CheckReport> = serde_json::from_slice(&out.stdout).unwrap();
    let ids: Vec<&str> = reports.iter().map(|r| r.check_id.as_str()).collect();
    assert!(ids.contains(&"scattering.sign_lemma[kappa=0.5]"));
    assert!(ids.contains(&"scattering.sign_lemma[kappa=2]"));
    assert!(!ids.iter().any(|id| id.contains("kappa=3")));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn configuration_in_the_guide_parses() {
    let chapter = include_str!("../../../book/src/runner.md");
    let start = chapter.find("```toml\n").unwrap() + "```toml\n".len();
    let len = chapter[start..].find("```").unwrap();
    let cfg = RunConfig::from_toml(&chapter[start..start + len]).unwrap();
    assert_eq!(cfg, RunConfig::default());
}
