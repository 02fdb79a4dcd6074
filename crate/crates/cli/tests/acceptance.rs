//! Acceptance criteria, one line per criterion. Runs without the test
//! harness so that the lines appear in the `cargo test` output.

use std::process::{Command, ExitCode};
use std::thread;

use warpconv_cli::{run_suite, RunConfig, Suite, SuiteOutput};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// Every listed check exists, passes, and has residual below `tol`.
fn below(out: &SuiteOutput, ids: &[&str], tol: f64) -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for id in ids {
        match out.get(id) {
            Some(r) => {
                pass &= r.pass && r.residual < tol;
                parts.push(format!("{id} {:.2e}", r.residual));
            }
            None => {
                pass = false;
                parts.push(format!("{id} missing"));
            }
        }
    }
    outcome(pass, parts.join(", "))
}

fn param(out: &SuiteOutput, id: &str, key: &str) -> f64 {
    out.get(id)
        .and_then(|r| r.params.get(key))
        .and_then(|v| v.as_f64())
        .unwrap_or(f64::NAN)
}

fn both(a: Outcome, b: Outcome) -> Outcome {
    outcome(a.pass && b.pass, format!("{}; {}", a.detail, b.detail))
}

fn determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("warpconv-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let config = dir.join("small.toml");
    std::fs::write(
        &config,
        "seed = 1234\nlemma_trials = 12\nmax_model_dim = 24\nsplit_instances = 5\ncovariance_instances = 4\n\
         geometry_samples = 500\nwitness_samples = 40\nsweep_deltas = [1.0]\n",
    )
    .expect("write config");
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_warpconv"))
            .arg("--config")
            .arg(&config)
            .output()
            .expect("run warpconv")
    };
    let (a, b) = (run(), run());
    let _ = std::fs::remove_dir_all(&dir);
    let same = a.status.success() && b.status.success() && !a.stdout.is_empty() && a.stdout == b.stdout;
    outcome(same, format!("{} bytes, exit {:?}/{:?}", a.stdout.len(), a.status.code(), b.status.code()))
}

fn main() -> ExitCode {
    let cfg = RunConfig::default();
    let run = |suite: Suite| {
        let cfg = cfg.clone();
        move || run_suite(&cfg, suite, false).unwrap_or_else(|e| panic!("{suite}: {e}"))
    };
    let (lemmas, geometry, axioms, scattering, determinism) = thread::scope(|s| {
        let lemmas = s.spawn(run(Suite::Lemmas));
        let geometry = s.spawn(run(Suite::Geometry));
        let axioms = s.spawn(run(Suite::Axioms));
        let scattering = s.spawn(run(Suite::Scattering));
        let det = s.spawn(determinism);
        (
            lemmas.join().unwrap(),
            geometry.join().unwrap(),
            axioms.join().unwrap(),
            scattering.join().unwrap(),
            det.join().unwrap(),
        )
    });
    let exact = 1e-12;

    let battery = |id: &str| {
        let r = below(&lemmas, &[id], exact);
        let trials = param(&lemmas, id, "trials");
        let max_dim = param(&lemmas, id, "max_dim");
        outcome(
            r.pass && trials == 200.0 && max_dim <= 200.0,
            format!("{} over {trials} models, dim <= {max_dim}", r.detail),
        )
    };
    let control = lemmas.get("warp.left_right.non_skew_control");
    let c1 = both(
        battery("warp.left_right"),
        outcome(
            control.is_some_and(|r| r.pass),
            format!(
                "non-skew control separated in {}/{} trials",
                param(&lemmas, "warp.left_right.non_skew_control", "separated"),
                param(&lemmas, "warp.left_right.non_skew_control", "trials")
            ),
        ),
    );
    let c2 = battery("warp.adjoint");
    let c3 = battery("warp.composition");
    let c4 = {
        let r = below(&lemmas, &["warp.commutation.hypothesis", "warp.commutation.conclusion"], exact);
        let n = param(&lemmas, "warp.commutation.conclusion", "instances");
        outcome(r.pass && n == 50.0, format!("{} over {n} instances", r.detail))
    };
    let c5 = {
        let ids = ["warp.covariance.rotation_d3", "warp.covariance.boost_d2"];
        let r = below(&lemmas, &ids, exact);
        let n = ids.iter().map(|id| param(&lemmas, id, "trials")).fold(f64::INFINITY, f64::min);
        outcome(r.pass && n == 20.0, format!("{}, {n} instances each", r.detail))
    };
    let c6 = {
        let exact_part = below(
            &geometry,
            &["geometry.fact_i[kappa=1]", "geometry.fact_ii[kappa=1]"],
            exact,
        );
        let ids = [
            "geometry.fact_iii.inclusion.d2[kappa=1]",
            "geometry.fact_iii.inclusion.d3[kappa=1]",
            "geometry.fact_iii.inclusion.d4[kappa=1]",
        ];
        let inclusion = below(&geometry, &ids, 0.5);
        let samples_ok = ids.iter().all(|id| param(&geometry, id, "samples") >= 1e4);
        let surj_id = "geometry.fact_iii.surjectivity.d2[kappa=1]";
        let surj = below(&geometry, &[surj_id], 0.5);
        let surj_ok = param(&geometry, surj_id, "samples") >= 1e3;
        let all = both(both(exact_part, inclusion), surj);
        outcome(all.pass && samples_ok && surj_ok, all.detail)
    };
    let c7 = {
        let exact_ids = [
            "net.definition.fock[kappa=1]",
            "net.definition.synthetic[kappa=1]",
            "net.covariance.fock[kappa=1]",
            "net.covariance.synthetic[kappa=1]",
            "net.locality.fock.hypothesis[kappa=1]",
            "net.locality.fock.conclusion[kappa=1]",
            "net.locality.synthetic.hypothesis[kappa=1]",
            "net.locality.synthetic.conclusion[kappa=1]",
            "net.reeh_schlieder.vacuum.fock[kappa=1]",
            "net.reeh_schlieder.vacuum.synthetic[kappa=1]",
        ];
        let span_ids = ["net.isotony.fock[kappa=1]", "net.isotony.synthetic[kappa=1]"];
        let degree_ok = span_ids.iter().all(|id| param(&axioms, id, "degree") == 3.0);
        let r = both(below(&axioms, &exact_ids, exact), below(&axioms, &span_ids, 1e-10));
        let worst = exact_ids
            .iter()
            .chain(&span_ids)
            .filter_map(|id| axioms.get(id))
            .map(|r| r.residual)
            .fold(0.0, f64::max);
        outcome(r.pass && degree_ok, format!("12 checks, worst residual {worst:.2e}"))
    };
    let c8 = {
        let id = "fock.gl_coincidence[kappa=1]";
        let r = below(&axioms, &[id], exact);
        let dim = param(&axioms, id, "dim");
        let n = param(&axioms, id, "matrices");
        outcome(r.pass && dim == 10.0 && n == 21.0, format!("{} on dim {dim}, {n} warp matrices", r.detail))
    };
    let c9 = {
        let phase = below(
            &scattering,
            &["scattering.reference.phase", "scattering.reference.out_conjugate"],
            1e-10,
        );
        let sign = below(&scattering, &["scattering.sign_lemma[kappa=1]"], exact);
        let kernel = below(&scattering, &["scattering.kernel_ratio[kappa=1]"], 1e-14);
        both(both(phase, sign), kernel)
    };
    let c10 = {
        let d3 = scattering.get("scattering.lorentz.d3[kappa=1]");
        let d3_ok = d3.is_some_and(|r| r.pass && r.residual > 0.1);
        let d2 = below(&scattering, &["scattering.lorentz.d2[kappa=1]"], exact);
        outcome(
            d3_ok && d2.pass,
            format!("d3 min max witness {:.3}; {}", d3.map_or(f64::NAN, |r| r.residual), d2.detail),
        )
    };
    let c11 = below(
        &lemmas,
        &["regression.kappa0.warp", "regression.kappa0.fock", "regression.kappa0.scattering"],
        1e-14,
    );
    let c12 = {
        let rows: Vec<_> = scattering.cesaro.iter().filter(|r| r.horizon >= 1.0).collect();
        let monotone = rows.windows(2).all(|w| w[1].deviation < w[0].deviation);
        let text = rows
            .iter()
            .map(|r| format!("T={} {:.3e}", r.horizon, r.deviation))
            .collect::<Vec<_>>()
            .join(", ");
        outcome(monotone, text)
    };

    let criteria = [
        (1, "left/right warps agree; non-skew control", c1, true),
        (2, "adjoint identity", c2, true),
        (3, "composition", c3, true),
        (4, "commutation on tensor splits", c4, true),
        (5, "covariance (d=3 rotations, d=2 boosts)", c5, true),
        (6, "geometry facts", c6, true),
        (7, "axioms of the deformed net", c7, true),
        (8, "free-field coincidence", c8, true),
        (9, "scattering phases", c9, true),
        (10, "Lorentz breaking", c10, true),
        (11, "kappa = 0 regression", c11, true),
        (12, "Cesaro demonstration (soft)", c12, false),
        (13, "determinism", determinism, true),
    ];
    let mut failed = 0;
    for (n, name, o, hard) in &criteria {
        let mark = match (o.pass, hard) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "SOFT",
        };
        println!("criterion {n:>2} {mark}  {name}: {}", o.detail);
        if !o.pass && *hard {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
