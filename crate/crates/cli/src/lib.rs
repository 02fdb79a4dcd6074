//! Batch verification runner for `warpconv`: runs check suites under a
//! fixed seed and writes the reports as JSON, CSV or text.

pub mod config;
pub mod output;
mod suites;

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use warpconv::report::CheckReport;
use warpconv::scattering::{CesaroRow, PhaseRow};
use warpconv::spectral::EXACT_TOL;
use warpconv::wedge_algebra::{LocalitySweepRow, SPAN_TOL};

pub use config::{RunConfig, Suite, Tolerances};

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Library(#[from] warpconv::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl RunError {
    /// 2 for configuration problems (including the dimension guard), 1
    /// otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) | RunError::Library(warpconv::Error::DimensionGuard { .. }) => 2,
            _ => 1,
        }
    }
}

pub type Result<T, E = RunError> = std::result::Result<T, E>;

/// Everything a run produces.
#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteOutput {
    /// Sorted by `check_id`.
    pub reports: Vec<CheckReport>,
    pub phases: Vec<PhaseRow>,
    pub cesaro: Vec<CesaroRow>,
    pub sweep: Vec<LocalitySweepRow>,
}

impl SuiteOutput {
    pub fn all_pass(&self) -> bool {
        self.reports.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckReport> {
        self.reports.iter().filter(|r| !r.pass)
    }

    pub fn get(&self, check_id: &str) -> Option<&CheckReport> {
        self.reports.iter().find(|r| r.check_id == check_id)
    }
}

/// Shared state of one suite run.
pub(crate) struct Ctx<'a> {
    pub cfg: &'a RunConfig,
    pub rng: ChaCha8Rng,
    pub timings: bool,
    pub out: SuiteOutput,
}

impl<'a> Ctx<'a> {
    fn new(cfg: &'a RunConfig, suite: Suite, timings: bool) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(suite.stream());
        Self {
            cfg,
            rng,
            timings,
            out: SuiteOutput::default(),
        }
    }

    /// Runs `f`, stamping its reports with the elapsed time when timing is on.
    pub fn timed<F>(&mut self, f: F) -> Result<()>
    where
        F: FnOnce(&mut Self) -> Result<Vec<CheckReport>>,
    {
        let start = Instant::now();
        let mut reports = f(self)?;
        if self.timings {
            let ms = start.elapsed().as_secs_f64() * 1e3;
            for r in &mut reports {
                r.runtime_ms = Some(ms);
            }
        }
        self.out.reports.extend(reports);
        Ok(())
    }
}

/// Re-judges checks carrying a library default tolerance against the
/// configured one. Reports with a note (demonstrations, vacuous or
/// unasserted checks) keep their verdict.
fn apply_tolerances(reports: &mut [CheckReport], tol: &Tolerances) {
    for r in reports.iter_mut().filter(|r| r.note.is_none()) {
        let new = if r.tol == EXACT_TOL {
            tol.exact
        } else if r.tol == SPAN_TOL {
            tol.span
        } else {
            continue;
        };
        r.tol = new;
        r.pass = r.residual < new;
    }
}

/// Runs the selected suite (`all` runs every suite) deterministically under
/// the configured seed.
pub fn run_suite(cfg: &RunConfig, suite: Suite, timings: bool) -> Result<SuiteOutput> {
    cfg.validate()?;
    let suites = if suite == Suite::All {
        Suite::CONCRETE.to_vec()
    } else {
        vec![suite]
    };
    let mut total = SuiteOutput::default();
    for s in suites {
        let mut ctx = Ctx::new(cfg, s, timings);
        match s {
            Suite::Geometry => suites::geometry::run(&mut ctx)?,
            Suite::Lemmas => suites::lemmas::run(&mut ctx)?,
            Suite::Axioms => suites::axioms::run(&mut ctx)?,
            Suite::Scattering => suites::scattering::run(&mut ctx)?,
            Suite::Germ => suites::germ::run(&mut ctx)?,
            Suite::All => unreachable!("expanded above"),
        }
        let SuiteOutput {
            reports,
            phases,
            cesaro,
            sweep,
        } = ctx.out;
        total.reports.extend(reports);
        total.phases.extend(phases);
        total.cesaro.extend(cesaro);
        total.sweep.extend(sweep);
    }
    apply_tolerances(&mut total.reports, &cfg.tolerances);
    total.reports.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    Ok(total)
}

/// Runs every suite listed in the configuration.
pub fn run_config(cfg: &RunConfig, timings: bool) -> Result<SuiteOutput> {
    let selected = cfg.selected();
    if selected.len() == Suite::CONCRETE.len() {
        return run_suite(cfg, Suite::All, timings);
    }
    let mut total = SuiteOutput::default();
    for s in selected {
        let part = run_suite(cfg, s, timings)?;
        total.reports.extend(part.reports);
        total.phases.extend(part.phases);
        total.cesaro.extend(part.cesaro);
        total.sweep.extend(part.sweep);
    }
    total.reports.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    Ok(total)
}

/// `"{base}[kappa={κ}]"`.
pub(crate) fn kappa_id(base: &str, kappa: f64) -> String {
    format!("{base}[kappa={kappa}]")
}
