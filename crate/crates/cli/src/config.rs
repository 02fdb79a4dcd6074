//! Run configuration: a TOML file plus command-line overrides.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::RunError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Geometry,
    Lemmas,
    Axioms,
    Scattering,
    Germ,
    All,
}

impl Suite {
    pub const CONCRETE: [Suite; 5] = [Suite::Geometry, Suite::Lemmas, Suite::Axioms, Suite::Scattering, Suite::Germ];

    /// Stream index of the suite's random generator, so that a suite
    /// produces the same reports alone or as part of `all`.
    pub(crate) fn stream(self) -> u64 {
        match self {
            Suite::Geometry => 1,
            Suite::Lemmas => 2,
            Suite::Axioms => 3,
            Suite::Scattering => 4,
            Suite::Germ => 5,
            Suite::All => 0,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Suite::Geometry => "geometry",
            Suite::Lemmas => "lemmas",
            Suite::Axioms => "axioms",
            Suite::Scattering => "scattering",
            Suite::Germ => "germ",
            Suite::All => "all",
        };
        f.write_str(s)
    }
}

/// Acceptance thresholds. `exact` and `span` replace the library defaults
/// (1e-12 and 1e-10) on every check that uses them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub exact: f64,
    pub span: f64,
    /// Reference two-particle phase.
    pub phase: f64,
    /// Unit-modulus and undeformed-limit checks.
    pub unit: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            exact: 1e-12,
            span: 1e-10,
            phase: 1e-10,
            unit: 1e-14,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Spacetime dimension of the Fock model.
    pub d: usize,
    pub mass: f64,
    pub kappa: Vec<f64>,
    /// Lattice `{−Kδ, …, Kδ}^{d−1}`.
    pub lattice_k: usize,
    pub lattice_delta: f64,
    pub n_max: usize,
    /// Degree cap for algebra membership.
    pub degree: usize,
    pub seed: u64,
    pub suites: Vec<Suite>,
    pub tolerances: Tolerances,
    /// Fock space dimension guard.
    pub max_dim: usize,
    /// Largest random model in the warp battery.
    pub max_model_dim: usize,
    pub lemma_trials: usize,
    pub split_instances: usize,
    pub covariance_instances: usize,
    pub geometry_samples: usize,
    pub witness_samples: usize,
    pub cesaro_horizons: Vec<f64>,
    pub sweep_kappa: f64,
    pub sweep_deltas: Vec<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            d: 2,
            mass: 1.0,
            kappa: vec![1.0],
            lattice_k: 2,
            lattice_delta: 1.0,
            n_max: 2,
            degree: 3,
            seed: 42,
            suites: vec![Suite::All],
            tolerances: Tolerances::default(),
            max_dim: warpconv::fock::DEFAULT_MAX_DIM,
            max_model_dim: 200,
            lemma_trials: 200,
            split_instances: 50,
            covariance_instances: 20,
            geometry_samples: 10_000,
            witness_samples: 200,
            cesaro_horizons: vec![0.0, 1.0, 10.0, 100.0],
            sweep_kappa: 0.1,
            sweep_deltas: vec![1.0, 0.5, 0.25],
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, RunError> {
        let cfg: Self = toml::from_str(text).map_err(|e| RunError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, RunError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| RunError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn validate(&self) -> Result<(), RunError> {
        let bad = |m: String| Err(RunError::Config(m));
        if self.d < 2 {
            return bad(format!("d must be at least 2, got {}", self.d));
        }
        if !(self.mass > 0.0 && self.mass.is_finite()) {
            return bad(format!("mass must be positive, got {}", self.mass));
        }
        if self.kappa.is_empty() {
            return bad("kappa list is empty".into());
        }
        if let Some(k) = self.kappa.iter().find(|k| !(**k >= 0.0 && k.is_finite())) {
            return bad(format!("kappa must be nonnegative, got {k}"));
        }
        if self.lattice_k == 0 || !(self.lattice_delta > 0.0 && self.lattice_delta.is_finite()) {
            return bad("lattice needs K ≥ 1 and δ > 0".into());
        }
        if self.n_max < 2 {
            return bad(format!("n_max must be at least 2 for two-particle states, got {}", self.n_max));
        }
        if self.degree == 0 {
            return bad("degree cap must be at least 1".into());
        }
        if self.suites.is_empty() {
            return bad("no suite selected".into());
        }
        if self.max_model_dim < 2 {
            return bad("max_model_dim must be at least 2".into());
        }
        let t = &self.tolerances;
        if [t.exact, t.span, t.phase, t.unit].iter().any(|x| x.is_nan() || *x <= 0.0) {
            return bad("tolerances must be positive".into());
        }
        if self.sweep_kappa.is_nan() || self.sweep_kappa < 0.0 || self.sweep_deltas.iter().any(|x| x.is_nan() || *x <= 0.0) {
            return bad("free-field sweep needs κ ≥ 0 and positive spacings".into());
        }
        if self.cesaro_horizons.iter().any(|x| x.is_nan() || *x < 0.0) {
            return bad("Cesàro horizons must be nonnegative".into());
        }
        Ok(())
    }

    /// Concrete suites in run order, `all` expanded, duplicates removed.
    pub fn selected(&self) -> Vec<Suite> {
        let mut out: Vec<Suite> = if self.suites.contains(&Suite::All) {
            Suite::CONCRETE.to_vec()
        } else {
            self.suites.clone()
        };
        out.sort();
        out.dedup();
        out
    }
}
