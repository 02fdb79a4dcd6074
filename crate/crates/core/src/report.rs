//! Structured check records shared by all verification routines.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Outcome of one verification check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_id: String,
    /// The mathematical statement the check exercises, or `"plumbing"`.
    pub anchor: String,
    pub params: BTreeMap<String, Value>,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
    /// Wall-clock time; left empty unless timing is requested so that
    /// reports stay reproducible.
    pub runtime_ms: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckReport {
    /// A check that passes iff `residual < tol`.
    pub fn new(check_id: impl Into<String>, anchor: impl Into<String>, residual: f64, tol: f64) -> Self {
        Self {
            check_id: check_id.into(),
            anchor: anchor.into(),
            params: BTreeMap::new(),
            residual,
            tol,
            pass: residual < tol,
            runtime_ms: None,
            note: None,
        }
    }

    pub fn with_param(mut self, key: impl Into<String>, value: impl Into<Value>) -> Self {
        self.params.insert(key.into(), value.into());
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_pass(mut self, pass: bool) -> Self {
        self.pass = pass;
        self
    }

    pub fn with_id(mut self, check_id: impl Into<String>) -> Self {
        self.check_id = check_id.into();
        self
    }
}

/// Anchor strings naming the statement each check family verifies.
pub mod anchors {
    pub const LEFT_RIGHT: &str = "warp: left and right warped convolutions coincide";
    pub const ADJOINT: &str = "warp: adjoint commutes with warping";
    pub const COMPOSITION: &str = "warp: (F_Q1)_Q2 = F_(Q1+Q2)";
    pub const COMMUTATION: &str = "warp: F_Q G_-Q = G_-Q F_Q under translated commutativity";
    pub const COVARIANCE: &str = "warp: alpha_lambda(F_Q) = (alpha_lambda F)_(Lambda Q Lambda^-1)";
    pub const VACUUM: &str = "warp: F_Q Omega = F Omega";
    pub const SPECTRAL_CALCULUS: &str = "warp: dE(p) f(P) = f(p) dE(p)";
    pub const SKEW: &str = "geometry: Q_kappa is Lorentz-skew";
    pub const FACT_I: &str = "geometry: lambda W0 in W0 implies Lambda Q Lambda^-1 = Q";
    pub const FACT_I_COROLLARY: &str = "geometry: warp matrix depends only on the wedge";
    pub const FACT_II: &str = "geometry: lambda W0 in W0' implies Lambda Q Lambda^-1 = -Q";
    pub const FACT_III: &str = "geometry: Q_kappa V+ = W0";
    pub const COMPLEMENT: &str = "geometry: causal complement of a wedge";
    pub const LORENTZ: &str = "geometry: Lorentz transformations preserve xy";
    pub const WEDGE: &str = "geometry: wedges are Poincare images of W0";
    pub const DEFINITION: &str = "net: deformed wedge algebra independent of representative";
    pub const ISOTONY: &str = "net: isotony of deformed wedge algebras";
    pub const NET_COVARIANCE: &str = "net: covariance of deformed wedge algebras";
    pub const LOCALITY: &str = "net: locality of deformed wedge algebras";
    pub const REEH_SCHLIEDER: &str = "net: Reeh-Schlieder property of deformed wedge algebras";
    pub const ADJOINT_CLOSED: &str = "net: deformed wedge algebras are *-algebras";
    pub const GERM: &str = "germ: wedge-stability and wedge-reflection locality";
    pub const SPECTRUM: &str = "free field: isolated mass shell below the two-particle continuum";
    pub const CCR: &str = "free field: canonical commutation relations below the cutoff";
    pub const GL: &str = "free field: warped creation operator equals the twisted one";
    pub const HEPP: &str = "scattering: on-shell packets create time-independent one-particle states";
    pub const SHARP_PHASE: &str = "scattering: sharp-momentum two-particle phases";
    pub const SIGN: &str = "scattering: precedence fixes the sign of pQq";
    pub const KERNEL: &str = "scattering: S-kernel ratio is a pure phase";
    pub const LORENTZ_BREAKING: &str = "scattering: phases break Lorentz symmetry for d > 2";
    pub const CESARO: &str = "scattering: time-averaged approach to the scattering states";
    pub const UNDEFORMED: &str = "regression: kappa = 0 reproduces the undeformed theory";
    pub const PLUMBING: &str = "plumbing";
}
