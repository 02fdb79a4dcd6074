//! Finite spectral calculus for translation unitaries and the warped
//! convolution.
//!
//! A [`SpectralDecomposition`] resolves the identity into orthogonal
//! projections `Eⱼ` attached to momenta `pⱼ`, so that
//! `U(x) = Σⱼ e^{ipⱼx} Eⱼ`. Internally the projections are stored through an
//! orthonormal eigenbasis: the columns of `basis` labelled `j` span the range
//! of `Eⱼ`. In that basis `α_y(F) = U(y)FU(y)⁻¹` multiplies the matrix element
//! between columns `a` and `b` by `e^{i(p_a − p_b)y}`, which is how the warped
//! convolutions
//!
//! ```text
//! ₍Q₎F = Σⱼ α_{Qpⱼ}(F) Eⱼ        F_Q = Σⱼ Eⱼ α_{Qpⱼ}(F)
//! ```
//!
//! are evaluated without forming any `U(x)` explicitly.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::geometry::{LorentzTransform, MinkowskiVector, PoincareElement, SkewWarpMatrix};
use crate::linalg::{cis, commutator, frobenius, identity, op_norm, OperatorMatrix, StateVector, C64};
use crate::report::{anchors, CheckReport};

/// Momenta closer than this in max-norm share one projection.
pub const MERGE_TOL: f64 = 1e-9;

/// Tolerance of the exact operator identities.
pub const EXACT_TOL: f64 = 1e-12;

/// Relative tolerance for the internal left/right agreement guard of [`warp`].
pub const WARP_GUARD_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    dim: usize,
    spacetime_dim: usize,
    /// Unitary whose columns diagonalise `U`; `None` means the standard basis.
    basis: Option<OperatorMatrix>,
    labels: Vec<usize>,
    momenta: Vec<MinkowskiVector>,
    vacuum: Option<StateVector>,
}

impl SpectralDecomposition {
    /// Spectral decomposition diagonal in the standard basis: basis vector
    /// `eₐ` carries momentum `column_momenta[a]`.
    pub fn diagonal(column_momenta: &[MinkowskiVector]) -> Result<Self> {
        Self::build(None, column_momenta)
    }

    /// Eigenbasis given by the columns of the unitary `basis`.
    pub fn from_basis(basis: OperatorMatrix, column_momenta: &[MinkowskiVector]) -> Result<Self> {
        if !basis.is_square() || basis.nrows() != column_momenta.len() {
            return Err(Error::InvalidSpectral(format!(
                "basis is {}×{} for {} momenta",
                basis.nrows(),
                basis.ncols(),
                column_momenta.len()
            )));
        }
        let n = basis.nrows();
        let err = frobenius(&(basis.adjoint() * &basis - identity(n)));
        if err > 1e-10 * (n as f64).sqrt().max(1.0) {
            return Err(Error::InvalidSpectral(format!("basis is not unitary (residual {err:.3e})")));
        }
        Self::build(Some(basis), column_momenta)
    }

    /// From explicit `(momentum, projection)` pairs. Projections must be
    /// Hermitian, idempotent, mutually orthogonal and sum to the identity.
    pub fn from_projections(points: Vec<(MinkowskiVector, OperatorMatrix)>) -> Result<Self> {
        let n = points
            .first()
            .map(|(_, e)| e.nrows())
            .ok_or_else(|| Error::InvalidSpectral("no spectral points".into()))?;
        // merge coincident momenta
        let mut merged: Vec<(MinkowskiVector, OperatorMatrix)> = Vec::new();
        for (p, e) in points {
            if !e.is_square() || e.nrows() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: e.nrows(),
                });
            }
            match merged.iter_mut().find(|(q, _)| q.max_abs_diff(&p) < MERGE_TOL) {
                Some((_, acc)) => *acc += e,
                None => merged.push((p, e)),
            }
        }
        let mut total = OperatorMatrix::zeros(n, n);
        for (i, (_, e)) in merged.iter().enumerate() {
            let herm = op_norm(&(e - e.adjoint()));
            let idem = op_norm(&(e * e - e));
            if herm > EXACT_TOL || idem > EXACT_TOL {
                return Err(Error::InvalidSpectral(format!(
                    "projection {i} is not an orthogonal projection (‖E−E*‖={herm:.2e}, ‖E²−E‖={idem:.2e})"
                )));
            }
            for (j, (_, f)) in merged.iter().enumerate().skip(i + 1) {
                let overlap = op_norm(&(e * f));
                if overlap > EXACT_TOL {
                    return Err(Error::InvalidSpectral(format!(
                        "projections {i} and {j} are not orthogonal ({overlap:.2e})"
                    )));
                }
            }
            total += e;
        }
        let completeness = op_norm(&(total - identity(n)));
        if completeness > EXACT_TOL {
            return Err(Error::InvalidSpectral(format!(
                "projections do not resolve the identity ({completeness:.2e})"
            )));
        }
        let mut columns: Vec<StateVector> = Vec::with_capacity(n);
        let mut column_momenta = Vec::with_capacity(n);
        for (p, e) in &merged {
            let eig = e.clone().symmetric_eigen();
            for (k, lambda) in eig.eigenvalues.iter().enumerate() {
                if *lambda > 0.5 {
                    columns.push(eig.eigenvectors.column(k).into_owned());
                    column_momenta.push(p.clone());
                }
            }
        }
        if columns.len() != n {
            return Err(Error::InvalidSpectral("ranks do not add up to the dimension".into()));
        }
        let basis = OperatorMatrix::from_columns(&columns);
        Self::from_basis(basis, &column_momenta)
    }

    fn build(basis: Option<OperatorMatrix>, column_momenta: &[MinkowskiVector]) -> Result<Self> {
        let first = column_momenta
            .first()
            .ok_or_else(|| Error::InvalidSpectral("empty Hilbert space".into()))?;
        let d = first.dim();
        let mut momenta: Vec<MinkowskiVector> = Vec::new();
        let mut labels = Vec::with_capacity(column_momenta.len());
        for p in column_momenta {
            if p.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: p.dim(),
                });
            }
            if p.components().iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidSpectral("non-finite momentum".into()));
            }
            let label = match momenta.iter().position(|q| q.max_abs_diff(p) < MERGE_TOL) {
                Some(j) => j,
                None => {
                    momenta.push(p.clone());
                    momenta.len() - 1
                }
            };
            labels.push(label);
        }
        Ok(Self {
            dim: column_momenta.len(),
            spacetime_dim: d,
            basis,
            labels,
            momenta,
            vacuum: None,
        })
    }

    /// Marks the decomposition physical: every momentum must lie in the
    /// closed forward cone and momentum 0 must occur. The vacuum `Ω` is the
    /// first eigenvector with momentum 0.
    pub fn with_vacuum(self) -> Result<Self> {
        let j0 = self
            .zero_point()
            .ok_or_else(|| Error::InvalidSpectral("momentum 0 is not in the spectrum".into()))?;
        let a = self.labels.iter().position(|&l| l == j0).expect("every point has a column");
        let mut e = StateVector::zeros(self.dim);
        e[a] = C64::new(1.0, 0.0);
        let omega = self.vector_from_spectral(&e);
        self.with_vacuum_vector(omega)
    }

    /// Like [`with_vacuum`](Self::with_vacuum) with an explicit unit vector
    /// `Ω` in the range of `E(0)`.
    pub fn with_vacuum_vector(mut self, omega: StateVector) -> Result<Self> {
        if omega.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: omega.len(),
            });
        }
        for (j, p) in self.momenta.iter().enumerate() {
            let scale = p.components().iter().fold(1.0_f64, |m, x| m.max(x.abs()));
            if !p.in_forward_cone(EXACT_TOL * scale) {
                return Err(Error::InvalidSpectral(format!(
                    "momentum {j} = {p} lies outside the closed forward cone"
                )));
            }
        }
        let j0 = self
            .zero_point()
            .ok_or_else(|| Error::InvalidSpectral("momentum 0 is not in the spectrum".into()))?;
        let norm = omega.norm();
        if (norm - 1.0).abs() > EXACT_TOL {
            return Err(Error::InvalidSpectral(format!("vacuum has norm {norm}")));
        }
        let projected = self.apply_projection(j0, &omega);
        if (&projected - &omega).norm() > EXACT_TOL {
            return Err(Error::InvalidSpectral("vacuum is not translation invariant".into()));
        }
        self.vacuum = Some(omega);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn spacetime_dim(&self) -> usize {
        self.spacetime_dim
    }

    /// Number of distinct spectral points.
    pub fn len(&self) -> usize {
        self.momenta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.momenta.is_empty()
    }

    pub fn momenta(&self) -> &[MinkowskiVector] {
        &self.momenta
    }

    pub fn momentum(&self, j: usize) -> &MinkowskiVector {
        &self.momenta[j]
    }

    /// Spectral point of each eigenbasis column.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn basis(&self) -> Option<&OperatorMatrix> {
        self.basis.as_ref()
    }

    pub fn is_physical(&self) -> bool {
        self.vacuum.is_some()
    }

    pub fn vacuum(&self) -> Option<&StateVector> {
        self.vacuum.as_ref()
    }

    pub fn zero_point(&self) -> Option<usize> {
        let zero = MinkowskiVector::zeros(self.spacetime_dim);
        self.momenta.iter().position(|p| p.max_abs_diff(&zero) < MERGE_TOL)
    }

    /// Index of the spectral point within merge tolerance of `p`.
    pub fn find_point(&self, p: &MinkowskiVector) -> Option<usize> {
        self.momenta.iter().position(|q| q.max_abs_diff(p) < MERGE_TOL)
    }

    pub fn multiplicity(&self, j: usize) -> usize {
        self.labels.iter().filter(|&&l| l == j).count()
    }

    /// The projection `Eⱼ` as a dense matrix.
    pub fn projection(&self, j: usize) -> OperatorMatrix {
        let mut diag = OperatorMatrix::zeros(self.dim, self.dim);
        for (a, &l) in self.labels.iter().enumerate() {
            if l == j {
                diag[(a, a)] = C64::new(1.0, 0.0);
            }
        }
        self.from_spectral(&diag)
    }

    pub fn apply_projection(&self, j: usize, v: &StateVector) -> StateVector {
        let mut w = self.vector_to_spectral(v);
        for (a, &l) in self.labels.iter().enumerate() {
            if l != j {
                w[a] = C64::new(0.0, 0.0);
            }
        }
        self.vector_from_spectral(&w)
    }

    /// `V*FV`: matrix elements between eigenbasis vectors.
    pub fn to_spectral(&self, f: &OperatorMatrix) -> OperatorMatrix {
        match &self.basis {
            None => f.clone(),
            Some(v) => v.adjoint() * f * v,
        }
    }

    pub fn from_spectral(&self, x: &OperatorMatrix) -> OperatorMatrix {
        match &self.basis {
            None => x.clone(),
            Some(v) => v * x * v.adjoint(),
        }
    }

    pub fn vector_to_spectral(&self, x: &StateVector) -> StateVector {
        match &self.basis {
            None => x.clone(),
            Some(v) => v.adjoint() * x,
        }
    }

    pub fn vector_from_spectral(&self, x: &StateVector) -> StateVector {
        match &self.basis {
            None => x.clone(),
            Some(v) => v * x,
        }
    }

    /// `f(P) = Σⱼ f(pⱼ)Eⱼ`.
    pub fn function_of_momentum<F>(&self, f: F) -> OperatorMatrix
    where
        F: Fn(&MinkowskiVector) -> C64,
    {
        let values: Vec<C64> = self.momenta.iter().map(f).collect();
        let diag = DVector::from_iterator(self.dim, self.labels.iter().map(|&l| values[l]));
        self.from_spectral(&OperatorMatrix::from_diagonal(&diag))
    }

    /// Residuals of the projection-valued-measure invariants, computed from
    /// the dense projections.
    pub fn invariant_residuals(&self) -> SpectralResiduals {
        let projections: Vec<OperatorMatrix> = (0..self.len()).map(|j| self.projection(j)).collect();
        let mut r = SpectralResiduals::default();
        let mut total = OperatorMatrix::zeros(self.dim, self.dim);
        for (i, e) in projections.iter().enumerate() {
            r.hermitian = r.hermitian.max(op_norm(&(e - e.adjoint())));
            r.idempotent = r.idempotent.max(op_norm(&(e * e - e)));
            for f in projections.iter().skip(i + 1) {
                r.orthogonal = r.orthogonal.max(op_norm(&(e * f)));
            }
            total += e;
        }
        r.completeness = op_norm(&(total - identity(self.dim)));
        r
    }

    fn check_operator(&self, f: &OperatorMatrix) -> Result<()> {
        if f.nrows() != self.dim || f.ncols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: f.nrows().max(f.ncols()),
            });
        }
        Ok(())
    }

    fn check_spacetime(&self, d: usize) -> Result<()> {
        if d != self.spacetime_dim {
            return Err(Error::DimensionMismatch {
                expected: self.spacetime_dim,
                found: d,
            });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SpectralResiduals {
    pub hermitian: f64,
    pub idempotent: f64,
    pub orthogonal: f64,
    pub completeness: f64,
}

impl SpectralResiduals {
    pub fn max(&self) -> f64 {
        self.hermitian
            .max(self.idempotent)
            .max(self.orthogonal)
            .max(self.completeness)
    }
}

/// `U(x) = Σⱼ e^{ipⱼx} Eⱼ`.
pub fn translation_unitary(s: &SpectralDecomposition, x: &MinkowskiVector) -> Result<OperatorMatrix> {
    s.check_spacetime(x.dim())?;
    Ok(s.function_of_momentum(|p| cis(p.dot(x))))
}

/// Phases `e^{i(p_a − p_b)y}` applied to spectral matrix elements: `α_y` in
/// the eigenbasis.
fn translate_spectral(s: &SpectralDecomposition, fs: &OperatorMatrix, y: &MinkowskiVector) -> OperatorMatrix {
    let phases: Vec<f64> = s.momenta.iter().map(|p| p.dot(y)).collect();
    let mut out = fs.clone();
    for b in 0..s.dim {
        let pb = phases[s.labels[b]];
        for a in 0..s.dim {
            out[(a, b)] *= cis(phases[s.labels[a]] - pb);
        }
    }
    out
}

/// `α_x(F) = U(x)FU(x)⁻¹`.
pub fn adjoint_action(s: &SpectralDecomposition, x: &MinkowskiVector, f: &OperatorMatrix) -> Result<OperatorMatrix> {
    s.check_spacetime(x.dim())?;
    s.check_operator(f)?;
    Ok(s.from_spectral(&translate_spectral(s, &s.to_spectral(f), x)))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

/// Evaluates the left (`Σⱼ α_{Qpⱼ}(F)Eⱼ`) or right (`Σⱼ Eⱼα_{Qpⱼ}(F)`)
/// warped convolution in the eigenbasis. `Eⱼ` on the right keeps only the
/// columns labelled `j`, on the left only the rows, so each matrix element
/// receives the single phase `e^{i(p_a − p_b)·Qpⱼ}` with `j` the column
/// (left) or row (right) label.
fn warp_spectral(s: &SpectralDecomposition, q: &DMatrix<f64>, fs: &OperatorMatrix, side: Side) -> OperatorMatrix {
    let shifts: Vec<MinkowskiVector> = s
        .momenta
        .iter()
        .map(|p| MinkowskiVector::from_dvector(q * p.to_dvector()))
        .collect();
    // table[i][j] = pᵢ·Qpⱼ
    let table: Vec<Vec<f64>> = s
        .momenta
        .iter()
        .map(|p| shifts.iter().map(|qp| p.dot(qp)).collect())
        .collect();
    let mut out = fs.clone();
    for b in 0..s.dim {
        let lb = s.labels[b];
        for a in 0..s.dim {
            let la = s.labels[a];
            let j = match side {
                Side::Left => lb,
                Side::Right => la,
            };
            out[(a, b)] *= cis(table[la][j] - table[lb][j]);
        }
    }
    out
}

fn check_q(s: &SpectralDecomposition, q: &DMatrix<f64>) -> Result<()> {
    if q.nrows() != s.spacetime_dim || q.ncols() != s.spacetime_dim {
        return Err(Error::DimensionMismatch {
            expected: s.spacetime_dim,
            found: q.nrows(),
        });
    }
    Ok(())
}

/// `₍Q₎F = Σⱼ α_{Qpⱼ}(F) Eⱼ` for an arbitrary real matrix `Q`.
///
/// Skewness is not required here; this is the entry point for negative
/// controls. Use [`warp_left`] for the checked version.
pub fn warp_left_general(s: &SpectralDecomposition, q: &DMatrix<f64>, f: &OperatorMatrix) -> Result<OperatorMatrix> {
    check_q(s, q)?;
    s.check_operator(f)?;
    Ok(s.from_spectral(&warp_spectral(s, q, &s.to_spectral(f), Side::Left)))
}

/// `F_Q = Σⱼ Eⱼ α_{Qpⱼ}(F)` for an arbitrary real matrix `Q`.
pub fn warp_right_general(s: &SpectralDecomposition, q: &DMatrix<f64>, f: &OperatorMatrix) -> Result<OperatorMatrix> {
    check_q(s, q)?;
    s.check_operator(f)?;
    Ok(s.from_spectral(&warp_spectral(s, q, &s.to_spectral(f), Side::Right)))
}

pub fn warp_left(s: &SpectralDecomposition, q: &SkewWarpMatrix, f: &OperatorMatrix) -> Result<OperatorMatrix> {
    warp_left_general(s, q.matrix(), f)
}

pub fn warp_right(s: &SpectralDecomposition, q: &SkewWarpMatrix, f: &OperatorMatrix) -> Result<OperatorMatrix> {
    warp_right_general(s, q.matrix(), f)
}

/// The canonical deformation `F_Q`.
///
/// Both orders are evaluated; a relative Frobenius disagreement above
/// [`WARP_GUARD_TOL`] signals a broken decomposition and is an error.
pub fn warp(s: &SpectralDecomposition, q: &SkewWarpMatrix, f: &OperatorMatrix) -> Result<OperatorMatrix> {
    check_q(s, q.matrix())?;
    s.check_operator(f)?;
    if q.is_zero() {
        return Ok(f.clone());
    }
    let fs = s.to_spectral(f);
    let left = warp_spectral(s, q.matrix(), &fs, Side::Left);
    let right = warp_spectral(s, q.matrix(), &fs, Side::Right);
    let residual = frobenius(&(&left - &right));
    if residual > WARP_GUARD_TOL * frobenius(&fs).max(1.0) {
        return Err(Error::WarpDisagreement { residual });
    }
    Ok(s.from_spectral(&right))
}

/// `‖₍Q₎F − F_Q‖`.
pub fn check_left_right(s: &SpectralDecomposition, q: &SkewWarpMatrix, f: &OperatorMatrix) -> Result<CheckReport> {
    let left = warp_left(s, q, f)?;
    let right = warp_right(s, q, f)?;
    Ok(CheckReport::new("warp.left_right", anchors::LEFT_RIGHT, op_norm(&(left - right)), EXACT_TOL)
        .with_param("dim", s.dim())
        .with_param("points", s.len()))
}

/// `‖(F_Q)* − (F*)_Q‖`.
pub fn check_adjoint(s: &SpectralDecomposition, q: &SkewWarpMatrix, f: &OperatorMatrix) -> Result<CheckReport> {
    let lhs = warp(s, q, f)?.adjoint();
    let rhs = warp(s, q, &f.adjoint())?;
    Ok(CheckReport::new("warp.adjoint", anchors::ADJOINT, op_norm(&(lhs - rhs)), EXACT_TOL)
        .with_param("dim", s.dim()))
}

/// `‖(F_{Q₁})_{Q₂} − F_{Q₁+Q₂}‖`.
pub fn check_composition(
    s: &SpectralDecomposition,
    q1: &SkewWarpMatrix,
    q2: &SkewWarpMatrix,
    f: &OperatorMatrix,
) -> Result<CheckReport> {
    let lhs = warp(s, q2, &warp(s, q1, f)?)?;
    let rhs = warp(s, &(q1 + q2), f)?;
    Ok(CheckReport::new("warp.composition", anchors::COMPOSITION, op_norm(&(lhs - rhs)), EXACT_TOL)
        .with_param("dim", s.dim()))
}

/// `‖F_QΩ − FΩ‖`; requires a physical decomposition.
pub fn check_vacuum_fixed(s: &SpectralDecomposition, q: &SkewWarpMatrix, f: &OperatorMatrix) -> Result<CheckReport> {
    let omega = s
        .vacuum()
        .ok_or_else(|| Error::InvalidSpectral("decomposition has no vacuum".into()))?;
    let fq = warp(s, q, f)?;
    let residual = (fq * omega - f * omega).norm();
    Ok(CheckReport::new("warp.vacuum", anchors::VACUUM, residual, EXACT_TOL).with_param("dim", s.dim()))
}

/// Outcome of the commutation check: hypothesis and conclusion are judged
/// separately; the conclusion is only claimed when the hypothesis holds.
#[derive(Clone, Debug, PartialEq)]
pub struct CommutationReport {
    /// `max_{p,q} ‖[α_{Qp}(F), α_{−Qq}(G)]‖` over the spectrum.
    pub hypothesis_residual: f64,
    /// `‖[F_Q, G_{−Q}]‖`.
    pub conclusion_residual: f64,
    pub tol: f64,
    pub pairs_scanned: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommutationVerdict {
    Holds,
    /// Hypothesis holds but the conclusion failed: a genuine defect.
    ConclusionFailed,
    /// Hypothesis does not hold; nothing is claimed about the conclusion.
    HypothesisFailed,
}

impl CommutationReport {
    pub fn hypothesis_holds(&self) -> bool {
        self.hypothesis_residual < self.tol
    }

    pub fn verdict(&self) -> CommutationVerdict {
        if !self.hypothesis_holds() {
            CommutationVerdict::HypothesisFailed
        } else if self.conclusion_residual < self.tol {
            CommutationVerdict::Holds
        } else {
            CommutationVerdict::ConclusionFailed
        }
    }

    pub fn to_reports(&self, id_prefix: &str, anchor: &str) -> Vec<CheckReport> {
        let hyp = CheckReport::new(format!("{id_prefix}.hypothesis"), anchor, self.hypothesis_residual, self.tol)
            .with_param("pairs", self.pairs_scanned);
        let concl = CheckReport::new(format!("{id_prefix}.conclusion"), anchor, self.conclusion_residual, self.tol);
        let concl = if self.hypothesis_holds() {
            concl
        } else {
            concl
                .with_pass(true)
                .with_note("hypothesis fails; conclusion reported but not asserted")
        };
        vec![hyp, concl]
    }
}

/// Exhaustive scan of the translated-commutator hypothesis, then the
/// commutator of the warped operators.
pub fn check_commutation(
    s: &SpectralDecomposition,
    q: &SkewWarpMatrix,
    f: &OperatorMatrix,
    g: &OperatorMatrix,
) -> Result<CommutationReport> {
    s.check_operator(f)?;
    s.check_operator(g)?;
    let fs = s.to_spectral(f);
    let gs = s.to_spectral(g);
    let minus_q = -q;
    let f_shifts: Vec<OperatorMatrix> = s
        .momenta
        .iter()
        .map(|p| translate_spectral(s, &fs, &q.apply(p)))
        .collect();
    let g_shifts: Vec<OperatorMatrix> = s
        .momenta
        .iter()
        .map(|p| translate_spectral(s, &gs, &minus_q.apply(p)))
        .collect();
    let mut hypothesis_residual: f64 = 0.0;
    for fp in &f_shifts {
        for gq in &g_shifts {
            let c = commutator(fp, gq);
            // op-norm ≤ Frobenius; skip the SVD when the bound already decides
            let bound = frobenius(&c);
            let r = if bound < EXACT_TOL * 1e-2 { bound } else { op_norm(&c) };
            hypothesis_residual = hypothesis_residual.max(r);
        }
    }
    let fq = warp(s, q, f)?;
    let gmq = warp(s, &minus_q, g)?;
    Ok(CommutationReport {
        hypothesis_residual,
        conclusion_residual: op_norm(&commutator(&fq, &gmq)),
        tol: EXACT_TOL,
        pairs_scanned: s.len() * s.len(),
    })
}

/// A unitary `V` implementing a Lorentz transformation `Λ`:
/// `V E(p) V⁻¹ = E′(Λp)`, where `E′` is the spectral measure of the target
/// model (the base model itself when its spectrum is closed under `Λ`).
#[derive(Clone, Debug)]
pub struct LorentzAction {
    pub lorentz: LorentzTransform,
    pub unitary: OperatorMatrix,
    pub target: SpectralDecomposition,
}

/// A translation representation extended by finitely many Lorentz
/// intertwiners.
#[derive(Clone, Debug)]
pub struct ExtendedRep {
    pub base: SpectralDecomposition,
    actions: Vec<LorentzAction>,
}

impl ExtendedRep {
    pub fn new(base: SpectralDecomposition) -> Self {
        Self {
            base,
            actions: Vec::new(),
        }
    }

    /// Registers `V` for `Λ`, validating the intertwining relation. `target`
    /// defaults to the base model.
    pub fn with_action(
        mut self,
        lorentz: LorentzTransform,
        unitary: OperatorMatrix,
        target: Option<SpectralDecomposition>,
    ) -> Result<Self> {
        let target = target.unwrap_or_else(|| self.base.clone());
        let residual = intertwining_residual(&self.base, &target, &lorentz, &unitary)?;
        if residual > 1e-10 {
            return Err(Error::BadIntertwiner(format!("residual {residual:.3e}")));
        }
        self.actions.push(LorentzAction {
            lorentz,
            unitary,
            target,
        });
        Ok(self)
    }

    pub fn actions(&self) -> &[LorentzAction] {
        &self.actions
    }

    /// The action registered for `Λ`; the identity is always available.
    pub fn action(&self, lorentz: &LorentzTransform) -> Result<LorentzAction> {
        if lorentz.approx_eq(&LorentzTransform::identity(lorentz.dim()), EXACT_TOL) {
            return Ok(LorentzAction {
                lorentz: lorentz.clone(),
                unitary: identity(self.base.dim()),
                target: self.base.clone(),
            });
        }
        self.actions
            .iter()
            .find(|a| a.lorentz.approx_eq(lorentz, EXACT_TOL))
            .cloned()
            .ok_or(Error::MissingIntertwiner)
    }

    /// `U(λ) = U′(x)V` for `λ = (Λ, x)`, with the model it maps into.
    pub fn unitary(&self, lambda: &PoincareElement) -> Result<(OperatorMatrix, SpectralDecomposition)> {
        let action = self.action(&lambda.lorentz)?;
        let ux = translation_unitary(&action.target, &lambda.translation)?;
        Ok((ux * action.unitary, action.target))
    }

    /// `α_λ(F) = U(λ)FU(λ)⁻¹`.
    pub fn alpha(&self, lambda: &PoincareElement, f: &OperatorMatrix) -> Result<OperatorMatrix> {
        let (u, _) = self.unitary(lambda)?;
        Ok(&u * f * u.adjoint())
    }
}

/// `max ‖V E(p) V* − E′(Λp)‖` over the base spectrum.
pub fn intertwining_residual(
    base: &SpectralDecomposition,
    target: &SpectralDecomposition,
    lorentz: &LorentzTransform,
    unitary: &OperatorMatrix,
) -> Result<f64> {
    base.check_operator(unitary)?;
    if target.dim() != base.dim() {
        return Err(Error::DimensionMismatch {
            expected: base.dim(),
            found: target.dim(),
        });
    }
    if lorentz.dim() != base.spacetime_dim() {
        return Err(Error::DimensionMismatch {
            expected: base.spacetime_dim(),
            found: lorentz.dim(),
        });
    }
    let mut worst: f64 = 0.0;
    for j in 0..base.len() {
        let image = lorentz.apply(base.momentum(j));
        let jt = target.find_point(&image).ok_or_else(|| {
            Error::BadIntertwiner(format!("Λp = {image} is not in the target spectrum"))
        })?;
        let lhs = unitary * base.projection(j) * unitary.adjoint();
        worst = worst.max(op_norm(&(lhs - target.projection(jt))));
    }
    Ok(worst)
}

/// `‖α_λ(F_Q) − (α_λ(F))_{ΛQΛ⁻¹}‖`, the right-hand warp taken in the model
/// `λ` maps into.
pub fn check_covariance(
    rep: &ExtendedRep,
    q: &SkewWarpMatrix,
    f: &OperatorMatrix,
    lambda: &PoincareElement,
) -> Result<CheckReport> {
    let (u, target) = rep.unitary(lambda)?;
    let lhs = &u * warp(&rep.base, q, f)? * u.adjoint();
    let q_img = q.transform(&lambda.lorentz)?;
    let rhs = warp(&target, &q_img, &(&u * f * u.adjoint()))?;
    Ok(CheckReport::new("warp.covariance", anchors::COVARIANCE, op_norm(&(lhs - rhs)), EXACT_TOL)
        .with_param("dim", rep.base.dim())
        .with_param("d", rep.base.spacetime_dim()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::warp_matrix;
    use std::f64::consts::PI;

    fn v(c: &[f64]) -> MinkowskiVector {
        MinkowskiVector::from_slice(c)
    }

    fn unit(n: usize, a: usize, b: usize) -> OperatorMatrix {
        let mut m = OperatorMatrix::zeros(n, n);
        m[(a, b)] = C64::new(1.0, 0.0);
        m
    }

    /// p₁ = (0,0), p₂ = (1,1), p₃ = (1,−1) on e₁, e₂, e₃.
    fn three_point() -> SpectralDecomposition {
        SpectralDecomposition::diagonal(&[v(&[0.0, 0.0]), v(&[1.0, 1.0]), v(&[1.0, -1.0])]).unwrap()
    }

    #[test]
    fn translation_unitary_examples() {
        let s = SpectralDecomposition::diagonal(&[v(&[0.0, 0.0]), v(&[1.0, 1.0])]).unwrap();
        let u0 = translation_unitary(&s, &v(&[0.0, 0.0])).unwrap();
        assert_eq!(u0, identity(2));
        let u = translation_unitary(&s, &v(&[PI, 0.0])).unwrap();
        assert!((u[(0, 0)] - C64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((u[(1, 1)] - C64::new(-1.0, 0.0)).norm() < 1e-15);
        let x = v(&[0.3, -1.2]);
        let prod = translation_unitary(&s, &x).unwrap() * translation_unitary(&s, &-&x).unwrap();
        assert!(op_norm(&(prod - identity(2))) < EXACT_TOL);
    }

    #[test]
    fn adjoint_action_examples() {
        let s = three_point();
        let x = v(&[0.4, 1.3]);
        let diag = unit(3, 1, 1) * C64::new(2.0, 0.0) + unit(3, 0, 0);
        assert!(op_norm(&(adjoint_action(&s, &x, &diag).unwrap() - &diag)) < EXACT_TOL);
        // rank one: e^{i(p₂−p₃)x}
        let f = unit(3, 1, 2);
        let expected = &f * cis((&v(&[1.0, 1.0]) - &v(&[1.0, -1.0])).dot(&x));
        assert!(op_norm(&(adjoint_action(&s, &x, &f).unwrap() - expected)) < EXACT_TOL);
    }

    #[test]
    fn rank_one_warp_picks_up_phase_minus_two() {
        let s = three_point();
        let q = warp_matrix(1.0, 2).unwrap();
        let f = unit(3, 1, 2);
        let expected = &f * cis(-2.0);
        for w in [
            warp_left(&s, &q, &f).unwrap(),
            warp_right(&s, &q, &f).unwrap(),
            warp(&s, &q, &f).unwrap(),
        ] {
            assert!(op_norm(&(w - &expected)) < EXACT_TOL);
        }
        // diagonal operators are fixed
        let e2 = unit(3, 1, 1);
        assert!(op_norm(&(warp(&s, &q, &e2).unwrap() - &e2)) < EXACT_TOL);
        // Q = 0
        assert_eq!(warp(&s, &warp_matrix(0.0, 2).unwrap(), &f).unwrap(), f);
        // adjoint of the rank-one example carries e^{+2i}
        let fq_adj = warp(&s, &q, &f).unwrap().adjoint();
        assert!(op_norm(&(fq_adj - f.adjoint() * cis(2.0))) < EXACT_TOL);
        assert!(check_adjoint(&s, &q, &f).unwrap().pass);
    }

    #[test]
    fn dimension_errors() {
        let s = three_point();
        let q = warp_matrix(1.0, 3).unwrap();
        assert!(warp(&s, &q, &identity(3)).is_err());
        let q2 = warp_matrix(1.0, 2).unwrap();
        assert!(warp(&s, &q2, &identity(4)).is_err());
    }

    #[test]
    fn non_skew_matrix_breaks_left_right_equality() {
        let s = three_point();
        let q = DMatrix::from_row_slice(2, 2, &[0.0, 0.0, 0.0, 1.0]);
        let f = unit(3, 1, 2);
        let l = warp_left_general(&s, &q, &f).unwrap();
        let r = warp_right_general(&s, &q, &f).unwrap();
        assert!(op_norm(&(l - r)) > 1e-3);
    }

    #[test]
    fn spectral_calculus_relation() {
        let s = three_point();
        let f = s.function_of_momentum(|p| C64::new(p.time(), p.components()[1] * 2.0));
        for j in 0..s.len() {
            let e = s.projection(j);
            let p = s.momentum(j);
            let fp = C64::new(p.time(), p.components()[1] * 2.0);
            assert!(op_norm(&(&e * &f - &e * fp)) < EXACT_TOL);
        }
    }

    #[test]
    fn momenta_within_merge_tolerance_share_a_projection() {
        let s = SpectralDecomposition::diagonal(&[
            v(&[1.0, 0.0]),
            v(&[1.0 + 1e-11, 0.0]),
            v(&[2.0, 0.0]),
        ])
        .unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.multiplicity(0), 2);
    }

    #[test]
    fn from_projections_validates() {
        let e1 = unit(2, 0, 0);
        let e2 = unit(2, 1, 1);
        let s = SpectralDecomposition::from_projections(vec![(v(&[0.0, 0.0]), e1.clone()), (v(&[1.0, 0.0]), e2.clone())])
            .unwrap();
        assert!(s.invariant_residuals().max() < EXACT_TOL);
        // incomplete
        assert!(SpectralDecomposition::from_projections(vec![(v(&[0.0, 0.0]), e1.clone())]).is_err());
        // not a projection
        let bad = unit(2, 0, 1);
        assert!(SpectralDecomposition::from_projections(vec![(v(&[0.0, 0.0]), e1), (v(&[1.0, 0.0]), bad)]).is_err());
    }

    #[test]
    fn physical_flag_requires_forward_cone_and_vacuum() {
        let ok = three_point().with_vacuum().unwrap();
        assert!(ok.is_physical());
        let bad = SpectralDecomposition::diagonal(&[v(&[0.0, 0.0]), v(&[0.5, 1.0])]).unwrap();
        assert!(bad.with_vacuum().is_err());
        let no_vacuum = SpectralDecomposition::diagonal(&[v(&[1.0, 0.0])]).unwrap();
        assert!(no_vacuum.with_vacuum().is_err());
    }

    #[test]
    fn commutation_counterexample_is_reported_as_hypothesis_failure() {
        // F and G do not commute at all
        let s = three_point();
        let q = warp_matrix(1.0, 2).unwrap();
        let f = unit(3, 0, 1);
        let g = unit(3, 1, 2);
        let r = check_commutation(&s, &q, &f, &g).unwrap();
        assert_eq!(r.verdict(), CommutationVerdict::HypothesisFailed);
        let reports = r.to_reports("lemma", anchors::COMMUTATION);
        assert!(!reports[0].pass);
        assert!(reports[1].note.is_some());
    }

    #[test]
    fn commutation_of_diagonal_operators() {
        let s = three_point();
        let q = warp_matrix(0.7, 2).unwrap();
        let f = unit(3, 1, 1);
        let g = unit(3, 2, 2) + unit(3, 0, 0);
        let r = check_commutation(&s, &q, &f, &g).unwrap();
        assert_eq!(r.verdict(), CommutationVerdict::Holds);
        assert_eq!(r.conclusion_residual, 0.0);
    }

    #[test]
    fn missing_intertwiner_is_an_error() {
        let rep = ExtendedRep::new(three_point());
        let q = warp_matrix(1.0, 2).unwrap();
        let lam = PoincareElement::from_lorentz(LorentzTransform::boost(2, 1, 0.3).unwrap());
        assert!(matches!(
            check_covariance(&rep, &q, &unit(3, 0, 1), &lam),
            Err(Error::MissingIntertwiner)
        ));
        // translations always work
        let t = PoincareElement::translation(v(&[0.2, 0.9]));
        assert!(check_covariance(&rep, &q, &unit(3, 1, 2), &t).unwrap().pass);
    }
}
