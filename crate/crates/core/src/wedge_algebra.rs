//! Deformed wedge algebras and the properties of the deformed net.
//!
//! The algebra attached to a wedge `W = λW₀` is generated by the warped
//! operators `A_{ΛQ_κΛ⁻¹}` of the undeformed algebra (with `−Q_κ` for the
//! left wedges of `d = 2`). Algebra membership is tested as membership in
//! the linear span of monomials of degree `≤ D` in the generators.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::TruncatedFockSpace;
use crate::geometry::{MinkowskiVector, PoincareElement, SkewWarpMatrix, Wedge, GEOMETRY_TOL};
use crate::linalg::{commutator, cyclic_span, flatten, monomial_span, op_norm, unflatten, OperatorMatrix, Span, C64};
use crate::report::{anchors, CheckReport};
use crate::spectral::{
    adjoint_action, check_commutation, warp, CommutationReport, ExtendedRep, SpectralDecomposition, EXACT_TOL,
};

/// Residual bound for span membership.
pub const SPAN_TOL: f64 = 1e-10;

/// Relative size below which a candidate is not a new span direction.
pub const SPAN_ACCEPT: f64 = 1e-11;

pub const DEFAULT_DEGREE: usize = 3;

fn require_physical(s: &SpectralDecomposition) -> Result<&crate::linalg::StateVector> {
    s.vacuum()
        .ok_or_else(|| Error::Precondition("the spectral decomposition has no vacuum".into()))
}

/// `A_{ΛQ_κΛ⁻¹}` for the wedge `W = λW₀`.
pub fn deform_for_wedge(w: &Wedge, a: &OperatorMatrix, s: &SpectralDecomposition, kappa: f64) -> Result<OperatorMatrix> {
    require_physical(s)?;
    warp(s, &w.warp_matrix(kappa)?, a)
}

#[derive(Clone, Debug)]
pub struct WedgeAlgebra {
    wedge: Wedge,
    generators: Vec<OperatorMatrix>,
    warp_matrix: SkewWarpMatrix,
    degree_cap: usize,
}

impl WedgeAlgebra {
    /// Deforms `undeformed` (completed with adjoints where missing).
    pub fn new(
        wedge: Wedge,
        undeformed: &[OperatorMatrix],
        s: &SpectralDecomposition,
        kappa: f64,
        degree_cap: usize,
    ) -> Result<Self> {
        require_physical(s)?;
        let warp_matrix = wedge.warp_matrix(kappa)?;
        let mut closed: Vec<OperatorMatrix> = Vec::with_capacity(2 * undeformed.len());
        for g in undeformed {
            closed.push(g.clone());
        }
        for g in undeformed {
            let adj = g.adjoint();
            if closed.iter().all(|h| op_norm(&(h - &adj)) > EXACT_TOL) {
                closed.push(adj);
            }
        }
        let generators = closed
            .iter()
            .map(|g| warp(s, &warp_matrix, g))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            wedge,
            generators,
            warp_matrix,
            degree_cap,
        })
    }

    pub fn wedge(&self) -> &Wedge {
        &self.wedge
    }

    pub fn generators(&self) -> &[OperatorMatrix] {
        &self.generators
    }

    pub fn warp_matrix(&self) -> &SkewWarpMatrix {
        &self.warp_matrix
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    pub fn span(&self) -> Span {
        monomial_span(&self.generators, self.degree_cap, SPAN_ACCEPT)
    }

    /// `max_G min_H ‖G* − H‖` over the deformed generators.
    pub fn adjoint_closure_residual(&self) -> f64 {
        self.generators
            .iter()
            .map(|g| {
                let adj = g.adjoint();
                self.generators
                    .iter()
                    .map(|h| op_norm(&(h - &adj)))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    }
}

/// The deformed operator does not depend on which `λ` with `λW₀ = W` is used.
pub fn check_definition_consistency(
    w: &Wedge,
    a: &OperatorMatrix,
    s: &SpectralDecomposition,
    kappa: f64,
    alt: &PoincareElement,
) -> Result<CheckReport> {
    let alt_wedge = if w.dim() == 2 {
        Wedge::with_class(alt.clone(), w.is_left_class())?
    } else {
        Wedge::new(alt.clone())
    };
    if !alt_wedge.approx_eq(w) {
        return Err(Error::Precondition("alternative representative maps W₀ to a different wedge".into()));
    }
    let from_rep = deform_for_wedge(w, a, s, kappa)?;
    let from_alt = deform_for_wedge(&alt_wedge, a, s, kappa)?;
    let q_diff = w.warp_matrix(kappa)?.max_abs_diff(&alt_wedge.warp_matrix(kappa)?);
    Ok(
        CheckReport::new("net.definition", anchors::DEFINITION, op_norm(&(from_rep - from_alt)), EXACT_TOL)
            .with_param("kappa", kappa)
            .with_param("warp_matrix_difference", q_diff),
    )
}

/// `𝔄_κ(W₁) ⊂ 𝔄_κ(W₂)` for `W₁ = W₂ + a`, given generators of both
/// undeformed algebras.
pub fn check_isotony(
    w1: &Wedge,
    w2: &Wedge,
    gens1: &[OperatorMatrix],
    gens2: &[OperatorMatrix],
    s: &SpectralDecomposition,
    kappa: f64,
    degree: usize,
) -> Result<CheckReport> {
    if !w1.is_subset_of(w2) {
        return Err(Error::Precondition("first wedge is not contained in the second".into()));
    }
    let (q1, q2) = (w1.warp_matrix(kappa)?, w2.warp_matrix(kappa)?);
    if q1.max_abs_diff(&q2) > GEOMETRY_TOL {
        return Err(Error::Precondition("wedges are not translates of each other".into()));
    }
    let a1 = WedgeAlgebra::new(w1.clone(), gens1, s, kappa, degree)?;
    let a2 = WedgeAlgebra::new(w2.clone(), gens2, s, kappa, degree)?;
    let span = a2.span();
    let residual = a1
        .generators()
        .iter()
        .map(|g| span.residual(&flatten(g)))
        .fold(0.0, f64::max);
    Ok(CheckReport::new("net.isotony", anchors::ISOTONY, residual, SPAN_TOL)
        .with_param("degree", degree)
        .with_param("span_dim", span.dim())
        .with_param("condition", span.condition()))
}

/// `α_λ(A_{Q_W}) = (α_λ A)_{Q_{λW}}` at the generator level.
pub fn check_wedge_covariance(
    rep: &ExtendedRep,
    w: &Wedge,
    a: &OperatorMatrix,
    kappa: f64,
    lambda: &PoincareElement,
) -> Result<CheckReport> {
    let (u, target) = rep.unitary(lambda)?;
    let lhs = &u * deform_for_wedge(w, a, &rep.base, kappa)? * u.adjoint();
    let rhs = deform_for_wedge(&w.image(lambda), &(&u * a * u.adjoint()), &target, kappa)?;
    Ok(
        CheckReport::new("net.covariance", anchors::NET_COVARIANCE, op_norm(&(lhs - rhs)), EXACT_TOL)
            .with_param("kappa", kappa)
            .with_param("d", rep.base.spacetime_dim()),
    )
}

/// Locality between `𝔄_κ(W₀)` and `𝔄_κ(W₀′)`: hypothesis `h` is the largest
/// translated commutator over the spectrum, conclusion `c` the largest
/// `‖[A_{Q_κ}, B_{−Q_κ}]‖`, both maximised over generator pairs.
pub fn check_locality(
    a_gens: &[OperatorMatrix],
    b_gens: &[OperatorMatrix],
    s: &SpectralDecomposition,
    kappa: f64,
) -> Result<CommutationReport> {
    require_physical(s)?;
    let q = SkewWarpMatrix::standard(kappa, s.spacetime_dim())?;
    let mut total = CommutationReport {
        hypothesis_residual: 0.0,
        conclusion_residual: 0.0,
        tol: EXACT_TOL,
        pairs_scanned: 0,
    };
    for a in a_gens {
        for b in b_gens {
            let r = check_commutation(s, &q, a, b)?;
            total.hypothesis_residual = total.hypothesis_residual.max(r.hypothesis_residual);
            total.conclusion_residual = total.conclusion_residual.max(r.conclusion_residual);
            total.pairs_scanned += r.pairs_scanned;
        }
    }
    Ok(total)
}

/// `‖A_{Q_κ}Ω − AΩ‖`.
pub fn check_reeh_schlieder(a: &OperatorMatrix, s: &SpectralDecomposition, kappa: f64) -> Result<CheckReport> {
    let omega = require_physical(s)?;
    let q = SkewWarpMatrix::standard(kappa, s.spacetime_dim())?;
    let residual = (warp(s, &q, a)? * omega - a * omega).norm();
    Ok(CheckReport::new("net.reeh_schlieder.vacuum", anchors::REEH_SCHLIEDER, residual, EXACT_TOL).with_param("kappa", kappa))
}

/// `𝔄_κ(W₀)Ω ⊃ 𝔄(W₀)Ω`: the undeformed cyclic subspace (monomials of
/// degree `≤ D` applied to `Ω`) lies in the span of `B_{Q_κ}Ω` where `B`
/// runs through a basis of the undeformed degree-`D` polynomials.
pub fn check_reeh_schlieder_subspace(
    gens: &[OperatorMatrix],
    s: &SpectralDecomposition,
    kappa: f64,
    degree: usize,
) -> Result<CheckReport> {
    let omega = require_physical(s)?.clone();
    let q = SkewWarpMatrix::standard(kappa, s.spacetime_dim())?;
    let n = s.dim();
    let undeformed = cyclic_span(gens, &omega, degree, SPAN_ACCEPT);
    let polys = monomial_span(gens, degree, SPAN_ACCEPT);
    let mut deformed = Span::new(n, SPAN_ACCEPT);
    for b in polys.basis() {
        let op = unflatten(b, n);
        deformed.push(&(warp(s, &q, &op)? * &omega));
    }
    let residual = undeformed
        .basis()
        .iter()
        .map(|v| deformed.residual(v))
        .fold(0.0, f64::max);
    Ok(CheckReport::new("net.reeh_schlieder.subspace", anchors::REEH_SCHLIEDER, residual, SPAN_TOL)
        .with_param("degree", degree)
        .with_param("undeformed_dim", undeformed.dim())
        .with_param("deformed_dim", deformed.dim()))
}

/// Outcome of the germ conditions.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GermReport {
    /// `max ‖α_λ(G) − P_span α_λ(G)‖ / ‖α_λ(G)‖` over wedge-preserving `λ`.
    pub invariance_residual: f64,
    /// `max ‖[α_λ′(G), G̃]‖` over wedge-reflecting `λ′`.
    pub commutant_residual: f64,
    pub preserving: usize,
    pub reflecting: usize,
}

impl GermReport {
    pub fn to_reports(&self) -> Vec<CheckReport> {
        let mut a = CheckReport::new("germ.invariance", anchors::GERM, self.invariance_residual, SPAN_TOL)
            .with_param("elements", self.preserving);
        if self.preserving == 0 {
            a = a.with_note("no wedge-preserving elements given; vacuous");
        }
        let mut b = CheckReport::new("germ.commutant", anchors::GERM, self.commutant_residual, SPAN_TOL)
            .with_param("elements", self.reflecting);
        if self.reflecting == 0 {
            b = b.with_note("no wedge-reflecting elements given; vacuous");
        }
        vec![a, b]
    }

    pub fn pass(&self) -> bool {
        self.invariance_residual < SPAN_TOL && self.commutant_residual < SPAN_TOL
    }
}

/// Checks that the algebra generated by `gens` is invariant under every
/// `λ` with `λW₀ ⊂ W₀` (up to degree `D`) and that `α_λ′(G)` commutes with
/// all generators for every `λ′` with `λ′W₀ ⊂ W₀′`.
pub fn validate_germ(
    gens: &[OperatorMatrix],
    rep: &ExtendedRep,
    wedge_preserving: &[PoincareElement],
    wedge_reflecting: &[PoincareElement],
    degree: usize,
) -> Result<GermReport> {
    let d = rep.base.spacetime_dim();
    let w0 = Wedge::standard(d);
    let w0c = w0.causal_complement();
    for lam in wedge_preserving {
        if !w0.image(lam).is_subset_of(&w0) {
            return Err(Error::Precondition("element does not map W₀ into itself".into()));
        }
    }
    for lam in wedge_reflecting {
        if !w0.image(lam).is_subset_of(&w0c) {
            return Err(Error::Precondition("element does not map W₀ into W₀′".into()));
        }
    }
    let mut invariance_residual: f64 = 0.0;
    if !wedge_preserving.is_empty() {
        let span = monomial_span(gens, degree, SPAN_ACCEPT);
        for lam in wedge_preserving {
            for g in gens {
                invariance_residual = invariance_residual.max(span.residual(&flatten(&rep.alpha(lam, g)?)));
            }
        }
    }
    let mut commutant_residual: f64 = 0.0;
    for lam in wedge_reflecting {
        for g in gens {
            let moved = rep.alpha(lam, g)?;
            for h in gens {
                commutant_residual = commutant_residual.max(op_norm(&commutator(&moved, h)));
            }
        }
    }
    Ok(GermReport {
        invariance_residual,
        commutant_residual,
        preserving: wedge_preserving.len(),
        reflecting: wedge_reflecting.len(),
    })
}

/// One refinement level of the free-field locality demonstration.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocalitySweepRow {
    pub delta: f64,
    pub modes: usize,
    pub dim: usize,
    /// `max ‖[α_{Q_κp}(A), α_{−Q_κq}(B)]Ω‖` over `p, q ∈ {0} ∪` shell.
    pub hypothesis: f64,
    /// `‖[A_{Q_κ}, B_{−Q_κ}]Ω‖`.
    pub conclusion: f64,
}

/// Free fields smeared around `±(time_offset, separation/2)` in `d = 2` (Gaussian
/// momentum profile of width `1/sigma`), on lattices of spacing `δ` with the
/// momentum cutoff held near `cutoff`. The commutators only vanish in the
/// continuum, so the table is a demonstration: both columns should shrink as
/// `δ` decreases.
pub fn free_field_locality_sweep(
    kappa: f64,
    deltas: &[f64],
    cutoff: f64,
    sigma: f64,
    separation: f64,
    time_offset: f64,
) -> Result<Vec<LocalitySweepRow>> {
    let mut rows = Vec::with_capacity(deltas.len());
    for &delta in deltas {
        let k = (cutoff / delta).round().max(1.0) as usize;
        let fock = TruncatedFockSpace::lattice(2, 1.0, k, delta, 2)?;
        let s = fock.spectral();
        let omega = fock.vacuum();
        let centre_a = MinkowskiVector::from_slice(&[time_offset, separation / 2.0]);
        let centre_b = MinkowskiVector::from_slice(&[-time_offset, -separation / 2.0]);
        let profile = |x: &MinkowskiVector| -> Vec<C64> {
            fock.modes()
                .iter()
                .map(|m| {
                    let p = m.four_momentum();
                    let g = (-0.5 * sigma * sigma * p.spatial_norm().powi(2)).exp();
                    crate::linalg::cis(p.dot(x)) * g
                })
                .collect()
        };
        let a = fock.free_field(&profile(&centre_a))?;
        let b = fock.free_field(&profile(&centre_b))?;
        let q = SkewWarpMatrix::standard(kappa, 2)?;
        let mq = -&q;
        let mut points = vec![MinkowskiVector::zeros(2)];
        points.extend(fock.modes().iter().map(|m| m.four_momentum()));
        let shifted_a: Vec<OperatorMatrix> = points
            .iter()
            .map(|p| adjoint_action(s, &q.apply(p), &a))
            .collect::<Result<_>>()?;
        let shifted_b: Vec<OperatorMatrix> = points
            .iter()
            .map(|p| adjoint_action(s, &mq.apply(p), &b))
            .collect::<Result<_>>()?;
        let a_omega: Vec<_> = shifted_a.iter().map(|x| x * &omega).collect();
        let b_omega: Vec<_> = shifted_b.iter().map(|y| y * &omega).collect();
        let mut hypothesis: f64 = 0.0;
        for (x, xo) in shifted_a.iter().zip(&a_omega) {
            for (y, yo) in shifted_b.iter().zip(&b_omega) {
                hypothesis = hypothesis.max((x * yo - y * xo).norm());
            }
        }
        let aq = warp(s, &q, &a)?;
        let bq = warp(s, &mq, &b)?;
        let conclusion = (&aq * (&bq * &omega) - &bq * (&aq * &omega)).norm();
        rows.push(LocalitySweepRow {
            delta,
            modes: fock.n_modes(),
            dim: fock.dim(),
            hypothesis,
            conclusion,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{LorentzTransform, sample_wedge_stabilizer};
    use crate::linalg::identity;
    use crate::models::{mirrored_tensor_split, random_operator, random_spectral, SpectralParams};
    use crate::spectral::CommutationVerdict;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fock() -> TruncatedFockSpace {
        TruncatedFockSpace::lattice(2, 1.0, 1, 1.0, 2).unwrap()
    }

    #[test]
    fn deform_examples() {
        let f = fock();
        let a = f.free_field(&[C64::new(0.3, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 0.5)]).unwrap();
        let w0 = Wedge::standard(2);
        let direct = warp(f.spectral(), &SkewWarpMatrix::standard(0.8, 2).unwrap(), &a).unwrap();
        assert_eq!(deform_for_wedge(&w0, &a, f.spectral(), 0.8).unwrap(), direct);
        let left = w0.causal_complement();
        for w in [&w0, &left] {
            assert_eq!(deform_for_wedge(w, &a, f.spectral(), 0.0).unwrap(), a);
        }
        let non_physical = crate::spectral::SpectralDecomposition::diagonal(&[MinkowskiVector::from_slice(&[1.0, 0.0])]).unwrap();
        assert!(deform_for_wedge(&w0, &identity(1), &non_physical, 1.0).is_err());
    }

    #[test]
    fn rotated_wedge_in_three_dimensions_uses_minus_q() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut p = SpectralParams::new(6, 3);
        p.physical = true;
        let s = random_spectral(&mut rng, p).unwrap();
        let a = random_operator(&mut rng, 6);
        let w = Wedge::standard(3).image(&PoincareElement::from_lorentz(LorentzTransform::half_turn(3).unwrap()));
        let expected = warp(&s, &-&SkewWarpMatrix::standard(0.6, 3).unwrap(), &a).unwrap();
        assert!(op_norm(&(deform_for_wedge(&w, &a, &s, 0.6).unwrap() - expected)) < 1e-12);
    }

    #[test]
    fn definition_consistency_and_guard() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let mut p = SpectralParams::new(8, 3);
        p.physical = true;
        let s = random_spectral(&mut rng, p).unwrap();
        let a = random_operator(&mut rng, 8);
        let rep = sample_wedge_stabilizer(&mut rng, 3);
        let w = Wedge::new(rep.clone());
        let stab = sample_wedge_stabilizer(&mut rng, 3);
        let alt = rep.compose(&PoincareElement::from_lorentz(stab.lorentz.clone()));
        assert!(check_definition_consistency(&w, &a, &s, 1.0, &alt).unwrap().pass);
        let wrong = PoincareElement::from_lorentz(LorentzTransform::half_turn(3).unwrap());
        assert!(check_definition_consistency(&w, &a, &s, 1.0, &wrong).is_err());
    }

    #[test]
    fn isotony_examples() {
        let f = fock();
        let s = f.spectral();
        let gens: Vec<OperatorMatrix> = (0..3).map(|m| f.creation(m).unwrap()).collect();
        let w0 = Wedge::standard(2);
        let r = check_isotony(&w0, &w0, &gens, &gens, s, 1.0, 1).unwrap();
        assert!(r.pass && r.residual < 1e-12);
        let inner = w0.image(&PoincareElement::translation(MinkowskiVector::from_slice(&[0.0, 1.0])));
        let subset = &gens[..1];
        assert!(check_isotony(&inner, &w0, subset, &gens, s, 1.0, 1).unwrap().pass);
        assert!(check_isotony(&w0, &inner, &gens, &gens, s, 1.0, 1).is_err());
    }

    #[test]
    fn locality_on_mirrored_split() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut p = SpectralParams::new(3, 3);
        p.physical = true;
        let a = random_spectral(&mut rng, p).unwrap();
        let (rep, split) = mirrored_tensor_split(&a).unwrap();
        let a_gens = vec![split.left(&random_operator(&mut rng, 3))];
        let b_gens = vec![split.right(&random_operator(&mut rng, 3))];
        let r = check_locality(&a_gens, &b_gens, &rep.base, 1.0).unwrap();
        assert_eq!(r.verdict(), CommutationVerdict::Holds);
        assert!(r.hypothesis_residual < 1e-13);
    }

    #[test]
    fn reeh_schlieder_examples() {
        let f = fock();
        let a = f.creation(2).unwrap();
        let r = check_reeh_schlieder(&a, f.spectral(), 1.0).unwrap();
        assert!(r.pass);
        let gens = vec![f.free_field(&[C64::new(1.0, 0.0); 3]).unwrap()];
        let r = check_reeh_schlieder_subspace(&gens, f.spectral(), 1.0, 2).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn germ_negative_control_full_matrix_algebra() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let mut p = SpectralParams::new(2, 3);
        p.physical = true;
        let a = random_spectral(&mut rng, p).unwrap();
        let (rep, _) = mirrored_tensor_split(&a).unwrap();
        let n = rep.base.dim();
        let mut units = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let mut e = OperatorMatrix::zeros(n, n);
                e[(i, j)] = C64::new(1.0, 0.0);
                units.push(e);
            }
        }
        let pres = vec![PoincareElement::translation(MinkowskiVector::from_slice(&[0.0, 1.0, 0.0]))];
        let refl = vec![PoincareElement::from_lorentz(LorentzTransform::half_turn(3).unwrap())];
        let g = validate_germ(&units, &rep, &pres, &refl, 1).unwrap();
        assert!(g.invariance_residual < 1e-10);
        assert!(g.commutant_residual > 0.5);
        let empty = validate_germ(&units, &rep, &[], &[], 1).unwrap();
        assert!(empty.pass());
        assert!(empty.to_reports()[0].note.is_some());
    }
}
