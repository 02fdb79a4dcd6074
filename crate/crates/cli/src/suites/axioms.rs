//! Properties of the deformed net on the truncated Fock model and on
//! synthetic models, plus the free-field checks.

use rand::Rng;

use warpconv::fock::TruncatedFockSpace;
use warpconv::geometry::{sample_wedge_stabilizer, LorentzTransform, MinkowskiVector, PoincareElement, Wedge};
use warpconv::linalg::{commutator, monomial_span, op_norm, unflatten, OperatorMatrix, C64};
use warpconv::models::{
    mirrored_tensor_split, random_momentum, random_operator, random_skew, random_spectral, rotation_closed,
    SpectralParams,
};
use warpconv::report::{anchors, CheckReport};
use warpconv::spectral::{adjoint_action, warp, ExtendedRep, SpectralDecomposition};
use warpconv::wedge_algebra::{
    check_definition_consistency, check_isotony, check_locality, check_reeh_schlieder, check_reeh_schlieder_subspace,
    check_wedge_covariance, free_field_locality_sweep, WedgeAlgebra, SPAN_ACCEPT,
};

use super::random_lorentz;
use crate::{kappa_id, Ctx, Result};

/// Parameters of the free-field refinement table.
const SWEEP_CUTOFF: f64 = 4.0;
const SWEEP_SIGMA: f64 = 1.2;
const SWEEP_SEPARATION: f64 = 8.0;
const SWEEP_TIME_OFFSET: f64 = 1.0;

const GL_RANDOM_Q: usize = 20;

pub(crate) fn run(ctx: &mut Ctx) -> Result<()> {
    let cfg = ctx.cfg;
    let fock = TruncatedFockSpace::lattice_with_limit(
        cfg.d,
        cfg.mass,
        cfg.lattice_k,
        cfg.lattice_delta,
        cfg.n_max,
        cfg.max_dim,
    )?;
    let reference = TruncatedFockSpace::lattice(2, 1.0, 1, 1.0, 2)?;
    ctx.timed(|ctx| free_field_structure(ctx, &fock))?;
    for kappa in cfg.kappa.clone() {
        ctx.timed(|ctx| fock_net(ctx, &fock, kappa))?;
        ctx.timed(|ctx| gl_coincidence(ctx, &reference, kappa))?;
        ctx.timed(|ctx| synthetic_net(ctx, kappa))?;
    }
    ctx.timed(sweep)?;
    Ok(())
}

fn amplitudes(ctx: &mut Ctx, n: usize) -> Vec<C64> {
    (0..n)
        .map(|_| C64::new(ctx.rng.random_range(-1.0..1.0), ctx.rng.random_range(-1.0..1.0)))
        .collect()
}

fn random_wedge(ctx: &mut Ctx, d: usize) -> Result<Wedge> {
    let lam = PoincareElement::new(random_lorentz(&mut ctx.rng, d, 1, 1.0), random_momentum(&mut ctx.rng, d, 2.0, false))?;
    Ok(Wedge::new(lam))
}

/// Orthonormal basis (as operators) of the degree-`D` polynomials in
/// `α_b(g)`, `b ∈ shifts`.
fn translated_polynomials(
    s: &SpectralDecomposition,
    gens: &[OperatorMatrix],
    shifts: &[MinkowskiVector],
    degree: usize,
) -> Result<Vec<OperatorMatrix>> {
    let mut moved = Vec::with_capacity(gens.len() * shifts.len());
    for b in shifts {
        for g in gens {
            moved.push(adjoint_action(s, b, g)?);
        }
    }
    let span = monomial_span(&moved, degree, SPAN_ACCEPT);
    Ok(span.basis().iter().map(|v| unflatten(v, s.dim())).collect())
}

/// `𝔄(W₀ + a)` and `𝔄(W₀)` generated by translates `α_b(g)` with
/// `b ∈ {a, 2a}` and `b ∈ {0, a, 2a}`, `a = (0, 1, 0, …)`, truncated at the
/// degree cap.
fn isotony_check(
    id: String,
    s: &SpectralDecomposition,
    gens: &[OperatorMatrix],
    kappa: f64,
    degree: usize,
) -> Result<CheckReport> {
    let d = s.spacetime_dim();
    let a = MinkowskiVector::unit(d, 1);
    let w0 = Wedge::standard(d);
    let w1 = w0.image(&PoincareElement::translation(a.clone()));
    let inner = translated_polynomials(s, gens, &[a.clone(), &a * 2.0], degree)?;
    let outer = translated_polynomials(s, gens, &[MinkowskiVector::zeros(d), a.clone(), &a * 2.0], degree)?;
    Ok(check_isotony(&w1, &w0, &inner, &outer, s, kappa, 1)?
        .with_id(id)
        .with_param("degree", degree)
        .with_param("inner_dim", inner.len())
        .with_param("outer_dim", outer.len()))
}

/// Number-conserving operators on disjoint mode sets: every translate of
/// one commutes with every translate of the other, exactly.
fn disjoint_hoppings(fock: &TruncatedFockSpace) -> Result<(Vec<OperatorMatrix>, Vec<OperatorMatrix>)> {
    let (mut left, mut right) = (Vec::new(), Vec::new());
    for (i, m) in fock.modes().iter().enumerate() {
        if m.spatial()[0] < 0.0 {
            left.push(i);
        } else if m.spatial()[0] > 0.0 {
            right.push(i);
        }
    }
    let local = |set: &[usize]| -> Result<Vec<OperatorMatrix>> {
        let mut out = Vec::new();
        for (k, &i) in set.iter().enumerate() {
            out.push(fock.creation(i)? * fock.annihilation(i)?);
            if let Some(&j) = set.get(k + 1) {
                let hop = fock.creation(i)? * fock.annihilation(j)?;
                out.push(&hop + hop.adjoint());
            }
        }
        Ok(out)
    };
    Ok((local(&left)?, local(&right)?))
}

fn free_field_structure(ctx: &mut Ctx, fock: &TruncatedFockSpace) -> Result<Vec<CheckReport>> {
    let exact = ctx.cfg.tolerances.exact;
    // [a(p), a†(q)] = δ_{pq} below the top sector
    let below: OperatorMatrix = (0..fock.cutoff()).map(|n| fock.sector_projection(n)).sum();
    let mut ccr: f64 = 0.0;
    for i in 0..fock.n_modes() {
        for j in 0..fock.n_modes() {
            let c = commutator(&fock.annihilation(i)?, &fock.creation(j)?);
            let expected = if i == j { below.clone() } else { OperatorMatrix::zeros(fock.dim(), fock.dim()) };
            ccr = ccr.max(op_norm(&(&below * c * &below - expected)));
        }
    }
    Ok(vec![
        CheckReport::new("fock.ccr", anchors::CCR, ccr, exact)
            .with_param("modes", fock.n_modes())
            .with_param("n_max", fock.cutoff()),
        CheckReport::new("fock.spectrum_shape", anchors::SPECTRUM, fock.spectrum_shape_residual(), exact)
            .with_param("dim", fock.dim()),
    ])
}

fn fock_net(ctx: &mut Ctx, fock: &TruncatedFockSpace, kappa: f64) -> Result<Vec<CheckReport>> {
    let exact = ctx.cfg.tolerances.exact;
    let degree = ctx.cfg.degree;
    let s = fock.spectral();
    let d = fock.spacetime_dim();
    let n = fock.n_modes();
    let f1 = amplitudes(ctx, n);
    let f2 = amplitudes(ctx, n);
    let phi1 = fock.free_field(&f1)?;
    let phi2 = fock.free_field(&f2)?;
    let mut reports = Vec::new();
    let params = |r: CheckReport| r.with_param("model", "fock").with_param("kappa", kappa).with_param("dim", fock.dim());

    // representative independence for both wedge classes
    let mut definition: f64 = 0.0;
    for _ in 0..10 {
        let w = random_wedge(ctx, d)?;
        for w in [w.causal_complement(), w] {
            let stab = PoincareElement::from_lorentz(sample_wedge_stabilizer(&mut ctx.rng, d).lorentz);
            let alt = w.representative().compose(&stab);
            definition = definition.max(check_definition_consistency(&w, &phi1, s, kappa, &alt)?.residual);
        }
    }
    reports.push(params(CheckReport::new(kappa_id("net.definition.fock", kappa), anchors::DEFINITION, definition, exact)));

    reports.push(params(isotony_check(
        kappa_id("net.isotony.fock", kappa),
        s,
        std::slice::from_ref(&phi1),
        kappa,
        degree,
    )?));

    // covariance under translations, the symmetries the lattice carries
    let rep = ExtendedRep::new(s.clone());
    let mut cov: f64 = 0.0;
    for _ in 0..10 {
        let w = random_wedge(ctx, d)?;
        let lam = PoincareElement::translation(random_momentum(&mut ctx.rng, d, 3.0, false));
        for w in [w.causal_complement(), w] {
            cov = cov.max(check_wedge_covariance(&rep, &w, &phi2, kappa, &lam)?.residual);
        }
    }
    reports.push(params(
        CheckReport::new(kappa_id("net.covariance.fock", kappa), anchors::NET_COVARIANCE, cov, exact)
            .with_param("symmetries", "translations"),
    ));

    let (a_gens, b_gens) = disjoint_hoppings(fock)?;
    for r in check_locality(&a_gens, &b_gens, s, kappa)?.to_reports("net.locality.fock", anchors::LOCALITY) {
        let id = kappa_id(&r.check_id, kappa);
        reports.push(params(r.with_id(id)));
    }

    let mut rs = check_reeh_schlieder(&phi1, s, kappa)?.residual;
    rs = rs.max(check_reeh_schlieder(&(&phi1 * &phi2), s, kappa)?.residual);
    reports.push(params(CheckReport::new(
        kappa_id("net.reeh_schlieder.vacuum.fock", kappa),
        anchors::REEH_SCHLIEDER,
        rs,
        exact,
    )));
    let sub = check_reeh_schlieder_subspace(&[phi1.clone(), phi2.clone()], s, kappa, degree)?;
    let id = kappa_id("net.reeh_schlieder.subspace.fock", kappa);
    reports.push(params(sub.with_id(id)));

    let alg = WedgeAlgebra::new(Wedge::standard(d), &[fock.smeared_creation(&f1)?, phi2], s, kappa, degree)?;
    reports.push(params(CheckReport::new(
        kappa_id("net.adjoint_closed.fock", kappa),
        anchors::ADJOINT_CLOSED,
        alg.adjoint_closure_residual(),
        exact,
    )));
    Ok(reports)
}

fn gl_coincidence(ctx: &mut Ctx, fock: &TruncatedFockSpace, kappa: f64) -> Result<Vec<CheckReport>> {
    let s = fock.spectral();
    let mut qs = vec![warpconv::geometry::warp_matrix(kappa, 2)?];
    qs.extend((0..GL_RANDOM_Q).map(|_| random_skew(&mut ctx.rng, 2, 2.0)));
    let mut worst: f64 = 0.0;
    for q in &qs {
        for mode in 0..fock.n_modes() {
            let lhs = warp(s, q, &fock.creation(mode)?)?;
            worst = worst.max(op_norm(&(lhs - fock.gl_deformed_creation(mode, q)?)));
        }
    }
    Ok(vec![CheckReport::new(kappa_id("fock.gl_coincidence", kappa), anchors::GL, worst, ctx.cfg.tolerances.exact)
        .with_param("kappa", kappa)
        .with_param("dim", fock.dim())
        .with_param("matrices", qs.len())])
}

fn synthetic_net(ctx: &mut Ctx, kappa: f64) -> Result<Vec<CheckReport>> {
    let exact = ctx.cfg.tolerances.exact;
    let degree = ctx.cfg.degree;
    let mut reports = Vec::new();
    let mut p = SpectralParams::new(8, 3);
    p.physical = true;
    let s = random_spectral(&mut ctx.rng, p)?;
    let a = random_operator(&mut ctx.rng, 8);
    let params = |r: CheckReport| r.with_param("model", "synthetic").with_param("kappa", kappa);

    let mut definition: f64 = 0.0;
    for _ in 0..10 {
        let w = random_wedge(ctx, 3)?;
        let alt = w
            .representative()
            .compose(&PoincareElement::from_lorentz(sample_wedge_stabilizer(&mut ctx.rng, 3).lorentz));
        definition = definition.max(check_definition_consistency(&w, &a, &s, kappa, &alt)?.residual);
    }
    reports.push(params(CheckReport::new(
        kappa_id("net.definition.synthetic", kappa),
        anchors::DEFINITION,
        definition,
        exact,
    )));

    reports.push(params(isotony_check(
        kappa_id("net.isotony.synthetic", kappa),
        &s,
        std::slice::from_ref(&a),
        kappa,
        degree,
    )?));

    let rotation = LorentzTransform::rotation(3, 1, 2, std::f64::consts::FRAC_PI_2)?;
    let rep = rotation_closed(&mut ctx.rng, &rotation, 4, 2, 1, true)?;
    let b = random_operator(&mut ctx.rng, rep.base.dim());
    let mut cov: f64 = 0.0;
    for _ in 0..10 {
        let w = random_wedge(ctx, 3)?;
        let lam = PoincareElement::new(rotation.clone(), random_momentum(&mut ctx.rng, 3, 2.0, false))?;
        cov = cov.max(check_wedge_covariance(&rep, &w, &b, kappa, &lam)?.residual);
    }
    reports.push(params(CheckReport::new(
        kappa_id("net.covariance.synthetic", kappa),
        anchors::NET_COVARIANCE,
        cov,
        exact,
    )));

    let mut pa = SpectralParams::new(3, 3);
    pa.physical = true;
    let base = random_spectral(&mut ctx.rng, pa)?;
    let (mirror, split) = mirrored_tensor_split(&base)?;
    let a_gens: Vec<OperatorMatrix> = (0..2).map(|_| split.left(&random_operator(&mut ctx.rng, 3))).collect();
    let b_gens: Vec<OperatorMatrix> = (0..2).map(|_| split.right(&random_operator(&mut ctx.rng, 3))).collect();
    for r in check_locality(&a_gens, &b_gens, &mirror.base, kappa)?.to_reports("net.locality.synthetic", anchors::LOCALITY) {
        let id = kappa_id(&r.check_id, kappa);
        reports.push(params(r.with_id(id)));
    }

    reports.push(params(
        check_reeh_schlieder(&a, &s, kappa)?.with_id(kappa_id("net.reeh_schlieder.vacuum.synthetic", kappa)),
    ));
    Ok(reports)
}

fn sweep(ctx: &mut Ctx) -> Result<Vec<CheckReport>> {
    let cfg = ctx.cfg;
    let rows = free_field_locality_sweep(
        cfg.sweep_kappa,
        &cfg.sweep_deltas,
        SWEEP_CUTOFF,
        SWEEP_SIGMA,
        SWEEP_SEPARATION,
        SWEEP_TIME_OFFSET,
    )?;
    let reports = rows
        .iter()
        .map(|r| {
            CheckReport::new(format!("net.locality.free_field[delta={}]", r.delta), anchors::LOCALITY, r.conclusion, f64::INFINITY)
                .with_pass(true)
                .with_param("kappa", cfg.sweep_kappa)
                .with_param("delta", r.delta)
                .with_param("dim", r.dim)
                .with_param("hypothesis", r.hypothesis)
                .with_param("conclusion", r.conclusion)
                .with_note("lattice demonstration: reported, not asserted")
        })
        .collect();
    ctx.out.sweep.extend(rows);
    Ok(reports)
}
