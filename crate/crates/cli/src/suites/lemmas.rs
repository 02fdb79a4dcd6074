//! Warp-engine identities on random finite models, and the undeformed
//! limit.

use std::f64::consts::FRAC_PI_2;

use rand::Rng;

use warpconv::fock::TruncatedFockSpace;
use warpconv::geometry::{LorentzTransform, PoincareElement, SkewWarpMatrix, Wedge};
use warpconv::linalg::{op_norm, C64};
use warpconv::models::{
    boost_pair, mirrored_tensor_split, random_momentum, random_non_skew, random_operator, random_skew, random_spectral,
    rotation_closed, SpectralParams, TensorSplit,
};
use warpconv::report::{anchors, CheckReport};
use warpconv::scattering::{deformed_two_particle, s_kernel_ratio, sharp_phase, symmetric_product, Direction};
use warpconv::spectral::{
    check_adjoint, check_commutation, check_composition, check_covariance, check_left_right, check_vacuum_fixed, warp,
    warp_left_general, warp_right_general, CommutationReport,
};
use warpconv::wedge_algebra::deform_for_wedge;

use crate::{Ctx, Result};

const BATTERY_DIMS: [usize; 3] = [2, 3, 4];

/// Non-skew control: fraction of trials that must separate left and right.
const CONTROL_FRACTION: f64 = 0.9;
const CONTROL_THRESHOLD: f64 = 1e-3;

pub(crate) fn run(ctx: &mut Ctx) -> Result<()> {
    ctx.timed(battery)?;
    ctx.timed(negative_control)?;
    ctx.timed(commutation)?;
    ctx.timed(covariance)?;
    ctx.timed(undeformed)?;
    Ok(())
}

/// Worst residual of a family of checks, with the trial count.
struct Worst {
    id: &'static str,
    anchor: &'static str,
    tol: f64,
    residual: f64,
    trials: usize,
}

impl Worst {
    fn new(id: &'static str, anchor: &'static str, tol: f64) -> Self {
        Self {
            id,
            anchor,
            tol,
            residual: 0.0,
            trials: 0,
        }
    }

    fn add(&mut self, r: f64) {
        self.residual = self.residual.max(r);
        self.trials += 1;
    }

    fn report(&self) -> CheckReport {
        CheckReport::new(self.id, self.anchor, self.residual, self.tol).with_param("trials", self.trials)
    }
}

fn random_params(ctx: &mut Ctx, d: usize, physical: bool) -> SpectralParams {
    let dim = ctx.rng.random_range(2..=ctx.cfg.max_model_dim);
    let mut p = SpectralParams::new(dim, d);
    p.points = ctx.rng.random_range(1..=dim);
    p.physical = physical;
    p.dense_basis = ctx.rng.random_bool(0.8);
    if physical && p.points == 1 && dim > 1 {
        p.points = 2;
    }
    p
}

fn battery(ctx: &mut Ctx) -> Result<Vec<CheckReport>> {
    let exact = ctx.cfg.tolerances.exact;
    let mut left_right = Worst::new("warp.left_right", anchors::LEFT_RIGHT, exact);
    let mut adjoint = Worst::new("warp.adjoint", anchors::ADJOINT, exact);
    let mut composition = Worst::new("warp.composition", anchors::COMPOSITION, exact);
    let mut vacuum = Worst::new("warp.vacuum", anchors::VACUUM, exact);
    let mut calculus = Worst::new("warp.spectral_calculus", anchors::SPECTRAL_CALCULUS, exact);
    let mut max_dim = 0;
    for trial in 0..ctx.cfg.lemma_trials {
        let d = BATTERY_DIMS[trial % BATTERY_DIMS.len()];
        let physical = trial % 2 == 0;
        let params = random_params(ctx, d, physical);
        max_dim = max_dim.max(params.dim);
        let s = random_spectral(&mut ctx.rng, params)?;
        let q1 = random_skew(&mut ctx.rng, d, 2.0);
        let q2 = random_skew(&mut ctx.rng, d, 2.0);
        let f = random_operator(&mut ctx.rng, s.dim());
        left_right.add(check_left_right(&s, &q1, &f)?.residual);
        adjoint.add(check_adjoint(&s, &q1, &f)?.residual);
        composition.add(check_composition(&s, &q1, &q2, &f)?.residual);
        if physical {
            vacuum.add(check_vacuum_fixed(&s, &q1, &f)?.residual);
        }
        // Eⱼ f(P) = f(pⱼ) Eⱼ for f(p) = e^{ip·a}
        let a = random_momentum(&mut ctx.rng, d, 1.0, false);
        let fp = s.function_of_momentum(|p| C64::from_polar(1.0, p.dot(&a)));
        let j = ctx.rng.random_range(0..s.len());
        let e = s.projection(j);
        let value = C64::from_polar(1.0, s.momentum(j).dot(&a));
        calculus.add(op_norm(&(&e * &fp - &e * value)).max(op_norm(&(&fp * &e - &e * value))));
    }
    Ok([left_right, adjoint, composition, vacuum, calculus]
        .iter()
        .map(|w| w.report().with_param("max_dim", max_dim))
        .collect())
}

fn negative_control(ctx: &mut Ctx) -> Result<Vec<CheckReport>> {
    let trials = ctx.cfg.lemma_trials;
    let mut separated = 0;
    let mut smallest = f64::INFINITY;
    for trial in 0..trials {
        let d = BATTERY_DIMS[trial % BATTERY_DIMS.len()];
        // one spectral point makes both warps a single phase, whatever Q is
        let mut params = random_params(ctx, d, false);
        params.points = params.points.max(2);
        let s = random_spectral(&mut ctx.rng, params)?;
        let q = random_non_skew(&mut ctx.rng, d, 2.0);
        let f = random_operator(&mut ctx.rng, s.dim());
        let r = op_norm(&(warp_left_general(&s, &q, &f)? - warp_right_general(&s, &q, &f)?));
        smallest = smallest.min(r);
        if r > CONTROL_THRESHOLD {
            separated += 1;
        }
    }
    let fraction = separated as f64 / trials.max(1) as f64;
    Ok(vec![CheckReport::new(
        "warp.left_right.non_skew_control",
        anchors::LEFT_RIGHT,
        1.0 - fraction,
        1.0 - CONTROL_FRACTION,
    )
    .with_pass(fraction >= CONTROL_FRACTION)
    .with_param("trials", trials)
    .with_param("separated", separated)
    .with_param("threshold", CONTROL_THRESHOLD)
    .with_param("smallest_residual", smallest)])
}

fn commutation(ctx: &mut Ctx) -> Result<Vec<CheckReport>> {
    let mut total = CommutationReport {
        hypothesis_residual: 0.0,
        conclusion_residual: 0.0,
        tol: ctx.cfg.tolerances.exact,
        pairs_scanned: 0,
    };
    let n = ctx.cfg.split_instances;
    for i in 0..n {
        let d = 2 + i % 2;
        let dim_a = ctx.rng.random_range(2..=4);
        let mut pa = SpectralParams::new(dim_a, d);
        pa.physical = true;
        let a = random_spectral(&mut ctx.rng, pa)?;
        let split = if d >= 3 {
            mirrored_tensor_split(&a)?.1
        } else {
            let mut pb = SpectralParams::new(ctx.rng.random_range(2..=4), d);
            pb.physical = true;
            TensorSplit::new(&a, &random_spectral(&mut ctx.rng, pb)?)?
        };
        let f = split.left(&random_operator(&mut ctx.rng, split.dim_a));
        let g = split.right(&random_operator(&mut ctx.rng, split.dim_b));
        let q = random_skew(&mut ctx.rng, d, 2.0);
        let r = check_commutation(&split.model, &q, &f, &g)?;
        total.hypothesis_residual = total.hypothesis_residual.max(r.hypothesis_residual);
        total.conclusion_residual = total.conclusion_residual.max(r.conclusion_residual);
        total.pairs_scanned += r.pairs_scanned;
    }
    Ok(total
        .to_reports("warp.commutation", anchors::COMMUTATION)
        .into_iter()
        .map(|r| r.with_param("instances", n))
        .collect())
}

fn covariance(ctx: &mut Ctx) -> Result<Vec<CheckReport>> {
    let exact = ctx.cfg.tolerances.exact;
    let n = ctx.cfg.covariance_instances;
    let mut rot = Worst::new("warp.covariance.rotation_d3", anchors::COVARIANCE, exact);
    let rotation = LorentzTransform::rotation(3, 1, 2, FRAC_PI_2)?;
    for _ in 0..n {
        let orbits = ctx.rng.random_range(1..=2);
        let mult = ctx.rng.random_range(1..=2);
        let rep = rotation_closed(&mut ctx.rng, &rotation, 4, orbits, mult, true)?;
        let q = random_skew(&mut ctx.rng, 3, 2.0);
        let f = random_operator(&mut ctx.rng, rep.base.dim());
        let lam = PoincareElement::new(rotation.clone(), random_momentum(&mut ctx.rng, 3, 2.0, false))?;
        rot.add(check_covariance(&rep, &q, &f, &lam)?.residual);
    }
    let mut boost = Worst::new("warp.covariance.boost_d2", anchors::COVARIANCE, exact);
    for _ in 0..n {
        let mut p = SpectralParams::new(ctx.rng.random_range(2..=10), 2);
        p.physical = true;
        let b = LorentzTransform::boost(2, 1, ctx.rng.random_range(-1.5..1.5))?;
        let rep = boost_pair(&mut ctx.rng, p, &b)?;
        let q = random_skew(&mut ctx.rng, 2, 2.0);
        let f = random_operator(&mut ctx.rng, rep.base.dim());
        let lam = PoincareElement::new(b, random_momentum(&mut ctx.rng, 2, 2.0, false))?;
        boost.add(check_covariance(&rep, &q, &f, &lam)?.residual);
    }
    Ok(vec![rot.report(), boost.report()])
}

/// κ = 0 reproduces every undeformed object.
fn undeformed(ctx: &mut Ctx) -> Result<Vec<CheckReport>> {
    let unit = ctx.cfg.tolerances.unit;
    let mut reports = Vec::new();

    let mut models = Worst::new("regression.kappa0.warp", anchors::UNDEFORMED, unit);
    for trial in 0..20 {
        let d = BATTERY_DIMS[trial % BATTERY_DIMS.len()];
        let mut p = SpectralParams::new(ctx.rng.random_range(2..=40), d);
        p.physical = true;
        let s = random_spectral(&mut ctx.rng, p)?;
        let f = random_operator(&mut ctx.rng, s.dim());
        models.add(op_norm(&(warp(&s, &SkewWarpMatrix::standard(0.0, d)?, &f)? - &f)));
        let w = Wedge::new(PoincareElement::new(
            super::random_lorentz(&mut ctx.rng, d, 1, 1.0),
            random_momentum(&mut ctx.rng, d, 1.0, false),
        )?);
        models.add(op_norm(&(deform_for_wedge(&w, &f, &s, 0.0)? - &f)));
    }
    reports.push(models.report());

    let fock = TruncatedFockSpace::lattice(2, 1.0, 1, 1.0, 2)?;
    let s = fock.spectral();
    let zero = SkewWarpMatrix::standard(0.0, 2)?;
    let mut fields = Worst::new("regression.kappa0.fock", anchors::UNDEFORMED, unit);
    for mode in 0..fock.n_modes() {
        let a = fock.creation(mode)?;
        fields.add(op_norm(&(warp(s, &zero, &a)? - &a)));
        fields.add(op_norm(&(fock.gl_deformed_creation(mode, &zero)? - &a)));
        for w in [Wedge::standard(2), Wedge::standard(2).causal_complement()] {
            fields.add(op_norm(&(deform_for_wedge(&w, &a, s, 0.0)? - &a)));
        }
    }
    reports.push(fields.report());

    let mut states = Worst::new("regression.kappa0.scattering", anchors::UNDEFORMED, unit);
    let n = fock.n_modes();
    for i in 0..n {
        for k in 0..n {
            let (pi, pk) = (fock.modes()[i].four_momentum(), fock.modes()[k].four_momentum());
            let dv = fock.modes()[k].velocity().components()[1] - fock.modes()[i].velocity().components()[1];
            if dv != 0.0 {
                let direction = if dv > 0.0 { Direction::In } else { Direction::Out };
                let (v1, v2) = (fock.one_particle(i)?, fock.one_particle(k)?);
                let deformed = deformed_two_particle(&fock, &v1, &v2, &zero, direction)?;
                states.add((deformed - symmetric_product(&fock, &v1, &v2)?).norm());
                states.add((sharp_phase(&pi, &pk, 0.0, direction)?.phase - C64::new(1.0, 0.0)).norm());
            }
            states.add((s_kernel_ratio(&pi, &pk, &pi, &pk, 0.0)? - C64::new(1.0, 0.0)).norm());
        }
    }
    reports.push(states.report());
    Ok(reports)
}
