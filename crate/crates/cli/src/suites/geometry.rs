//! Minkowski geometry: skewness of `Q_κ`, the three wedge facts, causal
//! complements.

use warpconv::geometry::{
    check_fact_iii, sample_standard_wedge, sample_wedge_stabilizer, warp_matrix, LorentzTransform, MinkowskiVector,
    PoincareElement, Wedge,
};
use warpconv::models::random_momentum;
use warpconv::report::{anchors, CheckReport};

use super::{max_entry, random_lorentz};
use crate::{kappa_id, Ctx, Result};

const DIMS: [usize; 3] = [2, 3, 4];

/// Battery size for the Lorentz samples.
const LORENTZ_SAMPLES: usize = 200;

pub(crate) fn run(ctx: &mut Ctx) -> Result<()> {
    let exact = ctx.cfg.tolerances.exact;
    ctx.timed(|ctx| {
        let mut worst: f64 = 0.0;
        for &d in &DIMS {
            for _ in 0..LORENTZ_SAMPLES {
                let l = random_lorentz(&mut ctx.rng, d, 2, 1.0);
                let x = random_momentum(&mut ctx.rng, d, 2.0, false);
                let y = random_momentum(&mut ctx.rng, d, 2.0, false);
                let scale = (max_entry(&l) * max_entry(&l)).max(1.0);
                worst = worst.max((l.apply(&x).dot(&l.apply(&y)) - x.dot(&y)).abs() / scale);
            }
        }
        Ok(vec![CheckReport::new("geometry.inner_product", anchors::LORENTZ, worst, exact)
            .with_param("samples", DIMS.len() * LORENTZ_SAMPLES)])
    })?;
    ctx.timed(|ctx| {
        // membership through the null normals agrees with λ⁻¹x ∈ W₀ away
        // from the boundary
        let mut disagreements = 0usize;
        let mut samples = 0usize;
        for &d in &DIMS {
            for _ in 0..LORENTZ_SAMPLES {
                let lam = PoincareElement::new(
                    random_lorentz(&mut ctx.rng, d, 1, 1.0),
                    random_momentum(&mut ctx.rng, d, 2.0, false),
                )?;
                let w = Wedge::new(lam);
                let x = random_momentum(&mut ctx.rng, d, 4.0, false);
                let margin = w.normals().iter().map(|h| h.value(&x).abs()).fold(f64::INFINITY, f64::min);
                if margin < 1e-9 {
                    continue;
                }
                samples += 1;
                if w.contains(&x) != w.contains_by_normals(&x, 0.0) {
                    disagreements += 1;
                }
            }
        }
        Ok(vec![CheckReport::new("geometry.wedge_normals", anchors::WEDGE, disagreements as f64, 0.5)
            .with_param("samples", samples)])
    })?;
    ctx.timed(|ctx| complement(ctx))?;
    for kappa in ctx.cfg.kappa.clone() {
        ctx.timed(|ctx| facts(ctx, kappa))?;
    }
    Ok(())
}

fn complement(ctx: &mut Ctx) -> Result<Vec<CheckReport>> {
    let exact = ctx.cfg.tolerances.exact;
    let mut worst_mirror: f64 = 0.0;
    let mut worst_spacelike: f64 = 0.0;
    let mut count = 0;
    for &d in &DIMS {
        let w0 = Wedge::standard(d);
        let w0c = w0.causal_complement();
        for _ in 0..LORENTZ_SAMPLES {
            // W₀′ = −W₀
            let x = sample_standard_wedge(&mut ctx.rng, d, 3.0);
            let inside = w0c.contains(&-&x);
            let outside = x.components()[1] > 1e-9 && w0c.contains(&x);
            worst_mirror = worst_mirror.max(if inside && !outside { 0.0 } else { 1.0 });
            // points of λW₀ and (λW₀)′ are spacelike or lightlike separated
            let lam = PoincareElement::new(
                random_lorentz(&mut ctx.rng, d, 1, 0.8),
                random_momentum(&mut ctx.rng, d, 2.0, false),
            )?;
            let w = Wedge::new(lam.clone());
            let wc = w.causal_complement();
            let rep_c = wc.representative().clone();
            let a = lam.apply(&sample_standard_wedge(&mut ctx.rng, d, 3.0));
            let b = if d == 2 {
                // left class: λW₀′
                lam.apply(&-&sample_standard_wedge(&mut ctx.rng, d, 3.0))
            } else {
                rep_c.apply(&sample_standard_wedge(&mut ctx.rng, d, 3.0))
            };
            debug_assert!(w.contains_by_normals(&a, 1e-9) && wc.contains_by_normals(&b, 1e-9));
            let sep = &a - &b;
            let scale = sep.components().iter().fold(1.0_f64, |m, c| m.max(c.abs()));
            worst_spacelike = worst_spacelike.max(sep.square().max(0.0) / (scale * scale));
            count += 1;
        }
    }
    Ok(vec![
        CheckReport::new("geometry.complement.mirror", anchors::COMPLEMENT, worst_mirror, 0.5)
            .with_param("samples", count),
        CheckReport::new("geometry.complement.spacelike", anchors::COMPLEMENT, worst_spacelike, exact)
            .with_param("samples", count),
    ])
}

fn facts(ctx: &mut Ctx, kappa: f64) -> Result<Vec<CheckReport>> {
    let exact = ctx.cfg.tolerances.exact;
    let mut reports = Vec::new();

    let mut skew: f64 = 0.0;
    for &d in &DIMS {
        skew = skew.max(warp_matrix(kappa, d)?.skew_residual());
    }
    reports.push(CheckReport::new(kappa_id("geometry.skew", kappa), anchors::SKEW, skew, exact).with_param("kappa", kappa));

    // fact (i): boosts in the (0,1)-plane, rotations fixing it, translations
    // into W₀
    let mut fact_i: f64 = 0.0;
    let mut samples = 0;
    for &d in &DIMS {
        let q = warp_matrix(kappa, d)?;
        let w0 = Wedge::standard(d);
        let boost = LorentzTransform::boost(d, 1, 0.7)?;
        fact_i = fact_i.max(q.transform(&boost)?.max_abs_diff(&q));
        for _ in 0..LORENTZ_SAMPLES {
            let lam = sample_wedge_stabilizer(&mut ctx.rng, d);
            if !w0.image(&lam).is_subset_of(&w0) {
                return Err(warpconv::Error::Precondition("sampled stabilizer leaves W₀".into()).into());
            }
            fact_i = fact_i.max(q.transform(&lam.lorentz)?.max_abs_diff(&q));
            samples += 1;
        }
    }
    reports.push(
        CheckReport::new(kappa_id("geometry.fact_i", kappa), anchors::FACT_I, fact_i, exact)
            .with_param("kappa", kappa)
            .with_param("samples", samples),
    );

    // corollary: λ₂ = λ₁·(Lorentz part of a stabilizer) gives the same wedge
    // and the same warp matrix
    let mut corollary: f64 = 0.0;
    for &d in &DIMS {
        let q = warp_matrix(kappa, d)?;
        for _ in 0..LORENTZ_SAMPLES {
            let lam1 = PoincareElement::new(
                random_lorentz(&mut ctx.rng, d, 2, 0.5),
                random_momentum(&mut ctx.rng, d, 2.0, false),
            )?;
            let stab = PoincareElement::from_lorentz(sample_wedge_stabilizer(&mut ctx.rng, d).lorentz);
            let lam2 = lam1.compose(&stab);
            if !Wedge::new(lam1.clone()).approx_eq(&Wedge::new(lam2.clone())) {
                return Err(warpconv::Error::Precondition("representatives give different wedges".into()).into());
            }
            let q1 = q.transform(&lam1.lorentz)?;
            let q2 = q.transform(&lam2.lorentz)?;
            corollary = corollary.max(q1.max_abs_diff(&q2));
        }
    }
    reports.push(
        CheckReport::new(kappa_id("geometry.fact_i_corollary", kappa), anchors::FACT_I_COROLLARY, corollary, exact)
            .with_param("kappa", kappa)
            .with_param("samples", DIMS.len() * LORENTZ_SAMPLES),
    );

    // fact (ii): λ′ = R_π·λ with λW₀ ⊂ W₀ maps W₀ into W₀′
    let mut fact_ii: f64 = 0.0;
    for d in [3, 4] {
        let q = warp_matrix(kappa, d)?;
        let w0c = Wedge::standard(d).causal_complement();
        let half = PoincareElement::from_lorentz(LorentzTransform::half_turn(d)?);
        for i in 0..LORENTZ_SAMPLES {
            let refl = if i == 0 {
                half.clone()
            } else {
                half.compose(&sample_wedge_stabilizer(&mut ctx.rng, d))
            };
            if !Wedge::standard(d).image(&refl).is_subset_of(&w0c) {
                return Err(warpconv::Error::Precondition("reflection does not map W₀ into W₀′".into()).into());
            }
            fact_ii = fact_ii.max(q.transform(&refl.lorentz)?.max_abs_diff(&-&q));
        }
    }
    reports.push(
        CheckReport::new(kappa_id("geometry.fact_ii", kappa), anchors::FACT_II, fact_ii, exact)
            .with_param("kappa", kappa)
            .with_param("samples", 2 * LORENTZ_SAMPLES),
    );

    // fact (iii)
    let n = ctx.cfg.geometry_samples;
    if kappa > 0.0 {
        for &d in &DIMS {
            let r = check_fact_iii(kappa, d, n, &mut ctx.rng)?;
            let mut inc = CheckReport::new(
                kappa_id(&format!("geometry.fact_iii.inclusion.d{d}"), kappa),
                anchors::FACT_III,
                r.inclusion_violations as f64,
                0.5,
            )
            .with_param("kappa", kappa)
            .with_param("d", d)
            .with_param("samples", r.inclusion_samples);
            if let Some(note) = &r.note {
                inc = inc.with_note(note.clone());
            }
            reports.push(inc);
            if d == 2 {
                reports.push(
                    CheckReport::new(
                        kappa_id("geometry.fact_iii.surjectivity.d2", kappa),
                        anchors::FACT_III,
                        r.surjectivity_violations as f64,
                        0.5,
                    )
                    .with_param("kappa", kappa)
                    .with_param("samples", r.surjectivity_samples)
                    .with_param("max_preimage_error", r.surjectivity_residual),
                );
            }
        }
    } else {
        // Q₀V₊ = {0}: inclusion is trivial, equality fails by design
        let zero = MinkowskiVector::zeros(2);
        let inside = Wedge::standard(2).contains(&warp_matrix(0.0, 2)?.apply(&zero));
        reports.push(
            CheckReport::new(kappa_id("geometry.fact_iii.inclusion.d2", kappa), anchors::FACT_III, 0.0, 0.5)
                .with_pass(inside)
                .with_param("kappa", kappa)
                .with_note("kappa = 0: Q vanishes and maps V+ to the origin"),
        );
    }
    Ok(reports)
}
