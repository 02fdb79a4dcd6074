//! Germ conditions on a mirrored tensor split.

use warpconv::geometry::{sample_standard_wedge, LorentzTransform, PoincareElement};
use warpconv::linalg::{OperatorMatrix, C64};
use warpconv::models::{mirrored_tensor_split, random_spectral, SpectralParams};
use warpconv::report::CheckReport;
use warpconv::wedge_algebra::validate_germ;

use crate::{Ctx, Result};

const ELEMENTS: usize = 10;

fn matrix_units(n: usize) -> Vec<OperatorMatrix> {
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut e = OperatorMatrix::zeros(n, n);
            e[(i, j)] = C64::new(1.0, 0.0);
            out.push(e);
        }
    }
    out
}

pub(crate) fn run(ctx: &mut Ctx) -> Result<()> {
    ctx.timed(|ctx| {
        let degree = ctx.cfg.degree.min(2);
        let mut params = SpectralParams::new(3, 3);
        params.physical = true;
        let base = random_spectral(&mut ctx.rng, params)?;
        let (rep, split) = mirrored_tensor_split(&base)?;
        let half = LorentzTransform::half_turn(3)?;
        let mut preserving = Vec::with_capacity(ELEMENTS);
        let mut reflecting = Vec::with_capacity(ELEMENTS);
        for _ in 0..ELEMENTS {
            preserving.push(PoincareElement::translation(sample_standard_wedge(&mut ctx.rng, 3, 2.0)));
            let a = sample_standard_wedge(&mut ctx.rng, 3, 2.0);
            reflecting.push(PoincareElement::new(half.clone(), half.apply(&a))?);
        }

        // B(H_A) ⊗ 1 satisfies both conditions
        let germ: Vec<OperatorMatrix> = matrix_units(split.dim_a).iter().map(|e| split.left(e)).collect();
        let report = validate_germ(&germ, &rep, &preserving, &reflecting, degree)?;
        let mut reports = report.to_reports();

        // the full matrix algebra is invariant but not in its own reflected commutant
        let full = validate_germ(&matrix_units(rep.base.dim()), &rep, &preserving[..1], &reflecting[..1], 1)?;
        reports.push(
            CheckReport::new("germ.commutant.full_algebra_control", warpconv::report::anchors::GERM, full.commutant_residual, 0.5)
                .with_pass(full.commutant_residual > 0.5)
                .with_param("dim", rep.base.dim())
                .with_note("negative control: passes when the commutant residual exceeds the tolerance"),
        );
        Ok(reports
            .into_iter()
            .map(|r| r.with_param("dim", rep.base.dim()).with_param("degree", degree))
            .collect())
    })
}
