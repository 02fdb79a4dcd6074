pub(crate) mod axioms;
pub(crate) mod geometry;
pub(crate) mod germ;
pub(crate) mod lemmas;
pub(crate) mod scattering;

use rand::Rng;
use warpconv::geometry::LorentzTransform;

/// Product of `factors` boosts (and, for `d ≥ 3`, rotations) with rapidities
/// in `(−eta, eta)`.
pub(crate) fn random_lorentz<R: Rng + ?Sized>(rng: &mut R, d: usize, factors: usize, eta: f64) -> LorentzTransform {
    let mut l = LorentzTransform::identity(d);
    for _ in 0..factors {
        let axis = rng.random_range(1..d);
        l = LorentzTransform::boost(d, axis, rng.random_range(-eta..eta))
            .expect("valid boost")
            .compose(&l);
        if d >= 3 {
            let i = rng.random_range(1..d - 1);
            let j = rng.random_range(i + 1..d);
            let angle = rng.random_range(0.0..std::f64::consts::TAU);
            l = LorentzTransform::rotation(d, i, j, angle)
                .expect("valid rotation")
                .compose(&l);
        }
    }
    l
}

/// Largest absolute entry.
pub(crate) fn max_entry(l: &LorentzTransform) -> f64 {
    l.matrix().iter().fold(0.0_f64, |a, x| a.max(x.abs()))
}
