//! Brute-force reference computations compared against the library, plus
//! frozen closed-form values.

use std::f64::consts::SQRT_2;

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use warpconv::fock::TruncatedFockSpace;
use warpconv::geometry::{warp_matrix, LorentzTransform, MinkowskiVector, SkewWarpMatrix};
use warpconv::linalg::{identity, op_norm, OperatorMatrix, StateVector, C64};
use warpconv::models::{random_operator, random_skew, random_spectral, SpectralParams};
use warpconv::scattering::{deformed_two_particle, sharp_phase, Direction};
use warpconv::spectral::{warp, warp_left, warp_right, SpectralDecomposition};

fn v(c: &[f64]) -> MinkowskiVector {
    MinkowskiVector::from_slice(c)
}

/// `Eⱼ = Σ_{c: label(c) = j} b_c b_c*`, straight from the basis columns.
fn dense_projections(s: &SpectralDecomposition) -> Vec<OperatorMatrix> {
    let n = s.dim();
    let basis = s.basis().cloned().unwrap_or_else(|| identity(n));
    let mut e = vec![OperatorMatrix::zeros(n, n); s.len()];
    for (c, &l) in s.labels().iter().enumerate() {
        let b = basis.column(c);
        e[l] += b * b.adjoint();
    }
    e
}

/// `U(x) = Σⱼ e^{ipⱼx} Eⱼ`.
fn dense_translation(s: &SpectralDecomposition, e: &[OperatorMatrix], x: &MinkowskiVector) -> OperatorMatrix {
    let n = s.dim();
    let mut u = OperatorMatrix::zeros(n, n);
    for (j, ej) in e.iter().enumerate() {
        u += ej * C64::from_polar(1.0, s.momentum(j).dot(x));
    }
    u
}

fn apply_q(q: &DMatrix<f64>, p: &MinkowskiVector) -> MinkowskiVector {
    let out = q * DMatrix::from_column_slice(p.dim(), 1, p.components());
    MinkowskiVector::from_slice(out.as_slice())
}

/// `Σⱼ α_{Qpⱼ}(F) Eⱼ` and `Σⱼ Eⱼ α_{Qpⱼ}(F)` by dense products.
fn oracle_warps(s: &SpectralDecomposition, q: &DMatrix<f64>, f: &OperatorMatrix) -> (OperatorMatrix, OperatorMatrix) {
    let e = dense_projections(s);
    let n = s.dim();
    let mut left = OperatorMatrix::zeros(n, n);
    let mut right = OperatorMatrix::zeros(n, n);
    for (j, ej) in e.iter().enumerate() {
        let u = dense_translation(s, &e, &apply_q(q, s.momentum(j)));
        let moved = &u * f * u.adjoint();
        left += &moved * ej;
        right += ej * &moved;
    }
    (left, right)
}

#[test]
fn warp_matches_projector_sum_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for trial in 0..40 {
        let d = 2 + trial % 3;
        let dim = 3 + (trial * 7) % 18;
        let mut params = SpectralParams::new(dim, d);
        params.physical = trial % 2 == 0;
        params.points = 1 + (trial * 5) % dim;
        let s = random_spectral(&mut rng, params).unwrap();
        let q = random_skew(&mut rng, d, 1.5);
        let f = random_operator(&mut rng, dim);
        let (left, right) = oracle_warps(&s, q.matrix(), &f);
        let scale = 1e-12 * (dim as f64);
        assert!(op_norm(&(warp_left(&s, &q, &f).unwrap() - &left)) < scale, "trial {trial}");
        assert!(op_norm(&(warp_right(&s, &q, &f).unwrap() - &right)) < scale, "trial {trial}");
        assert!(op_norm(&(warp(&s, &q, &f).unwrap() - &right)) < scale, "trial {trial}");
    }
}

#[test]
fn oracle_sees_non_skew_asymmetry() {
    // the two dense sums differ for a non-skew matrix, so the oracle is not
    // vacuously symmetric
    let s = SpectralDecomposition::diagonal(&[v(&[0.0, 0.0]), v(&[1.0, 1.0]), v(&[2.0, -1.0])]).unwrap();
    let q = DMatrix::from_row_slice(2, 2, &[0.0, 0.0, 0.0, 1.0]);
    let mut f = OperatorMatrix::zeros(3, 3);
    f[(1, 2)] = C64::new(1.0, 0.0);
    let (left, right) = oracle_warps(&s, &q, &f);
    assert!(op_norm(&(left - right)) > 1e-3);
}

#[test]
fn standard_warp_matrix_values() {
    let q = warp_matrix(1.0, 2).unwrap();
    assert_eq!(q.matrix(), &DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]));
    let q4 = warp_matrix(0.5, 4).unwrap();
    for i in 0..4 {
        for j in 0..4 {
            let expected = if (i, j) == (0, 1) || (i, j) == (1, 0) { 0.5 } else { 0.0 };
            assert_eq!(q4.matrix()[(i, j)], expected);
        }
    }
    assert!(warp_matrix(0.0, 3).unwrap().is_zero());
}

#[test]
fn boost_fixes_warp_matrix() {
    let q = warp_matrix(1.0, 2).unwrap();
    let b = LorentzTransform::boost(2, 1, 0.7).unwrap();
    assert!(q.transform(&b).unwrap().max_abs_diff(&q) < 1e-12);
}

#[test]
fn composition_on_three_point_model() {
    let s = SpectralDecomposition::diagonal(&[v(&[0.0, 0.0]), v(&[1.0, 1.0]), v(&[1.0, -1.0])]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let f = random_operator(&mut rng, 3);
    let q1 = warp_matrix(0.4, 2).unwrap();
    let q2 = warp_matrix(0.9, 2).unwrap();
    let lhs = warp(&s, &q2, &warp(&s, &q1, &f).unwrap()).unwrap();
    let rhs = warp(&s, &warp_matrix(1.3, 2).unwrap(), &f).unwrap();
    assert!(op_norm(&(lhs - rhs)) < 1e-12);
    // entry (1,2) picks up e^{i p₁Qp₂} with p₁Qp₂ = κ(1·(−1) − 1·1) = −2κ
    let mut e12 = OperatorMatrix::zeros(3, 3);
    e12[(1, 2)] = C64::new(1.0, 0.0);
    let w = warp(&s, &warp_matrix(1.3, 2).unwrap(), &e12).unwrap();
    assert!((w[(1, 2)] - C64::from_polar(1.0, -2.6)).norm() < 1e-15);
}

/// `Σ_{i,k} ψ₁(i)ψ₂(k) e^{ipᵢQp_k} a†(pᵢ)a†(p_k)Ω` from creation matrices.
fn two_particle_oracle(fock: &TruncatedFockSpace, a1: &[C64], a2: &[C64], q: &SkewWarpMatrix) -> StateVector {
    let omega = fock.vacuum();
    let mut out = StateVector::zeros(fock.dim());
    for (i, c1) in a1.iter().enumerate() {
        for (k, c2) in a2.iter().enumerate() {
            let pi = fock.modes()[i].four_momentum();
            let pk = fock.modes()[k].four_momentum();
            let v = fock.creation(i).unwrap() * (fock.creation(k).unwrap() * &omega);
            out += v * (c1 * c2 * C64::from_polar(1.0, q.pair(&pi, &pk)));
        }
    }
    out
}

#[test]
fn two_particle_matches_oracle_on_packets() {
    let fock = TruncatedFockSpace::lattice(2, 1.0, 2, 1.0, 2).unwrap();
    let n = fock.n_modes();
    let q = warp_matrix(0.8, 2).unwrap();
    // slow packet on 𝐩 ∈ {−2, −1}, fast packet on 𝐩 ∈ {1, 2}
    let mut slow = vec![C64::new(0.0, 0.0); n];
    let mut fast = vec![C64::new(0.0, 0.0); n];
    slow[fock.mode_index(&[-2.0]).unwrap()] = C64::new(0.6, 0.2);
    slow[fock.mode_index(&[-1.0]).unwrap()] = C64::new(-0.3, 0.7);
    fast[fock.mode_index(&[1.0]).unwrap()] = C64::new(0.5, -0.5);
    fast[fock.mode_index(&[2.0]).unwrap()] = C64::new(0.1, 0.9);
    let psi_slow = fock.one_particle_vector(&slow).unwrap();
    let psi_fast = fock.one_particle_vector(&fast).unwrap();
    let got = deformed_two_particle(&fock, &psi_slow, &psi_fast, &q, Direction::In).unwrap();
    assert!((got - two_particle_oracle(&fock, &slow, &fast, &q)).norm() < 1e-12);
    let got = deformed_two_particle(&fock, &psi_fast, &psi_slow, &q, Direction::Out).unwrap();
    assert!((got - two_particle_oracle(&fock, &fast, &slow, &q)).norm() < 1e-12);
    assert!(deformed_two_particle(&fock, &psi_fast, &psi_slow, &q, Direction::In).is_err());
}

#[test]
fn reference_two_particle_phase() {
    let fock = TruncatedFockSpace::lattice(2, 1.0, 1, 1.0, 2).unwrap();
    let ip = fock.mode_index(&[-1.0]).unwrap();
    let iq = fock.mode_index(&[1.0]).unwrap();
    let p = fock.modes()[ip].four_momentum();
    let q = fock.modes()[iq].four_momentum();
    assert!(p.max_abs_diff(&v(&[SQRT_2, -1.0])) < 1e-15);
    assert!(q.max_abs_diff(&v(&[SQRT_2, 1.0])) < 1e-15);
    let expected = C64::new(-0.9513631281258474, 0.30807174236304485);
    let qk = warp_matrix(1.0, 2).unwrap();
    assert!((qk.pair(&p, &q) - 2.0 * SQRT_2).abs() < 1e-15);
    let state = deformed_two_particle(
        &fock,
        &fock.one_particle(ip).unwrap(),
        &fock.one_particle(iq).unwrap(),
        &qk,
        Direction::In,
    )
    .unwrap();
    let pair = fock.sharp_pair(ip, iq).unwrap();
    let computed = pair.dotc(&state);
    assert!((computed - expected).norm() < 1e-10);
    assert!((state - pair * computed).norm() < 1e-14);
    let in_phase = sharp_phase(&p, &q, 1.0, Direction::In).unwrap().phase;
    let out_phase = sharp_phase(&p, &q, 1.0, Direction::Out).unwrap().phase;
    assert!((in_phase - expected).norm() < 1e-14);
    assert!((out_phase - expected.conj()).norm() < 1e-14);
}
