//! Truncated bosonic Fock space over a finite set of one-particle momenta.
//!
//! Basis states are occupation-number vectors with at most `N_max`
//! particles in total, ordered by particle number and then
//! lexicographically by their sorted mode lists; the vacuum is index 0.
//! Ladder operators annihilate any state that would exceed the cutoff, which
//! keeps `a(p) = a†(p)*` exact.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{MinkowskiVector, SkewWarpMatrix};
use crate::linalg::{cis, OperatorMatrix, StateVector, C64};
use crate::spectral::{SpectralDecomposition, MERGE_TOL};

/// Models larger than this are refused unless a limit is given explicitly.
pub const DEFAULT_MAX_DIM: usize = 5000;

/// On-shell momentum `(ω_𝐩, 𝐩)` with `ω_𝐩 = √(𝐩² + m²)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MassShellPoint {
    spatial: Vec<f64>,
    mass: f64,
    energy: f64,
}

impl MassShellPoint {
    pub fn new(spatial: Vec<f64>, mass: f64) -> Result<Self> {
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::InvalidParameter(format!("mass must be positive, got {mass}")));
        }
        if spatial.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter("non-finite momentum".into()));
        }
        let energy = (spatial.iter().map(|x| x * x).sum::<f64>() + mass * mass).sqrt();
        Ok(Self { spatial, mass, energy })
    }

    pub fn spatial(&self) -> &[f64] {
        &self.spatial
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    /// Spacetime dimension `d` (one more than the number of spatial components).
    pub fn dim(&self) -> usize {
        self.spatial.len() + 1
    }

    pub fn four_momentum(&self) -> MinkowskiVector {
        let mut c = Vec::with_capacity(self.dim());
        c.push(self.energy);
        c.extend_from_slice(&self.spatial);
        MinkowskiVector::from_slice(&c)
    }

    /// `(1, 𝐩/ω_𝐩)`.
    pub fn velocity(&self) -> MinkowskiVector {
        let mut c = Vec::with_capacity(self.dim());
        c.push(1.0);
        c.extend(self.spatial.iter().map(|x| x / self.energy));
        MinkowskiVector::from_slice(&c)
    }
}

/// Occupation numbers, one per mode.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FockBasisState {
    occupations: Vec<u16>,
}

impl FockBasisState {
    pub fn occupations(&self) -> &[u16] {
        &self.occupations
    }

    pub fn total(&self) -> usize {
        self.occupations.iter().map(|&n| n as usize).sum()
    }

    /// Sorted list of occupied modes, with repetition.
    pub fn modes(&self) -> Vec<usize> {
        self.occupations
            .iter()
            .enumerate()
            .flat_map(|(m, &n)| std::iter::repeat_n(m, n as usize))
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct TruncatedFockSpace {
    modes: Vec<MassShellPoint>,
    cutoff: usize,
    states: Vec<FockBasisState>,
    index: HashMap<Vec<u16>, usize>,
    momenta: Vec<MinkowskiVector>,
    spectral: SpectralDecomposition,
}

/// `C(n + k, k)`, saturating.
fn multiset_count(modes: usize, cutoff: usize) -> u128 {
    let mut c: u128 = 1;
    for i in 1..=cutoff as u128 {
        c = c.saturating_mul(modes as u128 + i) / i;
    }
    c
}

impl TruncatedFockSpace {
    pub fn build(modes: Vec<MassShellPoint>, cutoff: usize) -> Result<Self> {
        Self::build_with_limit(modes, cutoff, DEFAULT_MAX_DIM)
    }

    pub fn build_with_limit(modes: Vec<MassShellPoint>, cutoff: usize, max_dim: usize) -> Result<Self> {
        let first = modes
            .first()
            .ok_or_else(|| Error::InvalidParameter("no one-particle modes".into()))?;
        let (d, mass) = (first.dim(), first.mass());
        for (i, m) in modes.iter().enumerate() {
            if m.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: m.dim(),
                });
            }
            if m.mass() != mass {
                return Err(Error::InvalidParameter("all modes must share one mass".into()));
            }
            let dup = modes[..i]
                .iter()
                .any(|o| o.spatial.iter().zip(&m.spatial).all(|(a, b)| (a - b).abs() < MERGE_TOL));
            if dup {
                return Err(Error::DuplicateMode(i));
            }
        }
        if cutoff > u16::MAX as usize {
            return Err(Error::InvalidParameter(format!("cutoff {cutoff} too large")));
        }
        let count = multiset_count(modes.len(), cutoff);
        if count > max_dim as u128 {
            return Err(Error::DimensionGuard {
                dim: usize::try_from(count).unwrap_or(usize::MAX),
                limit: max_dim,
            });
        }
        let n_modes = modes.len();
        let mut states = Vec::with_capacity(count as usize);
        for n in 0..=cutoff {
            let mut occ = vec![0u16; n_modes];
            push_multisets(&mut occ, 0, n, &mut states);
        }
        debug_assert_eq!(states.len() as u128, count);
        let index = states
            .iter()
            .enumerate()
            .map(|(i, s)| (s.occupations.clone(), i))
            .collect();
        let shell: Vec<MinkowskiVector> = modes.iter().map(MassShellPoint::four_momentum).collect();
        let momenta: Vec<MinkowskiVector> = states
            .iter()
            .map(|s| {
                s.occupations
                    .iter()
                    .zip(&shell)
                    .fold(MinkowskiVector::zeros(d), |acc, (&n, p)| &acc + &(p * n as f64))
            })
            .collect();
        let spectral = SpectralDecomposition::diagonal(&momenta)?.with_vacuum()?;
        Ok(Self {
            modes,
            cutoff,
            states,
            index,
            momenta,
            spectral,
        })
    }

    /// Modes on the lattice `{−Kδ, …, Kδ}^{d−1}`.
    pub fn lattice(d: usize, mass: f64, k: usize, delta: f64, cutoff: usize) -> Result<Self> {
        Self::lattice_with_limit(d, mass, k, delta, cutoff, DEFAULT_MAX_DIM)
    }

    pub fn lattice_with_limit(
        d: usize,
        mass: f64,
        k: usize,
        delta: f64,
        cutoff: usize,
        max_dim: usize,
    ) -> Result<Self> {
        Self::build_with_limit(lattice_modes(d, mass, k, delta)?, cutoff, max_dim)
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn spacetime_dim(&self) -> usize {
        self.modes[0].dim()
    }

    pub fn mass(&self) -> f64 {
        self.modes[0].mass()
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn modes(&self) -> &[MassShellPoint] {
        &self.modes
    }

    pub fn n_modes(&self) -> usize {
        self.modes.len()
    }

    pub fn states(&self) -> &[FockBasisState] {
        &self.states
    }

    pub fn state_index(&self, occupations: &[u16]) -> Option<usize> {
        self.index.get(occupations).copied()
    }

    /// Basis index of `a†(m₁)…a†(mₖ)Ω` (up to normalisation).
    pub fn index_of_modes(&self, modes: &[usize]) -> Option<usize> {
        let mut occ = vec![0u16; self.n_modes()];
        for &m in modes {
            *occ.get_mut(m)? += 1;
        }
        self.state_index(&occ)
    }

    /// Index of the mode with the given spatial momentum.
    pub fn mode_index(&self, spatial: &[f64]) -> Option<usize> {
        self.modes.iter().position(|m| {
            m.spatial.len() == spatial.len() && m.spatial.iter().zip(spatial).all(|(a, b)| (a - b).abs() < MERGE_TOL)
        })
    }

    pub fn vacuum_index(&self) -> usize {
        0
    }

    pub fn vacuum(&self) -> StateVector {
        self.basis_vector(0)
    }

    pub fn basis_vector(&self, i: usize) -> StateVector {
        let mut v = StateVector::zeros(self.dim());
        v[i] = C64::new(1.0, 0.0);
        v
    }

    /// Total momentum of basis state `i`.
    pub fn total_momentum(&self, i: usize) -> &MinkowskiVector {
        &self.momenta[i]
    }

    pub fn spectral(&self) -> &SpectralDecomposition {
        &self.spectral
    }

    /// Measure weight `w_p = (2ω_p)^{−1/2}`.
    pub fn measure_weight(&self, mode: usize) -> f64 {
        (2.0 * self.modes[mode].energy()).sqrt().recip()
    }

    fn check_mode(&self, mode: usize) -> Result<()> {
        if mode >= self.n_modes() {
            return Err(Error::InvalidParameter(format!(
                "mode {mode} out of range (have {})",
                self.n_modes()
            )));
        }
        Ok(())
    }

    /// `a†(p)` for mode `p`, truncated at the cutoff.
    pub fn creation(&self, mode: usize) -> Result<OperatorMatrix> {
        self.check_mode(mode)?;
        let n = self.dim();
        let mut a = OperatorMatrix::zeros(n, n);
        for (j, s) in self.states.iter().enumerate() {
            if s.total() >= self.cutoff {
                continue;
            }
            let mut occ = s.occupations.clone();
            occ[mode] += 1;
            let i = self.index[&occ];
            a[(i, j)] = C64::new((occ[mode] as f64).sqrt(), 0.0);
        }
        Ok(a)
    }

    pub fn annihilation(&self, mode: usize) -> Result<OperatorMatrix> {
        Ok(self.creation(mode)?.adjoint())
    }

    pub fn number_operator(&self) -> OperatorMatrix {
        self.diagonal(|_, s| C64::new(s.total() as f64, 0.0))
    }

    /// Projection onto the `n`-particle sector.
    pub fn sector_projection(&self, n: usize) -> OperatorMatrix {
        self.diagonal(|_, s| C64::new(if s.total() == n { 1.0 } else { 0.0 }, 0.0))
    }

    /// Component `μ` of the total momentum operator `P`.
    pub fn momentum_operator(&self, mu: usize) -> OperatorMatrix {
        self.diagonal(|i, _| C64::new(self.momenta[i].components()[mu], 0.0))
    }

    fn diagonal<F: Fn(usize, &FockBasisState) -> C64>(&self, f: F) -> OperatorMatrix {
        let n = self.dim();
        let mut m = OperatorMatrix::zeros(n, n);
        for (i, s) in self.states.iter().enumerate() {
            m[(i, i)] = f(i, s);
        }
        m
    }

    fn check_amplitudes(&self, ftilde: &[C64]) -> Result<()> {
        if ftilde.len() != self.n_modes() {
            return Err(Error::DimensionMismatch {
                expected: self.n_modes(),
                found: ftilde.len(),
            });
        }
        Ok(())
    }

    /// `a†(f) = Σ_p w_p f̃(p) a†(p)`.
    pub fn smeared_creation(&self, ftilde: &[C64]) -> Result<OperatorMatrix> {
        self.check_amplitudes(ftilde)?;
        let n = self.dim();
        let mut out = OperatorMatrix::zeros(n, n);
        for (m, f) in ftilde.iter().enumerate() {
            if *f != C64::new(0.0, 0.0) {
                out += self.creation(m)? * (*f * self.measure_weight(m));
            }
        }
        Ok(out)
    }

    /// `φ(f) = Σ_p w_p (f̃(p) a†(p) + conj f̃(p) a(p))`.
    pub fn free_field(&self, ftilde: &[C64]) -> Result<OperatorMatrix> {
        let c = self.smeared_creation(ftilde)?;
        Ok(&c + c.adjoint())
    }

    /// `a†(p)e^{ipQP}` evaluated on the basis: column `b` is scaled by
    /// `e^{ip·QP_b}` before `a†(p)` acts.
    pub fn gl_deformed_creation(&self, mode: usize, q: &SkewWarpMatrix) -> Result<OperatorMatrix> {
        let mut a = self.creation(mode)?;
        if q.dim() != self.spacetime_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.spacetime_dim(),
                found: q.dim(),
            });
        }
        let p = self.modes[mode].four_momentum();
        for b in 0..self.dim() {
            let phase = cis(q.pair(&p, &self.momenta[b]));
            for i in 0..self.dim() {
                a[(i, b)] *= phase;
            }
        }
        Ok(a)
    }

    /// `|p⟩ = a†(p)Ω`.
    pub fn one_particle(&self, mode: usize) -> Result<StateVector> {
        self.check_mode(mode)?;
        let mut occ = vec![0u16; self.n_modes()];
        occ[mode] = 1;
        let i = self
            .state_index(&occ)
            .ok_or_else(|| Error::Precondition("cutoff excludes one-particle states".into()))?;
        Ok(self.basis_vector(i))
    }

    /// `Σ_p ψ(p)|p⟩`.
    pub fn one_particle_vector(&self, amplitudes: &[C64]) -> Result<StateVector> {
        self.check_amplitudes(amplitudes)?;
        let mut v = StateVector::zeros(self.dim());
        for (m, a) in amplitudes.iter().enumerate() {
            v += self.one_particle(m)? * *a;
        }
        Ok(v)
    }

    /// Inverse of [`one_particle_vector`](Self::one_particle_vector); errors
    /// when `v` has weight outside the one-particle sector.
    pub fn one_particle_amplitudes(&self, v: &StateVector) -> Result<Vec<C64>> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            });
        }
        let mut amps = vec![C64::new(0.0, 0.0); self.n_modes()];
        let mut outside = 0.0;
        for (i, s) in self.states.iter().enumerate() {
            if s.total() == 1 {
                amps[s.modes()[0]] = v[i];
            } else {
                outside += v[i].norm_sqr();
            }
        }
        let outside = outside.sqrt();
        if outside > 1e-12 * v.norm().max(1.0) {
            return Err(Error::NotOneParticle(outside));
        }
        Ok(amps)
    }

    /// `a†(ψ₁)a†(ψ₂)Ω` for one-particle amplitude vectors.
    pub fn symmetric_product(&self, psi1: &[C64], psi2: &[C64]) -> Result<StateVector> {
        self.check_amplitudes(psi1)?;
        self.check_amplitudes(psi2)?;
        if self.cutoff < 2 {
            return Err(Error::Precondition("cutoff excludes two-particle states".into()));
        }
        let mut v = StateVector::zeros(self.dim());
        for (i, a) in psi1.iter().enumerate() {
            for (j, b) in psi2.iter().enumerate() {
                let c = a * b;
                if c != C64::new(0.0, 0.0) {
                    v += self.sharp_pair(i, j)? * c;
                }
            }
        }
        Ok(v)
    }

    /// `a†(p_i)a†(p_j)Ω`, which has norm `√2` when `i = j`.
    pub fn sharp_pair(&self, i: usize, j: usize) -> Result<StateVector> {
        self.check_mode(i)?;
        self.check_mode(j)?;
        let k = self
            .index_of_modes(&[i, j])
            .ok_or_else(|| Error::Precondition("cutoff excludes two-particle states".into()))?;
        let coeff = if i == j { 2f64.sqrt() } else { 1.0 };
        Ok(self.basis_vector(k) * C64::new(coeff, 0.0))
    }

    /// Largest violation of the spectrum shape: one-particle momenta on the
    /// mass shell, multiparticle momenta above `√(𝐩² + (2m)²)`.
    pub fn spectrum_shape_residual(&self) -> f64 {
        let m = self.mass();
        let mut worst: f64 = 0.0;
        for (s, p) in self.states.iter().zip(&self.momenta) {
            let sp = p.spatial_norm();
            match s.total() {
                0 => worst = worst.max(p.components().iter().fold(0.0_f64, |a, x| a.max(x.abs()))),
                1 => worst = worst.max((p.time() - (sp * sp + m * m).sqrt()).abs()),
                _ => worst = worst.max((sp * sp + 4.0 * m * m).sqrt() - p.time()),
            }
        }
        worst.max(0.0)
    }
}

/// Appends all occupation vectors obtained by adding `left` particles in
/// modes `≥ from`, in lexicographic order of the sorted mode lists.
fn push_multisets(occ: &mut [u16], from: usize, left: usize, out: &mut Vec<FockBasisState>) {
    if left == 0 {
        out.push(FockBasisState {
            occupations: occ.to_vec(),
        });
        return;
    }
    for m in from..occ.len() {
        occ[m] += 1;
        push_multisets(occ, m, left - 1, out);
        occ[m] -= 1;
    }
}

/// One-particle modes with spatial momenta on `{−Kδ, …, Kδ}^{d−1}`, in
/// lexicographic order.
pub fn lattice_modes(d: usize, mass: f64, k: usize, delta: f64) -> Result<Vec<MassShellPoint>> {
    if d < 2 {
        return Err(Error::SpacetimeDimension(d));
    }
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::InvalidParameter(format!("lattice spacing must be positive, got {delta}")));
    }
    let side = 2 * k + 1;
    let total = side.checked_pow((d - 1) as u32).ok_or_else(|| Error::InvalidParameter("lattice too large".into()))?;
    (0..total)
        .map(|mut idx| {
            let mut spatial = vec![0.0; d - 1];
            for s in spatial.iter_mut().rev() {
                *s = ((idx % side) as f64 - k as f64) * delta;
                idx /= side;
            }
            MassShellPoint::new(spatial, mass)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::warp_matrix;
    use crate::linalg::{commutator, identity, op_norm};
    use crate::spectral::{adjoint_action, translation_unitary, warp};

    fn reference() -> TruncatedFockSpace {
        TruncatedFockSpace::lattice(2, 1.0, 1, 1.0, 2).unwrap()
    }

    #[test]
    fn reference_model_dimension_and_momenta() {
        let f = reference();
        assert_eq!(f.dim(), 10);
        let s2 = 2f64.sqrt();
        let one: Vec<Vec<f64>> = (1..4).map(|i| f.total_momentum(i).components().to_vec()).collect();
        assert_eq!(one, vec![vec![s2, -1.0], vec![1.0, 0.0], vec![s2, 1.0]]);
        assert_eq!(f.states()[4].modes(), vec![0, 0]);
        assert_eq!(f.states()[9].modes(), vec![2, 2]);
        assert!(f.spectral().is_physical());
        assert!(f.spectrum_shape_residual() < 1e-14);
    }

    #[test]
    fn vacuum_is_the_unique_zero_momentum_state() {
        let f = TruncatedFockSpace::lattice(3, 0.5, 1, 0.7, 2).unwrap();
        let zero = MinkowskiVector::zeros(3);
        let zeros: Vec<usize> = (0..f.dim())
            .filter(|&i| f.total_momentum(i).max_abs_diff(&zero) < 1e-9)
            .collect();
        assert_eq!(zeros, vec![0]);
        let u = translation_unitary(f.spectral(), &MinkowskiVector::from_slice(&[0.3, 1.0, -2.0])).unwrap();
        assert!((u * f.vacuum() - f.vacuum()).norm() < 1e-15);
        for mu in 0..3 {
            assert!((f.momentum_operator(mu) * f.vacuum()).norm() == 0.0);
        }
    }

    #[test]
    fn dimension_counts() {
        for (k, nmax, expected) in [(1, 0, 1), (1, 1, 4), (2, 2, 21), (2, 3, 56)] {
            assert_eq!(TruncatedFockSpace::lattice(2, 1.0, k, 1.0, nmax).unwrap().dim(), expected);
        }
        let f = TruncatedFockSpace::lattice(2, 1.0, 1, 1.0, 0).unwrap();
        assert_eq!(f.spectral().len(), 1);
        assert!(matches!(
            TruncatedFockSpace::lattice_with_limit(2, 1.0, 5, 1.0, 4, 100),
            Err(Error::DimensionGuard { .. })
        ));
    }

    #[test]
    fn duplicate_modes_rejected() {
        let m = MassShellPoint::new(vec![0.5], 1.0).unwrap();
        assert!(matches!(
            TruncatedFockSpace::build(vec![m.clone(), m], 2),
            Err(Error::DuplicateMode(1))
        ));
        assert!(MassShellPoint::new(vec![0.0], 0.0).is_err());
    }

    #[test]
    fn ladder_matrix_elements() {
        let f = reference();
        let a = f.creation(1).unwrap();
        assert_eq!(a * f.vacuum(), f.one_particle(1).unwrap());
        let a = f.creation(1).unwrap();
        let twice = &a * &a * f.vacuum();
        let target = f.index_of_modes(&[1, 1]).unwrap();
        assert!((twice[target] - C64::new(2f64.sqrt(), 0.0)).norm() < 1e-15);
        // at the cutoff
        let top = f.basis_vector(f.index_of_modes(&[0, 2]).unwrap());
        assert_eq!((&a * top).norm(), 0.0);
        assert_eq!(f.annihilation(1).unwrap(), a.adjoint());
    }

    #[test]
    fn truncated_ccr_holds_below_the_top_sector() {
        let f = TruncatedFockSpace::lattice(2, 1.0, 1, 1.0, 3).unwrap();
        let below = identity(f.dim()) - f.sector_projection(3);
        for i in 0..3 {
            for j in 0..3 {
                let c = commutator(&f.annihilation(i).unwrap(), &f.creation(j).unwrap());
                let expected = if i == j { identity(f.dim()) } else { OperatorMatrix::zeros(f.dim(), f.dim()) };
                assert!(op_norm(&((c - expected) * &below)) < 1e-13);
            }
        }
    }

    #[test]
    fn free_field_properties() {
        let f = reference();
        let single = [C64::new(0.0, 0.0), C64::new(0.7, -0.2), C64::new(0.0, 0.0)];
        let phi = f.free_field(&single).unwrap();
        let v = &phi * f.vacuum();
        assert!(f.one_particle_amplitudes(&v).is_ok());
        assert!((v - f.one_particle(1).unwrap() * (single[1] * f.measure_weight(1))).norm() < 1e-15);
        let amps = [C64::new(0.3, 0.1), C64::new(-0.5, 0.0), C64::new(0.2, 0.9)];
        let phi = f.free_field(&amps).unwrap();
        assert_eq!(phi, phi.adjoint());
        let two_point = f.vacuum().dotc(&(&phi * &phi * f.vacuum()));
        let expected: f64 = (0..3).map(|m| f.measure_weight(m).powi(2) * amps[m].norm_sqr()).sum();
        assert!((two_point - C64::new(expected, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn translations_act_by_phases_on_creation_operators() {
        let f = TruncatedFockSpace::lattice(3, 1.0, 1, 0.5, 2).unwrap();
        let x = MinkowskiVector::from_slice(&[0.4, -1.0, 2.5]);
        for m in 0..f.n_modes() {
            let a = f.creation(m).unwrap();
            let p = f.modes()[m].four_momentum();
            let lhs = adjoint_action(f.spectral(), &x, &a).unwrap();
            assert!(op_norm(&(lhs - a * cis(p.dot(&x)))) < 1e-12);
        }
    }

    #[test]
    fn gl_twist_examples() {
        let f = reference();
        let q = warp_matrix(1.0, 2).unwrap();
        // a†(p) with p = (√2, 1) on |q⟩, q = (√2, −1)
        let twisted = f.gl_deformed_creation(2, &q).unwrap();
        let out = &twisted * f.one_particle(0).unwrap();
        let target = f.index_of_modes(&[0, 2]).unwrap();
        assert!((out[target] - cis(-2.0 * 2f64.sqrt())).norm() < 1e-14);
        assert_eq!(&twisted * f.vacuum(), f.creation(2).unwrap() * f.vacuum());
        assert_eq!(f.gl_deformed_creation(2, &warp_matrix(0.0, 2).unwrap()).unwrap(), f.creation(2).unwrap());
        // coincides with the warped convolution
        for m in 0..3 {
            let w = warp(f.spectral(), &q, &f.creation(m).unwrap()).unwrap();
            assert!(op_norm(&(w - f.gl_deformed_creation(m, &q).unwrap())) < 1e-12);
        }
    }

    #[test]
    fn symmetric_product_of_sharp_states() {
        let f = reference();
        let e = |m: usize| {
            let mut v = vec![C64::new(0.0, 0.0); 3];
            v[m] = C64::new(1.0, 0.0);
            v
        };
        let v = f.symmetric_product(&e(0), &e(2)).unwrap();
        assert_eq!(v, f.symmetric_product(&e(2), &e(0)).unwrap());
        assert!((v.norm() - 1.0).abs() < 1e-15);
        assert!((f.symmetric_product(&e(1), &e(1)).unwrap().norm() - 2f64.sqrt()).abs() < 1e-15);
    }
}
