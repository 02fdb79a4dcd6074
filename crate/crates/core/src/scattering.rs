//! Two-particle scattering states of the deformed theory on a truncated
//! Fock space.
//!
//! Time limits do not exist on a finite-dimensional space, so scattering
//! states are defined by the exact formula
//!
//! ```text
//! |ψ₁ ⊗_κ ψ₂⟩ = Σⱼ E⁽²⁾ⱼ (U(Qpⱼ)ψ₁ ⊗ ψ₂)     (then symmetrised)
//! ```
//!
//! and the approach to them is demonstrated with Cesàro time averages of
//! Hepp packets.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::TruncatedFockSpace;
use crate::geometry::{LorentzTransform, MinkowskiVector, SkewWarpMatrix};
use crate::linalg::{cis, OperatorMatrix, StateVector, C64};
use crate::spectral::{translation_unitary, warp, SpectralDecomposition, MERGE_TOL};

/// Asymptotic time direction of a scattering state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    In,
    Out,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::In => "in",
            Direction::Out => "out",
        })
    }
}

/// `Γ(g) = {(1, 𝐩/ω_𝐩) : p ∈ supp g̃}`.
#[derive(Clone, Debug, PartialEq)]
pub struct VelocitySupport {
    velocities: Vec<MinkowskiVector>,
}

impl VelocitySupport {
    pub fn velocities(&self) -> &[MinkowskiVector] {
        &self.velocities
    }
}

/// Velocity support of a one-particle amplitude vector.
pub fn velocity_support(fock: &TruncatedFockSpace, amplitudes: &[C64]) -> Result<VelocitySupport> {
    if amplitudes.len() != fock.n_modes() {
        return Err(Error::DimensionMismatch {
            expected: fock.n_modes(),
            found: amplitudes.len(),
        });
    }
    let velocities: Vec<MinkowskiVector> = amplitudes
        .iter()
        .zip(fock.modes())
        .filter(|(a, _)| a.norm() > 0.0)
        .map(|(_, m)| m.velocity())
        .collect();
    if velocities.is_empty() {
        return Err(Error::EmptySupport);
    }
    Ok(VelocitySupport { velocities })
}

/// `g₁ ≻ g₂`: every difference `v₁ − v₂` lies in the interior of `W₀`.
/// Time components are exactly 1, so this is `(v₁ − v₂)₁ > 0`.
pub fn precedes(g1: &VelocitySupport, g2: &VelocitySupport) -> bool {
    g1.velocities.iter().all(|v1| {
        g2.velocities.iter().all(|v2| {
            let d = v1 - v2;
            d.components()[1] > d.time().abs()
        })
    })
}

/// A Hepp wave packet: amplitudes `f̃` on the one-particle lattice, the time
/// `t`, and the half-width of the energy band around the shell admitted by
/// the filter (default: half the gap to the two-particle threshold).
#[derive(Clone, Debug, PartialEq)]
pub struct HeppPacketSpec {
    pub amplitudes: Vec<C64>,
    pub time: f64,
    pub energy_window: Option<f64>,
}

impl HeppPacketSpec {
    pub fn new(amplitudes: Vec<C64>, time: f64) -> Self {
        Self {
            amplitudes,
            time,
            energy_window: None,
        }
    }

    /// Packet sharply concentrated on one mode.
    pub fn sharp(n_modes: usize, mode: usize) -> Self {
        let mut amplitudes = vec![C64::new(0.0, 0.0); n_modes];
        amplitudes[mode] = C64::new(1.0, 0.0);
        Self::new(amplitudes, 0.0)
    }

    pub fn at_time(mut self, t: f64) -> Self {
        self.time = t;
        self
    }

    pub fn with_window(mut self, window: f64) -> Self {
        self.energy_window = Some(window);
        self
    }
}

/// Frequency decomposition `A(f_t) = Σ_ν e^{iνt} C_ν` of a smeared
/// operator, where `ν = k₀ − ω_𝐤` is the off-shell energy of the transfer.
#[derive(Clone, Debug)]
pub struct PacketComponents {
    pub components: Vec<(f64, OperatorMatrix)>,
    /// Nonzero matrix elements whose spatial transfer is not a lattice mode.
    pub off_lattice: usize,
    /// Nonzero matrix elements on the lattice but outside the energy band.
    pub off_band: usize,
}

impl PacketComponents {
    /// `Σ_ν e^{iνt} C_ν`.
    pub fn at(&self, t: f64) -> OperatorMatrix {
        let n = self.components.first().map_or(0, |(_, c)| c.nrows());
        self.components
            .iter()
            .fold(OperatorMatrix::zeros(n, n), |acc, (nu, c)| acc + c * cis(nu * t))
    }

    /// The `ν = 0` (on-shell) part.
    pub fn on_shell(&self, n: usize) -> OperatorMatrix {
        self.components
            .iter()
            .find(|(nu, _)| nu.abs() < MERGE_TOL)
            .map_or_else(|| OperatorMatrix::zeros(n, n), |(_, c)| c.clone())
    }
}

/// The smeared operator `∫dx f_t(x) α_x(A)`, evaluated as a filter on the
/// spectral matrix elements (the `(2π)^{d/2}` factor is dropped).
///
/// The element between spectral points `P_a` and `P_b` is multiplied by
/// `f̃(k)e^{i(k₀ − ω_𝐤)t}` with `k = P_a − P_b`, where `f̃(k)` is the
/// amplitude of the mode with momentum `𝐤` if `|k₀ − ω_𝐤|` is inside the
/// energy band and 0 otherwise.
pub fn hepp_packet_components(
    fock: &TruncatedFockSpace,
    a: &OperatorMatrix,
    spec: &HeppPacketSpec,
) -> Result<PacketComponents> {
    if spec.amplitudes.len() != fock.n_modes() {
        return Err(Error::DimensionMismatch {
            expected: fock.n_modes(),
            found: spec.amplitudes.len(),
        });
    }
    let s = fock.spectral();
    if a.nrows() != s.dim() || a.ncols() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.dim(),
            found: a.nrows(),
        });
    }
    let m = fock.mass();
    let windows: Vec<f64> = fock
        .modes()
        .iter()
        .map(|mode| {
            spec.energy_window.unwrap_or_else(|| {
                let k2: f64 = mode.spatial().iter().map(|x| x * x).sum();
                0.5 * ((k2 + 4.0 * m * m).sqrt() - mode.energy())
            })
        })
        .collect();
    let a_s = s.to_spectral(a);
    let n = s.dim();
    let mut components: Vec<(f64, OperatorMatrix)> = Vec::new();
    let mut off_lattice = 0;
    let mut off_band = 0;
    for b in 0..n {
        let pb = s.momentum(s.labels()[b]);
        for r in 0..n {
            let entry = a_s[(r, b)];
            if entry.norm() == 0.0 {
                continue;
            }
            let k = s.momentum(s.labels()[r]) - pb;
            let Some(mode) = fock.mode_index(k.spatial()) else {
                off_lattice += 1;
                continue;
            };
            let nu = k.time() - fock.modes()[mode].energy();
            if nu.abs() > windows[mode] {
                off_band += 1;
                continue;
            }
            let amp = spec.amplitudes[mode];
            if amp.norm() == 0.0 {
                continue;
            }
            let slot = match components.iter().position(|(f, _)| (f - nu).abs() < MERGE_TOL) {
                Some(i) => i,
                None => {
                    components.push((nu, OperatorMatrix::zeros(n, n)));
                    components.len() - 1
                }
            };
            components[slot].1[(r, b)] = entry * amp;
        }
    }
    for (_, c) in components.iter_mut() {
        *c = s.from_spectral(c);
    }
    components.sort_by(|x, y| x.0.total_cmp(&y.0));
    Ok(PacketComponents {
        components,
        off_lattice,
        off_band,
    })
}

/// `A(f_t)` at the packet's time.
pub fn hepp_packet_operator(fock: &TruncatedFockSpace, a: &OperatorMatrix, spec: &HeppPacketSpec) -> Result<OperatorMatrix> {
    Ok(hepp_packet_components(fock, a, spec)?.at(spec.time))
}

/// One-particle tensor model `H₁ ⊗ H₁` with momenta `pᵢ + pⱼ`.
fn two_particle_model(fock: &TruncatedFockSpace) -> Result<(SpectralDecomposition, SpectralDecomposition)> {
    let shell: Vec<MinkowskiVector> = fock.modes().iter().map(|m| m.four_momentum()).collect();
    let one = SpectralDecomposition::diagonal(&shell)?;
    let mut pairs = Vec::with_capacity(shell.len() * shell.len());
    for p in &shell {
        for q in &shell {
            pairs.push(p + q);
        }
    }
    Ok((one, SpectralDecomposition::diagonal(&pairs)?))
}

fn check_configuration(fock: &TruncatedFockSpace, psi1: &[C64], psi2: &[C64], direction: Direction) -> Result<()> {
    let g1 = velocity_support(fock, psi1)?;
    let g2 = velocity_support(fock, psi2)?;
    match direction {
        Direction::In if !precedes(&g2, &g1) => Err(Error::PrecedenceViolation(
            "incoming states need the second packet to precede the first",
        )),
        Direction::Out if !precedes(&g1, &g2) => Err(Error::PrecedenceViolation(
            "outgoing states need the first packet to precede the second",
        )),
        _ => Ok(()),
    }
}

/// `Σⱼ E⁽²⁾ⱼ (U(Qpⱼ)ψ₁ ⊗ ψ₂)`, symmetrised into the Fock space.
///
/// `psi1` belongs to the operator localised in `W₀`, `psi2` to the one in
/// `W₀′`. The precedence configuration required by `direction` is enforced.
pub fn deformed_two_particle(
    fock: &TruncatedFockSpace,
    psi1: &StateVector,
    psi2: &StateVector,
    q: &SkewWarpMatrix,
    direction: Direction,
) -> Result<StateVector> {
    let a1 = fock.one_particle_amplitudes(psi1)?;
    let a2 = fock.one_particle_amplitudes(psi2)?;
    check_configuration(fock, &a1, &a2, direction)?;
    let n = fock.n_modes();
    let (one, two) = two_particle_model(fock)?;
    let v1 = StateVector::from_vec(a1);
    let v2 = StateVector::from_vec(a2);
    let mut tensor = StateVector::zeros(n * n);
    for j in 0..two.len() {
        let shifted = translation_unitary(&one, &q.apply(two.momentum(j)))? * &v1;
        tensor += two.apply_projection(j, &shifted.kronecker(&v2));
    }
    let mut out = StateVector::zeros(fock.dim());
    for i in 0..n {
        for k in 0..n {
            let c = tensor[i * n + k];
            if c.norm() > 0.0 {
                out += fock.sharp_pair(i, k)? * c;
            }
        }
    }
    Ok(out)
}

/// Fock vector `a†(ψ₁)a†(ψ₂)Ω` for one-particle vectors.
pub fn symmetric_product(fock: &TruncatedFockSpace, psi1: &StateVector, psi2: &StateVector) -> Result<StateVector> {
    fock.symmetric_product(&fock.one_particle_amplitudes(psi1)?, &fock.one_particle_amplitudes(psi2)?)
}

/// Phase of a sharp-momentum two-particle state.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TwoParticlePhase {
    pub p: MinkowskiVector,
    pub q: MinkowskiVector,
    pub kappa: f64,
    pub direction: Direction,
    /// `pQ_κq`.
    pub pqq: f64,
    pub phase: C64,
}

fn check_on_shell(p: &MinkowskiVector, q: &MinkowskiVector) -> Result<()> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: q.dim(),
        });
    }
    let scale = p.time().abs().max(q.time().abs()).max(1.0).powi(2);
    let (mp, mq) = (p.square(), q.square());
    if p.time() <= 0.0 || q.time() <= 0.0 || mp <= 0.0 || (mp - mq).abs() > 1e-12 * scale {
        return Err(Error::OffShell);
    }
    Ok(())
}

/// `pQ_κq = κ(p₀q₁ − p₁q₀)`.
pub fn kappa_pairing(p: &MinkowskiVector, q: &MinkowskiVector, kappa: f64) -> f64 {
    let (pc, qc) = (p.components(), q.components());
    kappa * (pc[0] * qc[1] - pc[1] * qc[0])
}

/// `e^{+i|pQ_κq|}` (in) or `e^{−i|pQ_κq|}` (out).
pub fn sharp_phase(p: &MinkowskiVector, q: &MinkowskiVector, kappa: f64, direction: Direction) -> Result<TwoParticlePhase> {
    check_on_shell(p, q)?;
    if kappa < 0.0 {
        return Err(Error::InvalidParameter(format!("kappa must be nonnegative, got {kappa}")));
    }
    let pqq = kappa_pairing(p, q, kappa);
    let phase = match direction {
        Direction::In => cis(pqq.abs()),
        Direction::Out => cis(-pqq.abs()),
    };
    Ok(TwoParticlePhase {
        p: p.clone(),
        q: q.clone(),
        kappa,
        direction,
        pqq,
        phase,
    })
}

/// Ratio of deformed to undeformed elastic kernels,
/// `e^{i|pQ_κq| + i|p′Q_κq′|}`.
pub fn s_kernel_ratio(
    p: &MinkowskiVector,
    q: &MinkowskiVector,
    p2: &MinkowskiVector,
    q2: &MinkowskiVector,
    kappa: f64,
) -> Result<C64> {
    check_on_shell(p, q)?;
    check_on_shell(p2, q2)?;
    check_on_shell(p, p2)?;
    Ok(cis(kappa_pairing(p, q, kappa).abs() + kappa_pairing(p2, q2, kappa).abs()))
}

/// `||(Λp)Q_κ(Λq)| − |pQ_κq||`; positive values witness that the phase
/// depends on the frame.
pub fn lorentz_breaking_witness(p: &MinkowskiVector, q: &MinkowskiVector, lorentz: &LorentzTransform, kappa: f64) -> Result<f64> {
    check_on_shell(p, q)?;
    if lorentz.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: lorentz.dim(),
        });
    }
    if !lorentz.is_orthochronous_proper() {
        return Err(Error::InvalidParameter("transformation is not proper orthochronous".into()));
    }
    let before = kappa_pairing(p, q, kappa).abs();
    let after = kappa_pairing(&lorentz.apply(p), &lorentz.apply(q), kappa).abs();
    Ok((after - before).abs())
}

/// Result of a witness scan.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessScan {
    pub max_witness: f64,
    /// Rotation angle (d ≥ 3) or rapidity (d = 2) attaining the maximum.
    pub argmax: f64,
    pub samples: usize,
}

/// `d ≥ 3`: rotations in the `(1,2)`-plane over `θ ∈ (0, π/2)`;
/// `d = 2`: boosts with rapidity in `(−3, 3)`.
pub fn witness_scan(p: &MinkowskiVector, q: &MinkowskiVector, kappa: f64, samples: usize) -> Result<WitnessScan> {
    let d = p.dim();
    let mut best = WitnessScan {
        max_witness: 0.0,
        argmax: 0.0,
        samples,
    };
    for i in 1..=samples {
        let s = i as f64 / (samples + 1) as f64;
        let (param, l) = if d >= 3 {
            let theta = s * FRAC_PI_2;
            (theta, LorentzTransform::rotation(d, 1, 2, theta)?)
        } else {
            let eta = -3.0 + 6.0 * s;
            (eta, LorentzTransform::boost(d, 1, eta)?)
        };
        let w = lorentz_breaking_witness(p, q, &l, kappa)?;
        if w > best.max_witness {
            best.max_witness = w;
            best.argmax = param;
        }
    }
    Ok(best)
}

/// One row of the phase table written to CSV.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PhaseRow {
    pub d: usize,
    pub m: f64,
    pub kappa: f64,
    pub p: String,
    pub q: String,
    pub direction: Direction,
    pub phase_re: f64,
    pub phase_im: f64,
    pub witness: f64,
}

/// Sharp phases for every ordered pair of distinct lattice modes in an
/// admissible configuration (`q` faster for in, `p` faster for out), with
/// the maximal frame-dependence witness of the pair.
pub fn phase_table(fock: &TruncatedFockSpace, kappa: f64, scan_samples: usize) -> Result<Vec<PhaseRow>> {
    let mut rows = Vec::new();
    let modes = fock.modes();
    for (i, mi) in modes.iter().enumerate() {
        for (j, mj) in modes.iter().enumerate() {
            if i == j {
                continue;
            }
            let dv = mj.velocity().components()[1] - mi.velocity().components()[1];
            let direction = if dv > 0.0 {
                Direction::In
            } else if dv < 0.0 {
                Direction::Out
            } else {
                continue;
            };
            let (p, q) = (mi.four_momentum(), mj.four_momentum());
            let ph = sharp_phase(&p, &q, kappa, direction)?;
            let witness = witness_scan(&p, &q, kappa, scan_samples)?.max_witness;
            rows.push(PhaseRow {
                d: fock.spacetime_dim(),
                m: fock.mass(),
                kappa,
                p: p.to_string(),
                q: q.to_string(),
                direction,
                phase_re: ph.phase.re,
                phase_im: ph.phase.im,
                witness,
            });
        }
    }
    Ok(rows)
}

/// Smallest `pQ_κq` over all sharp lattice pairs with `q ≻ p` (the sign
/// lemma asserts it is nonnegative), and the number of such pairs.
pub fn sign_lemma_minimum(fock: &TruncatedFockSpace, kappa: f64) -> Result<(f64, usize)> {
    let n = fock.n_modes();
    let mut min = f64::INFINITY;
    let mut count = 0;
    for i in 0..n {
        let gi = velocity_support(fock, &unit_amplitudes(n, i))?;
        for j in 0..n {
            let gj = velocity_support(fock, &unit_amplitudes(n, j))?;
            if precedes(&gj, &gi) {
                let v = kappa_pairing(&fock.modes()[i].four_momentum(), &fock.modes()[j].four_momentum(), kappa);
                min = min.min(v);
                count += 1;
            }
        }
    }
    Ok((min, count))
}

pub(crate) fn unit_amplitudes(n: usize, mode: usize) -> Vec<C64> {
    let mut v = vec![C64::new(0.0, 0.0); n];
    v[mode] = C64::new(1.0, 0.0);
    v
}

/// One line of the Cesàro table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CesaroRow {
    pub horizon: f64,
    pub deviation: f64,
}

/// `(1/T)∫ e^{iΩt}dt` over `[−T, 0]` (in) or `[0, T]` (out); 1 at `T = 0`
/// or `Ω = 0`.
fn average_factor(omega: f64, horizon: f64, direction: Direction) -> C64 {
    let x = omega * horizon;
    if horizon == 0.0 || x.abs() < 1e-300 {
        return C64::new(1.0, 0.0);
    }
    let i = C64::new(0.0, 1.0);
    match direction {
        Direction::In => (C64::new(1.0, 0.0) - cis(-x)) / (i * x),
        Direction::Out => (cis(x) - C64::new(1.0, 0.0)) / (i * x),
    }
}

/// Deviation of the Cesàro-averaged vector `A_{Q_κ}(f_t)A′_{−Q_κ}(f′_t)Ω`
/// from the exact scattering state, for each horizon `T`.
///
/// The average is exact: the vector is a finite sum of frequencies, each
/// averaged in closed form.
#[allow(clippy::too_many_arguments)]
pub fn cesaro_convergence_demo(
    fock: &TruncatedFockSpace,
    a: &OperatorMatrix,
    a_prime: &OperatorMatrix,
    f: &HeppPacketSpec,
    f_prime: &HeppPacketSpec,
    kappa: f64,
    direction: Direction,
    horizons: &[f64],
) -> Result<Vec<CesaroRow>> {
    let d = fock.spacetime_dim();
    let g = velocity_support(fock, &f.amplitudes)?;
    let g_prime = velocity_support(fock, &f_prime.amplitudes)?;
    let admissible = match direction {
        Direction::In => precedes(&g_prime, &g),
        Direction::Out => precedes(&g, &g_prime),
    };
    if !admissible {
        return Err(Error::PrecedenceViolation("packet velocities do not match the direction"));
    }
    let q = SkewWarpMatrix::standard(kappa, d)?;
    let s = fock.spectral();
    let c = hepp_packet_components(fock, &warp(s, &q, a)?, f)?;
    let c_prime = hepp_packet_components(fock, &warp(s, &-&q, a_prime)?, f_prime)?;
    let omega = fock.vacuum();
    let n = fock.dim();
    // exact scattering state from the single-particle vectors A(f)Ω, A′(f′)Ω
    let psi1 = c.at(0.0) * &omega;
    let psi2 = c_prime.at(0.0) * &omega;
    let target = deformed_two_particle(fock, &psi1, &psi2, &q, direction)?;
    let mut terms: Vec<(f64, StateVector)> = Vec::new();
    for (nu2, op2) in &c_prime.components {
        let w = op2 * &omega;
        for (nu1, op1) in &c.components {
            let v = op1 * &w;
            let freq = nu1 + nu2;
            match terms.iter_mut().find(|(f, _)| (f - freq).abs() < MERGE_TOL) {
                Some((_, acc)) => *acc += v,
                None => terms.push((freq, v)),
            }
        }
    }
    Ok(horizons
        .iter()
        .map(|&horizon| {
            let avg = terms
                .iter()
                .fold(StateVector::zeros(n), |acc, (freq, v)| acc + v * average_factor(*freq, horizon, direction));
            CesaroRow {
                horizon,
                deviation: (avg - &target).norm(),
            }
        })
        .collect())
}

/// Reference configuration: `d = 2`, `m = 1`, lattice `{−1, 0, 1}`,
/// `N_max = 2`; `f` sharp on `𝐩 = −1`, `f′` sharp on `𝐩 = +1`,
/// `A = φ(g) + c(a†₀a₊ + h.c.)` (the second term leaves an off-shell remnant
/// that only the time average removes), `A′ = φ(g)`, energy band 2.
pub fn reference_cesaro_demo(kappa: f64, horizons: &[f64]) -> Result<Vec<CesaroRow>> {
    let fock = TruncatedFockSpace::lattice(2, 1.0, 1, 1.0, 2)?;
    let n = fock.n_modes();
    let ones = vec![C64::new(1.0, 0.0); n];
    let phi = fock.free_field(&ones)?;
    let hop = fock.creation(1)? * fock.annihilation(2)?;
    let a = &phi + (&hop + hop.adjoint()) * C64::new(0.5, 0.0);
    let f = HeppPacketSpec::sharp(n, 0).with_window(2.0);
    let f_prime = HeppPacketSpec::sharp(n, 2).with_window(2.0);
    cesaro_convergence_demo(&fock, &a, &phi, &f, &f_prime, kappa, Direction::In, horizons)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::warp_matrix;
    use crate::linalg::op_norm;
    use std::f64::consts::SQRT_2;

    fn v(c: &[f64]) -> MinkowskiVector {
        MinkowskiVector::from_slice(c)
    }

    fn reference() -> TruncatedFockSpace {
        TruncatedFockSpace::lattice(2, 1.0, 1, 1.0, 2).unwrap()
    }

    #[test]
    fn precedence_examples() {
        let f = reference();
        let plus = velocity_support(&f, &unit_amplitudes(3, 2)).unwrap();
        let minus = velocity_support(&f, &unit_amplitudes(3, 0)).unwrap();
        assert!(precedes(&plus, &minus));
        assert!(!precedes(&minus, &plus));
        assert!(!precedes(&plus, &plus));
        let both = [C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0)];
        let both = velocity_support(&f, &both).unwrap();
        assert!(!precedes(&both, &both));
        assert!(matches!(velocity_support(&f, &[C64::new(0.0, 0.0); 3]), Err(Error::EmptySupport)));
        // Δv = (0, 2/√2)
        let dv = &plus.velocities()[0] - &minus.velocities()[0];
        assert!((dv.components()[1] - SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn sharp_phase_reference_kinematics() {
        let p = v(&[SQRT_2, -1.0]);
        let q = v(&[SQRT_2, 1.0]);
        let ph = sharp_phase(&p, &q, 1.0, Direction::In).unwrap();
        assert!((ph.pqq - 2.0 * SQRT_2).abs() < 1e-15);
        assert!((ph.phase - cis(2.0 * SQRT_2)).norm() < 1e-15);
        let out = sharp_phase(&p, &q, 1.0, Direction::Out).unwrap();
        assert_eq!(out.phase, ph.phase.conj());
        assert_eq!(sharp_phase(&p, &q, 0.0, Direction::In).unwrap().phase, C64::new(1.0, 0.0));
        assert_eq!(sharp_phase(&p, &p, 1.0, Direction::In).unwrap().phase, C64::new(1.0, 0.0));
        assert!(matches!(sharp_phase(&v(&[1.0, 2.0]), &q, 1.0, Direction::In), Err(Error::OffShell)));
    }

    #[test]
    fn deformed_two_particle_reference() {
        let f = reference();
        let q = warp_matrix(1.0, 2).unwrap();
        let p_state = f.one_particle(0).unwrap();
        let q_state = f.one_particle(2).unwrap();
        let state = deformed_two_particle(&f, &p_state, &q_state, &q, Direction::In).unwrap();
        let plain = symmetric_product(&f, &p_state, &q_state).unwrap();
        assert!((state - plain * cis(2.0 * SQRT_2)).norm() < 1e-14);
        // mismatched direction is refused
        assert!(matches!(
            deformed_two_particle(&f, &p_state, &q_state, &q, Direction::Out),
            Err(Error::PrecedenceViolation(_))
        ));
        // out: the faster particle carries the W₀ operator
        let out = deformed_two_particle(&f, &q_state, &p_state, &q, Direction::Out).unwrap();
        let plain = symmetric_product(&f, &q_state, &p_state).unwrap();
        assert!((out - plain * cis(-2.0 * SQRT_2)).norm() < 1e-14);
    }

    #[test]
    fn kernel_ratio() {
        let p = v(&[SQRT_2, -1.0]);
        let q = v(&[SQRT_2, 1.0]);
        let r = s_kernel_ratio(&p, &q, &p, &q, 1.0).unwrap();
        assert!((r - cis(4.0 * SQRT_2)).norm() < 1e-15);
        assert_eq!(s_kernel_ratio(&p, &q, &q, &p, 0.0).unwrap(), C64::new(1.0, 0.0));
    }

    #[test]
    fn witness_examples() {
        let s2 = SQRT_2;
        let p = v(&[s2, 1.0, 0.0]);
        let q = v(&[s2, 0.0, 1.0]);
        let quarter = LorentzTransform::rotation(3, 1, 2, FRAC_PI_2).unwrap();
        assert!(lorentz_breaking_witness(&p, &q, &quarter, 1.0).unwrap() < 1e-14);
        assert_eq!(lorentz_breaking_witness(&p, &q, &LorentzTransform::identity(3), 1.0).unwrap(), 0.0);
        let scan = witness_scan(&p, &q, 1.0, 89).unwrap();
        assert!((scan.max_witness - (2.0 - s2)).abs() < 1e-12);
        assert!((scan.argmax - FRAC_PI_2 / 2.0).abs() < 1e-12);
        let boost = witness_scan(&v(&[s2, -1.0]), &v(&[s2, 1.0]), 1.0, 50).unwrap();
        assert!(boost.max_witness < 1e-12);
    }

    #[test]
    fn hepp_filter_examples() {
        let f = reference();
        let a = f.creation(1).unwrap();
        let spec = HeppPacketSpec::sharp(3, 1);
        let smeared = hepp_packet_operator(&f, &a, &spec).unwrap();
        assert!(op_norm(&(smeared - &a)) < 1e-15);
        let zero = HeppPacketSpec::new(vec![C64::new(0.0, 0.0); 3], 0.7);
        assert_eq!(op_norm(&hepp_packet_operator(&f, &a, &zero).unwrap()), 0.0);
        // on-shell packets leave A(f_t)Ω independent of t
        let phi = f.free_field(&[C64::new(0.4, 0.0), C64::new(1.0, 0.3), C64::new(-0.2, 0.5)]).unwrap();
        let spec = HeppPacketSpec::new(vec![C64::new(1.0, 0.0), C64::new(0.5, 0.0), C64::new(0.0, 1.0)], 0.0);
        let v0 = hepp_packet_operator(&f, &phi, &spec).unwrap() * f.vacuum();
        let vt = hepp_packet_operator(&f, &phi, &spec.clone().at_time(-37.0)).unwrap() * f.vacuum();
        assert!((v0 - vt).norm() < 1e-14);
    }

    #[test]
    fn cesaro_reference_decreases() {
        let rows = reference_cesaro_demo(1.0, &[0.0, 1.0, 10.0, 100.0]).unwrap();
        assert!(rows[0].deviation > 0.0);
        assert!(rows[1].deviation > rows[2].deviation && rows[2].deviation > rows[3].deviation);
        let undeformed = reference_cesaro_demo(0.0, &[1000.0]).unwrap();
        assert!(undeformed[0].deviation < 1e-2);
    }
}
