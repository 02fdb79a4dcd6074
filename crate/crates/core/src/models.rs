//! Random and structured finite models used by the verification batteries.
//!
//! Everything here is driven by a caller-supplied RNG so that runs are
//! reproducible from a seed.

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::geometry::{metric, sample_forward_cone, LorentzTransform, MinkowskiVector, SkewWarpMatrix};
use crate::linalg::{identity, kron, op_norm, OperatorMatrix, StateVector, C64};
use crate::spectral::{ExtendedRep, SpectralDecomposition};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    StandardNormal.sample(rng)
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(gaussian(rng), gaussian(rng)) * std::f64::consts::FRAC_1_SQRT_2
}

/// Haar-random unitary (QR of a complex Ginibre matrix with the phase of
/// `R`'s diagonal absorbed).
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> OperatorMatrix {
    let z = OperatorMatrix::from_fn(n, n, |_, _| complex_gaussian(rng));
    let qr = z.qr();
    let (mut q, r) = qr.unpack();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Complex Gaussian matrix scaled to operator norm 1.
pub fn random_operator<R: Rng + ?Sized>(rng: &mut R, n: usize) -> OperatorMatrix {
    let m = OperatorMatrix::from_fn(n, n, |_, _| complex_gaussian(rng));
    let norm = op_norm(&m);
    m / C64::new(norm, 0.0)
}

pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> OperatorMatrix {
    let m = random_operator(rng, n);
    (&m + m.adjoint()) * C64::new(0.5, 0.0)
}

/// Random Lorentz-skew matrix `Q = gA` with `A` antisymmetric, entries of
/// `A` uniform in `[−scale, scale]`.
pub fn random_skew<R: Rng + ?Sized>(rng: &mut R, d: usize, scale: f64) -> SkewWarpMatrix {
    let mut a = DMatrix::<f64>::zeros(d, d);
    for i in 0..d {
        for j in (i + 1)..d {
            let x = rng.random_range(-scale..scale);
            a[(i, j)] = x;
            a[(j, i)] = -x;
        }
    }
    SkewWarpMatrix::new(metric(d) * a).expect("gA is skew for antisymmetric A")
}

/// Random real matrix whose Lorentz-symmetric part is bounded away from 0,
/// so it is never skew.
pub fn random_non_skew<R: Rng + ?Sized>(rng: &mut R, d: usize, scale: f64) -> DMatrix<f64> {
    let skew = random_skew(rng, d, scale);
    let mut s = DMatrix::<f64>::zeros(d, d);
    for i in 0..d {
        for j in i..d {
            let x = rng.random_range(-scale..scale);
            s[(i, j)] = x;
            s[(j, i)] = x;
        }
    }
    // keep the symmetric part away from zero
    s[(0, 0)] += scale.max(0.5);
    skew.matrix() + metric(d) * s
}

/// Random momentum: in the closed forward cone when `physical`, otherwise
/// uniform in a box.
pub fn random_momentum<R: Rng + ?Sized>(rng: &mut R, d: usize, scale: f64, physical: bool) -> MinkowskiVector {
    if physical {
        sample_forward_cone(rng, d, scale)
    } else {
        MinkowskiVector::from_slice(&(0..d).map(|_| rng.random_range(-scale..scale)).collect::<Vec<_>>())
    }
}

/// Shape of a random spectral model.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralParams {
    pub dim: usize,
    pub d: usize,
    /// Number of distinct spectral points (`1..=dim`).
    pub points: usize,
    /// Forward-cone momenta, including `0` with a vacuum.
    pub physical: bool,
    /// Random unitary eigenbasis instead of the standard basis.
    pub dense_basis: bool,
    pub scale: f64,
}

impl SpectralParams {
    pub fn new(dim: usize, d: usize) -> Self {
        Self {
            dim,
            d,
            points: dim.div_ceil(2).max(1),
            physical: false,
            dense_basis: true,
            scale: 2.0,
        }
    }
}

/// Random multiplicities summing to `dim` over `points` points, each ≥ 1.
fn random_labels<R: Rng + ?Sized>(rng: &mut R, dim: usize, points: usize) -> Vec<usize> {
    let mut labels: Vec<usize> = (0..points).collect();
    labels.extend((points..dim).map(|_| rng.random_range(0..points)));
    labels.sort_unstable();
    labels
}

pub fn random_spectral<R: Rng + ?Sized>(rng: &mut R, params: SpectralParams) -> Result<SpectralDecomposition> {
    let SpectralParams {
        dim,
        d,
        points,
        physical,
        dense_basis,
        scale,
    } = params;
    if points == 0 || points > dim {
        return Err(Error::InvalidParameter(format!("{points} points for dimension {dim}")));
    }
    let mut momenta: Vec<MinkowskiVector> = Vec::with_capacity(points);
    if physical {
        momenta.push(MinkowskiVector::zeros(d));
    }
    while momenta.len() < points {
        let p = random_momentum(rng, d, scale, physical);
        if momenta.iter().all(|q| q.max_abs_diff(&p) > 1e-6) {
            momenta.push(p);
        }
    }
    let labels = if physical && points > 1 {
        // the vacuum point gets multiplicity one
        let mut rest: Vec<usize> = random_labels(rng, dim - 1, points - 1).iter().map(|l| l + 1).collect();
        rest.insert(0, 0);
        rest
    } else {
        random_labels(rng, dim, points)
    };
    let column_momenta: Vec<MinkowskiVector> = labels.iter().map(|&l| momenta[l].clone()).collect();
    let s = if dense_basis {
        SpectralDecomposition::from_basis(random_unitary(rng, dim), &column_momenta)?
    } else {
        SpectralDecomposition::diagonal(&column_momenta)?
    };
    if physical {
        s.with_vacuum()
    } else {
        Ok(s)
    }
}

/// `H = H_A ⊗ H_B` with `U(x) = U_A(x) ⊗ U_B(x)`.
#[derive(Clone, Debug)]
pub struct TensorSplit {
    pub model: SpectralDecomposition,
    pub dim_a: usize,
    pub dim_b: usize,
}

impl TensorSplit {
    pub fn new(a: &SpectralDecomposition, b: &SpectralDecomposition) -> Result<Self> {
        if a.spacetime_dim() != b.spacetime_dim() {
            return Err(Error::DimensionMismatch {
                expected: a.spacetime_dim(),
                found: b.spacetime_dim(),
            });
        }
        let basis_a = a.basis().cloned().unwrap_or_else(|| identity(a.dim()));
        let basis_b = b.basis().cloned().unwrap_or_else(|| identity(b.dim()));
        let mut column_momenta = Vec::with_capacity(a.dim() * b.dim());
        for &la in a.labels() {
            for &lb in b.labels() {
                column_momenta.push(a.momentum(la) + b.momentum(lb));
            }
        }
        let mut model = SpectralDecomposition::from_basis(kron(&basis_a, &basis_b), &column_momenta)?;
        if let (Some(va), Some(vb)) = (a.vacuum(), b.vacuum()) {
            model = model.with_vacuum_vector(va.kronecker(vb))?;
        }
        Ok(Self {
            model,
            dim_a: a.dim(),
            dim_b: b.dim(),
        })
    }

    /// `F ⊗ 1`.
    pub fn left(&self, f: &OperatorMatrix) -> OperatorMatrix {
        kron(f, &identity(self.dim_b))
    }

    /// `1 ⊗ G`.
    pub fn right(&self, g: &OperatorMatrix) -> OperatorMatrix {
        kron(&identity(self.dim_a), g)
    }

    /// The flip `H_A ⊗ H_A → H_A ⊗ H_A`; requires equal factors.
    pub fn swap(&self) -> Result<OperatorMatrix> {
        if self.dim_a != self.dim_b {
            return Err(Error::Precondition("swap needs equal tensor factors".into()));
        }
        let n = self.dim_a;
        let mut s = OperatorMatrix::zeros(n * n, n * n);
        for i in 0..n {
            for j in 0..n {
                s[(j * n + i, i * n + j)] = C64::new(1.0, 0.0);
            }
        }
        Ok(s)
    }
}

/// `A` with every momentum replaced by `Λp`, same eigenbasis.
pub fn transformed_model(a: &SpectralDecomposition, lorentz: &LorentzTransform) -> Result<SpectralDecomposition> {
    let column_momenta: Vec<MinkowskiVector> = a.labels().iter().map(|&l| lorentz.apply(a.momentum(l))).collect();
    let s = match a.basis() {
        Some(b) => SpectralDecomposition::from_basis(b.clone(), &column_momenta)?,
        None => SpectralDecomposition::diagonal(&column_momenta)?,
    };
    match a.vacuum() {
        Some(v) => s.with_vacuum_vector(v.clone()),
        None => Ok(s),
    }
}

/// Tensor-split model whose right factor is the left one rotated by `π` in
/// the `(1,2)`-plane (`d ≥ 3`), so that the flip implements that rotation.
///
/// Returns the model (with the flip registered as the intertwiner for the
/// half-turn) and the split, whose `left` operators play the role of `W₀`
/// observables and `right` operators of `W₀′` observables.
pub fn mirrored_tensor_split(a: &SpectralDecomposition) -> Result<(ExtendedRep, TensorSplit)> {
    let half_turn = LorentzTransform::half_turn(a.spacetime_dim())?;
    let b = transformed_model(a, &half_turn)?;
    let split = TensorSplit::new(a, &b)?;
    let rep = ExtendedRep::new(split.model.clone()).with_action(half_turn, split.swap()?, None)?;
    Ok((rep, split))
}

/// Model whose spectrum is a union of orbits of the finite-order Lorentz
/// transformation `rotation` (which must satisfy `Λᵏ = 1` for
/// `k = order`), with a random eigenbasis and a random-phase permutation
/// intertwiner registered for `Λ`.
pub fn rotation_closed<R: Rng + ?Sized>(
    rng: &mut R,
    rotation: &LorentzTransform,
    order: usize,
    orbits: usize,
    multiplicity: usize,
    physical: bool,
) -> Result<ExtendedRep> {
    let d = rotation.dim();
    let mut power = LorentzTransform::identity(d);
    for _ in 0..order {
        power = rotation.compose(&power);
    }
    if order == 0 || !power.approx_eq(&LorentzTransform::identity(d), 1e-12) {
        return Err(Error::InvalidParameter(format!("transformation does not have order {order}")));
    }
    // columns indexed by (orbit, position, copy)
    let mut column_momenta = Vec::new();
    let mut index = Vec::new();
    let mut seeds = Vec::new();
    if physical {
        column_momenta.push(MinkowskiVector::zeros(d));
        index.push(None);
    }
    while seeds.len() < orbits {
        let p = random_momentum(rng, d, 2.0, physical);
        if p.spatial_norm() < 0.1 {
            continue;
        }
        seeds.push(p);
    }
    for (o, seed) in seeds.iter().enumerate() {
        let mut p = seed.clone();
        for i in 0..order {
            for c in 0..multiplicity {
                column_momenta.push(p.clone());
                index.push(Some((o, i, c)));
            }
            p = rotation.apply(&p);
        }
    }
    let n = column_momenta.len();
    let position = |o: usize, i: usize, c: usize| -> usize {
        usize::from(physical) + (o * order + i) * multiplicity + c
    };
    let mut perm = OperatorMatrix::zeros(n, n);
    for (col, entry) in index.iter().enumerate() {
        let phase = C64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU));
        match entry {
            None => perm[(col, col)] = C64::new(1.0, 0.0),
            Some((o, i, c)) => perm[(position(*o, (i + 1) % order, *c), col)] = phase,
        }
    }
    let basis = random_unitary(rng, n);
    let vacuum = physical.then(|| basis.column(0).into_owned());
    let v = &basis * perm * basis.adjoint();
    let mut s = SpectralDecomposition::from_basis(basis, &column_momenta)?;
    if let Some(omega) = vacuum {
        s = s.with_vacuum_vector(omega)?;
    }
    ExtendedRep::new(s).with_action(rotation.clone(), v, None)
}

/// Two separately built `d`-dimensional models `S` and `ΛS` (momenta
/// `Λpⱼ`, independent random eigenbases) joined by `V = W₂W₁*`.
pub fn boost_pair<R: Rng + ?Sized>(
    rng: &mut R,
    params: SpectralParams,
    boost: &LorentzTransform,
) -> Result<ExtendedRep> {
    let s = random_spectral(rng, SpectralParams { dense_basis: true, ..params })?;
    let w1 = s.basis().cloned().expect("dense basis");
    let w2 = random_unitary(rng, s.dim());
    let column_momenta: Vec<MinkowskiVector> = s.labels().iter().map(|&l| boost.apply(s.momentum(l))).collect();
    let mut target = SpectralDecomposition::from_basis(w2.clone(), &column_momenta)?;
    let v = &w2 * w1.adjoint();
    if let Some(omega) = s.vacuum() {
        target = target.with_vacuum_vector(&v * omega)?;
    }
    ExtendedRep::new(s).with_action(boost.clone(), v, Some(target))
}

/// Random unit vector.
pub fn random_state<R: Rng + ?Sized>(rng: &mut R, n: usize) -> StateVector {
    let v = StateVector::from_fn(n, |_, _| complex_gaussian(rng));
    let norm = v.norm();
    v / C64::new(norm, 0.0)
}
