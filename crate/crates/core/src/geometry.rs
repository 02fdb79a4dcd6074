//! Minkowski-space geometry: vectors, Lorentz and Poincaré transformations,
//! wedges and the standard warp matrix `Q_κ`.
//!
//! Coordinates are proper coordinates with index 0 as time and the Lorentz
//! form `xy = x₀y₀ − Σᵢ xᵢyᵢ`. The standard wedge is
//! `W₀ = {x : x₁ ≥ |x₀|}`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance for the exact-geometry identities of this module.
pub const GEOMETRY_TOL: f64 = 1e-12;

/// A point or momentum in `d`-dimensional Minkowski space, `d ≥ 2`.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct MinkowskiVector(Vec<f64>);

impl MinkowskiVector {
    pub fn new(components: Vec<f64>) -> Result<Self> {
        if components.len() < 2 {
            return Err(Error::SpacetimeDimension(components.len()));
        }
        Ok(Self(components))
    }

    /// Panics if fewer than two components are given.
    pub fn from_slice(components: &[f64]) -> Self {
        Self::new(components.to_vec()).expect("a Minkowski vector needs at least 2 components")
    }

    pub fn zeros(d: usize) -> Self {
        Self(vec![0.0; d.max(2)])
    }

    /// Unit vector along coordinate axis `axis`.
    pub fn unit(d: usize, axis: usize) -> Self {
        let mut v = Self::zeros(d);
        v.0[axis] = 1.0;
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn time(&self) -> f64 {
        self.0[0]
    }

    pub fn spatial(&self) -> &[f64] {
        &self.0[1..]
    }

    pub fn components(&self) -> &[f64] {
        &self.0
    }

    pub fn spatial_norm(&self) -> f64 {
        self.spatial().iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Lorentz inner product. Panics on a dimension mismatch; see
    /// [`minkowski_inner`] for the checked version.
    pub fn dot(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim(), "Minkowski dimension mismatch");
        self.0[0] * other.0[0]
            - self.0[1..]
                .iter()
                .zip(&other.0[1..])
                .map(|(a, b)| a * b)
                .sum::<f64>()
    }

    /// `x² = x·x` in the Lorentz form.
    pub fn square(&self) -> f64 {
        self.dot(self)
    }

    /// Membership in the closed forward light cone `p₀ ≥ |𝐩|`, up to `tol`.
    pub fn in_forward_cone(&self, tol: f64) -> bool {
        self.time() >= self.spatial_norm() - tol
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub(crate) fn to_dvector(&self) -> DVector<f64> {
        DVector::from_column_slice(&self.0)
    }

    pub(crate) fn from_dvector(v: DVector<f64>) -> Self {
        Self(v.as_slice().to_vec())
    }
}

impl fmt::Debug for MinkowskiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for MinkowskiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Add for &MinkowskiVector {
    type Output = MinkowskiVector;
    fn add(self, rhs: Self) -> MinkowskiVector {
        assert_eq!(self.dim(), rhs.dim());
        MinkowskiVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &MinkowskiVector {
    type Output = MinkowskiVector;
    fn sub(self, rhs: Self) -> MinkowskiVector {
        assert_eq!(self.dim(), rhs.dim());
        MinkowskiVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &MinkowskiVector {
    type Output = MinkowskiVector;
    fn neg(self) -> MinkowskiVector {
        MinkowskiVector(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<f64> for &MinkowskiVector {
    type Output = MinkowskiVector;
    fn mul(self, s: f64) -> MinkowskiVector {
        MinkowskiVector(self.0.iter().map(|a| a * s).collect())
    }
}

/// `xy = x₀y₀ − Σᵢ xᵢyᵢ`.
pub fn minkowski_inner(x: &MinkowskiVector, y: &MinkowskiVector) -> Result<f64> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            found: y.dim(),
        });
    }
    Ok(x.dot(y))
}

/// The metric `g = diag(1, −1, …, −1)`.
pub fn metric(d: usize) -> DMatrix<f64> {
    DMatrix::from_fn(d, d, |i, j| match (i, j) {
        (0, 0) => 1.0,
        (i, j) if i == j => -1.0,
        _ => 0.0,
    })
}

fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |acc, x| acc.max(x.abs()))
}

/// A Lorentz transformation `Λ` with `ΛᵀgΛ = g`.
#[derive(Clone, Debug, PartialEq)]
pub struct LorentzTransform {
    matrix: DMatrix<f64>,
    orthochronous_proper: bool,
}

impl LorentzTransform {
    pub fn identity(d: usize) -> Self {
        Self {
            matrix: DMatrix::identity(d, d),
            orthochronous_proper: true,
        }
    }

    /// Validates `ΛᵀgΛ = g` (entrywise to 1e-12, scaled by `‖Λ‖²` for large
    /// boosts) and classifies the component.
    pub fn from_matrix(matrix: DMatrix<f64>) -> Result<Self> {
        let d = matrix.nrows();
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: matrix.ncols(),
            });
        }
        if d < 2 {
            return Err(Error::SpacetimeDimension(d));
        }
        let g = metric(d);
        let residual = max_abs(&(matrix.transpose() * &g * &matrix - &g));
        let scale = max_abs(&matrix).powi(2).max(1.0);
        if residual > GEOMETRY_TOL * scale {
            return Err(Error::NotLorentz { residual });
        }
        let det = matrix.determinant();
        let orthochronous_proper = det > 0.0 && matrix[(0, 0)] >= 1.0 - GEOMETRY_TOL;
        Ok(Self {
            matrix,
            orthochronous_proper,
        })
    }

    /// Boost with rapidity `rapidity` along spatial axis `axis` (1-based).
    pub fn boost(d: usize, axis: usize, rapidity: f64) -> Result<Self> {
        if d < 2 {
            return Err(Error::SpacetimeDimension(d));
        }
        if axis == 0 || axis >= d {
            return Err(Error::InvalidParameter(format!("boost axis {axis} in d={d}")));
        }
        let mut m = DMatrix::identity(d, d);
        let (s, c) = (rapidity.sinh(), rapidity.cosh());
        m[(0, 0)] = c;
        m[(axis, axis)] = c;
        m[(0, axis)] = s;
        m[(axis, 0)] = s;
        Ok(Self {
            matrix: m,
            orthochronous_proper: true,
        })
    }

    /// Rotation by `angle` in the spatial `(i, j)` plane, `1 ≤ i, j < d`,
    /// taking `eᵢ` towards `eⱼ`.
    pub fn rotation(d: usize, i: usize, j: usize, angle: f64) -> Result<Self> {
        if d < 3 {
            return Err(Error::InvalidParameter(format!(
                "spatial rotations need d ≥ 3, got {d}"
            )));
        }
        if i == 0 || j == 0 || i >= d || j >= d || i == j {
            return Err(Error::InvalidParameter(format!("rotation plane ({i},{j}) in d={d}")));
        }
        let mut m = DMatrix::identity(d, d);
        // exact entries for the half- and quarter-turns used by the batteries
        let (s, c) = exact_sin_cos(angle);
        m[(i, i)] = c;
        m[(j, j)] = c;
        m[(j, i)] = s;
        m[(i, j)] = -s;
        Ok(Self {
            matrix: m,
            orthochronous_proper: true,
        })
    }

    /// Rotation by π in the `(x₁, x₂)` plane; maps `W₀` onto its causal
    /// complement.
    pub fn half_turn(d: usize) -> Result<Self> {
        Self::rotation(d, 1, 2, std::f64::consts::PI)
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn is_orthochronous_proper(&self) -> bool {
        self.orthochronous_proper
    }

    /// `self · other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            matrix: &self.matrix * &other.matrix,
            orthochronous_proper: self.orthochronous_proper && other.orthochronous_proper,
        }
    }

    /// `Λ⁻¹ = gΛᵀg`.
    pub fn inverse(&self) -> Self {
        let g = metric(self.dim());
        Self {
            matrix: &g * self.matrix.transpose() * &g,
            orthochronous_proper: self.orthochronous_proper,
        }
    }

    pub fn apply(&self, x: &MinkowskiVector) -> MinkowskiVector {
        MinkowskiVector::from_dvector(&self.matrix * x.to_dvector())
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.dim() == other.dim() && max_abs(&(&self.matrix - &other.matrix)) <= tol
    }
}

fn exact_sin_cos(angle: f64) -> (f64, f64) {
    use std::f64::consts::{FRAC_PI_2, PI};
    let turns = [
        (0.0, (0.0, 1.0)),
        (FRAC_PI_2, (1.0, 0.0)),
        (PI, (0.0, -1.0)),
        (-FRAC_PI_2, (-1.0, 0.0)),
        (-PI, (0.0, -1.0)),
        (3.0 * FRAC_PI_2, (-1.0, 0.0)),
    ];
    for (a, sc) in turns {
        if angle == a {
            return sc;
        }
    }
    angle.sin_cos()
}

/// An element `λ = (Λ, x)` of the Poincaré group acting as `y ↦ Λy + x`.
#[derive(Clone, Debug, PartialEq)]
pub struct PoincareElement {
    pub lorentz: LorentzTransform,
    pub translation: MinkowskiVector,
}

impl PoincareElement {
    pub fn new(lorentz: LorentzTransform, translation: MinkowskiVector) -> Result<Self> {
        if lorentz.dim() != translation.dim() {
            return Err(Error::DimensionMismatch {
                expected: lorentz.dim(),
                found: translation.dim(),
            });
        }
        Ok(Self {
            lorentz,
            translation,
        })
    }

    pub fn identity(d: usize) -> Self {
        Self {
            lorentz: LorentzTransform::identity(d),
            translation: MinkowskiVector::zeros(d),
        }
    }

    pub fn translation(x: MinkowskiVector) -> Self {
        Self {
            lorentz: LorentzTransform::identity(x.dim()),
            translation: x,
        }
    }

    pub fn from_lorentz(lorentz: LorentzTransform) -> Self {
        let d = lorentz.dim();
        Self {
            lorentz,
            translation: MinkowskiVector::zeros(d),
        }
    }

    pub fn dim(&self) -> usize {
        self.lorentz.dim()
    }

    /// `(Λ₁, x₁)(Λ₂, x₂) = (Λ₁Λ₂, x₁ + Λ₁x₂)`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            lorentz: self.lorentz.compose(&other.lorentz),
            translation: &self.translation + &self.lorentz.apply(&other.translation),
        }
    }

    /// `(Λ, x)⁻¹ = (Λ⁻¹, −Λ⁻¹x)`.
    pub fn inverse(&self) -> Self {
        let inv = self.lorentz.inverse();
        let t = -&inv.apply(&self.translation);
        Self {
            lorentz: inv,
            translation: t,
        }
    }

    pub fn apply(&self, x: &MinkowskiVector) -> MinkowskiVector {
        &self.lorentz.apply(x) + &self.translation
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.lorentz.approx_eq(&other.lorentz, tol)
            && self.translation.max_abs_diff(&other.translation) <= tol
    }
}

/// A matrix `Q` with `pQq = −qQp` for the Lorentz form, i.e. `(gQ)ᵀ = −gQ`.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewWarpMatrix {
    matrix: DMatrix<f64>,
    kappa: Option<f64>,
}

impl SkewWarpMatrix {
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        let d = matrix.nrows();
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: matrix.ncols(),
            });
        }
        if d < 2 {
            return Err(Error::SpacetimeDimension(d));
        }
        let residual = skew_residual(&matrix);
        if residual > GEOMETRY_TOL * max_abs(&matrix).max(1.0) {
            return Err(Error::NotSkew { residual });
        }
        Ok(Self {
            matrix,
            kappa: None,
        })
    }

    /// The standard matrix `Q_κ` with `Q₀₁ = Q₁₀ = κ`.
    pub fn standard(kappa: f64, d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::SpacetimeDimension(d));
        }
        if kappa.is_nan() || kappa < 0.0 || !kappa.is_finite() {
            return Err(Error::InvalidParameter(format!("kappa must be ≥ 0, got {kappa}")));
        }
        let mut m = DMatrix::zeros(d, d);
        m[(0, 1)] = kappa;
        m[(1, 0)] = kappa;
        Ok(Self {
            matrix: m,
            kappa: Some(kappa),
        })
    }

    pub fn zero(d: usize) -> Self {
        Self {
            matrix: DMatrix::zeros(d, d),
            kappa: Some(0.0),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// `κ` when this is exactly the standard matrix `Q_κ`.
    pub fn kappa(&self) -> Option<f64> {
        self.kappa
    }

    pub fn apply(&self, p: &MinkowskiVector) -> MinkowskiVector {
        MinkowskiVector::from_dvector(&self.matrix * p.to_dvector())
    }

    /// `pQq`, the Lorentz product of `p` with `Qq`.
    pub fn pair(&self, p: &MinkowskiVector, q: &MinkowskiVector) -> f64 {
        p.dot(&self.apply(q))
    }

    /// `ΛQΛ⁻¹`.
    pub fn transform(&self, lorentz: &LorentzTransform) -> Result<Self> {
        if lorentz.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: lorentz.dim(),
            });
        }
        let m = lorentz.matrix() * &self.matrix * lorentz.inverse().matrix();
        let mut out = Self::new(m)?;
        out.kappa = self.kappa.filter(|&k| {
            Self::standard(k, self.dim())
                .map(|s| max_abs(&(s.matrix - &out.matrix)) <= GEOMETRY_TOL)
                .unwrap_or(false)
        });
        Ok(out)
    }

    pub fn skew_residual(&self) -> f64 {
        skew_residual(&self.matrix)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        max_abs(&(&self.matrix - &other.matrix))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().all(|&x| x == 0.0)
    }
}

impl Neg for &SkewWarpMatrix {
    type Output = SkewWarpMatrix;
    fn neg(self) -> SkewWarpMatrix {
        SkewWarpMatrix {
            matrix: -&self.matrix,
            kappa: None,
        }
    }
}

impl Add for &SkewWarpMatrix {
    type Output = SkewWarpMatrix;
    fn add(self, rhs: Self) -> SkewWarpMatrix {
        SkewWarpMatrix {
            matrix: &self.matrix + &rhs.matrix,
            kappa: None,
        }
    }
}

/// Largest entry of `(gQ)ᵀ + gQ`.
pub fn skew_residual(q: &DMatrix<f64>) -> f64 {
    let gq = metric(q.nrows()) * q;
    max_abs(&(gq.transpose() + &gq))
}

/// `transform_Q`: `ΛQΛ⁻¹`.
pub fn transform_q(lorentz: &LorentzTransform, q: &SkewWarpMatrix) -> Result<SkewWarpMatrix> {
    q.transform(lorentz)
}

/// `warp_matrix`: the standard `Q_κ`.
pub fn warp_matrix(kappa: f64, d: usize) -> Result<SkewWarpMatrix> {
    SkewWarpMatrix::standard(kappa, d)
}

/// Closed half-space `{x : offset − normal·x ≥ 0}` with a null normal.
#[derive(Clone, Debug, PartialEq)]
pub struct NullHalfSpace {
    pub normal: MinkowskiVector,
    pub offset: f64,
}

impl NullHalfSpace {
    pub fn value(&self, x: &MinkowskiVector) -> f64 {
        self.offset - self.normal.dot(x)
    }
}

/// A wedge `W = λW₀`.
///
/// In `d = 2` the identity component of the Lorentz group cannot map `W₀`
/// onto its complement, so left wedges `λW₀′` carry `is_left_class`.
#[derive(Clone, Debug)]
pub struct Wedge {
    representative: PoincareElement,
    is_left_class: bool,
    normals: [NullHalfSpace; 2],
}

impl Wedge {
    pub fn standard(d: usize) -> Self {
        Self::new(PoincareElement::identity(d))
    }

    /// `λW₀`.
    pub fn new(representative: PoincareElement) -> Self {
        Self::build(representative, false)
    }

    /// `λW₀′` for `d = 2`.
    pub fn left(representative: PoincareElement) -> Result<Self> {
        if representative.dim() != 2 {
            return Err(Error::InvalidParameter(
                "left-class wedges are only used in d = 2; use a half-turn in d ≥ 3".into(),
            ));
        }
        Ok(Self::build(representative, true))
    }

    /// Wedge of class `is_left_class` with the given representative.
    pub fn with_class(representative: PoincareElement, is_left_class: bool) -> Result<Self> {
        if is_left_class {
            Self::left(representative)
        } else {
            Ok(Self::new(representative))
        }
    }

    fn build(representative: PoincareElement, is_left_class: bool) -> Self {
        let d = representative.dim();
        // W₀ = {x₁ − x₀ ≥ 0} ∩ {x₁ + x₀ ≥ 0} = {−x·n ≥ 0} for n = (1,1,0…), (−1,1,0…)
        let sign = if is_left_class { -1.0 } else { 1.0 };
        let mut n1 = vec![0.0; d];
        n1[0] = sign;
        n1[1] = sign;
        let mut n2 = vec![0.0; d];
        n2[0] = -sign;
        n2[1] = sign;
        let lorentz = &representative.lorentz;
        let a = &representative.translation;
        let make = |n: Vec<f64>| {
            let normal = lorentz.apply(&MinkowskiVector(n));
            let offset = normal.dot(a);
            NullHalfSpace { normal, offset }
        };
        let normals = [make(n1), make(n2)];
        Self {
            representative,
            is_left_class,
            normals,
        }
    }

    pub fn dim(&self) -> usize {
        self.representative.dim()
    }

    pub fn representative(&self) -> &PoincareElement {
        &self.representative
    }

    pub fn is_left_class(&self) -> bool {
        self.is_left_class
    }

    pub fn normals(&self) -> &[NullHalfSpace; 2] {
        &self.normals
    }

    /// `λ⁻¹x ∈ W₀` (or `∈ W₀′` for left wedges), decided exactly.
    pub fn contains(&self, x: &MinkowskiVector) -> bool {
        let y = self.representative.inverse().apply(x);
        let (y0, y1) = if self.is_left_class {
            (-y.time(), -y.components()[1])
        } else {
            (y.time(), y.components()[1])
        };
        y1 >= y0.abs()
    }

    /// Membership through the two null half-spaces, with slack `tol`.
    pub fn contains_by_normals(&self, x: &MinkowskiVector, tol: f64) -> bool {
        self.normals.iter().all(|h| h.value(x) >= -tol)
    }

    /// The wedge `W′` of points spacelike or lightlike to all of `W`.
    pub fn causal_complement(&self) -> Self {
        let d = self.dim();
        if d == 2 {
            return Self::build(self.representative.clone(), !self.is_left_class);
        }
        // W₀′ = R_π W₀, so (λW₀)′ = λR_π W₀
        let half = PoincareElement::from_lorentz(
            LorentzTransform::half_turn(d).expect("d ≥ 3 has a half-turn"),
        );
        Self::new(self.representative.compose(&half))
    }

    /// `λW`.
    pub fn image(&self, lambda: &PoincareElement) -> Self {
        Self::build(lambda.compose(&self.representative), self.is_left_class)
    }

    /// Exact inclusion `self ⊂ other` by cone arithmetic: `self` lies in a
    /// half-space `{c − N·x ≥ 0}` iff `N = αN₁ + βN₂` with `α, β ≥ 0` for the
    /// normals of `self` and the apex of `self` satisfies the inequality.
    pub fn is_subset_of(&self, other: &Self) -> bool {
        if self.dim() != other.dim() {
            return false;
        }
        let apex = &self.representative.translation;
        let [h1, h2] = &self.normals;
        other.normals.iter().all(|h| {
            let scale = h.normal.components().iter().fold(1.0_f64, |a, x| a.max(x.abs()));
            match cone_coefficients(&h.normal, &h1.normal, &h2.normal) {
                Some((alpha, beta)) => {
                    alpha >= -GEOMETRY_TOL
                        && beta >= -GEOMETRY_TOL
                        && h.value(apex) >= -GEOMETRY_TOL * scale * apex_scale(apex)
                }
                None => false,
            }
        })
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.is_subset_of(other) && other.is_subset_of(self)
    }

    /// `ΛQ_κΛ⁻¹` for the representative; `−Q_κ` conjugated likewise for
    /// `d = 2` left wedges.
    pub fn warp_matrix(&self, kappa: f64) -> Result<SkewWarpMatrix> {
        let q = SkewWarpMatrix::standard(kappa, self.dim())?.transform(&self.representative.lorentz)?;
        Ok(if self.is_left_class { -&q } else { q })
    }
}

fn apex_scale(a: &MinkowskiVector) -> f64 {
    a.components().iter().fold(1.0_f64, |m, x| m.max(x.abs()))
}

/// Solves `n = α n₁ + β n₂` in the Euclidean least-squares sense; `None` if
/// the residual exceeds tolerance.
fn cone_coefficients(
    n: &MinkowskiVector,
    n1: &MinkowskiVector,
    n2: &MinkowskiVector,
) -> Option<(f64, f64)> {
    let e = |a: &MinkowskiVector, b: &MinkowskiVector| -> f64 {
        a.components().iter().zip(b.components()).map(|(x, y)| x * y).sum()
    };
    let (g11, g12, g22) = (e(n1, n1), e(n1, n2), e(n2, n2));
    let (b1, b2) = (e(n1, n), e(n2, n));
    let det = g11 * g22 - g12 * g12;
    if det.abs() <= f64::EPSILON * g11 * g22 {
        return None;
    }
    let alpha = (b1 * g22 - b2 * g12) / det;
    let beta = (g11 * b2 - g12 * b1) / det;
    let resid = n
        .components()
        .iter()
        .zip(n1.components().iter().zip(n2.components()))
        .map(|(x, (a, b))| (x - alpha * a - beta * b).abs())
        .fold(0.0, f64::max);
    let scale = e(n, n).sqrt().max(1.0);
    (resid <= 1e-10 * scale).then_some((alpha, beta))
}

/// `wedge_contains`.
pub fn wedge_contains(w: &Wedge, x: &MinkowskiVector) -> bool {
    w.contains(x)
}

/// `causal_complement`.
pub fn causal_complement(w: &Wedge) -> Wedge {
    w.causal_complement()
}

/// `wedge_subset`: `w1 ⊂ w2`.
pub fn wedge_subset(w1: &Wedge, w2: &Wedge) -> bool {
    w1.is_subset_of(w2)
}

/// Random point of the closed forward cone; about one in eight samples is
/// exactly null.
pub fn sample_forward_cone<R: Rng + ?Sized>(rng: &mut R, d: usize, scale: f64) -> MinkowskiVector {
    let spatial: Vec<f64> = (1..d).map(|_| rng.random_range(-scale..scale)).collect();
    let norm = spatial.iter().map(|x| x * x).sum::<f64>().sqrt();
    let extra = if rng.random_range(0..8) == 0 {
        0.0
    } else {
        rng.random_range(0.0..scale)
    };
    let mut c = Vec::with_capacity(d);
    c.push(norm + extra);
    c.extend(spatial);
    MinkowskiVector(c)
}

/// Random point of `W₀`; about one in eight samples lies on the boundary.
pub fn sample_standard_wedge<R: Rng + ?Sized>(rng: &mut R, d: usize, scale: f64) -> MinkowskiVector {
    let x0 = rng.random_range(-scale..scale);
    let extra = if rng.random_range(0..8) == 0 {
        0.0
    } else {
        rng.random_range(0.0..scale)
    };
    let mut c = vec![x0, x0.abs() + extra];
    c.extend((2..d).map(|_| rng.random_range(-scale..scale)));
    MinkowskiVector(c)
}

/// Random `λ` with `λW₀ ⊂ W₀`: boost in the `(0,1)` plane, rotation fixing
/// the `(0,1)` coordinates, translation into `W₀`.
pub fn sample_wedge_stabilizer<R: Rng + ?Sized>(rng: &mut R, d: usize) -> PoincareElement {
    let mut lorentz = LorentzTransform::boost(d, 1, rng.random_range(-2.0..2.0)).expect("valid boost");
    for i in 2..d {
        for j in (i + 1)..d {
            let r = LorentzTransform::rotation(d, i, j, rng.random_range(-3.0..3.0))
                .expect("valid rotation");
            lorentz = lorentz.compose(&r);
        }
    }
    let a = sample_standard_wedge(rng, d, 3.0);
    PoincareElement::new(lorentz, a).expect("matching dimensions")
}

/// Result of the `Q_κV₊ = W₀` check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FactIiiReport {
    pub kappa: f64,
    pub d: usize,
    pub inclusion_samples: usize,
    pub inclusion_violations: usize,
    /// Only checked in `d = 2`.
    pub surjectivity_samples: usize,
    pub surjectivity_violations: usize,
    /// Largest `‖Q_κp − x‖` over the surjectivity samples.
    pub surjectivity_residual: f64,
    pub note: Option<String>,
}

impl FactIiiReport {
    pub fn pass(&self) -> bool {
        self.inclusion_violations == 0 && self.surjectivity_violations == 0
    }
}

/// Checks `Q_κp ∈ W₀` for sampled `p ∈ V₊` and, in `d = 2`, that every
/// sampled `x ∈ W₀` has the preimage `p = (x₁/κ, x₀/κ) ∈ V₊`.
pub fn check_fact_iii<R: Rng + ?Sized>(
    kappa: f64,
    d: usize,
    samples: usize,
    rng: &mut R,
) -> Result<FactIiiReport> {
    if kappa.is_nan() || kappa <= 0.0 {
        return Err(Error::InvalidParameter(format!("kappa must be > 0, got {kappa}")));
    }
    let q = SkewWarpMatrix::standard(kappa, d)?;
    let w0 = Wedge::standard(d);
    let mut inclusion_violations = 0;
    for _ in 0..samples {
        let p = sample_forward_cone(rng, d, 5.0);
        if !w0.contains(&q.apply(&p)) {
            inclusion_violations += 1;
        }
    }
    let mut report = FactIiiReport {
        kappa,
        d,
        inclusion_samples: samples,
        inclusion_violations,
        surjectivity_samples: 0,
        surjectivity_violations: 0,
        surjectivity_residual: 0.0,
        note: None,
    };
    if d == 2 {
        report.surjectivity_samples = samples;
        for _ in 0..samples {
            let x = sample_standard_wedge(rng, d, 5.0);
            let p = MinkowskiVector(vec![x.components()[1] / kappa, x.time() / kappa]);
            let err = q.apply(&p).max_abs_diff(&x);
            report.surjectivity_residual = report.surjectivity_residual.max(err);
            if !p.in_forward_cone(0.0) || err > GEOMETRY_TOL * apex_scale(&x) {
                report.surjectivity_violations += 1;
            }
        }
    } else {
        report.note = Some(format!(
            "d = {d}: Q_κV₊ is contained in the (x₀,x₁)-plane, a proper subset of W₀; \
             only the inclusion is verified"
        ));
    }
    Ok(report)
}
