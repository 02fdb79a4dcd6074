//! Dense complex linear algebra shared by the modules.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type C64 = Complex64;

/// Dense complex operator on the model Hilbert space.
pub type OperatorMatrix = DMatrix<C64>;

/// Dense complex state vector.
pub type StateVector = DVector<C64>;

#[inline]
pub fn cis(phase: f64) -> C64 {
    C64::from_polar(1.0, phase)
}

/// Operator 2-norm (largest singular value).
pub fn op_norm(m: &OperatorMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone()
        .singular_values()
        .iter()
        .copied()
        .fold(0.0, f64::max)
}

pub fn frobenius(m: &OperatorMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn vec_norm(v: &StateVector) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn commutator(a: &OperatorMatrix, b: &OperatorMatrix) -> OperatorMatrix {
    a * b - b * a
}

/// `‖A − B‖` in operator norm.
pub fn op_distance(a: &OperatorMatrix, b: &OperatorMatrix) -> f64 {
    op_norm(&(a - b))
}

pub fn identity(n: usize) -> OperatorMatrix {
    OperatorMatrix::identity(n, n)
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &OperatorMatrix, b: &OperatorMatrix) -> OperatorMatrix {
    a.kronecker(b)
}

pub fn is_unitary(u: &OperatorMatrix, tol: f64) -> bool {
    u.is_square() && frobenius(&(u.adjoint() * u - identity(u.nrows()))) < tol
}

/// Incrementally built orthonormal basis of a subspace of `ℂ^len`.
///
/// Membership tests project onto the span (least squares). Operators are
/// handled by flattening them column-major.
#[derive(Clone, Debug)]
pub struct Span {
    len: usize,
    basis: Vec<DVector<C64>>,
    accept_tol: f64,
    min_pivot: f64,
    max_pivot: f64,
}

impl Span {
    /// `accept_tol` is the relative residual above which a candidate is
    /// treated as a new direction.
    pub fn new(len: usize, accept_tol: f64) -> Self {
        Self {
            len,
            basis: Vec::new(),
            accept_tol,
            min_pivot: f64::INFINITY,
            max_pivot: 0.0,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Orthonormal basis vectors.
    pub fn basis(&self) -> &[DVector<C64>] {
        &self.basis
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() >= self.len
    }

    fn project_out(&self, v: &mut DVector<C64>) {
        // two passes of modified Gram-Schmidt
        for _ in 0..2 {
            for b in &self.basis {
                let c = b.dotc(v);
                v.axpy(-c, b, C64::new(1.0, 0.0));
            }
        }
    }

    /// Adds `v` if it is not (numerically) in the span. Returns whether it
    /// was added.
    pub fn push(&mut self, v: &DVector<C64>) -> bool {
        assert_eq!(v.len(), self.len, "span element length");
        let norm = v.norm();
        if norm == 0.0 || self.is_full() {
            return false;
        }
        let mut w = v.clone();
        self.project_out(&mut w);
        let rel = w.norm() / norm;
        if rel <= self.accept_tol {
            return false;
        }
        self.min_pivot = self.min_pivot.min(rel);
        self.max_pivot = self.max_pivot.max(rel);
        let n = w.norm();
        self.basis.push(w / C64::new(n, 0.0));
        true
    }

    /// Relative least-squares residual `‖v − Pv‖ / ‖v‖` (0 for `v = 0`).
    pub fn residual(&self, v: &DVector<C64>) -> f64 {
        let norm = v.norm();
        if norm == 0.0 {
            return 0.0;
        }
        let mut w = v.clone();
        self.project_out(&mut w);
        w.norm() / norm
    }

    /// Ratio of the largest to the smallest accepted pivot; large values mean
    /// the spanning set was nearly dependent.
    pub fn condition(&self) -> f64 {
        if self.basis.is_empty() {
            1.0
        } else {
            self.max_pivot / self.min_pivot
        }
    }
}

pub fn flatten(m: &OperatorMatrix) -> DVector<C64> {
    DVector::from_column_slice(m.as_slice())
}

/// Inverse of [`flatten`] for an `n×n` operator.
pub fn unflatten(v: &DVector<C64>, n: usize) -> OperatorMatrix {
    OperatorMatrix::from_column_slice(n, n, v.as_slice())
}

/// Linear span of all monomials of degree `1..=degree` in `generators`
/// (the identity is included as the degree-0 monomial).
///
/// Built degree by degree: the degree-`k` span is spanned by products of the
/// degree-`k−1` basis elements with single generators, so the basis never
/// exceeds `n²` elements.
pub fn monomial_span(generators: &[OperatorMatrix], degree: usize, accept_tol: f64) -> Span {
    let n = generators.first().map_or(0, |g| g.nrows());
    let mut span = Span::new(n * n, accept_tol);
    if n == 0 {
        return span;
    }
    span.push(&flatten(&identity(n)));
    let mut frontier = vec![identity(n)];
    for _ in 0..degree {
        let mut next = Vec::new();
        for m in &frontier {
            for g in generators {
                let prod = m * g;
                if span.push(&flatten(&prod)) {
                    next.push(prod);
                }
                if span.is_full() {
                    return span;
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    span
}

/// Span of the vectors `M·v` for the monomials `M` of degree `≤ degree`.
pub fn cyclic_span(
    generators: &[OperatorMatrix],
    v: &StateVector,
    degree: usize,
    accept_tol: f64,
) -> Span {
    let mut span = Span::new(v.len(), accept_tol);
    span.push(v);
    let mut frontier = vec![v.clone()];
    for _ in 0..degree {
        let mut next = Vec::new();
        for w in &frontier {
            for g in generators {
                let gw = g * w;
                if span.push(&gw) {
                    next.push(gw);
                }
                if span.is_full() {
                    return span;
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    span
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn op_norm_of_diagonal() {
        let m = OperatorMatrix::from_diagonal(&DVector::from_vec(vec![c(1.0), c(-3.0), c(2.0)]));
        assert!((op_norm(&m) - 3.0).abs() < 1e-14);
    }

    #[test]
    fn span_detects_dependence() {
        let mut s = Span::new(3, 1e-10);
        assert!(s.push(&DVector::from_vec(vec![c(1.0), c(0.0), c(0.0)])));
        assert!(!s.push(&DVector::from_vec(vec![c(2.0), c(0.0), c(0.0)])));
        assert!(s.push(&DVector::from_vec(vec![c(1.0), c(1.0), c(0.0)])));
        let r = s.residual(&DVector::from_vec(vec![c(0.0), c(0.0), c(1.0)]));
        assert!((r - 1.0).abs() < 1e-14);
        assert!(s.residual(&DVector::from_vec(vec![c(3.0), c(-1.0), c(0.0)])) < 1e-15);
    }

    #[test]
    fn monomial_span_of_pauli_x_is_two_dimensional() {
        let x = OperatorMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(1.0), c(0.0)]);
        let span = monomial_span(&[x], 3, 1e-10);
        // {1, X}; X² = 1
        assert_eq!(span.dim(), 2);
    }
}
