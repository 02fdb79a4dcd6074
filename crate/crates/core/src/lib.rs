//! Warped convolutions of operators on finite-dimensional spectral models.
//!
//! A model is a Hilbert space `ℂⁿ` carrying a unitary representation of the
//! spacetime translations, `U(x) = Σⱼ e^{ipⱼ·x} Eⱼ`, stored as an eigenbasis
//! together with the momentum label of every basis vector. For a matrix `Q`
//! that is skew with respect to the Minkowski form, the warped convolution
//!
//! ```text
//! F_Q = Σⱼ Eⱼ α_{Qpⱼ}(F),      α_x(F) = U(x) F U(x)⁻¹
//! ```
//!
//! is a finite sum, so every identity it satisfies can be checked to machine
//! precision.
//!
//! ```
//! use warpconv::geometry::{MinkowskiVector, SkewWarpMatrix};
//! use warpconv::linalg::{op_norm, OperatorMatrix, C64};
//! use warpconv::spectral::{warp, warp_left, SpectralDecomposition};
//!
//! let momenta = [
//!     MinkowskiVector::from_slice(&[1.0, 0.0]),
//!     MinkowskiVector::from_slice(&[2.0, 1.0]),
//!     MinkowskiVector::from_slice(&[3.0, -1.5]),
//! ];
//! let s = SpectralDecomposition::diagonal(&momenta)?;
//! let f = OperatorMatrix::from_fn(3, 3, |a, b| C64::new(a as f64 + 1.0, b as f64));
//! let q = SkewWarpMatrix::standard(0.7, 2)?;
//!
//! let right = warp(&s, &q, &f)?;
//! let left = warp_left(&s, &q, &f)?;
//! assert!(op_norm(&(right - left)) < 1e-12);
//! # Ok::<(), warpconv::Error>(())
//! ```
//!
//! Modules:
//!
//! - [`geometry`]: Minkowski vectors, Lorentz and Poincaré transformations,
//!   wedges and the standard warp matrix `Q_κ`.
//! - [`spectral`]: spectral decompositions, translations, warped
//!   convolutions and the identities they satisfy.
//! - [`fock`]: truncated bosonic Fock spaces over a momentum lattice.
//! - [`wedge_algebra`]: deformed wedge algebras and their net properties.
//! - [`scattering`]: two-particle scattering states and their phases.
//! - [`models`]: random models and tensor splits for property testing.
//!
//! The guide in `book/` walks through the same material; its code blocks are
//! compiled and run as doctests of this crate.

pub mod error;
pub mod fock;
pub mod geometry;
pub mod linalg;
pub mod models;
pub mod report;
pub mod scattering;
pub mod spectral;
pub mod wedge_algebra;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/warping.md")]
    mod warping {}
    #[doc = include_str!("../../../book/src/wedges.md")]
    mod wedges {}
    #[doc = include_str!("../../../book/src/algebras.md")]
    mod algebras {}
    #[doc = include_str!("../../../book/src/fock.md")]
    mod fock {}
    #[doc = include_str!("../../../book/src/scattering.md")]
    mod scattering {}
    #[doc = include_str!("../../../book/src/runner.md")]
    mod runner {}
}
