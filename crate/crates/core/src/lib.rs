//! Complex-time Segal–Bargmann transform on `R^d` and on `SU(2)`/`SL(2,C)`.
//!
//! The crate is organised by the object being computed:
//!
//! * [`params`] – the `(s, τ)` parameter disk, the ellipticity quantity `α`
//!   and the `(a,b,c) ↔ (s,t,u)` reparametrisation.
//! * [`euclidean`] – Gaussian heat kernels on `R^d`, their complex-time
//!   continuation, the measure `μ_{s,τ}` on `C^d`, exact polynomial norms via
//!   Wick calculus and quadrature-based transforms.
//! * [`su2`] – the concrete `SU(2)` layer: Lie algebra, irreducible
//!   representations, characters, the heat kernel as a character series and
//!   Haar quadrature.
//! * [`opcalc`] – the finite-dimensional operator calculus on matrix entries,
//!   where the isometry and Laplacian decomposition become matrix identities.
//! * [`sampling`] – a geometric Euler–Maruyama sampler for `μ_{s,τ}` on
//!   `SL(2,C)` and Monte Carlo estimators built on it.
//! * [`experiments`] – named experiments that sweep parameter grids and
//!   produce tolerance-checked reports.

pub mod error;
pub mod euclidean;
pub mod experiments;
pub mod linalg;
pub mod opcalc;
pub mod params;
pub mod quadrature;
pub mod sampling;
pub mod su2;
pub mod tolerances;

pub use error::{Error, Result};
pub use params::{ComplexTime, MetricTriple, TransformParams};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
