//! The `(s, τ)` parameter domain.
//!
//! A transform is indexed by a variance `s > 0` and a complex time
//! `τ = t + iu`. The operator `Δ_{s,τ}` is elliptic exactly when `τ` lies in
//! the open disk of radius `s` centred at `s`, equivalently when
//! `α(s,τ) = (2st − t² − u²)/4 > 0`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::C64;

/// Complex time `τ = t + iu`, kept as a pair so that disk checks are plain
/// real arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexTime {
    pub t: f64,
    pub u: f64,
}

impl ComplexTime {
    pub const fn new(t: f64, u: f64) -> Self {
        Self { t, u }
    }

    pub const fn real(t: f64) -> Self {
        Self { t, u: 0.0 }
    }

    pub fn as_complex(&self) -> C64 {
        C64::new(self.t, self.u)
    }

    pub fn conj(&self) -> Self {
        Self { t: self.t, u: -self.u }
    }

    /// Rejects `t ≤ 0` (outside the right half-plane).
    pub fn check_right_half_plane(&self) -> Result<()> {
        if self.t > 0.0 {
            Ok(())
        } else {
            Err(Error::NonPositive { name: "Re τ", value: self.t })
        }
    }
}

impl From<C64> for ComplexTime {
    fn from(z: C64) -> Self {
        Self { t: z.re, u: z.im }
    }
}

/// The pair `(s, τ)`. Construction does not validate; use [`TransformParams::validated`]
/// or [`TransformParams::check`] before handing parameters to transform code.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransformParams {
    pub s: f64,
    pub tau: ComplexTime,
}

impl TransformParams {
    pub const fn new(s: f64, t: f64, u: f64) -> Self {
        Self { s, tau: ComplexTime { t, u } }
    }

    pub fn validated(s: f64, t: f64, u: f64) -> Result<Self> {
        let p = Self::new(s, t, u);
        p.check()?;
        Ok(p)
    }

    /// `α(s,τ) = det [[s − t/2, −u/2], [−u/2, t/2]] = (2st − t² − u²)/4`.
    pub fn alpha(&self) -> f64 {
        alpha(self)
    }

    pub fn in_disk(&self) -> bool {
        in_disk(self)
    }

    /// Returns the disk violation as an error. The boundary `α = 0` is rejected
    /// with an exact comparison.
    pub fn check(&self) -> Result<()> {
        if self.s > 0.0 && self.in_disk() {
            Ok(())
        } else {
            Err(Error::OutsideDisk {
                s: self.s,
                t: self.tau.t,
                u: self.tau.u,
                alpha: self.alpha(),
            })
        }
    }

    pub fn t(&self) -> f64 {
        self.tau.t
    }

    pub fn u(&self) -> f64 {
        self.tau.u
    }

    /// Covariance block `[[s − t/2, −u/2], [−u/2, t/2]]` of `(Re z_j, Im z_j)`
    /// under `μ_{s,τ}`, and the coefficients of `Δ_{s,τ}`.
    pub fn covariance_block(&self) -> [[f64; 2]; 2] {
        let (s, t, u) = (self.s, self.tau.t, self.tau.u);
        [[s - t / 2.0, -u / 2.0], [-u / 2.0, t / 2.0]]
    }
}

pub fn alpha(p: &TransformParams) -> f64 {
    let (s, t, u) = (p.s, p.tau.t, p.tau.u);
    (2.0 * s * t - t * t - u * u) / 4.0
}

pub fn in_disk(p: &TransformParams) -> bool {
    alpha(p) > 0.0
}

/// Coefficients `(a, b, c)` of an `Ad(K)`-invariant inner product
/// `a⟨X,X'⟩ + b⟨Y,Y'⟩ + c(⟨X,Y'⟩ + ⟨X',Y⟩)` on `𝔨 ⊕ J𝔨`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricTriple {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl MetricTriple {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        let m = Self { a, b, c };
        m.check()?;
        Ok(m)
    }

    pub const fn new_unchecked(a: f64, b: f64, c: f64) -> Self {
        Self { a, b, c }
    }

    pub fn det(&self) -> f64 {
        self.a * self.b - self.c * self.c
    }

    pub fn check(&self) -> Result<()> {
        if self.a > 0.0 && self.b > 0.0 && self.det() > 0.0 {
            Ok(())
        } else {
            Err(Error::InvalidMetric { a: self.a, b: self.b, c: self.c })
        }
    }
}

/// `Φ(a,b,c) = (a + b, 2a, 2c)/(ab − c²)`.
pub fn phi(m: &MetricTriple) -> Result<TransformParams> {
    m.check()?;
    let d = m.det();
    Ok(TransformParams::new((m.a + m.b) / d, 2.0 * m.a / d, 2.0 * m.c / d))
}

/// `Φ⁻¹(s,t,u) = (t/2, s − t/2, u/2)/α`.
pub fn phi_inverse(s: f64, t: f64, u: f64) -> Result<MetricTriple> {
    let p = TransformParams::validated(s, t, u)?;
    let al = p.alpha();
    Ok(MetricTriple { a: t / 2.0 / al, b: (s - t / 2.0) / al, c: u / 2.0 / al })
}

pub fn phi_inverse_params(p: &TransformParams) -> Result<MetricTriple> {
    phi_inverse(p.s, p.tau.t, p.tau.u)
}
