//! The `K = R^d` case.
//!
//! Everything here is explicit: the heat kernel is a Gaussian, its
//! space–time continuation is a complex Gaussian, and `μ_{s,τ}` is a real
//! Gaussian on `C^d ≅ R^{2d}` whose `(x_j, y_j)` covariance block is
//! `[[s − t/2, −u/2], [−u/2, t/2]]`. That block has determinant `α`, which
//! fixes the normalisation `(2π√α)^{−d}`.

mod polynomial;
pub mod wick;

pub use polynomial::Polynomial;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{ComplexTime, TransformParams};
use crate::quadrature::{self, Interval, QuadSpec, Quadrature};
use crate::C64;

/// A point of `R^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealPoint(pub Vec<f64>);

impl RealPoint {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum()
    }
}

/// A point `z = ξ + iη` of `C^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPoint {
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl ComplexPoint {
    pub fn new(re: Vec<f64>, im: Vec<f64>) -> Result<Self> {
        if re.len() != im.len() {
            return Err(Error::DimensionMismatch { expected: re.len(), got: im.len() });
        }
        if re.is_empty() {
            return Err(Error::Invalid("complex point must have dimension ≥ 1".into()));
        }
        Ok(Self { re, im })
    }

    pub fn from_complex(z: &[C64]) -> Self {
        Self { re: z.iter().map(|c| c.re).collect(), im: z.iter().map(|c| c.im).collect() }
    }

    pub fn real(x: &RealPoint) -> Self {
        Self { re: x.0.clone(), im: vec![0.0; x.dim()] }
    }

    pub fn dim(&self) -> usize {
        self.re.len()
    }

    pub fn coords(&self) -> Vec<C64> {
        self.re.iter().zip(&self.im).map(|(&a, &b)| C64::new(a, b)).collect()
    }

    /// Bilinear square `z·z = Σ z_j²` (not Hermitian).
    pub fn dot_self(&self) -> C64 {
        self.coords().iter().map(|z| z * z).sum()
    }
}

fn positive(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositive { name, value })
    }
}

/// Gaussian heat kernel `(2πs)^{−d/2} exp(−|x|²/2s)`.
pub fn rho_s(x: &RealPoint, s: f64) -> Result<f64> {
    positive("s", s)?;
    let d = x.dim() as f64;
    Ok((2.0 * PI * s).powf(-d / 2.0) * (-x.norm_sqr() / (2.0 * s)).exp())
}

/// Space–time continuation `(2πτ)^{−d/2} exp(−z·z/2τ)`, with the power taken
/// through the principal logarithm.
pub fn rho_c(tau: ComplexTime, z: &ComplexPoint) -> Result<C64> {
    tau.check_right_half_plane()?;
    Ok(rho_c_complex(tau.as_complex(), z))
}

pub(crate) fn rho_c_complex(tau: C64, z: &ComplexPoint) -> C64 {
    let d = z.dim() as f64;
    let log_pref = -(d / 2.0) * (tau * 2.0 * PI).ln();
    (log_pref - z.dot_self() / (tau * 2.0)).exp()
}

/// Density of `μ_{s,τ}` with respect to Lebesgue measure on `C^d`.
pub fn mu_stau_density(z: &ComplexPoint, p: &TransformParams) -> Result<f64> {
    p.check()?;
    let (s, t, u) = (p.s, p.t(), p.u());
    let al = p.alpha();
    let d = z.dim() as f64;
    let x2: f64 = z.re.iter().map(|v| v * v).sum();
    let y2: f64 = z.im.iter().map(|v| v * v).sum();
    let xy: f64 = z.re.iter().zip(&z.im).map(|(a, b)| a * b).sum();
    let q = (t / 2.0) * x2 + (s - t / 2.0) * y2 + u * xy;
    Ok((2.0 * PI * al.sqrt()).powf(-d) * (-q / (2.0 * al)).exp())
}

/// `e^{τΔ/2} f = Σ_n (τ/2)^n/n! Δ^n f`, a finite sum for polynomials.
pub fn heat_apply_poly(f: &Polynomial, tau: C64) -> Polynomial {
    let mut out = f.clone();
    let mut term = f.clone();
    let mut n = 0u32;
    loop {
        term = term.laplacian();
        if term.is_zero() {
            return out;
        }
        n += 1;
        term = term.scale(tau / (2.0 * n as f64));
        out = out.add(&term);
    }
}

/// `∫_{R^d} ρ_C(τ, z − y) f(y) dy` by tensor Gauss–Legendre on a box.
///
/// `|ρ_C(τ, z − y)|` is a Gaussian in `y` with variance `|τ|²/t` per axis,
/// centred at `ξ + (u/t)η`; the box is that centre ± `half_width_sd`
/// standard deviations.
pub fn transform_quadrature<F>(f: F, p: &TransformParams, z: &ComplexPoint, spec: &QuadSpec) -> Result<Quadrature>
where
    F: Fn(&[f64]) -> C64,
{
    p.check()?;
    let tau = p.tau.as_complex();
    let (t, u) = (p.t(), p.u());
    let sd = tau.norm() / t.sqrt();
    let boxes: Vec<Interval> = z
        .re
        .iter()
        .zip(&z.im)
        .map(|(&xi, &eta)| Interval::new(xi + eta * u / t, spec.half_width_sd * sd))
        .collect();
    let d = z.dim() as f64;
    let log_pref = -(d / 2.0) * (tau * 2.0 * PI).ln();
    let zc = z.coords();
    quadrature::integrate_box_refined(&boxes, spec, |y| {
        let w: C64 = zc.iter().zip(y).map(|(zj, &yj)| (zj - yj) * (zj - yj)).sum();
        (log_pref - w / (tau * 2.0)).exp() * f(y)
    })
}

/// `‖f‖²_{L²(ρ_s)}` from exact Gaussian moments.
pub fn poly_norm_rho_s(f: &Polynomial, s: f64) -> Result<f64> {
    positive("s", s)?;
    let mut total = C64::new(0.0, 0.0);
    for (ea, ca) in f.terms() {
        for (eb, cb) in f.terms() {
            let m: f64 = ea.iter().zip(eb).map(|(&a, &b)| wick::real_moment(a + b, s)).product();
            if m != 0.0 {
                total += ca * cb.conj() * m;
            }
        }
    }
    Ok(total.re)
}

/// `‖F‖²_{L²(μ_{s,τ})}` for a holomorphic polynomial `F` via Wick pairings.
pub fn poly_norm_mu_stau(f: &Polynomial, p: &TransformParams) -> Result<f64> {
    p.check()?;
    let cov = wick::pair_covariances(p);
    let mut total = C64::new(0.0, 0.0);
    for (ea, ca) in f.terms() {
        for (eb, cb) in f.terms() {
            let m: C64 = ea.iter().zip(eb).map(|(&a, &b)| wick::mixed_moment(a, b, &cov)).product();
            total += ca * cb.conj() * m;
        }
    }
    Ok(total.re)
}

/// Natural logarithm of [`norm_ratio_closed_form`].
pub fn log_norm_ratio_closed_form(z: &ComplexPoint, p: &TransformParams) -> Result<f64> {
    p.check()?;
    let (s, t, u) = (p.s, p.t(), p.u());
    let al = p.alpha();
    let d = z.dim() as f64;
    let xi2: f64 = z.re.iter().map(|v| v * v).sum();
    let eta2: f64 = z.im.iter().map(|v| v * v).sum();
    let xe: f64 = z.re.iter().zip(&z.im).map(|(a, b)| a * b).sum();
    let q = (t / 2.0) * xi2 + (s - t / 2.0) * eta2 + u * xe;
    Ok(d * (s / (2.0 * al.sqrt())).ln() + q / (2.0 * al))
}

/// `∫ |ρ_C(τ, z − x)|²/ρ_s(x) dx = (s/(2√α))^d exp(((t/2)|ξ|² + (s − t/2)|η|² + u ξ·η)/2α)`.
///
/// Computed in log space, so it saturates to `+∞` rather than producing NaN
/// as `α → 0⁺`.
pub fn norm_ratio_closed_form(z: &ComplexPoint, p: &TransformParams) -> Result<f64> {
    Ok(log_norm_ratio_closed_form(z, p)?.exp())
}

/// `∫ |ρ_C(τ, z − x)|²/ρ_s(x) dx` by tensor Gauss–Legendre.
///
/// Per axis the integrand is a Gaussian in `x_j` with precision
/// `2κ = 2t/|τ|² − 1/s` (positive exactly on the disk), centred at `Re(z_j/τ)/κ`.
pub fn norm_ratio_quadrature(z: &ComplexPoint, p: &TransformParams, spec: &QuadSpec) -> Result<Quadrature> {
    p.check()?;
    let s = p.s;
    let tau = p.tau.as_complex();
    let kappa = p.t() / tau.norm_sqr() - 1.0 / (2.0 * s);
    let sd = (1.0 / (2.0 * kappa)).sqrt();
    let zc = z.coords();
    let boxes: Vec<Interval> =
        zc.iter().map(|zj| Interval::new((zj / tau).re / kappa, spec.half_width_sd * sd)).collect();
    let d = z.dim() as f64;
    let log_c = -d * (tau * 2.0 * PI).ln().re + (d / 2.0) * (2.0 * PI * s).ln();
    quadrature::integrate_box_refined(&boxes, spec, |x| {
        let w: C64 = zc.iter().zip(x).map(|(zj, &xj)| (zj - xj) * (zj - xj)).sum();
        let x2: f64 = x.iter().map(|v| v * v).sum();
        C64::from((log_c - (w / tau).re + x2 / (2.0 * s)).exp())
    })
}

/// `∫_{C^d} μ_{s,τ}` by tensor Gauss–Legendre over `(x, y)` boxes of
/// `half_width_sd` marginal standard deviations.
pub fn mu_stau_mass(p: &TransformParams, dim: usize, spec: &QuadSpec) -> Result<Quadrature> {
    p.check()?;
    let [[vx, _], [_, vy]] = p.covariance_block();
    let mut boxes = vec![Interval::new(0.0, spec.half_width_sd * vx.sqrt()); dim];
    boxes.extend(vec![Interval::new(0.0, spec.half_width_sd * vy.sqrt()); dim]);
    // the density cannot fail once p is checked
    quadrature::integrate_box_refined(&boxes, spec, |v| {
        let z = ComplexPoint { re: v[..dim].to_vec(), im: v[dim..].to_vec() };
        C64::from(mu_stau_density(&z, p).unwrap_or(f64::NAN))
    })
}

/// Parameters of the wave packet `χ(x) = C exp{i a x² − b (x − c)² + i d x}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoherentStateParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub dphase: f64,
}

/// Position/momentum statistics of a wave packet and its Schrödinger defect
/// `Δ²X·Δ²P − 1/4 − Cov²` (ħ = 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UncertaintyReport {
    pub var_x: f64,
    pub var_p: f64,
    pub cov: f64,
    pub defect: f64,
}

/// Evaluates the Schrödinger uncertainty relation for `χ` by Gauss–Hermite
/// quadrature against `|χ|²`. `P = −i d/dx` acts through the exact logarithmic
/// derivative `χ'/χ = 2iax − 2b(x − c) + id`.
pub fn uncertainty_check(c: &CoherentStateParams, quad: &QuadSpec) -> Result<UncertaintyReport> {
    positive("b", c.b)?;
    // |χ|² ∝ exp(−2b(x − c)²): normal with variance 1/(4b)
    let sd = (1.0 / (4.0 * c.b)).sqrt();
    let order = quad.order;
    let i = C64::i();
    let log_deriv = |x: f64| i * (2.0 * c.a * x) - 2.0 * c.b * (x - c.c) + i * c.dphase;
    let mean = |g: &dyn Fn(f64) -> C64| quadrature::gaussian_expectation_1d(c.c, sd, order, g);

    let ex = mean(&|x| C64::from(x)).re;
    let ex2 = mean(&|x| C64::from(x * x)).re;
    // ⟨P⟩ = ∫ χ̄ (−iχ'), ⟨P²⟩ = ∫ |χ'|², ⟨XP⟩ = ∫ χ̄ x (−iχ')
    let ep = mean(&|x| -i * log_deriv(x));
    let ep2 = mean(&|x| C64::from(log_deriv(x).norm_sqr())).re;
    let exp_ = mean(&|x| -i * x * log_deriv(x));

    let var_x = ex2 - ex * ex;
    let var_p = ep2 - ep.norm_sqr();
    let cov = exp_.re - ex * ep.re;
    if ep.im.abs() > quad.tolerance {
        return Err(Error::Quadrature { estimate: ep.im.abs(), tolerance: quad.tolerance });
    }
    Ok(UncertaintyReport { var_x, var_p, cov, defect: var_x * var_p - 0.25 - cov * cov })
}
