//! Characters and the heat kernel of `SU(2)` as a character series.
//!
//! For normalised Haar measure and the metric `−Tr(XY)`,
//!
//! ```text
//! ρ_t(k) = Σ_{n≥1} n · e^{−t c_n / 2} · χ_n(k),   c_n = (n² − 1)/2,
//! ```
//!
//! which is fixed by `∫ ρ_t f_{π,A} = Tr(e^{t C_π/2} A)` and Schur
//! orthogonality. Replacing `t` by `τ ∈ C₊` and `k` by `z ∈ SL(2,C)` gives
//! the holomorphic continuation; characters are polynomials in `Tr z`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::ComplexTime;
use crate::su2::algebra::GroupElement;
use crate::C64;

/// Truncation control for the character series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeatSeries {
    /// Absolute tolerance on the neglected tail.
    pub tol: f64,
    pub max_terms: usize,
    /// Multiplies the first neglected term bound.
    pub safety: f64,
}

impl Default for HeatSeries {
    fn default() -> Self {
        Self { tol: 1e-12, max_terms: 20_000, safety: 10.0 }
    }
}

impl HeatSeries {
    /// Number of terms needed for time `t = Re τ` when the larger eigenvalue
    /// modulus is `lam_abs`.
    ///
    /// Uses `|n e^{−τ c_n/2} χ_n(z)| ≤ n² e^{−t(n²−1)/4} max(1,|λ|)^{n−1}` and
    /// stops at the first `n` past the peak of that bound where
    /// `safety · bound(n) < tol`.
    pub fn terms_needed(&self, t: f64, lam_abs: f64) -> Result<usize> {
        let ln_l = lam_abs.max(1.0).ln();
        let log_bound = |m: f64| 2.0 * m.ln() - t * (m * m - 1.0) / 4.0 + (m - 1.0) * ln_l;
        // d/dm log_bound = 0  ⇔  t m²/2 − ln_l m − 2 = 0
        let peak = (ln_l + (ln_l * ln_l + 4.0 * t).sqrt()) / t;
        let target = (self.tol / self.safety).ln();
        for n in 1..=self.max_terms {
            let next = (n + 1) as f64;
            if next > peak && log_bound(next) < target {
                return Ok(n);
            }
        }
        Err(Error::Truncation { tolerance: self.tol, max_terms: self.max_terms })
    }
}

/// `χ_n` as a function of the trace: `χ_1 = 1`, `χ_2 = x`, `χ_{n+1} = x χ_n − χ_{n−1}`.
///
/// Equal to `(λⁿ − λ⁻ⁿ)/(λ − λ⁻¹)` for eigenvalues `λ, λ⁻¹`, including the
/// limit `n λ^{n−1}` at `λ = ±1`.
pub fn character_from_trace(n: usize, trace: C64) -> C64 {
    if n == 0 {
        return C64::new(0.0, 0.0);
    }
    let mut prev = C64::new(0.0, 0.0);
    let mut cur = C64::new(1.0, 0.0);
    for _ in 1..n {
        let next = trace * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Character of the `n`-dimensional irrep at `z ∈ SL(2,C)`.
pub fn character(n: usize, z: &GroupElement) -> C64 {
    character_from_trace(n, z.trace())
}

fn series(tau: C64, trace: C64, terms: usize) -> C64 {
    let mut prev = C64::new(0.0, 0.0);
    let mut chi = C64::new(1.0, 0.0);
    let mut acc = C64::new(0.0, 0.0);
    for n in 1..=terms {
        let nf = n as f64;
        let cn = (nf * nf - 1.0) / 2.0;
        acc += (-tau * cn / 2.0).exp() * chi * nf;
        let next = trace * chi - prev;
        prev = chi;
        chi = next;
    }
    acc
}

/// Heat kernel `ρ_t(k)` on `SU(2)` (density w.r.t. normalised Haar measure).
pub fn heat_kernel_k(t: f64, k: &GroupElement, cfg: &HeatSeries) -> Result<f64> {
    if t <= 0.0 {
        return Err(Error::NonPositive { name: "t", value: t });
    }
    if !k.is_unitary(1e-10) {
        return Err(Error::Invalid("heat_kernel_k expects an element of SU(2)".into()));
    }
    let terms = cfg.terms_needed(t, 1.0)?;
    Ok(series(C64::from(t), k.trace(), terms).re)
}

/// Holomorphic continuation `ρ_ℂ(τ, z)` for `Re τ > 0`, `z ∈ SL(2,C)`.
pub fn heat_kernel_c(tau: ComplexTime, z: &GroupElement, cfg: &HeatSeries) -> Result<C64> {
    tau.check_right_half_plane()?;
    let (lam, _) = z.eigenvalues();
    let terms = cfg.terms_needed(tau.t, lam.norm())?;
    Ok(series(tau.as_complex(), z.trace(), terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratio_character(n: usize, lam: C64) -> C64 {
        (lam.powu(n as u32) - lam.inv().powu(n as u32)) / (lam - lam.inv())
    }

    #[test]
    fn character_examples() {
        for n in 1..6 {
            assert_eq!(character(n, &GroupElement::identity()), C64::from(n as f64));
        }
        let z = GroupElement::torus(std::f64::consts::FRAC_PI_2);
        assert!(character(2, &z).norm() < 1e-15);
        let z = GroupElement::diag(C64::from(2.0));
        assert!((character(2, &z) - 2.5).norm() < 1e-15);
    }

    #[test]
    fn recurrence_matches_eigenvalue_ratio() {
        for lam in [C64::new(1.3, 0.4), C64::from_polar(1.0, 0.7), C64::new(-0.5, 2.0)] {
            let z = GroupElement::diag(lam);
            for n in 1..12 {
                let a = character(n, &z);
                let b = ratio_character(n, lam);
                assert!((a - b).norm() < 1e-10 * b.norm().max(1.0), "n={n} lam={lam}");
            }
        }
        // λ = −1 limit: n (−1)^{n−1}
        let z = GroupElement::diag(C64::from(-1.0));
        for n in 1..8 {
            let expected = n as f64 * if n % 2 == 1 { 1.0 } else { -1.0 };
            assert_eq!(character(n, &z), C64::from(expected));
        }
    }

    #[test]
    fn torus_characters_are_dirichlet_kernels() {
        let theta = 0.37;
        let z = GroupElement::torus(theta);
        for n in 1..10 {
            let expected = (n as f64 * theta).sin() / theta.sin();
            assert!((character(n, &z).re - expected).abs() < 1e-13);
        }
    }

    #[test]
    fn heat_kernel_is_positive_and_symmetric() {
        let cfg = HeatSeries::default();
        for t in [0.1, 0.5, 2.0] {
            for theta in [0.0, 0.5, 1.5, 3.0] {
                let k = GroupElement::torus(theta);
                let v = heat_kernel_k(t, &k, &cfg).unwrap();
                assert!(v > 0.0);
                let w = heat_kernel_k(t, &k.inverse(), &cfg).unwrap();
                assert!((v - w).abs() < 1e-12 * v.max(1.0));
            }
        }
        assert!(heat_kernel_k(0.0, &GroupElement::identity(), &cfg).is_err());
    }

    #[test]
    fn complex_kernel_restricts_to_real() {
        let cfg = HeatSeries::default();
        let k = GroupElement::torus(1.1);
        let a = heat_kernel_k(0.7, &k, &cfg).unwrap();
        let b = heat_kernel_c(ComplexTime::real(0.7), &k, &cfg).unwrap();
        assert!((b - a).norm() < 1e-12);
    }

    #[test]
    fn truncation_failure_is_reported() {
        let cfg = HeatSeries { max_terms: 10, ..HeatSeries::default() };
        let r = heat_kernel_k(1e-3, &GroupElement::identity(), &cfg);
        assert!(matches!(r, Err(Error::Truncation { .. })));
    }
}
