//! `SU(2)` and its complexification `SL(2,C)`.
//!
//! The base inner product on `su(2)` is `⟨X, Y⟩ = −Tr(XY)`, with
//! orthonormal basis `e_a = (i/√2)σ_a`. In this normalisation the Casimir of
//! the `n`-dimensional irrep is `−c_n` with `c_n = (n² − 1)/2`, and the first
//! nonzero eigenvalue of `−Δ_K` is `c_2 = 3/2`.

mod algebra;
mod haar;
mod heat;
mod irrep;

pub use algebra::{
    exp_traceless, inner_abc, inner_abc_trace, inner_abc_with, inner_k, pauli, su2_basis, AlgebraElement,
    GroupElement, M2,
};
pub use haar::{haar_quadrature, haar_sample, random_algebra_element, HaarQuadrature};
pub use heat::{character, heat_kernel_c, heat_kernel_k, HeatSeries};
pub use irrep::{casimir, casimir_value, irrep, Irrep};

use rand::Rng;

use crate::params::MetricTriple;

/// Largest `|⟨kZk⁻¹, kWk⁻¹⟩ − ⟨Z, W⟩|` over random Haar `k` and random
/// `Z, W ∈ sl(2,C)`, for the `(a,b,c)` form built on `base`.
pub fn ad_invariance_residual_with<R, F>(m: &MetricTriple, trials: usize, rng: &mut R, base: F) -> f64
where
    R: Rng + ?Sized,
    F: Fn(&AlgebraElement, &AlgebraElement) -> f64 + Copy,
{
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let k = haar_sample(rng);
        let z = random_algebra_element(rng);
        let w = random_algebra_element(rng);
        let before = inner_abc_with(&z, &w, m, base);
        let after = inner_abc_with(&z.conjugate_by(&k), &w.conjugate_by(&k), m, base);
        worst = worst.max((after - before).abs());
    }
    worst
}

/// [`ad_invariance_residual_with`] for the reference form `−Tr(XY)`.
pub fn ad_invariance_residual<R: Rng + ?Sized>(m: &MetricTriple, trials: usize, rng: &mut R) -> f64 {
    ad_invariance_residual_with(m, trials, rng, inner_k)
}
