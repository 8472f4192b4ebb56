//! Haar quadrature and sampling on `SU(2)`.
//!
//! Writing `U = [[a, −b̄], [b, ā]]` with `a = cos η e^{iφ}`, `b = sin η e^{iψ}`
//! and `w = cos 2η` (the cosine of the middle Euler angle), normalised Haar
//! measure is uniform in `(w, φ, ψ) ∈ [−1,1] × [0,2π)²`. A monomial in
//! `a, ā, b, b̄` of total degree `D` has angular frequencies at most `D` and,
//! when it survives the angular averages, is a polynomial of degree `D/2` in
//! `w`. The product rule with `q` equispaced angles and `⌈q/2⌉` Gauss–Legendre
//! nodes in `w` is therefore exact up to degree `q − 1`.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::quadrature::gauss_legendre;
use crate::su2::algebra::{AlgebraElement, GroupElement, M2};
use crate::C64;

#[derive(Debug, Clone)]
pub struct HaarQuadrature {
    pub nodes: Vec<GroupElement>,
    pub weights: Vec<f64>,
    /// Polynomials in the matrix entries of `U` and `Ū` up to this total degree are integrated exactly.
    pub exact_degree: usize,
}

impl HaarQuadrature {
    /// Largest `n` such that products of two entries of the `n`-dimensional
    /// irrep (degree `2(n − 1)`) are integrated exactly.
    pub fn max_pair_dim(&self) -> usize {
        self.exact_degree / 2 + 1
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F>(&self, mut f: F) -> C64
    where
        F: FnMut(&GroupElement) -> C64,
    {
        self.nodes.iter().zip(&self.weights).map(|(g, &w)| f(g) * w).sum()
    }

    pub fn integrate_real<F>(&self, mut f: F) -> f64
    where
        F: FnMut(&GroupElement) -> f64,
    {
        self.nodes.iter().zip(&self.weights).map(|(g, &w)| f(g) * w).sum()
    }
}

fn su2_from_ab(a: C64, b: C64) -> GroupElement {
    GroupElement::from_mat_unchecked(M2::new(a, -b.conj(), b, a.conj()))
}

/// Product rule of the given order (`order ≥ 2`).
pub fn haar_quadrature(order: usize) -> HaarQuadrature {
    assert!(order >= 2, "Haar quadrature order must be at least 2");
    let gl = gauss_legendre(order.div_ceil(2));
    let q = order;
    let mut nodes = Vec::with_capacity(q * q * gl.len());
    let mut weights = Vec::with_capacity(nodes.capacity());
    let angle = |i: usize| 2.0 * PI * i as f64 / q as f64;
    for (&w, &gw) in gl.nodes.iter().zip(&gl.weights) {
        let ca = ((1.0 + w) / 2.0).sqrt();
        let sb = ((1.0 - w) / 2.0).sqrt();
        for i in 0..q {
            let a = C64::from_polar(ca, angle(i));
            for j in 0..q {
                let b = C64::from_polar(sb, angle(j));
                nodes.push(su2_from_ab(a, b));
                weights.push(gw / 2.0 / (q * q) as f64);
            }
        }
    }
    HaarQuadrature { nodes, weights, exact_degree: q - 1 }
}

/// Haar-distributed element of `SU(2)`: a normalised complex Gaussian vector
/// `(a, b)` completed to `[[a, −b̄], [b, ā]]`.
pub fn haar_sample<R: Rng + ?Sized>(rng: &mut R) -> GroupElement {
    let g: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
    let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
    su2_from_ab(C64::new(g[0], g[1]) / norm, C64::new(g[2], g[3]) / norm)
}

/// `Σ_a z_a e_a` with independent standard complex Gaussian `z_a`.
pub fn random_algebra_element<R: Rng + ?Sized>(rng: &mut R) -> AlgebraElement {
    let coords: [C64; 3] = std::array::from_fn(|_| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re, im)
    });
    AlgebraElement::from_basis_coords(coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::su2::{character, irrep};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn weights_sum_to_one() {
        let q = haar_quadrature(8);
        let total: f64 = q.weights.iter().sum();
        assert!((total - 1.0).abs() < 1e-14);
        assert!(q.weights.iter().all(|&w| w > 0.0));
        assert!(q.nodes.iter().all(|g| g.is_unitary(1e-14) && (g.det() - 1.0).norm() < 1e-14));
    }

    #[test]
    fn characters_are_orthogonal_to_constants() {
        let q = haar_quadrature(12);
        for n in 2..=q.exact_degree + 1 {
            let v = q.integrate(|g| character(n, g));
            assert!(v.norm() < 1e-13, "n = {n}: {v}");
        }
    }

    #[test]
    fn schur_orthogonality() {
        let q = haar_quadrature(12);
        for n in 1..=q.max_pair_dim() {
            let r = irrep(n);
            for i in 0..n {
                for j in 0..n {
                    let v = q.integrate_real(|g| r.group(g)[(i, j)].norm_sqr());
                    assert!((v - 1.0 / n as f64).abs() < 1e-13, "n={n} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn sampled_elements_are_in_su2() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let g = haar_sample(&mut rng);
            assert!(g.is_unitary(1e-14));
            assert!((g.det() - 1.0).norm() < 1e-14);
        }
    }

    #[test]
    fn sampled_character_moments() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let n = 200_000;
        let (mut s1, mut s2) = (0.0, 0.0);
        for _ in 0..n {
            let chi = haar_sample(&mut rng).trace().re;
            s1 += chi;
            s2 += chi * chi;
        }
        let mean = s1 / n as f64;
        let second = s2 / n as f64;
        // Var χ₂ = 1, Var χ₂² = E χ₂⁴ − 1 = 2 − 1
        assert!(mean.abs() < 4.0 / (n as f64).sqrt());
        assert!((second - 1.0).abs() < 4.0 * 1.0 / (n as f64).sqrt());
    }
}
