//! Irreducible representations of `SU(2)` and their holomorphic extension to `SL(2,C)`.
//!
//! The `n`-dimensional representation is spin `j = (n − 1)/2` in the
//! angular-momentum basis `|j, m⟩`, `m = j, j − 1, …, −j` (Condon–Shortley
//! phases). Generators are `π_*(e_a) = i√2 J_a`, so `n = 2` reproduces the
//! basis `e_a = (i/√2)σ_a` and the Casimir is `−(n² − 1)/2 · I`.
//!
//! Group elements act through the symmetric power of the defining
//! representation, in the orthonormal monomial basis
//! `x^{j+m} y^{j−m} / √((j+m)!(j−m)!)`, whose derivative is exactly the
//! ladder-operator generators above.

use std::f64::consts::SQRT_2;

use crate::linalg::CMat;
use crate::su2::algebra::{AlgebraElement, GroupElement};
use crate::C64;

#[derive(Debug, Clone, PartialEq)]
pub struct Irrep {
    n: usize,
    gen: [CMat; 3],
}

/// Builds the `n`-dimensional irreducible representation (`n ≥ 1`).
pub fn irrep(n: usize) -> Irrep {
    assert!(n >= 1, "representation dimension must be at least 1");
    let j = (n as f64 - 1.0) / 2.0;
    let m = |k: usize| j - k as f64;
    let mut jz = CMat::zeros(n, n);
    let mut jp = CMat::zeros(n, n);
    for k in 0..n {
        jz[(k, k)] = C64::from(m(k));
        if k >= 1 {
            // J+ |m⟩ = √((j − m)(j + m + 1)) |m + 1⟩, and |m + 1⟩ has index k − 1
            let mk = m(k);
            jp[(k - 1, k)] = C64::from(((j - mk) * (j + mk + 1.0)).sqrt());
        }
    }
    let jm = jp.adjoint();
    let jx = (&jp + &jm) * C64::from(0.5);
    let jy = (&jp - &jm) * C64::new(0.0, -0.5);
    let f = C64::new(0.0, SQRT_2);
    Irrep { n, gen: [jx * f, jy * f, jz * f] }
}

impl Irrep {
    pub fn dim(&self) -> usize {
        self.n
    }

    /// `π_*(e_a)` for `a = 0, 1, 2`.
    pub fn generator(&self, a: usize) -> &CMat {
        &self.gen[a]
    }

    pub fn generators(&self) -> &[CMat; 3] {
        &self.gen
    }

    /// Complex-linear extension `π_ℂ*(Z) = Σ_a z_a π_*(e_a)`.
    pub fn algebra(&self, z: &AlgebraElement) -> CMat {
        let coords = z.basis_coords();
        let mut out = CMat::zeros(self.n, self.n);
        for (a, za) in coords.iter().enumerate() {
            out += &self.gen[a] * *za;
        }
        out
    }

    /// Holomorphic representation `π_ℂ(g)` of `g ∈ SL(2,C)`.
    pub fn group(&self, g: &GroupElement) -> CMat {
        symmetric_power(g, self.n)
    }

    /// Largest deviation from anti-Hermitian generators and from the
    /// bracket relations `[π(e_a), π(e_b)] = π([e_a, e_b])`.
    pub fn invariant_residual(&self) -> f64 {
        let basis = crate::su2::su2_basis();
        let mut worst: f64 = 0.0;
        for a in 0..3 {
            worst = worst.max((&self.gen[a] + self.gen[a].adjoint()).norm());
            for b in 0..3 {
                let lhs = &self.gen[a] * &self.gen[b] - &self.gen[b] * &self.gen[a];
                let rhs = self.algebra(&basis[a].bracket(&basis[b]));
                worst = worst.max((lhs - rhs).norm());
            }
        }
        worst
    }
}

/// `C_π = Σ_a π_*(e_a)²`.
pub fn casimir(r: &Irrep) -> CMat {
    r.gen.iter().fold(CMat::zeros(r.n, r.n), |acc, g| acc + g * g)
}

/// `c_n = (n² − 1)/2`, the eigenvalue of `−C_π` on the `n`-dimensional irrep.
pub fn casimir_value(n: usize) -> f64 {
    ((n * n) as f64 - 1.0) / 2.0
}

fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * i as f64)
}

fn binom(n: usize, k: usize) -> f64 {
    factorial(n) / (factorial(k) * factorial(n - k))
}

fn symmetric_power(g: &GroupElement, n: usize) -> CMat {
    let big_n = n - 1;
    let (g11, g12, g21, g22) = (g.mat[(0, 0)], g.mat[(0, 1)], g.mat[(1, 0)], g.mat[(1, 1)]);
    let norm = |k: usize| (factorial(big_n - k) * factorial(k)).sqrt();
    let mut out = CMat::zeros(n, n);
    for l in 0..n {
        // image of x^{N−l} y^{l}: (g11 x + g21 y)^{N−l} (g12 x + g22 y)^{l}
        let (a, b) = (big_n - l, l);
        for p in 0..=a {
            let c1 = g11.powu(p as u32) * g21.powu((a - p) as u32) * binom(a, p);
            for q in 0..=b {
                let c2 = g12.powu(q as u32) * g22.powu((b - q) as u32) * binom(b, q);
                let k = big_n - (p + q);
                out[(k, l)] += c1 * c2 * (norm(k) / norm(l));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{expm, op_norm};
    use crate::su2::su2_basis;

    #[test]
    fn trivial_rep_has_zero_generators() {
        let r = irrep(1);
        assert!(r.generators().iter().all(|g| g.norm() == 0.0));
        assert_eq!(casimir(&r).norm(), 0.0);
    }

    #[test]
    fn defining_rep_matches_basis() {
        let r = irrep(2);
        let e = su2_basis();
        for (a, ea) in e.iter().enumerate() {
            let m = CMat::from_fn(2, 2, |i, j| ea.mat[(i, j)]);
            assert!((r.generator(a) - m).norm() < 1e-15);
        }
    }

    #[test]
    fn casimir_scalars() {
        for n in 1..=6 {
            let c = casimir(&irrep(n));
            let expected = CMat::identity(n, n) * C64::from(-casimir_value(n));
            assert!(op_norm(&(c - expected)) < 1e-12, "n = {n}");
        }
        assert_eq!(casimir_value(2), 1.5);
        assert_eq!(casimir_value(3), 4.0);
        assert_eq!(casimir_value(4), 7.5);
    }

    #[test]
    fn generators_satisfy_invariants() {
        for n in 1..=6 {
            assert!(irrep(n).invariant_residual() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn group_rep_is_exponential_of_algebra_rep() {
        let z = AlgebraElement::from_basis_coords([C64::new(0.3, -0.4), C64::new(0.2, 0.5), C64::new(-0.7, 0.1)]);
        let g = z.exp();
        for n in 1..=5 {
            let r = irrep(n);
            let lhs = r.group(&g);
            let rhs = expm(&r.algebra(&z));
            assert!(op_norm(&(lhs - rhs)) < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn group_rep_is_multiplicative() {
        let z1 = AlgebraElement::from_basis_coords([C64::new(0.3, 0.1), C64::new(0.0, 0.5), C64::new(-0.7, 0.0)]);
        let z2 = AlgebraElement::from_basis_coords([C64::new(-0.2, 0.4), C64::new(1.0, 0.0), C64::new(0.1, -0.3)]);
        let (g, h) = (z1.exp(), z2.exp());
        let r = irrep(4);
        let lhs = r.group(&g.mul(&h));
        let rhs = r.group(&g) * r.group(&h);
        assert!(op_norm(&(lhs - rhs)) < 1e-12);
    }
}
