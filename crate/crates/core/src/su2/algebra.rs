//! `sl(2,C) = su(2) ⊕ J su(2)` and `SL(2,C)` as concrete 2×2 matrices.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::Matrix2;

use crate::error::{Error, Result};
use crate::params::MetricTriple;
use crate::C64;

pub type M2 = Matrix2<C64>;

const TRACE_TOL: f64 = 1e-14;
const DET_TOL: f64 = 1e-12;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn pauli() -> [M2; 3] {
    let o = c(0.0, 0.0);
    [
        M2::new(o, c(1.0, 0.0), c(1.0, 0.0), o),
        M2::new(o, c(0.0, -1.0), c(0.0, 1.0), o),
        M2::new(c(1.0, 0.0), o, o, c(-1.0, 0.0)),
    ]
}

/// A traceless 2×2 complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgebraElement {
    pub mat: M2,
}

impl AlgebraElement {
    pub fn new(mat: M2) -> Result<Self> {
        let scale = mat.norm().max(1.0);
        if mat.trace().norm() > TRACE_TOL * scale {
            return Err(Error::Invalid(format!("algebra element not traceless: tr = {}", mat.trace())));
        }
        Ok(Self { mat })
    }

    pub fn zero() -> Self {
        Self { mat: M2::zeros() }
    }

    /// `Σ_a coeffs[a] e_a`, complex coefficients allowed.
    pub fn from_basis_coords(coeffs: [C64; 3]) -> Self {
        let e = su2_basis();
        Self { mat: e[0].mat * coeffs[0] + e[1].mat * coeffs[1] + e[2].mat * coeffs[2] }
    }

    /// Complex coordinates `z_a = −Tr(e_a Z)` in the basis `e_a`.
    pub fn basis_coords(&self) -> [C64; 3] {
        let e = su2_basis();
        [0, 1, 2].map(|a| -(e[a].mat * self.mat).trace())
    }

    /// Multiplication by `i`, the complex structure `J` on `sl(2,C)`.
    pub fn j(&self) -> Self {
        Self { mat: self.mat * C64::i() }
    }

    pub fn adjoint(&self) -> Self {
        Self { mat: self.mat.adjoint() }
    }

    pub fn is_in_k(&self, tol: f64) -> bool {
        (self.mat + self.mat.adjoint()).norm() <= tol * self.mat.norm().max(1.0)
    }

    /// Splits `Z = X + JY` with `X = (Z − Z*)/2`, `Y = −i(Z + Z*)/2`, both in `su(2)`.
    pub fn decompose(&self) -> (Self, Self) {
        let h = self.mat.adjoint();
        let x = (self.mat - h) * c(0.5, 0.0);
        let y = (self.mat + h) * c(0.0, -0.5);
        (Self { mat: x }, Self { mat: y })
    }

    pub fn scale(&self, r: f64) -> Self {
        Self { mat: self.mat * c(r, 0.0) }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { mat: self.mat + other.mat }
    }

    pub fn bracket(&self, other: &Self) -> Self {
        Self { mat: self.mat * other.mat - other.mat * self.mat }
    }

    /// `Ad_k Z = k Z k⁻¹`.
    pub fn conjugate_by(&self, k: &GroupElement) -> Self {
        Self { mat: k.mat * self.mat * k.inverse().mat }
    }

    /// `exp(Z)` via `Z² = −det(Z)·I` for traceless `Z`.
    pub fn exp(&self) -> GroupElement {
        GroupElement { mat: exp_traceless(&self.mat) }
    }
}

/// `exp(Z) = cosh(q) I + (sinh q / q) Z` with `q² = −det Z`.
pub fn exp_traceless(z: &M2) -> M2 {
    let q2 = -(z[(0, 0)] * z[(1, 1)] - z[(0, 1)] * z[(1, 0)]);
    let (ch, sh_over_q) = if q2.norm() < 1e-6 {
        // series in q²
        let ch = 1.0 + q2 / 2.0 + q2 * q2 / 24.0 + q2 * q2 * q2 / 720.0;
        let sq = 1.0 + q2 / 6.0 + q2 * q2 / 120.0 + q2 * q2 * q2 / 5040.0;
        (ch, sq)
    } else {
        let q = q2.sqrt();
        (q.cosh(), q.sinh() / q)
    };
    M2::identity() * ch + z * sh_over_q
}

/// Orthonormal basis `e_a = (i/√2) σ_a` of `su(2)` for `⟨X, Y⟩ = −Tr(XY)`.
pub fn su2_basis() -> [AlgebraElement; 3] {
    let f = c(0.0, FRAC_1_SQRT_2);
    pauli().map(|s| AlgebraElement { mat: s * f })
}

/// `⟨X, Y⟩_𝔨 = −Re Tr(XY)`; real for `X, Y ∈ su(2)`.
pub fn inner_k(x: &AlgebraElement, y: &AlgebraElement) -> f64 {
    -(x.mat * y.mat).trace().re
}

/// `⟨Z, W⟩_{a,b,c} = a⟨X,X'⟩ + b⟨Y,Y'⟩ + c(⟨X,Y'⟩ + ⟨X',Y⟩)`.
pub fn inner_abc(z: &AlgebraElement, w: &AlgebraElement, m: &MetricTriple) -> f64 {
    inner_abc_with(z, w, m, inner_k)
}

/// Same family built on an arbitrary base form on `su(2)`.
pub fn inner_abc_with<F>(z: &AlgebraElement, w: &AlgebraElement, m: &MetricTriple, base: F) -> f64
where
    F: Fn(&AlgebraElement, &AlgebraElement) -> f64,
{
    let (x1, y1) = z.decompose();
    let (x2, y2) = w.decompose();
    m.a * base(&x1, &x2) + m.b * base(&y1, &y2) + m.c * (base(&x1, &y2) + base(&x2, &y1))
}

/// Trace form `½(a + b) Re Tr(ZW*) + ½ Re[(b − a + 2ic) Tr(ZW)]`.
pub fn inner_abc_trace(z: &AlgebraElement, w: &AlgebraElement, m: &MetricTriple) -> f64 {
    let t1 = (z.mat * w.mat.adjoint()).trace().re;
    let t2 = (c(m.b - m.a, 2.0 * m.c) * (z.mat * w.mat).trace()).re;
    0.5 * (m.a + m.b) * t1 + 0.5 * t2
}

/// An element of `SL(2,C)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElement {
    pub mat: M2,
}

impl GroupElement {
    pub fn new(mat: M2) -> Result<Self> {
        let det = mat.determinant();
        if (det - 1.0).norm() > DET_TOL * mat.norm().max(1.0).powi(2) {
            return Err(Error::Invalid(format!("group element has det = {det}, expected 1")));
        }
        Ok(Self { mat })
    }

    pub(crate) fn from_mat_unchecked(mat: M2) -> Self {
        Self { mat }
    }

    pub fn identity() -> Self {
        Self { mat: M2::identity() }
    }

    /// `diag(λ, 1/λ)`.
    pub fn diag(lambda: C64) -> Self {
        let o = c(0.0, 0.0);
        Self { mat: M2::new(lambda, o, o, lambda.inv()) }
    }

    /// `diag(e^{iθ}, e^{−iθ}) ∈ SU(2)`.
    pub fn torus(theta: f64) -> Self {
        Self::diag(C64::from_polar(1.0, theta))
    }

    pub fn det(&self) -> C64 {
        self.mat.determinant()
    }

    pub fn trace(&self) -> C64 {
        self.mat.trace()
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        (self.mat * self.mat.adjoint() - M2::identity()).norm() <= tol
    }

    /// Inverse using `det = 1`.
    pub fn inverse(&self) -> Self {
        let m = &self.mat;
        Self { mat: M2::new(m[(1, 1)], -m[(0, 1)], -m[(1, 0)], m[(0, 0)]) }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self { mat: self.mat * other.mat }
    }

    pub fn adjoint(&self) -> Self {
        Self { mat: self.mat.adjoint() }
    }

    /// Eigenvalues `λ, 1/λ` with `|λ| ≥ 1`.
    pub fn eigenvalues(&self) -> (C64, C64) {
        let tr = self.trace();
        let disc = (tr * tr - 4.0).sqrt();
        let l1 = (tr + disc) / 2.0;
        let l2 = (tr - disc) / 2.0;
        if l1.norm() >= l2.norm() {
            (l1, l2)
        } else {
            (l2, l1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_is_orthonormal_traceless_antihermitian() {
        let e = su2_basis();
        for a in 0..3 {
            assert!(e[a].mat.trace().norm() < 1e-15);
            assert!(e[a].is_in_k(1e-15));
            for b in 0..3 {
                let expected = if a == b { 1.0 } else { 0.0 };
                assert!((inner_k(&e[a], &e[b]) - expected).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn structure_constants() {
        // [e1, e2] = −(1/2)[σ1, σ2] = −iσ3 = −√2 e3, cyclically
        let e = su2_basis();
        let r = std::f64::consts::SQRT_2;
        for (a, b, cc) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            let lhs = e[a].bracket(&e[b]).mat;
            let rhs = e[cc].mat * C64::from(-r);
            assert!((lhs - rhs).norm() < 1e-15);
        }
    }

    #[test]
    fn pure_directions_of_abc() {
        let e = su2_basis();
        let m = MetricTriple::new(2.0, 3.0, 0.5).unwrap();
        assert!((inner_abc(&e[0], &e[0], &MetricTriple::new(1.0, 1.0, 0.0).unwrap()) - 1.0).abs() < 1e-15);
        assert!((inner_abc(&e[0].j(), &e[0].j(), &m) - 3.0).abs() < 1e-15);
        assert!((inner_abc(&e[1], &e[1].j(), &m) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn decomposition_recovers_element() {
        let z = AlgebraElement::from_basis_coords([c(0.3, -1.0), c(0.2, 0.5), c(-0.7, 0.1)]);
        let (x, y) = z.decompose();
        assert!(x.is_in_k(1e-15) && y.is_in_k(1e-15));
        assert!((x.add(&y.j()).mat - z.mat).norm() < 1e-15);
        let back = AlgebraElement::from_basis_coords(z.basis_coords());
        assert!((back.mat - z.mat).norm() < 1e-15);
    }

    #[test]
    fn closed_form_exp_matches_series() {
        let z = AlgebraElement::from_basis_coords([c(0.3, -0.4), c(0.2, 0.5), c(-0.7, 0.1)]);
        let g = z.exp();
        let mut term = M2::identity();
        let mut sum = M2::identity();
        for k in 1..40 {
            term = term * z.mat / C64::from(k as f64);
            sum += term;
        }
        assert!((g.mat - sum).norm() < 1e-14);
        assert!((g.det() - 1.0).norm() < 1e-14);
        let small = z.scale(1e-5).exp();
        let lin = M2::identity() + z.mat * C64::from(1e-5);
        assert!((small.mat - lin).norm() < 1e-9);
    }

    #[test]
    fn rejects_invalid_elements() {
        assert!(AlgebraElement::new(M2::identity()).is_err());
        assert!(GroupElement::new(M2::identity() * C64::from(2.0)).is_err());
        assert!(GroupElement::new(M2::identity()).is_ok());
    }
}
