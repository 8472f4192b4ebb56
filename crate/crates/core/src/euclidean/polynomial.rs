//! Sparse multivariate polynomials with complex coefficients.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::C64;

/// `Σ c_α x^α` over multi-indices `α ∈ N^d`. Zero coefficients are dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    dim: usize,
    terms: BTreeMap<Vec<u32>, C64>,
}

impl Polynomial {
    pub fn zero(dim: usize) -> Self {
        assert!(dim >= 1, "polynomial dimension must be at least 1");
        Self { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: impl Into<C64>) -> Self {
        Self::monomial(vec![0; dim], c)
    }

    pub fn monomial(exponents: Vec<u32>, c: impl Into<C64>) -> Self {
        let mut p = Self::zero(exponents.len());
        p.add_term(exponents, c.into());
        p
    }

    /// The coordinate function `x_j`.
    pub fn coordinate(dim: usize, j: usize) -> Self {
        let mut e = vec![0; dim];
        e[j] = 1;
        Self::monomial(e, 1.0)
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Vec<u32>, C64)>) -> Self {
        let mut p = Self::zero(dim);
        for (e, c) in terms {
            assert_eq!(e.len(), dim, "exponent length must equal dimension");
            p.add_term(e, c);
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], C64)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), *c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> C64 {
        self.terms.get(exponents).copied().unwrap_or_default()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    fn add_term(&mut self, exponents: Vec<u32>, c: C64) {
        if c == C64::new(0.0, 0.0) {
            return;
        }
        match self.terms.entry(exponents) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == C64::new(0.0, 0.0) {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn scale(&self, c: C64) -> Self {
        Self::from_terms(self.dim, self.terms.iter().map(|(e, v)| (e.clone(), v * c)))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), *c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut out = Self::zero(self.dim);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// `∂²/∂x_j²`.
    pub fn second_partial(&self, j: usize) -> Self {
        let mut out = Self::zero(self.dim);
        for (e, c) in &self.terms {
            let k = e[j];
            if k >= 2 {
                let mut e2 = e.clone();
                e2[j] -= 2;
                out.add_term(e2, c * (k * (k - 1)) as f64);
            }
        }
        out
    }

    /// `Δ = Σ_j ∂²/∂x_j²`.
    pub fn laplacian(&self) -> Self {
        (0..self.dim).fold(Self::zero(self.dim), |acc, j| acc.add(&self.second_partial(j)))
    }

    /// Evaluation at a complex point; for a polynomial this is its holomorphic extension.
    pub fn eval(&self, z: &[C64]) -> C64 {
        assert_eq!(z.len(), self.dim);
        self.terms
            .iter()
            .map(|(e, c)| e.iter().zip(z).fold(*c, |acc, (&k, zj)| acc * zj.powu(k)))
            .sum()
    }

    pub fn eval_real(&self, x: &[f64]) -> C64 {
        let z: Vec<C64> = x.iter().map(|&v| C64::from(v)).collect();
        self.eval(&z)
    }

    /// Largest coefficient difference against another polynomial.
    pub fn max_coeff_diff(&self, other: &Self) -> f64 {
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .map(|k| (self.coefficient(k) - other.coefficient(k)).norm())
            .fold(0.0, f64::max)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({}{:+}i)", c.re, c.im)?;
            for (j, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "·x{j}")?,
                    _ => write!(f, "·x{j}^{k}")?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laplacian_of_quartic() {
        let p = Polynomial::monomial(vec![4, 2], 1.0);
        let l = p.laplacian();
        assert_eq!(l.coefficient(&[2, 2]), C64::from(12.0));
        assert_eq!(l.coefficient(&[4, 0]), C64::from(2.0));
        assert_eq!(l.num_terms(), 2);
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = Polynomial::coordinate(1, 0);
        let q = p.add(&p.scale(C64::from(-1.0)));
        assert!(q.is_zero());
    }

    #[test]
    fn product_and_eval() {
        let x = Polynomial::coordinate(2, 0);
        let y = Polynomial::coordinate(2, 1);
        let p = x.add(&y).mul(&x.add(&y.scale(C64::from(-1.0))));
        let z = [C64::new(1.0, 2.0), C64::new(0.5, -1.0)];
        let expected = z[0] * z[0] - z[1] * z[1];
        assert!((p.eval(&z) - expected).norm() < 1e-15);
    }
}
