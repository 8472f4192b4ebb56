//! Gauss rules and tensor-product integration.
//!
//! Node/weight generation is delegated to `gauss-quad`; this module caches
//! rules by order and builds the tensorised integrators used by the
//! Euclidean layer.

use std::collections::HashMap;
use std::num::NonZeroUsize;
use std::sync::{Arc, Mutex, OnceLock};

use gauss_quad::{GaussHermite, GaussLegendre};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::C64;

/// One-dimensional rule: `∫ w(x) f(x) dx ≈ Σ weights[i] f(nodes[i])`.
#[derive(Debug, Clone)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

type Cache = Mutex<HashMap<usize, Arc<Rule>>>;

fn cached(cache: &'static OnceLock<Cache>, order: usize, build: impl FnOnce() -> Rule) -> Arc<Rule> {
    let map = cache.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = map.lock().expect("quadrature cache poisoned");
    guard.entry(order).or_insert_with(|| Arc::new(build())).clone()
}

fn nonzero(order: usize) -> NonZeroUsize {
    NonZeroUsize::new(order.max(1)).unwrap()
}

/// Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(order: usize) -> Arc<Rule> {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    cached(&CACHE, order, || {
        let q = GaussLegendre::new(nonzero(order));
        let (mut nodes, mut weights): (Vec<f64>, Vec<f64>) = q.into_iter().unzip();
        sort_rule(&mut nodes, &mut weights);
        Rule { nodes, weights }
    })
}

/// Gauss–Hermite rule for the weight `e^{−x²}` on `R`.
pub fn gauss_hermite(order: usize) -> Arc<Rule> {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    cached(&CACHE, order, || {
        let q = GaussHermite::new(nonzero(order));
        let (mut nodes, mut weights): (Vec<f64>, Vec<f64>) = q.into_iter().unzip();
        sort_rule(&mut nodes, &mut weights);
        Rule { nodes, weights }
    })
}

fn sort_rule(nodes: &mut [f64], weights: &mut [f64]) {
    let mut idx: Vec<usize> = (0..nodes.len()).collect();
    idx.sort_by(|&i, &j| nodes[i].total_cmp(&nodes[j]));
    let n: Vec<f64> = idx.iter().map(|&i| nodes[i]).collect();
    let w: Vec<f64> = idx.iter().map(|&i| weights[i]).collect();
    nodes.copy_from_slice(&n);
    weights.copy_from_slice(&w);
}

/// Quadrature settings for the Euclidean integrators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadSpec {
    /// Nodes per axis.
    pub order: usize,
    /// Half-width of truncated boxes, in standard deviations of the dominant Gaussian.
    pub half_width_sd: f64,
    /// Accept a result when the refinement estimate is below this (relative to `max(1, |I|)`).
    pub tolerance: f64,
}

impl Default for QuadSpec {
    fn default() -> Self {
        Self { order: 64, half_width_sd: 8.0, tolerance: 1e-8 }
    }
}

/// Result of a refined quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: C64,
    pub error_estimate: f64,
}

/// An axis-aligned interval `[center − half_width, center + half_width]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub center: f64,
    pub half_width: f64,
}

impl Interval {
    pub fn new(center: f64, half_width: f64) -> Self {
        Self { center, half_width }
    }
}

/// Tensor Gauss–Legendre integral of `f` over a box in `R^d`.
pub fn integrate_box<F>(boxes: &[Interval], order: usize, mut f: F) -> C64
where
    F: FnMut(&[f64]) -> C64,
{
    let rule = gauss_legendre(order);
    let d = boxes.len();
    let mut point = vec![0.0; d];
    let mut idx = vec![0usize; d];
    let mut acc = C64::new(0.0, 0.0);
    if d == 0 {
        return f(&point);
    }
    let n = rule.len();
    loop {
        let mut w = 1.0;
        for k in 0..d {
            let b = boxes[k];
            point[k] = b.center + b.half_width * rule.nodes[idx[k]];
            w *= b.half_width * rule.weights[idx[k]];
        }
        acc += f(&point) * w;
        // odometer increment
        let mut k = 0;
        loop {
            idx[k] += 1;
            if idx[k] < n {
                break;
            }
            idx[k] = 0;
            k += 1;
            if k == d {
                return acc;
            }
        }
    }
}

/// [`integrate_box`] at `order` and `2·order`; returns the finer value with
/// the difference as error estimate, and an error if that estimate exceeds
/// the spec's tolerance.
pub fn integrate_box_refined<F>(boxes: &[Interval], spec: &QuadSpec, mut f: F) -> Result<Quadrature>
where
    F: FnMut(&[f64]) -> C64,
{
    let coarse = integrate_box(boxes, spec.order, &mut f);
    let fine = integrate_box(boxes, 2 * spec.order, &mut f);
    let error_estimate = (fine - coarse).norm();
    let scale = fine.norm().max(1.0);
    if error_estimate > spec.tolerance * scale || !error_estimate.is_finite() {
        return Err(Error::Quadrature { estimate: error_estimate, tolerance: spec.tolerance * scale });
    }
    Ok(Quadrature { value: fine, error_estimate })
}

/// `E[f(X)]` for `X ~ N(mean, sd²)` via Gauss–Hermite.
pub fn gaussian_expectation_1d<F>(mean: f64, sd: f64, order: usize, mut f: F) -> C64
where
    F: FnMut(f64) -> C64,
{
    let rule = gauss_hermite(order);
    let scale = std::f64::consts::SQRT_2 * sd;
    let norm = std::f64::consts::PI.sqrt();
    rule.nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&x, &w)| f(mean + scale * x) * (w / norm))
        .sum()
}

/// `E[f(X)]` for `X ~ N(0, cov)` in `R^d` with `cov = L Lᵀ`, via a tensor
/// Gauss–Hermite rule in whitened coordinates.
pub fn gaussian_expectation<F>(chol: &[Vec<f64>], order: usize, mut f: F) -> C64
where
    F: FnMut(&[f64]) -> C64,
{
    let rule = gauss_hermite(order);
    let d = chol.len();
    let n = rule.len();
    let norm = std::f64::consts::PI.sqrt().powi(d as i32);
    let mut idx = vec![0usize; d];
    let mut white = vec![0.0; d];
    let mut point = vec![0.0; d];
    let mut acc = C64::new(0.0, 0.0);
    loop {
        let mut w = 1.0;
        for k in 0..d {
            white[k] = std::f64::consts::SQRT_2 * rule.nodes[idx[k]];
            w *= rule.weights[idx[k]];
        }
        for (i, p) in point.iter_mut().enumerate() {
            *p = (0..=i).map(|j| chol[i][j] * white[j]).sum();
        }
        acc += f(&point) * w;
        let mut k = 0;
        loop {
            if k == d {
                return acc / norm;
            }
            idx[k] += 1;
            if idx[k] < n {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn legendre_integrates_polynomials_exactly() {
        let v = integrate_box(&[Interval::new(0.5, 0.5)], 8, |x| C64::from(x[0].powi(7)));
        assert_abs_diff_eq!(v.re, 1.0 / 8.0, epsilon = 1e-15);
    }

    #[test]
    fn hermite_moments() {
        for (k, expected) in [(0, 1.0), (2, 4.0), (4, 3.0 * 16.0), (6, 15.0 * 64.0)] {
            let v = gaussian_expectation_1d(0.0, 2.0, 64, |x| C64::from(x.powi(k)));
            assert_abs_diff_eq!(v.re, expected, epsilon = 1e-10 * expected);
        }
    }

    #[test]
    fn correlated_gaussian_second_moment() {
        // cov = [[2, 0.5], [0.5, 1]]
        let l00 = 2f64.sqrt();
        let l10 = 0.5 / l00;
        let l11 = (1.0 - l10 * l10).sqrt();
        let chol = vec![vec![l00, 0.0], vec![l10, l11]];
        let v = gaussian_expectation(&chol, 16, |p| C64::from(p[0] * p[1]));
        assert_abs_diff_eq!(v.re, 0.5, epsilon = 1e-13);
    }

    #[test]
    fn refined_reports_failure() {
        let spec = QuadSpec { order: 4, half_width_sd: 8.0, tolerance: 1e-12 };
        let r = integrate_box_refined(&[Interval::new(0.0, 10.0)], &spec, |x| C64::from((-x[0] * x[0]).exp()));
        assert!(matches!(r, Err(Error::Quadrature { .. })));
    }
}
