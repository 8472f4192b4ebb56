//! Experiment drivers shared by the CLI and the acceptance tests.
//!
//! Each driver validates its whole parameter grid up front, evaluates grid
//! points in parallel and assembles a [`Report`] whose metrics each carry a
//! tolerance and a pass flag.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euclidean::{self, ComplexPoint, CoherentStateParams, Polynomial};
use crate::linalg::{op_norm, random_ginibre};
use crate::opcalc::{self, MatrixEntry, TensorConjRep};
use crate::params::{phi, phi_inverse, MetricTriple, TransformParams};
use crate::quadrature::QuadSpec;
use crate::sampling::{self, SamplerConfig};
use crate::su2::{self, heat_kernel_c, heat_kernel_k, GroupElement, HeatSeries};
use crate::tolerances as tol;
use crate::{ComplexTime, C64};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// pass iff `value ≤ tolerance`
    AtMost,
    /// pass iff `value ≥ tolerance`
    AtLeast,
    /// pass iff `|value − target| ≤ tolerance·|target|`
    RelativeTo,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metric {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub comparison: Comparison,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<f64>,
    pub pass: bool,
}

impl Metric {
    pub fn at_most(name: &str, value: f64, tolerance: f64) -> Self {
        // NaN never passes
        let pass = value <= tolerance;
        Self { name: name.into(), value, tolerance, comparison: Comparison::AtMost, target: None, pass }
    }

    pub fn at_least(name: &str, value: f64, tolerance: f64) -> Self {
        let pass = value >= tolerance;
        Self { name: name.into(), value, tolerance, comparison: Comparison::AtLeast, target: None, pass }
    }

    pub fn relative_to(name: &str, value: f64, target: f64, tolerance: f64) -> Self {
        let pass = (value - target).abs() <= tolerance * target.abs();
        Self { name: name.into(), value, tolerance, comparison: Comparison::RelativeTo, target: Some(target), pass }
    }
}

/// The swept grid, one row per evaluated point.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Grid {
    fn new(columns: &[&str]) -> Self {
        Self { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub experiment: String,
    pub inputs: serde_json::Value,
    pub metrics: Vec<Metric>,
    pub pass: bool,
    #[serde(skip)]
    pub grid: Grid,
}

impl Report {
    fn new<C: Serialize>(experiment: &str, inputs: &C, metrics: Vec<Metric>, grid: Grid) -> Self {
        let pass = metrics.iter().all(|m| m.pass);
        Self {
            schema_version: SCHEMA_VERSION,
            experiment: experiment.into(),
            inputs: serde_json::to_value(inputs).unwrap_or(serde_json::Value::Null),
            metrics,
            pass,
            grid,
        }
    }

    pub fn metric(&self, name: &str) -> Option<&Metric> {
        self.metrics.iter().find(|m| m.name == name)
    }
}

/// A point `(s, t, u)` of the parameter grid.
pub type GridPoint = (f64, f64, f64);

/// Twenty points inside the disk: for each `s`, `τ ∈ {s, s + 0.5si, 0.5s − 0.4si, 1.5s + 0.3si}`.
pub fn default_grid() -> Vec<GridPoint> {
    let mut g = Vec::with_capacity(20);
    for s in [0.5, 1.0, 2.0, 3.0, 4.0] {
        g.push((s, s, 0.0));
        g.push((s, s, 0.5 * s));
        g.push((s, 0.5 * s, -0.4 * s));
        g.push((s, 1.5 * s, 0.3 * s));
    }
    g
}

/// Rejects the whole grid if any point lies outside the disk.
pub fn validate_grid(grid: &[GridPoint]) -> Result<Vec<TransformParams>> {
    if grid.is_empty() {
        return Err(Error::Invalid("parameter grid is empty".into()));
    }
    grid.iter().map(|&(s, t, u)| TransformParams::validated(s, t, u)).collect()
}

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn max_of(it: impl IntoIterator<Item = f64>) -> f64 {
    // NaN propagates so that it fails the comparison
    it.into_iter().fold(0.0, |m, v| if v.is_nan() || m.is_nan() { f64::NAN } else { m.max(v) })
}

/// Number of indices where the sequence fails to strictly decrease.
fn decrease_violations(v: &[f64]) -> f64 {
    v.windows(2).filter(|w| w[1].partial_cmp(&w[0]) != Some(std::cmp::Ordering::Less)).count() as f64
}

fn exponents(dim: usize, max_degree: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|e: Vec<u32>| {
                let used: u32 = e.iter().sum();
                (0..=max_degree - used).map(move |k| {
                    let mut e = e.clone();
                    e.push(k);
                    e
                })
            })
            .collect();
    }
    out
}

fn random_polynomial(dim: usize, max_degree: u32, rng: &mut ChaCha8Rng) -> Polynomial {
    let terms: Vec<(Vec<u32>, C64)> = exponents(dim, max_degree)
        .into_iter()
        .map(|e| (e, C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))))
        .collect();
    Polynomial::from_terms(dim, terms)
}

// ---------------------------------------------------------------- euclid-isometry

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EuclidIsometryConfig {
    pub dims: Vec<usize>,
    pub max_degree: u32,
    pub polys_per_point: usize,
    pub grid: Vec<GridPoint>,
    pub seed: u64,
}

impl Default for EuclidIsometryConfig {
    fn default() -> Self {
        Self { dims: vec![1, 2], max_degree: 6, polys_per_point: 3, grid: default_grid(), seed: 1 }
    }
}

/// `‖e^{τΔ/2} f‖²_{μ_{s,τ}}` against `‖f‖²_{ρ_s}` for random polynomials, both by
/// exact Gaussian moments.
pub fn euclid_isometry(cfg: &EuclidIsometryConfig) -> Result<Report> {
    let params = validate_grid(&cfg.grid)?;
    if cfg.dims.contains(&0) {
        return Err(Error::Invalid("dimension must be at least 1".into()));
    }
    let mut jobs = Vec::new();
    for (gi, p) in params.iter().enumerate() {
        for &d in &cfg.dims {
            for k in 0..cfg.polys_per_point {
                jobs.push((gi, *p, d, k));
            }
        }
    }
    let rows: Vec<Vec<f64>> = jobs
        .par_iter()
        .map(|&(gi, p, d, k)| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream((gi * 1000 + d * 100 + k) as u64);
            let f = random_polynomial(d, cfg.max_degree, &mut rng);
            let big_f = euclidean::heat_apply_poly(&f, p.tau.as_complex());
            let a = euclidean::poly_norm_rho_s(&f, p.s)?;
            let b = euclidean::poly_norm_mu_stau(&big_f, &p)?;
            Ok(vec![p.s, p.t(), p.u(), d as f64, f.degree() as f64, a, b, rel_err(b, a)])
        })
        .collect::<Result<_>>()?;
    let worst = max_of(rows.iter().map(|r| r[7]));
    let mut grid = Grid::new(&["s", "t", "u", "dim", "degree", "norm_rho_s", "norm_mu_stau", "rel_err"]);
    grid.rows = rows;
    Ok(Report::new("euclid-isometry", cfg, vec![Metric::at_most("max_rel_err", worst, tol::EUCLID_ISOMETRY_REL)], grid))
}

// ---------------------------------------------------------------- euclid-ratio

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioPoint {
    pub s: f64,
    pub t: f64,
    pub u: f64,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EuclidRatioConfig {
    pub points: Vec<RatioPoint>,
    pub quad: QuadSpec,
    /// `z`-grid for the pointwise bound `|F(z)|² ≤ ratio(z)·‖F‖²` with `F = z²`.
    pub bound_grid: Vec<f64>,
}

impl Default for EuclidRatioConfig {
    fn default() -> Self {
        let raw = [
            (2.0, 1.0, 0.5, 0.7, 0.4),
            (1.0, 1.0, 0.0, 0.0, 0.0),
            (1.0, 1.0, 0.0, 1.0, -1.0),
            (1.0, 0.5, 0.6, -0.3, 0.8),
            (0.5, 0.4, -0.2, 0.2, 0.2),
            (3.0, 2.0, 2.0, 1.5, -0.5),
            (3.0, 5.0, -1.0, -1.0, 1.0),
            (4.0, 1.0, 0.0, 2.0, 2.0),
            (1.5, 2.5, 0.3, 0.1, -1.2),
            (2.0, 3.0, -1.5, -0.8, 0.0),
        ];
        Self {
            points: raw.iter().map(|&(s, t, u, re, im)| RatioPoint { s, t, u, re, im }).collect(),
            quad: QuadSpec::default(),
            bound_grid: vec![-2.0, -1.0, -0.3, 0.0, 0.5, 1.2, 2.5],
        }
    }
}

/// The closed-form `∫|ρ_C|²/ρ_s` against quadrature (`d = 1`), the mass of
/// `μ_{s,τ}`, the `τ = s` special case, and the pointwise bound on `F = z²`.
pub fn euclid_ratio(cfg: &EuclidRatioConfig) -> Result<Report> {
    let params: Vec<TransformParams> = cfg
        .points
        .iter()
        .map(|q| TransformParams::validated(q.s, q.t, q.u))
        .collect::<Result<_>>()?;
    let rows: Vec<Vec<f64>> = cfg
        .points
        .par_iter()
        .zip(&params)
        .map(|(q, p)| {
            let z = ComplexPoint::new(vec![q.re], vec![q.im])?;
            let quad = euclidean::norm_ratio_quadrature(&z, p, &cfg.quad)?.value.re;
            let closed = euclidean::norm_ratio_closed_form(&z, p)?;
            let mass = euclidean::mu_stau_mass(p, 1, &cfg.quad)?.value.re;
            Ok(vec![q.s, q.t, q.u, q.re, q.im, quad, closed, rel_err(quad, closed), (mass - 1.0).abs()])
        })
        .collect::<Result<_>>()?;

    // μ_{t,t} = (πt)^{-1} e^{-|z|²/t}
    let mut special: f64 = 0.0;
    for t in [0.3, 1.0, 2.5] {
        let p = TransformParams::validated(t, t, 0.0)?;
        for &x in &cfg.bound_grid {
            for &y in &cfg.bound_grid {
                let v = euclidean::mu_stau_density(&ComplexPoint::new(vec![x], vec![y])?, &p)?;
                let w = (-(x * x + y * y) / t).exp() / (PI * t);
                special = special.max((v - w).abs());
            }
        }
    }

    let mut violations = 0.0;
    let big_f = Polynomial::monomial(vec![2], 1.0);
    for p in &params {
        let norm = euclidean::poly_norm_mu_stau(&big_f, p)?;
        for &x in &cfg.bound_grid {
            for &y in &cfg.bound_grid {
                let z = ComplexPoint::new(vec![x], vec![y])?;
                if big_f.eval(&z.coords()).norm_sqr() > euclidean::norm_ratio_closed_form(&z, p)? * norm {
                    violations += 1.0;
                }
            }
        }
    }

    let metrics = vec![
        Metric::at_most("ratio_max_rel_err", max_of(rows.iter().map(|r| r[7])), tol::EUCLID_RATIO_REL),
        Metric::at_most("mu_mass_max_abs_err", max_of(rows.iter().map(|r| r[8])), tol::MU_MASS_ABS),
        Metric::at_most("mu_special_case_max_abs_err", special, tol::MU_SPECIAL_CASE_ABS),
        Metric::at_most("pointwise_bound_violations", violations, 0.0),
    ];
    let mut grid = Grid::new(&["s", "t", "u", "re_z", "im_z", "quadrature", "closed_form", "rel_err", "mu_mass_err"]);
    grid.rows = rows;
    Ok(Report::new("euclid-ratio", cfg, metrics, grid))
}

// ---------------------------------------------------------------- uncertainty

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UncertaintyConfig {
    pub n_states: usize,
    pub seed: u64,
    pub quad: QuadSpec,
}

impl Default for UncertaintyConfig {
    fn default() -> Self {
        Self { n_states: 10, seed: 3, quad: QuadSpec::default() }
    }
}

/// Schrödinger defect for random complex-quadratic Gaussian packets.
pub fn uncertainty(cfg: &UncertaintyConfig) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let states: Vec<CoherentStateParams> = (0..cfg.n_states)
        .map(|_| CoherentStateParams {
            a: rng.gen_range(-2.0..2.0),
            b: rng.gen_range(0.2..3.0),
            c: rng.gen_range(-1.0..1.0),
            dphase: rng.gen_range(-1.0..1.0),
        })
        .collect();
    let rows: Vec<Vec<f64>> = states
        .par_iter()
        .map(|c| {
            let r = euclidean::uncertainty_check(c, &cfg.quad)?;
            Ok(vec![c.a, c.b, c.c, c.dphase, r.var_x, r.var_p, r.cov, r.defect])
        })
        .collect::<Result<_>>()?;
    let worst = max_of(rows.iter().map(|r| r[7].abs()));
    let mut grid = Grid::new(&["a", "b", "c", "d", "var_x", "var_p", "cov", "defect"]);
    grid.rows = rows;
    Ok(Report::new("uncertainty", cfg, vec![Metric::at_most("max_abs_defect", worst, tol::UNCERTAINTY_DEFECT_ABS)], grid))
}

// ---------------------------------------------------------------- su2-isometry

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McCase {
    pub n: usize,
    pub s: f64,
    pub t: f64,
    pub u: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Su2IsometryConfig {
    pub dims: Vec<usize>,
    pub matrices_per_dim: usize,
    pub grid: Vec<GridPoint>,
    pub seed: u64,
    /// Monte Carlo cross-check cases; skipped when `sampler.n_paths == 0`.
    pub mc_cases: Vec<McCase>,
    pub sampler: SamplerConfig,
}

impl Default for Su2IsometryConfig {
    fn default() -> Self {
        let mc_cases = [(2, 1.0, 1.0, 0.0), (2, 2.0, 1.0, 0.7), (2, 0.5, 0.4, -0.2), (3, 1.0, 1.0, 0.3), (3, 1.0, 0.5, 0.0), (4, 0.5, 0.5, 0.1)]
            .iter()
            .map(|&(n, s, t, u)| McCase { n, s, t, u })
            .collect();
        Self {
            dims: (1..=5).collect(),
            matrices_per_dim: 5,
            grid: default_grid(),
            seed: 7,
            mc_cases,
            sampler: SamplerConfig { n_paths: 100_000, n_steps: 200, seed: 7, antithetic: false },
        }
    }
}

fn random_entries(n: usize, count: usize, seed: u64) -> Vec<MatrixEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(n as u64);
    let rep = su2::irrep(n);
    (0..count).map(|_| MatrixEntry { rep: rep.clone(), a: random_ginibre(n, &mut rng) }).collect()
}

fn check_dims(dims: &[usize], max: usize) -> Result<()> {
    match dims.iter().find(|&&n| n == 0 || n > max) {
        Some(&n) => Err(Error::Invalid(format!("representation dimension {n} outside 1..={max}"))),
        None if dims.is_empty() => Err(Error::Invalid("no representation dimensions given".into())),
        None => Ok(()),
    }
}

/// Exact isometry, Laplacian decomposition and commutator residuals.
pub fn su2_isometry_exact(cfg: &Su2IsometryConfig) -> Result<Report> {
    let params = validate_grid(&cfg.grid)?;
    check_dims(&cfg.dims, 8)?;
    let mut jobs = Vec::new();
    for &n in &cfg.dims {
        for p in &params {
            jobs.push((n, *p));
        }
    }
    let rows: Vec<Vec<f64>> = jobs
        .par_iter()
        .map(|&(n, p)| {
            let entries = random_entries(n, cfg.matrices_per_dim, cfg.seed);
            let mut iso: f64 = 0.0;
            for f in &entries {
                let a = opcalc::norm_sq_rho_s(f, p.s)?;
                let b = opcalc::norm_sq_mu_stau(f, &p)?;
                iso = iso.max(rel_err(b, a));
            }
            let sigma = TensorConjRep::new(&su2::irrep(n));
            let dec = opcalc::decomposition_residual(&sigma, &p)?;
            let comm = opcalc::commutator_suite(&sigma, &p)?;
            Ok(vec![n as f64, p.s, p.t(), p.u(), iso, dec, comm])
        })
        .collect::<Result<_>>()?;
    let metrics = vec![
        Metric::at_most("isometry_max_rel_err", max_of(rows.iter().map(|r| r[4])), tol::SU2_ISOMETRY_REL),
        Metric::at_most("decomposition_max_residual", max_of(rows.iter().map(|r| r[5])), tol::DECOMPOSITION_ABS),
        Metric::at_most("commutator_max_norm", max_of(rows.iter().map(|r| r[6])), tol::DECOMPOSITION_ABS),
    ];
    let mut grid = Grid::new(&["n", "s", "t", "u", "isometry_rel_err", "decomposition_residual", "commutator_norm"]);
    grid.rows = rows;
    Ok(Report::new("su2-isometry", cfg, metrics, grid))
}

/// Monte Carlo `E|M_τ f(Z)|²` against the exact norm, one random entry per case.
pub fn su2_isometry_mc(cfg: &Su2IsometryConfig) -> Result<Report> {
    let params: Vec<TransformParams> =
        cfg.mc_cases.iter().map(|c| TransformParams::validated(c.s, c.t, c.u)).collect::<Result<_>>()?;
    check_dims(&cfg.mc_cases.iter().map(|c| c.n).collect::<Vec<_>>(), 8)?;
    let mut rows = Vec::new();
    for (c, p) in cfg.mc_cases.iter().zip(&params) {
        let f = random_entries(c.n, 1, cfg.seed ^ 0x5eed).remove(0);
        let exact = opcalc::norm_sq_mu_stau(&f, p)?;
        let est = sampling::mc_norm_sq(&f, p, &cfg.sampler)?;
        rows.push(vec![c.n as f64, c.s, c.t, c.u, exact, est.mean, est.stderr, est.z_score_exact(exact)]);
    }
    let metrics = vec![Metric::at_most("mc_max_z_score", max_of(rows.iter().map(|r| r[7])), tol::MC_SIGMAS)];
    let mut grid = Grid::new(&["n", "s", "t", "u", "exact", "mc_mean", "mc_stderr", "z_score"]);
    grid.rows = rows;
    Ok(Report::new("su2-isometry-mc", cfg, metrics, grid))
}

/// Exact part, followed by the Monte Carlo part when `sampler.n_paths > 0`.
pub fn su2_isometry(cfg: &Su2IsometryConfig) -> Result<Report> {
    let mut report = su2_isometry_exact(cfg)?;
    if cfg.sampler.n_paths > 0 && !cfg.mc_cases.is_empty() {
        let mc = su2_isometry_mc(cfg)?;
        report.metrics.extend(mc.metrics);
        report.pass = report.metrics.iter().all(|m| m.pass);
        report.grid.columns.extend(["mc_exact", "mc_mean", "mc_stderr", "mc_z_score"].map(String::from));
        let width = report.grid.columns.len();
        for row in &mut report.grid.rows {
            row.resize(width, f64::NAN);
        }
        for r in mc.grid.rows {
            let mut row = vec![f64::NAN; width];
            row[..4].copy_from_slice(&r[..4]);
            row[width - 4..].copy_from_slice(&r[4..]);
            report.grid.rows.push(row);
        }
    }
    Ok(report)
}

// ---------------------------------------------------------------- transform-equiv

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransformEquivConfig {
    pub dims: Vec<usize>,
    pub n_points: usize,
    pub max_log_norm: f64,
    /// `(t, u)` pairs.
    pub taus: Vec<(f64, f64)>,
    pub order: usize,
    pub seed: u64,
}

impl Default for TransformEquivConfig {
    fn default() -> Self {
        Self { dims: vec![1, 2, 3], n_points: 5, max_log_norm: 0.5, taus: vec![(1.0, 0.0), (1.0, 0.5), (1.0, -0.5)], order: 48, seed: 11 }
    }
}

/// `exp(X)` with `X` of coordinate norm `r`: a random direction in `sl(2,C)`.
fn random_group_point(rng: &mut ChaCha8Rng, max_norm: f64) -> GroupElement {
    let x = su2::random_algebra_element(rng);
    let norm = x.basis_coords().iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let r = rng.gen_range(0.2..=1.0) * max_norm;
    x.scale(r / norm).exp()
}

/// Haar convolution `∫_K ρ_C(τ, z k⁻¹) f(k) dk` against `(M_τ f)(z)`.
pub fn transform_equiv(cfg: &TransformEquivConfig) -> Result<Report> {
    check_dims(&cfg.dims, 6)?;
    let taus: Vec<ComplexTime> = cfg.taus.iter().map(|&(t, u)| ComplexTime::new(t, u)).collect();
    for t in &taus {
        t.check_right_half_plane()?;
    }
    if cfg.max_log_norm <= 0.0 {
        return Err(Error::NonPositive { name: "max_log_norm", value: cfg.max_log_norm });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let points: Vec<GroupElement> = (0..cfg.n_points).map(|_| random_group_point(&mut rng, cfg.max_log_norm)).collect();
    let entries: Vec<MatrixEntry> = cfg.dims.iter().map(|&n| random_entries(n, 1, cfg.seed).remove(0)).collect();
    let q = su2::haar_quadrature(cfg.order);
    // f on the nodes is shared across z and τ
    let f_nodes: Vec<Vec<C64>> = entries.iter().map(|f| q.nodes.iter().map(|k| f.eval(k)).collect()).collect();
    let series = HeatSeries::default();

    let mut jobs = Vec::new();
    for (ti, _) in taus.iter().enumerate() {
        for (zi, _) in points.iter().enumerate() {
            jobs.push((ti, zi));
        }
    }
    let blocks: Vec<Vec<Vec<f64>>> = jobs
        .par_iter()
        .map(|&(ti, zi)| {
            let tau = taus[ti];
            let z = points[zi];
            let kernel: Vec<C64> =
                q.nodes.iter().map(|k| heat_kernel_c(tau, &z.mul(&k.inverse()), &series)).collect::<Result<_>>()?;
            let mut rows = Vec::new();
            for (fi, f) in entries.iter().enumerate() {
                let quad: C64 = kernel.iter().zip(&f_nodes[fi]).zip(&q.weights).map(|((r, v), w)| r * v * *w).sum();
                let exact = opcalc::transform_me(f, tau.as_complex()).eval(&z);
                let err = (quad - exact).norm() / exact.norm();
                rows.push(vec![f.rep.dim() as f64, tau.t, tau.u, zi as f64, exact.re, exact.im, quad.re, quad.im, err]);
            }
            Ok(rows)
        })
        .collect::<Result<_>>()?;
    let rows: Vec<Vec<f64>> = blocks.into_iter().flatten().collect();
    let metrics = vec![Metric::at_most("max_rel_err", max_of(rows.iter().map(|r| r[8])), tol::TRANSFORM_EQUIV_REL)];
    let mut grid = Grid::new(&["n", "t", "u", "z_index", "exact_re", "exact_im", "quad_re", "quad_im", "rel_err"]);
    grid.rows = rows;
    Ok(Report::new("transform-equiv", cfg, metrics, grid))
}

// ---------------------------------------------------------------- heatk-properties

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeatkPropertiesConfig {
    pub mass_times: Vec<f64>,
    pub mass_order: usize,
    pub semigroup: (f64, f64),
    /// The semigroup is checked at `exp(x_coeff · e₁)`.
    pub x_coeff: f64,
    pub trend_times: Vec<f64>,
    pub trend_order: usize,
    pub symmetry_trials: usize,
    pub seed: u64,
}

impl Default for HeatkPropertiesConfig {
    fn default() -> Self {
        Self {
            mass_times: vec![0.5, 1.0, 2.0],
            mass_order: 48,
            semigroup: (0.5, 0.5),
            x_coeff: 0.3,
            trend_times: vec![0.5, 0.1, 0.02],
            trend_order: 96,
            symmetry_trials: 50,
            seed: 5,
        }
    }
}

/// Mass, semigroup, inversion/conjugation symmetry and the approximate-identity trend.
pub fn heatk_properties(cfg: &HeatkPropertiesConfig) -> Result<Report> {
    for &t in cfg.mass_times.iter().chain(&cfg.trend_times).chain([cfg.semigroup.0, cfg.semigroup.1].iter()) {
        if t <= 0.0 {
            return Err(Error::NonPositive { name: "t", value: t });
        }
    }
    let series = HeatSeries::default();
    let mut grid = Grid::new(&["check", "t", "value", "error"]);

    let q = su2::haar_quadrature(cfg.mass_order);
    let masses: Vec<f64> = cfg
        .mass_times
        .par_iter()
        .map(|&t| {
            let mut m = 0.0;
            for (k, w) in q.nodes.iter().zip(&q.weights) {
                m += heat_kernel_k(t, k, &series)? * w;
            }
            Ok(m)
        })
        .collect::<Result<_>>()?;
    for (&t, &m) in cfg.mass_times.iter().zip(&masses) {
        grid.rows.push(vec![0.0, t, m, (m - 1.0).abs()]);
    }
    let mass_err = max_of(masses.iter().map(|m| (m - 1.0).abs()));

    let (s, t) = cfg.semigroup;
    let x = su2::su2_basis()[0].scale(cfg.x_coeff).exp();
    let mut conv = 0.0;
    for (y, w) in q.nodes.iter().zip(&q.weights) {
        conv += heat_kernel_k(s, &x.mul(&y.inverse()), &series)? * heat_kernel_k(t, y, &series)? * w;
    }
    let direct = heat_kernel_k(s + t, &x, &series)?;
    let semigroup_err = (conv - direct).abs();
    grid.rows.push(vec![1.0, s + t, conv, semigroup_err]);

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut sym: f64 = 0.0;
    for _ in 0..cfg.symmetry_trials {
        let k = su2::haar_sample(&mut rng);
        let g = su2::haar_sample(&mut rng);
        let t = rng.gen_range(0.1..2.0);
        let a = heat_kernel_k(t, &k, &series)?;
        sym = sym.max((a - heat_kernel_k(t, &k.inverse(), &series)?).abs());
        sym = sym.max((a - heat_kernel_k(t, &g.mul(&k).mul(&g.inverse()), &series)?).abs());
        let z = random_group_point(&mut rng, 0.8);
        let tau = ComplexTime::new(t, rng.gen_range(-1.0..1.0));
        let c = heat_kernel_c(tau, &z, &series)?;
        sym = sym.max((c - heat_kernel_c(tau, &g.mul(&z).mul(&g.inverse()), &series)?).norm());
    }
    grid.rows.push(vec![2.0, f64::NAN, f64::NAN, sym]);

    // ∫ ρ_t f → f(e) for matrix entries
    let qt = su2::haar_quadrature(cfg.trend_order);
    let entries: Vec<MatrixEntry> = [2, 3].iter().map(|&n| random_entries(n, 1, cfg.seed).remove(0)).collect();
    let mut violations = 0.0;
    for f in &entries {
        let at_e = f.a.trace();
        let f_nodes: Vec<C64> = qt.nodes.iter().map(|k| f.eval(k)).collect();
        let errs: Vec<f64> = cfg
            .trend_times
            .par_iter()
            .map(|&t| {
                let mut v = C64::from(0.0);
                for ((k, w), fk) in qt.nodes.iter().zip(&qt.weights).zip(&f_nodes) {
                    v += fk * (heat_kernel_k(t, k, &series)? * w);
                }
                Ok((v - at_e).norm())
            })
            .collect::<Result<_>>()?;
        violations += decrease_violations(&errs);
        for (&t, e) in cfg.trend_times.iter().zip(errs) {
            grid.rows.push(vec![3.0 + f.rep.dim() as f64 / 10.0, t, f64::NAN, e]);
        }
    }

    let metrics = vec![
        Metric::at_most("mass_max_abs_err", mass_err, tol::HEAT_MASS_ABS),
        Metric::at_most("semigroup_abs_err", semigroup_err, tol::HEAT_SEMIGROUP_ABS),
        Metric::at_most("symmetry_max_abs_err", sym, tol::HEAT_SYMMETRY_ABS),
        Metric::at_most("approx_identity_trend_violations", violations, 0.0),
    ];
    Ok(Report::new("heatk-properties", cfg, metrics, grid))
}

// ---------------------------------------------------------------- nu-invariance

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NuInvarianceConfig {
    pub t: f64,
    pub variants: Vec<(f64, f64)>,
    /// A different `t` whose mean must be distinguishable (sanity control).
    pub control_t: f64,
    pub sampler: SamplerConfig,
}

impl Default for NuInvarianceConfig {
    fn default() -> Self {
        Self {
            t: 1.0,
            variants: vec![(1.0, 0.0), (2.0, 0.0), (2.0, 0.8)],
            control_t: 0.5,
            sampler: SamplerConfig { n_paths: 200_000, n_steps: 200, seed: 2024, antithetic: false },
        }
    }
}

/// `E[Tr(ZZ*)]` across `(s, u)` at fixed `t`, with a control at another `t`.
pub fn nu_invariance(cfg: &NuInvarianceConfig) -> Result<Report> {
    let (s0, _) = *cfg.variants.first().ok_or_else(|| Error::Invalid("no variants given".into()))?;
    for &(s, u) in &cfg.variants {
        TransformParams::validated(s, cfg.t, u)?;
    }
    let control_p = TransformParams::validated(s0, cfg.control_t, 0.0)?;
    let rep = sampling::nu_invariance_stat(cfg.t, &cfg.variants, &cfg.sampler)?;
    let control = sampling::Sampler::new(&control_p, &cfg.sampler)?.expectation(sampling::trace_zzstar);
    let exact = opcalc::exact_trace_zzstar(&TransformParams::validated(s0, cfg.t, 0.0)?)?;
    let sep = rep.variants.iter().map(|v| v.estimate.z_score(&control)).fold(f64::INFINITY, f64::min);
    let mut grid = Grid::new(&["s", "t", "u", "mean", "stderr", "exact"]);
    for v in &rep.variants {
        grid.rows.push(vec![v.s, cfg.t, v.u, v.estimate.mean, v.estimate.stderr, exact]);
    }
    let control_exact = opcalc::exact_trace_zzstar(&control_p)?;
    grid.rows.push(vec![s0, cfg.control_t, 0.0, control.mean, control.stderr, control_exact]);
    let metrics = vec![
        Metric::at_most("max_pairwise_z", rep.max_z, tol::MC_SIGMAS),
        Metric::at_least("control_min_z", sep, tol::MC_SIGMAS),
    ];
    Ok(Report::new("nu-invariance", cfg, metrics, grid))
}

// ---------------------------------------------------------------- large-s

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LargeSConfig {
    pub s_values: Vec<f64>,
    pub theta_grid: usize,
    pub n_entries: usize,
    pub seed: u64,
}

impl Default for LargeSConfig {
    fn default() -> Self {
        Self { s_values: (2..=8).map(f64::from).collect(), theta_grid: 201, n_entries: 3, seed: 13 }
    }
}

/// Decay of `sup|ρ_s − 1|` and convergence of `‖f‖²_{ρ_s}` to `‖f‖²_{L²(K)}`.
pub fn large_s(cfg: &LargeSConfig) -> Result<Report> {
    if cfg.s_values.len() < 2 {
        return Err(Error::Invalid("need at least two s values".into()));
    }
    for &s in &cfg.s_values {
        if s <= 0.0 {
            return Err(Error::NonPositive { name: "s", value: s });
        }
    }
    let (rate, devs) = sampling::rho_decay_rate(&cfg.s_values, cfg.theta_grid)?;
    let mut grid = Grid::new(&["s", "sup_dev", "entry", "norm_sq_rho_s", "norm_sq_haar", "gap"]);
    for (&s, &d) in cfg.s_values.iter().zip(&devs) {
        grid.rows.push(vec![s, d, f64::NAN, f64::NAN, f64::NAN, f64::NAN]);
    }
    let mut violations = 0.0;
    for i in 0..cfg.n_entries {
        let n = 2 + i % 3;
        let f = random_entries(n, i / 3 + 1, cfg.seed).pop().expect("at least one entry");
        let haar = f.a.norm_squared() / n as f64;
        let mut gaps = Vec::new();
        for &s in &cfg.s_values {
            let v = opcalc::norm_sq_rho_s(&f, s)?;
            gaps.push((v - haar).abs());
            grid.rows.push(vec![s, f64::NAN, i as f64, v, haar, (v - haar).abs()]);
        }
        violations += decrease_violations(&gaps);
    }
    let last = *devs.last().expect("nonempty");
    let metrics = vec![
        Metric::relative_to("fitted_rate", rate, tol::LARGE_S_RATE, tol::LARGE_S_RATE_REL),
        Metric::at_most("sup_dev_monotonicity_violations", decrease_violations(&devs), 0.0),
        Metric::at_most("sup_dev_at_max_s", last, 1e-2),
        Metric::at_most("norm_trend_violations", violations, 0.0),
    ];
    Ok(Report::new("large-s", cfg, metrics, grid))
}

// ---------------------------------------------------------------- params-roundtrip

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamsRoundtripConfig {
    pub grid: Vec<GridPoint>,
    pub random_triples: usize,
    pub dims: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
}

impl Default for ParamsRoundtripConfig {
    fn default() -> Self {
        Self { grid: default_grid(), random_triples: 50, dims: vec![1, 2, 3, 4], trials: 100, seed: 17 }
    }
}

/// `Φ`/`Φ⁻¹` round trips, `L_{a,b,c} = Δ_{s,τ}`, `Ad(K)`-invariance and the trace formula.
pub fn params_roundtrip(cfg: &ParamsRoundtripConfig) -> Result<Report> {
    let params = validate_grid(&cfg.grid)?;
    check_dims(&cfg.dims, 6)?;
    let mut grid = Grid::new(&["s", "t", "u", "a", "b", "c", "roundtrip_err", "labc_residual"]);
    let mut rt: f64 = 0.0;
    let mut labc: f64 = 0.0;
    let reps: Vec<TensorConjRep> = cfg.dims.iter().map(|&n| TensorConjRep::new(&su2::irrep(n))).collect();
    for p in &params {
        let m = phi_inverse(p.s, p.t(), p.u())?;
        let back = phi(&m)?;
        let e = (back.s - p.s).abs().max((back.t() - p.t()).abs()).max((back.u() - p.u()).abs());
        let mut l: f64 = 0.0;
        for r in &reps {
            let a = opcalc::lift_labc(r, &m)?.matrix;
            let b = opcalc::lift_delta_stau(r, p)?.matrix;
            l = l.max(op_norm(&(a - b)));
        }
        rt = rt.max(e);
        labc = labc.max(l);
        grid.rows.push(vec![p.s, p.t(), p.u(), m.a, m.b, m.c, e, l]);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut triples = Vec::with_capacity(cfg.random_triples);
    while triples.len() < cfg.random_triples {
        let a: f64 = rng.gen_range(0.1..5.0);
        let b: f64 = rng.gen_range(0.1..5.0);
        let c: f64 = rng.gen_range(-1.0..1.0) * (a * b).sqrt();
        if let Ok(m) = MetricTriple::new(a, b, c) {
            triples.push(m);
        }
    }
    let mut ad: f64 = 0.0;
    let mut trace: f64 = 0.0;
    for m in &triples {
        let p = phi(m)?;
        let back = phi_inverse(p.s, p.t(), p.u())?;
        let scale = m.a.abs().max(m.b.abs()).max(1.0);
        rt = rt.max((back.a - m.a).abs().max((back.b - m.b).abs()).max((back.c - m.c).abs()) / scale);
        ad = ad.max(su2::ad_invariance_residual(m, cfg.trials / 10 + 1, &mut rng));
        for _ in 0..cfg.trials / 10 + 1 {
            let z = su2::random_algebra_element(&mut rng);
            let w = su2::random_algebra_element(&mut rng);
            trace = trace.max((su2::inner_abc(&z, &w, m) - su2::inner_abc_trace(&z, &w, m)).abs());
        }
    }

    let metrics = vec![
        Metric::at_most("roundtrip_max_err", rt, tol::ROUNDTRIP_ABS),
        Metric::at_most("labc_max_residual", labc, tol::LABC_ABS),
        Metric::at_most("ad_invariance_max_residual", ad, tol::AD_INVARIANCE_ABS),
        Metric::at_most("trace_formula_max_err", trace, tol::TRACE_FORMULA_ABS),
    ];
    Ok(Report::new("params-roundtrip", cfg, metrics, grid))
}
