//! Monte Carlo for `μ_{s,τ}` on `SL(2,C)`.
//!
//! Paths follow the geometric Euler scheme
//! `Z_{m+1} = Z_m exp(√h Σ_j ξ_{m,j} V_j)` with `V_j` orthonormal for
//! `⟨·,·⟩_{a,b,c}`, `(a,b,c) = Φ⁻¹(s,t,u)`, and `h = 1/n_steps`.
//! Each path owns an independent ChaCha stream indexed by its path number, so
//! results do not depend on how paths are scheduled across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::opcalc::{transform_me, MatrixEntry};
use crate::params::{phi_inverse_params, MetricTriple, TransformParams};
use crate::su2::{
    exp_traceless, heat_kernel_k, inner_abc, su2_basis, AlgebraElement, GroupElement, HaarQuadrature, HeatSeries, M2,
};
use crate::C64;

const GRAM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub n_paths: usize,
    pub n_steps: usize,
    pub seed: u64,
    pub antithetic: bool,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        Self { n_paths: 200_000, n_steps: 200, seed: 0, antithetic: false }
    }
}

impl SamplerConfig {
    pub fn check(&self) -> Result<()> {
        if self.n_steps == 0 {
            return Err(Error::Invalid("n_steps must be at least 1".into()));
        }
        if self.n_paths < 2 {
            return Err(Error::Invalid("n_paths must be at least 2".into()));
        }
        if self.antithetic && !self.n_paths.is_multiple_of(2) {
            return Err(Error::Invalid("antithetic sampling needs an even n_paths".into()));
        }
        Ok(())
    }

    pub fn step(&self) -> f64 {
        1.0 / self.n_steps as f64
    }
}

/// Six elements of `sl(2,C)`, orthonormal for a given `⟨·,·⟩_{a,b,c}`.
#[derive(Debug, Clone)]
pub struct Frame {
    pub vectors: [AlgebraElement; 6],
    pub metric: MetricTriple,
}

impl Frame {
    pub fn gram_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, vi) in self.vectors.iter().enumerate() {
            for (j, vj) in self.vectors.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((inner_abc(vi, vj, &self.metric) - target).abs());
            }
        }
        worst
    }
}

/// Per pair `(e_a, J e_a)`, applies the inverse Cholesky factor of
/// `[[a, c], [c, b]]`.
pub fn frame_abc(m: &MetricTriple) -> Result<Frame> {
    m.check()?;
    let l11 = m.a.sqrt();
    let l21 = m.c / l11;
    let d = m.b - l21 * l21;
    if d <= 0.0 {
        return Err(Error::InvalidMetric { a: m.a, b: m.b, c: m.c });
    }
    let l22 = d.sqrt();
    // L⁻¹ = [[1/l11, 0], [−l21/(l11 l22), 1/l22]]
    let e = su2_basis();
    let mut vectors = [AlgebraElement::zero(); 6];
    for a in 0..3 {
        let x = e[a];
        let y = e[a].j();
        vectors[2 * a] = x.scale(1.0 / l11);
        vectors[2 * a + 1] = x.scale(-l21 / (l11 * l22)).add(&y.scale(1.0 / l22));
    }
    let frame = Frame { vectors, metric: *m };
    let r = frame.gram_residual();
    if r > GRAM_TOL {
        return Err(Error::Invalid(format!("frame Gram residual {r:e} exceeds {GRAM_TOL:e}")));
    }
    Ok(frame)
}

/// A prepared sampler for one `(s, τ)`.
#[derive(Debug, Clone)]
pub struct Sampler {
    frame: [M2; 6],
    cfg: SamplerConfig,
}

impl Sampler {
    pub fn new(p: &TransformParams, cfg: &SamplerConfig) -> Result<Self> {
        p.check()?;
        cfg.check()?;
        let f = frame_abc(&phi_inverse_params(p)?)?;
        Ok(Self { frame: f.vectors.map(|v| v.mat), cfg: *cfg })
    }

    pub fn config(&self) -> &SamplerConfig {
        &self.cfg
    }

    fn rng_for(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.seed);
        rng.set_stream(stream);
        rng
    }

    /// The time-1 endpoint of path `i`. With antithetic sampling, paths `2k`
    /// and `2k + 1` share noise with opposite signs.
    pub fn path(&self, i: usize) -> GroupElement {
        let (stream, sign) = if self.cfg.antithetic { (i / 2, if i.is_multiple_of(2) { 1.0 } else { -1.0 }) } else { (i, 1.0) };
        let mut rng = self.rng_for(stream as u64);
        let sqrt_h = self.cfg.step().sqrt() * sign;
        let mut z = M2::identity();
        for _ in 0..self.cfg.n_steps {
            let mut x = M2::zeros();
            for v in &self.frame {
                let xi: f64 = StandardNormal.sample(&mut rng);
                x += v * C64::from(xi * sqrt_h);
            }
            z *= exp_traceless(&x);
        }
        GroupElement { mat: z }
    }

    /// All path endpoints in index order.
    pub fn paths(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.cfg.n_paths).map(move |i| self.path(i))
    }

    /// `E[φ(Z)]`. Paths run in parallel; the reduction is sequential in path
    /// order, so the result is bitwise reproducible.
    pub fn expectation<F>(&self, phi: F) -> Estimate
    where
        F: Fn(&GroupElement) -> f64 + Sync,
    {
        let values: Vec<f64> = (0..self.cfg.n_paths).into_par_iter().map(|i| phi(&self.path(i))).collect();
        if self.cfg.antithetic {
            let pairs: Vec<f64> = values.chunks_exact(2).map(|c| 0.5 * (c[0] + c[1])).collect();
            let mut e = Estimate::from_samples(&pairs);
            e.n = values.len();
            e
        } else {
            Estimate::from_samples(&values)
        }
    }
}

/// Endpoints `Z_1` of `cfg.n_paths` simulated paths.
pub fn sample_mu_stau(p: &TransformParams, cfg: &SamplerConfig) -> Result<Vec<GroupElement>> {
    let s = Sampler::new(p, cfg)?;
    Ok((0..cfg.n_paths).into_par_iter().map(|i| s.path(i)).collect())
}

/// Largest `|det Z_m − 1|` along path `i`, with every intermediate step checked.
pub fn path_det_drift(sampler: &Sampler, i: usize) -> f64 {
    let cfg = sampler.cfg;
    let mut rng = sampler.rng_for(i as u64);
    let sqrt_h = cfg.step().sqrt();
    let mut z = M2::identity();
    let mut worst: f64 = 0.0;
    for _ in 0..cfg.n_steps {
        let mut x = M2::zeros();
        for v in &sampler.frame {
            let xi: f64 = StandardNormal.sample(&mut rng);
            x += v * C64::from(xi * sqrt_h);
        }
        z *= exp_traceless(&x);
        worst = worst.max((z.determinant() - 1.0).norm() / z.norm_squared().max(1.0));
    }
    worst
}

/// Sample mean with standard error `sd/√n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    pub stderr: f64,
    pub n: usize,
}

impl Estimate {
    pub fn from_samples(x: &[f64]) -> Self {
        let n = x.len();
        let mean = x.iter().sum::<f64>() / n as f64;
        let var = x.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n as f64 - 1.0);
        Self { mean, stderr: (var / n as f64).sqrt(), n }
    }

    /// `|self − other| / √(σ₁² + σ₂²)`.
    pub fn z_score(&self, other: &Self) -> f64 {
        let s = (self.stderr.powi(2) + other.stderr.powi(2)).sqrt();
        (self.mean - other.mean).abs() / s
    }

    /// `|self − exact| / σ`.
    pub fn z_score_exact(&self, exact: f64) -> f64 {
        (self.mean - exact).abs() / self.stderr
    }
}

/// Monte Carlo estimate of `‖M_τ f‖²_{L²(μ_{s,τ})} = E|F(Z)|²`.
pub fn mc_norm_sq(f: &MatrixEntry, p: &TransformParams, cfg: &SamplerConfig) -> Result<Estimate> {
    p.check()?;
    cfg.check()?;
    let big_f = transform_me(f, p.tau.as_complex());
    if big_f.rep.dim() == 1 {
        // constant function
        return Ok(Estimate { mean: big_f.a[(0, 0)].norm_sqr(), stderr: 0.0, n: cfg.n_paths });
    }
    let s = Sampler::new(p, cfg)?;
    Ok(s.expectation(|z| big_f.eval(z).norm_sqr()))
}

/// `(PF)(z) = ∫_K F(zk) dk` on the given Haar rule.
pub fn k_average<F>(f: F, z: &GroupElement, q: &HaarQuadrature) -> C64
where
    F: Fn(&GroupElement) -> C64,
{
    q.integrate(|k| f(&z.mul(k)))
}

/// `Tr(z z*)`: right-`K`-invariant.
pub fn trace_zzstar(z: &GroupElement) -> f64 {
    z.mat.norm_squared()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NuVariant {
    pub s: f64,
    pub u: f64,
    pub estimate: Estimate,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NuInvarianceReport {
    pub t: f64,
    pub variants: Vec<NuVariant>,
    /// Largest pairwise `|m_i − m_j| / √(σ_i² + σ_j²)`.
    pub max_z: f64,
    pub threshold: f64,
    pub pass: bool,
}

/// Estimates `E[Tr(ZZ*)]` under `μ_{s, t+iu}` for each `(s, u)`. The `K`-averaged
/// density depends only on `t`, so all variants should agree.
pub fn nu_invariance_stat(t: f64, variants: &[(f64, f64)], cfg: &SamplerConfig) -> Result<NuInvarianceReport> {
    if variants.len() < 2 {
        return Err(Error::Invalid("need at least two (s, u) variants".into()));
    }
    let params: Vec<TransformParams> =
        variants.iter().map(|&(s, u)| TransformParams::validated(s, t, u)).collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(variants.len());
    for p in &params {
        let est = Sampler::new(p, cfg)?.expectation(trace_zzstar);
        out.push(NuVariant { s: p.s, u: p.u(), estimate: est });
    }
    let mut max_z: f64 = 0.0;
    for i in 0..out.len() {
        for j in i + 1..out.len() {
            max_z = max_z.max(out[i].estimate.z_score(&out[j].estimate));
        }
    }
    let threshold = 3.0;
    Ok(NuInvarianceReport { t, variants: out, max_z, threshold, pass: max_z <= threshold })
}

/// `max_θ |ρ_s(diag(e^{iθ}, e^{−iθ})) − 1|` over `theta_grid` equispaced
/// points of `[0, π]`. `ρ_s` is a class function, so the maximal torus suffices.
pub fn rho_deviation_sup(s: f64, theta_grid: usize) -> Result<f64> {
    if s <= 0.0 {
        return Err(Error::NonPositive { name: "s", value: s });
    }
    if theta_grid < 2 {
        return Err(Error::Invalid("theta grid needs at least 2 points".into()));
    }
    let cfg = HeatSeries::default();
    let mut worst: f64 = 0.0;
    for i in 0..theta_grid {
        let theta = std::f64::consts::PI * i as f64 / (theta_grid - 1) as f64;
        worst = worst.max((heat_kernel_k(s, &GroupElement::torus(theta), &cfg)? - 1.0).abs());
    }
    Ok(worst)
}

/// Least-squares slope and intercept of `y` against `x`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// Fitted exponential decay rate of `sup|ρ_s − 1|` over the given `s` values.
pub fn rho_decay_rate(s_values: &[f64], theta_grid: usize) -> Result<(f64, Vec<f64>)> {
    let devs: Vec<f64> = s_values.iter().map(|&s| rho_deviation_sup(s, theta_grid)).collect::<Result<_>>()?;
    let logs: Vec<f64> = devs.iter().map(|d| d.ln()).collect();
    let (slope, _) = linear_fit(s_values, &logs);
    Ok((-slope, devs))
}
