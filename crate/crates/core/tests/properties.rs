use ctsb::linalg::{expm, identity, random_ginibre};
use ctsb::opcalc::{norm_sq_mu_stau, norm_sq_rho_s, transform_me, MatrixEntry};
use ctsb::sampling::{mc_norm_sq, trace_zzstar, Sampler, SamplerConfig};
use ctsb::su2::{casimir, haar_quadrature, haar_sample, heat_kernel_k, irrep, HeatSeries};
use ctsb::{TransformParams, C64};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn entry(n: usize, seed: u64) -> MatrixEntry {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    MatrixEntry::new(irrep(n), random_ginibre(n, &mut rng)).unwrap()
}

#[test]
fn heat_operator_eigen_relation() {
    let q = haar_quadrature(40);
    let cfg = HeatSeries::default();
    for n in 1..=4 {
        let f = entry(n, 40 + n as u64);
        for t in [0.3, 1.0] {
            let quad = q.integrate(|k| f.eval(k) * heat_kernel_k(t, k, &cfg).unwrap());
            let exact = (expm(&(casimir(&f.rep) * C64::from(t / 2.0))) * &f.a).trace();
            assert!((quad - exact).norm() / exact.norm() < 1e-8, "n={n} t={t}");
        }
    }
}

#[test]
fn haar_rule_is_inversion_invariant() {
    let q = haar_quadrature(20);
    let f = entry(3, 1);
    let g = entry(4, 2);
    let h = |k: &ctsb::su2::GroupElement| f.eval(k) * g.eval(k).conj() + f.eval(k).powi(2);
    let a = q.integrate(h);
    let b = q.integrate(|k| h(&k.inverse()));
    assert!((a - b).norm() < 1e-12);
}

#[test]
fn real_time_transform_is_heat_convolution_on_k() {
    let q = haar_quadrature(40);
    let cfg = HeatSeries::default();
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for n in [2, 3] {
        let f = entry(n, 60 + n as u64);
        let t = 0.8;
        let big_f = transform_me(&f, C64::from(t));
        for _ in 0..3 {
            let x = haar_sample(&mut rng);
            let conv = q.integrate(|k| f.eval(k) * heat_kernel_k(t, &x.mul(&k.inverse()), &cfg).unwrap());
            let exact = big_f.eval(&x);
            assert!((conv - exact).norm() / exact.norm() < 1e-8);
        }
    }
}

#[test]
fn mc_norm_examples() {
    let cfg = SamplerConfig { n_paths: 50_000, n_steps: 200, seed: 12, antithetic: false };
    let f = MatrixEntry::new(irrep(2), identity(2) * C64::from(std::f64::consts::FRAC_1_SQRT_2)).unwrap();
    for p in [TransformParams::new(1.0, 1.0, 0.0), TransformParams::new(2.0, 1.0, 0.7)] {
        let exact = norm_sq_mu_stau(&f, &p).unwrap();
        assert!((exact - norm_sq_rho_s(&f, p.s).unwrap()).abs() < 1e-10 * exact);
        let e = mc_norm_sq(&f, &p, &cfg).unwrap();
        assert!(e.z_score_exact(exact) < 3.0, "{p:?}: {e:?} vs {exact}");
    }
}

#[test]
fn halving_the_step_stays_within_noise() {
    let p = TransformParams::new(1.0, 1.0, 0.4);
    let coarse = SamplerConfig { n_paths: 100_000, n_steps: 100, seed: 8, antithetic: false };
    let fine = SamplerConfig { n_steps: 200, seed: 9, ..coarse };
    let a = Sampler::new(&p, &coarse).unwrap().expectation(trace_zzstar);
    let b = Sampler::new(&p, &fine).unwrap().expectation(trace_zzstar);
    assert!(a.z_score(&b) < 3.0, "{a:?} vs {b:?}");
}

#[test]
fn antithetic_estimate_is_consistent() {
    let p = TransformParams::new(2.0, 1.0, 0.0);
    let cfg = SamplerConfig { n_paths: 20_000, n_steps: 100, seed: 4, antithetic: true };
    let e = Sampler::new(&p, &cfg).unwrap().expectation(trace_zzstar);
    let exact = ctsb::opcalc::exact_trace_zzstar(&p).unwrap();
    assert!(e.z_score_exact(exact) < 3.0);
}
