//! Gaussian moment calculus for `μ_{s,τ}`.
//!
//! Under `μ_{s,τ}` the coordinates `z_j = x_j + i y_j` are independent and
//! each `(x_j, y_j)` is a centred real Gaussian with covariance
//! `[[s − t/2, −u/2], [−u/2, t/2]]`. Treating `Z` and `Z̄` as the two
//! jointly Gaussian variables, Isserlis' theorem pairs them with
//!
//! * `E[Z²] = s − τ`,
//! * `E[Z̄²] = s − τ̄`,
//! * `E[Z Z̄] = s`.
//!
//! Counting pairings with `k` mixed pairs gives the closed form used in
//! [`mixed_moment`].

use crate::params::TransformParams;
use crate::C64;

/// The two pair covariances of a single coordinate under `μ_{s,τ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairCovariances {
    /// `E[Z²]`
    pub zz: C64,
    /// `E[|Z|²]`
    pub zzbar: f64,
}

pub fn pair_covariances(p: &TransformParams) -> PairCovariances {
    let [[cxx, cxy], [_, cyy]] = p.covariance_block();
    PairCovariances {
        zz: C64::new(cxx - cyy, 2.0 * cxy),
        zzbar: cxx + cyy,
    }
}

fn double_factorial_odd(k: u32) -> f64 {
    // (k − 1)!! for even k, i.e. the number of perfect matchings of k items
    let mut acc = 1.0;
    let mut j = k as i64 - 1;
    while j > 1 {
        acc *= j as f64;
        j -= 2;
    }
    acc
}

fn binom(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `E[Z^m Z̄^n]` for a centred complex Gaussian with `E[Z²] = cov.zz`, `E[|Z|²] = cov.zzbar`.
pub fn mixed_moment(m: u32, n: u32, cov: &PairCovariances) -> C64 {
    let mut total = C64::new(0.0, 0.0);
    let mut factorial = 1.0;
    for k in 0..=m.min(n) {
        if k > 0 {
            factorial *= k as f64;
        }
        if !(m - k).is_multiple_of(2) || !(n - k).is_multiple_of(2) {
            continue;
        }
        let (hm, hn) = ((m - k) / 2, (n - k) / 2);
        let count = binom(m, k) * binom(n, k) * factorial
            * double_factorial_odd(m - k)
            * double_factorial_odd(n - k);
        total += cov.zz.powu(hm) * cov.zz.conj().powu(hn) * cov.zzbar.powi(k as i32) * count;
    }
    total
}

/// `E[X^k]` for `X ~ N(0, s)`.
pub fn real_moment(k: u32, s: f64) -> f64 {
    if k % 2 == 1 {
        0.0
    } else {
        double_factorial_odd(k) * s.powi((k / 2) as i32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_covariances_match_block() {
        let p = TransformParams::new(2.0, 1.0, 0.5);
        let c = pair_covariances(&p);
        // E[Z²] = s − τ, E|Z|² = s
        assert!((c.zz - C64::new(1.0, -0.5)).norm() < 1e-15);
        assert_eq!(c.zzbar, 2.0);
    }

    #[test]
    fn low_order_moments() {
        let c = PairCovariances { zz: C64::new(0.3, -0.2), zzbar: 1.5 };
        assert_eq!(mixed_moment(0, 0, &c), C64::from(1.0));
        assert_eq!(mixed_moment(1, 0, &c), C64::from(0.0));
        assert_eq!(mixed_moment(2, 0, &c), c.zz);
        assert_eq!(mixed_moment(1, 1, &c), C64::from(1.5));
        // E[Z² Z̄²] = |E Z²|² + 2 (E|Z|²)²
        let v = mixed_moment(2, 2, &c);
        assert!((v - (c.zz.norm_sqr() + 2.0 * 2.25)).norm() < 1e-14);
    }

    #[test]
    fn real_moments() {
        assert_eq!(real_moment(2, 3.0), 3.0);
        assert_eq!(real_moment(4, 2.0), 12.0);
        assert_eq!(real_moment(6, 1.0), 15.0);
        assert_eq!(real_moment(3, 1.0), 0.0);
    }
}
