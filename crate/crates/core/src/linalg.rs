//! Small dense complex linear algebra helpers on top of `nalgebra`.

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::C64;

pub type CMat = DMatrix<C64>;

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

/// Matrix exponential (scaling and squaring with Padé approximants).
pub fn expm(a: &CMat) -> CMat {
    if a.nrows() == 0 {
        return a.clone();
    }
    a.exp()
}

/// Spectral norm (largest singular value).
pub fn op_norm(a: &CMat) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    a.clone().svd(false, false).singular_values.max()
}

pub fn commutator(a: &CMat, b: &CMat) -> CMat {
    a * b - b * a
}

/// Entrywise complex conjugate (not the adjoint).
pub fn conj(a: &CMat) -> CMat {
    a.map(|z| z.conj())
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

pub fn trace(a: &CMat) -> C64 {
    a.trace()
}

/// Complex Ginibre matrix normalised to unit Frobenius norm.
pub fn random_ginibre<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMat {
    let m = CMat::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re, im)
    });
    let norm = m.norm();
    m / C64::from(norm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expm_of_diagonal_and_nilpotent() {
        let d = CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![C64::new(0.5, 1.0), C64::new(-2.0, 0.0)]));
        let e = expm(&d);
        assert!((e[(0, 0)] - C64::new(0.5, 1.0).exp()).norm() < 1e-14);
        assert!((e[(1, 1)] - (-2.0f64).exp()).norm() < 1e-15);
        let mut n = CMat::zeros(3, 3);
        n[(0, 1)] = C64::from(1.0);
        n[(1, 2)] = C64::from(1.0);
        let e = expm(&n);
        assert!((e[(0, 2)] - 0.5).norm() < 1e-15);
    }

    #[test]
    fn expm_inverse_round_trip() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let a = random_ginibre(5, &mut rng) * C64::new(3.0, -1.0);
        let prod = expm(&a) * expm(&(-&a));
        assert!(op_norm(&(prod - identity(5))) < 1e-13);
    }

    #[test]
    fn op_norm_of_rank_one() {
        let mut a = CMat::zeros(2, 2);
        a[(0, 1)] = C64::new(3.0, 4.0);
        assert!((op_norm(&a) - 5.0).abs() < 1e-14);
    }
}
