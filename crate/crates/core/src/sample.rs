//! Seeded sampling of matrices, fields and weights.
//!
//! All randomness in the library flows through an explicitly seeded ChaCha
//! generator; nothing reads ambient entropy.

use crate::fourier::OperatorField;
use crate::groups::GroupSpec;
use crate::operators::CMatrix;
use num_complex::Complex64;
use num_rational::Ratio;
use rand::SeedableRng;
use rand_distr::StandardNormal;

pub use rand::Rng;
pub use rand_chacha::ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derives an independent stream for a subtask (restart, trial, ...) from a
/// base seed, stable across runs.
pub fn subseed(seed: u64, index: u64) -> u64 {
    seed.wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// A standard complex Gaussian entry (independent N(0,1) real and imaginary
/// parts).
pub fn standard_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

pub fn random_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| standard_complex(rng))
}

/// A random Hermitian PSD matrix `G^H G`.
pub fn random_psd<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMatrix {
    let g = random_matrix(dim, dim, rng);
    let p = g.adjoint() * &g;
    crate::operators::hermitize(&p)
}

/// A Haar-ish random unitary: Q factor of a complex Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMatrix {
    random_matrix(dim, dim, rng).qr().q()
}

/// A field of independent Gaussian matrices over the group.
pub fn random_field<R: Rng + ?Sized>(
    group: &GroupSpec,
    dim: usize,
    rng: &mut R,
) -> OperatorField {
    let values = (0..group.order())
        .map(|_| random_matrix(dim, dim, rng))
        .collect();
    OperatorField::new(group.clone(), values).expect("generated values are consistent")
}

pub fn random_tuple<R: Rng + ?Sized>(len: usize, dim: usize, rng: &mut R) -> Vec<CMatrix> {
    (0..len).map(|_| random_matrix(dim, dim, rng)).collect()
}

/// Random positive rationals summing to exactly 1: integer numerators over
/// their common total.
pub fn random_rational_weights<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<Ratio<u64>> {
    assert!(len > 0);
    let numerators: Vec<u64> = (0..len).map(|_| rng.gen_range(1..=1000u64)).collect();
    let total: u64 = numerators.iter().sum();
    numerators
        .into_iter()
        .map(|n| Ratio::new(n, total))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_rng_reproduces() {
        let a = random_matrix(3, 3, &mut rng_from_seed(7));
        let b = random_matrix(3, 3, &mut rng_from_seed(7));
        assert_eq!(a, b);
    }

    #[test]
    fn rational_weights_sum_to_one_exactly() {
        let w = random_rational_weights(9, &mut rng_from_seed(11));
        let total: Ratio<u64> = w.iter().sum();
        assert_eq!(total, Ratio::from_integer(1));
        assert!(w.iter().all(|x| *x > Ratio::new(0, 1)));
    }

    #[test]
    fn random_unitary_is_unitary() {
        let u = random_unitary(5, &mut rng_from_seed(3));
        let gram = u.adjoint() * &u;
        assert!((gram - CMatrix::identity(5, 5)).norm() < 1e-10);
    }
}
