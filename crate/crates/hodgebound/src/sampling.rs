//! Seeded random instances for the verification suites.
//!
//! Everything draws from a `ChaCha8Rng`, so a seed fixes every instance on
//! every platform. Entries are i.i.d. standard normal.

use hodgebound_core::curvature::{constant_curvature, gauss_intrinsic, CurvatureTensor};
use hodgebound_core::exterior::{binomial, PForm};
use hodgebound_core::linalg::SquareMatrix;
use hodgebound_core::submanifold::SecondFundamentalForm;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub type SuiteRng = ChaCha8Rng;

/// Independent stream per (seed, label) so suites do not shift each other.
pub fn rng_for(seed: u64, label: &str) -> SuiteRng {
    let mut stream = 0u64;
    for b in label.bytes() {
        stream = stream
            .wrapping_mul(0x100_0000_01b3)
            .wrapping_add(u64::from(b));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn normal(rng: &mut impl Rng) -> f64 {
    rng.sample(StandardNormal)
}

pub fn normals(rng: &mut impl Rng, len: usize) -> Vec<f64> {
    (0..len).map(|_| normal(rng)).collect()
}

/// `(G + Gᵀ)/2` for a Gaussian `G`.
pub fn symmetric(rng: &mut impl Rng, n: usize) -> SquareMatrix {
    let g = SquareMatrix::from_row_major(n, normals(rng, n * n)).expect("length matches");
    (&g + &g.transpose()).scale(0.5)
}

pub fn matrix(rng: &mut impl Rng, n: usize) -> SquareMatrix {
    SquareMatrix::from_row_major(n, normals(rng, n * n)).expect("length matches")
}

pub fn second_fundamental_form(rng: &mut impl Rng, n: usize, m: usize) -> SecondFundamentalForm {
    let shapes: Vec<_> = (0..m).map(|_| symmetric(rng, n)).collect();
    SecondFundamentalForm::from_shape_operators(&shapes).expect("symmetrized")
}

pub fn form(rng: &mut impl Rng, n: usize, p: usize) -> PForm {
    PForm::from_coeffs(n, p, normals(rng, binomial(n, p))).expect("length matches")
}

/// `c·R₁ + Σ G(B⁺) − Σ G(B⁻)`, where `G(B)` is the quadratic Gauss term of a
/// symmetric matrix. Each term satisfies every curvature identity, and the
/// mixed signs give indefinite curvature operators.
pub fn curvature(rng: &mut impl Rng, n: usize) -> CurvatureTensor {
    let c = rng.random_range(-2.0..2.0);
    let plus = second_fundamental_form(rng, n, 2);
    let minus = second_fundamental_form(rng, n, 2);
    let r = gauss_intrinsic(&constant_curvature(n, c), &plus).expect("dimensions agree");
    let s = gauss_intrinsic(&CurvatureTensor::zero(n), &minus).expect("dimensions agree");
    r.add(&s.scale(-1.0)).expect("dimensions agree")
}

pub fn permutation(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

/// `n` uniform in `lo..=hi` and `p` uniform in `1..n`.
pub fn dim_degree(rng: &mut impl Rng, lo: usize, hi: usize) -> (usize, usize) {
    let n = rng.random_range(lo..=hi);
    (n, rng.random_range(1..n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a = normals(&mut rng_for(7, "alpha"), 4);
        assert_eq!(a, normals(&mut rng_for(7, "alpha"), 4));
        assert_ne!(a, normals(&mut rng_for(7, "beta"), 4));
        assert_ne!(a, normals(&mut rng_for(8, "alpha"), 4));
    }

    #[test]
    fn sampled_curvature_is_valid() {
        let mut rng = rng_for(0, "curv");
        for n in 2..=5 {
            let r = curvature(&mut rng, n);
            assert!(r
                .validate(hodgebound_core::curvature::Validation::Full)
                .is_ok());
        }
    }
}
