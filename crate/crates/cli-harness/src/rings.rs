use exact_arith::{random_fp, Field, Fp, FromRational, Rational, Ring};
use matrix_core::RingMatrix;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use staircase_core::{validate_shape, StaircaseError, StaircaseData};

/// Fields the numeric checks run over, with a way to draw random elements.
pub trait Sample: Field + FromRational {
    fn sample(rng: &mut ChaCha8Rng) -> Self;

    fn sample_nonzero(rng: &mut ChaCha8Rng) -> Self {
        loop {
            let v = Self::sample(rng);
            if !v.is_zero() {
                return v;
            }
        }
    }
}

impl Sample for Fp {
    fn sample(rng: &mut ChaCha8Rng) -> Fp {
        random_fp(rng)
    }
}

/// Small integers keep rational runs readable; singular draws are resampled
/// by the callers.
impl Sample for Rational {
    fn sample(rng: &mut ChaCha8Rng) -> Rational {
        Rational::from_i64(rng.gen_range(-99..=99))
    }
}

pub fn random_matrix<F: Sample>(r: usize, c: usize, rng: &mut ChaCha8Rng) -> RingMatrix<F> {
    RingMatrix::from_fn(r, c, |_, _| F::sample(rng))
}

pub fn random_vec<F: Sample>(k: usize, rng: &mut ChaCha8Rng) -> Vec<F> {
    (0..k).map(|_| F::sample(rng)).collect()
}

pub fn random_staircase_in<F: Sample>(
    n: usize,
    a: usize,
    b: usize,
    rng: &mut ChaCha8Rng,
) -> Result<StaircaseData<F>, StaircaseError> {
    let x = RingMatrix::from_fn(n, n, |i, j| if i <= a && j > b { F::sample(rng) } else { F::zero() });
    let y = RingMatrix::from_fn(n, n, |i, j| if i > a && j <= b { F::zero() } else { F::sample(rng) });
    validate_shape(n, a, b, x, y)
}

pub fn random_band_in<F: Sample>(k: usize, n: usize, rng: &mut ChaCha8Rng) -> RingMatrix<F> {
    RingMatrix::from_fn(k + 1, n, |_, _| F::sample_nonzero(rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn rational_staircase_has_the_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s = random_staircase_in::<Rational>(6, 4, 1, &mut rng).unwrap();
        for i in 1..=6 {
            assert!(s.x.get(i, 1).is_zero() || i > 4);
            if i > 4 {
                assert!(s.y.get(i, 1).is_zero());
            }
        }
        assert!(s.x.entries().iter().all(|v| v.is_integer()));
    }

    #[test]
    fn band_entries_are_nonzero() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = random_band_in::<Rational>(3, 5, &mut rng);
        assert_eq!((a.rows(), a.cols()), (4, 5));
        assert!(a.entries().iter().all(|v| !v.is_zero()));
    }
}
