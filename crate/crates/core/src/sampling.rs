//! Reproducible random data: every run is determined by one explicit `u64` seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{rat, Rational};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `p, q` uniform in `1..=100`.
pub fn positive_rational(rng: &mut SampleRng) -> Rational {
    rat(rng.gen_range(1..=100), rng.gen_range(1..=100))
}

pub fn positive_rationals(rng: &mut SampleRng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| positive_rational(rng)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn same_seed_same_stream() {
        let a = positive_rationals(&mut rng(7), 20);
        let b = positive_rationals(&mut rng(7), 20);
        assert_eq!(a, b);
        assert!(a.iter().all(Signed::is_positive));
        assert_ne!(a, positive_rationals(&mut rng(8), 20));
    }
}
