//! Seeded random rational data. Numerators are drawn from
//! `[-NUMERATOR_BOUND, NUMERATOR_BOUND]` with denominator 1.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::point::PointQ;
use crate::rational::rat;

pub const NUMERATOR_BOUND: i64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleConfig {
    pub seed: u64,
    /// Number of random points tried by randomized pre-screens.
    pub budget: usize,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig { seed: 0, budget: 3 }
    }
}

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn int(&mut self, bound: i64) -> i64 {
        self.rng.gen_range(-bound..=bound)
    }

    /// Nonzero point with integer coordinates in `[-bound, bound]`.
    pub fn point_with_bound(&mut self, n: usize, bound: i64) -> PointQ {
        loop {
            let coords: Vec<i64> = (0..n).map(|_| self.int(bound)).collect();
            if n == 0 || coords.iter().any(|&c| c != 0) {
                return PointQ::from_ints(&coords);
            }
        }
    }

    pub fn point(&mut self, n: usize) -> PointQ {
        self.point_with_bound(n, NUMERATOR_BOUND)
    }

    pub fn nonzero_rational(&mut self, bound: i64) -> crate::rational::Rational {
        loop {
            let v = self.int(bound);
            if v != 0 {
                return rat(v);
            }
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}
