//! Seeded sampling of concrete extended reals from the set an order-of-magnitude
//! value stands for.

use num_traits::{One, Signed};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{OomError, OomValue, Order, Sign};
use crate::extended_reals::{ExtendedReal, Polynomial, Rational};

#[derive(Debug, Clone, PartialEq)]
pub struct StarSamplerConfig {
    pool: Vec<Rational>,
    max_offset: u32,
    tail_terms: u32,
    seed: u64,
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

impl StarSamplerConfig {
    /// The pool must be non-empty, free of zero, and contain both signs.
    pub fn new(pool: Vec<Rational>, max_offset: u32, tail_terms: u32, seed: u64) -> Result<Self, OomError> {
        if pool.iter().any(|c| c == &Rational::from_integer(0.into())) {
            return Err(OomError::SamplerConfig("coefficient pool contains zero"));
        }
        if !pool.iter().any(|c| c.is_positive()) || !pool.iter().any(|c| c.is_negative()) {
            return Err(OomError::SamplerConfig("coefficient pool needs both signs"));
        }
        Ok(Self {
            pool,
            max_offset,
            tail_terms,
            seed,
        })
    }

    /// Pool `{±1, ±2, ±1/2, ±3}`, offset 3, two tail terms.
    pub fn with_seed(seed: u64) -> Self {
        let pool = [q(1, 1), q(2, 1), q(1, 2), q(3, 1)]
            .into_iter()
            .flat_map(|c| [c.clone(), -c])
            .collect();
        Self {
            pool,
            max_offset: 3,
            tail_terms: 2,
            seed,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn pool(&self) -> &[Rational] {
        &self.pool
    }

    pub fn max_offset(&self) -> u32 {
        self.max_offset
    }

    pub fn tail_terms(&self) -> u32 {
        self.tail_terms
    }

    pub fn reseeded(&self, seed: u64) -> Self {
        Self { seed, ..self.clone() }
    }

    /// Adds `±1/3, ±4, ±5/2, ±7` to the pool (skipping entries already present).
    pub fn escalated(&self) -> Self {
        let mut pool = self.pool.clone();
        for c in [q(1, 3), q(4, 1), q(5, 2), q(7, 1)] {
            for v in [c.clone(), -c] {
                if !pool.contains(&v) {
                    pool.push(v);
                }
            }
        }
        Self { pool, ..self.clone() }
    }
}

impl Default for StarSamplerConfig {
    fn default() -> Self {
        Self::with_seed(0)
    }
}

/// A sampler carrying its own generator state; deterministic for a given config.
#[derive(Debug, Clone)]
pub struct StarSampler {
    config: StarSamplerConfig,
    rng: ChaCha8Rng,
}

impl StarSampler {
    pub fn new(config: StarSamplerConfig) -> Self {
        let rng = ChaCha8Rng::seed_from_u64(config.seed);
        Self { config, rng }
    }

    pub fn config(&self) -> &StarSamplerConfig {
        &self.config
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Swaps in a new coefficient pool, keeping the generator state.
    pub fn set_config(&mut self, config: StarSamplerConfig) {
        self.config = config;
    }

    /// A random pool coefficient with the requested sign.
    pub fn coefficient(&mut self, sign: Sign) -> Rational {
        let matching: Vec<&Rational> = self
            .config
            .pool
            .iter()
            .filter(|c| match sign {
                Sign::Pos => c.is_positive(),
                Sign::Neg => c.is_negative(),
                Sign::Zero => true,
            })
            .collect();
        (*matching.choose(&mut self.rng).expect("pool has both signs")).clone()
    }

    /// `1 + tail` or `1 / (1 + tail)` with a random tail of higher-order terms.
    fn unit_factor(&mut self) -> ExtendedReal {
        let terms = self.rng.gen_range(0..=self.config.tail_terms);
        if terms == 0 {
            return ExtendedReal::one();
        }
        let mut tail = vec![(0, Rational::one())];
        for _ in 0..terms {
            let degree = self.rng.gen_range(1..=self.config.max_offset + 1);
            tail.push((degree, self.coefficient(Sign::Zero)));
        }
        let poly = Polynomial::from_terms(tail);
        let (num, den) = if self.rng.gen_bool(0.5) {
            (poly, Polynomial::one())
        } else {
            (Polynomial::one(), poly)
        };
        ExtendedReal::from_fraction(num, den).expect("unit factor has constant term 1")
    }

    fn signed(&mut self, sign: Sign, order: i64) -> ExtendedReal {
        let lead = ExtendedReal::monomial(self.coefficient(sign), order);
        &lead * &self.unit_factor()
    }

    /// Draws an element of `a*`.
    pub fn sample(&mut self, a: OomValue) -> ExtendedReal {
        match (a.sign(), a.order()) {
            (_, Order::Infinite) => ExtendedReal::zero(),
            (Sign::Zero, Order::Finite(m)) => {
                // zero, or either sign at some order ≥ m
                match self.rng.gen_range(0..3) {
                    0 => ExtendedReal::zero(),
                    k => {
                        let sign = if k == 1 { Sign::Pos } else { Sign::Neg };
                        let offset = self.rng.gen_range(0..=self.config.max_offset) as i64;
                        self.signed(sign, m + offset)
                    }
                }
            }
            (sign, Order::Finite(n)) => self.signed(sign, n),
        }
    }
}
