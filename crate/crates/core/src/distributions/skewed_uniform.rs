use rand::Rng;

use super::Distribution;
use crate::params::check_unit;
use crate::rng::BenchRng;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SkewedUniformParameters {
    /// Fraction of the range forming the hot region.
    pub hot_size: f64,
    /// Probability that a sample lands in the hot region.
    pub hot_prob: f64,
}

impl SkewedUniformParameters {
    pub fn validate(&self) -> Result<()> {
        check_unit("hot size", self.hot_size)?;
        check_unit("hot probability", self.hot_prob)
    }

    /// `floor(hot_size * range)`.
    pub fn hot_length(&self, range: u64) -> u64 {
        ((self.hot_size * range as f64).floor() as u64).min(range)
    }
}

/// Two uniform samplers: `[0, hot_length)` with probability `hot_prob`, otherwise
/// `[hot_length, range)`.
#[derive(Debug, Clone)]
pub struct SkewedUniform {
    hot_length: u64,
    hot_prob: f64,
    range: u64,
    rng: BenchRng,
}

impl SkewedUniform {
    pub fn new(params: SkewedUniformParameters, range: u64, rng: BenchRng) -> Result<Self> {
        params.validate()?;
        Self::with_hot_length(params.hot_length(range), params.hot_prob, range, rng)
    }

    pub fn with_hot_length(hot_length: u64, hot_prob: f64, range: u64, rng: BenchRng) -> Result<Self> {
        check_unit("hot probability", hot_prob)?;
        if range == 0 {
            return Err(Error::EmptyRange);
        }
        if hot_length > range {
            return Err(Error::IndexOutOfBounds { index: hot_length, range });
        }
        if hot_length == 0 && hot_prob > 0.0 {
            return Err(Error::EmptyHotSet { name: "skewed uniform", prob: hot_prob });
        }
        if hot_length == range && hot_prob < 1.0 {
            return Err(Error::EmptyColdSet { name: "skewed uniform", prob: 1.0 - hot_prob });
        }
        Ok(Self { hot_length, hot_prob, range, rng })
    }

    pub fn hot_length(&self) -> u64 {
        self.hot_length
    }
}

impl Distribution for SkewedUniform {
    #[inline]
    fn next(&mut self) -> u64 {
        if self.rng.gen::<f64>() < self.hot_prob {
            self.rng.gen_range(0..self.hot_length)
        } else {
            self.hot_length + self.rng.gen_range(0..self.range - self.hot_length)
        }
    }
}
