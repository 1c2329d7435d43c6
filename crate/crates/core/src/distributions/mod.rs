//! Index samplers over `[0, range)`.

use std::fmt;
use std::str::FromStr;

use crate::rng::BenchRng;
use crate::{Error, Result};

mod skewed_uniform;
mod uniform;
mod zipfian;

pub use skewed_uniform::{SkewedUniform, SkewedUniformParameters};
pub use uniform::Uniform;
pub use zipfian::{Zipfian, ZipfianParameters};

/// Generates the value of a random variable in `[0, range)` for a range fixed at construction.
pub trait Distribution: Send {
    fn next(&mut self) -> u64;
}

/// A distribution whose range may change while the benchmark runs.
pub trait MutableDistribution: Distribution {
    fn set_range(&mut self, range: u64);

    /// Samples from `[0, range)`, making `range` the current one.
    fn next_in(&mut self, range: u64) -> u64 {
        self.set_range(range);
        self.next()
    }
}

/// Distribution selector, parsed from identifiers such as `uniform`, `zipfian:0.99` or
/// `skewed-uniform:0.9:0.1` (hot probability, then hot size).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DistributionSpec {
    Uniform,
    SkewedUniform(SkewedUniformParameters),
    Zipfian(ZipfianParameters),
}

impl DistributionSpec {
    pub fn zipfian(alpha: f64) -> Self {
        DistributionSpec::Zipfian(ZipfianParameters { alpha })
    }

    pub fn skewed_uniform(hot_prob: f64, hot_size: f64) -> Self {
        DistributionSpec::SkewedUniform(SkewedUniformParameters { hot_size, hot_prob })
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            DistributionSpec::Uniform => Ok(()),
            DistributionSpec::SkewedUniform(p) => p.validate(),
            DistributionSpec::Zipfian(p) => p.validate(),
        }
    }

    pub fn build(&self, range: u64, rng: BenchRng) -> Result<Box<dyn Distribution>> {
        Ok(match self {
            DistributionSpec::Uniform => Box::new(Uniform::new(range, rng)?),
            DistributionSpec::SkewedUniform(p) => Box::new(SkewedUniform::new(*p, range, rng)?),
            DistributionSpec::Zipfian(p) => Box::new(Zipfian::new(*p, range, rng)?),
        })
    }

    pub fn build_mutable(&self, range: u64, rng: BenchRng) -> Result<Box<dyn MutableDistribution>> {
        Ok(match self {
            DistributionSpec::Uniform => Box::new(Uniform::new(range, rng)?),
            DistributionSpec::Zipfian(p) => Box::new(Zipfian::new(*p, range, rng)?),
            DistributionSpec::SkewedUniform(_) => return Err(Error::NotMutable(self.to_string())),
        })
    }
}

impl fmt::Display for DistributionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistributionSpec::Uniform => f.write_str("uniform"),
            DistributionSpec::SkewedUniform(p) => {
                write!(f, "skewed-uniform:{}:{}", p.hot_prob, p.hot_size)
            }
            DistributionSpec::Zipfian(p) => write!(f, "zipfian:{}", p.alpha),
        }
    }
}

impl FromStr for DistributionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(':');
        let name = parts.next().unwrap_or_default();
        let args: Vec<&str> = parts.collect();
        let num = |i: usize| -> Result<f64> {
            args[i]
                .trim()
                .parse::<f64>()
                .map_err(|_| Error::UnknownDistribution(s.to_string()))
        };
        let spec = match (name.trim(), args.len()) {
            ("uniform", 0) => DistributionSpec::Uniform,
            ("zipfian" | "zipf", 0) => DistributionSpec::zipfian(1.0),
            ("zipfian" | "zipf", 1) => DistributionSpec::zipfian(num(0)?),
            ("skewed-uniform", 2) => DistributionSpec::skewed_uniform(num(0)?, num(1)?),
            _ => return Err(Error::UnknownDistribution(s.to_string())),
        };
        spec.validate()?;
        Ok(spec)
    }
}
