use rand::Rng;

use super::{Distribution, MutableDistribution};
use crate::rng::BenchRng;
use crate::{Error, Result};

/// Every index of the range with equal probability.
#[derive(Debug, Clone)]
pub struct Uniform {
    range: u64,
    rng: BenchRng,
}

impl Uniform {
    pub fn new(range: u64, rng: BenchRng) -> Result<Self> {
        if range == 0 {
            return Err(Error::EmptyRange);
        }
        Ok(Self { range, rng })
    }

    pub fn range(&self) -> u64 {
        self.range
    }
}

impl Distribution for Uniform {
    #[inline]
    fn next(&mut self) -> u64 {
        self.rng.gen_range(0..self.range)
    }
}

impl MutableDistribution for Uniform {
    fn set_range(&mut self, range: u64) {
        assert!(range > 0, "uniform range must be positive");
        self.range = range;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded_rng;

    #[test]
    fn single_outcome() {
        let mut u = Uniform::new(1, seeded_rng(1, 0)).unwrap();
        assert!((0..1000).all(|_| u.next() == 0));
    }

    #[test]
    fn zero_range_rejected() {
        assert_eq!(Uniform::new(0, seeded_rng(1, 0)).unwrap_err(), Error::EmptyRange);
    }

    #[test]
    fn bins_within_six_sigma() {
        // p = 0.01, n = 1e6: sigma of a bin frequency is sqrt(p(1-p)/n) ~ 1e-4
        let n = 1_000_000;
        let mut u = Uniform::new(100, seeded_rng(2, 0)).unwrap();
        let mut bins = [0u64; 100];
        for _ in 0..n {
            bins[u.next() as usize] += 1;
        }
        for b in bins {
            let f = b as f64 / n as f64;
            assert!((f - 0.01).abs() <= 0.002, "{f}");
        }
    }

    #[test]
    fn containment() {
        let mut u = Uniform::new(10, seeded_rng(3, 0)).unwrap();
        assert!((0..10_000).all(|_| u.next() < 10));
    }
}
