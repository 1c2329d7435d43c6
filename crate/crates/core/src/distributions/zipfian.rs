//! Bounded Zipf sampling by rejection-inversion (Hörmann and Derflinger, 1996).
//!
//! Rank `k` in `1..=n` has probability proportional to `k^-alpha`; rank 1 is returned as
//! index 0. The range-dependent constant is a single evaluation of the hat integral, so
//! changing the range costs O(1).

use rand::Rng;

use super::{Distribution, MutableDistribution};
use crate::rng::BenchRng;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZipfianParameters {
    pub alpha: f64,
}

impl Default for ZipfianParameters {
    fn default() -> Self {
        Self { alpha: 1.0 }
    }
}

impl ZipfianParameters {
    pub fn validate(&self) -> Result<()> {
        if self.alpha > 0.0 && self.alpha.is_finite() {
            Ok(())
        } else {
            Err(Error::InvalidAlpha(self.alpha))
        }
    }
}

#[derive(Debug, Clone)]
pub struct Zipfian {
    alpha: f64,
    range: u64,
    /// `H(1.5) - 1`
    h_integral_x1: f64,
    /// `H(range + 0.5)`
    h_integral_range: f64,
    /// `2 - H^-1(H(2.5) - h(2))`
    squeeze: f64,
    rng: BenchRng,
}

impl Zipfian {
    pub fn new(params: ZipfianParameters, range: u64, rng: BenchRng) -> Result<Self> {
        params.validate()?;
        if range == 0 {
            return Err(Error::EmptyRange);
        }
        let alpha = params.alpha;
        Ok(Self {
            alpha,
            range,
            h_integral_x1: h_integral(1.5, alpha) - 1.0,
            h_integral_range: h_integral(range as f64 + 0.5, alpha),
            squeeze: 2.0 - h_integral_inverse(h_integral(2.5, alpha) - h(2.0, alpha), alpha),
            rng,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn range(&self) -> u64 {
        self.range
    }

    /// Samples a rank in `1..=range`.
    fn next_rank(&mut self) -> u64 {
        let n = self.range as f64;
        loop {
            let u = self.h_integral_range
                + self.rng.gen::<f64>() * (self.h_integral_x1 - self.h_integral_range);
            let x = h_integral_inverse(u, self.alpha);
            let k = (x + 0.5).floor().clamp(1.0, n);
            if k - x <= self.squeeze || u >= h_integral(k + 0.5, self.alpha) - h(k, self.alpha) {
                return k as u64;
            }
        }
    }
}

impl Distribution for Zipfian {
    #[inline]
    fn next(&mut self) -> u64 {
        self.next_rank() - 1
    }
}

impl MutableDistribution for Zipfian {
    fn set_range(&mut self, range: u64) {
        assert!(range > 0, "zipfian range must be positive");
        if range != self.range {
            self.range = range;
            self.h_integral_range = h_integral(range as f64 + 0.5, self.alpha);
        }
    }
}

/// `h(x) = x^-alpha`
fn h(x: f64, alpha: f64) -> f64 {
    (-alpha * x.ln()).exp()
}

/// `H(x) = (x^(1-alpha) - 1) / (1 - alpha)`, continuous at `alpha = 1` where it is `ln x`.
fn h_integral(x: f64, alpha: f64) -> f64 {
    let log_x = x.ln();
    expm1_over_x((1.0 - alpha) * log_x) * log_x
}

fn h_integral_inverse(y: f64, alpha: f64) -> f64 {
    let mut t = y * (1.0 - alpha);
    if t < -1.0 {
        // rounding can push t just below -1
        t = -1.0;
    }
    (log1p_over_x(t) * y).exp()
}

/// `(e^x - 1) / x`, tending to 1 at 0.
fn expm1_over_x(x: f64) -> f64 {
    if x.abs() > 1e-8 {
        x.exp_m1() / x
    } else {
        1.0 + x * 0.5 * (1.0 + x / 3.0 * (1.0 + 0.25 * x))
    }
}

/// `ln(1 + x) / x`, tending to 1 at 0.
fn log1p_over_x(x: f64) -> f64 {
    if x.abs() > 1e-8 {
        x.ln_1p() / x
    } else {
        1.0 - x * (0.5 - x * (1.0 / 3.0 - 0.25 * x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded_rng;

    /// Exact pmf by direct summation.
    fn pmf(range: u64, alpha: f64) -> Vec<f64> {
        let weights: Vec<f64> = (1..=range).map(|k| (k as f64).powf(-alpha)).collect();
        let total: f64 = weights.iter().sum();
        weights.into_iter().map(|w| w / total).collect()
    }

    fn histogram(z: &mut Zipfian, n: usize) -> Vec<f64> {
        let mut bins = vec![0u64; z.range() as usize];
        for _ in 0..n {
            bins[z.next() as usize] += 1;
        }
        bins.into_iter().map(|b| b as f64 / n as f64).collect()
    }

    fn zipf(alpha: f64, range: u64, seed: u64) -> Zipfian {
        Zipfian::new(ZipfianParameters { alpha }, range, seeded_rng(seed, 0)).unwrap()
    }

    #[test]
    fn single_outcome() {
        for alpha in [0.5, 1.0, 2.0] {
            let mut z = zipf(alpha, 1, 1);
            assert!((0..1000).all(|_| z.next() == 0));
        }
    }

    #[test]
    fn invalid_parameters() {
        assert!(Zipfian::new(ZipfianParameters { alpha: 0.0 }, 10, seeded_rng(0, 0)).is_err());
        assert!(Zipfian::new(ZipfianParameters { alpha: -1.0 }, 10, seeded_rng(0, 0)).is_err());
        assert!(Zipfian::new(ZipfianParameters { alpha: 1.0 }, 0, seeded_rng(0, 0)).is_err());
    }

    #[test]
    fn three_ranks_alpha_one() {
        // H = 1 + 1/2 + 1/3 = 11/6
        let freq = histogram(&mut zipf(1.0, 3, 2), 1_000_000);
        for (f, e) in freq.iter().zip([6.0 / 11.0, 3.0 / 11.0, 2.0 / 11.0]) {
            assert!((f - e).abs() <= 0.005, "{f} vs {e}");
        }
    }

    #[test]
    fn hundred_ranks_linf() {
        let freq = histogram(&mut zipf(1.0, 100, 3), 1_000_000);
        let exact = pmf(100, 1.0);
        let linf = freq.iter().zip(&exact).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(linf < 0.005, "{linf}");
    }

    #[test]
    fn other_exponents_match_pmf() {
        for alpha in [0.5, 0.99, 2.0] {
            let freq = histogram(&mut zipf(alpha, 50, 4), 500_000);
            let exact = pmf(50, alpha);
            for (a, b) in freq.iter().zip(&exact) {
                // 6 sigma of a binomial frequency
                let sigma = (b * (1.0 - b) / 500_000.0).sqrt();
                assert!((a - b).abs() <= 6.0 * sigma + 1e-4, "alpha {alpha}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn frequencies_non_increasing() {
        let n = 1_000_000;
        let freq = histogram(&mut zipf(1.0, 20, 5), n);
        for i in 0..freq.len() - 1 {
            let sigma = (freq[i] / n as f64).sqrt();
            assert!(freq[i] >= freq[i + 1] - 6.0 * sigma, "index {i}");
        }
    }

    #[test]
    fn set_range_tracks_pmf() {
        let mut z = zipf(1.0, 1000, 6);
        let n = 600_000;
        let mut bins = [0u64; 3];
        for i in 0..n {
            // interleave a large range so the constant is recomputed every call
            let _ = z.next_in(1000 + i as u64 % 7);
            bins[z.next_in(3) as usize] += 1;
        }
        for (b, e) in bins.iter().zip([6.0 / 11.0, 3.0 / 11.0, 2.0 / 11.0]) {
            assert!((*b as f64 / n as f64 - e).abs() <= 0.005);
        }
    }

    #[test]
    fn integral_helpers_agree_with_closed_forms() {
        for x in [1.5, 2.5, 10.0, 1e6] {
            assert!((h_integral(x, 1.0) - x.ln()).abs() < 1e-12);
            let a = 2.0;
            let closed = (x.powf(1.0 - a) - 1.0) / (1.0 - a);
            assert!((h_integral(x, a) - closed).abs() < 1e-12);
            for alpha in [0.5, 1.0, 2.0] {
                let y = h_integral(x, alpha);
                assert!((h_integral_inverse(y, alpha) - x).abs() / x < 1e-9);
            }
        }
    }
}
