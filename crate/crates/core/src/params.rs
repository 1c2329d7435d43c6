use crate::{Error, Result};

/// Largest supported key range; key arrays store 32-bit entries.
pub const MAX_RANGE: u64 = 1 << 32;

/// Parameters every workload needs, independent of key generator and thread loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchmarkParameters {
    /// Keys are drawn from `[0, range)`.
    pub range: u64,
    /// Structure size before the measured phase.
    pub initial_size: u64,
    pub worker_threads: usize,
    pub prefill_threads: usize,
    pub duration_ms: u64,
    pub seed: u64,
    pub repeats: usize,
}

impl Default for BenchmarkParameters {
    fn default() -> Self {
        Self {
            range: 10_000,
            initial_size: 5_000,
            worker_threads: 1,
            prefill_threads: 1,
            duration_ms: 1_000,
            seed: 0,
            repeats: 1,
        }
    }
}

impl BenchmarkParameters {
    pub fn validate(&self) -> Result<()> {
        if self.range == 0 {
            return Err(Error::EmptyRange);
        }
        if self.range > MAX_RANGE {
            return Err(Error::RangeTooLarge(self.range));
        }
        if self.initial_size > self.range {
            return Err(Error::InitialExceedsRange {
                initial: self.initial_size,
                range: self.range,
            });
        }
        if self.worker_threads == 0 {
            return Err(Error::NonPositive("worker threads"));
        }
        if self.prefill_threads == 0 {
            return Err(Error::NonPositive("prefill threads"));
        }
        if self.duration_ms == 0 {
            return Err(Error::NonPositive("duration"));
        }
        if self.repeats == 0 {
            return Err(Error::NonPositive("repeats"));
        }
        Ok(())
    }
}

pub(crate) fn check_unit(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::OutOfUnitInterval { name, value })
    }
}
