use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rand::Rng;

use super::{KeyGenerator, Streams};
use crate::distributions::{Distribution, DistributionSpec, MutableDistribution, Uniform};
use crate::keygen_data::KeyGeneratorData;
use crate::rng::{tag, BenchRng};
use crate::{Error, Key, Result};

/// Which side of the last removed key inserts land on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Direction {
    #[default]
    Both,
    Left,
    Right,
}

/// Inserts land near the most recently removed key.
#[derive(Debug, Clone, PartialEq)]
pub struct LeafsHandshakeParameters {
    pub get_distribution: DistributionSpec,
    pub remove_distribution: DistributionSpec,
    /// Offsets `d - 1` from the last removed key; must be mutable.
    pub insert_distribution: DistributionSpec,
    /// Offsets are drawn from `[1, insert_window]`.
    pub insert_window: u64,
    /// Keep the last removed key per thread rather than one cell shared by all.
    pub per_thread: bool,
    pub direction: Direction,
}

impl Default for LeafsHandshakeParameters {
    fn default() -> Self {
        Self {
            get_distribution: DistributionSpec::Uniform,
            remove_distribution: DistributionSpec::Uniform,
            insert_distribution: DistributionSpec::zipfian(1.0),
            insert_window: 100,
            per_thread: false,
            direction: Direction::Both,
        }
    }
}

impl LeafsHandshakeParameters {
    pub fn with_insert_distribution(insert_distribution: DistributionSpec) -> Self {
        Self { insert_distribution, ..Default::default() }
    }

    pub fn validate(&self, range: u64) -> Result<()> {
        if self.insert_window == 0 {
            return Err(Error::NonPositive("insert window"));
        }
        self.get_distribution.build(range, crate::seeded_rng(0, 0))?;
        self.remove_distribution.build(range, crate::seeded_rng(0, 0))?;
        self.insert_distribution.build_mutable(self.insert_window, crate::seeded_rng(0, 0))?;
        Ok(())
    }

    /// The cell every generator of one run publishes removed keys to.
    pub fn shared_cell(range: u64) -> Arc<AtomicU64> {
        Arc::new(AtomicU64::new(range / 2))
    }

    /// Builds a generator publishing to `shared`, or to a private cell when `per_thread` is set.
    pub fn generator(
        &self,
        data: Arc<KeyGeneratorData>,
        streams: Streams,
        shared: &Arc<AtomicU64>,
    ) -> Result<LeafsHandshakeGenerator> {
        let range = data.range();
        let last_removed = if self.per_thread { Self::shared_cell(range) } else { shared.clone() };
        Ok(LeafsHandshakeGenerator {
            get: self.get_distribution.build(range, streams.rng(tag::GET))?,
            remove: self.remove_distribution.build(range, streams.rng(tag::REMOVE))?,
            insert: self.insert_distribution.build_mutable(self.insert_window, streams.rng(tag::INSERT))?,
            window: self.insert_window,
            direction: self.direction,
            prefill: streams.prefill_uniform(range)?,
            rng: streams.rng(tag::MAIN),
            last_removed,
            data,
        })
    }
}

pub struct LeafsHandshakeGenerator {
    data: Arc<KeyGeneratorData>,
    get: Box<dyn Distribution>,
    remove: Box<dyn Distribution>,
    insert: Box<dyn MutableDistribution>,
    window: u64,
    direction: Direction,
    last_removed: Arc<AtomicU64>,
    prefill: Uniform,
    rng: BenchRng,
}

impl LeafsHandshakeGenerator {
    pub fn last_removed(&self) -> Key {
        self.last_removed.load(Ordering::Relaxed)
    }

    pub fn set_last_removed(&self, key: Key) {
        self.last_removed.store(key, Ordering::Relaxed);
    }
}

impl KeyGenerator for LeafsHandshakeGenerator {
    fn next_get(&mut self) -> Key {
        self.data.key_at(self.get.next())
    }

    fn next_insert(&mut self) -> Key {
        let range = self.data.range();
        let base = self.last_removed.load(Ordering::Relaxed);
        let distance = (1 + self.insert.next_in(self.window)) % range;
        let right = match self.direction {
            Direction::Both => self.rng.gen::<bool>(),
            Direction::Right => true,
            Direction::Left => false,
        };
        if right {
            (base + distance) % range
        } else {
            (base + range - distance) % range
        }
    }

    fn next_remove(&mut self) -> Key {
        let key = self.data.key_at(self.remove.next());
        self.last_removed.store(key, Ordering::Relaxed);
        key
    }

    fn next_prefill(&mut self) -> Key {
        self.data.key_at(self.prefill.next())
    }
}
