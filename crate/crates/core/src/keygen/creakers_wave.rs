//! Creakers and Wave.
//!
//! The shared permutation is split into a wave region (the first `range - creakers` indices)
//! and a creaker block (the last `creakers` indices). The wave is the window of positions
//! `[tail, head)`; positions grow without bound and map to region index `position % region`.
//! Inserts extend the head, removes consume the tail, gets prefer positions near the head.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use super::skewed_sets::floor_frac;
use super::{KeyGenerator, KeyGeneratorFactory, Streams};
use crate::distributions::{Distribution, DistributionSpec, MutableDistribution};
use crate::keygen_data::KeyGeneratorData;
use crate::params::check_unit;
use crate::rng::{shared_rng, tag, BenchRng};
use crate::{BenchmarkParameters, ConcurrentIndex, Error, Key, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct CreakersWaveParameters {
    /// Probability that a get targets the creakers.
    pub creaker_prob: f64,
    /// Fraction of the range holding creakers.
    pub creaker_size: f64,
    /// Fraction of the range in the initial wave.
    pub wave_size: f64,
    /// Gets on creakers issued before measurement.
    pub creaker_age: u64,
    pub creaker_distribution: DistributionSpec,
    pub wave_distribution: DistributionSpec,
}

impl Default for CreakersWaveParameters {
    fn default() -> Self {
        Self {
            creaker_prob: 0.0,
            creaker_size: 0.0,
            wave_size: 0.1,
            creaker_age: 0,
            creaker_distribution: DistributionSpec::Uniform,
            wave_distribution: DistributionSpec::zipfian(1.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WaveLayout {
    pub creakers: u64,
    pub region: u64,
    pub initial_wave: u64,
}

impl WaveLayout {
    pub fn initial_size(&self) -> u64 {
        self.creakers + self.initial_wave
    }
}

impl CreakersWaveParameters {
    pub fn layout(&self, range: u64) -> WaveLayout {
        let creakers = floor_frac(self.creaker_size, range);
        WaveLayout {
            creakers,
            region: range.saturating_sub(creakers),
            initial_wave: floor_frac(self.wave_size, range),
        }
    }

    /// Checks that do not depend on the benchmark parameters.
    pub fn check_fractions(&self) -> Result<()> {
        check_unit("creaker probability", self.creaker_prob)?;
        check_unit("creaker size", self.creaker_size)?;
        check_unit("wave size", self.wave_size)?;
        if self.creaker_size + self.wave_size > 1.0 + 1e-12 {
            return Err(Error::CreakersWaveOverflow(self.creaker_size + self.wave_size));
        }
        Ok(())
    }

    pub fn validate(&self, params: &BenchmarkParameters) -> Result<()> {
        self.check_fractions()?;
        let layout = self.layout(params.range);
        if layout.initial_wave == 0 {
            return Err(Error::WaveTooSmall(layout.initial_wave));
        }
        if layout.creakers == 0 && self.creaker_prob > 0.0 {
            return Err(Error::EmptyHotSet { name: "creakers", prob: self.creaker_prob });
        }
        if layout.creakers == 0 && self.creaker_age > 0 {
            return Err(Error::NoCreakers(self.creaker_age));
        }
        if params.initial_size != layout.initial_size() {
            return Err(Error::WaveInitialSize { expected: layout.initial_size(), got: params.initial_size });
        }
        if layout.creakers > 0 {
            self.creaker_distribution.build(layout.creakers, crate::seeded_rng(0, 0))?;
        }
        self.wave_distribution.build_mutable(layout.initial_wave, crate::seeded_rng(0, 0))?;
        Ok(())
    }
}

/// Head and tail cursors shared by every thread.
#[derive(Debug)]
pub struct WaveState {
    head: AtomicU64,
    tail: AtomicU64,
    region: u64,
}

impl WaveState {
    pub fn new(region: u64, initial_wave: u64) -> Self {
        Self { head: AtomicU64::new(initial_wave), tail: AtomicU64::new(0), region }
    }

    /// `(tail, head)` snapshot.
    pub fn cursors(&self) -> (u64, u64) {
        let tail = self.tail.load(Ordering::SeqCst);
        let head = self.head.load(Ordering::SeqCst);
        (tail, head)
    }

    /// Moves both cursors; for scripted traces only, never while threads run.
    pub fn set_cursors(&self, tail: u64, head: u64) {
        assert!(tail < head && head - tail <= self.region);
        self.tail.store(tail, Ordering::SeqCst);
        self.head.store(head, Ordering::SeqCst);
    }

    pub fn region(&self) -> u64 {
        self.region
    }

    pub fn region_index(&self, position: u64) -> u64 {
        position % self.region
    }

    /// Claims the tail position, unless that would empty the wave.
    pub fn claim_tail(&self) -> Option<u64> {
        let mut tail = self.tail.load(Ordering::SeqCst);
        loop {
            let head = self.head.load(Ordering::SeqCst);
            if head - tail <= 1 {
                return None;
            }
            match self.tail.compare_exchange_weak(tail, tail + 1, Ordering::SeqCst, Ordering::SeqCst) {
                Ok(_) => return Some(tail),
                Err(current) => tail = current,
            }
        }
    }

    /// Claims the position after the head, unless the wave already covers the whole region.
    pub fn claim_head(&self) -> Option<u64> {
        let mut head = self.head.load(Ordering::SeqCst);
        loop {
            let tail = self.tail.load(Ordering::SeqCst);
            // `head` may be stale and behind `tail`; the CAS below then fails and reloads it
            if head.saturating_sub(tail) >= self.region {
                return None;
            }
            match self.head.compare_exchange_weak(head, head + 1, Ordering::SeqCst, Ordering::SeqCst) {
                Ok(_) => return Some(head),
                Err(current) => head = current,
            }
        }
    }
}

pub struct CreakersWaveFactory {
    params: CreakersWaveParameters,
    layout: WaveLayout,
    data: Arc<KeyGeneratorData>,
    wave: Arc<WaveState>,
    /// Data indices to prefill: creakers first, then the initial wave, each block shuffled.
    prefill_order: Arc<[u32]>,
    prefill_cursor: Arc<AtomicUsize>,
    seed: u64,
}

impl CreakersWaveFactory {
    pub fn new(params: CreakersWaveParameters, data: Arc<KeyGeneratorData>, seed: u64) -> Result<Self> {
        let layout = params.layout(data.range());
        let mut rng = shared_rng(seed, tag::PREFILL);
        let mut creakers: Vec<u32> = (layout.region..data.range()).map(|i| i as u32).collect();
        creakers.shuffle(&mut rng);
        let mut wave: Vec<u32> = (0..layout.initial_wave).map(|p| (p % layout.region) as u32).collect();
        wave.shuffle(&mut rng);
        creakers.extend(wave);
        Ok(Self {
            wave: Arc::new(WaveState::new(layout.region, layout.initial_wave)),
            prefill_order: creakers.into(),
            prefill_cursor: Arc::new(AtomicUsize::new(0)),
            params,
            layout,
            data,
            seed,
        })
    }

    pub fn wave(&self) -> &Arc<WaveState> {
        &self.wave
    }

    pub fn layout(&self) -> WaveLayout {
        self.layout
    }

    pub fn data(&self) -> &Arc<KeyGeneratorData> {
        &self.data
    }

    pub fn wave_generator(&self, thread_id: usize) -> CreakersWaveGenerator {
        let streams = Streams::new(self.seed, thread_id as u64);
        let creakers = (self.layout.creakers > 0).then(|| {
            streams
                .distribution(&self.params.creaker_distribution, self.layout.creakers, tag::AUX)
                .expect("validated")
        });
        CreakersWaveGenerator {
            data: self.data.clone(),
            wave: self.wave.clone(),
            creaker_prob: self.params.creaker_prob,
            creakers,
            creaker_base: self.layout.region,
            wave_dist: self
                .params
                .wave_distribution
                .build_mutable(self.layout.initial_wave, streams.rng(tag::GET))
                .expect("validated"),
            prefill_order: self.prefill_order.clone(),
            prefill_cursor: self.prefill_cursor.clone(),
            rng: streams.rng(tag::MAIN),
        }
    }
}

impl KeyGeneratorFactory for CreakersWaveFactory {
    fn generator(&self, thread_id: usize) -> Box<dyn KeyGenerator> {
        Box::new(self.wave_generator(thread_id))
    }

    /// Issues exactly `creaker_age` gets on creaker keys.
    fn warmup(&self, index: &dyn ConcurrentIndex) -> u64 {
        if self.params.creaker_age == 0 {
            return 0;
        }
        let mut g = self.wave_generator(usize::MAX >> 16);
        for _ in 0..self.params.creaker_age {
            index.get(g.next_creaker());
        }
        self.params.creaker_age
    }

    fn required_initial_size(&self) -> Option<u64> {
        Some(self.layout.initial_size())
    }
}

pub struct CreakersWaveGenerator {
    data: Arc<KeyGeneratorData>,
    wave: Arc<WaveState>,
    creaker_prob: f64,
    creakers: Option<Box<dyn Distribution>>,
    creaker_base: u64,
    wave_dist: Box<dyn MutableDistribution>,
    prefill_order: Arc<[u32]>,
    prefill_cursor: Arc<AtomicUsize>,
    rng: BenchRng,
}

impl CreakersWaveGenerator {
    pub fn key_at_position(&self, position: u64) -> Key {
        self.data.key_at(self.wave.region_index(position))
    }

    pub fn next_creaker(&mut self) -> Key {
        let creakers = self.creakers.as_mut().expect("creaker set is empty");
        self.data.key_at(self.creaker_base + creakers.next())
    }

    /// A wave key; offset 0 is the newest position, `head - 1`.
    pub fn next_wave(&mut self) -> Key {
        let (tail, head) = self.wave.cursors();
        let size = head - tail;
        let offset = self.wave_dist.next_in(size);
        self.key_at_position(head - 1 - offset)
    }
}

impl KeyGenerator for CreakersWaveGenerator {
    fn next_get(&mut self) -> Key {
        if self.creakers.is_some() && self.rng.gen::<f64>() < self.creaker_prob {
            self.next_creaker()
        } else {
            self.next_wave()
        }
    }

    fn next_insert(&mut self) -> Key {
        match self.wave.claim_head() {
            Some(position) => self.key_at_position(position),
            None => self.next_get(),
        }
    }

    fn next_remove(&mut self) -> Key {
        match self.wave.claim_tail() {
            Some(position) => self.key_at_position(position),
            None => self.next_get(),
        }
    }

    fn next_prefill(&mut self) -> Key {
        let i = self.prefill_cursor.fetch_add(1, Ordering::Relaxed) % self.prefill_order.len();
        self.data.key_at(self.prefill_order[i] as u64)
    }
}
