//! Per-thread key sources.
//!
//! A [`KeyGeneratorSpec`] is validated against the benchmark parameters and built once into a
//! [`KeyGeneratorFactory`], which owns whatever the threads share (the key permutation, wave
//! cursors, the last removed key) and hands out one [`KeyGenerator`] per thread.

use std::fmt;
use std::sync::atomic::AtomicU64;
use std::sync::Arc;

use crate::distributions::DistributionSpec;
use crate::keygen_data::KeyGeneratorData;
use crate::rng::{stream_rng, tag};
use crate::{BenchmarkParameters, ConcurrentIndex, Key, Result};

mod creakers_wave;
mod default;
mod leafs_handshake;
mod skewed_sets;
mod temporary_skewed;

pub use creakers_wave::{CreakersWaveFactory, CreakersWaveGenerator, CreakersWaveParameters, WaveState};
pub use default::{DefaultKeyGenerator, DefaultParameters};
pub use leafs_handshake::{Direction, LeafsHandshakeGenerator, LeafsHandshakeParameters};
pub use skewed_sets::{SkewedSetsGenerator, SkewedSetsLayout, SkewedSetsParameters};
pub use temporary_skewed::{Phase, TemporarySkewedGenerator, TemporarySkewedParameters};

/// Thread ids at or above this value belong to prefill threads.
pub const PREFILL_THREAD_BASE: usize = 1 << 20;

pub trait KeyGenerator: Send {
    fn next_get(&mut self) -> Key;
    fn next_insert(&mut self) -> Key;
    fn next_remove(&mut self) -> Key;
    fn next_prefill(&mut self) -> Key;
}

impl<G: KeyGenerator + ?Sized> KeyGenerator for Box<G> {
    fn next_get(&mut self) -> Key {
        (**self).next_get()
    }
    fn next_insert(&mut self) -> Key {
        (**self).next_insert()
    }
    fn next_remove(&mut self) -> Key {
        (**self).next_remove()
    }
    fn next_prefill(&mut self) -> Key {
        (**self).next_prefill()
    }
}

/// Shared state of one configured key generator.
pub trait KeyGeneratorFactory: Send + Sync {
    fn generator(&self, thread_id: usize) -> Box<dyn KeyGenerator>;

    fn prefill_generator(&self, thread_id: usize) -> Box<dyn KeyGenerator> {
        self.generator(PREFILL_THREAD_BASE + thread_id)
    }

    /// Operations to run after prefill and before measurement. Returns the number issued.
    fn warmup(&self, _index: &dyn ConcurrentIndex) -> u64 {
        0
    }

    /// Prefill size this generator depends on, if it fixes one.
    fn required_initial_size(&self) -> Option<u64> {
        None
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum KeyGeneratorSpec {
    Default(DefaultParameters),
    SkewedSets(SkewedSetsParameters),
    TemporarySkewed(TemporarySkewedParameters),
    CreakersAndWave(CreakersWaveParameters),
    LeafsHandshake(LeafsHandshakeParameters),
}

impl KeyGeneratorSpec {
    pub const IDS: [&'static str; 5] =
        ["default", "skewed-sets", "temporary-skewed", "creakers-and-wave", "leafs-handshake"];

    pub fn id(&self) -> &'static str {
        match self {
            KeyGeneratorSpec::Default(_) => "default",
            KeyGeneratorSpec::SkewedSets(_) => "skewed-sets",
            KeyGeneratorSpec::TemporarySkewed(_) => "temporary-skewed",
            KeyGeneratorSpec::CreakersAndWave(_) => "creakers-and-wave",
            KeyGeneratorSpec::LeafsHandshake(_) => "leafs-handshake",
        }
    }

    /// Initial size implied by the generator, if any (the creakers plus the initial wave).
    pub fn required_initial_size(&self, range: u64) -> Option<u64> {
        match self {
            KeyGeneratorSpec::CreakersAndWave(p) => Some(p.layout(range).initial_size()),
            _ => None,
        }
    }

    pub fn validate(&self, params: &BenchmarkParameters) -> Result<()> {
        // the wave fixes the initial size, so a bad layout would otherwise surface as a size error
        if let KeyGeneratorSpec::CreakersAndWave(p) = self {
            p.check_fractions()?;
        }
        params.validate()?;
        match self {
            KeyGeneratorSpec::Default(p) => p.validate(params.range),
            KeyGeneratorSpec::SkewedSets(p) => p.layout(params.range).map(|_| ()),
            KeyGeneratorSpec::TemporarySkewed(p) => p.validate(params.range),
            KeyGeneratorSpec::CreakersAndWave(p) => p.validate(params),
            KeyGeneratorSpec::LeafsHandshake(p) => p.validate(params.range),
        }
    }

    /// Builds the shared state. `shuffle = false` selects the identity key layout.
    pub fn build(&self, params: &BenchmarkParameters, shuffle: bool) -> Result<Arc<dyn KeyGeneratorFactory>> {
        self.validate(params)?;
        let data = Arc::new(KeyGeneratorData::new(params.range, shuffle, params.seed)?);
        Ok(match self {
            KeyGeneratorSpec::CreakersAndWave(p) => Arc::new(CreakersWaveFactory::new(p.clone(), data, params.seed)?),
            _ => Arc::new(SimpleFactory {
                spec: self.clone(),
                last_removed: LeafsHandshakeParameters::shared_cell(params.range),
                data,
                seed: params.seed,
            }),
        })
    }
}

impl fmt::Display for KeyGeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Factory for generators whose only shared state is the key permutation (plus, for Leafs
/// Handshake, the last removed key).
struct SimpleFactory {
    spec: KeyGeneratorSpec,
    data: Arc<KeyGeneratorData>,
    last_removed: Arc<AtomicU64>,
    seed: u64,
}

impl KeyGeneratorFactory for SimpleFactory {
    fn generator(&self, thread_id: usize) -> Box<dyn KeyGenerator> {
        let streams = Streams { seed: self.seed, thread: thread_id as u64 };
        let data = self.data.clone();
        // parameters were validated in build(), construction cannot fail here
        match &self.spec {
            KeyGeneratorSpec::Default(p) => Box::new(DefaultKeyGenerator::new(p, data, streams).expect("validated")),
            KeyGeneratorSpec::SkewedSets(p) => Box::new(SkewedSetsGenerator::new(p, data, streams).expect("validated")),
            KeyGeneratorSpec::TemporarySkewed(p) => {
                Box::new(TemporarySkewedGenerator::new(p, data, streams).expect("validated"))
            }
            KeyGeneratorSpec::LeafsHandshake(p) => Box::new(p.generator(data, streams, &self.last_removed).expect("validated")),
            KeyGeneratorSpec::CreakersAndWave(_) => unreachable!("creakers-and-wave has its own factory"),
        }
    }
}

/// Random streams of one thread.
#[derive(Debug, Clone, Copy)]
pub struct Streams {
    pub seed: u64,
    pub thread: u64,
}

impl Streams {
    pub fn new(seed: u64, thread: u64) -> Self {
        Self { seed, thread }
    }

    pub fn rng(&self, stream: u16) -> crate::BenchRng {
        stream_rng(self.seed, self.thread, stream)
    }

    pub fn distribution(&self, spec: &DistributionSpec, range: u64, stream: u16) -> Result<Box<dyn crate::distributions::Distribution>> {
        spec.build(range, self.rng(stream))
    }

    pub(crate) fn prefill_uniform(&self, range: u64) -> Result<crate::distributions::Uniform> {
        crate::distributions::Uniform::new(range, self.rng(tag::PREFILL))
    }
}

#[cfg(test)]
mod tests;
