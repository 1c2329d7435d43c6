use std::sync::Arc;

use super::{KeyGenerator, Streams};
use crate::distributions::{Distribution, DistributionSpec, Uniform};
use crate::keygen_data::KeyGeneratorData;
use crate::rng::tag;
use crate::{Key, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct DefaultParameters {
    pub distribution: DistributionSpec,
}

impl Default for DefaultParameters {
    fn default() -> Self {
        Self { distribution: DistributionSpec::Uniform }
    }
}

impl DefaultParameters {
    pub fn validate(&self, range: u64) -> Result<()> {
        // building with a throwaway stream checks range-dependent constraints too
        self.distribution.build(range, crate::seeded_rng(0, 0)).map(|_| ())
    }
}

/// One distribution feeding the key permutation for every operation kind.
pub struct DefaultKeyGenerator {
    data: Arc<KeyGeneratorData>,
    dist: Box<dyn Distribution>,
    prefill: Uniform,
}

impl DefaultKeyGenerator {
    pub fn new(params: &DefaultParameters, data: Arc<KeyGeneratorData>, streams: Streams) -> Result<Self> {
        let range = data.range();
        Ok(Self {
            dist: streams.distribution(&params.distribution, range, tag::MAIN)?,
            prefill: streams.prefill_uniform(range)?,
            data,
        })
    }

    #[inline]
    fn next_key(&mut self) -> Key {
        self.data.key_at(self.dist.next())
    }
}

impl KeyGenerator for DefaultKeyGenerator {
    fn next_get(&mut self) -> Key {
        self.next_key()
    }

    fn next_insert(&mut self) -> Key {
        self.next_key()
    }

    fn next_remove(&mut self) -> Key {
        self.next_key()
    }

    fn next_prefill(&mut self) -> Key {
        self.data.key_at(self.prefill.next())
    }
}
