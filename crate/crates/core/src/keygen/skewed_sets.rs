use std::sync::Arc;

use super::{KeyGenerator, Streams};
use crate::distributions::{Distribution, SkewedUniform, Uniform};
use crate::keygen_data::KeyGeneratorData;
use crate::params::check_unit;
use crate::rng::tag;
use crate::{Error, Key, Result};

/// Separate hot sets for reads and updates with a controlled overlap.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewedSetsParameters {
    pub read_hot_prob: f64,
    pub read_hot_size: f64,
    pub write_hot_prob: f64,
    pub write_hot_size: f64,
    /// Fraction of the smaller hot set shared by both.
    pub intersection: f64,
}

/// Index blocks inside the shared permutation: reads are hot on `[0, read_len)`, updates on
/// `[write_start, write_start + write_len)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SkewedSetsLayout {
    pub read_len: u64,
    pub write_start: u64,
    pub write_len: u64,
    pub overlap: u64,
}

impl SkewedSetsParameters {
    pub fn layout(&self, range: u64) -> Result<SkewedSetsLayout> {
        check_unit("read hot probability", self.read_hot_prob)?;
        check_unit("read hot size", self.read_hot_size)?;
        check_unit("write hot probability", self.write_hot_prob)?;
        check_unit("write hot size", self.write_hot_size)?;
        check_unit("intersection", self.intersection)?;
        let read_len = floor_frac(self.read_hot_size, range);
        let write_len = floor_frac(self.write_hot_size, range);
        let overlap = (self.intersection * read_len.min(write_len) as f64).floor() as u64;
        let write_start = read_len - overlap;
        if write_start + write_len > range {
            return Err(Error::SkewedSetsLayout { needed: write_start + write_len, range });
        }
        check_split("read hot set", read_len, range, self.read_hot_prob)?;
        check_split("write hot set", write_len, range, self.write_hot_prob)?;
        Ok(SkewedSetsLayout { read_len, write_start, write_len, overlap })
    }
}

pub(crate) fn floor_frac(fraction: f64, range: u64) -> u64 {
    ((fraction * range as f64).floor() as u64).min(range)
}

fn check_split(name: &'static str, hot: u64, range: u64, prob: f64) -> Result<()> {
    if hot == 0 && prob > 0.0 {
        return Err(Error::EmptyHotSet { name, prob });
    }
    if hot == range && prob < 1.0 {
        return Err(Error::EmptyColdSet { name, prob: 1.0 - prob });
    }
    Ok(())
}

pub struct SkewedSetsGenerator {
    data: Arc<KeyGeneratorData>,
    read: SkewedUniform,
    write: SkewedUniform,
    write_start: u64,
    prefill: Uniform,
}

impl SkewedSetsGenerator {
    pub fn new(params: &SkewedSetsParameters, data: Arc<KeyGeneratorData>, streams: Streams) -> Result<Self> {
        let range = data.range();
        let layout = params.layout(range)?;
        Ok(Self {
            read: SkewedUniform::with_hot_length(layout.read_len, params.read_hot_prob, range, streams.rng(tag::GET))?,
            write: SkewedUniform::with_hot_length(layout.write_len, params.write_hot_prob, range, streams.rng(tag::INSERT))?,
            write_start: layout.write_start,
            prefill: streams.prefill_uniform(range)?,
            data,
        })
    }

    fn next_update(&mut self) -> Key {
        // rotate the sample so the hot block starts at write_start
        let range = self.data.range();
        let index = (self.write.next() + self.write_start) % range;
        self.data.key_at(index)
    }
}

impl KeyGenerator for SkewedSetsGenerator {
    fn next_get(&mut self) -> Key {
        self.data.key_at(self.read.next())
    }

    fn next_insert(&mut self) -> Key {
        self.next_update()
    }

    fn next_remove(&mut self) -> Key {
        self.next_update()
    }

    fn next_prefill(&mut self) -> Key {
        self.data.key_at(self.prefill.next())
    }
}
