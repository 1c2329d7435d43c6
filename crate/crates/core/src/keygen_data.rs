//! Index-to-key translation.

use rand::seq::SliceRandom;

use crate::params::MAX_RANGE;
use crate::rng::{self, tag};
use crate::{Error, Key, Result};

/// A permutation of `[0, range)`: sampled indices are looked up here to obtain keys.
///
/// Built once from the benchmark seed and shared read-only by every thread, so all threads
/// agree on which keys form a hot set. Non-shuffle mode is the identity and stores nothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyGeneratorData {
    range: u64,
    keys: Option<Box<[u32]>>,
}

impl KeyGeneratorData {
    pub fn identity(range: u64) -> Result<Self> {
        check_range(range)?;
        Ok(Self { range, keys: None })
    }

    /// Fisher-Yates shuffle of `[0, range)` driven by `seed`.
    pub fn shuffled(range: u64, seed: u64) -> Result<Self> {
        check_range(range)?;
        let mut keys: Vec<u32> = (0..range).map(|k| k as u32).collect();
        keys.shuffle(&mut rng::shared_rng(seed, tag::MAIN));
        Ok(Self { range, keys: Some(keys.into_boxed_slice()) })
    }

    pub fn new(range: u64, shuffle: bool, seed: u64) -> Result<Self> {
        if shuffle {
            Self::shuffled(range, seed)
        } else {
            Self::identity(range)
        }
    }

    pub fn range(&self) -> u64 {
        self.range
    }

    pub fn is_shuffled(&self) -> bool {
        self.keys.is_some()
    }

    pub fn get(&self, index: u64) -> Result<Key> {
        if index >= self.range {
            return Err(Error::IndexOutOfBounds { index, range: self.range });
        }
        Ok(self.key_at(index))
    }

    /// Hot-path lookup; panics when `index` is out of bounds.
    #[inline]
    pub fn key_at(&self, index: u64) -> Key {
        match &self.keys {
            Some(keys) => keys[index as usize] as Key,
            None => {
                assert!(index < self.range, "index {index} out of bounds for range {}", self.range);
                index
            }
        }
    }
}

fn check_range(range: u64) -> Result<()> {
    match range {
        0 => Err(Error::EmptyRange),
        r if r > MAX_RANGE => Err(Error::RangeTooLarge(r)),
        _ => Ok(()),
    }
}
