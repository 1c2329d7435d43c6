//! Building blocks for skewed, infinite workloads against concurrent key-value indices.
//!
//! A benchmark is assembled from four kinds of pieces:
//!
//! - a [`Distribution`](distributions::Distribution) samples an index in `[0, range)`;
//! - a [`KeyGeneratorData`](keygen_data::KeyGeneratorData) maps sampled indices to keys;
//! - a [`KeyGenerator`](keygen::KeyGenerator) combines distributions and data into a per-thread
//!   key source for gets, inserts, removes and prefill;
//! - a thread loop ([`threadloop`]) decides which operation runs next, executes it against a
//!   [`ConcurrentIndex`] and records [`ThreadStats`].

pub mod distributions;
mod error;
pub mod index;
pub mod keygen;
pub mod keygen_data;
pub mod params;
pub mod reference;
pub mod rng;
pub mod stats;
pub mod threadloop;

pub use error::{Error, Result};
pub use index::{ConcurrentIndex, Key, Value};
pub use params::BenchmarkParameters;
pub use rng::{seeded_rng, BenchRng};
pub use stats::{aggregate, AggregateStats, ThreadStats};
