use std::sync::Arc;

use super::skewed_sets::floor_frac;
use super::{KeyGenerator, Streams};
use crate::distributions::{Distribution, SkewedUniform, SkewedUniformParameters, Uniform};
use crate::keygen_data::KeyGeneratorData;
use crate::params::check_unit;
use crate::rng::tag;
use crate::{Error, Key, Result};

/// Cyclic schedule of excited states, each with its own hot set, separated by dormant
/// (uniform) periods. Durations count operations of the owning thread.
#[derive(Debug, Clone, PartialEq)]
pub struct TemporarySkewedParameters {
    pub state_count: usize,
    pub hot_time: u64,
    pub relax_time: u64,
    pub hot_probs: Vec<f64>,
    pub hot_sizes: Vec<f64>,
    pub hot_times: Option<Vec<u64>>,
    pub relax_times: Option<Vec<u64>>,
}

impl TemporarySkewedParameters {
    /// All states share `hot_prob` and `hot_size`.
    pub fn uniform_states(state_count: usize, hot_time: u64, relax_time: u64, hot_prob: f64, hot_size: f64) -> Self {
        Self {
            state_count,
            hot_time,
            relax_time,
            hot_probs: vec![hot_prob; state_count],
            hot_sizes: vec![hot_size; state_count],
            hot_times: None,
            relax_times: None,
        }
    }

    pub fn hot_duration(&self, state: usize) -> u64 {
        self.hot_times.as_ref().map_or(self.hot_time, |t| t[state])
    }

    pub fn relax_duration(&self, state: usize) -> u64 {
        self.relax_times.as_ref().map_or(self.relax_time, |t| t[state])
    }

    pub fn validate(&self, range: u64) -> Result<()> {
        if self.state_count == 0 {
            return Err(Error::NonPositive("state count"));
        }
        let n = self.state_count;
        arity("hot probabilities", n, self.hot_probs.len())?;
        arity("hot sizes", n, self.hot_sizes.len())?;
        if let Some(t) = &self.hot_times {
            arity("hot times", n, t.len())?;
        }
        if let Some(t) = &self.relax_times {
            arity("relax times", n, t.len())?;
        }
        if (0..n).all(|i| self.hot_duration(i) == 0 && self.relax_duration(i) == 0) {
            return Err(Error::ZeroSchedule);
        }
        for (&p, &s) in self.hot_probs.iter().zip(&self.hot_sizes) {
            check_unit("hot probability", p)?;
            check_unit("hot size", s)?;
            if p > 0.0 {
                SkewedUniform::new(SkewedUniformParameters { hot_size: s, hot_prob: p }, range, crate::seeded_rng(0, 0))?;
            }
        }
        Ok(())
    }
}

fn arity(name: &'static str, expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::Arity { name, expected, got })
    }
}

/// Position in the schedule. `Dormant(i)` follows `Excited(i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Excited(usize),
    Dormant(usize),
}

struct ExcitedState {
    /// `None` for a state without hot mass, which samples the whole range uniformly.
    dist: Option<SkewedUniform>,
    /// First index of this state's hot block; blocks of consecutive states are packed.
    offset: u64,
    hot_time: u64,
    relax_time: u64,
}

pub struct TemporarySkewedGenerator {
    data: Arc<KeyGeneratorData>,
    states: Vec<ExcitedState>,
    uniform: Uniform,
    prefill: Uniform,
    phase: Phase,
    remaining: u64,
}

impl TemporarySkewedGenerator {
    pub fn new(params: &TemporarySkewedParameters, data: Arc<KeyGeneratorData>, streams: Streams) -> Result<Self> {
        let range = data.range();
        params.validate(range)?;
        let mut offset = 0;
        let mut states = Vec::with_capacity(params.state_count);
        for i in 0..params.state_count {
            let hot = SkewedUniformParameters { hot_size: params.hot_sizes[i], hot_prob: params.hot_probs[i] };
            let dist = (hot.hot_prob > 0.0)
                .then(|| SkewedUniform::new(hot, range, streams.rng(tag::STATE_BASE + i as u16)))
                .transpose()?;
            states.push(ExcitedState {
                dist,
                offset,
                hot_time: params.hot_duration(i),
                relax_time: params.relax_duration(i),
            });
            offset = (offset + floor_frac(params.hot_sizes[i], range)) % range;
        }
        let remaining = states[0].hot_time;
        Ok(Self {
            uniform: Uniform::new(range, streams.rng(tag::MAIN))?,
            prefill: streams.prefill_uniform(range)?,
            data,
            states,
            phase: Phase::Excited(0),
            remaining,
        })
    }

    /// Hot block of state `i` as `(first index, length)`; it wraps around the range end.
    pub fn hot_block(&self, i: usize) -> (u64, u64) {
        let state = &self.states[i];
        (state.offset, state.dist.as_ref().map_or(0, SkewedUniform::hot_length))
    }

    /// Consumes one operation of the schedule, returning the phase it ran in.
    fn tick(&mut self) -> Phase {
        while self.remaining == 0 {
            let n = self.states.len();
            (self.phase, self.remaining) = match self.phase {
                Phase::Excited(i) => (Phase::Dormant(i), self.states[i].relax_time),
                Phase::Dormant(i) => {
                    let next = (i + 1) % n;
                    (Phase::Excited(next), self.states[next].hot_time)
                }
            };
        }
        self.remaining -= 1;
        self.phase
    }

    /// Draws the next key and reports the phase it was drawn in.
    pub fn next_with_phase(&mut self) -> (Phase, Key) {
        let phase = self.tick();
        let index = match phase {
            Phase::Excited(i) => {
                let state = &mut self.states[i];
                match state.dist.as_mut() {
                    Some(dist) => (dist.next() + state.offset) % self.data.range(),
                    None => self.uniform.next(),
                }
            }
            Phase::Dormant(_) => self.uniform.next(),
        };
        (phase, self.data.key_at(index))
    }
}

impl KeyGenerator for TemporarySkewedGenerator {
    fn next_get(&mut self) -> Key {
        self.next_with_phase().1
    }

    fn next_insert(&mut self) -> Key {
        self.next_with_phase().1
    }

    fn next_remove(&mut self) -> Key {
        self.next_with_phase().1
    }

    fn next_prefill(&mut self) -> Key {
        self.data.key_at(self.prefill.next())
    }
}
