//! Operation selection, the concurrent prefill protocol and the measured phase.

use std::sync::atomic::{AtomicBool, AtomicI64, Ordering};
use std::sync::Barrier;
use std::thread;
use std::time::{Duration, Instant};

use rand::Rng;

use crate::keygen::{KeyGenerator, KeyGeneratorFactory};
use crate::params::check_unit;
use crate::rng::{stream_rng, tag, BenchRng};
use crate::stats::{aggregate, AggregateStats, ThreadStats};
use crate::{ConcurrentIndex, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OpKind {
    Get,
    Insert,
    Remove,
}

/// Fractions of inserts and removes; the rest are gets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperationMix {
    pub insert: f64,
    pub remove: f64,
}

impl OperationMix {
    pub fn new(insert: f64, remove: f64) -> Result<Self> {
        let mix = Self { insert, remove };
        mix.validate()?;
        Ok(mix)
    }

    pub const READ_ONLY: OperationMix = OperationMix { insert: 0.0, remove: 0.0 };

    /// `update` split evenly between inserts and removes.
    pub fn updates(update: f64) -> Result<Self> {
        Self::new(update / 2.0, update / 2.0)
    }

    pub fn read(&self) -> f64 {
        1.0 - self.insert - self.remove
    }

    pub fn validate(&self) -> Result<()> {
        check_unit("insert fraction", self.insert)?;
        check_unit("remove fraction", self.remove)?;
        if self.insert + self.remove > 1.0 + 1e-12 {
            return Err(Error::MixExceedsOne { insert: self.insert, remove: self.remove });
        }
        Ok(())
    }

    #[inline]
    pub fn select(&self, u: f64) -> OpKind {
        if u < self.insert {
            OpKind::Insert
        } else if u < self.insert + self.remove {
            OpKind::Remove
        } else {
            OpKind::Get
        }
    }
}

/// Cyclic intervals, each with its own mix; durations count operations of the owning thread.
#[derive(Debug, Clone, PartialEq)]
pub struct TemporaryOperationsParameters {
    pub durations: Vec<u64>,
    pub mixes: Vec<OperationMix>,
}

impl TemporaryOperationsParameters {
    pub fn interval_count(&self) -> usize {
        self.durations.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.durations.is_empty() {
            return Err(Error::NonPositive("interval count"));
        }
        if self.mixes.len() != self.durations.len() {
            return Err(Error::Arity { name: "interval mixes", expected: self.durations.len(), got: self.mixes.len() });
        }
        if self.durations.contains(&0) {
            return Err(Error::NonPositive("interval duration"));
        }
        self.mixes.iter().try_for_each(OperationMix::validate)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ThreadLoopSpec {
    Default(OperationMix),
    TemporaryOperations(TemporaryOperationsParameters),
}

impl ThreadLoopSpec {
    pub const IDS: [&'static str; 2] = ["default", "temporary-operations"];

    pub fn id(&self) -> &'static str {
        match self {
            ThreadLoopSpec::Default(_) => "default",
            ThreadLoopSpec::TemporaryOperations(_) => "temporary-operations",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ThreadLoopSpec::Default(mix) => mix.validate(),
            ThreadLoopSpec::TemporaryOperations(p) => p.validate(),
        }
    }

    pub fn build(&self, seed: u64, thread_id: usize) -> Result<Box<dyn ThreadLoop>> {
        self.validate()?;
        let rng = stream_rng(seed, thread_id as u64, tag::OPERATION);
        Ok(match self {
            ThreadLoopSpec::Default(mix) => Box::new(DefaultLoop { mix: *mix, rng }),
            ThreadLoopSpec::TemporaryOperations(p) => Box::new(TemporaryOperationsLoop::new(p.clone(), rng)),
        })
    }
}

/// Chooses the next operation of one thread.
pub trait ThreadLoop: Send {
    fn next_op(&mut self) -> OpKind;

    /// Selects an operation, draws its key and runs it, recording the outcome.
    #[inline]
    fn step(&mut self, index: &dyn ConcurrentIndex, keygen: &mut dyn KeyGenerator, stats: &mut ThreadStats) {
        execute(self.next_op(), index, keygen, stats);
    }
}

#[inline]
pub fn execute(op: OpKind, index: &dyn ConcurrentIndex, keygen: &mut dyn KeyGenerator, stats: &mut ThreadStats) {
    match op {
        OpKind::Get => {
            stats.gets_attempted += 1;
            if index.get(keygen.next_get()).is_some() {
                stats.gets_hit += 1;
            }
        }
        OpKind::Insert => {
            let key = keygen.next_insert();
            stats.inserts_attempted += 1;
            if index.put_if_absent(key, key).is_none() {
                stats.inserts_succeeded += 1;
            }
        }
        OpKind::Remove => {
            stats.removes_attempted += 1;
            if index.remove(keygen.next_remove()).is_some() {
                stats.removes_succeeded += 1;
            }
        }
    }
}

/// A fixed mix for the whole run.
pub struct DefaultLoop {
    mix: OperationMix,
    rng: BenchRng,
}

impl DefaultLoop {
    pub fn new(mix: OperationMix, rng: BenchRng) -> Self {
        Self { mix, rng }
    }
}

impl ThreadLoop for DefaultLoop {
    #[inline]
    fn next_op(&mut self) -> OpKind {
        self.mix.select(self.rng.gen::<f64>())
    }
}

pub struct TemporaryOperationsLoop {
    params: TemporaryOperationsParameters,
    interval: usize,
    remaining: u64,
    rng: BenchRng,
}

impl TemporaryOperationsLoop {
    pub fn new(params: TemporaryOperationsParameters, rng: BenchRng) -> Self {
        let remaining = params.durations[0];
        Self { params, interval: 0, remaining, rng }
    }

    pub fn interval(&self) -> usize {
        self.interval
    }
}

impl ThreadLoop for TemporaryOperationsLoop {
    fn next_op(&mut self) -> OpKind {
        if self.remaining == 0 {
            self.interval = (self.interval + 1) % self.params.interval_count();
            self.remaining = self.params.durations[self.interval];
        }
        self.remaining -= 1;
        self.params.mixes[self.interval].select(self.rng.gen::<f64>())
    }
}

/// One prefill worker. `remaining` counts keys still to add; a thread that overshoots or
/// draws a key already present gives its slot back.
pub fn prefill(remaining: &AtomicI64, keygen: &mut dyn KeyGenerator, index: &dyn ConcurrentIndex) {
    while remaining.load(Ordering::SeqCst) > 0 {
        let slot = remaining.fetch_sub(1, Ordering::SeqCst) - 1;
        let key = keygen.next_prefill();
        if slot < 0 || index.put_if_absent(key, key).is_some() {
            remaining.fetch_add(1, Ordering::SeqCst);
        }
    }
}

/// Fills `index` with exactly `initial_size` keys using `threads` concurrent workers.
pub fn run_prefill(
    index: &dyn ConcurrentIndex,
    factory: &dyn KeyGeneratorFactory,
    initial_size: u64,
    threads: usize,
) -> Result<()> {
    if threads == 0 {
        return Err(Error::NonPositive("prefill threads"));
    }
    let remaining = AtomicI64::new(initial_size as i64);
    let keygens: Vec<_> = (0..threads).map(|t| factory.prefill_generator(t)).collect();
    thread::scope(|s| {
        let handles: Vec<_> = keygens
            .into_iter()
            .map(|mut keygen| {
                let remaining = &remaining;
                s.spawn(move || prefill(remaining, &mut *keygen, index))
            })
            .collect();
        handles
            .into_iter()
            .enumerate()
            .try_for_each(|(t, h)| h.join().map_err(|_| Error::WorkerPanicked(t)))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopCondition {
    /// The coordinator raises the stop flag after this long.
    Duration(Duration),
    /// Every worker stops after this many operations; deterministic for a fixed seed.
    Operations(u64),
}

/// Runs `threads` workers from a common start barrier until the stop condition, then joins
/// and aggregates. The returned sizes are left for the caller to fill in.
pub fn run_measured_phase(
    index: &dyn ConcurrentIndex,
    factory: &dyn KeyGeneratorFactory,
    loop_spec: &ThreadLoopSpec,
    threads: usize,
    stop: StopCondition,
    seed: u64,
) -> Result<AggregateStats> {
    if threads == 0 {
        return Err(Error::NonPositive("worker threads"));
    }
    let mut workers = Vec::with_capacity(threads);
    for t in 0..threads {
        workers.push((loop_spec.build(seed, t)?, factory.generator(t)));
    }
    let stop_flag = AtomicBool::new(false);
    let barrier = Barrier::new(threads + 1);
    let op_limit = match stop {
        StopCondition::Operations(n) => n,
        StopCondition::Duration(_) => u64::MAX,
    };

    let (results, wall) = thread::scope(|s| {
        let handles: Vec<_> = workers
            .into_iter()
            .map(|(mut selector, mut keygen)| {
                let (stop_flag, barrier) = (&stop_flag, &barrier);
                s.spawn(move || {
                    let mut stats = ThreadStats::default();
                    barrier.wait();
                    let start = Instant::now();
                    let mut done = 0u64;
                    while done < op_limit && !stop_flag.load(Ordering::Relaxed) {
                        selector.step(index, &mut *keygen, &mut stats);
                        done += 1;
                    }
                    stats.elapsed_ms = start.elapsed().as_millis() as u64;
                    stats
                })
            })
            .collect();
        barrier.wait();
        let start = Instant::now();
        if let StopCondition::Duration(d) = stop {
            thread::sleep(d);
            stop_flag.store(true, Ordering::Relaxed);
        }
        let results: Vec<_> = handles.into_iter().map(|h| h.join()).collect();
        (results, start.elapsed())
    });

    let mut stats = Vec::with_capacity(threads);
    for (t, r) in results.into_iter().enumerate() {
        stats.push(r.map_err(|_| Error::WorkerPanicked(t))?);
    }
    index.check_health().map_err(Error::Structure)?;
    aggregate(stats, (wall.as_millis() as u64).max(1))
}
