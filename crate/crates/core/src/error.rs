use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Configuration and usage errors raised while building a workload.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("range must be at least 1")]
    EmptyRange,
    #[error("range {0} exceeds the supported maximum of 2^32 keys")]
    RangeTooLarge(u64),
    #[error("initial size exceeds range ({initial} > {range})")]
    InitialExceedsRange { initial: u64, range: u64 },
    #[error("{0} must be positive")]
    NonPositive(&'static str),
    #[error("{name} must lie in [0, 1], got {value}")]
    OutOfUnitInterval { name: &'static str, value: f64 },
    #[error("zipfian alpha must be positive, got {0}")]
    InvalidAlpha(f64),
    #[error("hot set of {name} is empty but its probability is {prob}")]
    EmptyHotSet { name: &'static str, prob: f64 },
    #[error("cold set of {name} is empty but its probability is {prob}")]
    EmptyColdSet { name: &'static str, prob: f64 },
    #[error("index {index} out of bounds for key range {range}")]
    IndexOutOfBounds { index: u64, range: u64 },
    #[error("distribution `{0}` cannot change its range")]
    NotMutable(String),
    #[error("unknown distribution `{0}`")]
    UnknownDistribution(String),
    #[error("insert fraction {insert} plus remove fraction {remove} exceeds 1")]
    MixExceedsOne { insert: f64, remove: f64 },
    #[error("{name}: expected {expected} values, got {got}")]
    Arity { name: &'static str, expected: usize, got: usize },
    #[error("read and write hot sets do not fit in the range ({needed} > {range})")]
    SkewedSetsLayout { needed: u64, range: u64 },
    #[error("creakers and initial wave exceed the range (cs + ws = {0} > 1)")]
    CreakersWaveOverflow(f64),
    #[error("wave region is too small: {0} positions")]
    WaveTooSmall(u64),
    #[error("creaker age {0} requires a non-empty creaker set")]
    NoCreakers(u64),
    #[error("initial size must be {expected} for the creakers-and-wave generator, got {got}")]
    WaveInitialSize { expected: u64, got: u64 },
    #[error("every state and interval duration is zero")]
    ZeroSchedule,
    #[error("statistics list is empty")]
    NoStats,
    #[error("wall-clock duration must be positive")]
    ZeroWallTime,
    #[error("worker thread {0} panicked")]
    WorkerPanicked(usize),
    #[error("structure failure: {0}")]
    Structure(String),
}
