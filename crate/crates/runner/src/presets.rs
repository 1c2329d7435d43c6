//! The catalog of standard experiment configurations.

use skewbench_core::distributions::DistributionSpec;
use skewbench_core::keygen::{CreakersWaveParameters, DefaultParameters, KeyGeneratorSpec, LeafsHandshakeParameters};
use skewbench_core::threadloop::{OperationMix, TemporaryOperationsParameters, ThreadLoopSpec};
use skewbench_core::BenchmarkParameters;
use skewbench_structures::StructureKind;

use crate::ExperimentConfig;

pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    build: fn() -> ExperimentConfig,
}

impl Preset {
    pub fn config(&self) -> ExperimentConfig {
        (self.build)()
    }
}

/// Thread counts of a full-scale run on a large multi-socket machine.
pub const FULL_THREADS: [usize; 5] = [16, 24, 32, 40, 48];
pub const DESK_THREADS: [usize; 4] = [1, 2, 4, 8];
/// Largest prefill at desk scale for presets that do not fix their own initial size.
pub const DESK_INITIAL_CAP: u64 = 100_000;

pub const PRESETS: [Preset; 7] = [
    Preset { name: "uniform-small", description: "uniform keys, range 1e4, 20% updates", build: uniform_small },
    Preset { name: "zipfian-medium", description: "Zipfian keys (alpha 1), range 1e5, 5% updates", build: zipfian_medium },
    Preset {
        name: "leafs-handshake-1e5",
        description: "leafs handshake, range 1e5, fill/read/clean intervals, insert offsets Zipf(2)",
        build: leafs_handshake_1e5,
    },
    Preset {
        name: "leafs-handshake-1e7",
        description: "leafs handshake, range 1e7, fill/clean intervals, insert offsets Zipf(0.99)",
        build: leafs_handshake_1e7,
    },
    Preset {
        name: "leafs-handshake-1e8",
        description: "leafs handshake, range 1e8, fill/read/clean intervals, insert offsets Zipf(0.99)",
        build: leafs_handshake_1e8,
    },
    Preset {
        name: "wave-nonshuffle-1e6",
        description: "non-shuffled wave of 20%, range 1e6, 5% updates, no creakers",
        build: wave_nonshuffle_1e6,
    },
    Preset {
        name: "wave-nonshuffle-5e3",
        description: "non-shuffled wave of 10%, range 5e3, 20% updates, no creakers",
        build: wave_nonshuffle_5e3,
    },
];

pub fn find(name: &str) -> Option<ExperimentConfig> {
    PRESETS.iter().find(|p| p.name == name).map(Preset::config)
}

/// Shrinks a configuration to a workstation: threads {1,2,4,8}, 1 s runs, 3 repeats, and a
/// prefill of at most 1e5 keys unless the generator fixes it.
pub fn desk_scale(mut config: ExperimentConfig) -> ExperimentConfig {
    config.threads = DESK_THREADS.to_vec();
    config.params.duration_ms = 1000;
    config.params.repeats = 3;
    if config.keygen.required_initial_size(config.params.range).is_none() {
        config.params.initial_size = config.params.initial_size.min(DESK_INITIAL_CAP);
    }
    config
}

fn base(name: &str, range: u64, keygen: KeyGeneratorSpec, threadloop: ThreadLoopSpec) -> ExperimentConfig {
    let initial_size = keygen.required_initial_size(range).unwrap_or(range / 2);
    ExperimentConfig {
        name: name.into(),
        structures: StructureKind::ALL.to_vec(),
        keygen,
        threadloop,
        params: BenchmarkParameters {
            range,
            initial_size,
            worker_threads: 1,
            prefill_threads: 1,
            duration_ms: 10_000,
            seed: 0,
            repeats: 10,
        },
        threads: FULL_THREADS.to_vec(),
        shuffle: true,
        operations: None,
        warmup_ms: 0,
    }
}

fn mix(insert: f64, remove: f64) -> OperationMix {
    OperationMix { insert, remove }
}

fn updates(update: f64) -> ThreadLoopSpec {
    ThreadLoopSpec::Default(mix(update / 2.0, update / 2.0))
}

fn uniform_small() -> ExperimentConfig {
    base("uniform-small", 10_000, KeyGeneratorSpec::Default(DefaultParameters::default()), updates(0.2))
}

fn zipfian_medium() -> ExperimentConfig {
    let keygen = KeyGeneratorSpec::Default(DefaultParameters { distribution: DistributionSpec::zipfian(1.0) });
    base("zipfian-medium", 100_000, keygen, updates(0.05))
}

fn leafs(name: &str, range: u64, alpha: f64, durations: Vec<u64>, mixes: Vec<OperationMix>) -> ExperimentConfig {
    let keygen = KeyGeneratorSpec::LeafsHandshake(LeafsHandshakeParameters::with_insert_distribution(
        DistributionSpec::zipfian(alpha),
    ));
    let threadloop = ThreadLoopSpec::TemporaryOperations(TemporaryOperationsParameters { durations, mixes });
    ExperimentConfig {
        // gets and removes are uniform, so a shuffled permutation would change nothing but memory
        shuffle: false,
        ..base(name, range, keygen, threadloop)
    }
}

fn leafs_handshake_1e5() -> ExperimentConfig {
    leafs(
        "leafs-handshake-1e5",
        100_000,
        2.0,
        vec![10_000, 5_000, 10_000],
        vec![mix(0.6, 0.4), mix(0.0, 0.0), mix(0.4, 0.6)],
    )
}

fn leafs_handshake_1e7() -> ExperimentConfig {
    leafs("leafs-handshake-1e7", 10_000_000, 0.99, vec![20_000, 20_000], vec![mix(0.9, 0.1), mix(0.1, 0.9)])
}

fn leafs_handshake_1e8() -> ExperimentConfig {
    leafs(
        "leafs-handshake-1e8",
        100_000_000,
        0.99,
        vec![100_000; 3],
        vec![mix(0.8, 0.2), mix(0.0, 0.0), mix(0.2, 0.8)],
    )
}

fn wave(name: &str, range: u64, wave_size: f64, update: f64) -> ExperimentConfig {
    let keygen = KeyGeneratorSpec::CreakersAndWave(CreakersWaveParameters {
        creaker_prob: 0.0,
        creaker_size: 0.0,
        wave_size,
        wave_distribution: DistributionSpec::zipfian(1.0),
        ..Default::default()
    });
    ExperimentConfig { shuffle: false, ..base(name, range, keygen, updates(update)) }
}

fn wave_nonshuffle_1e6() -> ExperimentConfig {
    wave("wave-nonshuffle-1e6", 1_000_000, 0.2, 0.05)
}

fn wave_nonshuffle_5e3() -> ExperimentConfig {
    wave("wave-nonshuffle-5e3", 5_000, 0.1, 0.2)
}
