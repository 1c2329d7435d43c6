//! Command-line interface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use skewbench_core::distributions::DistributionSpec;
use skewbench_core::keygen::{
    CreakersWaveParameters, DefaultParameters, Direction, KeyGeneratorSpec, LeafsHandshakeParameters,
    SkewedSetsParameters, TemporarySkewedParameters,
};
use skewbench_core::threadloop::{OperationMix, TemporaryOperationsParameters, ThreadLoopSpec};
use skewbench_core::BenchmarkParameters;
use skewbench_structures::StructureKind;

use crate::presets::{self, DESK_THREADS};
use crate::{Error, ExperimentConfig, Result};

pub const SEED_ENV: &str = "SKEWBENCH_SEED";

#[derive(Debug, Parser)]
#[command(name = "skewbench", version, about = "Benchmarks concurrent key-value indices under skewed workloads")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run an experiment and write one CSV row per structure, thread count and repeat.
    Run(Box<RunArgs>),
    /// List the preset experiments.
    Presets,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    Both,
    Left,
    Right,
}

impl From<DirectionArg> for Direction {
    fn from(d: DirectionArg) -> Self {
        match d {
            DirectionArg::Both => Direction::Both,
            DirectionArg::Left => Direction::Left,
            DirectionArg::Right => Direction::Right,
        }
    }
}

#[derive(Debug, Default, Args)]
pub struct RunArgs {
    /// Start from a preset; see `skewbench presets`.
    #[arg(long)]
    pub preset: Option<String>,
    /// Threads 1,2,4,8, 1 s runs, 3 repeats and at most 1e5 prefilled keys.
    #[arg(long)]
    pub desk_scale: bool,
    /// Comma-separated structure ids, or `all`.
    #[arg(long)]
    pub structure: Option<String>,
    #[arg(long)]
    pub keygen: Option<String>,
    #[arg(long)]
    pub threadloop: Option<String>,
    #[arg(long)]
    pub range: Option<u64>,
    /// Prefill size; defaults to half the range.
    #[arg(long)]
    pub initial: Option<u64>,
    #[arg(long, value_delimiter = ',')]
    pub threads: Option<Vec<usize>>,
    #[arg(long)]
    pub prefill_threads: Option<usize>,
    #[arg(long)]
    pub duration_ms: Option<u64>,
    /// Stop each worker after this many operations instead of after the duration.
    #[arg(long)]
    pub operations: Option<u64>,
    #[arg(long)]
    pub warmup_ms: Option<u64>,
    #[arg(long)]
    pub repeats: Option<usize>,
    /// Base seed; repeat r uses seed + r. Overridden by SKEWBENCH_SEED.
    #[arg(long)]
    pub seed: Option<u64>,
    /// CSV output file; stdout if omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Use the identity key layout instead of a shuffled permutation.
    #[arg(long)]
    pub non_shuffle: bool,

    /// Key distribution of the default generator, e.g. `zipfian:0.99`.
    #[arg(long)]
    pub distribution: Option<DistributionSpec>,
    /// Zipf exponent: default generator, wave, or leafs-handshake insert offsets.
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub hot_prob: Option<f64>,
    #[arg(long)]
    pub hot_size: Option<f64>,

    #[arg(long)]
    pub read_hot_prob: Option<f64>,
    #[arg(long)]
    pub read_hot_size: Option<f64>,
    #[arg(long)]
    pub write_hot_prob: Option<f64>,
    #[arg(long)]
    pub write_hot_size: Option<f64>,
    #[arg(long)]
    pub intersection: Option<f64>,

    #[arg(long)]
    pub state_count: Option<usize>,
    #[arg(long)]
    pub hot_time: Option<u64>,
    #[arg(long)]
    pub relax_time: Option<u64>,
    #[arg(long, value_delimiter = ',')]
    pub hot_probs: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    pub hot_sizes: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    pub hot_times: Option<Vec<u64>>,
    #[arg(long, value_delimiter = ',')]
    pub relax_times: Option<Vec<u64>>,

    #[arg(long)]
    pub creaker_prob: Option<f64>,
    #[arg(long)]
    pub creaker_size: Option<f64>,
    #[arg(long)]
    pub wave_size: Option<f64>,
    #[arg(long)]
    pub creaker_age: Option<u64>,
    #[arg(long)]
    pub creaker_distribution: Option<DistributionSpec>,
    #[arg(long)]
    pub wave_distribution: Option<DistributionSpec>,

    #[arg(long)]
    pub get_distribution: Option<DistributionSpec>,
    #[arg(long)]
    pub remove_distribution: Option<DistributionSpec>,
    #[arg(long)]
    pub insert_distribution: Option<DistributionSpec>,
    #[arg(long)]
    pub insert_window: Option<u64>,
    /// Keep the last removed key per thread instead of sharing it.
    #[arg(long)]
    pub per_thread_handshake: bool,
    #[arg(long, value_enum)]
    pub direction: Option<DirectionArg>,

    /// Update percentage of the default loop, split evenly between inserts and removes.
    #[arg(long)]
    pub update: Option<f64>,
    /// Operations per interval of the temporary-operations loop.
    #[arg(long, value_delimiter = ',')]
    pub oper_durations: Option<Vec<u64>>,
    /// Insert fractions, one per interval (one value for the default loop).
    #[arg(long, value_delimiter = ',')]
    pub insert_fracs: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    pub remove_fracs: Option<Vec<f64>>,
}

enum Scope {
    Keygen(&'static [&'static str]),
    Loop(&'static [&'static str]),
}

impl RunArgs {
    /// Flags that describe the workload, with the generator or loop they belong to.
    fn workload_flags(&self) -> Vec<(&'static str, bool, Scope)> {
        use Scope::*;
        vec![
            ("--distribution", self.distribution.is_some(), Keygen(&["default"])),
            ("--alpha", self.alpha.is_some(), Keygen(&["default", "creakers-and-wave", "leafs-handshake"])),
            ("--hot-prob", self.hot_prob.is_some(), Keygen(&["default", "temporary-skewed"])),
            ("--hot-size", self.hot_size.is_some(), Keygen(&["default", "temporary-skewed"])),
            ("--read-hot-prob", self.read_hot_prob.is_some(), Keygen(&["skewed-sets"])),
            ("--read-hot-size", self.read_hot_size.is_some(), Keygen(&["skewed-sets"])),
            ("--write-hot-prob", self.write_hot_prob.is_some(), Keygen(&["skewed-sets"])),
            ("--write-hot-size", self.write_hot_size.is_some(), Keygen(&["skewed-sets"])),
            ("--intersection", self.intersection.is_some(), Keygen(&["skewed-sets"])),
            ("--state-count", self.state_count.is_some(), Keygen(&["temporary-skewed"])),
            ("--hot-time", self.hot_time.is_some(), Keygen(&["temporary-skewed"])),
            ("--relax-time", self.relax_time.is_some(), Keygen(&["temporary-skewed"])),
            ("--hot-probs", self.hot_probs.is_some(), Keygen(&["temporary-skewed"])),
            ("--hot-sizes", self.hot_sizes.is_some(), Keygen(&["temporary-skewed"])),
            ("--hot-times", self.hot_times.is_some(), Keygen(&["temporary-skewed"])),
            ("--relax-times", self.relax_times.is_some(), Keygen(&["temporary-skewed"])),
            ("--creaker-prob", self.creaker_prob.is_some(), Keygen(&["creakers-and-wave"])),
            ("--creaker-size", self.creaker_size.is_some(), Keygen(&["creakers-and-wave"])),
            ("--wave-size", self.wave_size.is_some(), Keygen(&["creakers-and-wave"])),
            ("--creaker-age", self.creaker_age.is_some(), Keygen(&["creakers-and-wave"])),
            ("--creaker-distribution", self.creaker_distribution.is_some(), Keygen(&["creakers-and-wave"])),
            ("--wave-distribution", self.wave_distribution.is_some(), Keygen(&["creakers-and-wave"])),
            ("--get-distribution", self.get_distribution.is_some(), Keygen(&["leafs-handshake"])),
            ("--remove-distribution", self.remove_distribution.is_some(), Keygen(&["leafs-handshake"])),
            ("--insert-distribution", self.insert_distribution.is_some(), Keygen(&["leafs-handshake"])),
            ("--insert-window", self.insert_window.is_some(), Keygen(&["leafs-handshake"])),
            ("--per-thread-handshake", self.per_thread_handshake, Keygen(&["leafs-handshake"])),
            ("--direction", self.direction.is_some(), Keygen(&["leafs-handshake"])),
            ("--update", self.update.is_some(), Loop(&["default"])),
            ("--oper-durations", self.oper_durations.is_some(), Loop(&["temporary-operations"])),
            ("--insert-fracs", self.insert_fracs.is_some(), Loop(&["default", "temporary-operations"])),
            ("--remove-fracs", self.remove_fracs.is_some(), Loop(&["default", "temporary-operations"])),
        ]
    }

    /// Resolves the arguments into a validated configuration. `env_seed` is the value of
    /// `SKEWBENCH_SEED`, if set.
    pub fn to_config(&self, env_seed: Option<&str>) -> Result<ExperimentConfig> {
        let mut config = match &self.preset {
            Some(name) => {
                self.reject_workload_flags(name)?;
                presets::find(name).ok_or_else(|| Error::UnknownPreset(name.clone()))?
            }
            None => self.custom()?,
        };
        if self.desk_scale {
            config = presets::desk_scale(config);
        }
        if let Some(s) = &self.structure {
            config.structures = parse_structures(s)?;
        }
        if let Some(t) = &self.threads {
            config.threads = t.clone();
        }
        let p = &mut config.params;
        p.prefill_threads = self.prefill_threads.unwrap_or(p.prefill_threads);
        p.duration_ms = self.duration_ms.unwrap_or(p.duration_ms);
        p.repeats = self.repeats.unwrap_or(p.repeats);
        p.seed = self.seed.unwrap_or(p.seed);
        if let Some(s) = env_seed {
            p.seed = s.trim().parse().map_err(|_| Error::Usage(format!("{SEED_ENV}: `{s}` is not a seed")))?;
        }
        config.operations = self.operations.or(config.operations);
        config.warmup_ms = self.warmup_ms.unwrap_or(config.warmup_ms);
        config.validate()?;
        Ok(config)
    }

    fn reject_workload_flags(&self, preset: &str) -> Result<()> {
        let basic = [
            ("--keygen", self.keygen.is_some()),
            ("--threadloop", self.threadloop.is_some()),
            ("--range", self.range.is_some()),
            ("--initial", self.initial.is_some()),
            ("--non-shuffle", self.non_shuffle),
        ];
        let extra = self.workload_flags().into_iter().map(|(name, set, _)| (name, set));
        match basic.into_iter().chain(extra).find(|&(_, set)| set) {
            Some((name, _)) => Err(Error::Usage(format!("{name} cannot be combined with --preset {preset}"))),
            None => Ok(()),
        }
    }

    fn custom(&self) -> Result<ExperimentConfig> {
        let keygen_id = self.keygen.as_deref().unwrap_or("default");
        let loop_id = self.threadloop.as_deref().unwrap_or("default");
        for (name, set, scope) in self.workload_flags() {
            let (kind, id, ids) = match scope {
                Scope::Keygen(ids) => ("keygen", keygen_id, ids),
                Scope::Loop(ids) => ("threadloop", loop_id, ids),
            };
            if set && !ids.contains(&id) {
                return Err(Error::Usage(format!("{name} does not apply to {kind} `{id}`")));
            }
        }
        let keygen = self.keygen_spec(keygen_id)?;
        let threadloop = self.threadloop_spec(loop_id)?;
        let defaults = BenchmarkParameters::default();
        let range = self.range.unwrap_or(defaults.range);
        let initial_size = self.initial.or(keygen.required_initial_size(range)).unwrap_or(range / 2);
        Ok(ExperimentConfig {
            name: "custom".into(),
            structures: StructureKind::ALL.to_vec(),
            keygen,
            threadloop,
            params: BenchmarkParameters { range, initial_size, ..defaults },
            threads: DESK_THREADS.to_vec(),
            shuffle: !self.non_shuffle,
            operations: None,
            warmup_ms: 0,
        })
    }

    fn keygen_spec(&self, id: &str) -> Result<KeyGeneratorSpec> {
        Ok(match id {
            "default" => {
                let distribution = match (self.distribution, self.alpha, self.hot_prob.or(self.hot_size)) {
                    (Some(d), None, None) => d,
                    (None, Some(a), None) => DistributionSpec::zipfian(a),
                    (None, None, Some(_)) => {
                        DistributionSpec::skewed_uniform(self.hot_prob.unwrap_or(0.9), self.hot_size.unwrap_or(0.1))
                    }
                    (None, None, None) => DistributionSpec::Uniform,
                    _ => {
                        return Err(Error::Usage(
                            "choose one of --distribution, --alpha or --hot-prob/--hot-size".into(),
                        ))
                    }
                };
                KeyGeneratorSpec::Default(DefaultParameters { distribution })
            }
            "skewed-sets" => KeyGeneratorSpec::SkewedSets(SkewedSetsParameters {
                read_hot_prob: self.read_hot_prob.unwrap_or(0.9),
                read_hot_size: self.read_hot_size.unwrap_or(0.1),
                write_hot_prob: self.write_hot_prob.unwrap_or(0.9),
                write_hot_size: self.write_hot_size.unwrap_or(0.1),
                intersection: self.intersection.unwrap_or(0.0),
            }),
            "temporary-skewed" => {
                let n = self.state_count.or(self.hot_probs.as_ref().map(Vec::len)).unwrap_or(1);
                let mut p = TemporarySkewedParameters::uniform_states(
                    n,
                    self.hot_time.unwrap_or(10_000),
                    self.relax_time.unwrap_or(10_000),
                    self.hot_prob.unwrap_or(0.9),
                    self.hot_size.unwrap_or(0.1),
                );
                if let Some(v) = &self.hot_probs {
                    p.hot_probs = v.clone();
                }
                if let Some(v) = &self.hot_sizes {
                    p.hot_sizes = v.clone();
                }
                p.hot_times = self.hot_times.clone();
                p.relax_times = self.relax_times.clone();
                KeyGeneratorSpec::TemporarySkewed(p)
            }
            "creakers-and-wave" => {
                let d = CreakersWaveParameters::default();
                KeyGeneratorSpec::CreakersAndWave(CreakersWaveParameters {
                    creaker_prob: self.creaker_prob.unwrap_or(d.creaker_prob),
                    creaker_size: self.creaker_size.unwrap_or(d.creaker_size),
                    wave_size: self.wave_size.unwrap_or(d.wave_size),
                    creaker_age: self.creaker_age.unwrap_or(d.creaker_age),
                    creaker_distribution: self.creaker_distribution.unwrap_or(d.creaker_distribution),
                    wave_distribution: self.zipf_or(self.wave_distribution, d.wave_distribution, "--wave-distribution")?,
                })
            }
            "leafs-handshake" => {
                let d = LeafsHandshakeParameters::default();
                KeyGeneratorSpec::LeafsHandshake(LeafsHandshakeParameters {
                    get_distribution: self.get_distribution.unwrap_or(d.get_distribution),
                    remove_distribution: self.remove_distribution.unwrap_or(d.remove_distribution),
                    insert_distribution: self.zipf_or(
                        self.insert_distribution,
                        d.insert_distribution,
                        "--insert-distribution",
                    )?,
                    insert_window: self.insert_window.unwrap_or(d.insert_window),
                    per_thread: self.per_thread_handshake,
                    direction: self.direction.map_or(d.direction, Direction::from),
                })
            }
            other => {
                return Err(Error::Usage(format!(
                    "unknown keygen `{other}` (expected one of: {})",
                    KeyGeneratorSpec::IDS.join(", ")
                )))
            }
        })
    }

    /// `--alpha` as a shorthand for a Zipfian distribution flag.
    fn zipf_or(&self, explicit: Option<DistributionSpec>, default: DistributionSpec, flag: &str) -> Result<DistributionSpec> {
        match (explicit, self.alpha) {
            (Some(_), Some(_)) => Err(Error::Usage(format!("--alpha cannot be combined with {flag}"))),
            (Some(d), None) => Ok(d),
            (None, Some(a)) => Ok(DistributionSpec::zipfian(a)),
            (None, None) => Ok(default),
        }
    }

    fn threadloop_spec(&self, id: &str) -> Result<ThreadLoopSpec> {
        match id {
            "default" => {
                let mix = match (self.update, &self.insert_fracs, &self.remove_fracs) {
                    (Some(_), Some(_), _) | (Some(_), _, Some(_)) => {
                        return Err(Error::Usage("--update cannot be combined with --insert-fracs/--remove-fracs".into()))
                    }
                    (Some(u), None, None) => OperationMix::updates(u / 100.0)?,
                    (None, None, None) => OperationMix::updates(0.2)?,
                    (None, i, r) => OperationMix::new(single(i, "--insert-fracs")?, single(r, "--remove-fracs")?)?,
                };
                Ok(ThreadLoopSpec::Default(mix))
            }
            "temporary-operations" => {
                let durations = self
                    .oper_durations
                    .clone()
                    .ok_or_else(|| Error::Usage("temporary-operations requires --oper-durations".into()))?;
                let n = durations.len();
                let list = |v: &Option<Vec<f64>>, flag: &str| -> Result<Vec<f64>> {
                    let v = v.clone().unwrap_or_else(|| vec![0.0; n]);
                    if v.len() != n {
                        return Err(Error::Usage(format!("{flag}: expected {n} values, got {}", v.len())));
                    }
                    Ok(v)
                };
                let inserts = list(&self.insert_fracs, "--insert-fracs")?;
                let removes = list(&self.remove_fracs, "--remove-fracs")?;
                let mixes = inserts.into_iter().zip(removes).map(|(insert, remove)| OperationMix { insert, remove }).collect();
                Ok(ThreadLoopSpec::TemporaryOperations(TemporaryOperationsParameters { durations, mixes }))
            }
            other => Err(Error::Usage(format!(
                "unknown threadloop `{other}` (expected one of: {})",
                ThreadLoopSpec::IDS.join(", ")
            ))),
        }
    }
}

fn single(values: &Option<Vec<f64>>, flag: &str) -> Result<f64> {
    match values.as_deref() {
        None => Ok(0.0),
        Some([v]) => Ok(*v),
        Some(v) => Err(Error::Usage(format!("{flag}: expected 1 values, got {}", v.len()))),
    }
}

pub fn parse_structures(list: &str) -> Result<Vec<StructureKind>> {
    if list.trim() == "all" {
        return Ok(StructureKind::ALL.to_vec());
    }
    let mut out = Vec::new();
    for id in list.split(',') {
        let kind: StructureKind = id.trim().parse()?;
        if !out.contains(&kind) {
            out.push(kind);
        }
    }
    Ok(out)
}
