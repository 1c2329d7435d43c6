//! Runs the cells of an experiment: prefill, warmup, measured phase, checks.

use std::time::Duration;

use skewbench_core::threadloop::{run_measured_phase, run_prefill, StopCondition};
use skewbench_core::{AggregateStats, BenchmarkParameters, ConcurrentIndex};
use skewbench_structures::{DepthStats, StructureKind};

use crate::output::{ResultRow, Status};
use crate::{Error, ExperimentConfig, Result};

/// Outcome of one successful cell.
#[derive(Debug, Clone)]
pub struct CellResult {
    pub stats: AggregateStats,
    pub depth: Option<DepthStats>,
}

/// Seed of one repeat; repeats differ only in this.
pub fn cell_seed(config: &ExperimentConfig, repeat: usize) -> u64 {
    config.params.seed.wrapping_add(repeat as u64)
}

pub fn run_cell(config: &ExperimentConfig, kind: StructureKind, threads: usize, repeat: usize) -> Result<CellResult> {
    let params = BenchmarkParameters { worker_threads: threads, seed: cell_seed(config, repeat), ..config.params.clone() };
    let factory = config.keygen.build(&params, config.shuffle)?;
    let index = kind.build();

    run_prefill(&index, &*factory, params.initial_size, params.prefill_threads)?;
    let size = index.size() as u64;
    if size != params.initial_size {
        return Err(Error::PrefillSize { expected: params.initial_size, got: size });
    }
    factory.warmup(&index);
    if config.warmup_ms > 0 {
        let stop = StopCondition::Duration(Duration::from_millis(config.warmup_ms));
        run_measured_phase(&index, &*factory, &config.threadloop, threads, stop, !params.seed)?;
    }
    let initial = index.size() as u64;

    let stop = match config.operations {
        Some(n) => StopCondition::Operations(n),
        None => StopCondition::Duration(Duration::from_millis(params.duration_ms)),
    };
    let stats = run_measured_phase(&index, &*factory, &config.threadloop, threads, stop, params.seed)?;
    let stats = stats.with_sizes(initial, index.size() as u64);
    Ok(CellResult { stats, depth: index.depth_stats() })
}

/// Runs every cell in order, handing each row to `sink` as soon as it is ready. A failing cell
/// yields a `failed` row and the run continues.
pub fn run_experiment(config: &ExperimentConfig, mut sink: impl FnMut(&ResultRow)) -> Vec<ResultRow> {
    let hash = config.hash();
    let mut rows = Vec::with_capacity(config.cells());
    for &kind in &config.structures {
        for &threads in &config.threads {
            for repeat in 0..config.params.repeats {
                let row = to_row(config, &hash, kind, threads, repeat, run_cell(config, kind, threads, repeat));
                sink(&row);
                rows.push(row);
            }
        }
    }
    rows
}

fn to_row(
    config: &ExperimentConfig,
    hash: &str,
    kind: StructureKind,
    threads: usize,
    repeat: usize,
    result: Result<CellResult>,
) -> ResultRow {
    let mut row = ResultRow {
        config_hash: hash.into(),
        preset: config.name.clone(),
        structure: kind.id().into(),
        keygen: config.keygen.id().into(),
        threadloop: config.threadloop.id().into(),
        threads,
        repeat,
        seed: cell_seed(config, repeat),
        range: config.params.range,
        initial_size: config.params.initial_size,
        duration_ms: config.params.duration_ms,
        wall_ms: 0,
        total_ops: 0,
        throughput: 0.0,
        gets_attempted: 0,
        gets_hit: 0,
        inserts_attempted: 0,
        inserts_succeeded: 0,
        removes_attempted: 0,
        removes_succeeded: 0,
        final_size: 0,
        expected_size: 0,
        avg_depth: None,
        max_depth: None,
        status: Status::Ok,
        error: String::new(),
    };
    match result {
        Ok(CellResult { stats, depth }) => {
            let t = &stats.totals;
            row.wall_ms = stats.wall_ms;
            row.total_ops = stats.total_ops();
            row.throughput = stats.throughput_ops_per_sec;
            row.gets_attempted = t.gets_attempted;
            row.gets_hit = t.gets_hit;
            row.inserts_attempted = t.inserts_attempted;
            row.inserts_succeeded = t.inserts_succeeded;
            row.removes_attempted = t.removes_attempted;
            row.removes_succeeded = t.removes_succeeded;
            row.final_size = stats.final_size;
            row.expected_size = stats.expected_size;
            row.avg_depth = depth.map(|d| d.average_depth);
            row.max_depth = depth.map(|d| d.max_depth);
            if !stats.is_balanced() {
                row.status = Status::Failed;
                row.error = format!("final size {} != expected {}", stats.final_size, stats.expected_size);
            }
        }
        Err(e) => {
            row.status = Status::Failed;
            row.error = e.to_string();
        }
    }
    row
}
