//! One CSV row per (structure, thread count, repeat).

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::Result;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub config_hash: String,
    pub preset: String,
    pub structure: String,
    pub keygen: String,
    pub threadloop: String,
    pub threads: usize,
    pub repeat: usize,
    pub seed: u64,
    pub range: u64,
    pub initial_size: u64,
    pub duration_ms: u64,
    pub wall_ms: u64,
    pub total_ops: u64,
    pub throughput: f64,
    pub gets_attempted: u64,
    pub gets_hit: u64,
    pub inserts_attempted: u64,
    pub inserts_succeeded: u64,
    pub removes_attempted: u64,
    pub removes_succeeded: u64,
    pub final_size: u64,
    pub expected_size: u64,
    pub avg_depth: Option<f64>,
    pub max_depth: Option<usize>,
    pub status: Status,
    pub error: String,
}

impl ResultRow {
    pub fn is_ok(&self) -> bool {
        self.status == Status::Ok
    }
}

pub fn write_rows<W: Write>(out: W, rows: &[ResultRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_rows<R: Read>(input: R) -> Result<Vec<ResultRow>> {
    let mut r = csv::Reader::from_reader(input);
    Ok(r.deserialize().collect::<Result<_, _>>()?)
}

pub const COLUMNS: [&str; 26] = [
    "config_hash",
    "preset",
    "structure",
    "keygen",
    "threadloop",
    "threads",
    "repeat",
    "seed",
    "range",
    "initial_size",
    "duration_ms",
    "wall_ms",
    "total_ops",
    "throughput",
    "gets_attempted",
    "gets_hit",
    "inserts_attempted",
    "inserts_succeeded",
    "removes_attempted",
    "removes_succeeded",
    "final_size",
    "expected_size",
    "avg_depth",
    "max_depth",
    "status",
    "error",
];
