use crate::{Error, Result};

/// Counters recorded by one worker thread. Single writer.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ThreadStats {
    pub gets_attempted: u64,
    pub gets_hit: u64,
    pub inserts_attempted: u64,
    pub inserts_succeeded: u64,
    pub removes_attempted: u64,
    pub removes_succeeded: u64,
    pub elapsed_ms: u64,
}

impl ThreadStats {
    /// Every attempted operation counts, successful or not.
    pub fn total_ops(&self) -> u64 {
        self.gets_attempted + self.inserts_attempted + self.removes_attempted
    }

    /// Same counters, ignoring the timing field.
    pub fn same_counts(&self, other: &ThreadStats) -> bool {
        ThreadStats { elapsed_ms: 0, ..self.clone() } == ThreadStats { elapsed_ms: 0, ..other.clone() }
    }

    fn add(&mut self, other: &ThreadStats) {
        self.gets_attempted += other.gets_attempted;
        self.gets_hit += other.gets_hit;
        self.inserts_attempted += other.inserts_attempted;
        self.inserts_succeeded += other.inserts_succeeded;
        self.removes_attempted += other.removes_attempted;
        self.removes_succeeded += other.removes_succeeded;
        self.elapsed_ms = self.elapsed_ms.max(other.elapsed_ms);
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AggregateStats {
    pub per_thread: Vec<ThreadStats>,
    /// Sum over threads; `elapsed_ms` holds the slowest thread.
    pub totals: ThreadStats,
    pub wall_ms: u64,
    pub throughput_ops_per_sec: f64,
    pub final_size: u64,
    pub expected_size: u64,
}

impl AggregateStats {
    pub fn total_ops(&self) -> u64 {
        self.totals.total_ops()
    }

    /// Fills in the size check: the expected size follows from the successful updates.
    pub fn with_sizes(mut self, initial_size: u64, final_size: u64) -> Self {
        self.expected_size = (initial_size + self.totals.inserts_succeeded)
            .saturating_sub(self.totals.removes_succeeded);
        self.final_size = final_size;
        self
    }

    pub fn is_balanced(&self) -> bool {
        self.final_size == self.expected_size
    }
}

/// Sums per-thread counters; throughput is total operations per second of wall time.
pub fn aggregate(stats: Vec<ThreadStats>, wall_ms: u64) -> Result<AggregateStats> {
    if stats.is_empty() {
        return Err(Error::NoStats);
    }
    if wall_ms == 0 {
        return Err(Error::ZeroWallTime);
    }
    let mut totals = ThreadStats::default();
    for s in &stats {
        totals.add(s);
    }
    let throughput_ops_per_sec = totals.total_ops() as f64 / (wall_ms as f64 / 1000.0);
    Ok(AggregateStats {
        per_thread: stats,
        totals,
        wall_ms,
        throughput_ops_per_sec,
        final_size: 0,
        expected_size: 0,
    })
}
