use sha2::{Digest, Sha256};
use skewbench_core::keygen::KeyGeneratorSpec;
use skewbench_core::threadloop::ThreadLoopSpec;
use skewbench_core::BenchmarkParameters;
use skewbench_structures::StructureKind;

use crate::{Error, Result};

/// Everything needed to run one experiment: every structure × thread count × repeat.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub name: String,
    pub structures: Vec<StructureKind>,
    pub keygen: KeyGeneratorSpec,
    pub threadloop: ThreadLoopSpec,
    /// `worker_threads` is ignored; see `threads`.
    pub params: BenchmarkParameters,
    pub threads: Vec<usize>,
    /// Shuffle the key permutation; off gives the identity layout.
    pub shuffle: bool,
    /// Stop each worker after this many operations instead of after `duration_ms`.
    pub operations: Option<u64>,
    /// Unmeasured run after prefill and before measurement; 0 disables it.
    pub warmup_ms: u64,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.structures.is_empty() {
            return Err(Error::Usage("no structure selected".into()));
        }
        if self.threads.is_empty() || self.threads.contains(&0) {
            return Err(Error::Usage("thread counts must be positive".into()));
        }
        for &threads in &self.threads {
            self.keygen.validate(&BenchmarkParameters { worker_threads: threads, ..self.params.clone() })?;
        }
        self.threadloop.validate()?;
        if self.operations == Some(0) {
            return Err(Error::Usage("operation count must be positive".into()));
        }
        Ok(())
    }

    /// Short stable digest of the whole configuration, the same for every row it produces.
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(format!("{self:?}").as_bytes());
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn cells(&self) -> usize {
        self.structures.len() * self.threads.len() * self.params.repeats
    }
}
