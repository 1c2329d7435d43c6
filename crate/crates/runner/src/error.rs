use std::io;

use skewbench_structures::UnknownStructure;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Config(#[from] skewbench_core::Error),
    #[error(transparent)]
    Structure(#[from] UnknownStructure),
    #[error("unknown preset `{0}`; run `skewbench presets` for the list")]
    UnknownPreset(String),
    #[error("{0}")]
    Usage(String),
    #[error("prefill produced {got} keys, expected {expected}")]
    PrefillSize { expected: u64, got: u64 },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
