//! Concurrent ordered maps under test.
//!
//! Three partially-external BSTs share one synchronization scheme and differ only in how they
//! maintain themselves ([`Policy`]); a coarse-locked map serves as the reference.

mod bst;

use std::fmt;
use std::str::FromStr;

use skewbench_core::reference::CoarseLockMap;
use skewbench_core::{ConcurrentIndex, Key, Value};

pub use bst::{
    DaemonConfig, DepthStats, PartiallyExternalBst, PassStats, Policy, RestructureCounters, RestructureOrder,
};

#[derive(Debug, thiserror::Error)]
#[error("unknown structure `{0}` (expected one of: {list})", list = StructureKind::IDS.join(", "))]
pub struct UnknownStructure(pub String);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StructureKind {
    EagerBst,
    DeferredBst,
    DeferredBstLegacy,
    NoRotateBst,
    CoarseLockBst,
}

impl StructureKind {
    pub const ALL: [StructureKind; 5] = [
        StructureKind::EagerBst,
        StructureKind::DeferredBst,
        StructureKind::DeferredBstLegacy,
        StructureKind::NoRotateBst,
        StructureKind::CoarseLockBst,
    ];

    pub const IDS: [&'static str; 5] = ["eager-bst", "deferred-bst", "deferred-bst-legacy", "norotate-bst", "coarse-lock-bst"];

    pub fn id(self) -> &'static str {
        Self::IDS[Self::ALL.iter().position(|&k| k == self).unwrap()]
    }

    pub fn policy(self) -> Option<Policy> {
        match self {
            StructureKind::EagerBst => Some(Policy::Eager),
            StructureKind::DeferredBst => Some(Policy::Deferred(DaemonConfig::default())),
            StructureKind::DeferredBstLegacy => Some(Policy::Deferred(DaemonConfig::legacy())),
            StructureKind::NoRotateBst => Some(Policy::NoRotate),
            StructureKind::CoarseLockBst => None,
        }
    }

    pub fn build(self) -> Structure {
        match self.policy() {
            Some(policy) => Structure::Tree(PartiallyExternalBst::new(policy)),
            None => Structure::Coarse(CoarseLockMap::new()),
        }
    }
}

impl fmt::Display for StructureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for StructureKind {
    type Err = UnknownStructure;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::IDS
            .iter()
            .position(|&id| id == s)
            .map(|i| Self::ALL[i])
            .ok_or_else(|| UnknownStructure(s.to_string()))
    }
}

/// A built structure of any kind.
pub enum Structure {
    Tree(PartiallyExternalBst),
    Coarse(CoarseLockMap),
}

impl Structure {
    fn index(&self) -> &dyn ConcurrentIndex {
        match self {
            Structure::Tree(t) => t,
            Structure::Coarse(m) => m,
        }
    }

    /// Shape statistics, for trees only.
    pub fn depth_stats(&self) -> Option<DepthStats> {
        match self {
            Structure::Tree(t) => Some(t.depth_stats()),
            Structure::Coarse(_) => None,
        }
    }
}

impl ConcurrentIndex for Structure {
    fn get(&self, key: Key) -> Option<Value> {
        self.index().get(key)
    }

    fn put_if_absent(&self, key: Key, value: Value) -> Option<Value> {
        self.index().put_if_absent(key, value)
    }

    fn remove(&self, key: Key) -> Option<Value> {
        self.index().remove(key)
    }

    fn size(&self) -> usize {
        self.index().size()
    }

    fn ordered_keys(&self) -> Vec<Key> {
        self.index().ordered_keys()
    }

    fn check_health(&self) -> Result<(), String> {
        self.index().check_health()
    }
}
