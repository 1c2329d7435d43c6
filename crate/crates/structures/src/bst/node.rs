use std::sync::atomic::{AtomicBool, AtomicU32, AtomicU64, Ordering::SeqCst};

use crossbeam_epoch::{Atomic, Guard, Shared};
use parking_lot::Mutex;
use skewbench_core::{Key, Value};

/// Value of a logically deleted node.
pub(crate) const EMPTY: Value = Value::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Dir {
    Left,
    Right,
}

impl Dir {
    pub(crate) fn opposite(self) -> Dir {
        match self {
            Dir::Left => Dir::Right,
            Dir::Right => Dir::Left,
        }
    }
}

pub(crate) struct Node {
    pub(crate) key: Key,
    pub(crate) value: AtomicU64,
    pub(crate) left: Atomic<Node>,
    pub(crate) right: Atomic<Node>,
    /// Height of the subtree, leaves are 1; maintained under the node's lock, possibly stale.
    pub(crate) height: AtomicU32,
    /// Set once, under the locks of the node and its parent, before the node is unlinked.
    pub(crate) removed: AtomicBool,
    pub(crate) lock: Mutex<()>,
}

impl Node {
    pub(crate) fn new(key: Key, value: Value) -> Self {
        Self::with_children(key, value, Shared::null(), Shared::null(), 1)
    }

    pub(crate) fn with_children(key: Key, value: Value, left: Shared<Node>, right: Shared<Node>, height: u32) -> Self {
        Self {
            key,
            value: AtomicU64::new(value),
            left: Atomic::from(left),
            right: Atomic::from(right),
            height: AtomicU32::new(height),
            removed: AtomicBool::new(false),
            lock: Mutex::new(()),
        }
    }

    #[inline]
    pub(crate) fn child(&self, dir: Dir) -> &Atomic<Node> {
        match dir {
            Dir::Left => &self.left,
            Dir::Right => &self.right,
        }
    }

    #[inline]
    pub(crate) fn load<'g>(&self, dir: Dir, guard: &'g Guard) -> Shared<'g, Node> {
        self.child(dir).load(SeqCst, guard)
    }

    #[inline]
    pub(crate) fn is_removed(&self) -> bool {
        self.removed.load(SeqCst)
    }

    #[inline]
    pub(crate) fn is_deleted(&self) -> bool {
        self.value.load(SeqCst) == EMPTY
    }

    #[inline]
    pub(crate) fn dir_of(&self, key: Key) -> Dir {
        if key < self.key {
            Dir::Left
        } else {
            Dir::Right
        }
    }
}

#[inline]
pub(crate) fn height(node: Shared<Node>) -> u32 {
    // SAFETY: callers hold a guard pinned while `node` was reachable
    unsafe { node.as_ref() }.map_or(0, |n| n.height.load(SeqCst))
}
