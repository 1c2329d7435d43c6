//! Whole-tree maintenance passes run by the daemon.

use std::sync::atomic::{AtomicU64, Ordering::Relaxed};

use crossbeam_epoch::{self as epoch, Guard, Shared};

use super::node::{Dir, Node};
use super::{Fix, Inner};

/// Where a pass tries to unlink a node relative to visiting its children.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RestructureOrder {
    /// After the children: a fully deleted tree empties in one pass.
    Fixed,
    /// Before the children: parents freed up by their children wait for the next pass.
    Legacy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PassStats {
    pub visits: u64,
    pub physical_removals: u64,
    pub rotations: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RestructureCounters {
    /// Top-level passes.
    pub calls: u64,
    pub visits: u64,
    pub physical_removals: u64,
    pub rotations: u64,
}

impl RestructureCounters {
    pub fn add(&mut self, pass: PassStats) {
        self.calls += 1;
        self.visits += pass.visits;
        self.physical_removals += pass.physical_removals;
        self.rotations += pass.rotations;
    }
}

#[derive(Debug, Default)]
pub(crate) struct SharedCounters {
    calls: AtomicU64,
    visits: AtomicU64,
    removals: AtomicU64,
    rotations: AtomicU64,
}

impl SharedCounters {
    pub(crate) fn rotation(&self) {
        self.rotations.fetch_add(1, Relaxed);
    }

    pub(crate) fn record(&self, pass: PassStats) {
        self.calls.fetch_add(1, Relaxed);
        self.visits.fetch_add(pass.visits, Relaxed);
        self.removals.fetch_add(pass.physical_removals, Relaxed);
    }

    pub(crate) fn snapshot(&self) -> RestructureCounters {
        RestructureCounters {
            calls: self.calls.load(Relaxed),
            visits: self.visits.load(Relaxed),
            physical_removals: self.removals.load(Relaxed),
            rotations: self.rotations.load(Relaxed),
        }
    }
}

struct Frame<'g> {
    parent: Shared<'g, Node>,
    node: Shared<'g, Node>,
    exit: bool,
}

fn push_children<'g>(stack: &mut Vec<Frame<'g>>, node: Shared<'g, Node>, guard: &'g Guard) {
    // SAFETY: reachable under `guard`
    let n = unsafe { node.deref() };
    for dir in [Dir::Right, Dir::Left] {
        let child = n.load(dir, guard);
        if !child.is_null() {
            stack.push(Frame { parent: node, node: child, exit: false });
        }
    }
}

pub(crate) fn pass(inner: &Inner, order: RestructureOrder, rotate: bool) -> PassStats {
    let _maintenance = inner.maintenance.lock();
    let guard = &epoch::pin();
    let mut stats = PassStats::default();
    let mut stack = Vec::new();
    push_children(&mut stack, inner.root(), guard);
    while let Some(frame) = stack.pop() {
        let Frame { parent, node, exit } = frame;
        match (order, exit) {
            (RestructureOrder::Fixed, false) => {
                stats.visits += 1;
                stack.push(Frame { exit: true, ..frame });
                push_children(&mut stack, node, guard);
            }
            (RestructureOrder::Fixed, true) => match inner.fix_node(parent, node, true, rotate, guard) {
                Fix::Unlinked => stats.physical_removals += 1,
                Fix::Rotated => stats.rotations += 1,
                _ => {}
            },
            (RestructureOrder::Legacy, false) => {
                stats.visits += 1;
                if inner.fix_node(parent, node, true, false, guard) == Fix::Unlinked {
                    stats.physical_removals += 1;
                    // carry on with whatever took the node's place
                    // SAFETY: `parent` is still linked; only this thread unlinks nodes
                    let p = unsafe { parent.deref() };
                    let replacement = p.load(p.dir_of(unsafe { node.deref() }.key), guard);
                    if !replacement.is_null() {
                        stack.push(Frame { parent, node: replacement, exit: false });
                    }
                    continue;
                }
                if rotate {
                    stack.push(Frame { exit: true, ..frame });
                }
                push_children(&mut stack, node, guard);
            }
            (RestructureOrder::Legacy, true) => {
                if inner.fix_node(parent, node, false, true, guard) == Fix::Rotated {
                    stats.rotations += 1;
                }
            }
        }
    }
    stats
}

/// Deleted nodes with at most one child.
pub(crate) fn removable(inner: &Inner) -> usize {
    let guard = &epoch::pin();
    let mut count = 0;
    inner.for_each_in_order(|n, _| {
        let leafish = n.load(Dir::Left, guard).is_null() || n.load(Dir::Right, guard).is_null();
        count += (n.is_deleted() && leafish) as usize;
    });
    count
}

pub(crate) fn to_fixed_point(inner: &Inner, order: RestructureOrder) -> RestructureCounters {
    let mut counters = RestructureCounters::default();
    loop {
        let stats = pass(inner, order, false);
        counters.add(stats);
        if stats.physical_removals == 0 || removable(inner) == 0 {
            return counters;
        }
    }
}
