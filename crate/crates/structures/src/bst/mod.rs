//! Partially-external binary search trees with per-node locks and optimistic traversal.
//!
//! Readers take no locks: they read a child link, then check that the node they read it from
//! has not been removed, restarting from the root if it has. Writers lock parent before child
//! and validate the link under the locks. A rotation never moves a node down: the node that
//! would move down is replaced by a fresh copy and the original is marked removed, so a reader
//! standing on a live node can always still reach every key routed through it.

mod daemon;
mod node;
mod restructure;

use std::sync::atomic::Ordering::SeqCst;
use std::sync::Arc;
use std::time::Duration;

use crossbeam_epoch::{self as epoch, Guard, Owned, Shared};
use skewbench_core::{ConcurrentIndex, Key, Value};

use daemon::Daemon;
use node::{height, Dir, Node, EMPTY};
pub use restructure::{PassStats, RestructureCounters, RestructureOrder};

/// How a tree gets rid of logically deleted nodes and keeps its height in check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Policy {
    /// Physical removal and rebalancing rotations on the writer's path.
    Eager,
    /// Physical removal on the writer's path, never any rotation.
    NoRotate,
    /// Writers only delete logically; a daemon thread removes and rotates.
    Deferred(DaemonConfig),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DaemonConfig {
    pub order: RestructureOrder,
    /// Rebalance in the same pass as removals.
    pub rotate: bool,
    /// Sleep between passes that changed nothing.
    pub idle: Duration,
    /// Start the daemon thread at all; off leaves maintenance to explicit calls.
    pub enabled: bool,
}

impl Default for DaemonConfig {
    fn default() -> Self {
        Self { order: RestructureOrder::Fixed, rotate: true, idle: Duration::from_millis(1), enabled: true }
    }
}

impl DaemonConfig {
    pub fn legacy() -> Self {
        Self { order: RestructureOrder::Legacy, ..Default::default() }
    }

    pub fn disabled(order: RestructureOrder) -> Self {
        Self { order, enabled: false, ..Default::default() }
    }
}

/// Shape of the tree at quiescence. Depths count edges from the topmost node.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DepthStats {
    /// Nodes physically in the tree, including logically deleted ones.
    pub nodes: usize,
    pub present: usize,
    /// Mean depth of present keys.
    pub average_depth: f64,
    pub max_depth: usize,
}

pub(crate) enum Found<'g> {
    Node { parent: Shared<'g, Node>, node: Shared<'g, Node> },
    Slot { parent: Shared<'g, Node>, dir: Dir },
}

/// Outcome of maintenance at one node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Fix {
    Unlinked,
    Rotated,
    Updated,
    Unchanged,
    /// The node is no longer where the caller saw it.
    Invalid,
}

pub(crate) struct Inner {
    /// Sentinel with key `Key::MAX`; the tree hangs off its left link.
    root: Box<Node>,
    policy: Policy,
    counters: restructure::SharedCounters,
    /// Held by each daemon pass and by whole-tree reads, which would otherwise race the daemon.
    maintenance: parking_lot::Mutex<()>,
}

// SAFETY: all shared state is reached through atomics and locks; nodes are reclaimed by epoch
unsafe impl Send for Inner {}
unsafe impl Sync for Inner {}

impl Inner {
    fn root<'g>(&self) -> Shared<'g, Node> {
        Shared::from(&*self.root as *const Node)
    }

    fn physical(&self) -> bool {
        !matches!(self.policy, Policy::Deferred(_))
    }

    fn rotates(&self) -> bool {
        matches!(self.policy, Policy::Eager)
    }

    /// Locates `key`, recording the ancestors above the returned parent in `path`.
    fn find<'g>(&self, key: Key, guard: &'g Guard, mut path: Option<&mut Vec<Shared<'g, Node>>>) -> Found<'g> {
        'retry: loop {
            if let Some(path) = path.as_deref_mut() {
                path.clear();
            }
            let mut parent = self.root();
            let mut dir = Dir::Left;
            loop {
                // SAFETY: `parent` was reachable while `guard` was pinned
                let p = unsafe { parent.deref() };
                let child = p.load(dir, guard);
                if p.is_removed() {
                    continue 'retry;
                }
                // SAFETY: as above
                let Some(c) = (unsafe { child.as_ref() }) else {
                    return Found::Slot { parent, dir };
                };
                if c.key == key {
                    return Found::Node { parent, node: child };
                }
                if let Some(path) = path.as_deref_mut() {
                    path.push(parent);
                }
                parent = child;
                dir = c.dir_of(key);
            }
        }
    }

    fn get(&self, key: Key) -> Option<Value> {
        let guard = &epoch::pin();
        loop {
            match self.find(key, guard, None) {
                Found::Slot { .. } => return None,
                Found::Node { node, .. } => {
                    // SAFETY: reachable under `guard`
                    let n = unsafe { node.deref() };
                    let value = n.value.load(SeqCst);
                    if n.is_removed() {
                        continue;
                    }
                    return (value != EMPTY).then_some(value);
                }
            }
        }
    }

    fn put_if_absent(&self, key: Key, value: Value) -> Option<Value> {
        debug_assert!(key != Key::MAX && value != EMPTY, "Key::MAX and Value::MAX are reserved");
        let guard = &epoch::pin();
        let mut path = Vec::new();
        loop {
            match self.find(key, guard, Some(&mut path)) {
                Found::Node { node, .. } => {
                    // SAFETY: reachable under `guard`
                    let n = unsafe { node.deref() };
                    let current = n.value.load(SeqCst);
                    if n.is_removed() {
                        continue;
                    }
                    if current != EMPTY {
                        return Some(current);
                    }
                    let _lock = n.lock.lock();
                    if n.is_removed() {
                        continue;
                    }
                    let current = n.value.load(SeqCst);
                    if current != EMPTY {
                        return Some(current);
                    }
                    n.value.store(value, SeqCst);
                    return None;
                }
                Found::Slot { parent, dir } => {
                    // SAFETY: reachable under `guard`
                    let p = unsafe { parent.deref() };
                    {
                        let _lock = p.lock.lock();
                        if p.is_removed() || !p.load(dir, guard).is_null() {
                            continue;
                        }
                        p.child(dir).store(Owned::new(Node::new(key, value)), SeqCst);
                    }
                    if self.rotates() {
                        path.push(parent);
                        self.fix_path(&path, guard);
                    }
                    return None;
                }
            }
        }
    }

    fn remove(&self, key: Key) -> Option<Value> {
        let guard = &epoch::pin();
        let old = loop {
            match self.find(key, guard, None) {
                Found::Slot { .. } => return None,
                Found::Node { node, .. } => {
                    // SAFETY: reachable under `guard`
                    let n = unsafe { node.deref() };
                    let current = n.value.load(SeqCst);
                    if n.is_removed() {
                        continue;
                    }
                    if current == EMPTY {
                        return None;
                    }
                    let _lock = n.lock.lock();
                    if n.is_removed() {
                        continue;
                    }
                    let current = n.value.load(SeqCst);
                    if current == EMPTY {
                        return None;
                    }
                    n.value.store(EMPTY, SeqCst);
                    break current;
                }
            }
        };
        if self.physical() {
            self.cleanup(key, guard);
        }
        Some(old)
    }

    /// Unlinks the logically deleted node holding `key` if it has at most one child, then
    /// walks up repairing ancestors.
    fn cleanup(&self, key: Key, guard: &Guard) {
        let mut path = Vec::new();
        loop {
            let Found::Node { parent, node } = self.find(key, guard, Some(&mut path)) else {
                return;
            };
            match self.fix_node(parent, node, true, false, guard) {
                Fix::Invalid => continue,
                Fix::Unlinked => {
                    path.push(parent);
                    self.fix_path(&path, guard);
                    return;
                }
                _ => return,
            }
        }
    }

    /// Repairs `path` bottom-up, stopping at the first node that needs nothing.
    fn fix_path(&self, path: &[Shared<Node>], guard: &Guard) {
        let rotate = self.rotates();
        for i in (1..path.len()).rev() {
            match self.fix_node(path[i - 1], path[i], true, rotate, guard) {
                Fix::Unlinked | Fix::Rotated | Fix::Updated => {}
                Fix::Unchanged | Fix::Invalid => return,
            }
        }
    }

    /// Maintenance at `node` below `parent`: unlink it if it is deleted with at most one child,
    /// otherwise refresh its height and rotate when the children differ by more than one.
    pub(crate) fn fix_node(
        &self,
        parent: Shared<Node>,
        node: Shared<Node>,
        unlink: bool,
        rotate: bool,
        guard: &Guard,
    ) -> Fix {
        // SAFETY: both were reachable under `guard`
        let (p, n) = unsafe { (parent.deref(), node.deref()) };
        let _parent_lock = p.lock.lock();
        let dir = p.dir_of(n.key);
        if p.is_removed() || p.load(dir, guard) != node {
            return Fix::Invalid;
        }
        let _node_lock = n.lock.lock();
        if n.is_removed() {
            return Fix::Invalid;
        }
        let left = n.load(Dir::Left, guard);
        let right = n.load(Dir::Right, guard);
        if unlink && n.is_deleted() && (left.is_null() || right.is_null()) {
            let child = if left.is_null() { right } else { left };
            n.removed.store(true, SeqCst);
            p.child(dir).store(child, SeqCst);
            // SAFETY: unlinked under locks, exactly once; readers still inside hold guards
            unsafe { guard.defer_destroy(node) };
            return Fix::Unlinked;
        }
        if !rotate {
            return Fix::Unchanged;
        }
        let (hl, hr) = (height(left), height(right));
        if hl > hr + 1 {
            self.rebalance(parent, dir, node, Dir::Left, guard);
            return Fix::Rotated;
        }
        if hr > hl + 1 {
            self.rebalance(parent, dir, node, Dir::Right, guard);
            return Fix::Rotated;
        }
        let h = 1 + hl.max(hr);
        if n.height.swap(h, SeqCst) == h {
            Fix::Unchanged
        } else {
            Fix::Updated
        }
    }

    /// Single or double rotation at `x`, whose `heavy` side is too tall. `parent` and `x` are locked.
    fn rebalance(&self, parent: Shared<Node>, pdir: Dir, x: Shared<Node>, heavy: Dir, guard: &Guard) {
        // SAFETY: `x` is locked and linked; its children are reachable
        let c = unsafe { x.deref() }.load(heavy, guard);
        let cn = unsafe { c.deref() };
        let _c_lock = cn.lock.lock();
        let inner = cn.load(heavy.opposite(), guard);
        if height(inner) > height(cn.load(heavy, guard)) {
            // SAFETY: taller than a sibling, so not null
            let _inner_lock = unsafe { inner.deref() }.lock.lock();
            self.rotate(x, heavy, c, heavy.opposite(), guard);
            self.rotate(parent, pdir, x, heavy, guard);
        } else {
            self.rotate(parent, pdir, x, heavy, guard);
        }
        self.counters.rotation();
    }

    /// Lifts `x.up` into `x`'s place below `parent`. `x` is replaced by a copy one level down.
    /// `parent`, `x` and `x.up` are locked.
    fn rotate(&self, parent: Shared<Node>, pdir: Dir, x: Shared<Node>, up: Dir, guard: &Guard) {
        // SAFETY: all three nodes are locked and linked
        let (p, xn) = unsafe { (parent.deref(), x.deref()) };
        let c = xn.load(up, guard);
        let cn = unsafe { c.deref() };
        let inner = cn.load(up.opposite(), guard);
        let outer = xn.load(up.opposite(), guard);
        let h = 1 + height(inner).max(height(outer));
        let value = xn.value.load(SeqCst);
        let copy = match up {
            Dir::Left => Node::with_children(xn.key, value, inner, outer, h),
            Dir::Right => Node::with_children(xn.key, value, outer, inner, h),
        };
        let copy = Owned::new(copy).into_shared(guard);
        xn.removed.store(true, SeqCst);
        cn.child(up.opposite()).store(copy, SeqCst);
        p.child(pdir).store(c, SeqCst);
        cn.height.store(1 + height(cn.load(up, guard)).max(h), SeqCst);
        // SAFETY: `x` is unlinked and marked; it is never linked again
        unsafe { guard.defer_destroy(x) };
    }

    /// Visits every linked node in order. Quiescent use only; the daemon is held off.
    fn for_each_in_order(&self, mut visit: impl FnMut(&Node, usize)) {
        let _maintenance = self.maintenance.lock();
        let guard = &epoch::pin();
        let mut stack: Vec<(Shared<Node>, usize)> = Vec::new();
        let mut cur = (self.root.load(Dir::Left, guard), 0);
        loop {
            while !cur.0.is_null() {
                stack.push(cur);
                cur = (unsafe { cur.0.deref() }.load(Dir::Left, guard), cur.1 + 1);
            }
            let Some((node, depth)) = stack.pop() else { break };
            let n = unsafe { node.deref() };
            visit(n, depth);
            cur = (n.load(Dir::Right, guard), depth + 1);
        }
    }
}

impl Drop for Inner {
    fn drop(&mut self) {
        // SAFETY: no other reference to the tree remains
        let guard = unsafe { epoch::unprotected() };
        let mut stack = vec![self.root.load(Dir::Left, guard)];
        while let Some(node) = stack.pop() {
            if node.is_null() {
                continue;
            }
            let owned = unsafe { node.into_owned() };
            stack.push(owned.load(Dir::Left, guard));
            stack.push(owned.load(Dir::Right, guard));
        }
    }
}

/// A concurrent ordered map. `Key::MAX` and `Value::MAX` are reserved.
pub struct PartiallyExternalBst {
    inner: Arc<Inner>,
    daemon: Option<Daemon>,
}

impl PartiallyExternalBst {
    pub fn new(policy: Policy) -> Self {
        let inner = Arc::new(Inner {
            root: Box::new(Node::new(Key::MAX, EMPTY)),
            policy,
            counters: Default::default(),
            maintenance: Default::default(),
        });
        let daemon = match policy {
            Policy::Deferred(cfg) if cfg.enabled => Some(Daemon::spawn(inner.clone(), cfg)),
            _ => None,
        };
        Self { inner, daemon }
    }

    pub fn policy(&self) -> Policy {
        self.inner.policy
    }

    /// One maintenance pass over the whole tree, as the daemon would run it.
    pub fn restructure_pass(&self, order: RestructureOrder, rotate: bool) -> PassStats {
        restructure::pass(&self.inner, order, rotate)
    }

    /// Passes without rotations until no deleted node with at most one child is left, or a
    /// pass removes nothing.
    pub fn restructure(&self, order: RestructureOrder) -> RestructureCounters {
        restructure::to_fixed_point(&self.inner, order)
    }

    /// Logically deleted nodes that could be unlinked right now.
    pub fn removable(&self) -> usize {
        restructure::removable(&self.inner)
    }

    /// Daemon passes so far, plus every rotation made by writers or the daemon.
    pub fn maintenance_counters(&self) -> RestructureCounters {
        self.inner.counters.snapshot()
    }

    /// Quiescent shape statistics.
    pub fn depth_stats(&self) -> DepthStats {
        let mut stats = DepthStats::default();
        let mut depth_sum = 0usize;
        self.inner.for_each_in_order(|n, depth| {
            stats.nodes += 1;
            stats.max_depth = stats.max_depth.max(depth);
            if !n.is_deleted() {
                stats.present += 1;
                depth_sum += depth;
            }
        });
        if stats.present > 0 {
            stats.average_depth = depth_sum as f64 / stats.present as f64;
        }
        stats
    }

    /// Longest root-to-leaf path in edges; 0 when empty.
    pub fn height(&self) -> usize {
        self.depth_stats().max_depth
    }

    /// Linked keys in order, logically deleted ones included. Quiescent use only.
    pub fn physical_keys(&self) -> Vec<Key> {
        let mut keys = Vec::new();
        self.inner.for_each_in_order(|n, _| keys.push(n.key));
        keys
    }

    /// Pre-order `(key, deleted)` listing, enough to compare shapes. Quiescent use only.
    pub fn shape(&self) -> Vec<(Key, bool)> {
        let _maintenance = self.inner.maintenance.lock();
        let guard = &epoch::pin();
        let mut out = Vec::new();
        let mut stack = vec![self.inner.root.load(Dir::Left, guard)];
        while let Some(node) = stack.pop() {
            if let Some(n) = unsafe { node.as_ref() } {
                out.push((n.key, n.is_deleted()));
                stack.push(n.load(Dir::Right, guard));
                stack.push(n.load(Dir::Left, guard));
            }
        }
        out
    }
}

impl Drop for PartiallyExternalBst {
    fn drop(&mut self) {
        if let Some(daemon) = self.daemon.take() {
            daemon.stop();
        }
    }
}

impl ConcurrentIndex for PartiallyExternalBst {
    fn get(&self, key: Key) -> Option<Value> {
        self.inner.get(key)
    }

    fn put_if_absent(&self, key: Key, value: Value) -> Option<Value> {
        self.inner.put_if_absent(key, value)
    }

    fn remove(&self, key: Key) -> Option<Value> {
        self.inner.remove(key)
    }

    fn size(&self) -> usize {
        let mut n = 0;
        self.inner.for_each_in_order(|node, _| n += !node.is_deleted() as usize);
        n
    }

    fn ordered_keys(&self) -> Vec<Key> {
        let mut keys = Vec::new();
        self.inner.for_each_in_order(|n, _| {
            if !n.is_deleted() {
                keys.push(n.key)
            }
        });
        keys
    }

    fn check_health(&self) -> Result<(), String> {
        self.daemon.as_ref().map_or(Ok(()), Daemon::health)
    }
}
