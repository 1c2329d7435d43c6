/// Keys are machine-word integers drawn from `[0, range)`.
pub type Key = u64;
/// Values are machine-word integers; the benchmark stores `value == key`.
pub type Value = u64;

/// The structure under test.
///
/// `get`, `put_if_absent` and `remove` must be linearizable under unrestricted concurrent use.
/// Methods documented as quiescent may only be relied upon when no other operation is running.
pub trait ConcurrentIndex: Send + Sync {
    fn get(&self, key: Key) -> Option<Value>;

    /// Inserts `value` under `key` unless the key is present.
    ///
    /// Returns `None` iff the key was absent and is now present, otherwise the value already
    /// associated with the key.
    fn put_if_absent(&self, key: Key, value: Value) -> Option<Value>;

    /// Removes `key`, returning its value, or `None` if it was absent.
    fn remove(&self, key: Key) -> Option<Value>;

    /// Number of present keys. Quiescent.
    fn size(&self) -> usize;

    /// Present keys in traversal order. Quiescent.
    fn ordered_keys(&self) -> Vec<Key>;

    /// Reports failures of background machinery (maintenance threads and the like).
    fn check_health(&self) -> Result<(), String> {
        Ok(())
    }
}

impl<T: ConcurrentIndex + ?Sized> ConcurrentIndex for Box<T> {
    fn get(&self, key: Key) -> Option<Value> {
        (**self).get(key)
    }
    fn put_if_absent(&self, key: Key, value: Value) -> Option<Value> {
        (**self).put_if_absent(key, value)
    }
    fn remove(&self, key: Key) -> Option<Value> {
        (**self).remove(key)
    }
    fn size(&self) -> usize {
        (**self).size()
    }
    fn ordered_keys(&self) -> Vec<Key> {
        (**self).ordered_keys()
    }
    fn check_health(&self) -> Result<(), String> {
        (**self).check_health()
    }
}
