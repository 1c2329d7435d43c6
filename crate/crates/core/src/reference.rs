//! A coarse-locked ordered map: the correctness reference for every other index.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use crate::{ConcurrentIndex, Key, Value};

#[derive(Debug, Default)]
pub struct CoarseLockMap {
    map: Mutex<BTreeMap<Key, Value>>,
    gets: AtomicU64,
}

impl CoarseLockMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of `get` calls served so far.
    pub fn gets_served(&self) -> u64 {
        self.gets.load(Ordering::Relaxed)
    }

    pub fn contains(&self, key: Key) -> bool {
        self.map.lock().unwrap().contains_key(&key)
    }
}

impl ConcurrentIndex for CoarseLockMap {
    fn get(&self, key: Key) -> Option<Value> {
        self.gets.fetch_add(1, Ordering::Relaxed);
        self.map.lock().unwrap().get(&key).copied()
    }

    fn put_if_absent(&self, key: Key, value: Value) -> Option<Value> {
        let mut map = self.map.lock().unwrap();
        match map.get(&key) {
            Some(&v) => Some(v),
            None => {
                map.insert(key, value);
                None
            }
        }
    }

    fn remove(&self, key: Key) -> Option<Value> {
        self.map.lock().unwrap().remove(&key)
    }

    fn size(&self) -> usize {
        self.map.lock().unwrap().len()
    }

    fn ordered_keys(&self) -> Vec<Key> {
        self.map.lock().unwrap().keys().copied().collect()
    }
}
