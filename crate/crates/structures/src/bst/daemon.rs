use std::panic::{self, AssertUnwindSafe};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{Arc, Mutex};
use std::thread::{self, JoinHandle};

use super::restructure::pass;
use super::{DaemonConfig, Inner};

/// Background maintenance thread of a deferred tree; stopped and joined on drop of the tree.
pub(crate) struct Daemon {
    stop: Arc<AtomicBool>,
    failure: Arc<Mutex<Option<String>>>,
    handle: Option<JoinHandle<()>>,
}

impl Daemon {
    pub(crate) fn spawn(inner: Arc<Inner>, cfg: DaemonConfig) -> Self {
        let stop = Arc::new(AtomicBool::new(false));
        let failure = Arc::new(Mutex::new(None));
        let handle = {
            let (stop, failure) = (stop.clone(), failure.clone());
            thread::Builder::new()
                .name("bst-daemon".into())
                .spawn(move || {
                    let run = panic::catch_unwind(AssertUnwindSafe(|| {
                        while !stop.load(Ordering::Relaxed) {
                            let stats = pass(&inner, cfg.order, cfg.rotate);
                            inner.counters.record(stats);
                            if stats.physical_removals == 0 && stats.rotations == 0 {
                                thread::sleep(cfg.idle);
                            } else {
                                thread::yield_now();
                            }
                        }
                    }));
                    if let Err(payload) = run {
                        let msg = payload
                            .downcast_ref::<&str>()
                            .map(|s| s.to_string())
                            .or_else(|| payload.downcast_ref::<String>().cloned())
                            .unwrap_or_else(|| "unknown panic".into());
                        *failure.lock().unwrap() = Some(msg);
                    }
                })
                .expect("failed to spawn daemon thread")
        };
        Self { stop, failure, handle: Some(handle) }
    }

    pub(crate) fn health(&self) -> Result<(), String> {
        match &*self.failure.lock().unwrap() {
            Some(msg) => Err(format!("daemon thread panicked: {msg}")),
            None => Ok(()),
        }
    }

    pub(crate) fn stop(mut self) {
        self.stop.store(true, Ordering::Relaxed);
        if let Some(handle) = self.handle.take() {
            let _ = handle.join();
        }
    }
}
