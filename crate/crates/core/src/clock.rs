//! Session clock abstraction.
//!
//! Everything in the pipeline reads time through [`Clock`] so the simulator
//! can replay scenarios deterministically on a [`VirtualClock`] while a live
//! deployment runs on [`SystemClock`].

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;
use std::time::Instant;

/// Monotonic session time in integer milliseconds.
pub trait Clock: Send + Sync {
    fn now_ms(&self) -> u64;

    /// Advance the clock by `ms`. On a virtual clock this is the only way
    /// time moves; on the system clock it is a no-op because wall time has
    /// already passed.
    fn advance(&self, ms: u64);
}

/// Event-driven clock: time moves only via [`Clock::advance`], so two reads
/// without an intervening tick return the same value.
#[derive(Clone, Default)]
pub struct VirtualClock {
    now_ms: Arc<AtomicU64>,
}

impl VirtualClock {
    pub fn new() -> Self {
        Self::starting_at(0)
    }

    pub fn starting_at(ms: u64) -> Self {
        VirtualClock {
            now_ms: Arc::new(AtomicU64::new(ms)),
        }
    }

    /// Jump forward to an absolute time. Ignored if `ms` is in the past, so
    /// replaying an ordered event list can never move time backwards.
    pub fn advance_to(&self, ms: u64) {
        self.now_ms.fetch_max(ms, Ordering::AcqRel);
    }
}

impl Clock for VirtualClock {
    fn now_ms(&self) -> u64 {
        self.now_ms.load(Ordering::Acquire)
    }

    fn advance(&self, ms: u64) {
        self.now_ms.fetch_add(ms, Ordering::AcqRel);
    }
}

/// Wall clock measured from construction.
pub struct SystemClock {
    origin: Instant,
}

impl SystemClock {
    pub fn new() -> Self {
        SystemClock {
            origin: Instant::now(),
        }
    }
}

impl Default for SystemClock {
    fn default() -> Self {
        Self::new()
    }
}

impl Clock for SystemClock {
    fn now_ms(&self) -> u64 {
        self.origin.elapsed().as_millis() as u64
    }

    fn advance(&self, _ms: u64) {}
}
