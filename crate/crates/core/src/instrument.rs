//! Per-thread operation counters.
//!
//! Each thread sees only the key schedules and Serpent24 runs it performed
//! itself, so tests running in parallel do not disturb each other.

use std::cell::Cell;

thread_local! {
    static KEY_SCHEDULES: Cell<u64> = const { Cell::new(0) };
    static SERPENT24_RUNS: Cell<u64> = const { Cell::new(0) };
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Counters {
    pub key_schedules: u64,
    pub serpent24_runs: u64,
}

impl std::ops::Sub for Counters {
    type Output = Counters;
    fn sub(self, rhs: Counters) -> Counters {
        Counters {
            key_schedules: self.key_schedules - rhs.key_schedules,
            serpent24_runs: self.serpent24_runs - rhs.serpent24_runs,
        }
    }
}

pub fn snapshot() -> Counters {
    Counters {
        key_schedules: KEY_SCHEDULES.with(Cell::get),
        serpent24_runs: SERPENT24_RUNS.with(Cell::get),
    }
}

#[inline]
pub(crate) fn count_key_schedule() {
    KEY_SCHEDULES.with(|c| c.set(c.get() + 1));
}

#[inline]
pub(crate) fn count_serpent24() {
    SERPENT24_RUNS.with(|c| c.set(c.get() + 1));
}
