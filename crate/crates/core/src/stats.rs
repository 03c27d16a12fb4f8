//! Process-wide engine counters.
//!
//! Counters are informational. A single solve in a fresh process produces
//! deterministic counts; concurrent solves in one process share them.

use serde::Serialize;
use std::sync::atomic::{AtomicU64, Ordering};

static SUMSET_CALLS: AtomicU64 = AtomicU64::new(0);
static NTT_CALLS: AtomicU64 = AtomicU64::new(0);
static BITSET_CALLS: AtomicU64 = AtomicU64::new(0);
static MAX_NTT_LEN: AtomicU64 = AtomicU64::new(0);
static OPLUS_MU_CALLS: AtomicU64 = AtomicU64::new(0);
static EARLY_STOPS: AtomicU64 = AtomicU64::new(0);
static RP_SOLVES: AtomicU64 = AtomicU64::new(0);
static RP_EXACT_PATHS: AtomicU64 = AtomicU64::new(0);

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct EngineCounters {
    pub sumset_calls: u64,
    pub ntt_calls: u64,
    pub bitset_calls: u64,
    pub max_ntt_len: u64,
    pub oplus_mu_calls: u64,
    pub early_stops: u64,
    pub rp_solves: u64,
    pub rp_exact_paths: u64,
}

pub fn snapshot() -> EngineCounters {
    EngineCounters {
        sumset_calls: SUMSET_CALLS.load(Ordering::Relaxed),
        ntt_calls: NTT_CALLS.load(Ordering::Relaxed),
        bitset_calls: BITSET_CALLS.load(Ordering::Relaxed),
        max_ntt_len: MAX_NTT_LEN.load(Ordering::Relaxed),
        oplus_mu_calls: OPLUS_MU_CALLS.load(Ordering::Relaxed),
        early_stops: EARLY_STOPS.load(Ordering::Relaxed),
        rp_solves: RP_SOLVES.load(Ordering::Relaxed),
        rp_exact_paths: RP_EXACT_PATHS.load(Ordering::Relaxed),
    }
}

pub fn reset() {
    for c in [
        &SUMSET_CALLS,
        &NTT_CALLS,
        &BITSET_CALLS,
        &MAX_NTT_LEN,
        &OPLUS_MU_CALLS,
        &EARLY_STOPS,
        &RP_SOLVES,
        &RP_EXACT_PATHS,
    ] {
        c.store(0, Ordering::Relaxed);
    }
}

pub(crate) fn sumset_call() {
    SUMSET_CALLS.fetch_add(1, Ordering::Relaxed);
}

pub(crate) fn ntt_call(len: usize) {
    NTT_CALLS.fetch_add(1, Ordering::Relaxed);
    MAX_NTT_LEN.fetch_max(len as u64, Ordering::Relaxed);
}

pub(crate) fn bitset_call() {
    BITSET_CALLS.fetch_add(1, Ordering::Relaxed);
}

pub(crate) fn oplus_mu_call() {
    OPLUS_MU_CALLS.fetch_add(1, Ordering::Relaxed);
}

pub(crate) fn early_stop() {
    EARLY_STOPS.fetch_add(1, Ordering::Relaxed);
}

pub(crate) fn rp_solve(exact: bool) {
    RP_SOLVES.fetch_add(1, Ordering::Relaxed);
    if exact {
        RP_EXACT_PATHS.fetch_add(1, Ordering::Relaxed);
    }
}
