//! Batch computations over channel families: relay-position sweeps, power
//! and proximity scans, randomized invariant fuzzing, and a numerical search
//! for the worst normalized gap.
//!
//! Every heavy experiment has a data-parallel implementation (on by default
//! via the `parallel` feature, backed by a work-stealing pool) and a plain
//! sequential twin. The two produce identical output — bit for bit — because
//! per-channel evaluations are independent, results are collected in input
//! order, and reductions run over the collected vector, never concurrently.

pub(crate) mod exec;
mod fuzz;
mod scan;
mod search;
mod sweep;

pub use exec::run_with_threads;
pub use fuzz::{
    draw_relay_advantaged, theorem_fuzz, theorem_fuzz_seq, FuzzSummary, FuzzViolation,
};
pub use scan::{
    power_scan, proximity_scan, proximity_scan_with, PowerScanPoint, ProximityConfig,
    ProximityKind, ProximityPoint,
};
pub use search::{bound_approach_search, BoundSearchPoint};
pub use sweep::{position_sweep, position_sweep_seq, SweepRecord, SweepResult, SweepSpec};
