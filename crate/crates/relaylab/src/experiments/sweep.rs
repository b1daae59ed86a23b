//! Relay-position sweeps: the full gap analysis evaluated on a rectangular
//! lattice of candidate relay positions around a fixed source and
//! destination.

use crate::channel::{snr_from_geometry, Geometry, Point, SnrTriple};
use crate::error::Error;
use crate::gap::{gap_report, GapReport};
use crate::experiments::exec;
use serde::{Deserialize, Serialize};
use std::time::Instant;

/// Largest lattice a single sweep will evaluate; above this the spec is
/// rejected rather than letting a typo'd step allocate without bound.
const MAX_GRID_POINTS: usize = 25_000_000;

/// Everything that defines a position sweep. The defaults place the source
/// at the origin and the destination at (0, 1) with symmetric transmit
/// powers of 100 and unit noise, and walk relay positions over
/// x ∈ [0, 1], y ∈ [−0.2, 1.2] in steps of 0.01, keeping only positions
/// strictly inside the unit disk centered on the source.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    /// Source position.
    pub source: Point,
    /// Destination position.
    pub destination: Point,
    /// Source transmit power.
    pub p0: f64,
    /// Relay transmit power.
    pub p1: f64,
    /// Relay-side noise level.
    pub n1: f64,
    /// Destination-side noise level.
    pub n2: f64,
    /// Inclusive x extent of the candidate lattice.
    pub x_range: (f64, f64),
    /// Inclusive y extent of the candidate lattice.
    pub y_range: (f64, f64),
    /// Lattice spacing along both axes.
    pub step: f64,
    /// When set, only candidates with squared distance to the source
    /// strictly below 1 are evaluated.
    pub unit_disk_filter: bool,
    /// Echoed into the result for bookkeeping; the sweep itself is fully
    /// deterministic and never consumes randomness.
    pub seed: u64,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            source: Point(0.0, 0.0),
            destination: Point(0.0, 1.0),
            p0: 100.0,
            p1: 100.0,
            n1: 1.0,
            n2: 1.0,
            x_range: (0.0, 1.0),
            y_range: (-0.2, 1.2),
            step: 0.01,
            unit_disk_filter: true,
            seed: 0,
        }
    }
}

impl SweepSpec {
    /// Checks the spec before any evaluation: positive finite powers,
    /// noises and step, finite ordered ranges, distinct endpoints, and a
    /// lattice small enough to hold in memory.
    pub fn validate(&self) -> Result<(), Error> {
        for (field, value) in [
            ("p0", self.p0),
            ("p1", self.p1),
            ("n1", self.n1),
            ("n2", self.n2),
            ("step", self.step),
        ] {
            if !value.is_finite() {
                return Err(Error::NonFinite { field, value });
            }
            if value <= 0.0 {
                return Err(Error::NonPositive { field, value });
            }
        }
        for (field, (lo, hi)) in [("x_range", self.x_range), ("y_range", self.y_range)] {
            if !lo.is_finite() || !hi.is_finite() {
                return Err(Error::InvalidRange {
                    field,
                    detail: "range endpoints must be finite",
                });
            }
            if lo > hi {
                return Err(Error::InvalidRange {
                    field,
                    detail: "range start exceeds range end",
                });
            }
        }
        for (field, value) in [
            ("source", self.source.x()),
            ("source", self.source.y()),
            ("destination", self.destination.x()),
            ("destination", self.destination.y()),
        ] {
            if !value.is_finite() {
                return Err(Error::NonFinite { field, value });
            }
        }
        if !(self.source.distance(&self.destination) > 0.0) {
            return Err(Error::CoincidentNodes {
                pair: "source/destination",
            });
        }
        let total = self
            .axis_cells(self.x_range)
            .checked_add(1)
            .and_then(|nx| self.axis_cells(self.y_range).checked_add(1).map(|ny| (nx, ny)))
            .and_then(|(nx, ny)| nx.checked_mul(ny));
        match total {
            Some(t) if t <= MAX_GRID_POINTS => Ok(()),
            _ => Err(Error::InvalidRange {
                field: "step",
                detail: "lattice exceeds 25 million points; increase the step",
            }),
        }
    }

    /// Number of lattice cells along one axis; the axis has one more point
    /// than cells. The span is divided by the step and rounded, so an axis
    /// whose span is not an integer multiple of the step ends near, not
    /// exactly on, its upper limit.
    fn axis_cells(&self, range: (f64, f64)) -> usize {
        ((range.1 - range.0) / self.step).round() as usize
    }
}

/// One evaluated relay position.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    /// The relay position.
    pub position: Point,
    /// The SNR triple that position induces.
    pub snr: SnrTriple,
    /// The full gap analysis at that channel.
    pub report: GapReport,
}

/// A finished sweep: all records plus the summary the caller usually wants.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    /// Every evaluated position, in row-major order (x outer, y inner).
    pub records: Vec<SweepRecord>,
    /// Largest normalized gap over all records (0 when nothing survived the
    /// filters).
    pub max_g_bar: f64,
    /// Position attaining `max_g_bar`; on exact ties, the first in record
    /// order.
    pub argmax: Option<Point>,
    /// The spec that produced this result, echoed for reproducibility.
    pub spec: SweepSpec,
    /// Total lattice size before any filtering.
    pub grid_points: usize,
    /// Number of positions actually evaluated.
    pub evaluated: usize,
    /// Wall-clock seconds the sweep took.
    pub runtime_seconds: f64,
}

/// Lattice walk with the two skip rules applied in a fixed order: the
/// source-disk filter first, then the guards dropping positions within 1e-9
/// of the source or the destination (whose SNRs would overflow).
fn candidate_positions(spec: &SweepSpec) -> Vec<Point> {
    let nx = spec.axis_cells(spec.x_range);
    let ny = spec.axis_cells(spec.y_range);
    let mut out = Vec::new();
    for i in 0..=nx {
        let x = spec.x_range.0 + i as f64 * spec.step;
        for j in 0..=ny {
            let y = spec.y_range.0 + j as f64 * spec.step;
            let dxs = x - spec.source.x();
            let dys = y - spec.source.y();
            if spec.unit_disk_filter && !(dxs * dxs + dys * dys < 1.0) {
                continue;
            }
            if dxs * dxs + dys * dys <= 1e-18 {
                continue;
            }
            let dxd = x - spec.destination.x();
            let dyd = y - spec.destination.y();
            if dxd * dxd + dyd * dyd <= 1e-18 {
                continue;
            }
            out.push(Point(x, y));
        }
    }
    out
}

fn evaluate(spec: &SweepSpec, position: Point) -> Result<SweepRecord, Error> {
    let geometry = Geometry::new(
        spec.source,
        position,
        spec.destination,
        spec.p0,
        spec.p1,
        spec.n1,
        spec.n2,
    )?;
    let snr = snr_from_geometry(&geometry)?;
    Ok(SweepRecord {
        position,
        snr,
        report: gap_report(&snr)?,
    })
}

fn summarize(
    spec: &SweepSpec,
    grid_points: usize,
    results: Vec<Result<SweepRecord, Error>>,
    start: Instant,
) -> Result<SweepResult, Error> {
    let mut records = Vec::with_capacity(results.len());
    for result in results {
        records.push(result?);
    }
    let mut max_g_bar = 0.0;
    let mut argmax = None;
    for record in &records {
        if argmax.is_none() || record.report.g_bar > max_g_bar {
            max_g_bar = record.report.g_bar;
            argmax = Some(record.position);
        }
    }
    Ok(SweepResult {
        evaluated: records.len(),
        records,
        max_g_bar,
        argmax,
        spec: *spec,
        grid_points,
        runtime_seconds: start.elapsed().as_secs_f64(),
    })
}

/// Runs the sweep, fanning the per-position evaluations out across the
/// thread pool when the `parallel` feature is on.
pub fn position_sweep(spec: &SweepSpec) -> Result<SweepResult, Error> {
    spec.validate()?;
    let start = Instant::now();
    let grid_points = (spec.axis_cells(spec.x_range) + 1) * (spec.axis_cells(spec.y_range) + 1);
    let results = exec::map_collect(candidate_positions(spec), |p| evaluate(spec, p));
    summarize(spec, grid_points, results, start)
}

/// Single-threaded twin of [`position_sweep`]; always identical output.
pub fn position_sweep_seq(spec: &SweepSpec) -> Result<SweepResult, Error> {
    spec.validate()?;
    let start = Instant::now();
    let grid_points = (spec.axis_cells(spec.x_range) + 1) * (spec.axis_cells(spec.y_range) + 1);
    let results = exec::map_collect_seq(candidate_positions(spec), |p| evaluate(spec, p));
    summarize(spec, grid_points, results, start)
}
