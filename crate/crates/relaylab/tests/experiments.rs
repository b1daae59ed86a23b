//! Integration tests for the experiment drivers: determinism across the
//! parallel and sequential code paths, structural properties of the sweeps,
//! and agreement with frozen reference values computed by an independent
//! high-resolution implementation of the same definitions.

use relaylab::channel::{Point, Regime, SnrTriple};
use relaylab::experiments::{
    bound_approach_search, position_sweep, position_sweep_seq, power_scan, proximity_scan,
    theorem_fuzz, theorem_fuzz_seq, ProximityKind, SweepSpec,
};
use relaylab::gap::gap_report;
use relaylab::verify::asymptotic_reference_geometry;

/// Purely relative comparison, for frozen targets spanning many decades.
fn assert_rel(actual: f64, expected: f64, rel: f64) {
    assert!(
        (actual - expected).abs() <= rel * expected.abs(),
        "got {actual}, expected {expected} (rel tol {rel})"
    );
}

#[test]
fn default_sweep_matches_frozen_reference() {
    let result = position_sweep(&SweepSpec::default()).expect("default spec is valid");
    assert_eq!(result.grid_points, 101 * 141);
    assert_eq!(result.evaluated, 9941);
    assert_eq!(result.records.len(), 9941);
    assert_rel(result.max_g_bar, 0.07924463236461163, 1e-12);
    let argmax = result.argmax.expect("positions were evaluated");
    assert_eq!(argmax, Point(0.0, 0.47000000000000003));
    let record = result
        .records
        .iter()
        .find(|rec| rec.position == argmax)
        .expect("argmax row is among the records");
    assert_rel(record.snr.lambda01(), 452.6935264825712, 1e-12);
    assert_rel(record.snr.lambda02(), 100.0, 1e-12);
    assert_rel(record.snr.lambda12(), 355.99857600569595, 1e-12);
    assert_rel(record.report.r_cdf, 3.6071769461150964, 1e-12);
    assert_rel(record.report.r_pdf, 3.8930263570840897, 1e-12);
    assert!(result.runtime_seconds >= 0.0);
}

#[test]
fn coarse_sweep_matches_frozen_reference_and_stays_below_fine_maximum() {
    let coarse_spec = SweepSpec {
        step: 0.1,
        ..SweepSpec::default()
    };
    let coarse = position_sweep(&coarse_spec).expect("coarse spec is valid");
    assert_eq!(coarse.evaluated, 105);
    assert_rel(coarse.max_g_bar, 0.07894812440797787, 1e-12);
    assert_eq!(coarse.argmax, Some(Point(0.0, 0.5)));
    // The coarse lattice is (up to float placement) a sublattice of the
    // default one, so its maximum cannot exceed the fine maximum.
    let fine = position_sweep(&SweepSpec::default()).expect("default spec is valid");
    assert!(coarse.max_g_bar <= fine.max_g_bar + 1e-12);
}

#[test]
fn doubled_powers_shift_the_sweep_maximum() {
    let spec = SweepSpec {
        p0: 200.0,
        p1: 200.0,
        ..SweepSpec::default()
    };
    let result = position_sweep(&spec).expect("spec is valid");
    assert_eq!(result.evaluated, 9941);
    assert_rel(result.max_g_bar, 0.0754469786015355, 1e-12);
    assert_eq!(result.argmax, Some(Point(0.0, 0.45)));
}

#[test]
fn parallel_and_sequential_sweeps_agree_exactly() {
    let spec = SweepSpec {
        step: 0.05,
        ..SweepSpec::default()
    };
    let mut par = position_sweep(&spec).expect("spec is valid");
    let mut seq = position_sweep_seq(&spec).expect("spec is valid");
    // Wall-clock time is the one legitimately nondeterministic field.
    par.runtime_seconds = 0.0;
    seq.runtime_seconds = 0.0;
    assert_eq!(par, seq);
}

#[test]
fn sweep_is_mirror_symmetric_about_the_source_destination_axis() {
    // A dyadic step keeps the lattice exactly symmetric in floating point,
    // so mirrored positions must produce bitwise-identical reports.
    let spec = SweepSpec {
        x_range: (-0.5, 0.5),
        y_range: (0.0, 0.5),
        step: 0.0625,
        ..SweepSpec::default()
    };
    let result = position_sweep(&spec).expect("spec is valid");
    assert_eq!(result.evaluated, 9 * 17 - 1); // the lattice minus the source itself
    let by_position: std::collections::HashMap<(u64, u64), _> = result
        .records
        .iter()
        .map(|rec| {
            (
                (rec.position.x().to_bits(), rec.position.y().to_bits()),
                rec,
            )
        })
        .collect();
    for rec in &result.records {
        // `+ 0.0` folds the negated axis value -0.0 back onto the stored key.
        let mirrored = by_position
            .get(&((-rec.position.x() + 0.0).to_bits(), rec.position.y().to_bits()))
            .expect("every position has its mirror on a dyadic lattice");
        assert_eq!(mirrored.report, rec.report);
    }
}

#[test]
fn positions_outside_the_source_disk_never_show_a_gap() {
    let spec = SweepSpec {
        x_range: (1.05, 1.4),
        y_range: (0.0, 0.3),
        step: 0.05,
        unit_disk_filter: false,
        ..SweepSpec::default()
    };
    let result = position_sweep(&spec).expect("spec is valid");
    assert_eq!(result.evaluated, 8 * 7);
    for rec in &result.records {
        assert_eq!(rec.report.regime, Regime::DirectAdvantaged);
        assert_eq!(rec.report.g_bar, 0.0);
        assert_eq!(rec.report.g, 0.0);
    }
    assert_eq!(result.max_g_bar, 0.0);
    // On an all-zero field the argmax is the first evaluated position.
    assert_eq!(result.argmax, Some(Point(1.05, 0.0)));
}

#[test]
fn fuzz_is_deterministic_and_matches_the_frozen_worst_case() {
    let first = theorem_fuzz(42, 2000);
    let second = theorem_fuzz(42, 2000);
    let sequential = theorem_fuzz_seq(42, 2000);
    assert_eq!(first, second);
    assert_eq!(first, sequential);
    assert!(first.violations.is_empty());
    assert_eq!(first.samples, 2000);
    assert_rel(first.worst_g_bar, 0.12318872228684262, 1e-9);
    let worst = first.worst_channel.expect("samples were drawn");
    assert_rel(worst.lambda01(), 543_799.379_992_906_2, 1e-9);
    assert_rel(worst.lambda02(), 588.925_278_615_417_8, 1e-9);
    assert_rel(worst.lambda12(), 712_670.908_506_659_1, 1e-9);
}

#[test]
fn bound_search_climbs_toward_the_ceiling_as_the_forward_link_grows() {
    let points = bound_approach_search(&[1e3, 1e4, 1e5]).expect("coherent SNRs are valid");
    assert_eq!(points.len(), 3);

    assert_rel(points[0].g_bar, 0.11230016421903953, 1e-9);
    assert_rel(points[0].lambda01, 519.9663369990567, 1e-6);
    assert_rel(points[0].lambda02, 23.06504456773955, 1e-6);

    assert_rel(points[1].g_bar, 0.11870651787622168, 1e-9);
    assert_rel(points[1].lambda01, 5757.718210922457, 1e-6);
    assert_rel(points[1].lambda02, 74.48609838768782, 1e-6);

    assert_rel(points[2].g_bar, 0.12188344278491023, 1e-9);
    assert_rel(points[2].lambda01, 66192.03313578828, 1e-6);
    assert_rel(points[2].lambda02, 248.5152102063337, 1e-6);

    // The found maxima rise with the forward link and stay under 1/8.
    assert!(points[0].g_bar < points[1].g_bar);
    assert!(points[1].g_bar < points[2].g_bar);
    assert!(points[2].g_bar < 0.125);

    // At the largest forward link the search at least matches the best
    // hand-picked channel with the same lambda12.
    let showcase = SnrTriple::new(62_000.0, 230.0, 1e5).expect("valid SNRs");
    let showcase_gap = gap_report(&showcase).expect("relay-advantaged").g_bar;
    assert!(points[2].g_bar >= showcase_gap);
}

#[test]
fn proximity_scans_match_frozen_references_and_decay_toward_the_endpoints() {
    let ds = [0.1, 0.01, 0.001, 0.0001];

    let near_source =
        proximity_scan(ProximityKind::NearSource, &ds).expect("distances are inside the segment");
    let ns_gbar = [
        0.010559267290100314,
        0.001604088218668304,
        0.0008039583406121936,
        0.0005363867060675278,
    ];
    let ns_g = [
        0.00031674386806506305,
        4.5540396404757205e-05,
        2.2695512150623084e-05,
        1.5144723791949535e-05,
    ];
    for (i, point) in near_source.iter().enumerate() {
        assert_eq!(point.d, ds[i]);
        assert_rel(point.gbar_ub().expect("relay-advantaged"), ns_gbar[i], 1e-12);
        assert_rel(point.g_ub().expect("relay-advantaged"), ns_g[i], 1e-12);
    }

    let near_dest = proximity_scan(ProximityKind::NearDestination, &ds)
        .expect("distances are inside the segment");
    let nd_gbar = [
        0.0023652621344701775,
        4.2508860032072035e-05,
        2.1484035357349513e-06,
        1.43322240208281e-07,
    ];
    let nd_g = [
        2.0873874311961058e-05,
        3.1126377305132027e-07,
        1.545118165232589e-08,
        1.0289209802277557e-09,
    ];
    for (i, point) in near_dest.iter().enumerate() {
        assert_eq!(point.d, ds[i]);
        assert_rel(point.gbar_ub().expect("relay-advantaged"), nd_gbar[i], 1e-12);
        assert_rel(point.g_ub().expect("relay-advantaged"), nd_g[i], 1e-12);
    }

    // Both caps shrink as the relay closes in on either endpoint.
    for pts in [&near_source, &near_dest] {
        for pair in pts.windows(2) {
            assert!(pair[1].gbar_ub() < pair[0].gbar_ub());
            assert!(pair[1].g_ub() < pair[0].g_ub());
        }
    }
}

#[test]
fn power_scan_interpolates_between_the_two_limits() {
    let geom = asymptotic_reference_geometry();
    let factors = [1e-6, 1e-3, 1.0, 1e3, 1e6];
    let points = power_scan(&geom, &factors).expect("factors are positive");
    assert_eq!(points.len(), factors.len());
    for (point, factor) in points.iter().zip(factors) {
        assert_eq!(point.p, factor);
        let gbar = point.gbar_ub().expect("geometry is relay-advantaged");
        assert!(gbar > 0.0 && gbar < 0.125);
    }
    // Low power: the normalized cap approaches its geometric limit while the
    // absolute cap vanishes. High power: the roles swap.
    assert_rel(
        points[0].gbar_ub().expect("relay-advantaged"),
        0.037153067129233525,
        1e-12,
    );
    assert_rel(
        points[0].g_ub().expect("relay-advantaged"),
        2.7214384276208128e-08,
        1e-12,
    );
    assert_rel(
        points[4].gbar_ub().expect("relay-advantaged"),
        0.003567462195893893,
        1e-12,
    );
    assert_rel(
        points[4].g_ub().expect("relay-advantaged"),
        0.03555585390313633,
        1e-12,
    );
    assert!(points[4].gbar_ub() < points[0].gbar_ub());
    assert!(points[4].g_ub() > points[0].g_ub());
}
