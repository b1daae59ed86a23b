//! Self-verification suites, designed to be run from the command line as a
//! health check of the whole numerical stack.
//!
//! Three independent suites:
//!
//! * **theorem** — randomized fuzzing of the provable inequalities (scheme
//!   dominance, the cap chain, the 1/8 ceiling) plus a direct scan of the
//!   diagnostic h(s) for its minimum of 8;
//! * **oracle** — agreement between the production solvers and the
//!   brute-force grid/bisection reference implementations in
//!   [`crate::oracle`] on freshly drawn random channels;
//! * **asymptotics** — the high- and low-power limits and the
//!   near-source/near-destination proximity behavior on a fixed reference
//!   geometry.
//!
//! Every check reports a name, a pass flag, and a human-readable detail
//! line; nothing stops at the first failure.

use crate::channel::{Geometry, Point};
use crate::experiments::{
    draw_relay_advantaged, exec, power_scan, proximity_scan, theorem_fuzz, FuzzSummary,
    ProximityKind,
};
use crate::export::fmt_sig;
use crate::gap::{h_of_s, high_snr_limit_g_ub, low_snr_limit_gbar_ub};
use crate::oracle::{cdf_rate_oracle, pdf_rate_oracle, pdf_ub_rate_oracle};
use crate::rate::{solve_cdf, solve_pdf, solve_pdf_fixed_beta, solve_pdf_ub};
use crate::rng::SplitMix64;
use serde::{Deserialize, Serialize};

/// One verification check: its name, verdict, and a measurement line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    /// Stable snake_case identifier of the check.
    pub name: String,
    /// Whether the check passed.
    pub passed: bool,
    /// The measured quantities behind the verdict.
    pub detail: String,
}

/// A named group of checks; passes only if every member does.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    /// Suite name: `theorem`, `oracle`, or `asymptotics`.
    pub name: String,
    /// Conjunction of all member checks.
    pub passed: bool,
    /// The individual checks, in a fixed order.
    pub checks: Vec<CheckOutcome>,
}

impl SuiteReport {
    fn from_checks(name: &str, checks: Vec<CheckOutcome>) -> Self {
        SuiteReport {
            name: name.to_string(),
            passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }
}

fn check(name: &str, passed: bool, detail: String) -> CheckOutcome {
    CheckOutcome {
        name: name.to_string(),
        passed,
        detail,
    }
}

/// The geometry both asymptotic limits are exercised on: relay at
/// (0.97, 0), perpendicular off the source–destination axis, with power
/// coefficients (1, 0.05).
///
/// Chosen so that *both* limits exist: the relay link is stronger than the
/// direct link (so the high-power limit's shape ratio exceeds 1) and the
/// relay is nearer the source than the destination is (so the low-power
/// limit is defined), while keeping every factor comfortably away from its
/// boundary. Scanning powers through [`power_scan`] scales the pair
/// (P, 0.05P).
pub fn asymptotic_reference_geometry() -> Geometry {
    Geometry::new(
        Point(0.0, 0.0),
        Point(0.97, 0.0),
        Point(0.0, 1.0),
        1.0,
        0.05,
        1.0,
        1.0,
    )
    .expect("reference geometry is valid")
}

/// Fuzzes the provable inequalities on `samples` random relay-advantaged
/// channels drawn from `seed`, and scans h(s) for its minimum. Returns the
/// raw fuzz summary alongside the suite so callers can report the worst
/// case found.
pub fn theorem_suite(seed: u64, samples: usize) -> (SuiteReport, FuzzSummary) {
    let summary = theorem_fuzz(seed, samples);
    let mut checks = Vec::new();

    let first_violation = summary
        .violations
        .first()
        .map(|v| {
            format!(
                "; first: {} (lhs {}, rhs {}) at ({}, {}, {})",
                v.check,
                fmt_sig(v.lhs, 12),
                fmt_sig(v.rhs, 12),
                fmt_sig(v.channel.lambda01(), 12),
                fmt_sig(v.channel.lambda02(), 12),
                fmt_sig(v.channel.lambda12(), 12)
            )
        })
        .unwrap_or_default();
    checks.push(check(
        "fuzz_inequalities_hold",
        summary.violations.is_empty(),
        format!(
            "{} violations in {} samples{}",
            summary.violations.len(),
            summary.samples,
            first_violation
        ),
    ));

    let worst_detail = match summary.worst_channel {
        Some(s) => format!(
            "worst normalized gap {} at ({}, {}, {})",
            fmt_sig(summary.worst_g_bar, 12),
            fmt_sig(s.lambda01(), 12),
            fmt_sig(s.lambda02(), 12),
            fmt_sig(s.lambda12(), 12)
        ),
        None => "no samples drawn".to_string(),
    };
    checks.push(check(
        "worst_normalized_gap_below_ceiling",
        summary.worst_g_bar <= 0.125 + 1e-12,
        worst_detail,
    ));

    let mut min_h = f64::INFINITY;
    let mut argmin = 0.0;
    for k in 1..=4000 {
        let s = 10f64.powf(k as f64 * 0.001);
        let h = h_of_s(s).expect("grid stays above 1");
        if h < min_h {
            min_h = h;
            argmin = s;
        }
    }
    checks.push(check(
        "h_grid_minimum_is_eight",
        min_h >= 8.0 - 1e-12 && min_h <= 8.01,
        format!(
            "min h = {} at s = {} over 4000 log-spaced points in (1, 10^4]",
            fmt_sig(min_h, 12),
            fmt_sig(argmin, 12)
        ),
    ));

    (SuiteReport::from_checks("theorem", checks), summary)
}

/// Cross-checks the production solvers against the brute-force oracles on
/// `samples` random relay-advantaged channels. The oracles cost
/// milliseconds per channel, so `samples` here is typically in the
/// hundreds, not thousands.
pub fn oracle_suite(seed: u64, samples: usize) -> SuiteReport {
    let mut rng = SplitMix64::new(seed);
    let channels: Vec<_> = (0..samples)
        .map(|_| draw_relay_advantaged(&mut rng))
        .collect();
    let deviations = exec::map_collect(channels, |s| {
        let cdf = (solve_cdf(&s).rate - cdf_rate_oracle(&s)).abs();
        let pdf = (solve_pdf(&s).rate - pdf_rate_oracle(&s)).abs();
        let ub = (solve_pdf_ub(&s).expect("drawn channels are relay-advantaged").rate
            - pdf_ub_rate_oracle(&s).expect("drawn channels are relay-advantaged"))
        .abs();
        let slice = (solve_pdf_fixed_beta(&s, 1.0).expect("beta 1 is in range").rate
            - solve_cdf(&s).rate)
            .abs();
        (cdf, pdf, ub, slice)
    });
    let mut max = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for d in &deviations {
        max = (max.0.max(d.0), max.1.max(d.1), max.2.max(d.2), max.3.max(d.3));
    }

    let entries = [
        ("cdf_closed_form_matches_grid_oracle", max.0, 1e-9),
        ("pdf_solver_matches_grid_oracle", max.1, 1e-6),
        ("pdf_upper_bound_matches_grid_oracle", max.2, 1e-9),
        ("unit_beta_slice_reproduces_cdf", max.3, 1e-9),
    ];
    let checks = entries
        .iter()
        .map(|(name, dev, tol)| {
            check(
                name,
                *dev <= *tol,
                format!(
                    "max |deviation| = {} over {} channels (tolerance {})",
                    fmt_sig(*dev, 6),
                    samples,
                    fmt_sig(*tol, 3)
                ),
            )
        })
        .collect();
    SuiteReport::from_checks("oracle", checks)
}

/// Checks the high- and low-power limits and the proximity behavior on the
/// reference geometry. Deterministic — no seed or sample count.
pub fn asymptotics_suite() -> SuiteReport {
    let mut checks = Vec::new();

    // A geometry whose two shape ratios are both exactly 4 has a high-power
    // absolute-gap limit of exactly half a bit.
    let symmetric = Geometry::new(
        Point(0.0, 0.0),
        Point(0.0, 0.5),
        Point(0.0, 1.0),
        1.0,
        0.25,
        1.0,
        1.0,
    )
    .expect("midpoint geometry is valid");
    let half = high_snr_limit_g_ub(&symmetric).expect("shape ratio exceeds 1");
    checks.push(check(
        "symmetric_ratio_geometry_limit_is_half_bit",
        (half - 0.5).abs() <= 1e-12,
        format!("limit = {} (expected 0.5 exactly)", fmt_sig(half, 12)),
    ));

    let reference = asymptotic_reference_geometry();
    let hs_limit = high_snr_limit_g_ub(&reference).expect("reference shape ratio exceeds 1");
    let low_limit = low_snr_limit_gbar_ub(&reference).expect("reference relay is near the source");
    let scan = power_scan(&reference, &[1e-6, 1e6]).expect("reference scan is valid");
    let (low_p, high_p) = (&scan[0], &scan[1]);

    let g_ub_high = high_p.g_ub().expect("reference channel is relay-advantaged");
    let rel = ((g_ub_high - hs_limit) / hs_limit).abs();
    checks.push(check(
        "absolute_gap_cap_approaches_high_power_limit",
        rel <= 0.05,
        format!(
            "g_ub = {} at P = 1e6 vs limit {} (relative deviation {}; the approach is only logarithmic in P)",
            fmt_sig(g_ub_high, 9),
            fmt_sig(hs_limit, 9),
            fmt_sig(rel, 3)
        ),
    ));

    let gbar_high = high_p.gbar_ub().expect("reference channel is relay-advantaged");
    checks.push(check(
        "normalized_gap_cap_vanishes_at_high_power",
        gbar_high < 1e-2,
        format!("g_bar_ub = {} at P = 1e6", fmt_sig(gbar_high, 6)),
    ));

    let gbar_low = low_p.gbar_ub().expect("reference channel is relay-advantaged");
    let rel = ((gbar_low - low_limit.product) / low_limit.product).abs();
    checks.push(check(
        "normalized_gap_cap_approaches_low_power_limit",
        rel <= 0.05,
        format!(
            "g_bar_ub = {} at P = 1e-6 vs limit {} (relative deviation {})",
            fmt_sig(gbar_low, 9),
            fmt_sig(low_limit.product, 9),
            fmt_sig(rel, 3)
        ),
    ));

    let g_ub_low = low_p.g_ub().expect("reference channel is relay-advantaged");
    checks.push(check(
        "absolute_gap_cap_vanishes_at_low_power",
        g_ub_low < 1e-3,
        format!("g_ub = {} at P = 1e-6", fmt_sig(g_ub_low, 6)),
    ));

    let in_unit = |v: f64| v > 0.0 && v < 1.0;
    checks.push(check(
        "low_power_limit_factors_lie_in_unit_interval",
        in_unit(low_limit.c3) && in_unit(low_limit.c4) && in_unit(low_limit.c5),
        format!(
            "C3 = {}, C4 = {}, C5 = {}",
            fmt_sig(low_limit.c3, 9),
            fmt_sig(low_limit.c4, 9),
            fmt_sig(low_limit.c5, 9)
        ),
    ));

    let near_source = proximity_scan(ProximityKind::NearSource, &[1e-4])
        .expect("near-source scan is valid");
    let (nsg, nsa) = (
        near_source[0].gbar_ub().expect("near-source channel is relay-advantaged"),
        near_source[0].g_ub().expect("near-source channel is relay-advantaged"),
    );
    checks.push(check(
        "near_source_relay_closes_both_caps",
        nsg < 1e-2 && nsa < 1e-2,
        format!(
            "at d = 1e-4: g_bar_ub = {}, g_ub = {} (thresholds 1e-2)",
            fmt_sig(nsg, 6),
            fmt_sig(nsa, 6)
        ),
    ));

    let near_dest = proximity_scan(ProximityKind::NearDestination, &[1e-4])
        .expect("near-destination scan is valid");
    let (ndg, nda) = (
        near_dest[0].gbar_ub().expect("near-destination channel is relay-advantaged"),
        near_dest[0].g_ub().expect("near-destination channel is relay-advantaged"),
    );
    checks.push(check(
        "near_destination_relay_closes_both_caps",
        ndg < 1e-4 && nda < 1e-4,
        format!(
            "at d = 1e-4: g_bar_ub = {}, g_ub = {} (thresholds 1e-4)",
            fmt_sig(ndg, 6),
            fmt_sig(nda, 6)
        ),
    ));

    SuiteReport::from_checks("asymptotics", checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem_suite_passes_on_a_small_run() {
        let (report, summary) = theorem_suite(42, 200);
        assert_eq!(report.name, "theorem");
        assert!(report.passed, "failed checks: {:?}", report.checks);
        assert_eq!(report.checks.len(), 3);
        assert_eq!(summary.samples, 200);
        assert!(summary.violations.is_empty());
    }

    #[test]
    fn oracle_suite_passes_on_a_small_run() {
        let report = oracle_suite(42, 20);
        assert!(report.passed, "failed checks: {:?}", report.checks);
        assert_eq!(report.checks.len(), 4);
        for outcome in &report.checks {
            assert!(outcome.detail.contains("20 channels"));
        }
    }

    #[test]
    fn asymptotics_suite_passes_deterministically() {
        let report = asymptotics_suite();
        assert!(report.passed, "failed checks: {:?}", report.checks);
        assert_eq!(report.checks.len(), 8);
        assert_eq!(report, asymptotics_suite());
    }

    #[test]
    fn suite_report_serializes_round_trip() {
        let report = asymptotics_suite();
        let json = serde_json::to_string(&report).unwrap();
        let back: SuiteReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
        assert!(json.contains("\"passed\""));
    }

    #[test]
    fn reference_geometry_supports_both_limits() {
        let geometry = asymptotic_reference_geometry();
        assert!(high_snr_limit_g_ub(&geometry).is_ok());
        assert!(low_snr_limit_gbar_ub(&geometry).is_ok());
        assert!(geometry.d01() < geometry.d02());
    }
}
