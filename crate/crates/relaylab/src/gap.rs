//! The gap between partial and complete decode-forward, and every closed-form
//! cap on it.
//!
//! With the log variables
//!
//! ```text
//! w = log₂(1+λ01)    u = log₂(1+λ02)    v = w − 2u
//! t = u(w−u)/w       q = log₂(1+(√λ02+√λ12)²)
//! ```
//!
//! the toolkit evaluates, for relay-advantaged channels (λ01 > λ02):
//!
//! * the gap `G = R_PDF − R_CDF` and normalized gap `Ḡ = G / R_CDF`,
//! * `Ḡ ≤ t(q−u)/(q(q+v))` ([`gbar_ub`]),
//! * `Ḡ ≤ u(w−u)/(w[w+2√(u(w−u))]) = 1/h(w/u)` ([`lemma5_bound`], with
//!   [`h_of_s`] minimized at h(2) = 8 — hence Ḡ never exceeds 1/8),
//! * `G ≤ (w−u)(q−u)u / (2(q+w−2u)(q+w−u))` ([`g_ub`]), and
//! * the high- and low-SNR limits of those caps for a fixed geometry as the
//!   common power scale P grows or vanishes.

use crate::channel::{classify_regime, snr_from_geometry, Geometry, Regime, SnrTriple};
use crate::error::Error;
use crate::rate::{log2p1, solve_cdf, solve_pdf, solve_pdf_ub};
use serde::{Deserialize, Serialize};

/// The five base-2 log quantities every closed form is written in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogVariables {
    /// log₂(1+λ01).
    pub w: f64,
    /// log₂(1+λ02).
    pub u: f64,
    /// w − 2u.
    pub v: f64,
    /// u(w−u)/w.
    pub t: f64,
    /// log₂(1+(√λ02+√λ12)²).
    pub q: f64,
}

/// Transcribes the five log-variable definitions. For relay-advantaged
/// channels w > u > 0 and q > u hold; the fields are well defined for any
/// valid channel regardless.
pub fn log_variables(s: &SnrTriple) -> LogVariables {
    let w = log2p1(s.lambda01());
    let u = log2p1(s.lambda02());
    let root = s.lambda02().sqrt() + s.lambda12().sqrt();
    let q = log2p1(root * root);
    LogVariables {
        w,
        u,
        v: w - 2.0 * u,
        t: u * (w - u) / w,
        q,
    }
}

fn require_relay_advantage(s: &SnrTriple) -> Result<(), Error> {
    if !(s.lambda01() > s.lambda02()) {
        return Err(Error::NotRelayAdvantaged {
            lambda01: s.lambda01(),
            lambda02: s.lambda02(),
        });
    }
    Ok(())
}

/// Closed-form cap on the normalized gap: `t(q−u) / (q(q+v))`.
///
/// Requires λ01 > λ02. Equals `(R_PDF^UB − R_CDF)/R_CDF` algebraically; the
/// test suite checks that identity against the independently solved rates.
pub fn gbar_ub(s: &SnrTriple) -> Result<f64, Error> {
    require_relay_advantage(s)?;
    let lv = log_variables(s);
    Ok(lv.t * (lv.q - lv.u) / (lv.q * (lv.q + lv.v)))
}

/// λ12-free cap on the normalized gap:
/// `u(w−u) / (w[w + 2√(u(w−u))])`, i.e. the worst case of [`gbar_ub`] over
/// all q. Equals `1/h(w/u)`; since h is minimized at h(2) = 8, this bound
/// never exceeds 1/8. Requires λ01 > λ02.
pub fn lemma5_bound(s: &SnrTriple) -> Result<f64, Error> {
    require_relay_advantage(s)?;
    let lv = log_variables(s);
    let (w, u) = (lv.w, lv.u);
    Ok(u * (w - u) / (w * (w + 2.0 * (u * (w - u)).sqrt())))
}

/// The diagnostic `h(s) = s[1 + 2(s−1)^(−1/2) + (s−1)^(−1)]` for s > 1.
///
/// `1/h(w/u)` equals [`lemma5_bound`]; the minimum over s > 1 is h(2) = 8,
/// which is where the universal 1/8 cap on the normalized gap comes from.
pub fn h_of_s(sv: f64) -> Result<f64, Error> {
    if !(sv > 1.0) {
        return Err(Error::HArgumentOutOfRange { value: sv });
    }
    Ok(sv * (1.0 + 2.0 / (sv - 1.0).sqrt() + 1.0 / (sv - 1.0)))
}

/// Closed-form cap on the absolute gap in bits:
/// `(w−u)(q−u)u / (2(q+w−2u)(q+w−u))`. Requires λ01 > λ02.
///
/// Algebraically this is exactly `solve_pdf_ub − solve_cdf`, so it dominates
/// the true gap `R_PDF − R_CDF`.
pub fn g_ub(s: &SnrTriple) -> Result<f64, Error> {
    require_relay_advantage(s)?;
    let lv = log_variables(s);
    let (w, u, q) = (lv.w, lv.u, lv.q);
    Ok((w - u) * (q - u) * u / (2.0 * (q + w - 2.0 * u) * (q + w - u)))
}

/// Limit of [`g_ub`] as the common power scale of a geometry grows:
/// `(1/2)·(1/log₂C1 + 1/log₂C2)^(−1)` with the scale-free ratios
/// `C1 = λ01/λ02` and `C2 = (√λ02+√λ12)²/λ02`.
///
/// The O(1/log P) correction terms are dropped; at finite large P the cap
/// approaches this constant only logarithmically, so comparisons should
/// allow a few percent. Requires C1 > 1 (relay link stronger than direct),
/// otherwise the log term is nonpositive and the limit is undefined.
pub fn high_snr_limit_g_ub(geom: &Geometry) -> Result<f64, Error> {
    let s = snr_from_geometry(geom)?;
    let c1 = s.lambda01() / s.lambda02();
    if !(c1 > 1.0) {
        return Err(Error::InvalidShapeRatio { c1 });
    }
    let root = s.lambda02().sqrt() + s.lambda12().sqrt();
    let c2 = root * root / s.lambda02();
    Ok(0.5 / (1.0 / c1.log2() + 1.0 / c2.log2()))
}

/// The three factors (and their product) of the low-SNR limit of
/// [`gbar_ub`] for a fixed geometry as the common power scale vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LowSnrLimit {
    /// Ratio of direct-link to relay-link SNR slope; `(d01/d02)²` under
    /// equal noises.
    pub c3: f64,
    /// `(a−b) / ((a−b) + 2√(bc) + c)` in the slope variables below.
    pub c4: f64,
    /// `((√b+√c)² − b) / (√b+√c)²`.
    pub c5: f64,
    /// C3·C4·C5 — the limit itself.
    pub product: f64,
}

/// Limit of [`gbar_ub`] as the common power scale P → 0.
///
/// At vanishing SNR every log₂(1+λ) collapses to λ/ln 2, so only the SNR
/// *slopes* per unit P survive: `a = P0/(d01²N1)`, `b = P0/(d02²N2)`,
/// `c = P1/(d12²N2)` evaluated at the geometry's stored powers. The limit
/// factors as C3·C4·C5 with every factor in (0, 1); under equal noises
/// C3 reduces to the pure distance ratio `(d01/d02)²`.
///
/// Requires the relay strictly closer to the source than the destination is
/// (`d01 < d02`), and a relay-advantaged slope ordering a > b (automatic
/// when N1 = N2).
pub fn low_snr_limit_gbar_ub(geom: &Geometry) -> Result<LowSnrLimit, Error> {
    let (d01, d02) = (geom.d01(), geom.d02());
    if d01 >= d02 {
        return Err(Error::RelayFartherThanDestination { d01, d02 });
    }
    let s = snr_from_geometry(geom)?;
    let (a, b, c) = (s.lambda01(), s.lambda02(), s.lambda12());
    if !(a > b) {
        return Err(Error::NotRelayAdvantaged {
            lambda01: a,
            lambda02: b,
        });
    }
    let c3 = b / a;
    let c4 = (a - b) / ((a - b) + 2.0 * (b * c).sqrt() + c);
    let coherent = (b.sqrt() + c.sqrt()) * (b.sqrt() + c.sqrt());
    let c5 = (coherent - b) / coherent;
    Ok(LowSnrLimit {
        c3,
        c4,
        c5,
        product: c3 * c4 * c5,
    })
}

/// Everything the toolkit knows about one channel: the three rates, the gap
/// and normalized gap, every closed-form cap, and the regime.
///
/// The caps (and `r_pdf_ub`) are only defined for relay-advantaged channels;
/// elsewhere they are `None` — serialized as `null` in JSON and empty cells
/// in CSV — rather than NaN, so sweep summaries cannot silently absorb
/// poison values. Outside the relay-advantaged regime the partial scheme's
/// optimum is plain direct transmission and `g` and `g_bar` are 0 by
/// convention (`r_cdf` still records the true complete-decode-forward
/// max-min, which is dominated there).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    /// Complete-decode-forward rate, bits/use.
    pub r_cdf: f64,
    /// Partial-decode-forward rate, bits/use.
    pub r_pdf: f64,
    /// Closed-form upper bound on `r_pdf`; relay-advantaged channels only.
    pub r_pdf_ub: Option<f64>,
    /// G = R_PDF − R_CDF, bits/use (0 by convention outside relay advantage).
    pub g: f64,
    /// Ḡ = G / R_CDF (0 by convention outside relay advantage).
    pub g_bar: f64,
    /// Cap on Ḡ from [`gbar_ub`].
    pub g_bar_ub: Option<f64>,
    /// λ12-free cap on Ḡ from [`lemma5_bound`]; at most 1/8.
    pub lemma5_bound: Option<f64>,
    /// Cap on G in bits from [`g_ub`].
    pub g_ub: Option<f64>,
    /// λ01-vs-λ02 classification at the default tolerance.
    pub regime: Regime,
}

/// Computes the full [`GapReport`] for one channel.
///
/// The only error is the R_CDF < 10⁻¹⁵ bits guard on the normalized-gap
/// division, reachable only for absurdly small λ01.
pub fn gap_report(s: &SnrTriple) -> Result<GapReport, Error> {
    let regime = classify_regime(s, crate::channel::DEFAULT_REGIME_TOL);
    let r_cdf = solve_cdf(s).rate;
    let r_pdf = solve_pdf(s).rate;
    if regime == Regime::RelayAdvantaged {
        if r_cdf < 1e-15 {
            return Err(Error::VanishingCdfRate { r_cdf });
        }
        let g = r_pdf - r_cdf;
        Ok(GapReport {
            r_cdf,
            r_pdf,
            r_pdf_ub: Some(solve_pdf_ub(s)?.rate),
            g,
            g_bar: g / r_cdf,
            g_bar_ub: Some(gbar_ub(s)?),
            lemma5_bound: Some(lemma5_bound(s)?),
            g_ub: Some(g_ub(s)?),
            regime,
        })
    } else {
        Ok(GapReport {
            r_cdf,
            r_pdf,
            r_pdf_ub: None,
            g: 0.0,
            g_bar: 0.0,
            g_bar_ub: None,
            lemma5_bound: None,
            g_ub: None,
            regime,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::Point;
    use crate::rate::direct_rate;
    use crate::rng::SplitMix64;

    fn snr(l01: f64, l02: f64, l12: f64) -> SnrTriple {
        SnrTriple::new(l01, l02, l12).unwrap()
    }

    fn assert_close(actual: f64, expected: f64, rel: f64) {
        let scale = 1.0f64.max(expected.abs());
        assert!(
            (actual - expected).abs() <= rel * scale,
            "got {actual}, expected {expected} (rel tol {rel})"
        );
    }

    fn line_geometry(relay: Point, p0: f64, p1: f64) -> Geometry {
        Geometry::new(Point(0.0, 0.0), relay, Point(0.0, 1.0), p0, p1, 1.0, 1.0).unwrap()
    }

    #[test]
    fn log_variables_on_powers_of_two() {
        // λ01 = 3 gives w = 2 exactly; λ12 = (√3−1)² makes the coherent sum
        // hit 1+(1+√λ12)² = 4, so q = 2 as well.
        let l12 = (3f64.sqrt() - 1.0).powi(2);
        let lv = log_variables(&snr(3.0, 1.0, l12));
        assert_eq!(lv.w, 2.0);
        assert_eq!(lv.u, 1.0);
        assert_close(lv.v, 0.0, 1e-12);
        assert_close(lv.t, 0.5, 1e-12);
        assert_close(lv.q, 2.0, 1e-12);
    }

    #[test]
    fn log_variables_degenerate_and_frozen_cases() {
        let lv = log_variables(&snr(7.0, 7.0, 1.0));
        assert_eq!(lv.w, lv.u);
        assert_eq!(lv.t, 0.0);
        let lv = log_variables(&snr(10.0, 1.0, 10.0));
        assert_close(lv.w, 3.4594316186373, 1e-12);
        assert_eq!(lv.u, 1.0);
        assert_close(lv.v, 1.4594316186373, 1e-12);
        assert_close(lv.t, 0.710935173682112, 1e-12);
        assert_close(lv.q, 4.19570628397338, 1e-12);
    }

    #[test]
    fn normalized_gap_cap_brackets_the_twelve_percent_example() {
        let s = snr(62000.0, 230.0, 1e5);
        let ub = gbar_ub(&s).unwrap();
        assert_close(ub, 0.12459893665776112, 1e-12);
        assert!(ub >= 0.122 && ub <= 0.125);
    }

    #[test]
    fn normalized_gap_cap_vanishes_when_the_relay_adds_no_combining_gain() {
        // λ12 so small that (√λ02+√λ12)² rounds to λ02: q = u and the cap
        // is exactly zero. Boundary probe only — λ12 = 0 itself is invalid.
        let ub = gbar_ub(&snr(10.0, 1.0, 1e-300)).unwrap();
        assert_eq!(ub, 0.0);
    }

    #[test]
    fn normalized_gap_cap_equals_rate_difference_identity() {
        for (l01, l02, l12) in [(10.0, 1.0, 10.0), (62000.0, 230.0, 1e5), (7.0, 0.3, 2.0)] {
            let s = snr(l01, l02, l12);
            let direct = (solve_pdf_ub(&s).unwrap().rate - solve_cdf(&s).rate) / solve_cdf(&s).rate;
            assert_close(gbar_ub(&s).unwrap(), direct, 1e-9);
        }
    }

    #[test]
    fn bound_operations_reject_weak_relay_links() {
        let s = snr(1.0, 2.0, 5.0);
        let expect = Error::NotRelayAdvantaged {
            lambda01: 1.0,
            lambda02: 2.0,
        };
        assert_eq!(gbar_ub(&s), Err(expect.clone()));
        assert_eq!(lemma5_bound(&s), Err(expect.clone()));
        assert_eq!(g_ub(&s), Err(expect));
        assert!(gbar_ub(&snr(2.0, 2.0, 5.0)).is_err());
    }

    #[test]
    fn lemma5_hits_one_eighth_exactly_at_w_equals_two_u() {
        // λ01 = 3, λ02 = 1: w = 2u = 2, so the cap is u²/(2u·4u) = 1/8.
        assert_eq!(lemma5_bound(&snr(3.0, 1.0, 123.0)).unwrap(), 0.125);
        // Barely relay-advantaged: the (w−u) factor washes the cap out.
        let tiny = lemma5_bound(&snr(1.0 + 1e-9, 1.0, 5.0)).unwrap();
        assert!(tiny > 0.0 && tiny < 1e-6, "got {tiny}");
    }

    #[test]
    fn lemma5_dominates_the_q_dependent_cap_for_random_coherent_gains() {
        let s_base = snr(10.0, 1.0, 1.0);
        let cap = lemma5_bound(&s_base).unwrap();
        let mut rng = SplitMix64::new(1234);
        for _ in 0..100 {
            let l12 = rng.log_uniform(-2.0, 6.0);
            let s = snr(10.0, 1.0, l12);
            let ub = gbar_ub(&s).unwrap();
            assert!(
                ub <= cap + 1e-12,
                "gbar_ub {ub} exceeded lemma5 cap {cap} at lambda12 = {l12}"
            );
        }
    }

    #[test]
    fn h_matches_hand_values_and_rejects_its_boundary() {
        assert_eq!(h_of_s(2.0).unwrap(), 8.0);
        assert_eq!(h_of_s(5.0).unwrap(), 11.25);
        assert_close(h_of_s(1.2).unwrap(), 12.5665631459995, 1e-12);
        // Diverges toward the boundary...
        assert!(h_of_s(1.0 + 1e-9).unwrap() > 1e8);
        // ...and is undefined at or below it.
        assert_eq!(h_of_s(1.0), Err(Error::HArgumentOutOfRange { value: 1.0 }));
        assert!(h_of_s(0.3).is_err());
        assert!(h_of_s(f64::NAN).is_err());
    }

    #[test]
    fn lemma5_is_the_reciprocal_of_h() {
        let mut rng = SplitMix64::new(5);
        for _ in 0..50 {
            let l01 = rng.log_uniform(-2.0, 6.0);
            let l02 = rng.log_uniform(-2.0, 6.0);
            if !(l01 > l02) {
                continue;
            }
            let s = snr(l01, l02, 1.0);
            let lv = log_variables(&s);
            let product = lemma5_bound(&s).unwrap() * h_of_s(lv.w / lv.u).unwrap();
            assert_close(product, 1.0, 1e-12);
        }
    }

    #[test]
    fn absolute_gap_cap_frozen_identity_and_dominance() {
        let s = snr(62000.0, 230.0, 1e5);
        assert_close(g_ub(&s).unwrap(), 0.6693100959799586, 1e-12);
        let mut rng = SplitMix64::new(99);
        for _ in 0..40 {
            let l01 = rng.log_uniform(-2.0, 6.0);
            let l02 = rng.log_uniform(-2.0, 6.0);
            let l12 = rng.log_uniform(-2.0, 6.0);
            if !(l01 > l02) {
                continue;
            }
            let s = snr(l01, l02, l12);
            let cap = g_ub(&s).unwrap();
            let identity = solve_pdf_ub(&s).unwrap().rate - solve_cdf(&s).rate;
            assert_close(cap, identity, 1e-9);
            let gap = solve_pdf(&s).rate - solve_cdf(&s).rate;
            assert!(cap >= gap - 1e-9, "cap {cap} below gap {gap}");
        }
        // First bracket (w−u) vanishes as the links equalize.
        let near = g_ub(&snr(1.0 + 1e-9, 1.0, 5.0)).unwrap();
        assert!(near < 1e-9);
    }

    #[test]
    fn high_snr_limit_on_symmetric_ratios_is_half_a_bit() {
        // Midpoint relay with p1 = p0/4: C1 = C2 = 4 exactly.
        let g = line_geometry(Point(0.0, 0.5), 1.0, 0.25);
        assert_eq!(high_snr_limit_g_ub(&g).unwrap(), 0.5);
    }

    #[test]
    fn high_snr_limit_grows_with_the_relay_link_ratio() {
        let base = high_snr_limit_g_ub(&line_geometry(Point(0.0, 0.5), 1.0, 0.25)).unwrap();
        // Relay at 0.25 with p1 tuned so C2 stays 4 while C1 jumps to 16.
        let stronger = high_snr_limit_g_ub(&line_geometry(Point(0.0, 0.25), 1.0, 0.5625)).unwrap();
        assert!(stronger > base);
        assert_close(stronger, 2.0 / 3.0, 1e-12);
    }

    #[test]
    fn high_snr_limit_requires_a_dominant_relay_link() {
        let g = line_geometry(Point(0.0, 1.5), 1.0, 1.0);
        assert!(matches!(
            high_snr_limit_g_ub(&g),
            Err(Error::InvalidShapeRatio { c1 }) if c1 < 1.0
        ));
    }

    #[test]
    fn low_snr_limit_factors_stay_in_the_unit_interval() {
        let g = line_geometry(Point(0.97, 0.0), 1.0, 0.05);
        let lim = low_snr_limit_gbar_ub(&g).unwrap();
        assert_close(lim.c3, 0.9409, 1e-12);
        assert_close(lim.c4, 0.15335772182423985, 1e-12);
        assert_close(lim.c5, 0.25748130801437646, 1e-12);
        assert_close(lim.product, 0.037153080072974014, 1e-12);
        for factor in [lim.c3, lim.c4, lim.c5] {
            assert!(factor > 0.0 && factor < 1.0);
        }
    }

    #[test]
    fn low_snr_limit_vanishes_with_the_relay_at_the_source() {
        let lim = low_snr_limit_gbar_ub(&line_geometry(Point(0.0, 1e-3), 1.0, 1.0)).unwrap();
        assert!(lim.c3 <= 1.1e-6);
        assert!(lim.product < 1e-6);
    }

    #[test]
    fn low_snr_limit_rejects_a_far_relay() {
        let err = low_snr_limit_gbar_ub(&line_geometry(Point(0.0, 1.2), 1.0, 1.0)).unwrap_err();
        assert!(matches!(err, Error::RelayFartherThanDestination { .. }));
        // Equidistant is rejected too: the limit needs strict advantage.
        assert!(low_snr_limit_gbar_ub(&line_geometry(Point(1.0, 0.0), 1.0, 1.0)).is_err());
    }

    #[test]
    fn report_for_the_twelve_percent_channel() {
        let report = gap_report(&snr(62000.0, 230.0, 1e5)).unwrap();
        assert_eq!(report.regime, Regime::RelayAdvantaged);
        assert_close(report.g_bar, 0.12186522006536461, 1e-12);
        assert!((report.g_bar - 0.122).abs() <= 0.002);
        assert_close(report.g, 0.6546253469450241, 1e-12);
        assert!(report.r_pdf_ub.unwrap() > report.r_pdf);
    }

    #[test]
    fn report_chain_holds_for_a_moderate_channel() {
        let report = gap_report(&snr(10.0, 1.0, 10.0)).unwrap();
        let g_bar_ub = report.g_bar_ub.unwrap();
        let lemma5 = report.lemma5_bound.unwrap();
        assert!(report.g_bar <= g_bar_ub);
        assert!(g_bar_ub <= lemma5);
        assert!(lemma5 <= 0.125 + 1e-12);
        assert!(report.g <= report.g_ub.unwrap() + 1e-12);
        assert_close(g_bar_ub, 0.0957521601073166, 1e-12);
        assert_close(lemma5, 0.107783645405992, 1e-12);
        assert_close(report.g_ub.unwrap(), 0.104417034345047, 1e-12);
    }

    #[test]
    fn report_outside_relay_advantage_uses_the_zero_convention() {
        let report = gap_report(&snr(0.5, 1.0, 5.0)).unwrap();
        assert_eq!(report.regime, Regime::DirectAdvantaged);
        assert_eq!(report.g, 0.0);
        assert_eq!(report.g_bar, 0.0);
        assert_eq!(report.r_pdf_ub, None);
        assert_eq!(report.g_bar_ub, None);
        assert_eq!(report.lemma5_bound, None);
        assert_eq!(report.g_ub, None);
        assert_eq!(report.r_pdf, direct_rate(&snr(0.5, 1.0, 5.0)));
        let report = gap_report(&snr(1.0, 1.0, 5.0)).unwrap();
        assert_eq!(report.regime, Regime::Equal);
        assert_eq!(report.g_bar, 0.0);
        assert_eq!(report.g_bar_ub, None);
    }

    #[test]
    fn report_serializes_absent_bounds_as_null() {
        let report = gap_report(&snr(0.5, 1.0, 5.0)).unwrap();
        let json = serde_json::to_value(report).unwrap();
        assert!(json["g_bar_ub"].is_null());
        assert!(json["r_pdf_ub"].is_null());
        assert_eq!(json["regime"], serde_json::json!("DirectAdvantaged"));
        let back: GapReport = serde_json::from_value(json).unwrap();
        assert_eq!(back, report);
    }
}
