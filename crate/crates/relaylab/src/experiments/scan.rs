//! One-parameter channel families: scaling both transmit powers together,
//! and sliding the relay along the source–destination segment toward either
//! endpoint.

use crate::channel::{snr_from_geometry, Geometry, Point};
use crate::error::Error;
use crate::experiments::exec;
use crate::gap::{gap_report, GapReport};
use serde::{Deserialize, Serialize};

/// Gap analysis at one power scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerScanPoint {
    /// The factor both transmit powers were multiplied by.
    pub p: f64,
    /// Full gap analysis at that scale.
    pub report: GapReport,
}

impl PowerScanPoint {
    /// Absolute-gap cap at this scale, when the channel is relay-advantaged.
    pub fn g_ub(&self) -> Option<f64> {
        self.report.g_ub
    }

    /// Normalized-gap cap at this scale, when the channel is
    /// relay-advantaged.
    pub fn gbar_ub(&self) -> Option<f64> {
        self.report.g_bar_ub
    }
}

/// Evaluates the gap analysis with both transmit powers of `geometry`
/// multiplied by each factor in turn. The geometry's stored powers act as
/// per-node coefficients, so a geometry with powers (1, k) scanned over P
/// realizes (P, kP).
///
/// SNR ratios are invariant under this scaling; what changes is where on
/// the log curves the channel sits, which is exactly what the high- and
/// low-power limits in [`crate::gap`] describe.
pub fn power_scan(geometry: &Geometry, factors: &[f64]) -> Result<Vec<PowerScanPoint>, Error> {
    let results = exec::map_collect(factors.to_vec(), |p| -> Result<PowerScanPoint, Error> {
        let scaled = geometry.scale_powers(p)?;
        let snr = snr_from_geometry(&scaled)?;
        Ok(PowerScanPoint {
            p,
            report: gap_report(&snr)?,
        })
    });
    results.into_iter().collect()
}

/// Which endpoint of the source–destination segment the relay approaches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProximityKind {
    /// Relay placed `d` away from the source, toward the destination.
    NearSource,
    /// Relay placed `d` away from the destination, toward the source.
    NearDestination,
}

/// Fixed part of a proximity scan: the two endpoints and the radio
/// parameters.
///
/// The default uses source (0, 0), destination (0, 1), unit noises, and
/// deliberately *low* transmit powers P0 = P1 = 0.01. In the low-power
/// regime the gap caps scale polynomially with the relay offset, so a relay
/// at distance 1e-4 visibly closes the gap; at high power the decay is only
/// logarithmic in the offset and the effect would need astronomically small
/// distances to show.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProximityConfig {
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
}

impl Default for ProximityConfig {
    fn default() -> Self {
        ProximityConfig {
            source: Point(0.0, 0.0),
            destination: Point(0.0, 1.0),
            p0: 0.01,
            p1: 0.01,
            n1: 1.0,
            n2: 1.0,
        }
    }
}

/// Gap analysis with the relay at one offset along the segment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProximityPoint {
    /// Distance from the chosen endpoint.
    pub d: f64,
    /// Full gap analysis at that relay position.
    pub report: GapReport,
}

impl ProximityPoint {
    /// Absolute-gap cap at this offset, when the channel is
    /// relay-advantaged.
    pub fn g_ub(&self) -> Option<f64> {
        self.report.g_ub
    }

    /// Normalized-gap cap at this offset, when the channel is
    /// relay-advantaged.
    pub fn gbar_ub(&self) -> Option<f64> {
        self.report.g_bar_ub
    }
}

/// [`proximity_scan_with`] using the default low-power configuration.
pub fn proximity_scan(
    kind: ProximityKind,
    distances: &[f64],
) -> Result<Vec<ProximityPoint>, Error> {
    proximity_scan_with(&ProximityConfig::default(), kind, distances)
}

/// Places the relay on the source–destination segment at each distance from
/// the endpoint selected by `kind` and runs the full gap analysis there.
///
/// Distances must lie strictly between 0 and the endpoint separation — the
/// relay stays on the open segment, coinciding with neither node.
pub fn proximity_scan_with(
    config: &ProximityConfig,
    kind: ProximityKind,
    distances: &[f64],
) -> Result<Vec<ProximityPoint>, Error> {
    let span = config.source.distance(&config.destination);
    if !(span > 0.0) {
        return Err(Error::CoincidentNodes {
            pair: "source/destination",
        });
    }
    for &d in distances {
        if !d.is_finite() {
            return Err(Error::NonFinite {
                field: "distances",
                value: d,
            });
        }
        if !(d > 0.0 && d < span) {
            return Err(Error::InvalidRange {
                field: "distances",
                detail: "each distance must lie strictly between 0 and the endpoint separation",
            });
        }
    }
    let ux = (config.destination.x() - config.source.x()) / span;
    let uy = (config.destination.y() - config.source.y()) / span;
    let config = *config;
    let results = exec::map_collect(distances.to_vec(), move |d| -> Result<ProximityPoint, Error> {
        let relay = match kind {
            ProximityKind::NearSource => {
                Point(config.source.x() + d * ux, config.source.y() + d * uy)
            }
            ProximityKind::NearDestination => Point(
                config.destination.x() - d * ux,
                config.destination.y() - d * uy,
            ),
        };
        let geometry = Geometry::new(
            config.source,
            relay,
            config.destination,
            config.p0,
            config.p1,
            config.n1,
            config.n2,
        )?;
        let snr = snr_from_geometry(&geometry)?;
        Ok(ProximityPoint {
            d,
            report: gap_report(&snr)?,
        })
    });
    results.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::Regime;

    fn reference_geometry() -> Geometry {
        Geometry::new(
            Point(0.0, 0.0),
            Point(0.97, 0.0),
            Point(0.0, 1.0),
            1.0,
            0.05,
            1.0,
            1.0,
        )
        .unwrap()
    }

    #[test]
    fn power_scan_keeps_factor_order_and_shrinks_bounds_at_low_power() {
        let points = power_scan(&reference_geometry(), &[1e-6, 1.0, 1e6]).unwrap();
        assert_eq!(points.len(), 3);
        assert_eq!(points[0].p, 1e-6);
        assert_eq!(points[2].p, 1e6);
        for point in &points {
            assert_eq!(point.report.regime, Regime::RelayAdvantaged);
        }
        // Absolute gap cap grows with power; it is tiny in the low-power
        // limit and approaches a constant at high power.
        assert!(points[0].g_ub().unwrap() < 1e-6);
        assert!(points[2].g_ub().unwrap() > 0.01);
        assert!(points[0].g_ub().unwrap() < points[1].g_ub().unwrap());
        assert!(points[1].g_ub().unwrap() < points[2].g_ub().unwrap());
    }

    #[test]
    fn power_scan_rejects_invalid_factors() {
        let geometry = reference_geometry();
        assert!(power_scan(&geometry, &[1.0, -2.0]).is_err());
        assert!(power_scan(&geometry, &[f64::NAN]).is_err());
    }

    #[test]
    fn near_source_relay_positions_lie_on_the_segment() {
        let points = proximity_scan(ProximityKind::NearSource, &[0.1, 0.01]).unwrap();
        assert_eq!(points.len(), 2);
        assert_eq!(points[0].d, 0.1);
        // d = 0.1 puts the relay at exactly (0, 0.1); the scan's report must
        // match a directly constructed geometry there.
        let geometry = Geometry::new(
            Point(0.0, 0.0),
            Point(0.0, 0.1),
            Point(0.0, 1.0),
            0.01,
            0.01,
            1.0,
            1.0,
        )
        .unwrap();
        let expected = gap_report(&snr_from_geometry(&geometry).unwrap()).unwrap();
        assert_eq!(points[0].report, expected);
        // Closer relay decodes more easily: caps shrink monotonically.
        assert!(points[1].gbar_ub().unwrap() < points[0].gbar_ub().unwrap());
        assert!(points[1].g_ub().unwrap() < points[0].g_ub().unwrap());
    }

    #[test]
    fn near_destination_scan_mirrors_the_other_endpoint() {
        let points = proximity_scan(ProximityKind::NearDestination, &[0.1]).unwrap();
        // Relay at (0, 0.9): still nearer the source than the destination
        // is, so the channel stays relay-advantaged with finite bounds.
        assert_eq!(points[0].report.regime, Regime::RelayAdvantaged);
        assert!(points[0].gbar_ub().unwrap() > 0.0);
    }

    #[test]
    fn proximity_scan_rejects_off_segment_distances() {
        for bad in [0.0, -0.1, 1.0, 1.5] {
            let err = proximity_scan(ProximityKind::NearSource, &[bad]).unwrap_err();
            assert!(
                matches!(err, Error::InvalidRange { field: "distances", .. }),
                "distance {bad} produced {err:?}"
            );
        }
        assert!(matches!(
            proximity_scan(ProximityKind::NearSource, &[f64::INFINITY]),
            Err(Error::NonFinite { .. })
        ));
    }

    #[test]
    fn custom_config_scan_follows_a_tilted_segment() {
        let config = ProximityConfig {
            source: Point(1.0, 1.0),
            destination: Point(4.0, 5.0),
            p0: 0.01,
            p1: 0.01,
            n1: 1.0,
            n2: 1.0,
        };
        // Separation is 5, so a relay 1 from the source lands at (1.6, 1.8).
        let points = proximity_scan_with(&config, ProximityKind::NearSource, &[1.0]).unwrap();
        let geometry = Geometry::new(
            config.source,
            Point(1.6, 1.8),
            config.destination,
            0.01,
            0.01,
            1.0,
            1.0,
        )
        .unwrap();
        let expected = gap_report(&snr_from_geometry(&geometry).unwrap()).unwrap();
        assert_eq!(points[0].report, expected);
        assert_eq!(points[0].report.regime, Regime::RelayAdvantaged);
    }
}
