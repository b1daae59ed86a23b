//! Channel parameterizations for the three-node relay network.
//!
//! A channel is fully described either by the three link SNRs directly
//! ([`SnrTriple`]) or by node positions plus transmit powers and noise levels
//! ([`Geometry`]), which map to SNRs through the inverse-distance path-loss
//! model
//!
//! ```text
//! λij = Pi / (dij² · Nj)
//! ```
//!
//! with channel gain `h = 1/d` (the path-loss exponent is fixed at 2; callers
//! wanting "relay at the source" limits pass a small positive distance, never
//! zero). [`classify_regime`] splits channels by the comparison λ01 vs λ02,
//! which decides whether relaying can beat direct transmission at all.

use crate::error::Error;
use serde::{Deserialize, Serialize};

/// Relative tolerance used by [`classify_regime`] callers that have no reason
/// to pick their own: two SNRs within one part in 10¹² count as equal.
pub const DEFAULT_REGIME_TOL: f64 = 1e-12;

/// A point in the unitless 2-D plane. Serializes as a `[x, y]` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point(pub f64, pub f64);

impl Point {
    pub fn x(&self) -> f64 {
        self.0
    }

    pub fn y(&self) -> f64 {
        self.1
    }

    /// Euclidean distance to `other`.
    pub fn distance(&self, other: &Point) -> f64 {
        (self.0 - other.0).hypot(self.1 - other.1)
    }
}

fn check_positive(field: &'static str, value: f64) -> Result<(), Error> {
    if !value.is_finite() {
        return Err(Error::NonFinite { field, value });
    }
    if value <= 0.0 {
        return Err(Error::NonPositive { field, value });
    }
    Ok(())
}

/// The three link SNRs (λ01 source→relay, λ02 source→destination,
/// λ12 relay→destination) that fully parameterize every rate computation.
///
/// All components are strictly positive and finite by construction, so
/// downstream operations never have to re-validate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSnrTriple")]
pub struct SnrTriple {
    lambda01: f64,
    lambda02: f64,
    lambda12: f64,
}

#[derive(Deserialize)]
struct RawSnrTriple {
    lambda01: f64,
    lambda02: f64,
    lambda12: f64,
}

impl TryFrom<RawSnrTriple> for SnrTriple {
    type Error = Error;

    fn try_from(raw: RawSnrTriple) -> Result<Self, Error> {
        SnrTriple::new(raw.lambda01, raw.lambda02, raw.lambda12)
    }
}

impl SnrTriple {
    /// Builds a triple, rejecting non-positive or non-finite components.
    pub fn new(lambda01: f64, lambda02: f64, lambda12: f64) -> Result<Self, Error> {
        check_positive("lambda01", lambda01)?;
        check_positive("lambda02", lambda02)?;
        check_positive("lambda12", lambda12)?;
        Ok(Self {
            lambda01,
            lambda02,
            lambda12,
        })
    }

    /// SNR of the source→relay link.
    pub fn lambda01(&self) -> f64 {
        self.lambda01
    }

    /// SNR of the source→destination link.
    pub fn lambda02(&self) -> f64 {
        self.lambda02
    }

    /// SNR of the relay→destination link.
    pub fn lambda12(&self) -> f64 {
        self.lambda12
    }
}

/// Node coordinates, transmit powers, and noise levels; maps to an
/// [`SnrTriple`] via [`snr_from_geometry`].
///
/// Invariants enforced at construction: all coordinates finite, all pairwise
/// link distances strictly positive, powers `p0`, `p1` and noises `n1`, `n2`
/// strictly positive and finite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawGeometry")]
pub struct Geometry {
    source: Point,
    relay: Point,
    destination: Point,
    p0: f64,
    p1: f64,
    n1: f64,
    n2: f64,
}

#[derive(Deserialize)]
struct RawGeometry {
    source: Point,
    relay: Point,
    destination: Point,
    p0: f64,
    p1: f64,
    n1: f64,
    n2: f64,
}

impl TryFrom<RawGeometry> for Geometry {
    type Error = Error;

    fn try_from(raw: RawGeometry) -> Result<Self, Error> {
        Geometry::new(
            raw.source,
            raw.relay,
            raw.destination,
            raw.p0,
            raw.p1,
            raw.n1,
            raw.n2,
        )
    }
}

impl Geometry {
    /// Builds a geometry, rejecting coincident nodes and non-positive or
    /// non-finite powers, noises, or coordinates.
    pub fn new(
        source: Point,
        relay: Point,
        destination: Point,
        p0: f64,
        p1: f64,
        n1: f64,
        n2: f64,
    ) -> Result<Self, Error> {
        for (field, p) in [
            ("source", &source),
            ("relay", &relay),
            ("destination", &destination),
        ] {
            for value in [p.0, p.1] {
                if !value.is_finite() {
                    return Err(Error::NonFinite { field, value });
                }
            }
        }
        check_positive("p0", p0)?;
        check_positive("p1", p1)?;
        check_positive("n1", n1)?;
        check_positive("n2", n2)?;
        for (pair, a, b) in [
            ("source/relay", &source, &relay),
            ("source/destination", &source, &destination),
            ("relay/destination", &relay, &destination),
        ] {
            if a.distance(b) <= 0.0 {
                return Err(Error::CoincidentNodes { pair });
            }
        }
        Ok(Self {
            source,
            relay,
            destination,
            p0,
            p1,
            n1,
            n2,
        })
    }

    pub fn source(&self) -> Point {
        self.source
    }

    pub fn relay(&self) -> Point {
        self.relay
    }

    pub fn destination(&self) -> Point {
        self.destination
    }

    pub fn p0(&self) -> f64 {
        self.p0
    }

    pub fn p1(&self) -> f64 {
        self.p1
    }

    pub fn n1(&self) -> f64 {
        self.n1
    }

    pub fn n2(&self) -> f64 {
        self.n2
    }

    /// Source→relay distance.
    pub fn d01(&self) -> f64 {
        self.source.distance(&self.relay)
    }

    /// Source→destination distance.
    pub fn d02(&self) -> f64 {
        self.source.distance(&self.destination)
    }

    /// Relay→destination distance.
    pub fn d12(&self) -> f64 {
        self.relay.distance(&self.destination)
    }

    /// Same nodes and noises with the relay moved to `relay`.
    pub fn with_relay(&self, relay: Point) -> Result<Self, Error> {
        Self::new(
            self.source,
            relay,
            self.destination,
            self.p0,
            self.p1,
            self.n1,
            self.n2,
        )
    }

    /// Same layout with both transmit powers multiplied by `factor`; this is
    /// how power scans sweep the common scale P while the geometry's own
    /// `p0`, `p1` act as the fixed per-node coefficients.
    pub fn scale_powers(&self, factor: f64) -> Result<Self, Error> {
        Self::new(
            self.source,
            self.relay,
            self.destination,
            self.p0 * factor,
            self.p1 * factor,
            self.n1,
            self.n2,
        )
    }
}

/// Which of λ01 and λ02 dominates; decides whether the relay can help.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// λ01 > λ02: relaying strictly beats direct transmission.
    RelayAdvantaged,
    /// λ01 = λ02 within tolerance: relaying ties direct transmission.
    Equal,
    /// λ01 < λ02: the best strategy is direct transmission.
    DirectAdvantaged,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Regime::RelayAdvantaged => "RelayAdvantaged",
            Regime::Equal => "Equal",
            Regime::DirectAdvantaged => "DirectAdvantaged",
        };
        f.write_str(name)
    }
}

/// Converts a geometry to link SNRs with λij = Pi/(dij²·Nj).
///
/// Errors only if a ratio overflows the finite range (e.g. a huge power over
/// a tiny squared distance); the offending component is named.
pub fn snr_from_geometry(g: &Geometry) -> Result<SnrTriple, Error> {
    let d01 = g.d01();
    let d02 = g.d02();
    let d12 = g.d12();
    SnrTriple::new(
        g.p0() / (d01 * d01 * g.n1()),
        g.p0() / (d02 * d02 * g.n2()),
        g.p1() / (d12 * d12 * g.n2()),
    )
}

/// Classifies λ01 vs λ02 with a relative equality band:
/// `Equal` when |λ01 − λ02| ≤ tol·max(λ01, λ02), strict comparison otherwise.
///
/// `tol` must be nonnegative; [`DEFAULT_REGIME_TOL`] is the conventional
/// choice.
pub fn classify_regime(s: &SnrTriple, tol: f64) -> Regime {
    debug_assert!(tol >= 0.0, "regime tolerance must be nonnegative");
    let (a, b) = (s.lambda01(), s.lambda02());
    if (a - b).abs() <= tol * a.max(b) {
        Regime::Equal
    } else if a > b {
        Regime::RelayAdvantaged
    } else {
        Regime::DirectAdvantaged
    }
}
