//! Error type shared across the toolkit.
//!
//! Domain violations are rejected at construction (`SnrTriple::new`,
//! `Geometry::new`) so the rate and gap operations only ever see valid
//! channels; the remaining variants cover operations whose closed forms are
//! defined on a strict subset of valid channels (most require λ01 > λ02).

use thiserror::Error;

/// Everything that can go wrong when building channels or evaluating bounds.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter that must be strictly positive was zero or negative.
    #[error("{field} must be strictly positive, got {value}")]
    NonPositive { field: &'static str, value: f64 },

    /// A parameter was NaN or infinite.
    #[error("{field} must be finite, got {value}")]
    NonFinite { field: &'static str, value: f64 },

    /// Two nodes of a geometry occupy the same point, so a link distance
    /// vanishes and its SNR is undefined.
    #[error("nodes {pair} coincide; every link distance must be strictly positive")]
    CoincidentNodes { pair: &'static str },

    /// A listen fraction outside [0, 1].
    #[error("alpha must lie in [0, 1], got {value}")]
    AlphaOutOfRange { value: f64 },

    /// A coherent-power fraction outside [0, 1].
    #[error("beta must lie in [0, 1], got {value}")]
    BetaOutOfRange { value: f64 },

    /// A closed form that only holds when the source–relay link beats the
    /// direct link was invoked with λ01 ≤ λ02.
    #[error("requires lambda01 > lambda02, got lambda01 = {lambda01}, lambda02 = {lambda02}")]
    NotRelayAdvantaged { lambda01: f64, lambda02: f64 },

    /// The high-SNR limit needs the scale-free ratio C1 = λ01/λ02 above 1;
    /// otherwise its log term is not positive and the limit is undefined.
    #[error("high-SNR limit requires C1 = lambda01/lambda02 > 1, got C1 = {c1}")]
    InvalidShapeRatio { c1: f64 },

    /// The low-SNR limit needs the relay strictly closer to the source than
    /// the destination is.
    #[error("low-SNR limit requires d01 < d02, got d01 = {d01}, d02 = {d02}")]
    RelayFartherThanDestination { d01: f64, d02: f64 },

    /// The normalized gap divides by R_CDF; values below 10⁻¹⁵ bits (possible
    /// only for absurdly small λ01) are rejected instead of amplifying noise.
    #[error("R_CDF = {r_cdf} bits is below the 1e-15 guard; normalized gap undefined")]
    VanishingCdfRate { r_cdf: f64 },

    /// The diagnostic h(s) is defined for s > 1 only.
    #[error("h(s) requires s > 1, got s = {value}")]
    HArgumentOutOfRange { value: f64 },

    /// A sweep or scan specification with an empty or inverted range.
    #[error("{field} is not a valid range: {detail}")]
    InvalidRange {
        field: &'static str,
        detail: &'static str,
    },
}
