//! Numerics for relaying over a half-duplex AWGN channel: how much a single
//! relay helps, and how little is lost by keeping the relaying simple.
//!
//! A source talks to a destination at SNR λ02, assisted by a relay that
//! hears the source at λ01 and reaches the destination at λ12. The relay
//! cannot transmit and receive at once, so it listens for a fraction α of
//! the time; the source commits a fraction β of its power to transmitting
//! coherently with the relay. Partial-decode-forward (PDF) achieves
//!
//! ```text
//! R_PDF = max_{α,β} min { (α/2)·log₂(1+λ01) + ((1−α)/2)·log₂(1+(1−β)λ02),
//!                         (α/2)·log₂(1+λ02) + ((1−α)/2)·log₂(1+λ02+λ12+2√(βλ02λ12)) }
//! ```
//!
//! and complete-decode-forward (CDF) is the β = 1 slice. The toolkit
//! computes both optima exactly-in-α (the inner problem is a max-min of two
//! affine functions), bounds the gap `G = R_PDF − R_CDF` and its normalized
//! form `Ḡ = G/R_CDF` by closed forms — including the universal ceiling
//! Ḡ ≤ 1/8 — and evaluates the limits of those bounds as the power scale
//! grows or vanishes.
//!
//! # Modules
//!
//! * [`channel`] — SNR triples, node geometries, and the mapping between
//!   them; regime classification.
//! * [`rate`] — the objectives and the PDF/CDF/upper-bound solvers.
//! * [`gap`] — gap caps, the h(s) diagnostic, asymptotic limits, and the
//!   all-in-one [`gap::gap_report`].
//! * [`experiments`] — position sweeps, power/proximity scans, invariant
//!   fuzzing, and the worst-case-gap search; parallel by default via the
//!   `parallel` feature, with sequential twins.
//! * [`oracle`] — slow brute-force reference solvers.
//! * [`verify`] — runnable self-check suites built on all of the above.
//! * [`export`] — CSV, SVG heatmap, and significant-digit formatting.
//! * [`rng`] — the small deterministic PRNG behind every randomized piece.
//!
//! # Example
//!
//! ```
//! use relaylab::{gap_report, SnrTriple};
//!
//! let channel = SnrTriple::new(10.0, 1.0, 10.0)?;
//! let report = gap_report(&channel)?;
//! assert!(report.r_pdf >= report.r_cdf);
//! assert!(report.g_bar <= report.g_bar_ub.unwrap());
//! assert!(report.g_bar_ub.unwrap() <= 0.125);
//! # Ok::<(), relaylab::Error>(())
//! ```
//!
//! # Features
//!
//! * `parallel` (default) — rayon-backed data parallelism for the
//!   experiment layer. Disabling it leaves every API in place and bit-for-
//!   bit identical results, computed on one thread.

pub mod channel;
pub mod error;
pub mod experiments;
pub mod export;
pub mod gap;
pub mod oracle;
pub mod rate;
pub mod rng;
pub mod verify;

pub use channel::{
    classify_regime, snr_from_geometry, Geometry, Point, Regime, SnrTriple, DEFAULT_REGIME_TOL,
};
pub use error::Error;
pub use gap::{
    g_ub, gap_report, gbar_ub, h_of_s, high_snr_limit_g_ub, lemma5_bound, log_variables,
    low_snr_limit_gbar_ub, GapReport, LogVariables, LowSnrLimit,
};
pub use rate::{
    cdf_objective, direct_rate, pdf_objective, solve_cdf, solve_pdf, solve_pdf_fixed_beta,
    solve_pdf_ub, Binding, ObjectivePair, RateSolution,
};
pub use rng::SplitMix64;
