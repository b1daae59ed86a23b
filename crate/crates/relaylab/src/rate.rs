//! Achievable-rate objectives and solvers for the half-duplex relay channel.
//!
//! The relay listens for a fraction α of the time and transmits for the rest;
//! the source spends a fraction β of its power transmitting coherently with
//! the relay. Partial-decode-forward achieves, in bits per channel use,
//!
//! ```text
//! R_PDF = max_{0 ≤ α, β ≤ 1} min {
//!     (α/2)·log₂(1+λ01) + ((1−α)/2)·log₂(1+(1−β)λ02),          relay decoding
//!     (α/2)·log₂(1+λ02) + ((1−α)/2)·log₂(1+λ02+λ12+2√(βλ02λ12)) destination decoding
//! }
//! ```
//!
//! Complete-decode-forward is the β = 1 slice, direct transmission the
//! α = β = 0 corner. For fixed β both min-arguments are affine in α, so the
//! inner max-min is solved exactly (term crossing or best endpoint); the
//! outer β search uses a dense grid plus golden-section refinement and does
//! not assume the β-profile is unimodal. All logarithms in this crate are
//! base 2.

use crate::channel::SnrTriple;
use crate::error::Error;
use serde::{Deserialize, Serialize};

/// log₂(1 + x) computed via `ln_1p` for full precision at tiny x.
#[inline]
pub(crate) fn log2p1(x: f64) -> f64 {
    x.ln_1p() / std::f64::consts::LN_2
}

/// Two objective values agreeing within this relative tolerance are treated
/// as a tie, i.e. both constraints bind.
pub(crate) const BINDING_TOL: f64 = 1e-9;

const INV_PHI: f64 = 0.6180339887498949;

/// Which min-argument attains the achievable rate at the reported optimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Binding {
    /// The relay-decoding constraint is the smaller term.
    RelayDecodeTerm,
    /// The destination-decoding constraint is the smaller term.
    DestinationTerm,
    /// Both terms agree at the optimum (within [`the solver
    /// tolerance`](crate::rate::RateSolution#binding-tolerance)).
    Both,
}

impl std::fmt::Display for Binding {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Binding::RelayDecodeTerm => "RelayDecodeTerm",
            Binding::DestinationTerm => "DestinationTerm",
            Binding::Both => "Both",
        };
        f.write_str(name)
    }
}

/// An achievable rate together with the optimizing (α, β) and the binding
/// constraint.
///
/// # Binding tolerance
///
/// `binding` is [`Binding::Both`] when the two objective terms agree within
/// `1e-9·(1 + max(|terms|))` at the reported point. The *rate* is the
/// solver's contract; when several (α, β) attain it, the smallest optimal α
/// found is reported and the argmax should not be treated as unique.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateSolution {
    /// Achievable rate in bits per channel use.
    pub rate: f64,
    /// Relay listen fraction α ∈ [0, 1].
    pub alpha: f64,
    /// Source coherent-power fraction β ∈ [0, 1]; fixed 1 for
    /// complete-decode-forward, 0 (with α = 0) for direct transmission.
    pub beta: f64,
    /// Which constraint attains the min at (α, β).
    pub binding: Binding,
}

/// The two min-arguments of the rate objective, both in bits per channel use.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObjectivePair {
    /// Relay-decoding constraint value.
    pub term_relay: f64,
    /// Destination-decoding constraint value.
    pub term_dest: f64,
}

impl ObjectivePair {
    /// The achievable rate at this operating point: the smaller term.
    pub fn achievable_rate(&self) -> f64 {
        self.term_relay.min(self.term_dest)
    }
}

fn check_alpha(alpha: f64) -> Result<(), Error> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::AlphaOutOfRange { value: alpha });
    }
    Ok(())
}

fn check_beta(beta: f64) -> Result<(), Error> {
    if !(0.0..=1.0).contains(&beta) {
        return Err(Error::BetaOutOfRange { value: beta });
    }
    Ok(())
}

/// Evaluates both partial-decode-forward constraint terms at (α, β), exactly
/// as displayed in the module documentation.
pub fn pdf_objective(s: &SnrTriple, alpha: f64, beta: f64) -> Result<ObjectivePair, Error> {
    check_alpha(alpha)?;
    check_beta(beta)?;
    let (l01, l02, l12) = (s.lambda01(), s.lambda02(), s.lambda12());
    let term_relay =
        (alpha / 2.0) * log2p1(l01) + ((1.0 - alpha) / 2.0) * log2p1((1.0 - beta) * l02);
    let term_dest = (alpha / 2.0) * log2p1(l02)
        + ((1.0 - alpha) / 2.0) * log2p1(l02 + l12 + 2.0 * (beta * l02 * l12).sqrt());
    Ok(ObjectivePair {
        term_relay,
        term_dest,
    })
}

/// Evaluates the complete-decode-forward constraint terms at α. Identical,
/// term by term, to [`pdf_objective`] with β = 1: the relay term drops to
/// (α/2)·log₂(1+λ01) and the destination term gains the fully coherent
/// (√λ02 + √λ12)² combining gain.
pub fn cdf_objective(s: &SnrTriple, alpha: f64) -> Result<ObjectivePair, Error> {
    pdf_objective(s, alpha, 1.0)
}

/// Rate of plain direct transmission, (1/2)·log₂(1+λ02): the α = β = 0
/// corner of the objective.
pub fn direct_rate(s: &SnrTriple) -> f64 {
    0.5 * log2p1(s.lambda02())
}

/// Maximum over α ∈ [0, 1] of the min of two affine functions, each given by
/// its endpoint values (`x0` at α = 0, `x1` at α = 1).
///
/// The min of two affines is concave piecewise-affine, so the max sits at an
/// endpoint or at the crossing. Candidates are scanned in ascending α with a
/// strict improvement rule, so ties report the smallest optimal α.
fn maxmin_affine(r0: f64, r1: f64, d0: f64, d1: f64) -> (f64, f64) {
    let mut best_a = 0.0;
    let mut best_v = r0.min(d0);
    let df0 = r0 - d0;
    let df1 = r1 - d1;
    if df0 * df1 < 0.0 {
        let ax = df0 / (df0 - df1);
        if 0.0 < ax && ax < 1.0 {
            let rv = r0 + ax * (r1 - r0);
            let dv = d0 + ax * (d1 - d0);
            let v = rv.min(dv);
            if v > best_v {
                best_a = ax;
                best_v = v;
            }
        }
    }
    let v1 = r1.min(d1);
    if v1 > best_v {
        best_a = 1.0;
        best_v = v1;
    }
    (best_a, best_v)
}

fn binding_at(r: f64, d: f64) -> Binding {
    if (r - d).abs() <= BINDING_TOL * (1.0 + r.abs().max(d.abs())) {
        Binding::Both
    } else if r < d {
        Binding::RelayDecodeTerm
    } else {
        Binding::DestinationTerm
    }
}

/// Endpoint values (α = 0 and α = 1) of both terms for a fixed β.
fn pdf_endpoints(s: &SnrTriple, beta: f64) -> (f64, f64, f64, f64) {
    let (l01, l02, l12) = (s.lambda01(), s.lambda02(), s.lambda12());
    let r0 = 0.5 * log2p1((1.0 - beta) * l02);
    let r1 = 0.5 * log2p1(l01);
    let d0 = 0.5 * log2p1(l02 + l12 + 2.0 * (beta * l02 * l12).sqrt());
    let d1 = 0.5 * log2p1(l02);
    (r0, r1, d0, d1)
}

fn inner_solve(s: &SnrTriple, beta: f64) -> (f64, f64, Binding) {
    let (r0, r1, d0, d1) = pdf_endpoints(s, beta);
    let (alpha, value) = maxmin_affine(r0, r1, d0, d1);
    let r = r0 + alpha * (r1 - r0);
    let d = d0 + alpha * (d1 - d0);
    (alpha, value, binding_at(r, d))
}

fn inner_value(s: &SnrTriple, beta: f64) -> f64 {
    let (r0, r1, d0, d1) = pdf_endpoints(s, beta);
    maxmin_affine(r0, r1, d0, d1).1
}

/// Golden-section maximization of `f` on [lo, hi] down to interval width
/// `tol`, returning the best probe seen (the caller merges endpoints itself).
fn golden_max<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    let mut a = lo;
    let mut b = hi;
    let mut c = b - (b - a) * INV_PHI;
    let mut d = a + (b - a) * INV_PHI;
    let mut fc = f(c);
    let mut fd = f(d);
    let (mut best_x, mut best_v) = if fc >= fd { (c, fc) } else { (d, fd) };
    while b - a > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - (b - a) * INV_PHI;
            fc = f(c);
            if fc > best_v {
                best_v = fc;
                best_x = c;
            }
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + (b - a) * INV_PHI;
            fd = f(d);
            if fd > best_v {
                best_v = fd;
                best_x = d;
            }
        }
    }
    (best_x, best_v)
}

/// Solves the complete-decode-forward max-min over α (β fixed at 1).
///
/// For λ01 ≥ λ02 the increasing relay term and decreasing destination term
/// cross inside [0, 1] at
///
/// ```text
/// α* = q / (q + w − u),   R_CDF = (1/2)·q·w / (q + w − u)
/// ```
///
/// with w = log₂(1+λ01), u = log₂(1+λ02), q = log₂(1+(√λ02+√λ12)²); both
/// constraints bind there. For λ01 < λ02 the relay term stays below the
/// destination term on all of [0, 1] and the max sits at α = 1 with rate
/// (1/2)·log₂(1+λ01).
pub fn solve_cdf(s: &SnrTriple) -> RateSolution {
    let w = log2p1(s.lambda01());
    let u = log2p1(s.lambda02());
    let root = s.lambda02().sqrt() + s.lambda12().sqrt();
    let q = log2p1(root * root);
    if s.lambda01() >= s.lambda02() {
        let alpha = q / (q + w - u);
        let rate = 0.5 * q * w / (q + w - u);
        RateSolution {
            rate,
            alpha,
            beta: 1.0,
            binding: Binding::Both,
        }
    } else {
        RateSolution {
            rate: 0.5 * w,
            alpha: 1.0,
            beta: 1.0,
            binding: Binding::RelayDecodeTerm,
        }
    }
}

/// Solves the full partial-decode-forward max-min over (α, β) ∈ [0, 1]².
///
/// The inner α problem is exact for every β (see [`module docs`](self)); the
/// outer β search walks a 1001-point grid and then golden-sections the best
/// non-adjacent brackets to width 1e-10, tracking the best probe seen. The
/// grid-first strategy deliberately avoids assuming the β-profile is
/// unimodal. Ties (e.g. λ01 = λ02, where any α works at β = 0) resolve to
/// the smallest α and β encountered.
///
/// The returned rate is ≥ `solve_cdf(s).rate − 1e-12` (β = 1 is a grid
/// point) and ≥ `direct_rate(s) − 1e-12` (the α = β = 0 corner is a scanned
/// candidate).
pub fn solve_pdf(s: &SnrTriple) -> RateSolution {
    const N: usize = 1001;
    let mut vals = [0.0f64; N];
    let mut best_b = 0.0;
    let mut best_v = -1.0;
    for (i, slot) in vals.iter_mut().enumerate() {
        let beta = i as f64 / 1000.0;
        let v = inner_value(s, beta);
        *slot = v;
        if v > best_v {
            best_b = beta;
            best_v = v;
        }
    }
    let mut order: Vec<usize> = (0..N).collect();
    order.sort_by(|&i, &j| vals[j].partial_cmp(&vals[i]).expect("objective values are finite"));
    let mut seeds: Vec<usize> = Vec::with_capacity(3);
    for &i in &order {
        if seeds.iter().all(|&j| i.abs_diff(j) >= 2) {
            seeds.push(i);
        }
        if seeds.len() == 3 {
            break;
        }
    }
    for &i in &seeds {
        let lo = i.saturating_sub(1) as f64 / 1000.0;
        let hi = (i + 1).min(1000) as f64 / 1000.0;
        let (x, v) = golden_max(|beta| inner_value(s, beta), lo, hi, 1e-10);
        if v > best_v {
            best_v = v;
            best_b = x;
        }
    }
    let (alpha, rate, binding) = inner_solve(s, best_b);
    RateSolution {
        rate,
        alpha,
        beta: best_b,
        binding,
    }
}

/// Solves the partial-decode-forward max-min over α with β held fixed.
/// At β = 1 this reproduces [`solve_cdf`] (within 1e-12); at β = 0 the
/// coherent gain is gone and the destination term uses λ02 + λ12 only.
pub fn solve_pdf_fixed_beta(s: &SnrTriple, beta: f64) -> Result<RateSolution, Error> {
    check_beta(beta)?;
    let (alpha, rate, binding) = inner_solve(s, beta);
    Ok(RateSolution {
        rate,
        alpha,
        beta,
        binding,
    })
}

/// Closed-form upper bound on the partial-decode-forward rate.
///
/// Relaxing the objective — β = 0 in the relay term, β = 1 in the
/// destination term, each taken at its best — decouples the terms into two
/// affines in α that cross at
///
/// ```text
/// α† = (q − u) / (q + w − 2u),
/// R_PDF ≤ (q·w − u²) / (2·(q + w − 2u))
/// ```
///
/// The closed form requires λ01 > λ02 (otherwise `NotRelayAdvantaged`).
/// `beta` in the returned solution is reported as 1.0, the destination
/// term's coherent geometry; the bound itself has no single operating β.
pub fn solve_pdf_ub(s: &SnrTriple) -> Result<RateSolution, Error> {
    if !(s.lambda01() > s.lambda02()) {
        return Err(Error::NotRelayAdvantaged {
            lambda01: s.lambda01(),
            lambda02: s.lambda02(),
        });
    }
    let w = log2p1(s.lambda01());
    let u = log2p1(s.lambda02());
    let root = s.lambda02().sqrt() + s.lambda12().sqrt();
    let q = log2p1(root * root);
    let alpha = (q - u) / (q + w - 2.0 * u);
    let rate = (q * w - u * u) / (2.0 * (q + w - 2.0 * u));
    Ok(RateSolution {
        rate,
        alpha,
        beta: 1.0,
        binding: Binding::Both,
    })
}
