//! Brute-force reference solvers used to cross-check the production ones.
//!
//! Every function here answers the same question as its counterpart in
//! [`crate::rate`] but through exhaustive search: dense parameter grids,
//! bisection of term crossings, and local golden-section polish. They share
//! only the objective transcription with the production code — none of the
//! closed forms, none of the solver's bracketing logic — so agreement between
//! the two is meaningful evidence, not circularity. They are deliberately
//! slow (milliseconds per channel instead of microseconds) and exist for the
//! verification suite and tests, not for bulk experiments.

use crate::channel::SnrTriple;
use crate::error::Error;
use crate::gap::log_variables;
use crate::rate::{cdf_objective, pdf_objective};

const INV_PHI: f64 = 0.6180339887498949;

/// Golden-section maximization on [lo, hi], returning the best probe seen
/// (position, value). Interval shrinks to width `tol`.
fn golden<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
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

/// Max over a uniform grid of `steps`+1 points on [0, 1], then bisection of
/// the sign change of `diff` inside the argmax's neighbor cells (the min of
/// two affine terms peaks where they cross, if they cross).
fn grid_plus_crossing<V, D>(steps: usize, value: V, diff: D) -> f64
where
    V: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let mut best = f64::NEG_INFINITY;
    let mut best_i = 0usize;
    for i in 0..=steps {
        let a = i as f64 / steps as f64;
        let v = value(a);
        if v > best {
            best = v;
            best_i = i;
        }
    }
    let mut lo = best_i.saturating_sub(1) as f64 / steps as f64;
    let mut hi = (best_i + 1).min(steps) as f64 / steps as f64;
    if diff(lo) * diff(hi) < 0.0 {
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if diff(lo) * diff(mid) <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let v = value(0.5 * (lo + hi));
        if v > best {
            best = v;
        }
    }
    best
}

/// Endpoint values of both objective terms at α = 0 and α = 1 for fixed β,
/// read straight off the objective transcription.
fn affine_endpoints(s: &SnrTriple, beta: f64) -> (f64, f64, f64, f64) {
    let at0 = pdf_objective(s, 0.0, beta).expect("0 and beta are in range");
    let at1 = pdf_objective(s, 1.0, beta).expect("1 and beta are in range");
    (at0.term_relay, at1.term_relay, at0.term_dest, at1.term_dest)
}

/// Complete-decode-forward rate by brute force: a 10⁶-step α grid over the
/// β = 1 objective plus bisection of the term crossing. Cross-checks the
/// closed form in [`crate::rate::solve_cdf`] without sharing any of it.
pub fn cdf_rate_oracle(s: &SnrTriple) -> f64 {
    let at0 = cdf_objective(s, 0.0).expect("alpha 0 is in range");
    let at1 = cdf_objective(s, 1.0).expect("alpha 1 is in range");
    let (r0, r1, d0, d1) = (at0.term_relay, at1.term_relay, at0.term_dest, at1.term_dest);
    grid_plus_crossing(
        1_000_000,
        |a| (r0 + (r1 - r0) * a).min(d0 + (d1 - d0) * a),
        |a| (r0 + (r1 - r0) * a) - (d0 + (d1 - d0) * a),
    )
}

/// Best α for fixed β via a 41-point grid plus golden polish of the argmax
/// cell — accurate to ~1e-10 because the α-profile is concave piecewise
/// affine.
fn inner_value_oracle(s: &SnrTriple, beta: f64) -> f64 {
    let (r0, r1, d0, d1) = affine_endpoints(s, beta);
    let eval = |a: f64| (r0 + (r1 - r0) * a).min(d0 + (d1 - d0) * a);
    let mut best = f64::NEG_INFINITY;
    let mut best_j = 0usize;
    for j in 0..=40 {
        let a = j as f64 / 40.0;
        let v = eval(a);
        if v > best {
            best = v;
            best_j = j;
        }
    }
    let lo = best_j.saturating_sub(1) as f64 / 40.0;
    let hi = (best_j + 1).min(40) as f64 / 40.0;
    golden(eval, lo, hi, 1e-10).1.max(best)
}

/// Partial-decode-forward rate by brute force, sharing nothing with the
/// production β search:
///
/// 1. a raw 1001 × 1001 (β × α) grid, with a golden polish of every β
///    column's best α cell;
/// 2. seed brackets at both β endpoints plus the best interior columns
///    (deduplicated to non-adjacent cells);
/// 3. golden refinement over β of each seed bracket;
/// 4. a final 201-point local β scan (plus polish) around the winner.
///
/// The layered redundancy is the point: the β-profile is not assumed
/// unimodal anywhere.
pub fn pdf_rate_oracle(s: &SnrTriple) -> f64 {
    const N: usize = 1000;
    let mut column_vals = vec![0.0f64; N + 1];
    let mut best = f64::NEG_INFINITY;
    for (i, slot) in column_vals.iter_mut().enumerate() {
        let beta = i as f64 / N as f64;
        let (r0, r1, d0, d1) = affine_endpoints(s, beta);
        let eval = |a: f64| (r0 + (r1 - r0) * a).min(d0 + (d1 - d0) * a);
        let mut col_best = f64::NEG_INFINITY;
        let mut col_j = 0usize;
        for j in 0..=N {
            let a = j as f64 / N as f64;
            let v = eval(a);
            if v > col_best {
                col_best = v;
                col_j = j;
            }
        }
        let lo = col_j.saturating_sub(1) as f64 / N as f64;
        let hi = (col_j + 1).min(N) as f64 / N as f64;
        let polished = golden(eval, lo, hi, 1e-10).1.max(col_best);
        *slot = polished;
        if polished > best {
            best = polished;
        }
    }

    let mut order: Vec<usize> = (0..=N).collect();
    order.sort_by(|&i, &j| {
        column_vals[j]
            .partial_cmp(&column_vals[i])
            .expect("objective values are finite")
    });
    let mut seeds: Vec<usize> = vec![0, N];
    for &i in &order {
        if seeds.len() >= 8 {
            break;
        }
        if seeds.iter().all(|&j| i.abs_diff(j) >= 2) {
            seeds.push(i);
        }
    }

    let mut winner = seeds[0];
    let mut winner_val = f64::NEG_INFINITY;
    for &i in &seeds {
        let lo = i.saturating_sub(1) as f64 / N as f64;
        let hi = (i + 1).min(N) as f64 / N as f64;
        let (_, v) = golden(|beta| inner_value_oracle(s, beta), lo, hi, 1e-9);
        if v > winner_val {
            winner_val = v;
            winner = i;
        }
        if v > best {
            best = v;
        }
    }

    let lo = winner.saturating_sub(1) as f64 / N as f64;
    let hi = (winner + 1).min(N) as f64 / N as f64;
    let mut scan_best = f64::NEG_INFINITY;
    let mut scan_k = 0usize;
    for k in 0..=200 {
        let beta = lo + (hi - lo) * k as f64 / 200.0;
        let v = inner_value_oracle(s, beta);
        if v > scan_best {
            scan_best = v;
            scan_k = k;
        }
    }
    if scan_best > best {
        best = scan_best;
    }
    let sub_lo = lo + (hi - lo) * scan_k.saturating_sub(1) as f64 / 200.0;
    let sub_hi = lo + (hi - lo) * (scan_k + 1).min(200) as f64 / 200.0;
    let (_, polished) = golden(|beta| inner_value_oracle(s, beta), sub_lo, sub_hi, 1e-9);
    best.max(polished)
}

/// Upper bound on the partial-decode-forward rate by brute force: the two
/// decoupled affine terms `u/2 + α(w−u)/2` and `q/2 + α(u−q)/2` maximized
/// over a 10⁶-step α grid plus crossing bisection. Requires λ01 > λ02, like
/// the closed form it checks.
pub fn pdf_ub_rate_oracle(s: &SnrTriple) -> Result<f64, Error> {
    if !(s.lambda01() > s.lambda02()) {
        return Err(Error::NotRelayAdvantaged {
            lambda01: s.lambda01(),
            lambda02: s.lambda02(),
        });
    }
    let lv = log_variables(s);
    let (w, u, q) = (lv.w, lv.u, lv.q);
    let t1 = move |a: f64| 0.5 * u + 0.5 * a * (w - u);
    let t2 = move |a: f64| 0.5 * q + 0.5 * a * (u - q);
    Ok(grid_plus_crossing(
        1_000_000,
        |a| t1(a).min(t2(a)),
        |a| t1(a) - t2(a),
    ))
}
