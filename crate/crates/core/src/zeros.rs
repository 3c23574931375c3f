//! Real zeros of real-rooted polynomials on the float backend.

use crate::error::{Error, Result};
use crate::poly::LatticePoly;

pub const ROOT_TOL: f64 = 1e-10;
pub const MIN_GAP: f64 = 1e-8;

fn eval(p: &[f64], x: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

fn derivative(p: &[f64]) -> Vec<f64> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * k as f64)
        .collect()
}

fn bisect(p: &[f64], mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = eval(p, lo);
    for _ in 0..200 {
        if hi - lo <= ROOT_TOL * 1e-3 * (1.0 + lo.abs()) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let fm = eval(p, mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Real roots in `[lo, hi]`, separated by the critical points of `p`.
fn roots_in(p: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    if p.len() <= 1 {
        return Vec::new();
    }
    if p.len() == 2 {
        let (fa, fb) = (eval(p, lo), eval(p, hi));
        return if fa != 0.0 && fb != 0.0 && (fa < 0.0) != (fb < 0.0) {
            vec![(-p[0] / p[1]).clamp(lo, hi)]
        } else if fb == 0.0 {
            vec![hi]
        } else {
            Vec::new()
        };
    }
    let mut knots = vec![lo];
    knots.extend(roots_in(&derivative(p), lo, hi));
    knots.push(hi);
    let mut out = Vec::new();
    for w in knots.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (fa, fb) = (eval(p, a), eval(p, b));
        if fa == 0.0 {
            if out.last() != Some(&a) {
                out.push(a);
            }
        } else if fb != 0.0 && (fa < 0.0) != (fb < 0.0) {
            out.push(bisect(p, a, b));
        }
    }
    if eval(p, hi) == 0.0 && out.last() != Some(&hi) {
        out.push(hi);
    }
    out
}

/// Cauchy bound `1 + max |a_k / a_n|`.
pub fn root_bound(p: &[f64]) -> f64 {
    let lead = p.last().copied().unwrap_or(1.0);
    1.0 + p[..p.len().saturating_sub(1)]
        .iter()
        .map(|c| (c / lead).abs())
        .fold(0.0, f64::max)
}

/// All zeros of `p`, which must be `deg p` simple positive reals.
///
/// Brackets are taken on `[0, R]`; since `p(0) != 0` is required, every
/// bracketed root lies strictly inside `(0, R]` even when it is far below
/// float resolution.
pub fn positive_simple_roots(p: &LatticePoly<f64>) -> Result<Vec<f64>> {
    let cs = p.coeffs();
    let deg = p.degree().unwrap_or(0);
    if deg == 0 {
        return Ok(Vec::new());
    }
    if cs[0] == 0.0 {
        return Err(Error::Invariant("zero is a root".into()));
    }
    let roots = roots_in(cs, 0.0, root_bound(cs));
    if roots.len() != deg {
        return Err(Error::Invariant(format!(
            "found {} roots in (0, R], expected {deg}",
            roots.len()
        )));
    }
    let gap = roots
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min);
    if gap <= MIN_GAP {
        return Err(Error::Invariant(format!(
            "roots closer than {MIN_GAP} (gap {gap})"
        )));
    }
    Ok(roots)
}
