//! Scalar root finding: geometric-grid bracketing, bisection, Newton polish.

use crate::error::{Error, Result};

const BISECT_REL_TOL: f64 = 1e-6;
const NEWTON_REL_TOL: f64 = 1e-12;
const NEWTON_MAX_ITER: usize = 50;
const BISECT_MAX_ITER: usize = 200;

/// A sign change of `f` on `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootResult {
    pub root: f64,
    pub residual: f64,
    /// Number of sign changes seen on the bracketing grid.
    pub sign_changes: usize,
}

/// Scans `points` geometrically spaced nodes in `[lo, hi]` (both positive) for sign changes.
pub fn bracket_geometric<F>(f: &F, lo: f64, hi: f64, points: usize) -> Result<Vec<Bracket>>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(lo > 0.0 && hi > lo && points >= 2) {
        return Err(Error::Domain(format!(
            "bad geometric grid [{lo}, {hi}] x {points}"
        )));
    }
    let ratio = (hi / lo).powf(1.0 / (points - 1) as f64);
    let mut brackets = Vec::new();
    let mut x_prev = lo;
    let mut f_prev = f(lo)?;
    for i in 1..points {
        let x = if i == points - 1 {
            hi
        } else {
            lo * ratio.powi(i as i32)
        };
        let fx = f(x)?;
        if !fx.is_finite() || !f_prev.is_finite() {
            return Err(Error::NonFinite(format!("residual at {x}")));
        }
        if f_prev == 0.0 {
            brackets.push(Bracket {
                lo: x_prev,
                hi: x_prev,
                f_lo: 0.0,
                f_hi: 0.0,
            });
        } else if f_prev.signum() != fx.signum() && fx != 0.0 {
            brackets.push(Bracket {
                lo: x_prev,
                hi: x,
                f_lo: f_prev,
                f_hi: fx,
            });
        }
        x_prev = x;
        f_prev = fx;
    }
    Ok(brackets)
}

/// Bisection down to a relative width of `1e-6`, then Newton with a central-difference
/// derivative to `1e-12`. Newton steps leaving the bracket fall back to bisection.
pub fn solve_bracketed<F>(f: &F, bracket: Bracket) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if bracket.f_lo == 0.0 {
        return Ok(bracket.lo);
    }
    let (mut lo, mut hi, mut f_lo) = (bracket.lo, bracket.hi, bracket.f_lo);
    let mut iterations = 0;
    while hi - lo > BISECT_REL_TOL * 0.5 * (lo.abs() + hi.abs()) {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == f_lo.signum() {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
        iterations += 1;
        if iterations > BISECT_MAX_ITER {
            break;
        }
    }

    let mut x = 0.5 * (lo + hi);
    for _ in 0..NEWTON_MAX_ITER {
        let fx = f(x)?;
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == f_lo.signum() {
            lo = x;
            f_lo = fx;
        } else {
            hi = x;
        }
        let h = 1e-6 * x.abs().max(f64::MIN_POSITIVE);
        let derivative = (f(x + h)? - f(x - h)?) / (2.0 * h);
        let step = fx / derivative;
        let next = x - step;
        if !next.is_finite() || next <= lo || next >= hi {
            return finish_bisection(f, lo, hi, f_lo);
        }
        x = next;
        if step.abs() <= NEWTON_REL_TOL * x.abs() {
            return Ok(x);
        }
    }
    finish_bisection(f, lo, hi, f_lo)
}

fn finish_bisection<F>(f: &F, mut lo: f64, mut hi: f64, mut f_lo: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    for _ in 0..BISECT_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= NEWTON_REL_TOL * mid.abs() {
            return Ok(mid);
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == f_lo.signum() {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Finds the first positive root of `f` on a geometric grid over `[lo, hi]`.
pub fn find_positive_root<F>(f: F, lo: f64, hi: f64, points: usize) -> Result<RootResult>
where
    F: Fn(f64) -> Result<f64>,
{
    let brackets = bracket_geometric(&f, lo, hi, points)?;
    let first = *brackets.first().ok_or(Error::NoRoot { lo, hi })?;
    let root = solve_bracketed(&f, first)?;
    Ok(RootResult {
        root,
        residual: f(root)?,
        sign_changes: brackets.len(),
    })
}
