//! Residues of `f(z) dz` at finite points and at infinity.
//!
//! Two independent routes are provided: trapezoidal quadrature on a circle
//! (spectrally accurate for analytic integrands) and an exact algebraic limit
//! for simple and double poles that divides the vanishing factor out
//! structurally.

use std::f64::consts::TAU;

use num_complex::Complex64;

use super::{points_coincide, FactorKind, FactoredMeromorphic, SpherePoint};
use crate::error::{Error, Result};

pub const DEFAULT_CONTOUR_NODES: usize = 64;
pub const MAX_CONTOUR_NODES: usize = 4096;
const MIN_CONTOUR_NODES: usize = 16;
const CONTOUR_REL_TOL: f64 = 1e-12;

/// `(1/2 pi i) \oint f dz` on the circle `|z - p| = radius`, doubling the node
/// count until successive estimates agree.
///
/// Works on any pointwise evaluator, so sums of factored functions can be
/// integrated without representing the sum structurally.
pub fn contour_residue_with<F>(f: F, p: Complex64, radius: f64, nodes: usize) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::Domain(format!(
            "contour radius must be positive, got {radius}"
        )));
    }
    if nodes < MIN_CONTOUR_NODES {
        return Err(Error::Domain(format!(
            "contour needs at least {MIN_CONTOUR_NODES} nodes, got {nodes}"
        )));
    }
    // each node contributes f(z) (z - p) / n, since dz = i (z - p) dtheta
    let sample = |theta: f64| -> Result<(Complex64, f64)> {
        let offset = Complex64::from_polar(radius, theta);
        let v = f(p + offset)? * offset;
        Ok((v, v.norm()))
    };

    let mut n = nodes;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    for j in 0..n {
        let (v, a) = sample(TAU * j as f64 / n as f64)?;
        sum += v;
        abs_sum += a;
    }
    let mut estimate = sum / n as f64;
    loop {
        let refined = 2 * n;
        if refined > MAX_CONTOUR_NODES {
            return Err(Error::NoConvergence {
                nodes: n,
                difference: f64::NAN,
            });
        }
        for j in 0..n {
            let (v, a) = sample(TAU * (2 * j + 1) as f64 / refined as f64)?;
            sum += v;
            abs_sum += a;
        }
        let next = sum / refined as f64;
        let scale = next.norm().max(abs_sum / refined as f64);
        let difference = (next - estimate).norm();
        n = refined;
        if difference <= CONTOUR_REL_TOL * scale {
            return Ok(next);
        }
        if n == MAX_CONTOUR_NODES {
            return Err(Error::NoConvergence {
                nodes: n,
                difference,
            });
        }
        estimate = next;
    }
}

/// Residue of `f dz` at `p` by trapezoidal quadrature.
///
/// `radius = None` uses half the distance from `p` to the nearest other pole.
pub fn residue_contour(
    f: &FactoredMeromorphic,
    p: Complex64,
    radius: Option<f64>,
    nodes: usize,
) -> Result<Complex64> {
    let others: Vec<Complex64> = f
        .finite_poles()
        .into_iter()
        .map(|(q, _)| q)
        .filter(|q| !points_coincide(*q, p))
        .collect();
    let nearest = others
        .iter()
        .map(|q| ((*q - p).norm(), *q))
        .min_by(|a, b| a.0.total_cmp(&b.0));
    let radius = match (radius, nearest) {
        (Some(r), Some((d, q))) if d <= r => {
            return Err(Error::SingularityInsideContour {
                center: p,
                other: q,
                radius: r,
            })
        }
        (Some(r), _) => r,
        (None, Some((d, _))) => 0.5 * d,
        (None, None) => 0.5 * p.norm().max(1.0),
    };
    contour_residue_with(|z| f.eval(z), p, radius, nodes)
}

/// Residue at a simple (`pole_order = 1`) or double (`pole_order = 2`) pole.
///
/// Writes `(z - p)^m f(z) = coefficient * prod(Q_i^e_i)` where `Q_i` is the
/// factor with its root at `p` divided out: for `h = z^k - c` this gives
/// `Q(p) = h'(p) = k p^(k-1)` and `Q'(p)/Q(p) = h''(p) / (2 h'(p)) = (k-1)/(2p)`.
pub fn residue_limit(f: &FactoredMeromorphic, p: Complex64, pole_order: i32) -> Result<Complex64> {
    if !(1..=2).contains(&pole_order) {
        return Err(Error::UnsupportedOrder(pole_order));
    }
    let found = f.order_at(SpherePoint::Finite(p));
    if found != -pole_order {
        return Err(Error::OrderMismatch {
            z: p,
            expected: -pole_order,
            found,
        });
    }
    let mut value = f.coefficient();
    let mut log_derivative = Complex64::new(0.0, 0.0);
    for factor in f.factors() {
        let e = factor.exponent;
        let (q, dq_over_q) = match factor.kind {
            FactorKind::Monomial if factor.vanishes_at(p) => {
                (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
            }
            FactorKind::Monomial => (p, p.inv()),
            FactorKind::Shifted { k, .. } if factor.vanishes_at(p) => {
                let k = k as f64;
                (k * p.powi(k as i32 - 1), (k - 1.0) / (2.0 * p))
            }
            FactorKind::Shifted { k, c } => {
                let pk1 = p.powi(k as i32 - 1);
                let h = pk1 * p - c;
                (h, k as f64 * pk1 / h)
            }
        };
        value *= q.powi(e);
        log_derivative += e as f64 * dq_over_q;
    }
    let result = if pole_order == 1 {
        value
    } else {
        value * log_derivative
    };
    if !(result.re.is_finite() && result.im.is_finite()) {
        return Err(Error::NonFinite(format!("residue limit at {p}")));
    }
    Ok(result)
}

/// Residue at a pole of any order from truncated Taylor series of the factors.
///
/// Each factor's base is expanded in `t = z - p` (with a simple root at `p`
/// divided out), raised to its exponent as a series and multiplied in; the
/// residue is the coefficient of `t^(m-1)`. Coefficients that vanish by
/// symmetry come out exactly zero, unlike quadrature.
pub fn residue_series(f: &FactoredMeromorphic, p: Complex64, pole_order: i32) -> Result<Complex64> {
    if pole_order < 1 {
        return Err(Error::UnsupportedOrder(pole_order));
    }
    let found = f.order_at(SpherePoint::Finite(p));
    if found != -pole_order {
        return Err(Error::OrderMismatch {
            z: p,
            expected: -pole_order,
            found,
        });
    }
    let n = pole_order as usize;
    let mut acc = vec![Complex64::new(0.0, 0.0); n];
    acc[0] = f.coefficient();
    for factor in f.factors() {
        let mut base = match factor.kind {
            FactorKind::Monomial => vec![p, Complex64::new(1.0, 0.0)],
            FactorKind::Shifted { k, c } => {
                // binomial expansion of (p + t)^k - c
                let mut b = Vec::with_capacity(k as usize + 1);
                let mut binom = 1.0;
                for j in 0..=k {
                    b.push(binom * p.powi((k - j) as i32));
                    binom *= (k - j) as f64 / (j + 1) as f64;
                }
                b[0] -= c;
                b
            }
        };
        if factor.vanishes_at(p) {
            base.remove(0);
        }
        base.resize(n.max(base.len()), Complex64::new(0.0, 0.0));
        base.truncate(n);
        let unit = if factor.exponent < 0 {
            series_inverse(&base)?
        } else {
            base
        };
        for _ in 0..factor.exponent.unsigned_abs() {
            acc = series_mul(&acc, &unit);
        }
    }
    let result = acc[n - 1];
    if !(result.re.is_finite() && result.im.is_finite()) {
        return Err(Error::NonFinite(format!("series residue at {p}")));
    }
    Ok(result)
}

fn series_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let n = a.len();
    (0..n)
        .map(|i| (0..=i).map(|j| a[j] * b[i - j]).sum())
        .collect()
}

fn series_inverse(a: &[Complex64]) -> Result<Vec<Complex64>> {
    if a[0].norm() == 0.0 {
        return Err(Error::NonFinite(
            "series inverse of a vanishing base".into(),
        ));
    }
    let inv0 = a[0].inv();
    let mut out = vec![inv0];
    for i in 1..a.len() {
        let s: Complex64 = (1..=i).map(|j| a[j] * out[i - j]).sum();
        out.push(-s * inv0);
    }
    Ok(out)
}

/// `Res_inf f dz = -Res_0 f(1/w) / w^2 dw`.
pub fn residue_at_infinity(f: &FactoredMeromorphic) -> Result<Complex64> {
    let chart = f.one_form_at_infinity_chart()?;
    let origin = Complex64::new(0.0, 0.0);
    let order = chart.order_at(SpherePoint::Finite(origin));
    let inner = match order {
        o if o >= 0 => origin,
        -1 | -2 => residue_limit(&chart, origin, -order)?,
        _ => residue_series(&chart, origin, -order)?,
    };
    Ok(-inner)
}

/// Residue at any sphere point: contour quadrature at finite points, the chart at infinity.
pub fn residue(f: &FactoredMeromorphic, p: SpherePoint) -> Result<Complex64> {
    match p {
        SpherePoint::Finite(z) => residue_contour(f, z, None, DEFAULT_CONTOUR_NODES),
        SpherePoint::Infinity => residue_at_infinity(f),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::meromorphic::Factor;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn inv_z() -> FactoredMeromorphic {
        FactoredMeromorphic::new(c(1.0), [Factor::monomial(-1)]).unwrap()
    }

    fn vase_dh(k: u32, a: f64) -> FactoredMeromorphic {
        FactoredMeromorphic::new(
            c(-1.0),
            [
                Factor::shifted(k, c(a.powi(k as i32)), 1),
                Factor::monomial(-1),
                Factor::shifted(k, c(1.0), -2),
            ],
        )
        .unwrap()
    }

    #[test]
    fn defining_residue() {
        for r in [0.1, 1.0, 7.5] {
            let res = residue_contour(&inv_z(), c(0.0), Some(r), 64).unwrap();
            assert!((res - c(1.0)).norm() < 1e-14);
        }
        assert!((residue_limit(&inv_z(), c(0.0), 1).unwrap() - c(1.0)).norm() < 1e-15);
    }

    #[test]
    fn vase_height_residue_at_origin() {
        let dh = vase_dh(2, 0.5);
        let contour = residue_contour(&dh, c(0.0), None, 64).unwrap();
        assert!((contour - c(0.25)).norm() < 1e-13);
        let limit = residue_limit(&dh, c(0.0), 1).unwrap();
        assert!((limit - c(0.25)).norm() < 1e-15);
    }

    #[test]
    fn residues_at_infinity() {
        assert!((residue_at_infinity(&inv_z()).unwrap() - c(-1.0)).norm() < 1e-15);
        let one = FactoredMeromorphic::constant(c(1.0)).unwrap();
        assert_eq!(
            one.one_form_at_infinity_chart()
                .unwrap()
                .order_at(SpherePoint::finite(0.0, 0.0)),
            -2
        );
        assert!(residue_at_infinity(&one).unwrap().norm() < 1e-15);

        // global residue theorem for the vase height differential
        let dh = vase_dh(3, 0.4);
        let mut total = residue_at_infinity(&dh).unwrap();
        for (p, _) in dh.finite_poles() {
            total += residue_contour(&dh, p, None, 64).unwrap();
        }
        assert!(total.norm() < 1e-12, "{total}");
    }

    #[test]
    fn contour_rejects_enclosed_pole_and_bad_args() {
        let dh = vase_dh(2, 0.5);
        assert!(matches!(
            residue_contour(&dh, c(0.0), Some(1.5), 64),
            Err(Error::SingularityInsideContour { .. })
        ));
        assert!(matches!(
            residue_contour(&dh, c(0.0), Some(0.1), 8),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            residue_contour(&dh, c(0.0), Some(-1.0), 64),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn limit_rejects_unsupported_orders() {
        let dh = vase_dh(2, 0.5);
        assert_eq!(
            residue_limit(&dh, c(1.0), 3),
            Err(Error::UnsupportedOrder(3))
        );
        assert!(matches!(
            residue_limit(&dh, c(1.0), 1),
            Err(Error::OrderMismatch { found: -2, .. })
        ));
    }

    #[test]
    fn double_pole_limit_matches_contour() {
        for k in 2..6 {
            let dh = vase_dh(k, 0.3);
            for (p, order) in dh.finite_poles() {
                let limit = residue_limit(&dh, p, -order).unwrap();
                let contour = residue_contour(&dh, p, None, 64).unwrap();
                assert!((limit - contour).norm() < 1e-12, "k={k} p={p}");
            }
        }
    }

    #[test]
    fn series_matches_limit_and_contour() {
        for k in 2..6 {
            let dh = vase_dh(k, 0.3);
            for (p, order) in dh.finite_poles() {
                let series = residue_series(&dh, p, -order).unwrap();
                let limit = residue_limit(&dh, p, -order).unwrap();
                assert!((series - limit).norm() < 1e-12, "k={k} p={p}");
            }
        }
        // fifth-order pole of (z - 1)^-5 (z + 2)^3
        let f = FactoredMeromorphic::new(
            c(1.5),
            [
                Factor::shifted(1, c(1.0), -5),
                Factor::shifted(1, c(-2.0), 3),
            ],
        )
        .unwrap();
        let series = residue_series(&f, c(1.0), 5).unwrap();
        let contour = residue_contour(&f, c(1.0), Some(1.0), 64).unwrap();
        assert!((series - contour).norm() < 1e-11, "{series} vs {contour}");
        // the fourth derivative of (z + 2)^3 vanishes
        assert!(series.norm() < 1e-15);
    }

    #[test]
    fn polynomial_has_zero_residue_at_infinity() {
        let f = FactoredMeromorphic::new(
            c(1.45),
            [
                Factor::monomial(2),
                Factor::shifted(4, c(0.0256), 2),
                Factor::shifted(4, c(10.5), 2),
            ],
        )
        .unwrap();
        assert_eq!(residue_at_infinity(&f).unwrap(), c(0.0));
    }

    #[test]
    fn contour_reports_no_convergence_near_outside_pole() {
        // a pole just outside the circle makes the trapezoidal error decay too slowly
        let f = |z: Complex64| Ok((z - c(1.0001)).inv());
        let err = contour_residue_with(f, c(0.0), 1.0, 64).unwrap_err();
        assert!(matches!(err, Error::NoConvergence { nodes: 4096, .. }));
    }
}
