//! Rational functions on the Riemann sphere kept in factored form.
//!
//! A [`FactoredMeromorphic`] is `coefficient * prod(factor^exponent)` where each
//! factor is either the monomial `z` or a shifted power `z^k - c`. Every Gauss
//! map and height differential used by the surface families fits this shape,
//! and keeping the factors explicit makes orders, roots and residues exact
//! structural queries instead of numerical searches.

mod residue;

use std::cmp::Ordering;
use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::format_sig;

pub use residue::{
    contour_residue_with, residue, residue_at_infinity, residue_contour, residue_limit,
    residue_series, DEFAULT_CONTOUR_NODES, MAX_CONTOUR_NODES,
};

/// Relative tolerance used to decide that a point is a root of `z^k - c`.
pub const ROOT_TOL: f64 = 1e-9;

/// Distance below which two enumerated roots are treated as the same point.
const MERGE_TOL: f64 = 1e-9;

/// A point of the Riemann sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpherePoint {
    Finite(Complex64),
    Infinity,
}

impl SpherePoint {
    pub fn finite(re: f64, im: f64) -> Self {
        SpherePoint::Finite(Complex64::new(re, im))
    }

    pub fn as_finite(&self) -> Option<Complex64> {
        match self {
            SpherePoint::Finite(z) => Some(*z),
            SpherePoint::Infinity => None,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, SpherePoint::Infinity)
    }

    /// Equality up to the root-matching tolerance. Infinity only matches Infinity.
    pub fn approx_eq(&self, other: &SpherePoint) -> bool {
        match (self, other) {
            (SpherePoint::Infinity, SpherePoint::Infinity) => true,
            (SpherePoint::Finite(a), SpherePoint::Finite(b)) => points_coincide(*a, *b),
            _ => false,
        }
    }
}

impl fmt::Display for SpherePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpherePoint::Infinity => write!(f, "inf"),
            SpherePoint::Finite(z) => write!(f, "{}", format_complex(*z)),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum SpherePointRepr {
    Finite { re: f64, im: f64 },
    Named(String),
}

impl Serialize for SpherePoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SpherePoint::Finite(z) => SpherePointRepr::Finite { re: z.re, im: z.im },
            SpherePoint::Infinity => SpherePointRepr::Named("infinity".into()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SpherePoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match SpherePointRepr::deserialize(d)? {
            SpherePointRepr::Finite { re, im } => Ok(SpherePoint::finite(re, im)),
            SpherePointRepr::Named(s) if s == "infinity" => Ok(SpherePoint::Infinity),
            SpherePointRepr::Named(s) => Err(serde::de::Error::custom(format!(
                "unknown sphere point {s:?}"
            ))),
        }
    }
}

pub(crate) fn points_coincide(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= MERGE_TOL * a.norm().max(b.norm()).max(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FactorKind {
    /// The identity `z`.
    Monomial,
    /// `z^k - c`, with `c != 0`.
    Shifted { k: u32, c: Complex64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Factor {
    pub kind: FactorKind,
    pub exponent: i32,
}

impl Factor {
    pub fn monomial(exponent: i32) -> Self {
        Factor {
            kind: FactorKind::Monomial,
            exponent,
        }
    }

    /// `(z^k - c)^exponent`. A zero shift is normalised to a monomial power.
    pub fn shifted(k: u32, c: Complex64, exponent: i32) -> Self {
        if c == Complex64::new(0.0, 0.0) {
            return Factor::monomial(exponent * k as i32);
        }
        Factor {
            kind: FactorKind::Shifted { k, c },
            exponent,
        }
    }

    pub fn degree(&self) -> i32 {
        match self.kind {
            FactorKind::Monomial => 1,
            FactorKind::Shifted { k, .. } => k as i32,
        }
    }

    /// Value of the base (without the exponent) at `z`.
    pub fn base_value(&self, z: Complex64) -> Complex64 {
        match self.kind {
            FactorKind::Monomial => z,
            FactorKind::Shifted { k, c } => z.powi(k as i32) - c,
        }
    }

    /// Whether `z` is a root of the base.
    pub fn vanishes_at(&self, z: Complex64) -> bool {
        match self.kind {
            FactorKind::Monomial => z.norm() <= MERGE_TOL,
            FactorKind::Shifted { k, c } => {
                (z.powi(k as i32) - c).norm() <= ROOT_TOL * k as f64 * c.norm()
            }
        }
    }

    /// The roots of the base: `|c|^(1/k) e^{i(arg c + 2 pi j)/k}`.
    pub fn roots(&self) -> Vec<Complex64> {
        match self.kind {
            FactorKind::Monomial => vec![Complex64::new(0.0, 0.0)],
            FactorKind::Shifted { k, c } => {
                let modulus = c.norm().powf(1.0 / k as f64);
                let base = c.arg() / k as f64;
                (0..k)
                    .map(|j| Complex64::from_polar(modulus, base + TAU * j as f64 / k as f64))
                    .map(clean_axis)
                    .collect()
            }
        }
    }

    fn sort_key(&self, other: &Factor) -> Ordering {
        match (self.kind, other.kind) {
            (FactorKind::Monomial, FactorKind::Monomial) => Ordering::Equal,
            (FactorKind::Monomial, _) => Ordering::Less,
            (_, FactorKind::Monomial) => Ordering::Greater,
            (FactorKind::Shifted { k: k1, c: c1 }, FactorKind::Shifted { k: k2, c: c2 }) => k1
                .cmp(&k2)
                .then(c1.re.total_cmp(&c2.re))
                .then(c1.im.total_cmp(&c2.im)),
        }
    }

    fn same_base(&self, other: &Factor) -> bool {
        self.sort_key(other) == Ordering::Equal
    }

    fn label(&self) -> String {
        match self.kind {
            FactorKind::Monomial => "z".to_string(),
            FactorKind::Shifted { k, c } => {
                let power = if k == 1 {
                    "z".to_string()
                } else {
                    format!("z^{k}")
                };
                if c.im == 0.0 {
                    if c.re >= 0.0 {
                        format!("({power} - {})", format_sig(c.re, 6))
                    } else {
                        format!("({power} + {})", format_sig(-c.re, 6))
                    }
                } else {
                    format!("({power} - {})", format_complex(c))
                }
            }
        }
    }
}

/// Snap roots that sit on a coordinate axis up to rounding.
fn clean_axis(z: Complex64) -> Complex64 {
    let scale = z.norm();
    let snap = |x: f64| {
        if x.abs() <= 4.0 * f64::EPSILON * scale {
            0.0
        } else {
            x
        }
    };
    Complex64::new(snap(z.re), snap(z.im))
}

pub(crate) fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format_sig(z.re, 6)
    } else if z.re == 0.0 {
        format!("{}i", format_sig(z.im, 6))
    } else {
        let sign = if z.im < 0.0 { '-' } else { '+' };
        format!(
            "({} {} {}i)",
            format_sig(z.re, 6),
            sign,
            format_sig(z.im.abs(), 6)
        )
    }
}

/// `coefficient * prod(factor^exponent)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FactoredMeromorphic {
    coefficient: Complex64,
    factors: Vec<Factor>,
}

impl FactoredMeromorphic {
    /// Builds a normalised function: equal bases are merged, zero exponents dropped,
    /// factors sorted monomial first and then by `(k, re c, im c)`.
    pub fn new(coefficient: Complex64, factors: impl IntoIterator<Item = Factor>) -> Result<Self> {
        if !(coefficient.re.is_finite() && coefficient.im.is_finite()) {
            return Err(Error::NonFinite(format!("coefficient {coefficient}")));
        }
        if coefficient == Complex64::new(0.0, 0.0) {
            return Err(Error::Domain("coefficient must be nonzero".into()));
        }
        let mut merged: Vec<Factor> = Vec::new();
        for factor in factors {
            if let FactorKind::Shifted { k, c } = factor.kind {
                if k == 0 {
                    return Err(Error::Domain("shifted factor needs k >= 1".into()));
                }
                if !(c.re.is_finite() && c.im.is_finite()) {
                    return Err(Error::NonFinite(format!("shift {c}")));
                }
            }
            // re-normalise in case a caller built the struct literally with c = 0
            let factor = match factor.kind {
                FactorKind::Shifted { k, c } => Factor::shifted(k, c, factor.exponent),
                FactorKind::Monomial => factor,
            };
            match merged.iter_mut().find(|f| f.same_base(&factor)) {
                Some(existing) => existing.exponent += factor.exponent,
                None => merged.push(factor),
            }
        }
        merged.retain(|f| f.exponent != 0);
        merged.sort_by(|a, b| a.sort_key(b));
        Ok(FactoredMeromorphic {
            coefficient,
            factors: merged,
        })
    }

    pub fn constant(c: Complex64) -> Result<Self> {
        Self::new(c, [])
    }

    /// The identity function `z`.
    pub fn identity() -> Self {
        Self::new(Complex64::new(1.0, 0.0), [Factor::monomial(1)]).expect("valid")
    }

    pub fn coefficient(&self) -> Complex64 {
        self.coefficient
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn scaled(&self, s: Complex64) -> Result<Self> {
        Self::new(self.coefficient * s, self.factors.iter().copied())
    }

    pub fn mul(&self, other: &FactoredMeromorphic) -> Result<Self> {
        Self::new(
            self.coefficient * other.coefficient,
            self.factors.iter().chain(other.factors.iter()).copied(),
        )
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(
            self.coefficient.inv(),
            self.factors.iter().map(|f| Factor {
                exponent: -f.exponent,
                ..*f
            }),
        )
    }

    pub fn powi(&self, n: i32) -> Result<Self> {
        if n == 0 {
            return Self::constant(Complex64::new(1.0, 0.0));
        }
        Self::new(
            self.coefficient.powi(n),
            self.factors.iter().map(|f| Factor {
                exponent: f.exponent * n,
                ..*f
            }),
        )
    }

    /// Total degree `sum(exponent * degree)`; the order at infinity is its negative.
    pub fn degree(&self) -> i32 {
        self.factors.iter().map(|f| f.exponent * f.degree()).sum()
    }

    /// Evaluates factor by factor, never expanding polynomials.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let mut value = self.coefficient;
        for factor in &self.factors {
            if factor.exponent < 0 && factor.vanishes_at(z) {
                return Err(Error::PoleEvaluation {
                    factor: factor.label(),
                    z,
                });
            }
            value *= factor.base_value(z).powi(factor.exponent);
        }
        if !(value.re.is_finite() && value.im.is_finite()) {
            return Err(Error::NonFinite(format!("value at {z}")));
        }
        Ok(value)
    }

    /// `f'(z)/f(z) = sum(exponent * base'(z)/base(z))`.
    pub fn eval_log_derivative(&self, z: Complex64) -> Result<Complex64> {
        let mut sum = Complex64::new(0.0, 0.0);
        for factor in &self.factors {
            if factor.vanishes_at(z) {
                return Err(Error::SingularPoint { z });
            }
            let e = factor.exponent as f64;
            sum += match factor.kind {
                FactorKind::Monomial => e / z,
                FactorKind::Shifted { k, c } => {
                    let zk1 = z.powi(k as i32 - 1);
                    e * (k as f64) * zk1 / (zk1 * z - c)
                }
            };
        }
        Ok(sum)
    }

    pub fn order_at(&self, p: SpherePoint) -> i32 {
        match p {
            SpherePoint::Infinity => -self.degree(),
            SpherePoint::Finite(z) => self
                .factors
                .iter()
                .filter(|f| f.vanishes_at(z))
                .map(|f| f.exponent)
                .sum(),
        }
    }

    /// Limit of `f` at infinity when the degree is zero (finite nonzero value there).
    pub fn value_at_infinity(&self) -> Option<Complex64> {
        match self.degree().cmp(&0) {
            Ordering::Equal => Some(self.coefficient),
            Ordering::Less => Some(Complex64::new(0.0, 0.0)),
            Ordering::Greater => None,
        }
    }

    /// Every finite point where the order is nonzero, with its order.
    ///
    /// Roots shared by several factors are merged so each point appears once.
    pub fn finite_divisor(&self) -> Vec<(Complex64, i32)> {
        let mut points: Vec<Complex64> = Vec::new();
        for factor in &self.factors {
            for root in factor.roots() {
                if !points.iter().any(|p| points_coincide(*p, root)) {
                    points.push(root);
                }
            }
        }
        points
            .into_iter()
            .map(|p| (p, self.order_at(SpherePoint::Finite(p))))
            .filter(|(_, order)| *order != 0)
            .collect()
    }

    pub fn finite_poles(&self) -> Vec<(Complex64, i32)> {
        self.finite_divisor()
            .into_iter()
            .filter(|(_, o)| *o < 0)
            .collect()
    }

    /// `f(1/w) / w^2` as a function of `w`; the chart used for one-forms at infinity.
    pub fn one_form_at_infinity_chart(&self) -> Result<Self> {
        let mut coefficient = self.coefficient;
        let mut factors = vec![Factor::monomial(-2)];
        for factor in &self.factors {
            match factor.kind {
                FactorKind::Monomial => factors.push(Factor::monomial(-factor.exponent)),
                FactorKind::Shifted { k, c } => {
                    // (w^-k - c)^e = w^(-k e) (-c)^e (w^k - 1/c)^e
                    coefficient *= (-c).powi(factor.exponent);
                    factors.push(Factor::monomial(-(k as i32) * factor.exponent));
                    factors.push(Factor::shifted(k, c.inv(), factor.exponent));
                }
            }
        }
        Self::new(coefficient, factors)
    }
}

impl fmt::Display for FactoredMeromorphic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_complex(self.coefficient))?;
        for factor in &self.factors {
            write!(f, " * {}^{}", factor.label(), factor.exponent)?;
        }
        Ok(())
    }
}
