use nalgebra::Vector3;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::meromorphic::points_coincide;
use crate::quadrature::{self, Vec3c};
use crate::weierstrass::{CoordinateForms, WeierstrassData};

use super::path::{route, Exclusion, IntegrationPath, PathPiece};

/// Default exclusion radius as a fraction of the distance to the nearest other singularity.
pub const EXCLUSION_FRACTION: f64 = 0.05;

/// Result of integrating the coordinate forms along a path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathIntegral {
    /// `Re` of the component-wise integral.
    pub value: Vector3<f64>,
    /// Accumulated absolute error estimate over all pieces.
    pub error: f64,
}

/// The immersion `X(z) = Re int phi` with the singular set and its exclusion disks.
#[derive(Debug, Clone)]
pub struct Immersion {
    forms: CoordinateForms,
    singular: Vec<Complex64>,
    exclusions: Vec<Exclusion>,
}

impl Immersion {
    /// Disks of radius `exclusion_radius` around every finite singularity, or the
    /// default per-point radius when `None`.
    pub fn new(w: &WeierstrassData, exclusion_radius: Option<f64>) -> Result<Self> {
        let forms = w.coordinate_forms()?;
        let mut singular: Vec<Complex64> = Vec::new();
        for p in w.finite_punctures().chain(forms.finite_poles()) {
            if !singular.iter().any(|q| points_coincide(*q, p)) {
                singular.push(p);
            }
        }
        if let Some(r) = exclusion_radius {
            if !(r > 0.0 && r.is_finite()) {
                return Err(Error::Domain(format!(
                    "exclusion radius must be positive, got {r}"
                )));
            }
        }
        let exclusions = singular
            .iter()
            .map(|&center| Exclusion {
                center,
                radius: exclusion_radius.unwrap_or_else(|| default_radius(&singular, center)),
            })
            .collect();
        Ok(Immersion {
            forms,
            singular,
            exclusions,
        })
    }

    pub fn forms(&self) -> &CoordinateForms {
        &self.forms
    }

    pub fn singular_points(&self) -> &[Complex64] {
        &self.singular
    }

    pub fn exclusions(&self) -> &[Exclusion] {
        &self.exclusions
    }

    /// Whether `z` lies outside every exclusion disk.
    pub fn is_admissible(&self, z: Complex64) -> bool {
        self.exclusions
            .iter()
            .all(|e| (z - e.center).norm() > e.radius)
    }

    pub fn plan(&self, z0: Complex64, z: Complex64) -> Result<IntegrationPath> {
        route(&self.exclusions, z0, z)
    }

    pub fn integrate(&self, path: &IntegrationPath) -> Result<PathIntegral> {
        let mut total = [Complex64::new(0.0, 0.0); 3];
        let mut error = 0.0;
        for piece in path.pieces() {
            let q = integrate_piece(&self.forms, piece)?;
            for (t, v) in total.iter_mut().zip(q.value) {
                *t += v;
            }
            error += q.error;
        }
        Ok(PathIntegral {
            value: Vector3::new(total[0].re, total[1].re, total[2].re),
            error,
        })
    }

    /// `X(z) - X(z0)` along the planned path.
    pub fn displacement(&self, z0: Complex64, z: Complex64) -> Result<Vector3<f64>> {
        Ok(self.integrate(&self.plan(z0, z)?)?.value)
    }

    pub fn path_discrepancy(&self, a: &IntegrationPath, b: &IntegrationPath) -> Result<f64> {
        let scale = a.start().norm().max(a.end().norm()).max(1.0);
        if (a.start() - b.start()).norm() > 1e-12 * scale
            || (a.end() - b.end()).norm() > 1e-12 * scale
        {
            return Err(Error::Domain("paths do not share their end points".into()));
        }
        Ok((self.integrate(a)?.value - self.integrate(b)?.value).norm())
    }
}

fn default_radius(singular: &[Complex64], center: Complex64) -> f64 {
    let nearest = singular
        .iter()
        .filter(|&&q| q != center)
        .map(|q| (q - center).norm())
        .fold(f64::INFINITY, f64::min);
    // an isolated singularity is measured against the unit scale
    EXCLUSION_FRACTION * if nearest.is_finite() { nearest } else { 1.0 }
}

fn integrate_piece(forms: &CoordinateForms, piece: &PathPiece) -> Result<quadrature::Quadrature> {
    quadrature::integrate(|t| -> Result<Vec3c> {
        let dz = piece.derivative(t);
        let phi = forms.eval(piece.point(t))?;
        Ok([phi[0] * dz, phi[1] * dz, phi[2] * dz])
    })
}

/// Path from `z0` to `z` avoiding disks of radius `exclusion_radius` around every
/// puncture and pole of the coordinate forms.
pub fn plan_path(
    w: &WeierstrassData,
    z0: Complex64,
    z: Complex64,
    exclusion_radius: f64,
) -> Result<IntegrationPath> {
    Immersion::new(w, Some(exclusion_radius))?.plan(z0, z)
}

/// `Re int_path (phi1, phi2, phi3)`.
pub fn integrate_point(w: &WeierstrassData, path: &IntegrationPath) -> Result<Vector3<f64>> {
    let forms = w.coordinate_forms()?;
    let mut x = Vector3::zeros();
    for piece in path.pieces() {
        let q = integrate_piece(&forms, piece)?;
        x += Vector3::new(q.value[0].re, q.value[1].re, q.value[2].re);
    }
    Ok(x)
}

/// `|X_A - X_B|` for two paths with common end points.
pub fn check_path_independence(
    w: &WeierstrassData,
    a: &IntegrationPath,
    b: &IntegrationPath,
) -> Result<f64> {
    Immersion::new(w, None)?.path_discrepancy(a, b)
}
