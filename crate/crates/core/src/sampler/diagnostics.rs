use nalgebra::Vector3;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::weierstrass::WeierstrassData;

use super::curvature::interior_vertices;
use super::integrate::Immersion;
use super::mesh::SurfaceMesh;

/// Step in `log z` for the finite-difference tangents.
pub const TANGENT_STEP: f64 = 1e-4;

/// Finite-difference check of conformality and of the Gauss map at one node.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TangentCheck {
    pub vertex: usize,
    /// `| |X_s| / |X_theta| - 1 |` for `z = e^{s + i theta}`.
    pub isometry_defect: f64,
    /// `|X_s . X_theta| / (|X_s| |X_theta|)`.
    pub orthogonality_defect: f64,
    /// Angle in radians between `X_s x X_theta` and the Gauss-map normal.
    pub normal_angle: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TangentSummary {
    pub nodes: usize,
    pub max_isometry_defect: f64,
    pub max_orthogonality_defect: f64,
    pub max_normal_angle: f64,
}

/// Central differences of `X` in the conformal coordinates `(log |z|, arg z)`.
pub fn tangent_check(imm: &Immersion, w: &WeierstrassData, z: Complex64) -> Result<[f64; 3]> {
    let h = TANGENT_STEP;
    let step = |d: Complex64| imm.displacement(z, z * d.exp());
    let xs = (step(Complex64::new(h, 0.0))? - step(Complex64::new(-h, 0.0))?) / (2.0 * h);
    let xt = (step(Complex64::new(0.0, h))? - step(Complex64::new(0.0, -h))?) / (2.0 * h);
    let (ns, nt) = (xs.norm(), xt.norm());
    let normal: Vector3<f64> = w.gauss_normal(z)?;
    Ok([
        (ns / nt - 1.0).abs(),
        xs.dot(&xt).abs() / (ns * nt),
        xs.cross(&xt).angle(&normal),
    ])
}

/// Runs [`tangent_check`] at every interior vertex of `mesh`.
pub fn tangent_checks(w: &WeierstrassData, mesh: &SurfaceMesh) -> Result<Vec<TangentCheck>> {
    let imm = Immersion::new(w, mesh.metadata.domain.exclusion_radius)?;
    let interior = interior_vertices(mesh);
    let nodes: Vec<usize> = (0..mesh.vertices.len()).filter(|&v| interior[v]).collect();
    nodes
        .into_par_iter()
        .map(|v| {
            let [iso, orth, angle] = tangent_check(&imm, w, mesh.vertices[v].source_z)?;
            Ok(TangentCheck {
                vertex: v,
                isometry_defect: iso,
                orthogonality_defect: orth,
                normal_angle: angle,
            })
        })
        .collect()
}

pub fn summarize(checks: &[TangentCheck]) -> TangentSummary {
    let max = |f: fn(&TangentCheck) -> f64| checks.iter().map(f).fold(0.0, f64::max);
    TangentSummary {
        nodes: checks.len(),
        max_isometry_defect: max(|c| c.isometry_defect),
        max_orthogonality_defect: max(|c| c.orthogonality_defect),
        max_normal_angle: max(|c| c.normal_angle),
    }
}
