//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use catvase::sampler::SurfaceMesh;
use catvase::{FactorKind, FactoredMeromorphic};
use nalgebra::{Matrix2, Rotation3, Vector2, Vector3};
use num_complex::Complex64;

/// Evaluates a factored function by multiplying out each factor's power by repeated
/// multiplication, without touching the crate's evaluation code.
pub fn expanded_eval(f: &FactoredMeromorphic, z: Complex64) -> Complex64 {
    let mut acc = f.coefficient();
    for factor in f.factors() {
        let base = match factor.kind {
            FactorKind::Monomial => z,
            FactorKind::Shifted { k, c } => {
                let mut zk = Complex64::new(1.0, 0.0);
                for _ in 0..k {
                    zk *= z;
                }
                zk - c
            }
        };
        let mut p = Complex64::new(1.0, 0.0);
        for _ in 0..factor.exponent.unsigned_abs() {
            p *= base;
        }
        acc *= if factor.exponent >= 0 { p } else { 1.0 / p };
    }
    acc
}

/// Residue by a plain trapezoidal rule with a fixed, generous node count.
pub fn trapezoid_residue(
    f: impl Fn(Complex64) -> Complex64,
    p: Complex64,
    radius: f64,
    nodes: usize,
) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..nodes {
        let e = Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / nodes as f64);
        sum += f(p + radius * e) * radius * e;
    }
    sum / nodes as f64
}

pub fn factor_exponent_sum(f: &FactoredMeromorphic) -> i32 {
    f.factors()
        .iter()
        .map(|factor| match factor.kind {
            FactorKind::Monomial => factor.exponent,
            FactorKind::Shifted { k, .. } => k as i32 * factor.exponent,
        })
        .sum()
}

pub fn positions(mesh: &SurfaceMesh) -> Vec<Vector3<f64>> {
    mesh.vertices
        .iter()
        .map(|v| Vector3::from(v.position))
        .collect()
}

pub fn centered(points: &[Vector3<f64>]) -> Vec<Vector3<f64>> {
    let c = points.iter().sum::<Vector3<f64>>() / points.len() as f64;
    points.iter().map(|p| p - c).collect()
}

/// Symmetric Hausdorff distance by brute force.
pub fn hausdorff(a: &[Vector3<f64>], b: &[Vector3<f64>]) -> f64 {
    let one_sided = |x: &[Vector3<f64>], y: &[Vector3<f64>]| {
        x.iter()
            .map(|p| {
                y.iter()
                    .map(|q| (p - q).norm())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };
    one_sided(a, b).max(one_sided(b, a))
}

pub fn rotate_about_vertical(points: &[Vector3<f64>], angle: f64) -> Vec<Vector3<f64>> {
    let r = Rotation3::from_axis_angle(&Vector3::z_axis(), angle);
    points.iter().map(|p| r * p).collect()
}

/// Centre of the circle through three points of a horizontal plane.
pub fn circle_center(p: [Vector2<f64>; 3]) -> Vector2<f64> {
    let m = Matrix2::new(
        p[1].x - p[0].x,
        p[1].y - p[0].y,
        p[2].x - p[0].x,
        p[2].y - p[0].y,
    );
    let rhs = 0.5
        * Vector2::new(
            p[1].norm_squared() - p[0].norm_squared(),
            p[2].norm_squared() - p[0].norm_squared(),
        );
    m.lu().solve(&rhs).expect("points are not collinear")
}
