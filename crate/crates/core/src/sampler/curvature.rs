use std::collections::HashMap;

use nalgebra::Vector3;

use crate::error::{Error, Result};

use super::mesh::SurfaceMesh;

/// Faces with an angle above this are rejected.
pub const MAX_FACE_ANGLE_DEG: f64 = 179.0;

fn cot(a: Vector3<f64>, b: Vector3<f64>) -> f64 {
    a.dot(&b) / a.cross(&b).norm()
}

/// Vertices whose every incident edge is shared by exactly two faces.
pub fn interior_vertices(mesh: &SurfaceMesh) -> Vec<bool> {
    let mut edges: HashMap<(usize, usize), u32> = HashMap::new();
    for f in &mesh.faces {
        for k in 0..3 {
            let (a, b) = (f[k], f[(k + 1) % 3]);
            *edges.entry((a.min(b), a.max(b))).or_default() += 1;
        }
    }
    let mut interior = vec![false; mesh.vertices.len()];
    for f in &mesh.faces {
        for &v in f {
            interior[v] = true;
        }
    }
    for (&(a, b), &count) in &edges {
        if count != 2 {
            interior[a] = false;
            interior[b] = false;
        }
    }
    interior
}

/// Signed mean curvature at interior vertices from the cotangent Laplacian,
/// normalised by the mixed Voronoi area; `None` on the boundary.
///
/// The sign is taken against the stored vertex normal, with `Delta X = 2 H N`.
pub fn estimate_mean_curvature(mesh: &SurfaceMesh) -> Result<Vec<Option<f64>>> {
    let nv = mesh.vertices.len();
    let mut laplace = vec![Vector3::zeros(); nv];
    let mut area = vec![0.0; nv];
    for (fi, f) in mesh.faces.iter().enumerate() {
        let p = f.map(|v| mesh.position(v));
        let twice_area = (p[1] - p[0]).cross(&(p[2] - p[0])).norm();
        let mut obtuse = None;
        let mut cots = [0.0; 3];
        for k in 0..3 {
            let (a, b, c) = (p[k], p[(k + 1) % 3], p[(k + 2) % 3]);
            let (u, v) = (b - a, c - a);
            let angle = u.angle(&v).to_degrees();
            if angle > MAX_FACE_ANGLE_DEG || !angle.is_finite() {
                return Err(Error::DegenerateTriangle {
                    face: fi,
                    angle_deg: angle,
                });
            }
            if angle > 90.0 {
                obtuse = Some(k);
            }
            cots[k] = cot(u, v);
        }
        for (k, &w) in cots.iter().enumerate() {
            // the angle at k weighs the opposite edge
            let (b, c) = ((k + 1) % 3, (k + 2) % 3);
            let e = p[c] - p[b];
            laplace[f[b]] += w * e;
            laplace[f[c]] -= w * e;
        }
        let tri_area = 0.5 * twice_area;
        for k in 0..3 {
            let (b, c) = ((k + 1) % 3, (k + 2) % 3);
            area[f[k]] += match obtuse {
                None => {
                    0.125
                        * ((p[b] - p[k]).norm_squared() * cots[c]
                            + (p[c] - p[k]).norm_squared() * cots[b])
                }
                Some(o) if o == k => 0.5 * tri_area,
                Some(_) => 0.25 * tri_area,
            };
        }
    }
    let interior = interior_vertices(mesh);
    Ok((0..nv)
        .map(|v| {
            interior[v].then(|| {
                let k = laplace[v] / (2.0 * area[v]);
                0.5 * k.dot(&Vector3::from(mesh.vertices[v].normal))
            })
        })
        .collect())
}

/// Median of `|H|` over interior vertices.
pub fn median_abs(values: &[Option<f64>]) -> Option<f64> {
    let mut v: Vec<f64> = values.iter().flatten().map(|h| h.abs()).collect();
    if v.is_empty() {
        return None;
    }
    v.sort_by(f64::total_cmp);
    let n = v.len();
    Some(if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    })
}
