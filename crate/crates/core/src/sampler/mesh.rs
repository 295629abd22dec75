use std::f64::consts::TAU;

use nalgebra::Vector3;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{FamilyDescriptor, FamilyInstance, FamilyParams};
use crate::json;
use crate::weierstrass::{conformal_factor_with, WeierstrassData};

use super::integrate::Immersion;
use super::path::{Exclusion, IntegrationPath};

/// Polar sampling grid over an annulus of the parameter plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DomainSpec {
    #[serde(with = "json::complex")]
    pub base_point: Complex64,
    pub r_min: f64,
    pub r_max: f64,
    /// Nodes per ring.
    pub angular_resolution: usize,
    /// Number of rings.
    pub radial_resolution: usize,
    /// Uniform exclusion radius; the per-singularity default when absent.
    pub exclusion_radius: Option<f64>,
}

impl DomainSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Domain(msg));
        if !(self.r_min > 0.0 && self.r_min.is_finite()) {
            return bad(format!("r_min must be positive, got {}", self.r_min));
        }
        if !(self.r_max > self.r_min && self.r_max.is_finite()) {
            return bad(format!("empty annulus [{}, {}]", self.r_min, self.r_max));
        }
        if self.angular_resolution < 8 || self.radial_resolution < 8 {
            return bad(format!(
                "resolutions must be at least 8, got {}x{}",
                self.angular_resolution, self.radial_resolution
            ));
        }
        if let Some(r) = self.exclusion_radius {
            if !(r > 0.0 && r.is_finite()) {
                return bad(format!("exclusion radius must be positive, got {r}"));
            }
        }
        if !(self.base_point.re.is_finite() && self.base_point.im.is_finite()) {
            return bad("base point must be finite".into());
        }
        Ok(())
    }

    pub fn radius(&self, j: usize) -> f64 {
        let t = j as f64 / (self.radial_resolution - 1) as f64;
        self.r_min * (self.r_max / self.r_min).powf(t)
    }

    pub fn angle(&self, i: usize) -> f64 {
        TAU * i as f64 / self.angular_resolution as f64
    }

    pub fn node(&self, i: usize, j: usize) -> Complex64 {
        Complex64::from_polar(self.radius(j), self.angle(i))
    }

    /// Same annulus and base point at a different grid size.
    pub fn with_resolution(&self, angular: usize, radial: usize) -> Self {
        DomainSpec {
            angular_resolution: angular,
            radial_resolution: radial,
            ..self.clone()
        }
    }

    /// Base point, annulus and resolution used when none are given.
    ///
    /// The vase is based at `(1 + a) / 2` and the other families at 1. The angular
    /// resolution is the multiple of `k` nearest 64 from above so that the grid
    /// carries the rotational symmetry.
    pub fn default_for(params: &FamilyParams) -> Self {
        let (base_point, r_min, r_max, k) = match params {
            FamilyParams::Vase(p) => (0.5 * (1.0 + p.a), 0.2, 2.5, p.k),
            FamilyParams::DoubleVase(p) => {
                let inner = p.b.min(1.0 / p.b);
                (1.0, 0.5 * inner, 2.0 / inner, p.k)
            }
            FamilyParams::Catenoid => (1.0, 0.5, 2.0, 1),
        };
        let k = k.max(1) as usize;
        DomainSpec {
            base_point: Complex64::new(base_point, 0.0),
            r_min,
            r_max,
            angular_resolution: 64_usize.div_ceil(k) * k,
            radial_resolution: 32,
            exclusion_radius: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeshVertex {
    pub position: [f64; 3],
    pub normal: [f64; 3],
    #[serde(with = "json::complex")]
    pub source_z: Complex64,
    pub conformal_factor: f64,
    /// `(angular, radial)` grid indices.
    pub grid: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeshMetadata {
    pub family: Option<FamilyDescriptor>,
    pub domain: DomainSpec,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceMesh {
    pub vertices: Vec<MeshVertex>,
    pub faces: Vec<[usize; 3]>,
    pub metadata: MeshMetadata,
}

impl SurfaceMesh {
    pub fn position(&self, v: usize) -> Vector3<f64> {
        Vector3::from(self.vertices[v].position)
    }

    /// Vertex index of grid node `(i, j)`, if it was sampled.
    pub fn vertex_at(&self, i: usize, j: usize) -> Option<usize> {
        let n = self.metadata.domain.angular_resolution;
        let row_start = self.vertices.partition_point(|v| v.grid.1 < j);
        let row = &self.vertices[row_start..];
        let in_row = row.partition_point(|v| v.grid.1 == j && v.grid.0 < i % n);
        let idx = row_start + in_row;
        (idx < self.vertices.len() && self.vertices[idx].grid == (i % n, j)).then_some(idx)
    }
}

/// Samples `X` on the polar grid of `domain`, with `X(base_point) = 0`.
pub fn sample_mesh(w: &WeierstrassData, domain: &DomainSpec) -> Result<SurfaceMesh> {
    domain.validate()?;
    let imm = Immersion::new(w, domain.exclusion_radius)?;
    let z0 = domain.base_point;
    if !imm.is_admissible(z0) {
        return Err(Error::Domain(format!(
            "base point {z0} lies in an exclusion disk"
        )));
    }
    let (n, m) = (domain.angular_resolution, domain.radial_resolution);
    let valid: Vec<Vec<bool>> = (0..n)
        .map(|i| {
            (0..m)
                .map(|j| imm.is_admissible(domain.node(i, j)))
                .collect()
        })
        .collect();

    // ring through the base point, nearest in log radius
    let ring = (0..m)
        .min_by(|&x, &y| {
            let d = |j: usize| (domain.radius(j).ln() - z0.norm().ln()).abs();
            d(x).total_cmp(&d(y))
        })
        .expect("at least eight rings");

    // serial pass along the base ring, chaining chords between valid nodes
    let mut anchors: Vec<Option<Vector3<f64>>> = vec![None; n];
    let mut last: Option<(Complex64, Vector3<f64>)> = None;
    for i in 0..n {
        if !valid[i][ring] {
            continue;
        }
        let z = domain.node(i, ring);
        let x = match last {
            None => imm.displacement(z0, z)?,
            Some((zp, xp)) => xp + imm.displacement(zp, z)?,
        };
        anchors[i] = Some(x);
        last = Some((z, x));
    }

    // spokes in parallel, each extending its prefix one ring at a time
    let spokes: Vec<Vec<Option<Vector3<f64>>>> = (0..n)
        .into_par_iter()
        .map(|i| spoke(&imm, domain, &valid[i], i, ring, anchors[i], z0))
        .collect::<Result<_>>()?;

    let mut index = vec![vec![usize::MAX; m]; n];
    let mut vertices = Vec::new();
    for j in 0..m {
        for i in 0..n {
            let Some(x) = spokes[i][j] else { continue };
            let z = domain.node(i, j);
            index[i][j] = vertices.len();
            vertices.push(MeshVertex {
                position: x.into(),
                normal: w.gauss_normal(z)?.into(),
                source_z: z,
                conformal_factor: conformal_factor_with(imm.forms(), z)?,
                grid: (i, j),
            });
        }
    }

    let mut faces = Vec::new();
    for j in 0..m - 1 {
        for i in 0..n {
            let i1 = (i + 1) % n;
            for tri in [
                [(i, j), (i, j + 1), (i1, j + 1)],
                [(i, j), (i1, j + 1), (i1, j)],
            ] {
                if tri.iter().any(|&(a, b)| index[a][b] == usize::MAX) {
                    continue;
                }
                let zs = tri.map(|(a, b)| domain.node(a, b));
                if imm.exclusions().iter().any(|e| triangle_meets_disk(zs, e)) {
                    continue;
                }
                let f = tri.map(|(a, b)| index[a][b]);
                let [p, q, r] = f.map(|v| Vector3::from(vertices[v].position));
                if (q - p).cross(&(r - p)).norm() == 0.0 {
                    continue;
                }
                faces.push(f);
            }
        }
    }

    Ok(SurfaceMesh {
        vertices,
        faces,
        metadata: MeshMetadata {
            family: None,
            domain: domain.clone(),
        },
    })
}

fn spoke(
    imm: &Immersion,
    domain: &DomainSpec,
    valid: &[bool],
    i: usize,
    ring: usize,
    anchor: Option<Vector3<f64>>,
    z0: Complex64,
) -> Result<Vec<Option<Vector3<f64>>>> {
    let m = domain.radial_resolution;
    let mut out = vec![None; m];
    // a spoke whose ring node is excluded starts from the base point at its nearest valid node
    let (start, x_start) = match anchor {
        Some(x) => (ring, x),
        None => {
            let Some(j) = (0..m)
                .filter(|&j| valid[j])
                .min_by_key(|&j| j.abs_diff(ring))
            else {
                return Ok(out);
            };
            (j, imm.displacement(z0, domain.node(i, j))?)
        }
    };
    out[start] = Some(x_start);
    for dir in [1isize, -1] {
        let (mut zp, mut xp) = (domain.node(i, start), x_start);
        let mut j = start as isize + dir;
        while (0..m as isize).contains(&j) {
            let ju = j as usize;
            if valid[ju] {
                let z = domain.node(i, ju);
                xp += imm.displacement(zp, z)?;
                zp = z;
                out[ju] = Some(xp);
            }
            j += dir;
        }
    }
    Ok(out)
}

fn triangle_meets_disk(z: [Complex64; 3], e: &Exclusion) -> bool {
    let inside = {
        let cross = |a: Complex64, b: Complex64| ((b - a).conj() * (e.center - a)).im;
        let s = [cross(z[0], z[1]), cross(z[1], z[2]), cross(z[2], z[0])];
        s.iter().all(|&x| x >= 0.0) || s.iter().all(|&x| x <= 0.0)
    };
    inside
        || (0..3).any(|k| {
            IntegrationPath::at(z[k])
                .line_to(z[(k + 1) % 3])
                .distance_to(e.center)
                < e.radius
        })
}

/// Samples an instance on `domain` and records its descriptor.
pub fn sample_instance(instance: &FamilyInstance, domain: &DomainSpec) -> Result<SurfaceMesh> {
    let mut mesh = sample_mesh(&instance.data, domain)?;
    mesh.metadata.family = Some(instance.descriptor());
    Ok(mesh)
}
