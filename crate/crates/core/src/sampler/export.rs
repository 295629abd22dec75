use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::Result;

use super::mesh::{MeshMetadata, SurfaceMesh};

/// `v`, `vn` and `f i//i j//j k//k` records with 9 significant digits.
pub fn to_obj(mesh: &SurfaceMesh) -> String {
    let mut out = String::new();
    for v in &mesh.vertices {
        let [x, y, z] = v.position;
        writeln!(out, "v {x:.8e} {y:.8e} {z:.8e}").unwrap();
    }
    for v in &mesh.vertices {
        let [x, y, z] = v.normal;
        writeln!(out, "vn {x:.8e} {y:.8e} {z:.8e}").unwrap();
    }
    for f in &mesh.faces {
        let [a, b, c] = f.map(|i| i + 1);
        writeln!(out, "f {a}//{a} {b}//{b} {c}//{c}").unwrap();
    }
    out
}

/// Binary little-endian PLY with position, normal and conformal factor per vertex.
pub fn to_ply(mesh: &SurfaceMesh) -> Vec<u8> {
    let mut out = Vec::new();
    let header = format!(
        "ply\nformat binary_little_endian 1.0\nelement vertex {}\n\
         property float x\nproperty float y\nproperty float z\n\
         property float nx\nproperty float ny\nproperty float nz\n\
         property float conformal_factor\n\
         element face {}\nproperty list uchar int vertex_indices\nend_header\n",
        mesh.vertices.len(),
        mesh.faces.len()
    );
    out.extend_from_slice(header.as_bytes());
    for v in &mesh.vertices {
        for x in v
            .position
            .iter()
            .chain(&v.normal)
            .chain([&v.conformal_factor])
        {
            out.extend_from_slice(&(*x as f32).to_le_bytes());
        }
    }
    for f in &mesh.faces {
        out.push(3);
        for &i in f {
            out.extend_from_slice(&(i as i32).to_le_bytes());
        }
    }
    out
}

pub fn sidecar_json(meta: &MeshMetadata) -> String {
    serde_json::to_string_pretty(meta).expect("metadata serialises") + "\n"
}

/// `mesh.obj` -> `mesh.json`.
pub fn sidecar_path(path: &Path) -> PathBuf {
    path.with_extension("json")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeshFormat {
    Obj,
    Ply,
}

/// Writes the mesh and its sidecar, returning the sidecar path.
pub fn write_mesh(mesh: &SurfaceMesh, path: &Path, format: MeshFormat) -> Result<PathBuf> {
    let bytes = match format {
        MeshFormat::Obj => to_obj(mesh).into_bytes(),
        MeshFormat::Ply => to_ply(mesh),
    };
    std::fs::File::create(path)?.write_all(&bytes)?;
    let side = sidecar_path(path);
    std::fs::write(&side, sidecar_json(&mesh.metadata))?;
    Ok(side)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::catenoid_data;
    use crate::families::FamilyParams;
    use crate::sampler::mesh::{sample_mesh, DomainSpec};

    fn small() -> SurfaceMesh {
        let d = DomainSpec::default_for(&FamilyParams::Catenoid).with_resolution(8, 8);
        sample_mesh(&catenoid_data(), &d).unwrap()
    }

    #[test]
    fn obj_layout() {
        let mesh = small();
        let obj = to_obj(&mesh);
        assert!(!obj.contains('\r'));
        let lines: Vec<&str> = obj.lines().collect();
        assert_eq!(lines.len(), 2 * mesh.vertices.len() + mesh.faces.len());
        assert!(lines[0].starts_with("v "));
        let first: f64 = lines[0].split_whitespace().nth(1).unwrap().parse().unwrap();
        assert!((first - mesh.vertices[0].position[0]).abs() <= 1e-8 * first.abs().max(1e-300));
        let f = lines.last().unwrap();
        let [a, b, c] = mesh.faces.last().unwrap().map(|i| i + 1);
        assert_eq!(*f, format!("f {a}//{a} {b}//{b} {c}//{c}"));
    }

    #[test]
    fn ply_size_matches_header() {
        let mesh = small();
        let ply = to_ply(&mesh);
        let end = b"end_header\n";
        let pos = ply.windows(end.len()).position(|w| w == end).unwrap() + end.len();
        assert_eq!(
            ply.len() - pos,
            mesh.vertices.len() * 7 * 4 + mesh.faces.len() * 13
        );
    }

    #[test]
    fn sidecar_round_trips() {
        let mesh = small();
        let back: MeshMetadata = serde_json::from_str(&sidecar_json(&mesh.metadata)).unwrap();
        assert_eq!(back, mesh.metadata);
        assert_eq!(
            sidecar_path(Path::new("out/dv.obj")),
            Path::new("out/dv.json")
        );
    }
}
