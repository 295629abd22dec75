//! Immersion evaluation, mesh sampling and the geometric diagnostics on meshes.

pub mod curvature;
pub mod diagnostics;
pub mod export;
pub mod integrate;
pub mod mesh;
pub mod path;

pub use curvature::{estimate_mean_curvature, median_abs};
pub use integrate::{check_path_independence, integrate_point, plan_path, Immersion};
pub use mesh::{sample_instance, sample_mesh, DomainSpec, SurfaceMesh};
pub use path::{Exclusion, IntegrationPath, PathPiece};
