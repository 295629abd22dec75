//! Minimal surfaces on punctured spheres from Weierstrass data.
//!
//! The crate builds the two vase-of-catenoids families from factored rational
//! Weierstrass data, solves and cross-checks their period problems, classifies
//! their ends and samples triangulated meshes of the immersions.

pub mod cli;
pub mod error;
pub mod families;
pub mod format;
pub mod json;
pub mod meromorphic;
pub mod period;
pub mod quadrature;
pub mod roots;
pub mod sampler;
pub mod weierstrass;

pub use error::{Error, Result};
pub use families::{make_catenoid_fixture, make_double_vase, make_vase, FamilyInstance};
pub use meromorphic::{Factor, FactorKind, FactoredMeromorphic, SpherePoint};
pub use weierstrass::WeierstrassData;
