use num_complex::Complex64;
use thiserror::Error;

use crate::meromorphic::SpherePoint;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    Domain(String),

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    #[error("evaluation at a pole of factor {factor} (z = {z})")]
    PoleEvaluation { factor: String, z: Complex64 },

    #[error("{z} is a zero or pole of the function")]
    SingularPoint { z: Complex64 },

    #[error("singularity at {other} lies inside the contour of radius {radius} around {center}")]
    SingularityInsideContour {
        center: Complex64,
        other: Complex64,
        radius: f64,
    },

    #[error("trapezoidal residue did not converge within {nodes} nodes (last difference {difference:e})")]
    NoConvergence { nodes: usize, difference: f64 },

    #[error("residue limit supports pole orders 1 and 2, got {0}")]
    UnsupportedOrder(i32),

    #[error("expected a pole of order {expected} at {z}, found order {found}")]
    OrderMismatch {
        z: Complex64,
        expected: i32,
        found: i32,
    },

    #[error("end at {location} has order pattern (G: {g_order}, dh: {dh_order}) matching no known end type")]
    UnrecognizedEndType {
        location: SpherePoint,
        g_order: i32,
        dh_order: i32,
    },

    #[error("closed form {closed} disagrees with contour residue {numeric} ({what})")]
    ClosedFormMismatch {
        what: String,
        closed: f64,
        numeric: f64,
    },

    #[error("no sign change found on [{lo}, {hi}]")]
    NoRoot { lo: f64, hi: f64 },

    #[error(
        "period condition violated at {location}: {condition} defect {defect:e} exceeds {tol:e}"
    )]
    PeriodViolation {
        location: SpherePoint,
        condition: String,
        defect: f64,
        tol: f64,
    },

    #[error("weierstrass data failed audit: {0}")]
    AuditFailure(String),

    #[error("cannot route a path between {from} and {to}: {reason}")]
    Unroutable {
        from: Complex64,
        to: Complex64,
        reason: String,
    },

    #[error("quadrature exhausted {budget} subdivisions (error estimate {estimate:e})")]
    QuadratureFailure { budget: usize, estimate: f64 },

    #[error("face {face} has an angle of {angle_deg:.3} degrees")]
    DegenerateTriangle { face: usize, angle_deg: f64 },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
