//! The vase of catenoids, the double vase, and the catenoid fixture.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::meromorphic::{Factor, FactoredMeromorphic, SpherePoint};
use crate::period::{
    assert_period_closed, solve_double_vase_a, solve_vase_rho, DoubleVaseParams, PeriodReport,
    SolveOutcome, VaseParams, DOUBLE_VASE_PERIOD_TOL, VASE_PERIOD_TOL,
};
use crate::weierstrass::{AuditReport, EndKind, WeierstrassData};

/// Largest rotational order accepted by the constructors.
pub const MAX_K: u32 = 64;

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn validate_k(k: u32) -> Result<()> {
    if k < 2 {
        return Err(Error::Domain(format!("k must be an integer > 1, got {k}")));
    }
    if k > MAX_K {
        return Err(Error::Domain(format!("k must be at most {MAX_K}, got {k}")));
    }
    Ok(())
}

fn validate_unit_interval(name: &str, x: f64) -> Result<()> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Domain(format!("{name} must lie in (0, 1), got {x}")));
    }
    Ok(())
}

pub(crate) fn validate_vase(k: u32, a: f64) -> Result<()> {
    validate_k(k)?;
    validate_unit_interval("a", a)
}

pub(crate) fn validate_double_vase(k: u32, b: f64) -> Result<()> {
    validate_k(k)?;
    validate_unit_interval("b", b)?;
    // the b-circle and the 1/b-circle of ends merge as b -> 1
    if 1.0 - b < 1e-6 {
        return Err(Error::Domain(format!(
            "b = {b} is too close to 1: the two circles of ends coalesce"
        )));
    }
    Ok(())
}

/// `radius * e^{2 pi i j / k}` for `j = 0..k`.
fn circle_points(radius: f64, k: u32) -> impl Iterator<Item = Complex64> {
    (0..k).map(move |j| {
        if j == 0 {
            real(radius)
        } else {
            let z = Complex64::from_polar(radius, TAU * j as f64 / k as f64);
            let snap = |x: f64| {
                if x.abs() <= 4.0 * f64::EPSILON * radius {
                    0.0
                } else {
                    x
                }
            };
            Complex64::new(snap(z.re), snap(z.im))
        }
    })
}

/// Puncture order: 0, infinity, then the remaining points by increasing argument
/// in `[0, 2 pi)` and then modulus.
fn ordered_punctures(mut others: Vec<Complex64>) -> Vec<SpherePoint> {
    let arg = |z: &Complex64| {
        let t = z.arg();
        if t < 0.0 {
            t + TAU
        } else {
            t
        }
    };
    others.sort_by(|x, y| {
        arg(x)
            .total_cmp(&arg(y))
            .then(x.norm().total_cmp(&y.norm()))
    });
    let mut out = vec![SpherePoint::finite(0.0, 0.0), SpherePoint::Infinity];
    out.extend(others.into_iter().map(SpherePoint::Finite));
    out
}

/// `G = rho z (z^k - a^k)`, `dh = (a^k - z^k) / (z (z^k - 1)^2) dz`.
pub fn vase_data(k: u32, a: f64, rho: f64) -> Result<WeierstrassData> {
    validate_vase(k, a)?;
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(Error::Domain(format!("rho must be positive, got {rho}")));
    }
    let ak = real(a.powi(k as i32));
    let g = FactoredMeromorphic::new(real(rho), [Factor::monomial(1), Factor::shifted(k, ak, 1)])?;
    let dh = FactoredMeromorphic::new(
        real(-1.0),
        [
            Factor::shifted(k, ak, 1),
            Factor::monomial(-1),
            Factor::shifted(k, real(1.0), -2),
        ],
    )?;
    WeierstrassData::new(g, dh, ordered_punctures(circle_points(1.0, k).collect()))
}

/// `G = z^(k+1) (z^k - a^k) / (a^k z^k - 1)` and
/// `dh = b^2k z^(k-1) (z^k - a^k)(a^k z^k - 1) / (a^k (z^k - b^k)^2 (b^k z^k - 1)^2) dz`,
/// stored with the reciprocal shifts `z^k - a^-k` and `z^k - b^-k` so `dh` has coefficient 1.
pub fn double_vase_data(k: u32, b: f64, a: f64) -> Result<WeierstrassData> {
    validate_double_vase(k, b)?;
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::Domain(format!("a must be positive, got {a}")));
    }
    let ki = k as i32;
    let ak = a.powi(ki);
    let bk = b.powi(ki);
    let (ak, ak_inv, bk, bk_inv) = (real(ak), real(ak.recip()), real(bk), real(bk.recip()));
    let g = FactoredMeromorphic::new(
        ak.inv(),
        [
            Factor::monomial(ki + 1),
            Factor::shifted(k, ak, 1),
            Factor::shifted(k, ak_inv, -1),
        ],
    )?;
    let dh = FactoredMeromorphic::new(
        real(1.0),
        [
            Factor::monomial(ki - 1),
            Factor::shifted(k, ak, 1),
            Factor::shifted(k, ak_inv, 1),
            Factor::shifted(k, bk, -2),
            Factor::shifted(k, bk_inv, -2),
        ],
    )?;
    let punctures = circle_points(b, k)
        .chain(circle_points(b.recip(), k))
        .collect();
    WeierstrassData::new(g, dh, ordered_punctures(punctures))
}

/// `G = z`, `dh = dz / z`.
pub fn catenoid_data() -> WeierstrassData {
    WeierstrassData::new(
        FactoredMeromorphic::identity(),
        FactoredMeromorphic::new(real(1.0), [Factor::monomial(-1)]).expect("valid"),
        vec![SpherePoint::finite(0.0, 0.0), SpherePoint::Infinity],
    )
    .expect("catenoid data is valid")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Vase,
    DoubleVase,
    Catenoid,
}

impl std::fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FamilyKind::Vase => "vase",
            FamilyKind::DoubleVase => "double_vase",
            FamilyKind::Catenoid => "catenoid",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum FamilyParams {
    Vase(VaseParams),
    DoubleVase(DoubleVaseParams),
    Catenoid,
}

/// Serialisable description sufficient to rebuild the Weierstrass data exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyDescriptor {
    pub family: FamilyKind,
    pub k: Option<u32>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub rho: Option<f64>,
    pub punctures: Vec<SpherePoint>,
}

impl FamilyDescriptor {
    pub fn new(params: &FamilyParams, data: &WeierstrassData) -> Self {
        let (family, k, a, b, rho) = match params {
            FamilyParams::Vase(p) => (FamilyKind::Vase, Some(p.k), Some(p.a), None, Some(p.rho)),
            FamilyParams::DoubleVase(p) => (
                FamilyKind::DoubleVase,
                Some(p.k),
                Some(p.a),
                Some(p.b),
                Some(1.0),
            ),
            FamilyParams::Catenoid => (FamilyKind::Catenoid, None, None, None, None),
        };
        FamilyDescriptor {
            family,
            k,
            a,
            b,
            rho,
            punctures: data.punctures().to_vec(),
        }
    }

    pub fn params(&self) -> Result<FamilyParams> {
        let need = |x: Option<f64>, name: &str| {
            x.ok_or_else(|| Error::Domain(format!("descriptor lacks {name}")))
        };
        Ok(match self.family {
            FamilyKind::Vase => FamilyParams::Vase(VaseParams {
                k: self
                    .k
                    .ok_or_else(|| Error::Domain("descriptor lacks k".into()))?,
                a: need(self.a, "a")?,
                rho: need(self.rho, "rho")?,
            }),
            FamilyKind::DoubleVase => FamilyParams::DoubleVase(DoubleVaseParams {
                k: self
                    .k
                    .ok_or_else(|| Error::Domain("descriptor lacks k".into()))?,
                b: need(self.b, "b")?,
                a: need(self.a, "a")?,
            }),
            FamilyKind::Catenoid => FamilyParams::Catenoid,
        })
    }

    pub fn to_data(&self) -> Result<WeierstrassData> {
        data_for(&self.params()?)
    }
}

/// Weierstrass data for the given parameters, without any solving or gating.
pub fn data_for(params: &FamilyParams) -> Result<WeierstrassData> {
    match params {
        FamilyParams::Vase(p) => vase_data(p.k, p.a, p.rho),
        FamilyParams::DoubleVase(p) => double_vase_data(p.k, p.b, p.a),
        FamilyParams::Catenoid => Ok(catenoid_data()),
    }
}

/// A constructed surface that passed every audit.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyInstance {
    pub data: WeierstrassData,
    pub params: FamilyParams,
    /// Solver record; `None` for the fixture.
    pub provenance: Option<SolveOutcome>,
    pub audit: AuditReport,
    pub periods: PeriodReport,
}

impl FamilyInstance {
    pub fn descriptor(&self) -> FamilyDescriptor {
        FamilyDescriptor::new(&self.params, &self.data)
    }

    pub fn kind(&self) -> FamilyKind {
        match self.params {
            FamilyParams::Vase(_) => FamilyKind::Vase,
            FamilyParams::DoubleVase(_) => FamilyKind::DoubleVase,
            FamilyParams::Catenoid => FamilyKind::Catenoid,
        }
    }
}

/// Counts of each end kind, used to check an instance's end inventory.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndInventory {
    pub planar: usize,
    pub vertical_up: usize,
    pub vertical_down: usize,
    pub nonvertical_up: usize,
    pub nonvertical_down: usize,
}

impl EndInventory {
    pub fn of(audit: &AuditReport) -> Self {
        let mut inv = EndInventory::default();
        for end in &audit.ends {
            match (end.kind, end.log_growth_sign) {
                (EndKind::PlanarHorizontal, _) => inv.planar += 1,
                (EndKind::CatenoidVerticalUp, _) => inv.vertical_up += 1,
                (EndKind::CatenoidVerticalDown, _) => inv.vertical_down += 1,
                (EndKind::CatenoidNonVertical, s) if s > 0 => inv.nonvertical_up += 1,
                (EndKind::CatenoidNonVertical, _) => inv.nonvertical_down += 1,
            }
        }
        inv
    }
}

fn gate(
    data: WeierstrassData,
    params: FamilyParams,
    provenance: Option<SolveOutcome>,
    tol: f64,
    expected: EndInventory,
) -> Result<FamilyInstance> {
    let audit = data.audit_report()?;
    if !audit.regularity_violations.is_empty() {
        return Err(Error::AuditFailure(format!(
            "{} regularity violations",
            audit.regularity_violations.len()
        )));
    }
    if !audit.degree_audit.passed() {
        return Err(Error::AuditFailure(format!(
            "degree audit {:?}",
            audit.degree_audit
        )));
    }
    let found = EndInventory::of(&audit);
    if found != expected {
        return Err(Error::AuditFailure(format!(
            "end inventory {found:?}, expected {expected:?}"
        )));
    }
    let periods = assert_period_closed(&data, tol)?;
    Ok(FamilyInstance {
        data,
        params,
        provenance,
        audit,
        periods,
    })
}

pub fn vase_inventory(k: u32) -> EndInventory {
    EndInventory {
        planar: 1,
        vertical_down: 1,
        nonvertical_up: k as usize,
        ..Default::default()
    }
}

pub fn double_vase_inventory(k: u32) -> EndInventory {
    EndInventory {
        planar: 2,
        nonvertical_up: k as usize,
        nonvertical_down: k as usize,
        ..Default::default()
    }
}

/// The vase of catenoids with `rho` solved from the residue equation.
pub fn make_vase(k: u32, a: f64) -> Result<FamilyInstance> {
    let solved = solve_vase_rho(k, a)?;
    let params = VaseParams {
        k,
        a,
        rho: solved.value,
    };
    gate(
        vase_data(k, a, params.rho)?,
        FamilyParams::Vase(params),
        Some(solved),
        VASE_PERIOD_TOL,
        vase_inventory(k),
    )
}

/// The double vase, with `rho = 1` and `a` solved from the residue equation at `z = b`.
pub fn make_double_vase(k: u32, b: f64) -> Result<FamilyInstance> {
    let solved = solve_double_vase_a(k, b)?;
    let params = DoubleVaseParams {
        k,
        b,
        a: solved.value,
    };
    gate(
        double_vase_data(k, b, params.a)?,
        FamilyParams::DoubleVase(params),
        Some(solved),
        DOUBLE_VASE_PERIOD_TOL,
        double_vase_inventory(k),
    )
}

pub fn make_catenoid_fixture() -> Result<FamilyInstance> {
    gate(
        catenoid_data(),
        FamilyParams::Catenoid,
        None,
        VASE_PERIOD_TOL,
        EndInventory {
            vertical_up: 1,
            vertical_down: 1,
            ..Default::default()
        },
    )
}
