//! Weierstrass data `(G, dh)` on a punctured sphere and the audits run on it.

use nalgebra::Vector3;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::meromorphic::{points_coincide, residue, FactoredMeromorphic, SpherePoint};

/// Gauss map `G`, height differential `dh = dh_coefficient dz`, and the ends.
#[derive(Debug, Clone, PartialEq)]
pub struct WeierstrassData {
    g: FactoredMeromorphic,
    dh: FactoredMeromorphic,
    punctures: Vec<SpherePoint>,
}

/// The three coordinate one-forms, stored through the two products `dh/G` and `G dh`
/// so that removable singularities at zeros of `G` cancel structurally.
#[derive(Debug, Clone, PartialEq)]
pub struct CoordinateForms {
    pub dh_over_g: FactoredMeromorphic,
    pub g_dh: FactoredMeromorphic,
    pub dh: FactoredMeromorphic,
}

impl CoordinateForms {
    /// `(phi1, phi2, phi3) = (1/2 (1/G - G) dh, i/2 (1/G + G) dh, dh)` at `z`.
    pub fn eval(&self, z: Complex64) -> Result<[Complex64; 3]> {
        let p = self.dh_over_g.eval(z)?;
        let q = self.g_dh.eval(z)?;
        let h = self.dh.eval(z)?;
        Ok([0.5 * (p - q), Complex64::new(0.0, 0.5) * (p + q), h])
    }

    pub fn phi1(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.eval(z)?[0])
    }

    pub fn phi2(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.eval(z)?[1])
    }

    pub fn phi3(&self, z: Complex64) -> Result<Complex64> {
        self.dh.eval(z)
    }

    /// Finite poles of any of the three forms.
    pub fn finite_poles(&self) -> Vec<Complex64> {
        let mut out: Vec<Complex64> = Vec::new();
        for f in [&self.dh_over_g, &self.g_dh, &self.dh] {
            for (p, _) in f.finite_poles() {
                if !out.iter().any(|q| points_coincide(*q, p)) {
                    out.push(p);
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EndKind {
    PlanarHorizontal,
    CatenoidVerticalUp,
    CatenoidVerticalDown,
    CatenoidNonVertical,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EndDescriptor {
    pub location: SpherePoint,
    pub kind: EndKind,
    pub limit_normal: [f64; 3],
    /// Direction the height escapes to near the end: +1 up, -1 down, 0 for planar ends.
    pub log_growth_sign: i8,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegularityViolation {
    pub point: SpherePoint,
    pub g_order: i32,
    pub dh_order: i32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeAudit {
    pub g_zeros: i32,
    pub g_poles: i32,
    pub dh_zeros: i32,
    pub dh_poles: i32,
}

impl DegreeAudit {
    /// Zeros of `G` balance its poles; `dh` has two more poles than zeros.
    pub fn passed(&self) -> bool {
        self.g_zeros == self.g_poles && self.dh_zeros == self.dh_poles - 2
    }
}

/// Ends, degree counts and regularity violations, as written to verification reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub ends: Vec<EndDescriptor>,
    pub degree_audit: DegreeAudit,
    pub regularity_violations: Vec<RegularityViolation>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.degree_audit.passed() && self.regularity_violations.is_empty()
    }
}

impl WeierstrassData {
    pub fn new(
        g: FactoredMeromorphic,
        dh: FactoredMeromorphic,
        punctures: Vec<SpherePoint>,
    ) -> Result<Self> {
        for (i, p) in punctures.iter().enumerate() {
            if punctures[..i].iter().any(|q| q.approx_eq(p)) {
                return Err(Error::Domain(format!("puncture {p} listed twice")));
            }
        }
        let data = WeierstrassData { g, dh, punctures };
        for (p, _) in data.dh.finite_poles() {
            if !data.is_puncture(SpherePoint::Finite(p)) {
                return Err(Error::Domain(format!(
                    "dh has a pole at {p} that is not a puncture"
                )));
            }
        }
        if data.dh_order_at(SpherePoint::Infinity) < 0 && !data.is_puncture(SpherePoint::Infinity) {
            return Err(Error::Domain(
                "dh has a pole at infinity that is not a puncture".into(),
            ));
        }
        Ok(data)
    }

    pub fn g(&self) -> &FactoredMeromorphic {
        &self.g
    }

    pub fn dh(&self) -> &FactoredMeromorphic {
        &self.dh
    }

    pub fn punctures(&self) -> &[SpherePoint] {
        &self.punctures
    }

    pub fn finite_punctures(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.punctures.iter().filter_map(|p| p.as_finite())
    }

    pub fn is_puncture(&self, p: SpherePoint) -> bool {
        self.punctures.iter().any(|q| q.approx_eq(&p))
    }

    /// Order of `dh` as a one-form; at infinity the chart `dz = -dw/w^2` subtracts two.
    pub fn dh_order_at(&self, p: SpherePoint) -> i32 {
        match p {
            SpherePoint::Infinity => self.dh.order_at(p) - 2,
            SpherePoint::Finite(_) => self.dh.order_at(p),
        }
    }

    pub fn coordinate_forms(&self) -> Result<CoordinateForms> {
        Ok(CoordinateForms {
            dh_over_g: self.dh.mul(&self.g.recip()?)?,
            g_dh: self.g.mul(&self.dh)?,
            dh: self.dh.clone(),
        })
    }

    /// Finite points where `G` or `dh` has a zero or pole, merged.
    fn finite_divisor_support(&self) -> Vec<Complex64> {
        let mut points: Vec<Complex64> = Vec::new();
        for (p, _) in self
            .g
            .finite_divisor()
            .into_iter()
            .chain(self.dh.finite_divisor())
        {
            if !points.iter().any(|q| points_coincide(*q, p)) {
                points.push(p);
            }
        }
        points
    }

    /// Points off the punctures where the zero/pole order of `G` does not match
    /// the zero order of `dh`.
    pub fn regularity_check(&self) -> Vec<RegularityViolation> {
        let candidates = self
            .finite_divisor_support()
            .into_iter()
            .map(SpherePoint::Finite)
            .chain(std::iter::once(SpherePoint::Infinity));
        candidates
            .filter(|p| !self.is_puncture(*p))
            .filter_map(|p| {
                let g_order = self.g.order_at(p);
                let dh_order = self.dh_order_at(p);
                (dh_order != g_order.abs()).then_some(RegularityViolation {
                    point: p,
                    g_order,
                    dh_order,
                })
            })
            .collect()
    }

    pub fn degree_audit(&self) -> DegreeAudit {
        let mut audit = DegreeAudit {
            g_zeros: 0,
            g_poles: 0,
            dh_zeros: 0,
            dh_poles: 0,
        };
        let points = self
            .finite_divisor_support()
            .into_iter()
            .map(SpherePoint::Finite)
            .chain(std::iter::once(SpherePoint::Infinity));
        for p in points {
            let g = self.g.order_at(p);
            let h = self.dh_order_at(p);
            audit.g_zeros += g.max(0);
            audit.g_poles += (-g).max(0);
            audit.dh_zeros += h.max(0);
            audit.dh_poles += (-h).max(0);
        }
        audit
    }

    /// Inverse stereographic image of `G(z)`; `G = 0` is the south pole.
    pub fn gauss_normal(&self, z: Complex64) -> Result<Vector3<f64>> {
        if self.g.order_at(SpherePoint::Finite(z)) < 0 {
            return Ok(Vector3::new(0.0, 0.0, 1.0));
        }
        Ok(stereographic(self.g.eval(z)?))
    }

    /// `1/2 (|G| + 1/|G|) |dh|`, evaluated as `1/2 (|G dh| + |dh/G|)`.
    pub fn conformal_factor(&self, z: Complex64) -> Result<f64> {
        let forms = self.coordinate_forms()?;
        conformal_factor_with(&forms, z)
    }

    /// Classifies the end at `p` from the order pair `(ord G, ord dh)`.
    pub fn classify_end(&self, p: SpherePoint) -> Result<EndDescriptor> {
        if !self.is_puncture(p) {
            return Err(Error::Domain(format!("{p} is not a puncture")));
        }
        let g_order = self.g.order_at(p);
        let dh_order = self.dh_order_at(p);
        let vertical = |g_order: i32| {
            if g_order > 0 {
                [0.0, 0.0, -1.0]
            } else {
                [0.0, 0.0, 1.0]
            }
        };
        let descriptor = match (g_order, dh_order) {
            (g, h) if h >= 1 && g.abs() == h + 2 => EndDescriptor {
                location: p,
                kind: EndKind::PlanarHorizontal,
                limit_normal: vertical(g),
                log_growth_sign: 0,
            },
            (g, -1) if g.abs() == 1 => EndDescriptor {
                location: p,
                kind: if g > 0 {
                    EndKind::CatenoidVerticalDown
                } else {
                    EndKind::CatenoidVerticalUp
                },
                limit_normal: vertical(g),
                log_growth_sign: self.height_growth_sign(p)?,
            },
            (0, -2) => {
                let g_value = match p {
                    SpherePoint::Finite(z) => self.g.eval(z)?,
                    SpherePoint::Infinity => self
                        .g
                        .value_at_infinity()
                        .expect("order 0 at infinity has a finite limit"),
                };
                let n = stereographic(g_value);
                EndDescriptor {
                    location: p,
                    kind: EndKind::CatenoidNonVertical,
                    limit_normal: [n.x, n.y, n.z],
                    log_growth_sign: self.height_growth_sign(p)?,
                }
            }
            (g_order, dh_order) => {
                return Err(Error::UnrecognizedEndType {
                    location: p,
                    g_order,
                    dh_order,
                })
            }
        };
        Ok(descriptor)
    }

    /// Near `p`, `x3 ~ Re(Res_p(dh) log(z - p))`, so a positive residue sends the
    /// height to minus infinity. The same holds at infinity with the usual sign of `Res_inf`.
    fn height_growth_sign(&self, p: SpherePoint) -> Result<i8> {
        let r = residue(&self.dh, p)?;
        let scale = r.norm().max(f64::MIN_POSITIVE);
        Ok(if r.re.abs() <= 1e-12 * scale {
            0
        } else if r.re > 0.0 {
            -1
        } else {
            1
        })
    }

    pub fn ends(&self) -> Result<Vec<EndDescriptor>> {
        self.punctures
            .iter()
            .map(|p| self.classify_end(*p))
            .collect()
    }

    pub fn audit_report(&self) -> Result<AuditReport> {
        Ok(AuditReport {
            ends: self.ends()?,
            degree_audit: self.degree_audit(),
            regularity_violations: self.regularity_check(),
        })
    }
}

pub(crate) fn conformal_factor_with(forms: &CoordinateForms, z: Complex64) -> Result<f64> {
    Ok(0.5 * (forms.g_dh.eval(z)?.norm() + forms.dh_over_g.eval(z)?.norm()))
}

/// `(2 Re g, 2 Im g, |g|^2 - 1) / (|g|^2 + 1)`.
pub fn stereographic(g: Complex64) -> Vector3<f64> {
    let m = g.norm_sqr();
    if !m.is_finite() || m > 1e300 {
        return Vector3::new(0.0, 0.0, 1.0);
    }
    let d = m + 1.0;
    Vector3::new(2.0 * g.re / d, 2.0 * g.im / d, (m - 1.0) / d)
}
