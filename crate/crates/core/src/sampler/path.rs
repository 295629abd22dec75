use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Detour circles are the exclusion circles inflated by this factor.
const DETOUR_INFLATION: f64 = 1.1;
const JOIN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PathPiece {
    Line {
        from: Complex64,
        to: Complex64,
    },
    /// `center + radius e^{i(start_angle + t sweep)}`, `t` in `[0, 1]`.
    Arc {
        center: Complex64,
        radius: f64,
        start_angle: f64,
        sweep: f64,
    },
}

impl PathPiece {
    pub fn point(&self, t: f64) -> Complex64 {
        match *self {
            PathPiece::Line { from, to } => from + (to - from) * t,
            PathPiece::Arc {
                center,
                radius,
                start_angle,
                sweep,
            } => center + Complex64::from_polar(radius, start_angle + t * sweep),
        }
    }

    pub fn derivative(&self, t: f64) -> Complex64 {
        match *self {
            PathPiece::Line { from, to } => to - from,
            PathPiece::Arc {
                radius,
                start_angle,
                sweep,
                ..
            } => {
                Complex64::new(0.0, sweep) * Complex64::from_polar(radius, start_angle + t * sweep)
            }
        }
    }

    pub fn start(&self) -> Complex64 {
        self.point(0.0)
    }

    pub fn end(&self) -> Complex64 {
        match *self {
            PathPiece::Line { to, .. } => to,
            PathPiece::Arc { .. } => self.point(1.0),
        }
    }

    /// Smallest distance from `c` to the piece.
    pub fn distance_to(&self, c: Complex64) -> f64 {
        match *self {
            PathPiece::Line { from, to } => segment_distance(from, to, c),
            PathPiece::Arc {
                center,
                radius,
                start_angle,
                sweep,
            } => {
                let rel = c - center;
                let mut best = (self.start() - c).norm().min((self.end() - c).norm());
                if rel.norm() > 0.0 {
                    // the closest circle point lies along the ray through c
                    let t = angle_param(rel.arg(), start_angle, sweep);
                    if let Some(t) = t {
                        best = best.min((self.point(t) - c).norm());
                    }
                } else {
                    best = radius;
                }
                best
            }
        }
    }
}

fn angle_param(angle: f64, start: f64, sweep: f64) -> Option<f64> {
    if sweep == 0.0 {
        return None;
    }
    let mut d = (angle - start) * sweep.signum();
    d = d.rem_euclid(TAU);
    let t = d / sweep.abs();
    (t <= 1.0).then_some(t)
}

fn segment_distance(a: Complex64, b: Complex64, c: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (c - a).norm();
    }
    let t = (((c - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    (a + ab * t - c).norm()
}

/// A chain of line segments and circular arcs in the parameter plane.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegrationPath {
    start: Complex64,
    pieces: Vec<PathPiece>,
}

impl IntegrationPath {
    /// The empty path at `start`.
    pub fn at(start: Complex64) -> Self {
        IntegrationPath {
            start,
            pieces: Vec::new(),
        }
    }

    pub fn from_pieces(start: Complex64, pieces: Vec<PathPiece>) -> Result<Self> {
        let mut path = IntegrationPath::at(start);
        for p in pieces {
            path.push(p)?;
        }
        Ok(path)
    }

    fn push(&mut self, piece: PathPiece) -> Result<()> {
        let end = self.end();
        let gap = (piece.start() - end).norm();
        if gap > JOIN_TOL * end.norm().max(1.0) {
            return Err(Error::Domain(format!(
                "path piece starting at {} does not continue from {}",
                piece.start(),
                end
            )));
        }
        self.pieces.push(piece);
        Ok(())
    }

    pub fn line_to(mut self, to: Complex64) -> Self {
        let from = self.end();
        if from != to {
            self.pieces.push(PathPiece::Line { from, to });
        }
        self
    }

    /// Full counter-clockwise (positive `turns`) or clockwise loops around `center`,
    /// starting and ending at the current end point.
    pub fn loop_around(mut self, center: Complex64, turns: i32) -> Self {
        let from = self.end();
        let rel = from - center;
        self.pieces.push(PathPiece::Arc {
            center,
            radius: rel.norm(),
            start_angle: rel.arg(),
            sweep: TAU * turns as f64,
        });
        self
    }

    pub fn start(&self) -> Complex64 {
        self.start
    }

    pub fn end(&self) -> Complex64 {
        self.pieces.last().map_or(self.start, |p| p.end())
    }

    pub fn pieces(&self) -> &[PathPiece] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Smallest distance from `c` to the path.
    pub fn distance_to(&self, c: Complex64) -> f64 {
        self.pieces
            .iter()
            .map(|p| p.distance_to(c))
            .fold((self.start - c).norm(), f64::min)
    }
}

/// A disk the integration paths must stay out of.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exclusion {
    pub center: Complex64,
    pub radius: f64,
}

/// Straight segment from `z0` to `z`, detouring around each exclusion disk it
/// crosses along an arc of the inflated circle.
pub fn route(exclusions: &[Exclusion], z0: Complex64, z: Complex64) -> Result<IntegrationPath> {
    for e in exclusions {
        for (p, name) in [(z0, "start"), (z, "end")] {
            if (p - e.center).norm() <= e.radius {
                return Err(Error::Unroutable {
                    from: z0,
                    to: z,
                    reason: format!("{name} point lies within {} of {}", e.radius, e.center),
                });
            }
        }
    }
    let dir = z - z0;
    let len = dir.norm();
    if len == 0.0 {
        return Ok(IntegrationPath::at(z0));
    }
    let unit = dir / len;

    // (entry, exit) parameters along the segment for each disk it crosses
    let mut detours: Vec<(f64, f64, Exclusion)> = Vec::new();
    for e in exclusions {
        if segment_distance(z0, z, e.center) >= e.radius {
            continue;
        }
        let radius = (DETOUR_INFLATION * e.radius)
            .min((z0 - e.center).norm())
            .min((z - e.center).norm());
        // |z0 + s unit - c| = radius
        let rel = z0 - e.center;
        let proj = (rel * unit.conj()).re;
        let disc = proj * proj - (rel.norm_sqr() - radius * radius);
        let root = disc.max(0.0).sqrt();
        let s_in = (-proj - root).clamp(0.0, len);
        let s_out = (-proj + root).clamp(0.0, len);
        detours.push((
            s_in,
            s_out,
            Exclusion {
                center: e.center,
                radius,
            },
        ));
    }
    detours.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut path = IntegrationPath::at(z0);
    let mut cursor = 0.0;
    for (s_in, s_out, circle) in &detours {
        if *s_in < cursor {
            return Err(Error::Unroutable {
                from: z0,
                to: z,
                reason: "overlapping exclusion disks on the segment".into(),
            });
        }
        let entry = z0 + unit * *s_in;
        let exit = z0 + unit * *s_out;
        path = path.line_to(entry);
        let a0 = (entry - circle.center).arg();
        let a1 = (exit - circle.center).arg();
        // minor arc, which bulges away from the center; a chord through the
        // center is passed counter-clockwise
        let mut sweep = (a1 - a0).rem_euclid(TAU);
        if sweep > PI + 1e-12 {
            sweep -= TAU;
        }
        path.pieces.push(PathPiece::Arc {
            center: circle.center,
            radius: circle.radius,
            start_angle: a0,
            sweep,
        });
        cursor = *s_out;
    }
    path = path.line_to(z);

    for e in exclusions {
        if path.distance_to(e.center) < e.radius * (1.0 - 1e-9) {
            return Err(Error::Unroutable {
                from: z0,
                to: z,
                reason: format!("detour could not clear the disk around {}", e.center),
            });
        }
    }
    Ok(path)
}
