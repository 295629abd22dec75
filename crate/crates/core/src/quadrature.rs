//! Globally adaptive 7/15-point Gauss-Kronrod quadrature for vector-valued
//! complex integrands on `[0, 1]`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Subdivision budget per integral.
pub const MAX_SUBDIVISIONS: usize = 10_000;
/// Absolute target per integral.
pub const ABS_TOL: f64 = 1e-12;
/// Relative floor, against the integral of `|f|`, for integrals too large for `ABS_TOL`.
pub const REL_TOL: f64 = 1e-14;

// Kronrod abscissae on [-1, 1] (positive half, descending); odd indices are the Gauss nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

pub type Vec3c = [Complex64; 3];

const ZERO: Vec3c = [Complex64 { re: 0.0, im: 0.0 }; 3];

fn axpy(acc: &mut Vec3c, w: f64, v: &Vec3c) {
    for (a, x) in acc.iter_mut().zip(v) {
        *a += w * x;
    }
}

fn diff_norm(a: &Vec3c, b: &Vec3c) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: Vec3c,
    error: f64,
    magnitude: f64,
}

fn gauss_kronrod<F>(f: &F, lo: f64, hi: f64) -> Result<Panel>
where
    F: Fn(f64) -> Result<Vec3c>,
{
    let half = 0.5 * (hi - lo);
    let center = 0.5 * (hi + lo);
    let mut kronrod = ZERO;
    let mut gauss = ZERO;
    let mut magnitude = 0.0;
    let mid = f(center)?;
    axpy(&mut kronrod, WGK[7], &mid);
    axpy(&mut gauss, WG[3], &mid);
    magnitude += WGK[7] * mid.iter().map(|c| c.norm()).fold(0.0, f64::max);
    for i in 0..7 {
        let dx = half * XGK[i];
        let left = f(center - dx)?;
        let right = f(center + dx)?;
        for v in [&left, &right] {
            axpy(&mut kronrod, WGK[i], v);
            magnitude += WGK[i] * v.iter().map(|c| c.norm()).fold(0.0, f64::max);
            if i % 2 == 1 {
                axpy(&mut gauss, WG[i / 2], v);
            }
        }
    }
    for v in kronrod.iter_mut().chain(gauss.iter_mut()) {
        *v *= half;
    }
    Ok(Panel {
        lo,
        hi,
        error: diff_norm(&kronrod, &gauss),
        value: kronrod,
        magnitude: magnitude * half.abs(),
    })
}

#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub value: Vec3c,
    pub error: f64,
    pub subdivisions: usize,
}

/// Integrates `f` over `[0, 1]`, bisecting the panel with the largest error
/// until the summed error estimate meets `max(ABS_TOL, REL_TOL * int |f|)`.
pub fn integrate<F>(f: F) -> Result<Quadrature>
where
    F: Fn(f64) -> Result<Vec3c>,
{
    let mut panels = vec![gauss_kronrod(&f, 0.0, 1.0)?];
    let mut subdivisions = 0;
    loop {
        let error: f64 = panels.iter().map(|p| p.error).sum();
        let magnitude: f64 = panels.iter().map(|p| p.magnitude).sum();
        if !(error.is_finite() && magnitude.is_finite()) {
            return Err(Error::QuadratureFailure {
                budget: subdivisions,
                estimate: error,
            });
        }
        if error <= ABS_TOL.max(REL_TOL * magnitude) {
            let mut value = ZERO;
            for p in &panels {
                axpy(&mut value, 1.0, &p.value);
            }
            return Ok(Quadrature {
                value,
                error,
                subdivisions,
            });
        }
        if subdivisions >= MAX_SUBDIVISIONS {
            return Err(Error::QuadratureFailure {
                budget: MAX_SUBDIVISIONS,
                estimate: error,
            });
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.error.total_cmp(&b.1.error))
            .expect("non-empty");
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.lo + p.hi);
        if mid <= p.lo || mid >= p.hi {
            return Err(Error::QuadratureFailure {
                budget: subdivisions,
                estimate: error,
            });
        }
        panels.push(gauss_kronrod(&f, p.lo, mid)?);
        panels.push(gauss_kronrod(&f, mid, p.hi)?);
        subdivisions += 1;
    }
}
