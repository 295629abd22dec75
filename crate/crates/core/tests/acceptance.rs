//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

mod common;

use std::f64::consts::TAU;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use catvase::families::{
    double_vase_inventory, make_double_vase, make_vase, vase_inventory, EndInventory, FamilyParams,
};
use catvase::period::{
    double_vase_residue_at_b, double_vase_residue_closed_form, period_report, solve_vase_rho,
    vase_residue_contour, vase_rho_closed_form, DoubleVaseParams, VaseParams,
};
use catvase::sampler::diagnostics::{summarize, tangent_checks};
use catvase::sampler::{
    estimate_mean_curvature, median_abs, sample_instance, DomainSpec, Immersion, IntegrationPath,
};
use catvase::weierstrass::EndKind;
use catvase::{make_catenoid_fixture, FamilyInstance, SpherePoint};
use nalgebra::Vector2;
use num_complex::Complex64;
use rand::{rngs::StdRng, Rng, SeedableRng};

use common::*;

const VASE_K: [u32; 7] = [2, 3, 4, 5, 6, 7, 8];
const VASE_A: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];
const DV_K: [u32; 5] = [2, 3, 4, 5, 6];
const DV_B: [f64; 4] = [0.1, 0.25, 0.5, 0.75];

type Outcome = Result<(bool, String), String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn vase_grid() -> Result<Vec<FamilyInstance>, String> {
    VASE_K
        .iter()
        .flat_map(|&k| VASE_A.iter().map(move |&a| make_vase(k, a).map_err(err)))
        .collect()
}

fn double_vase_grid() -> Result<Vec<FamilyInstance>, String> {
    DV_K.iter()
        .flat_map(|&k| {
            DV_B.iter()
                .map(move |&b| make_double_vase(k, b).map_err(err))
        })
        .collect()
}

fn label(inst: &FamilyInstance) -> String {
    match inst.params {
        FamilyParams::Vase(p) => format!("vase k={} a={}", p.k, p.a),
        FamilyParams::DoubleVase(p) => format!("double_vase k={} b={}", p.k, p.b),
        FamilyParams::Catenoid => "catenoid".into(),
    }
}

fn c1_double_vase_parameter() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_catvase");
    let start = Instant::now();
    let out = Command::new(exe)
        .args([
            "solve",
            "--family",
            "double_vase",
            "--k",
            "6",
            "--b",
            "0.25",
        ])
        .output()
        .map_err(err)?;
    let elapsed = start.elapsed();
    if !out.status.success() {
        return Ok((
            false,
            format!(
                "exit {:?}: {}",
                out.status.code(),
                String::from_utf8_lossy(&out.stderr)
            ),
        ));
    }
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(err)?;
    let a = v["result"]["value"].as_f64().ok_or("no value in report")?;
    let ok = (a - 3.97667).abs() <= 5e-6 && elapsed < Duration::from_secs(1);
    Ok((
        ok,
        format!("a = {a:.7} (target 3.97667 +- 5e-6), {elapsed:.2?} (< 1 s)"),
    ))
}

fn c2_vase_closed_form() -> Outcome {
    let start = Instant::now();
    let mut worst_rel: f64 = 0.0;
    let mut worst_residual: f64 = 0.0;
    for k in VASE_K {
        for a in VASE_A {
            let s = solve_vase_rho(k, a).map_err(err)?;
            let closed = vase_rho_closed_form(k, a);
            worst_rel = worst_rel.max((closed - s.numeric_root).abs() / closed);
            let r = vase_residue_contour(&VaseParams { k, a, rho: closed }).map_err(err)?;
            worst_residual = worst_residual.max(r.abs());
        }
    }
    let elapsed = start.elapsed();
    let ok = worst_rel < 1e-10 && worst_residual < 1e-9 && elapsed < Duration::from_secs(10);
    Ok((
        ok,
        format!(
            "35 cells: max rel root gap {worst_rel:.2e} (< 1e-10), max contour residual {worst_residual:.2e} (< 1e-9), {elapsed:.2?} (< 10 s)"
        ),
    ))
}

fn c3_double_vase_closed_form() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut worst_oracle: f64 = 0.0;
    let mut printed_sign_worst: f64 = f64::INFINITY;
    let mut cells = 0;
    for k in DV_K {
        for b in DV_B {
            let solved = make_double_vase(k, b).map_err(err)?;
            let FamilyParams::DoubleVase(p) = solved.params else {
                unreachable!()
            };
            for a in [0.5 * p.a, p.a, 2.0 * p.a] {
                let params = DoubleVaseParams { k, b, a };
                let check = double_vase_residue_at_b(&params).map_err(err)?;
                worst = worst.max(check.relative_difference);

                // the test-side oracle: trapezoid on the expanded data
                let w = catvase::families::double_vase_data(k, b, a).map_err(err)?;
                let forms = w.coordinate_forms().map_err(err)?;
                let bz = Complex64::new(b, 0.0);
                let spacing = 2.0 * b * (std::f64::consts::PI / k as f64).sin();
                let radius = 0.5 * spacing.min(b).min(1.0 / b - b);
                let rp =
                    trapezoid_residue(|z| expanded_eval(&forms.dh_over_g, z), bz, radius, 8192);
                let rq = trapezoid_residue(|z| expanded_eval(&forms.g_dh, z), bz, radius, 8192);
                let scale = rp.norm() + rq.norm();
                let closed = double_vase_residue_closed_form(&params);
                let oracle = (rp + rq).re;
                let denom = closed.abs().max(oracle.abs()).max(scale);
                worst_oracle = worst_oracle.max((closed - oracle).abs() / denom);
                // the expression with its numerator sign as usually printed; away from the
                // root the residue is far from zero, so the flip is a visible disagreement
                if a != p.a {
                    printed_sign_worst = printed_sign_worst
                        .min((-closed - oracle).abs() / closed.abs().max(oracle.abs()));
                }
                cells += 1;
            }
        }
    }
    let ok = worst < 1e-8 && worst_oracle < 1e-8;
    Ok((
        ok,
        format!(
            "{cells} cells: max rel gap {worst:.2e} vs contour route, {worst_oracle:.2e} vs \
             independent trapezoid (< 1e-8); sign erratum: the expression with the opposite \
             overall sign differs by at least {printed_sign_worst:.2} relative (oracle adopted)"
        ),
    ))
}

fn c4_period_closure() -> Outcome {
    let mut instances = vase_grid()?;
    instances.extend(double_vase_grid()?);
    let mut worst_defect: f64 = 0.0;
    let mut worst_path: f64 = 0.0;
    let mut worst_label = String::new();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut paths = 0;
    for inst in &instances {
        let report = period_report(&inst.data, 1e-8).map_err(err)?;
        worst_defect = worst_defect.max(report.max_defect());
        let imm = Immersion::new(&inst.data, None).map_err(err)?;
        let domain = DomainSpec::default_for(&inst.params);
        let z0 = domain.base_point;
        let mut record = |d: f64, what: &str| {
            if d > worst_path {
                worst_path = d;
                worst_label = format!("{} ({what})", label(inst));
            }
        };
        // loops round each finite puncture, then round the origin enclosing every ring
        for e in imm.exclusions() {
            let near = e.center + Complex64::new(3.0 * e.radius, 0.0);
            let to_near = imm.plan(z0, near).map_err(err)?;
            let wound = to_near.clone().loop_around(e.center, 1);
            record(
                imm.path_discrepancy(&wound, &to_near).map_err(err)?,
                "loop at puncture",
            );
            let twice = to_near.clone().loop_around(e.center, -2);
            record(
                imm.path_discrepancy(&twice, &to_near).map_err(err)?,
                "double loop",
            );
            paths += 2;
        }
        let outer = 1.5 * domain.r_max;
        let to_outer = imm.plan(z0, Complex64::new(outer, 0.0)).map_err(err)?;
        let around = to_outer.clone().loop_around(Complex64::new(0.0, 0.0), 1);
        record(
            imm.path_discrepancy(&around, &to_outer).map_err(err)?,
            "loop enclosing all",
        );
        paths += 1;
        // random endpoint pairs joined directly and through a random waypoint
        let mut drawn = 0;
        while drawn < 20 {
            let mut sample = || {
                let r = domain.r_min * (domain.r_max / domain.r_min).powf(rng.random::<f64>());
                Complex64::from_polar(r, TAU * rng.random::<f64>())
            };
            let (p, q, via) = (sample(), sample(), sample());
            if ![p, q, via].iter().all(|&z| imm.is_admissible(z)) {
                continue;
            }
            let direct = imm.plan(p, q).map_err(err)?;
            let first = imm.plan(p, via).map_err(err)?;
            let second = imm.plan(via, q).map_err(err)?;
            let mut pieces = first.pieces().to_vec();
            pieces.extend_from_slice(second.pieces());
            let detour = IntegrationPath::from_pieces(p, pieces).map_err(err)?;
            record(
                imm.path_discrepancy(&direct, &detour).map_err(err)?,
                "random pair",
            );
            drawn += 1;
            paths += 1;
        }
    }
    let ok = worst_defect <= 1e-8 && worst_path < 1e-8;
    Ok((
        ok,
        format!(
            "{} instances: max period defect {worst_defect:.2e} (<= 1e-8); {paths} path pairs, \
             max discrepancy {worst_path:.2e} (< 1e-8) at {worst_label}",
            instances.len()
        ),
    ))
}

fn c5_end_inventory() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    let on_circle = |p: &SpherePoint, r: f64| {
        p.as_finite()
            .is_some_and(|z| (z.norm() - r).abs() < 1e-9 * r.max(1.0))
    };
    for inst in vase_grid()? {
        let FamilyParams::Vase(p) = inst.params else {
            unreachable!()
        };
        let mut ok = EndInventory::of(&inst.audit) == vase_inventory(p.k);
        for end in &inst.audit.ends {
            ok &= match end.kind {
                EndKind::PlanarHorizontal => end.location.is_infinity(),
                EndKind::CatenoidVerticalDown => {
                    end.location.as_finite() == Some(Complex64::new(0.0, 0.0))
                }
                EndKind::CatenoidNonVertical => {
                    on_circle(&end.location, 1.0)
                        && end
                            .location
                            .as_finite()
                            .is_some_and(|z| (z.powu(p.k) - 1.0).norm() < 1e-9)
                }
                EndKind::CatenoidVerticalUp => false,
            };
        }
        checked += 1;
        if !ok {
            failures.push(label(&inst));
        }
    }
    for inst in double_vase_grid()? {
        let FamilyParams::DoubleVase(p) = inst.params else {
            unreachable!()
        };
        let mut ok = EndInventory::of(&inst.audit) == double_vase_inventory(p.k);
        let (mut inner, mut outer) = (0, 0);
        for end in &inst.audit.ends {
            match end.kind {
                EndKind::PlanarHorizontal => {
                    ok &= end.location.is_infinity()
                        || end.location.as_finite() == Some(Complex64::new(0.0, 0.0))
                }
                EndKind::CatenoidNonVertical => {
                    if on_circle(&end.location, p.b) {
                        inner += 1;
                    } else if on_circle(&end.location, 1.0 / p.b) {
                        outer += 1;
                    } else {
                        ok = false;
                    }
                }
                _ => ok = false,
            }
        }
        ok &= inner == p.k && outer == p.k;
        checked += 1;
        if !ok {
            failures.push(label(&inst));
        }
    }
    Ok((
        failures.is_empty(),
        format!("{checked} instances classified; mismatches: {failures:?}"),
    ))
}

fn c6_catenoid_identity() -> Outcome {
    let inst = make_catenoid_fixture().map_err(err)?;
    let domain = DomainSpec::default_for(&inst.params).with_resolution(64, 32);
    let mesh = sample_instance(&inst, &domain).map_err(err)?;
    let imm = Immersion::new(&inst.data, None).map_err(err)?;
    // three points of the unit circle lie on the waist circle x3 = c3
    let waist: Vec<_> = [0.3, 2.2, 4.1]
        .iter()
        .map(|&t| imm.displacement(domain.base_point, Complex64::from_polar(1.0, t)))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let c12 = circle_center([0, 1, 2].map(|i| Vector2::new(waist[i].x, waist[i].y)));
    let c3 = waist.iter().map(|x| x.z).sum::<f64>() / 3.0;
    let worst = mesh
        .vertices
        .iter()
        .map(|v| {
            let [x1, x2, x3] = v.position;
            ((x1 - c12.x).powi(2) + (x2 - c12.y).powi(2) - (x3 - c3).cosh().powi(2)).abs()
        })
        .fold(0.0, f64::max);
    Ok((
        worst < 1e-6,
        format!(
            "{} vertices, max residual {worst:.2e} (< 1e-6)",
            mesh.vertices.len()
        ),
    ))
}

fn test_instances() -> Result<Vec<FamilyInstance>, String> {
    Ok(vec![
        make_catenoid_fixture().map_err(err)?,
        make_vase(2, 0.5).map_err(err)?,
        make_double_vase(2, 0.5).map_err(err)?,
    ])
}

fn c7_minimality() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for inst in test_instances()? {
        let base = DomainSpec::default_for(&inst.params);
        let median = |n, m| -> Result<f64, String> {
            let mesh = sample_instance(&inst, &base.with_resolution(n, m)).map_err(err)?;
            median_abs(&estimate_mean_curvature(&mesh).map_err(err)?).ok_or("no interior".into())
        };
        let (coarse, fine) = (median(64, 32)?, median(128, 64)?);
        let ratio = coarse / fine;
        ok &= ratio >= 3.0 && fine < 1e-2;
        parts.push(format!(
            "{} {coarse:.2e} -> {fine:.2e} (x{ratio:.2})",
            label(&inst)
        ));
    }
    Ok((
        ok,
        format!(
            "median |H| 64x32 -> 128x64, need x3 and < 1e-2: {}",
            parts.join("; ")
        ),
    ))
}

fn c8_conformality() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for inst in test_instances()? {
        let domain = DomainSpec::default_for(&inst.params).with_resolution(64, 32);
        let mesh = sample_instance(&inst, &domain).map_err(err)?;
        let s = summarize(&tangent_checks(&inst.data, &mesh).map_err(err)?);
        ok &= s.nodes > 0
            && s.max_isometry_defect < 1e-4
            && s.max_orthogonality_defect < 1e-4
            && s.max_normal_angle < 1e-3;
        parts.push(format!(
            "{} ({} nodes) iso {:.1e} orth {:.1e} normal {:.1e}",
            label(&inst),
            s.nodes,
            s.max_isometry_defect,
            s.max_orthogonality_defect,
            s.max_normal_angle
        ));
    }
    Ok((
        ok,
        format!("limits 1e-4 / 1e-4 / 1e-3 rad: {}", parts.join("; ")),
    ))
}

fn c9_symmetry() -> Outcome {
    let inst = make_vase(3, 0.4).map_err(err)?;
    let domain = DomainSpec::default_for(&inst.params).with_resolution(96, 32);
    let mesh = sample_instance(&inst, &domain).map_err(err)?;
    let pts = centered(&positions(&mesh));
    let rotation = hausdorff(&pts, &rotate_about_vertical(&pts, TAU / 3.0));
    let mirrored: Vec<_> = pts
        .iter()
        .map(|p| nalgebra::Vector3::new(p.x, -p.y, p.z))
        .collect();
    let reflection = hausdorff(&pts, &mirrored);
    let size = pts.iter().map(|p| p.norm()).fold(0.0, f64::max);
    Ok((
        rotation < 1e-7 && reflection < 1e-7,
        format!(
            "vase k=3 a=0.4, {} vertices (extent {size:.1}): rotation {rotation:.2e}, \
             reflection {reflection:.2e} (< 1e-7)",
            pts.len()
        ),
    ))
}

fn c10_residue_sum() -> Outcome {
    let mut instances = vase_grid()?;
    instances.extend(double_vase_grid()?);
    instances.push(make_catenoid_fixture().map_err(err)?);
    let mut worst: f64 = 0.0;
    let mut worst_abs: f64 = 0.0;
    let mut worst_label = String::new();
    for inst in &instances {
        let forms = inst.data.coordinate_forms().map_err(err)?;
        let poles = forms.finite_poles();
        let residues = |f: &catvase::FactoredMeromorphic| -> Result<Vec<Complex64>, String> {
            let mut r: Vec<Complex64> = poles
                .iter()
                .map(|&p| catvase::meromorphic::residue(f, SpherePoint::Finite(p)))
                .collect::<Result<_, _>>()
                .map_err(err)?;
            r.push(catvase::meromorphic::residue(f, SpherePoint::Infinity).map_err(err)?);
            Ok(r)
        };
        let rp = residues(&forms.dh_over_g)?;
        let rq = residues(&forms.g_dh)?;
        let rh = residues(&forms.dh)?;
        let phi: [Vec<Complex64>; 3] = [
            rp.iter().zip(&rq).map(|(p, q)| 0.5 * (p - q)).collect(),
            rp.iter()
                .zip(&rq)
                .map(|(p, q)| Complex64::new(0.0, 0.5) * (p + q))
                .collect(),
            rh,
        ];
        for r in &phi {
            let sum: Complex64 = r.iter().sum();
            let scale = r.iter().map(|z| z.norm()).fold(1.0, f64::max);
            worst_abs = worst_abs.max(sum.norm());
            if sum.norm() / scale > worst {
                worst = sum.norm() / scale;
                worst_label = label(inst);
            }
        }
    }
    Ok((
        worst < 1e-10,
        format!(
            "{} instances x 3 forms: max |sum| / max(1, max |res|) = {worst:.2e} (< 1e-10) at \
             {worst_label}; max unscaled |sum| {worst_abs:.2e}",
            instances.len()
        ),
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("double vase parameter value", c1_double_vase_parameter),
        ("vase closed form vs numeric root", c2_vase_closed_form),
        (
            "double vase residue expression vs contour oracle",
            c3_double_vase_closed_form,
        ),
        ("period closure and path independence", c4_period_closure),
        ("end inventory", c5_end_inventory),
        ("catenoid implicit equation", c6_catenoid_identity),
        ("discrete minimality under refinement", c7_minimality),
        ("conformality and normal consistency", c8_conformality),
        ("rotational and reflection symmetry", c9_symmetry),
        ("global residue theorem", c10_residue_sum),
    ];
    let wanted: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        if !wanted.is_empty() && !wanted.iter().any(|w| name.contains(w.as_str())) {
            continue;
        }
        let (ok, detail) = match run() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        println!(
            "{} criterion {:>2} {name}: {detail}",
            if ok { "PASS" } else { "FAIL" },
            i + 1
        );
        failed += usize::from(!ok);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
