use anyhow::Result;
use isowedge::projection::PavaProjector;
use isowedge::{
    check_isotone_wedge, check_isotone_wedge_intrinsic, decompose, is_generating, is_pointed, pava_project,
    polar_generators, sample_isotonicity_with, verify_projection, Error, GeneratedWedge, ProjectorRegistry, Tolerance,
    Vector, Verdict,
};
use serde_json::{json, Value};

use crate::input::{check_dims, WedgeSpecFile};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_INAPPLICABLE: u8 = 3;

pub struct Outcome {
    pub exit_code: u8,
    pub results: Value,
    pub summary: Vec<String>,
}

fn default_method(spec: &WedgeSpecFile) -> &'static str {
    if spec.is_monotone() {
        PavaProjector::NAME
    } else {
        "decompose"
    }
}

pub fn project(spec: &WedgeSpecFile, points: &[Vector], method: Option<&str>, tol: &Tolerance) -> Result<Outcome> {
    let wedge = spec.to_wedge()?;
    check_dims(points, spec.ambient_dim())?;
    let method = method.unwrap_or(default_method(spec));
    let projector = ProjectorRegistry::default().build(method, &wedge, tol)?;

    let mut entries = Vec::with_capacity(points.len());
    let mut summary = Vec::new();
    let mut failures = 0;
    for (i, x) in points.iter().enumerate() {
        match projector.project(x) {
            Ok(r) => {
                failures += !r.certificate.passed as usize;
                summary.push(format!(
                    "point {i}: {} -> {}  (max <r,g> {:.2e}, <r,p> {:.2e})",
                    x, r.point, r.certificate.max_inner_generator, r.certificate.complementarity
                ));
                entries.push(json!({ "input": x, "projection": r }));
            }
            Err(e @ Error::NoPassingFace { .. }) => {
                failures += 1;
                summary.push(format!("point {i}: {x} -> certificate failure: {e}"));
                entries.push(json!({ "input": x, "error": e.to_string() }));
            }
            Err(e) => return Err(e.into()),
        }
    }
    summary.push(format!(
        "{} of {} projections certified (method {method})",
        points.len() - failures,
        points.len()
    ));
    Ok(Outcome {
        exit_code: if failures == 0 { EXIT_OK } else { EXIT_NEGATIVE },
        results: json!({ "method": method, "points": entries }),
        summary,
    })
}

pub fn decompose_cmd(spec: &WedgeSpecFile, tol: &Tolerance) -> Result<Outcome> {
    let wedge = spec.to_wedge()?;
    let d = decompose(&wedge, tol)?;
    let max_inner = d
        .cone_part
        .iter()
        .flat_map(|k| d.lineality.vectors().iter().map(move |l| k.dot(l).abs()))
        .fold(0.0, f64::max);
    let generating = is_generating(&wedge, tol)?;
    let pointed = is_pointed(&wedge, tol)?;
    let equivalent = WedgeSpecFile::from_generators(&d.equivalent_generators(), wedge.ambient_dim());
    let summary = vec![
        format!("lineality dimension {} of {}", d.lineality.dim(), wedge.ambient_dim()),
        format!("cone part: {} generators", d.cone_part.len()),
        format!("generating: {generating}, pointed: {pointed}"),
    ];
    Ok(Outcome {
        exit_code: EXIT_OK,
        results: json!({
            "ambient_dim": wedge.ambient_dim(),
            "lineality": d.lineality.vectors(),
            "cone_part": d.cone_part,
            "cone_part_sources": d.sources,
            "generating": generating,
            "pointed": pointed,
            "max_cone_lineality_inner": max_inner,
            "equivalent_wedge": equivalent,
        }),
        summary,
    })
}

pub fn polar(spec: &WedgeSpecFile, tol: &Tolerance) -> Result<Outcome> {
    let wedge = spec.to_wedge()?;
    if !is_generating(&wedge, tol)? {
        return Ok(Outcome {
            exit_code: EXIT_INAPPLICABLE,
            results: json!({ "generating": false, "polar_rays": [] }),
            summary: vec!["wedge is not generating; its polar contains a line".into()],
        });
    }
    let d = decompose(&wedge, tol)?;
    let rays = if d.cone_part.is_empty() {
        Vec::new()
    } else {
        polar_generators(&d.cone_wedge(), &d.complement(), tol)?
    };
    let max_inner = max_inner_with(&rays, &wedge);
    let mut summary: Vec<String> = rays.iter().map(|r| format!("ray {r}")).collect();
    summary.push(match max_inner {
        Some(v) => format!("{} polar rays, max <y, g> = {v:.2e}", rays.len()),
        None => "polar cone is trivial".to_string(),
    });
    Ok(Outcome {
        exit_code: EXIT_OK,
        results: json!({
            "generating": true,
            "polar_rays": rays,
            "max_inner_with_generators": max_inner,
        }),
        summary,
    })
}

/// Largest `<y, g>` over polar rays and wedge generators; `None` without rays.
fn max_inner_with(rays: &[Vector], wedge: &GeneratedWedge) -> Option<f64> {
    rays.iter()
        .flat_map(|y| wedge.generators().iter().map(move |g| y.dot(g)))
        .reduce(f64::max)
}

pub fn check_isotone(spec: &WedgeSpecFile, intrinsic: bool, tol: &Tolerance) -> Result<Outcome> {
    let wedge = spec.to_wedge()?;
    let report = if intrinsic {
        check_isotone_wedge_intrinsic(&wedge, tol)?
    } else {
        check_isotone_wedge(&wedge, tol)?
    };
    let exit_code = match report.verdict {
        Verdict::Isotone => EXIT_OK,
        Verdict::NotIsotone => EXIT_NEGATIVE,
        Verdict::Inapplicable => EXIT_INAPPLICABLE,
    };
    let mut summary = vec![format!("verdict: {:?} ({:?})", report.verdict, report.reason)];
    if let Some(w) = report.worst_pair {
        summary.push(format!(
            "worst polar pair ({}, {}): inner product {:.12}",
            w.i, w.j, w.inner
        ));
    }
    Ok(Outcome {
        exit_code,
        results: json!({ "intrinsic": intrinsic, "report": report }),
        summary,
    })
}

pub fn sample(spec: &WedgeSpecFile, pairs: usize, seed: u64, method: Option<&str>, tol: &Tolerance) -> Result<Outcome> {
    let wedge = spec.to_wedge()?;
    let method = method.unwrap_or(default_method(spec));
    let projector = ProjectorRegistry::default().build(method, &wedge, tol)?;
    let report = sample_isotonicity_with(projector.as_ref(), pairs, seed, tol)?;
    let mut summary = vec![format!(
        "{} ordered pairs, {} violations (method {method}, seed {seed})",
        report.pairs_tested,
        report.violations.len()
    )];
    if let Some(v) = report.violations.first() {
        summary.push(format!(
            "first violation: u = {}, v = {}, P v - P u residual {:.3e}",
            v.pair.u, v.pair.v, v.image_certificate.residual_norm
        ));
    }
    Ok(Outcome {
        exit_code: if report.violations.is_empty() {
            EXIT_OK
        } else {
            EXIT_NEGATIVE
        },
        results: json!({
            "method": method,
            "pairs_tested": report.pairs_tested,
            "violation_count": report.violations.len(),
            "violations": report.violations,
        }),
        summary,
    })
}

/// The monotone wedge of `R^m`; for `m = 1` the whole line.
fn monotone_wedge(m: usize) -> Result<GeneratedWedge> {
    Ok(if m == 1 {
        GeneratedWedge::from_rows(&[&[1.0], &[-1.0]])?
    } else {
        isowedge::build_monotone_wedge(m)?
    })
}

pub fn pava(points: &[Vector], tol: &Tolerance) -> Result<Outcome> {
    let mut entries = Vec::with_capacity(points.len());
    let mut summary = Vec::new();
    let mut failures = 0;
    for (i, x) in points.iter().enumerate() {
        let p = pava_project(x);
        let certificate = verify_projection(&monotone_wedge(x.dim())?, x, &p, tol)?;
        failures += !certificate.passed as usize;
        summary.push(format!("point {i}: {x} -> {p}"));
        entries.push(json!({
            "input": x,
            "point": p,
            "residual": x - &p,
            "certificate": certificate,
        }));
    }
    summary.push(format!(
        "{} of {} projections certified",
        points.len() - failures,
        points.len()
    ));
    Ok(Outcome {
        exit_code: if failures == 0 { EXIT_OK } else { EXIT_NEGATIVE },
        results: json!({ "points": entries }),
        summary,
    })
}

pub fn methods() -> Outcome {
    let registry = ProjectorRegistry::default();
    let summary = registry
        .entries()
        .map(|e| format!("{:<10} {}", e.name, e.description))
        .collect();
    let results = registry
        .entries()
        .map(|e| json!({ "name": e.name, "description": e.description }))
        .collect();
    Outcome {
        exit_code: EXIT_OK,
        results: Value::Array(results),
        summary,
    }
}
