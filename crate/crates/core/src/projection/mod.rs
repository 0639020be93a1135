//! Exact metric projection onto finitely generated wedges.
//!
//! A point `p` of a wedge `W` is the projection of `x` exactly when
//! `<x - p, y> <= 0` for every `y ∈ W` and `<x - p, p> = 0`. For a generated
//! wedge the first condition only has to be checked on the generators.

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{project_subspace, SubspaceBasis, Tolerance, Vector};
use crate::polar::polar_generators;
use crate::wedge::{contains, decompose, GeneratedWedge, WedgeDecomposition};

mod methods;
mod registry;

pub use methods::{DecomposedProjector, DirectProjector, NnlsProjector, PavaProjector};
pub use registry::{MethodEntry, Projector, ProjectorFactory, ProjectorRegistry};

/// Largest generator list the face enumeration accepts.
pub const MAX_ORACLE_GENERATORS: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KktCertificate {
    /// `max_g <x - p, g>` over the generators.
    pub max_inner_generator: f64,
    /// `<x - p, p>`
    pub complementarity: f64,
    /// Whether `p` was found to lie in the wedge.
    pub member: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProjectionResult {
    pub point: Vector,
    /// `x - point`
    pub residual: Vector,
    /// Nonnegative weights on the wedge generators, keyed by generator index.
    pub active_coefficients: BTreeMap<usize, f64>,
    /// Part of `point` not carried by `active_coefficients`; lies in the
    /// lineality space.
    pub lineality_component: Vector,
    pub certificate: KktCertificate,
}

impl ProjectionResult {
    /// `sum_i t_i g_i + lineality_component`
    pub fn reconstruct(&self, wedge: &GeneratedWedge) -> Vector {
        let mut out = self.lineality_component.clone();
        for (&i, &t) in &self.active_coefficients {
            out.axpy(t, &wedge.generators()[i]);
        }
        out
    }
}

pub(crate) fn kkt_certificate(
    generators: &[Vector],
    x: &Vector,
    p: &Vector,
    member: bool,
    tol: &Tolerance,
) -> KktCertificate {
    let r = x - p;
    let max_inner_generator = generators.iter().map(|g| r.dot(g)).reduce(f64::max).unwrap_or(0.0);
    let complementarity = r.dot(p);
    let bound = tol.feas(x.norm());
    let passed = member && max_inner_generator <= bound && complementarity.abs() <= bound * (1.0 + x.norm());
    KktCertificate {
        max_inner_generator,
        complementarity,
        member,
        passed,
    }
}

/// Checks whether `p` is the projection of `x` onto `wedge`.
pub fn verify_projection(wedge: &GeneratedWedge, x: &Vector, p: &Vector, tol: &Tolerance) -> Result<KktCertificate> {
    x.check_dim(wedge.ambient_dim())?;
    p.check_dim(wedge.ambient_dim())?;
    let member = contains(wedge, p, tol)?.member;
    Ok(kkt_certificate(wedge.generators(), x, p, member, tol))
}

pub(crate) struct FaceSolution {
    pub point: Vector,
    /// (index into the generator list, weight)
    pub coefficients: Vec<(usize, f64)>,
}

/// Projection onto `cone(generators)` by trying every linearly independent
/// generator subset as the spanning set of the face containing the answer.
///
/// Candidates are taken in order of increasing size; the first one whose
/// weights are nonnegative and whose certificate passes is returned. Works
/// for wedges with lines as well as for pointed cones.
pub(crate) fn face_enumeration(generators: &[Vector], x: &Vector, tol: &Tolerance) -> Result<FaceSolution> {
    let active: Vec<usize> = (0..generators.len()).filter(|&i| generators[i].norm() > 0.0).collect();
    let n = active.len();
    if n > MAX_ORACLE_GENERATORS {
        return Err(Error::ScaleLimit {
            what: "generator count",
            found: n,
            limit: MAX_ORACLE_GENERATORS,
        });
    }
    let dim = x.dim();
    let gens: Vec<Vector> = active.iter().map(|&i| generators[i].clone()).collect();
    let gram: Vec<Vec<f64>> = gens.iter().map(|a| gens.iter().map(|b| a.dot(b)).collect()).collect();
    let h: Vec<f64> = gens.iter().map(|g| g.dot(x)).collect();
    let xnorm = x.norm();
    let bound = tol.feas(xnorm);
    let compl_bound = bound * (1.0 + xnorm);

    let mut best: Option<(f64, f64, f64)> = None;
    let mut consider = |max_inner: f64, compl: f64| {
        let violation = (max_inner - bound).max(compl.abs() - compl_bound);
        if best.is_none_or(|(v, _, _)| violation < v) {
            best = Some((violation, max_inner, compl));
        }
    };

    // empty face: p = 0
    let max_h = h.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if n == 0 || max_h <= bound {
        return Ok(FaceSolution {
            point: Vector::zeros(dim),
            coefficients: Vec::new(),
        });
    }
    consider(max_h, 0.0);

    for k in 1..=n.min(dim) {
        for subset in (0..n).combinations(k) {
            let Some(c) = solve_gram(&gram, &h, &subset, tol) else {
                continue;
            };
            if subset.iter().zip(&c).any(|(&i, &ci)| ci * gram[i][i].sqrt() < -bound) {
                continue;
            }
            let c: Vec<f64> = c.into_iter().map(|ci| ci.max(0.0)).collect();
            // screen through the Gram matrix before touching ambient vectors
            let max_inner = (0..n)
                .map(|j| h[j] - subset.iter().zip(&c).map(|(&i, ci)| ci * gram[i][j]).sum::<f64>())
                .fold(f64::NEG_INFINITY, f64::max);
            if max_inner > bound {
                consider(max_inner, f64::NAN);
                continue;
            }
            let mut p = Vector::zeros(dim);
            for (&i, &ci) in subset.iter().zip(&c) {
                p.axpy(ci, &gens[i]);
            }
            let cert = kkt_certificate(&gens, x, &p, true, tol);
            if cert.passed {
                return Ok(FaceSolution {
                    point: p,
                    coefficients: subset.iter().zip(&c).map(|(&i, &ci)| (active[i], ci)).collect(),
                });
            }
            consider(cert.max_inner_generator, cert.complementarity);
        }
    }
    let (_, max_inner, complementarity) = best.unwrap_or((f64::NAN, f64::NAN, f64::NAN));
    Err(Error::NoPassingFace {
        max_inner,
        complementarity,
    })
}

/// Solves the normal equations on `subset` by Cholesky; `None` when the
/// subset is (numerically) linearly dependent.
fn solve_gram(gram: &[Vec<f64>], h: &[f64], subset: &[usize], tol: &Tolerance) -> Option<Vec<f64>> {
    let k = subset.len();
    let mut l = vec![vec![0.0; k]; k];
    for a in 0..k {
        for b in 0..=a {
            let s = gram[subset[a]][subset[b]] - l[a][..b].iter().zip(&l[b][..b]).map(|(x, y)| x * y).sum::<f64>();
            if a == b {
                // squared distance of g_a from the span of the earlier ones
                if s <= tol.eps_rank * gram[subset[a]][subset[a]] {
                    return None;
                }
                l[a][a] = s.sqrt();
            } else {
                l[a][b] = s / l[b][b];
            }
        }
    }
    let mut y = vec![0.0; k];
    for a in 0..k {
        let mut s = h[subset[a]];
        for c in 0..a {
            s -= l[a][c] * y[c];
        }
        y[a] = s / l[a][a];
    }
    let mut z = vec![0.0; k];
    for a in (0..k).rev() {
        let mut s = y[a];
        for c in a + 1..k {
            s -= l[c][a] * z[c];
        }
        z[a] = s / l[a][a];
    }
    Some(z)
}

/// Exact projection onto `cone(K)` by face enumeration.
///
/// Intended for pointed cones but valid for any generated wedge; limited to
/// [`MAX_ORACLE_GENERATORS`] generators.
pub fn project_cone_oracle(cone: &GeneratedWedge, x: &Vector, tol: &Tolerance) -> Result<ProjectionResult> {
    x.check_dim(cone.ambient_dim())?;
    let sol = face_enumeration(cone.generators(), x, tol)?;
    let certificate = kkt_certificate(cone.generators(), x, &sol.point, true, tol);
    Ok(ProjectionResult {
        residual: x - &sol.point,
        active_coefficients: sol.coefficients.into_iter().collect(),
        lineality_component: Vector::zeros(x.dim()),
        point: sol.point,
        certificate,
    })
}

/// Projection onto `W = K ⊕ L` as `P_K x_k + x_l`.
pub fn project_wedge(wedge: &GeneratedWedge, x: &Vector, tol: &Tolerance) -> Result<ProjectionResult> {
    x.check_dim(wedge.ambient_dim())?;
    let decomposition = decompose(wedge, tol)?;
    project_decomposed(wedge, &decomposition, x, tol)
}

/// Splits `x = x_k + x_l` and projects `x_k` onto the cone part with `cone_projection`.
pub(crate) fn project_with_split<F>(
    wedge: &GeneratedWedge,
    decomposition: &WedgeDecomposition,
    x: &Vector,
    tol: &Tolerance,
    cone_projection: F,
) -> Result<ProjectionResult>
where
    F: FnOnce(&[Vector], &Vector) -> Result<FaceSolution>,
{
    x.check_dim(wedge.ambient_dim())?;
    let x_l = project_subspace(x, &decomposition.lineality)?;
    let x_k = x - &x_l;
    let cone_sol = if decomposition.cone_part.is_empty() {
        FaceSolution {
            point: Vector::zeros(x.dim()),
            coefficients: Vec::new(),
        }
    } else {
        cone_projection(&decomposition.cone_part, &x_k)?
    };
    let point = &cone_sol.point + &x_l;

    let mut active_coefficients = BTreeMap::new();
    let mut carried = Vector::zeros(x.dim());
    for (idx, t) in cone_sol.coefficients {
        let src = decomposition.sources[idx];
        active_coefficients.insert(src, t);
        carried.axpy(t, &wedge.generators()[src]);
    }
    let certificate = kkt_certificate(wedge.generators(), x, &point, true, tol);
    if !certificate.passed {
        return Err(Error::NoPassingFace {
            max_inner: certificate.max_inner_generator,
            complementarity: certificate.complementarity,
        });
    }
    Ok(ProjectionResult {
        residual: x - &point,
        lineality_component: &point - &carried,
        active_coefficients,
        point,
        certificate,
    })
}

pub(crate) fn project_decomposed(
    wedge: &GeneratedWedge,
    decomposition: &WedgeDecomposition,
    x: &Vector,
    tol: &Tolerance,
) -> Result<ProjectionResult> {
    project_with_split(wedge, decomposition, x, tol, |gens, x_k| {
        face_enumeration(gens, x_k, tol)
    })
}

/// Checks `x = P_K x + P_{K°} x` with orthogonal summands, where `K°` is the
/// polar of `K` inside `span(within)`.
pub fn moreau_check(cone: &GeneratedWedge, within: &SubspaceBasis, x: &Vector, tol: &Tolerance) -> Result<bool> {
    x.check_dim(within.ambient_dim())?;
    let distance = project_subspace(x, within)?.distance(x);
    if distance > tol.feas(x.norm()) {
        return Err(Error::OutsideSubspace { index: 0, distance });
    }
    let polar = polar_generators(cone, within, tol)?;
    let p = face_enumeration(cone.generators(), x, tol)?.point;
    let q = if polar.is_empty() {
        Vector::zeros(x.dim())
    } else {
        face_enumeration(&polar, x, tol)?.point
    };
    let bound = tol.feas(x.norm());
    let gap = (&(&p + &q) - x).norm();
    Ok(gap <= bound && p.dot(&q).abs() <= bound * (1.0 + x.norm()))
}
