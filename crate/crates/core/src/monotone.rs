//! The monotone wedge `{x ∈ R^m : x^1 >= x^2 >= ... >= x^m}`.
//!
//! Its lineality space is the diagonal `span{e_m}` and its cone part is
//! generated by the vectors `e'_j`, `j = 1..m-1`, where `e'_j` has `j`
//! leading entries equal to `m - j` followed by `m - j` entries equal to
//! `-j`. Inside the hyperplane orthogonal to the diagonal the polar of that
//! cone is generated by the difference vectors `u_i = e_{i+1}^std - e_i^std`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::isotone::{check_isotone_wedge, IsotoneReport, Verdict};
use crate::linalg::{Tolerance, Vector};
use crate::wedge::GeneratedWedge;

pub const MAX_SELFCHECK_DIM: usize = 12;

/// The three families of vectors attached to the monotone wedge in `R^m`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotoneBasis {
    pub m: usize,
    /// `e_j`: `j` leading ones, then zeros; `e_m` is the all-ones vector.
    pub e: Vec<Vector>,
    /// `e'_j` for `j = 1..m-1`.
    pub e_prime: Vec<Vector>,
    /// `u_i`: `-1` at position `i`, `+1` at position `i + 1`.
    pub u: Vec<Vector>,
}

impl MonotoneBasis {
    pub fn new(m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::MonotoneDimension(m));
        }
        let e = (1..=m)
            .map(|j| Vector::from_raw((0..m).map(|i| if i < j { 1.0 } else { 0.0 }).collect()))
            .collect();
        let e_prime = (1..m)
            .map(|j| {
                let (hi, lo) = ((m - j) as f64, -(j as f64));
                Vector::from_raw((0..m).map(|i| if i < j { hi } else { lo }).collect())
            })
            .collect();
        let u = (0..m - 1)
            .map(|i| {
                let mut c = vec![0.0; m];
                c[i] = -1.0;
                c[i + 1] = 1.0;
                Vector::from_raw(c)
            })
            .collect();
        Ok(Self { m, e, e_prime, u })
    }

    /// The all-ones vector `e_m`.
    pub fn diagonal(&self) -> &Vector {
        &self.e[self.m - 1]
    }
}

/// Coordinates of `x` in the basis `{e'_1, ..., e'_{m-1}, e_m}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotoneCoefficients {
    /// `t[j-1]` is the weight of `e'_j`; the last entry is the weight of `e_m`.
    pub t: Vec<f64>,
}

impl MonotoneCoefficients {
    pub fn reconstruct(&self) -> Vector {
        let m = self.t.len();
        let mut coords = vec![self.t[m - 1]; m];
        for (j0, &tj) in self.t[..m - 1].iter().enumerate() {
            let j = j0 + 1;
            for (i, c) in coords.iter_mut().enumerate() {
                *c += tj * if i < j { (m - j) as f64 } else { -(j as f64) };
            }
        }
        Vector::from_raw(coords)
    }
}

/// Generators `{e'_1, ..., e'_{m-1}, e_m, -e_m}` of the monotone wedge.
pub fn build_monotone_wedge(m: usize) -> Result<GeneratedWedge> {
    let basis = MonotoneBasis::new(m)?;
    let mut generators = basis.e_prime.clone();
    generators.push(basis.diagonal().clone());
    generators.push(-basis.diagonal());
    GeneratedWedge::new(generators)
}

/// `x^1 >= x^2 >= ... >= x^m` up to the default feasibility tolerance.
pub fn is_monotone(x: &Vector) -> bool {
    is_monotone_with(x, &Tolerance::default())
}

pub fn is_monotone_with(x: &Vector, tol: &Tolerance) -> bool {
    let slack = tol.feas(x.norm());
    x.coords().windows(2).all(|w| w[0] - w[1] >= -slack)
}

/// Weights `t` with `x = sum_{j<m} t^j e'_j + t^m e_m`.
///
/// Since `e'_j = m e_j - j e_m`, substituting `e_j = (e'_j + j e_m) / m`
/// into `x = sum_j (x^j - x^{j+1}) e_j + x^m e_m` gives
/// `t^j = (x^j - x^{j+1}) / m`, and `t^m` is the mean of the coordinates
/// (the `e'_j` are orthogonal to `e_m`).
pub fn coefficients(x: &Vector) -> Result<MonotoneCoefficients> {
    let m = x.dim();
    if m < 2 {
        return Err(Error::MonotoneDimension(m));
    }
    let c = x.coords();
    let mf = m as f64;
    let mut t: Vec<f64> = c.windows(2).map(|w| (w[0] - w[1]) / mf).collect();
    t.push(c.iter().sum::<f64>() / mf);
    Ok(MonotoneCoefficients { t })
}

/// Euclidean projection onto the monotone (nonincreasing) wedge by
/// pooling adjacent violators.
pub fn pava_project(x: &Vector) -> Vector {
    // (sum, count) per block
    let mut blocks: Vec<(f64, usize)> = Vec::with_capacity(x.dim());
    for &value in x.coords() {
        blocks.push((value, 1));
        while blocks.len() >= 2 {
            let (s1, n1) = blocks[blocks.len() - 1];
            let (s0, n0) = blocks[blocks.len() - 2];
            if s0 / n0 as f64 >= s1 / n1 as f64 {
                break;
            }
            blocks.pop();
            *blocks.last_mut().unwrap() = (s0 + s1, n0 + n1);
        }
    }
    let mut out = Vec::with_capacity(x.dim());
    for (sum, count) in blocks {
        out.extend(std::iter::repeat_n(sum / count as f64, count));
    }
    Vector::from_raw(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct MonotoneSelfcheck {
    pub report: IsotoneReport,
    /// Whether the polar rays coincide with the normalized `u_i`.
    pub rays_match: bool,
}

impl MonotoneSelfcheck {
    pub fn passed(&self) -> bool {
        self.report.verdict == Verdict::Isotone && self.rays_match
    }
}

/// Runs the isotone-projection test on the monotone wedge of `R^m` and
/// compares the polar rays it finds with the normalized `u_i`.
pub fn monotone_isotone_selfcheck(m: usize, tol: &Tolerance) -> Result<MonotoneSelfcheck> {
    if !(2..=MAX_SELFCHECK_DIM).contains(&m) {
        return Err(Error::ScaleLimit {
            what: "monotone self-check dimension",
            found: m,
            limit: MAX_SELFCHECK_DIM,
        });
    }
    let report = check_isotone_wedge(&build_monotone_wedge(m)?, tol)?;
    let expected: Vec<Vector> = MonotoneBasis::new(m)?
        .u
        .iter()
        .map(|u| u.normalized().expect("u_i is nonzero"))
        .collect();
    let rays_match = ray_sets_match(&report.polar_rays, &expected, tol.eps_eq);
    Ok(MonotoneSelfcheck { report, rays_match })
}

/// Equality of two sets of unit rays up to ordering.
pub fn ray_sets_match(a: &[Vector], b: &[Vector], eps: f64) -> bool {
    a.len() == b.len()
        && a.iter().all(|x| b.iter().any(|y| x.distance(y) <= eps))
        && b.iter().all(|y| a.iter().any(|x| x.distance(y) <= eps))
}
