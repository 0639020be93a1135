//! Extreme rays of the polar of a cone inside a subspace, via the double
//! description method.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::{orthonormal_basis, project_subspace, SubspaceBasis, Tolerance, Vector};
use crate::wedge::GeneratedWedge;

pub const MAX_POLAR_DIM: usize = 12;
pub const MAX_POLAR_GENERATORS: usize = 24;

#[derive(Debug, Clone)]
struct Ray {
    coords: Vec<f64>,
    /// Bit `i` set when constraint `i` is tight on this ray.
    tight: u32,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn unit(mut a: Vec<f64>) -> Vec<f64> {
    let n = norm(&a);
    a.iter_mut().for_each(|c| *c /= n);
    a
}

/// Extreme rays of `{y ∈ span(within) : <y, g> <= 0 for all generators g}`,
/// each of unit length and expressed in ambient coordinates.
///
/// Requires the generators to span `within`; otherwise the polar contains a
/// line and [`Error::PolarNotPointed`] is returned.
pub fn polar_generators(cone: &GeneratedWedge, within: &SubspaceBasis, tol: &Tolerance) -> Result<Vec<Vector>> {
    let d = within.dim();
    if within.ambient_dim() != cone.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: within.ambient_dim(),
            found: cone.ambient_dim(),
        });
    }
    if d > MAX_POLAR_DIM {
        return Err(Error::ScaleLimit {
            what: "subspace dimension",
            found: d,
            limit: MAX_POLAR_DIM,
        });
    }
    let gens: Vec<&Vector> = cone.generators().iter().filter(|g| g.norm() > 0.0).collect();
    if gens.len() > MAX_POLAR_GENERATORS {
        return Err(Error::ScaleLimit {
            what: "generator count",
            found: gens.len(),
            limit: MAX_POLAR_GENERATORS,
        });
    }
    for (index, g) in gens.iter().enumerate() {
        let distance = project_subspace(g, within)?.distance(g);
        if distance > tol.feas(g.norm()) {
            return Err(Error::OutsideSubspace { index, distance });
        }
    }
    let r = orthonormal_basis(
        &gens.iter().map(|g| (*g).clone()).collect::<Vec<_>>(),
        cone.ambient_dim(),
        tol,
    )?
    .dim();
    if r < d {
        return Err(Error::PolarNotPointed { rank: r, dim: d });
    }
    if d == 0 {
        return Ok(Vec::new());
    }

    // constraint rows in the coordinates of `within`, unit length
    let rows: Vec<Vec<f64>> = gens.iter().map(|g| unit(within.coordinates(g))).collect();
    let rays = double_description(&rows, d, tol);
    Ok(rays.into_iter().map(|c| within.embed(&c)).collect())
}

/// Indices of `d` linearly independent rows, chosen greedily.
fn independent_rows(rows: &[Vec<f64>], d: usize, tol: &Tolerance) -> Vec<usize> {
    let mut picked = Vec::new();
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut r = row.clone();
        for _ in 0..2 {
            for b in &basis {
                let c = dot(&r, b);
                r.iter_mut().zip(b).for_each(|(x, y)| *x -= c * y);
            }
        }
        let n = norm(&r);
        if n > tol.eps_rank {
            r.iter_mut().for_each(|x| *x /= n);
            basis.push(r);
            picked.push(i);
            if picked.len() == d {
                break;
            }
        }
    }
    picked
}

fn double_description(rows: &[Vec<f64>], d: usize, tol: &Tolerance) -> Vec<Vec<f64>> {
    let start = independent_rows(rows, d, tol);
    debug_assert_eq!(start.len(), d);
    let b = DMatrix::from_fn(d, d, |i, j| rows[start[i]][j]);
    let inv = b.try_inverse().expect("rows were selected as independent");

    // simplicial start: ray k is tight on every chosen row except row k
    let mut rays: Vec<Ray> = (0..d)
        .map(|k| {
            let coords = unit((0..d).map(|i| -inv[(i, k)]).collect());
            let tight = start
                .iter()
                .enumerate()
                .filter(|&(pos, _)| pos != k)
                .fold(0u32, |acc, (_, &row)| acc | (1 << row));
            Ray { coords, tight }
        })
        .collect();

    let zero_tol = tol.eps_eq.max(1e-12);
    for (ci, row) in rows.iter().enumerate() {
        if start.contains(&ci) {
            continue;
        }
        let values: Vec<f64> = rays.iter().map(|r| dot(row, &r.coords)).collect();
        let positive: Vec<usize> = (0..rays.len()).filter(|&i| values[i] > zero_tol).collect();
        let negative: Vec<usize> = (0..rays.len()).filter(|&i| values[i] < -zero_tol).collect();

        let mut created = Vec::new();
        for &p in &positive {
            for &n in &negative {
                let common = rays[p].tight & rays[n].tight;
                if (common.count_ones() as usize) + 2 < d {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, r)| k == p || k == n || r.tight & common != common);
                if !adjacent {
                    continue;
                }
                let coords: Vec<f64> = rays[n]
                    .coords
                    .iter()
                    .zip(&rays[p].coords)
                    .map(|(cn, cp)| values[p] * cn - values[n] * cp)
                    .collect();
                created.push(Ray {
                    coords: unit(coords),
                    tight: common | (1 << ci),
                });
            }
        }

        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + created.len());
        for (i, mut r) in rays.into_iter().enumerate() {
            if values[i] > zero_tol {
                continue;
            }
            if values[i] >= -zero_tol {
                r.tight |= 1 << ci;
            }
            next.push(r);
        }
        next.extend(created);
        rays = next;
    }

    let mut out: Vec<Vec<f64>> = Vec::new();
    for r in rays {
        if !out
            .iter()
            .any(|o| norm(&o.iter().zip(&r.coords).map(|(a, b)| a - b).collect::<Vec<_>>()) < 1e-9)
        {
            out.push(r.coords);
        }
    }
    out
}
