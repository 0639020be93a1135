//! Dimension-checked vectors, tolerances and orthonormal subspace bases.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of `R^m` with finite coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Vector {
    coords: Vec<f64>,
}

impl Vector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyVector);
        }
        if let Some((index, &value)) = coords.iter().enumerate().find(|(_, c)| !c.is_finite()) {
            return Err(Error::NonFinite { index, value });
        }
        Ok(Self { coords })
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "zero-dimensional vector");
        Self { coords: vec![0.0; dim] }
    }

    /// The `i`-th standard basis vector (0-based).
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.coords[i] = 1.0;
        v
    }

    /// Builds a vector from coordinates that are known to be finite.
    pub(crate) fn from_raw(coords: Vec<f64>) -> Self {
        debug_assert!(!coords.is_empty() && coords.iter().all(|c| c.is_finite()));
        Self { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    pub fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() == expected {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected,
                found: self.dim(),
            })
        }
    }

    pub fn dot(&self, other: &Vector) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn scaled(&self, factor: f64) -> Vector {
        Vector::from_raw(self.coords.iter().map(|c| c * factor).collect())
    }

    /// `self += factor * other`
    pub fn axpy(&mut self, factor: f64, other: &Vector) {
        debug_assert_eq!(self.dim(), other.dim());
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            *a += factor * b;
        }
    }

    pub fn normalized(&self) -> Option<Vector> {
        let n = self.norm();
        (n > 0.0).then(|| self.scaled(1.0 / n))
    }

    pub fn distance(&self, other: &Vector) -> f64 {
        (self - other).norm()
    }
}

impl TryFrom<Vec<f64>> for Vector {
    type Error = Error;

    fn try_from(coords: Vec<f64>) -> Result<Self> {
        Vector::new(coords)
    }
}

impl From<Vector> for Vec<f64> {
    fn from(v: Vector) -> Self {
        v.coords
    }
}

impl Index<usize> for Vector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.coords[i]
    }
}

impl Add for &Vector {
    type Output = Vector;

    fn add(self, rhs: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), rhs.dim());
        Vector::from_raw(self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Vector {
    type Output = Vector;

    fn sub(self, rhs: &Vector) -> Vector {
        debug_assert_eq!(self.dim(), rhs.dim());
        Vector::from_raw(self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Vector {
    type Output = Vector;

    fn neg(self) -> Vector {
        self.scaled(-1.0)
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Thresholds used for numerical decisions.
///
/// `eps_rank` decides linear (in)dependence relative to the largest input
/// norm, `eps_feas` bounds membership and projection-certificate residuals
/// and `eps_eq` is used for equality checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub eps_rank: f64,
    pub eps_feas: f64,
    pub eps_eq: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            eps_rank: 1e-10,
            eps_feas: 1e-8,
            eps_eq: 1e-9,
        }
    }
}

impl Tolerance {
    pub fn new(eps_rank: f64, eps_feas: f64, eps_eq: f64) -> Result<Self> {
        let tol = Self {
            eps_rank,
            eps_feas,
            eps_eq,
        };
        tol.validate()?;
        Ok(tol)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("eps_rank", self.eps_rank),
            ("eps_feas", self.eps_feas),
            ("eps_eq", self.eps_eq),
        ] {
            if !(value > 0.0 && value < 1e-2) {
                return Err(Error::InvalidTolerance(format!(
                    "{name} = {value} must lie in (0, 1e-2)"
                )));
            }
        }
        Ok(())
    }

    /// Feasibility bound scaled for an input of norm `scale`.
    pub fn feas(&self, scale: f64) -> f64 {
        self.eps_feas * (1.0 + scale)
    }

    pub fn eq(&self, scale: f64) -> f64 {
        self.eps_eq * (1.0 + scale)
    }
}

/// Orthonormal basis of a linear subspace of `R^ambient_dim`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubspaceBasis {
    vectors: Vec<Vector>,
    ambient_dim: usize,
}

impl SubspaceBasis {
    pub fn empty(ambient_dim: usize) -> Self {
        Self {
            vectors: Vec::new(),
            ambient_dim,
        }
    }

    /// The standard basis of `R^ambient_dim`.
    pub fn full(ambient_dim: usize) -> Self {
        Self {
            vectors: (0..ambient_dim).map(|i| Vector::unit(ambient_dim, i)).collect(),
            ambient_dim,
        }
    }

    /// Wraps vectors that are already orthonormal, checking the claim.
    pub fn from_orthonormal(vectors: Vec<Vector>, ambient_dim: usize, tol: &Tolerance) -> Result<Self> {
        for v in &vectors {
            v.check_dim(ambient_dim)?;
        }
        for (i, a) in vectors.iter().enumerate() {
            for (j, b) in vectors.iter().enumerate().skip(i) {
                let expected = if i == j { 1.0 } else { 0.0 };
                if (a.dot(b) - expected).abs() > tol.eps_eq {
                    return Err(Error::NotOrthonormal { i, j, inner: a.dot(b) });
                }
            }
        }
        Ok(Self { vectors, ambient_dim })
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Coordinates of `x` with respect to this basis.
    pub fn coordinates(&self, x: &Vector) -> Vec<f64> {
        self.vectors.iter().map(|b| b.dot(x)).collect()
    }

    /// The ambient vector with the given basis coordinates.
    pub fn embed(&self, coords: &[f64]) -> Vector {
        debug_assert_eq!(coords.len(), self.dim());
        let mut out = Vector::zeros(self.ambient_dim);
        for (c, b) in coords.iter().zip(&self.vectors) {
            out.axpy(*c, b);
        }
        out
    }
}

/// Removes from `v` its components along the (orthonormal) `basis`, twice.
fn reorthogonalize(v: &mut Vector, basis: &[Vector]) {
    for _ in 0..2 {
        for b in basis {
            let c = v.dot(b);
            v.axpy(-c, b);
        }
    }
}

/// Orthonormal basis of `span(vs)`.
///
/// Vectors whose residual after orthogonalization is at most
/// `eps_rank * max_i ||vs_i||` are treated as dependent.
pub fn orthonormal_basis(vs: &[Vector], ambient_dim: usize, tol: &Tolerance) -> Result<SubspaceBasis> {
    for v in vs {
        v.check_dim(ambient_dim)?;
    }
    let scale = vs.iter().map(Vector::norm).fold(0.0, f64::max);
    let mut basis: Vec<Vector> = Vec::new();
    if scale == 0.0 {
        return Ok(SubspaceBasis::empty(ambient_dim));
    }
    for v in vs {
        if basis.len() == ambient_dim {
            break;
        }
        let mut r = v.clone();
        reorthogonalize(&mut r, &basis);
        let n = r.norm();
        if n > tol.eps_rank * scale {
            basis.push(r.scaled(1.0 / n));
        }
    }
    Ok(SubspaceBasis {
        vectors: basis,
        ambient_dim,
    })
}

/// Rank of a vector family, decided as in [`orthonormal_basis`].
pub fn rank(vs: &[Vector], ambient_dim: usize, tol: &Tolerance) -> Result<usize> {
    orthonormal_basis(vs, ambient_dim, tol).map(|b| b.dim())
}

/// Orthogonal projection of `x` onto `span(basis)`.
pub fn project_subspace(x: &Vector, basis: &SubspaceBasis) -> Result<Vector> {
    x.check_dim(basis.ambient_dim)?;
    let mut out = Vector::zeros(basis.ambient_dim);
    for b in &basis.vectors {
        out.axpy(x.dot(b), b);
    }
    Ok(out)
}

/// Orthonormal basis of the orthogonal complement of `span(basis)`.
pub fn complement_basis(basis: &SubspaceBasis) -> SubspaceBasis {
    let n = basis.ambient_dim;
    let mut all: Vec<Vector> = basis.vectors.clone();
    let mut complement = Vec::new();
    let mut remaining: Vec<usize> = (0..n).collect();
    while all.len() < n {
        // greedily take the standard basis vector with the largest residual
        let (pos, residual) = remaining
            .iter()
            .enumerate()
            .map(|(pos, &i)| {
                let mut r = Vector::unit(n, i);
                reorthogonalize(&mut r, &all);
                (pos, r)
            })
            .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
            .expect("fewer basis vectors than ambient dimension leaves a candidate");
        remaining.swap_remove(pos);
        let mut r = residual;
        reorthogonalize(&mut r, &all);
        let r = r.scaled(1.0 / r.norm());
        all.push(r.clone());
        complement.push(r);
    }
    SubspaceBasis {
        vectors: complement,
        ambient_dim: n,
    }
}
