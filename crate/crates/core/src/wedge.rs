//! Finitely generated wedges and their decomposition into a pointed cone
//! plus a lineality space.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{complement_basis, orthonormal_basis, project_subspace, rank, SubspaceBasis, Tolerance, Vector};
use crate::nnls::nnls;

/// The wedge `cone{g_1, ..., g_k}`.
///
/// The trivial wedge `{0}` is stored as a single zero generator.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneratedWedge {
    generators: Vec<Vector>,
    ambient_dim: usize,
}

impl GeneratedWedge {
    pub fn new(generators: Vec<Vector>) -> Result<Self> {
        let ambient_dim = generators.first().ok_or(Error::NoGenerators)?.dim();
        for g in &generators {
            g.check_dim(ambient_dim)?;
        }
        Ok(Self::normalized_trivial(generators, ambient_dim))
    }

    /// Like [`GeneratedWedge::new`] but allows an empty generator list,
    /// which yields `{0}`.
    pub fn with_dim(generators: Vec<Vector>, ambient_dim: usize) -> Result<Self> {
        for g in &generators {
            g.check_dim(ambient_dim)?;
        }
        Ok(Self::normalized_trivial(generators, ambient_dim))
    }

    pub fn trivial(ambient_dim: usize) -> Self {
        Self {
            generators: vec![Vector::zeros(ambient_dim)],
            ambient_dim,
        }
    }

    fn normalized_trivial(generators: Vec<Vector>, ambient_dim: usize) -> Self {
        let eps = Tolerance::default().eps_eq;
        if generators.iter().all(|g| g.norm() <= eps) {
            Self::trivial(ambient_dim)
        } else {
            Self {
                generators,
                ambient_dim,
            }
        }
    }

    pub fn from_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| Vector::new(r.to_vec())).collect::<Result<_>>()?)
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(|g| g.norm() == 0.0)
    }

    /// Multiplies every generator by the matching positive factor.
    pub fn rescaled(&self, factors: &[f64]) -> Self {
        debug_assert_eq!(factors.len(), self.generators.len());
        Self {
            generators: self.generators.iter().zip(factors).map(|(g, &f)| g.scaled(f)).collect(),
            ambient_dim: self.ambient_dim,
        }
    }
}

/// Outcome of a conic feasibility solve `min_{t >= 0} ||G t - x||`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MembershipCertificate {
    pub member: bool,
    /// Nonnegative generator weights; present when `member` holds.
    pub coefficients: Option<Vec<f64>>,
    pub residual_norm: f64,
}

/// `W = K ⊕ L` with `K` stored through ambient generators lying in `L⊥`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WedgeDecomposition {
    pub lineality: SubspaceBasis,
    /// Generators of `K`; empty when `K = {0}`.
    pub cone_part: Vec<Vector>,
    /// Index of the original generator each `cone_part` entry came from.
    pub sources: Vec<usize>,
    pub ambient_dim: usize,
}

impl WedgeDecomposition {
    /// `K` as a wedge of its own (the trivial wedge when `K = {0}`).
    pub fn cone_wedge(&self) -> GeneratedWedge {
        GeneratedWedge::with_dim(self.cone_part.clone(), self.ambient_dim)
            .expect("cone part generators share the ambient dimension")
    }

    /// Orthonormal basis of `L⊥`.
    pub fn complement(&self) -> SubspaceBasis {
        complement_basis(&self.lineality)
    }

    /// A generator list for the same wedge: `K` generators plus `±` the
    /// lineality basis.
    pub fn equivalent_generators(&self) -> Vec<Vector> {
        let mut out = self.cone_part.clone();
        for l in self.lineality.vectors() {
            out.push(l.clone());
            out.push(-l);
        }
        if out.is_empty() {
            out.push(Vector::zeros(self.ambient_dim));
        }
        out
    }
}

pub fn contains(wedge: &GeneratedWedge, x: &Vector, tol: &Tolerance) -> Result<MembershipCertificate> {
    x.check_dim(wedge.ambient_dim)?;
    Ok(contains_in(wedge.generators(), x, tol))
}

pub(crate) fn contains_in(generators: &[Vector], x: &Vector, tol: &Tolerance) -> MembershipCertificate {
    let sol = nnls(generators, x);
    let member = sol.residual <= tol.feas(x.norm());
    MembershipCertificate {
        member,
        coefficients: member.then_some(sol.coefficients),
        residual_norm: sol.residual,
    }
}

/// Orthonormal basis of `L = W ∩ (-W)`.
///
/// A generator lies in `L` exactly when its negation belongs to `W`, and
/// those generators span `L`.
pub fn lineality_space(wedge: &GeneratedWedge, tol: &Tolerance) -> Result<SubspaceBasis> {
    let inside: Vec<Vector> = wedge
        .generators()
        .iter()
        .filter(|g| g.norm() > 0.0 && contains_in(wedge.generators(), &-*g, tol).member)
        .cloned()
        .collect();
    orthonormal_basis(&inside, wedge.ambient_dim, tol)
}

pub fn decompose(wedge: &GeneratedWedge, tol: &Tolerance) -> Result<WedgeDecomposition> {
    let lineality = lineality_space(wedge, tol)?;
    let complement = complement_basis(&lineality);
    let mut cone_part = Vec::new();
    let mut sources = Vec::new();
    for (i, g) in wedge.generators().iter().enumerate() {
        let k = project_subspace(g, &complement)?;
        if k.norm() > tol.eq(g.norm()) {
            cone_part.push(k);
            sources.push(i);
        }
    }
    Ok(WedgeDecomposition {
        lineality,
        cone_part,
        sources,
        ambient_dim: wedge.ambient_dim,
    })
}

/// Whether `W - W` is the whole space.
pub fn is_generating(wedge: &GeneratedWedge, tol: &Tolerance) -> Result<bool> {
    Ok(rank(wedge.generators(), wedge.ambient_dim, tol)? == wedge.ambient_dim)
}

/// Whether `W ∩ (-W) = {0}`.
pub fn is_pointed(wedge: &GeneratedWedge, tol: &Tolerance) -> Result<bool> {
    Ok(lineality_space(wedge, tol)?.is_empty())
}
