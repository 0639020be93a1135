use crate::error::{Error, Result};
use crate::linalg::{Tolerance, Vector};
use crate::monotone::{build_monotone_wedge, pava_project};
use crate::nnls::nnls;
use crate::wedge::{contains, decompose, GeneratedWedge, WedgeDecomposition};

use super::{
    face_enumeration, kkt_certificate, project_decomposed, project_with_split, FaceSolution, ProjectionResult,
    Projector,
};

/// `P_K x_k + x_l` with the face-enumeration oracle on `K`.
#[derive(Debug, Clone)]
pub struct DecomposedProjector {
    wedge: GeneratedWedge,
    decomposition: WedgeDecomposition,
    tol: Tolerance,
}

impl DecomposedProjector {
    pub const NAME: &'static str = "decompose";

    pub fn new(wedge: &GeneratedWedge, tol: &Tolerance) -> Result<Self> {
        Ok(Self {
            decomposition: decompose(wedge, tol)?,
            wedge: wedge.clone(),
            tol: *tol,
        })
    }

    pub(crate) fn boxed(wedge: &GeneratedWedge, tol: &Tolerance) -> Result<Box<dyn Projector>> {
        Ok(Box::new(Self::new(wedge, tol)?))
    }

    pub fn decomposition(&self) -> &WedgeDecomposition {
        &self.decomposition
    }
}

impl Projector for DecomposedProjector {
    fn method(&self) -> &'static str {
        Self::NAME
    }

    fn wedge(&self) -> &GeneratedWedge {
        &self.wedge
    }

    fn project(&self, x: &Vector) -> Result<ProjectionResult> {
        project_decomposed(&self.wedge, &self.decomposition, x, &self.tol)
    }
}

/// Face enumeration over the original generators together with `±` the
/// lineality basis, without splitting `x`.
#[derive(Debug, Clone)]
pub struct DirectProjector {
    wedge: GeneratedWedge,
    augmented: Vec<Vector>,
    tol: Tolerance,
}

impl DirectProjector {
    pub const NAME: &'static str = "direct";

    pub fn new(wedge: &GeneratedWedge, tol: &Tolerance) -> Result<Self> {
        let lineality = crate::wedge::lineality_space(wedge, tol)?;
        let mut augmented = wedge.generators().to_vec();
        for l in lineality.vectors() {
            augmented.push(l.clone());
            augmented.push(-l);
        }
        Ok(Self {
            wedge: wedge.clone(),
            augmented,
            tol: *tol,
        })
    }

    pub(crate) fn boxed(wedge: &GeneratedWedge, tol: &Tolerance) -> Result<Box<dyn Projector>> {
        Ok(Box::new(Self::new(wedge, tol)?))
    }
}

impl Projector for DirectProjector {
    fn method(&self) -> &'static str {
        Self::NAME
    }

    fn wedge(&self) -> &GeneratedWedge {
        &self.wedge
    }

    fn project(&self, x: &Vector) -> Result<ProjectionResult> {
        x.check_dim(self.wedge.ambient_dim())?;
        let sol = face_enumeration(&self.augmented, x, &self.tol)?;
        let n = self.wedge.generators().len();
        let mut active_coefficients = std::collections::BTreeMap::new();
        let mut lineality_component = Vector::zeros(x.dim());
        for (i, t) in sol.coefficients {
            if i < n {
                active_coefficients.insert(i, t);
            } else {
                lineality_component.axpy(t, &self.augmented[i]);
            }
        }
        let certificate = kkt_certificate(self.wedge.generators(), x, &sol.point, true, &self.tol);
        Ok(ProjectionResult {
            residual: x - &sol.point,
            point: sol.point,
            active_coefficients,
            lineality_component,
            certificate,
        })
    }
}

/// `P_K x_k + x_l` with `P_K` computed by nonnegative least squares.
#[derive(Debug, Clone)]
pub struct NnlsProjector {
    wedge: GeneratedWedge,
    decomposition: WedgeDecomposition,
    tol: Tolerance,
}

impl NnlsProjector {
    pub const NAME: &'static str = "nnls";

    pub fn new(wedge: &GeneratedWedge, tol: &Tolerance) -> Result<Self> {
        Ok(Self {
            decomposition: decompose(wedge, tol)?,
            wedge: wedge.clone(),
            tol: *tol,
        })
    }

    pub(crate) fn boxed(wedge: &GeneratedWedge, tol: &Tolerance) -> Result<Box<dyn Projector>> {
        Ok(Box::new(Self::new(wedge, tol)?))
    }
}

impl Projector for NnlsProjector {
    fn method(&self) -> &'static str {
        Self::NAME
    }

    fn wedge(&self) -> &GeneratedWedge {
        &self.wedge
    }

    fn project(&self, x: &Vector) -> Result<ProjectionResult> {
        project_with_split(&self.wedge, &self.decomposition, x, &self.tol, |gens, x_k| {
            let sol = nnls(gens, x_k);
            let mut point = Vector::zeros(x_k.dim());
            let mut coefficients = Vec::new();
            for (i, &t) in sol.coefficients.iter().enumerate() {
                if t > 0.0 {
                    point.axpy(t, &gens[i]);
                    coefficients.push((i, t));
                }
            }
            Ok(FaceSolution { point, coefficients })
        })
    }
}

/// Pool-adjacent-violators; only accepts the monotone wedge.
#[derive(Debug, Clone)]
pub struct PavaProjector {
    wedge: GeneratedWedge,
    tol: Tolerance,
}

impl PavaProjector {
    pub const NAME: &'static str = "pava";

    /// Accepts any generator list describing `{x : x^1 >= ... >= x^m}`,
    /// checked by mutual generator membership.
    pub fn new(wedge: &GeneratedWedge, tol: &Tolerance) -> Result<Self> {
        let m = wedge.ambient_dim();
        let not_monotone = |reason: &str| Error::MethodNotApplicable {
            method: Self::NAME.to_string(),
            reason: reason.to_string(),
        };
        if m < 2 {
            return Err(not_monotone("ambient dimension below 2"));
        }
        let reference = build_monotone_wedge(m)?;
        for g in reference.generators() {
            if !contains(wedge, g, tol)?.member {
                return Err(not_monotone("wedge is not the monotone wedge"));
            }
        }
        for g in wedge.generators() {
            if !contains(&reference, g, tol)?.member {
                return Err(not_monotone("wedge is not the monotone wedge"));
            }
        }
        Ok(Self {
            wedge: wedge.clone(),
            tol: *tol,
        })
    }

    pub(crate) fn boxed(wedge: &GeneratedWedge, tol: &Tolerance) -> Result<Box<dyn Projector>> {
        Ok(Box::new(Self::new(wedge, tol)?))
    }
}

impl Projector for PavaProjector {
    fn method(&self) -> &'static str {
        Self::NAME
    }

    fn wedge(&self) -> &GeneratedWedge {
        &self.wedge
    }

    fn project(&self, x: &Vector) -> Result<ProjectionResult> {
        let m = self.wedge.ambient_dim();
        x.check_dim(m)?;
        let point = pava_project(x);
        let residual = x - &point;
        let certificate = kkt_certificate(self.wedge.generators(), x, &point, true, &self.tol);
        if !certificate.passed {
            return Err(Error::NoPassingFace {
                max_inner: certificate.max_inner_generator,
                complementarity: certificate.complementarity,
            });
        }
        // weights are reported on the wedge's own generators, whatever their form
        let membership = contains(&self.wedge, &point, &self.tol)?;
        let mut active_coefficients = std::collections::BTreeMap::new();
        let mut carried = Vector::zeros(m);
        let weights = membership.coefficients.unwrap_or_default();
        for (i, t) in weights.into_iter().enumerate().filter(|(_, t)| *t > 0.0) {
            carried.axpy(t, &self.wedge.generators()[i]);
            active_coefficients.insert(i, t);
        }
        Ok(ProjectionResult {
            lineality_component: &point - &carried,
            point,
            residual,
            active_coefficients,
            certificate,
        })
    }
}
