//! Metric projection onto finitely generated wedges (closed convex cones
//! that may contain lines) and tests for whether that projection is
//! isotone with respect to the order the wedge induces.
//!
//! A wedge is given by generators, `W = cone{g_1, ..., g_k}`. It splits as
//! `W = K ⊕ L` with `L` its lineality space and `K = L⊥ ∩ W` pointed, and
//! `P_W x = P_K x_k + x_l` for `x = x_k + x_l`. Projection methods are
//! looked up by name in a [`ProjectorRegistry`].
//!
//! ```
//! use isowedge::{build_monotone_wedge, project_wedge, Tolerance, Vector};
//!
//! let w = build_monotone_wedge(3).unwrap();
//! let x = Vector::new(vec![1.0, 2.0, 3.0]).unwrap();
//! let p = project_wedge(&w, &x, &Tolerance::default()).unwrap();
//! assert!(p.certificate.passed);
//! assert!(p.point.distance(&Vector::new(vec![2.0, 2.0, 2.0]).unwrap()) < 1e-12);
//! ```

pub mod error;
pub mod isotone;
pub mod linalg;
pub mod monotone;
mod nnls;
pub mod polar;
pub mod projection;
pub mod wedge;

pub use error::{Error, Result};
pub use isotone::{
    check_isotone_cone, check_isotone_wedge, check_isotone_wedge_intrinsic, find_violation_witness,
    find_violation_witness_with, sample_isotonicity, sample_isotonicity_with, IsotoneReport, OrderPair, PairSampler,
    Reason, SampleReport, Verdict, Violation, WorstPair,
};
pub use linalg::{complement_basis, orthonormal_basis, project_subspace, SubspaceBasis, Tolerance, Vector};
pub use monotone::{
    build_monotone_wedge, coefficients, is_monotone, is_monotone_with, monotone_isotone_selfcheck, pava_project,
    MonotoneBasis, MonotoneCoefficients, MonotoneSelfcheck,
};
pub use polar::polar_generators;
pub use projection::{
    moreau_check, project_cone_oracle, project_wedge, verify_projection, KktCertificate, ProjectionResult, Projector,
    ProjectorRegistry,
};
pub use wedge::{
    contains, decompose, is_generating, is_pointed, lineality_space, GeneratedWedge, MembershipCertificate,
    WedgeDecomposition,
};
