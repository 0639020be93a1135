//! Deciding whether the projection onto a wedge is isotone with respect to
//! the order the wedge induces (`u <= v` iff `v - u ∈ W`).
//!
//! For a generating wedge `W = K ⊕ L` the projection is isotone iff the
//! projection onto `K` inside `L⊥` is, and the latter holds iff the polar of
//! `K` in `L⊥` is generated by linearly independent vectors with pairwise
//! non-positive inner products. [`sample_isotonicity`] tests the definition
//! directly on random ordered pairs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{orthonormal_basis, rank, SubspaceBasis, Tolerance, Vector};
use crate::polar::polar_generators;
use crate::projection::{DecomposedProjector, Projector};
use crate::wedge::{contains, decompose, is_generating, GeneratedWedge, MembershipCertificate};

/// Sampled base points are scaled back onto this radius when they fall outside it.
pub const SAMPLE_RADIUS: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Isotone,
    NotIsotone,
    Inapplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reason {
    /// Polar rays are independent and pairwise non-acute.
    NonAcutePolar,
    /// Some pair of polar rays makes an acute angle.
    AcutePolarPair,
    /// More polar rays than the subspace dimension.
    DependentPolarRays,
    /// The wedge (or cone in its subspace) does not span the whole space.
    NotGenerating,
    /// The wedge is a linear subspace; its projection is linear.
    Subspace,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WorstPair {
    pub i: usize,
    pub j: usize,
    pub inner: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsotoneReport {
    pub verdict: Verdict,
    /// Unit generators of the polar cone.
    pub polar_rays: Vec<Vector>,
    /// Largest off-diagonal inner product among the polar rays.
    pub worst_pair: Option<WorstPair>,
    pub reason: Reason,
}

impl IsotoneReport {
    fn inapplicable() -> Self {
        Self {
            verdict: Verdict::Inapplicable,
            polar_rays: Vec::new(),
            worst_pair: None,
            reason: Reason::NotGenerating,
        }
    }
}

/// Applies the polar criterion to `cone` inside `span(within)`.
pub fn check_isotone_cone(cone: &GeneratedWedge, within: &SubspaceBasis, tol: &Tolerance) -> Result<IsotoneReport> {
    let polar_rays = match polar_generators(cone, within, tol) {
        Ok(rays) => rays,
        Err(Error::PolarNotPointed { .. }) => return Ok(IsotoneReport::inapplicable()),
        Err(e) => return Err(e),
    };
    let mut worst_pair: Option<WorstPair> = None;
    for i in 0..polar_rays.len() {
        for j in i + 1..polar_rays.len() {
            let inner = polar_rays[i].dot(&polar_rays[j]);
            if worst_pair.is_none_or(|w| inner > w.inner) {
                worst_pair = Some(WorstPair { i, j, inner });
            }
        }
    }
    let independent = rank(&polar_rays, within.ambient_dim(), tol)? == polar_rays.len();
    let non_acute = worst_pair.is_none_or(|w| w.inner <= tol.eps_feas);
    let (verdict, reason) = match (independent, non_acute) {
        (true, true) => (Verdict::Isotone, Reason::NonAcutePolar),
        (_, false) => (Verdict::NotIsotone, Reason::AcutePolarPair),
        (false, true) => (Verdict::NotIsotone, Reason::DependentPolarRays),
    };
    Ok(IsotoneReport {
        verdict,
        polar_rays,
        worst_pair,
        reason,
    })
}

/// Decides isotonicity of the projection onto a generating wedge through
/// its cone part in `L⊥`.
pub fn check_isotone_wedge(wedge: &GeneratedWedge, tol: &Tolerance) -> Result<IsotoneReport> {
    if !is_generating(wedge, tol)? {
        return Ok(IsotoneReport::inapplicable());
    }
    let d = decompose(wedge, tol)?;
    if d.cone_part.is_empty() {
        return Ok(subspace_report());
    }
    check_isotone_cone(&d.cone_wedge(), &d.complement(), tol)
}

/// Like [`check_isotone_wedge`], but a non-generating wedge is analysed
/// inside its own span `W - W` instead of being rejected.
///
/// This goes beyond the generating case covered by the polar criterion; the
/// reduction treats `span(W)` as the ambient space.
pub fn check_isotone_wedge_intrinsic(wedge: &GeneratedWedge, tol: &Tolerance) -> Result<IsotoneReport> {
    let d = decompose(wedge, tol)?;
    if d.cone_part.is_empty() {
        return Ok(subspace_report());
    }
    let within = orthonormal_basis(&d.cone_part, wedge.ambient_dim(), tol)?;
    check_isotone_cone(&d.cone_wedge(), &within, tol)
}

fn subspace_report() -> IsotoneReport {
    IsotoneReport {
        verdict: Verdict::Isotone,
        polar_rays: Vec::new(),
        worst_pair: None,
        reason: Reason::Subspace,
    }
}

/// `u <= v` in the wedge order, with the certificate for `v - u ∈ W`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderPair {
    pub u: Vector,
    pub v: Vector,
    pub witness: MembershipCertificate,
}

/// An ordered pair whose projections are not ordered.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub pair: OrderPair,
    pub projected_u: Vector,
    pub projected_v: Vector,
    /// Failed membership test for `P v - P u ∈ W`.
    pub image_certificate: MembershipCertificate,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleReport {
    pub pairs_tested: usize,
    pub violations: Vec<Violation>,
}

/// Seeded source of ordered pairs `u <= v`.
///
/// `u` has independent standard normal coordinates (pulled back onto the
/// sphere of radius [`SAMPLE_RADIUS`] if it lands outside); `v = u + w` with
/// `w = sum t_i g_i`, `t_i` uniform in `[0, 1]`.
pub struct PairSampler<'a> {
    wedge: &'a GeneratedWedge,
    rng: ChaCha8Rng,
    tol: Tolerance,
}

impl<'a> PairSampler<'a> {
    pub fn new(wedge: &'a GeneratedWedge, seed: u64, tol: &Tolerance) -> Self {
        Self {
            wedge,
            rng: ChaCha8Rng::seed_from_u64(seed),
            tol: *tol,
        }
    }

    pub fn next_pair(&mut self) -> OrderPair {
        let m = self.wedge.ambient_dim();
        let coords: Vec<f64> = (0..m).map(|_| self.rng.sample(StandardNormal)).collect();
        let mut u = Vector::from_raw(coords);
        let n = u.norm();
        if n > SAMPLE_RADIUS {
            u = u.scaled(SAMPLE_RADIUS / n);
        }
        let t: Vec<f64> = (0..self.wedge.generators().len())
            .map(|_| self.rng.random::<f64>())
            .collect();
        let mut w = Vector::zeros(m);
        for (ti, g) in t.iter().zip(self.wedge.generators()) {
            w.axpy(*ti, g);
        }
        let v = &u + &w;
        // the weights are known; the certificate records how well they
        // reproduce v - u after rounding
        let diff = &v - &u;
        let residual_norm = diff.distance(&w);
        let witness = MembershipCertificate {
            member: residual_norm <= self.tol.feas(diff.norm()),
            coefficients: Some(t),
            residual_norm,
        };
        OrderPair { u, v, witness }
    }
}

fn test_pair(projector: &dyn Projector, pair: OrderPair, tol: &Tolerance) -> Result<Option<Violation>> {
    let pu = projector.project(&pair.u)?.point;
    let pv = projector.project(&pair.v)?.point;
    let image_certificate = contains(projector.wedge(), &(&pv - &pu), tol)?;
    Ok((!image_certificate.member).then_some(Violation {
        pair,
        projected_u: pu,
        projected_v: pv,
        image_certificate,
    }))
}

/// Tests `P v - P u ∈ W` on `n_pairs` random ordered pairs, projecting with
/// the decompose-then-enumerate method.
pub fn sample_isotonicity(wedge: &GeneratedWedge, n_pairs: usize, seed: u64, tol: &Tolerance) -> Result<SampleReport> {
    let projector = DecomposedProjector::new(wedge, tol)?;
    sample_isotonicity_with(&projector, n_pairs, seed, tol)
}

pub fn sample_isotonicity_with(
    projector: &dyn Projector,
    n_pairs: usize,
    seed: u64,
    tol: &Tolerance,
) -> Result<SampleReport> {
    let mut sampler = PairSampler::new(projector.wedge(), seed, tol);
    let mut violations = Vec::new();
    for _ in 0..n_pairs {
        if let Some(v) = test_pair(projector, sampler.next_pair(), tol)? {
            violations.push(v);
        }
    }
    Ok(SampleReport {
        pairs_tested: n_pairs,
        violations,
    })
}

/// Samples ordered pairs until one violates isotonicity, giving up after
/// `budget` pairs.
pub fn find_violation_witness(
    wedge: &GeneratedWedge,
    budget: usize,
    seed: u64,
    tol: &Tolerance,
) -> Result<Option<Violation>> {
    let projector = DecomposedProjector::new(wedge, tol)?;
    find_violation_witness_with(&projector, budget, seed, tol)
}

pub fn find_violation_witness_with(
    projector: &dyn Projector,
    budget: usize,
    seed: u64,
    tol: &Tolerance,
) -> Result<Option<Violation>> {
    let mut sampler = PairSampler::new(projector.wedge(), seed, tol);
    for _ in 0..budget {
        if let Some(v) = test_pair(projector, sampler.next_pair(), tol)? {
            return Ok(Some(v));
        }
    }
    Ok(None)
}
