use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{Tolerance, Vector};
use crate::wedge::GeneratedWedge;

use super::methods::{DecomposedProjector, DirectProjector, NnlsProjector, PavaProjector};
use super::ProjectionResult;

/// A projection method bound to one wedge.
///
/// Implementations do their per-wedge preparation (decomposition, shape
/// checks) when they are built, so `project` can be called repeatedly.
pub trait Projector: Send + Sync {
    /// Registry name of the method.
    fn method(&self) -> &'static str;

    fn wedge(&self) -> &GeneratedWedge;

    /// Projects `x`; every `Ok` result carries a passing certificate.
    fn project(&self, x: &Vector) -> Result<ProjectionResult>;
}

impl fmt::Debug for dyn Projector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Projector")
            .field("method", &self.method())
            .field("ambient_dim", &self.wedge().ambient_dim())
            .finish()
    }
}

pub type ProjectorFactory = fn(&GeneratedWedge, &Tolerance) -> Result<Box<dyn Projector>>;

#[derive(Clone)]
pub struct MethodEntry {
    pub name: &'static str,
    pub description: &'static str,
    factory: ProjectorFactory,
}

impl fmt::Debug for MethodEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MethodEntry")
            .field("name", &self.name)
            .field("description", &self.description)
            .finish()
    }
}

/// Projection methods selectable by name.
#[derive(Debug, Clone)]
pub struct ProjectorRegistry {
    entries: BTreeMap<&'static str, MethodEntry>,
}

impl Default for ProjectorRegistry {
    fn default() -> Self {
        let mut registry = Self::empty();
        registry.register(
            DecomposedProjector::NAME,
            "split off the lineality space, face-enumerate the pointed part",
            DecomposedProjector::boxed,
        );
        registry.register(
            DirectProjector::NAME,
            "face-enumerate the full generator list plus ± lineality basis",
            DirectProjector::boxed,
        );
        registry.register(
            NnlsProjector::NAME,
            "split off the lineality space, active-set NNLS on the pointed part",
            NnlsProjector::boxed,
        );
        registry.register(
            PavaProjector::NAME,
            "pool-adjacent-violators; monotone wedge only",
            PavaProjector::boxed,
        );
        registry
    }
}

impl ProjectorRegistry {
    pub fn empty() -> Self {
        Self {
            entries: BTreeMap::new(),
        }
    }

    /// Adds a method, replacing (and returning) any entry with the same name.
    pub fn register(
        &mut self,
        name: &'static str,
        description: &'static str,
        factory: ProjectorFactory,
    ) -> Option<MethodEntry> {
        self.entries.insert(
            name,
            MethodEntry {
                name,
                description,
                factory,
            },
        )
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = &MethodEntry> {
        self.entries.values()
    }

    pub fn get(&self, name: &str) -> Option<&MethodEntry> {
        self.entries.get(name)
    }

    pub fn build(&self, name: &str, wedge: &GeneratedWedge, tol: &Tolerance) -> Result<Box<dyn Projector>> {
        let entry = self
            .entries
            .get(name)
            .ok_or_else(|| Error::UnknownMethod(name.to_string()))?;
        (entry.factory)(wedge, tol)
    }
}
