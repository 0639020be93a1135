use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use isowedge::{build_monotone_wedge, GeneratedWedge, Vector};
use serde::{Deserialize, Serialize};

/// Wedge description read from `--wedge`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum WedgeSpecFile {
    Generators {
        ambient_dim: usize,
        generators: Vec<Vec<f64>>,
    },
    Monotone {
        m: usize,
    },
}

impl WedgeSpecFile {
    pub fn parse(text: &str) -> Result<Self> {
        let spec: Self = serde_json::from_str(text).context("malformed wedge file")?;
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        match self {
            Self::Generators {
                ambient_dim,
                generators,
            } => {
                if *ambient_dim == 0 {
                    bail!("ambient_dim must be positive");
                }
                if generators.is_empty() {
                    bail!("generator list is empty");
                }
                for (i, g) in generators.iter().enumerate() {
                    if g.len() != *ambient_dim {
                        bail!("generator {i} has {} entries, expected {ambient_dim}", g.len());
                    }
                    if g.iter().any(|c| !c.is_finite()) {
                        bail!("generator {i} has a non-finite entry");
                    }
                }
            }
            Self::Monotone { m } => {
                if *m < 2 {
                    bail!("monotone wedge needs m >= 2, got {m}");
                }
            }
        }
        Ok(())
    }

    pub fn ambient_dim(&self) -> usize {
        match self {
            Self::Generators { ambient_dim, .. } => *ambient_dim,
            Self::Monotone { m } => *m,
        }
    }

    pub fn is_monotone(&self) -> bool {
        matches!(self, Self::Monotone { .. })
    }

    pub fn to_wedge(&self) -> Result<GeneratedWedge> {
        Ok(match self {
            Self::Generators { generators, .. } => GeneratedWedge::new(
                generators
                    .iter()
                    .map(|g| Vector::new(g.clone()))
                    .collect::<isowedge::Result<_>>()?,
            )?,
            Self::Monotone { m } => build_monotone_wedge(*m)?,
        })
    }

    pub fn from_generators(generators: &[Vector], ambient_dim: usize) -> Self {
        Self::Generators {
            ambient_dim,
            generators: generators.iter().map(|g| g.coords().to_vec()).collect(),
        }
    }
}

/// One whitespace-separated vector per line; blank lines and `#` comments
/// are skipped.
pub fn parse_points(text: &str) -> Result<Vec<Vector>> {
    let mut points = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let coords = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<f64>()
                    .with_context(|| format!("line {}: cannot parse `{tok}`", lineno + 1))
            })
            .collect::<Result<Vec<_>>>()?;
        points.push(Vector::new(coords).with_context(|| format!("line {}", lineno + 1))?);
    }
    Ok(points)
}

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

pub fn check_dims(points: &[Vector], dim: usize) -> Result<()> {
    for (i, p) in points.iter().enumerate() {
        if p.dim() != dim {
            bail!("point {i} has dimension {}, wedge has {dim}", p.dim());
        }
    }
    Ok(())
}
