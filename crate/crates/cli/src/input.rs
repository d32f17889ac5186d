use std::path::Path;

use cxc_core::complex::CubeComplex;
use cxc_core::cube::VertexId;
use cxc_core::format::{parse_bytes, DocError, Document, Kind};
use cxc_core::isometry::{ShiftMap, VertexMap};
use cxc_core::periodic::{PVertex, PeriodicComplex, PeriodicError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}:{source}")]
    Parse {
        path: String,
        source: cxc_core::format::ParseError,
    },
    #[error("{0}")]
    Doc(#[from] DocError),
    #[error("{0}")]
    Usage(String),
}

impl InputError {
    /// Errors that describe an invalid complex or map rather than a bad file.
    pub fn is_violation(&self) -> bool {
        matches!(
            self,
            InputError::Doc(
                DocError::Complex { .. }
                    | DocError::Periodic(PeriodicError::InvalidPeriodicData { .. })
            )
        )
    }
}

pub enum Loaded {
    Finite {
        doc: Document,
        complex: CubeComplex,
        map: Option<VertexMap>,
    },
    Periodic {
        doc: Document,
        complex: PeriodicComplex,
        map: Option<ShiftMap>,
    },
}

impl Loaded {
    pub fn kind(&self) -> Kind {
        match self {
            Loaded::Finite { .. } => Kind::Finite,
            Loaded::Periodic { .. } => Kind::Periodic,
        }
    }
}

pub fn read_document(path: &str) -> Result<Document, InputError> {
    let bytes = if path == "-" {
        let mut buf = Vec::new();
        std::io::Read::read_to_end(&mut std::io::stdin(), &mut buf).map(|_| buf)
    } else {
        std::fs::read(Path::new(path))
    }
    .map_err(|source| InputError::Io {
        path: path.to_string(),
        source,
    })?;
    parse_bytes(&bytes).map_err(|source| InputError::Parse {
        path: path.to_string(),
        source,
    })
}

pub fn load(doc: Document, growth_cap: usize) -> Result<Loaded, InputError> {
    Ok(match doc.kind {
        Kind::Finite => {
            let complex = doc.to_complex()?;
            let map = doc.finite_map(complex.vertex_count())?;
            Loaded::Finite { doc, complex, map }
        }
        Kind::Periodic => {
            let complex = doc.to_periodic()?.with_growth_cap(growth_cap);
            let map = doc.periodic_map(&complex)?;
            Loaded::Periodic { doc, complex, map }
        }
    })
}

pub fn finite_vertex(x: &CubeComplex, text: &str) -> Result<VertexId, InputError> {
    let v: usize = text
        .trim()
        .parse()
        .map_err(|_| InputError::Usage(format!("expected a vertex id, got {text:?}")))?;
    if v < x.vertex_count() {
        Ok(VertexId(v))
    } else {
        Err(InputError::Usage(format!(
            "vertex {v} out of range (the complex has {} vertices)",
            x.vertex_count()
        )))
    }
}

/// `(a,3)` or `a,3`.
pub fn periodic_vertex(p: &PeriodicComplex, text: &str) -> Result<PVertex, InputError> {
    let bad = || InputError::Usage(format!("expected a vertex like (a,0), got {text:?}"));
    let t = text.trim();
    let t = t.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(t);
    let (name, z) = t.split_once(',').ok_or_else(bad)?;
    let z: i64 = z.trim().parse().map_err(|_| bad())?;
    let orbit = p
        .orbit_by_name(name.trim())
        .ok_or_else(|| InputError::Usage(format!("unknown orbit {:?}", name.trim())))?;
    Ok(PVertex::new(orbit.0, z))
}
