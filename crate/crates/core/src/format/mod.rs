//! The `.cxc` text format.
//!
//! ```text
//! cxc 1 finite
//! cube q : 0 1 2 3
//! aut perm (0 1 3 2)
//! ```
//!
//! ```text
//! cxc 1 periodic
//! orbit a
//! pcube e : (a,0) (a,1)
//! aut shift 1 perm ()
//! ```
//!
//! Cube corners are listed in binary-mask order. `# ...` starts a comment,
//! `meta <key> <value>` attaches free-form metadata. The canonical form
//! (see [`serialize`]) sorts declarations, uses single spaces, writes
//! permutations as canonical cycles, ends with a newline and drops comments.

mod parse;

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::complex::{ComplexError, CubeComplex};
use crate::gen::{GenSpec, Generated};
use crate::isometry::{IsometryError, Permutation, ShiftMap, VertexMap};
use crate::periodic::{PVertex, PeriodicComplex, PeriodicError};

pub use parse::{parse, parse_bytes};

/// Source position (1-based). Positions never take part in equality.
#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl PartialEq for Pos {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for Pos {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Finite,
    Periodic,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Finite => "finite",
            Kind::Periodic => "periodic",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CubeDecl {
    pub id: String,
    pub corners: Vec<usize>,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitDecl {
    pub name: String,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PCubeDecl {
    pub id: String,
    /// `(orbit name, offset)` with offset 0 or 1.
    pub corners: Vec<(String, i64)>,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum AutDecl {
    Perm { cycles: Vec<Vec<usize>>, pos: Pos },
    Shift { shift: i64, cycles: Vec<Vec<String>>, pos: Pos },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MetaDecl {
    pub key: String,
    pub value: String,
    pub pos: Pos,
}

#[derive(Clone, Debug, Serialize)]
pub struct Document {
    pub version: u32,
    pub kind: Kind,
    pub orbits: Vec<OrbitDecl>,
    pub cubes: Vec<CubeDecl>,
    pub pcubes: Vec<PCubeDecl>,
    pub aut: Option<AutDecl>,
    pub meta: Vec<MetaDecl>,
}

/// Documents are equal when their canonical forms are.
impl PartialEq for Document {
    fn eq(&self, other: &Self) -> bool {
        serialize(self) == serialize(other)
    }
}

impl Eq for Document {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: syntax error, expected {expected}")]
    Syntax { line: usize, col: usize, expected: String },
    #[error("{line}:{col}: unknown orbit {name:?}")]
    UnknownOrbit { line: usize, col: usize, name: String },
    #[error("{line}:{col}: {count} corners is not a power of two")]
    Arity { line: usize, col: usize, count: usize },
    #[error("{line}:{col}: duplicate {what}")]
    Duplicate { line: usize, col: usize, what: String },
    #[error("{line}:{col}: input is not valid UTF-8")]
    Encoding { line: usize, col: usize },
}

impl ParseError {
    pub fn position(&self) -> (usize, usize) {
        match *self {
            ParseError::Syntax { line, col, .. }
            | ParseError::UnknownOrbit { line, col, .. }
            | ParseError::Arity { line, col, .. }
            | ParseError::Duplicate { line, col, .. }
            | ParseError::Encoding { line, col } => (line, col),
        }
    }
}

/// Errors turning a parsed document into complexes and maps.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocError {
    #[error("expected a {expected} document, found {found}")]
    WrongKind { expected: &'static str, found: &'static str },
    #[error("invalid complex (declarations {ids:?}): {source}")]
    Complex { source: ComplexError, ids: Vec<String> },
    #[error("invalid periodic complex: {0}")]
    Periodic(#[from] PeriodicError),
    #[error("invalid automorphism: {0}")]
    Isometry(#[from] IsometryError),
    #[error("automorphism moves vertex {vertex}, but the complex has {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
}

fn cube_indices(e: &ComplexError) -> Vec<usize> {
    match *e {
        ComplexError::BadArity { cube, .. } | ComplexError::SelfGluedCube { cube, .. } => vec![cube],
        ComplexError::DuplicateCube { first, second }
        | ComplexError::Embedding { first, second, .. }
        | ComplexError::BadGluing { first, second, .. } => vec![first, second],
    }
}

fn canonical_cycles<T: Ord + Clone>(cycles: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = cycles
        .iter()
        .filter(|c| c.len() > 1)
        .map(|c| {
            let start = (0..c.len()).min_by(|&a, &b| c[a].cmp(&c[b])).expect("nonempty");
            c[start..].iter().chain(&c[..start]).cloned().collect()
        })
        .collect();
    out.sort();
    out
}

fn write_cycles<T: std::fmt::Display>(out: &mut String, cycles: &[Vec<T>]) {
    if cycles.is_empty() {
        out.push_str("()");
    }
    for c in cycles {
        out.push('(');
        for (i, x) in c.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{x}");
        }
        out.push(')');
    }
}

/// Canonical text: header, metadata sorted by key, orbits, cubes sorted by
/// id, automorphism; single spaces; trailing newline; no comments.
pub fn serialize(doc: &Document) -> String {
    let mut out = format!("cxc {} {}\n", doc.version, doc.kind.name());
    let mut meta: Vec<&MetaDecl> = doc.meta.iter().collect();
    meta.sort_by(|a, b| (&a.key, &a.value).cmp(&(&b.key, &b.value)));
    for m in meta {
        if m.value.is_empty() {
            let _ = writeln!(out, "meta {}", m.key);
        } else {
            let _ = writeln!(out, "meta {} {}", m.key, m.value);
        }
    }
    let mut orbits: Vec<&str> = doc.orbits.iter().map(|o| o.name.as_str()).collect();
    orbits.sort();
    for o in orbits {
        let _ = writeln!(out, "orbit {o}");
    }
    let mut cubes: Vec<&CubeDecl> = doc.cubes.iter().collect();
    cubes.sort_by(|a, b| (&a.id, &a.corners).cmp(&(&b.id, &b.corners)));
    for c in cubes {
        let _ = write!(out, "cube {} :", c.id);
        for v in &c.corners {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    let mut pcubes: Vec<&PCubeDecl> = doc.pcubes.iter().collect();
    pcubes.sort_by(|a, b| (&a.id, &a.corners).cmp(&(&b.id, &b.corners)));
    for c in pcubes {
        let _ = write!(out, "pcube {} :", c.id);
        for (o, z) in &c.corners {
            let _ = write!(out, " ({o},{z})");
        }
        out.push('\n');
    }
    match &doc.aut {
        Some(AutDecl::Perm { cycles, .. }) => {
            out.push_str("aut perm ");
            write_cycles(&mut out, &canonical_cycles(cycles));
            out.push('\n');
        }
        Some(AutDecl::Shift { shift, cycles, .. }) => {
            let _ = write!(out, "aut shift {shift} perm ");
            write_cycles(&mut out, &canonical_cycles(cycles));
            out.push('\n');
        }
        None => {}
    }
    out
}

fn padded_ids(prefix: &str, count: usize) -> Vec<String> {
    let width = count.saturating_sub(1).to_string().len();
    (0..count).map(|i| format!("{prefix}{i:0width$}")).collect()
}

impl Document {
    pub fn empty(kind: Kind) -> Self {
        Document {
            version: 1,
            kind,
            orbits: Vec::new(),
            cubes: Vec::new(),
            pcubes: Vec::new(),
            aut: None,
            meta: Vec::new(),
        }
    }

    /// Finite document listing the maximal cubes of `x`.
    pub fn from_complex(x: &CubeComplex, aut: Option<&VertexMap>) -> Self {
        let list = x.to_cube_list();
        let ids = padded_ids("c", list.len());
        let mut doc = Document::empty(Kind::Finite);
        doc.cubes = list
            .into_iter()
            .zip(ids)
            .map(|(corners, id)| CubeDecl {
                id,
                corners,
                pos: Pos::default(),
            })
            .collect();
        doc.aut = aut.map(|g| AutDecl::Perm {
            cycles: g.0.cycles(),
            pos: Pos::default(),
        });
        doc
    }

    pub fn from_periodic(p: &PeriodicComplex, aut: Option<&ShiftMap>) -> Self {
        let names = p.orbit_names();
        let ids = padded_ids("p", p.cube_orbits().len());
        let mut doc = Document::empty(Kind::Periodic);
        doc.orbits = names
            .iter()
            .map(|n| OrbitDecl {
                name: n.clone(),
                pos: Pos::default(),
            })
            .collect();
        doc.pcubes = p
            .cube_orbits()
            .iter()
            .zip(ids)
            .map(|(cube, id)| PCubeDecl {
                id,
                corners: cube.iter().map(|v| (names[v.orbit.0].clone(), v.z)).collect(),
                pos: Pos::default(),
            })
            .collect();
        doc.aut = aut.map(|g| AutDecl::Shift {
            shift: g.shift,
            cycles: g
                .perm
                .cycles()
                .iter()
                .map(|c| c.iter().map(|&i| names[i].clone()).collect())
                .collect(),
            pos: Pos::default(),
        });
        doc
    }

    /// Document for a generator run, tagged with `family`, `seed` and `size` metadata.
    pub fn generated(spec: &GenSpec) -> Self {
        let doc = match spec.generate() {
            Generated::Finite(x) => Document::from_complex(&x, None),
            Generated::Periodic(f) => Document::from_periodic(&f.complex, Some(&f.map)),
        };
        doc.with_meta("family", spec.family.name())
            .with_meta("seed", &spec.seed.to_string())
            .with_meta("size", &spec.size.to_string())
    }

    pub fn with_meta(mut self, key: &str, value: &str) -> Self {
        self.meta.push(MetaDecl {
            key: key.to_string(),
            value: value.to_string(),
            pos: Pos::default(),
        });
        self
    }

    pub fn meta_value(&self, key: &str) -> Option<&str> {
        self.meta.iter().find(|m| m.key == key).map(|m| m.value.as_str())
    }

    fn expect_kind(&self, kind: Kind) -> Result<(), DocError> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(DocError::WrongKind {
                expected: kind.name(),
                found: self.kind.name(),
            })
        }
    }

    /// Builds the finite complex; errors name the offending declarations.
    pub fn to_complex(&self) -> Result<CubeComplex, DocError> {
        self.expect_kind(Kind::Finite)?;
        let list: Vec<Vec<usize>> = self.cubes.iter().map(|c| c.corners.clone()).collect();
        CubeComplex::build(&list).map_err(|source| {
            let ids = cube_indices(&source).into_iter().map(|i| self.cubes[i].id.clone()).collect();
            DocError::Complex { source, ids }
        })
    }

    pub fn to_periodic(&self) -> Result<PeriodicComplex, DocError> {
        self.expect_kind(Kind::Periodic)?;
        let names: Vec<String> = self.orbits.iter().map(|o| o.name.clone()).collect();
        let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let cubes = self
            .pcubes
            .iter()
            .map(|c| c.corners.iter().map(|(o, z)| PVertex::new(index[o.as_str()], *z)).collect())
            .collect();
        Ok(PeriodicComplex::new(names, cubes)?)
    }

    /// The declared automorphism of a finite complex on `n` vertices.
    pub fn finite_map(&self, n: usize) -> Result<Option<VertexMap>, DocError> {
        self.expect_kind(Kind::Finite)?;
        match &self.aut {
            Some(AutDecl::Perm { cycles, .. }) => {
                if let Some(&v) = cycles.iter().flatten().find(|&&v| v >= n) {
                    return Err(DocError::VertexOutOfRange { vertex: v, count: n });
                }
                Ok(Some(VertexMap(Permutation::from_cycles(n, cycles)?)))
            }
            _ => Ok(None),
        }
    }

    /// The declared automorphism of the periodic complex `p` built from this document.
    pub fn periodic_map(&self, p: &PeriodicComplex) -> Result<Option<ShiftMap>, DocError> {
        self.expect_kind(Kind::Periodic)?;
        match &self.aut {
            Some(AutDecl::Shift { shift, cycles, .. }) => {
                let cycles: Vec<Vec<usize>> = cycles
                    .iter()
                    .map(|c| c.iter().map(|n| p.orbit_by_name(n).expect("checked by the parser").0).collect())
                    .collect();
                Ok(Some(ShiftMap {
                    perm: Permutation::from_cycles(p.orbit_count(), &cycles)?,
                    shift: *shift,
                }))
            }
            _ => Ok(None),
        }
    }
}
