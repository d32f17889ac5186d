//! Combinatorial toolkit for finite and Z-periodic cubical complexes.

pub mod complex;
pub mod contraction;
pub mod cube;
pub mod format;
pub mod gen;
pub mod isometry;
pub mod link;
pub mod metric;
pub mod periodic;
pub mod walls;

pub use complex::{CubeComplex, CubeRef, EdgeId};
pub use cube::{Cube, VertexId};
