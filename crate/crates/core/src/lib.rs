//! Leavitt path algebras of directed graphs over exact fields: normal forms,
//! graded ideals, graph transforms and property checks.

pub mod algebra;
pub mod catalogue;
pub mod cli;
pub mod error;
pub mod field;
pub mod graph;
pub mod io;
pub mod lattice;
pub mod laurent;
pub mod props;
pub mod transforms;

pub use algebra::{parse_element, Element, Lpa, Monomial};
pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use graph::{EdgeId, Graph, GraphBuilder, Path, VertexClass, VertexId};
pub use lattice::{AdmissiblePair, VertexSet};
