//! Complete and connected-complete edge-colorings of complete graphs built
//! from projective planes over finite fields, with an independent verifier,
//! the analytic bounds on the connected index, and an exact search for small
//! orders.
//!
//! The bound functions are generic over the scalar type; the aliases below
//! fix the instantiations the rest of the crate uses.

pub mod bounds;
pub mod coloring;
pub mod construct;
pub mod edge;
pub mod factor;
pub mod field;
pub mod plane;
pub mod representation;
pub mod search;
pub mod types;
pub mod verify;

/// Exact scalar for the integer upper bound.
pub type ExactRational = num_rational::Ratio<i128>;

/// Bound report with the real-valued diagnostics in double precision.
pub type BoundReport64 = bounds::BoundReport<f64>;
/// Bound report with the real-valued diagnostics in single precision.
pub type BoundReport32 = bounds::BoundReport<f32>;

pub use coloring::{Color, ColorPartition, EdgeColoring, Provenance};
pub use construct::{complete_coloring, connected_coloring, connected_coloring_best, Construction, ConstructionError};
pub use edge::Edge;
pub use field::{FieldContext, FieldElement, FieldError};
pub use plane::{build_plane, validate_axioms, ProjectivePlane};
pub use representation::{realize, LineRepresentation};
pub use search::{exact_index, Mode, SearchConfig, SearchResult};
pub use verify::{check_complete, check_connected, check_line_ownership, verify, VerifyReport};
