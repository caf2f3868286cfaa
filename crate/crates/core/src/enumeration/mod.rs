//! Reverse search over constrained non-crossing Laman frameworks.
//!
//! Every framework other than the root `L*` has a parent obtained by a single
//! edge exchange. Case 1 frameworks lie inside the constrained Delaunay
//! triangulation and move towards `L*` in lexicographic order; all others
//! drop their largest `F`-illegal edge, which strictly increases the angle
//! vector of the underlying triangulation. The driver walks the resulting
//! tree depth first and keeps only the current node in memory.

mod framework;
mod instance;
mod node;
mod parent;
mod search;

pub use framework::{lex_compare, Framework};
pub use instance::{EnumerationError, Instance};
pub use node::{Node, Pool};
pub use parent::{ParentCase, ParentStep};
pub use search::{reverse_search, ParentCheck, SearchOptions, SearchStats, Visit};
