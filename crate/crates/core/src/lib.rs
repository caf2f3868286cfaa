//! Enumeration of constrained non-crossing Laman frameworks.
//!
//! Given a generic planar point set and a non-crossing, Laman-independent
//! set `F` of required bars, [`enumeration::reverse_search`] lists every
//! non-crossing minimally rigid framework on the points that contains `F`,
//! each exactly once and without storing previously seen outputs.
//!
//! Module map:
//! - [`geometry`]: exact predicates, point sets, edges.
//! - [`rigidity`]: the (2,3)-pebble game and rigid components.
//! - [`cdt`]: constrained Delaunay triangulations and their updates.
//! - [`enumeration`]: root, parent and adjacency oracles, the search driver.
//! - [`oracle`]: brute-force references for small instances.

mod exact;

pub mod cdt;
pub mod enumeration;
pub mod geometry;
pub mod oracle;
pub mod rigidity;

pub use cdt::{build_cdt, underlying_triangulation, AngleVector, CdtError, EdgeClass, Triangulation};
pub use enumeration::{
    lex_compare, reverse_search, EnumerationError, Framework, Instance, Node, ParentCase, ParentCheck, ParentStep,
    Pool, SearchOptions, SearchStats, Visit,
};
pub use geometry::{
    assert_generic, incircle, incircle_tiebroken, orientation, properly_intersect, Edge, EdgeSet, GenericityReport,
    GeometryError, Point, PointSet, Sign,
};
pub use rigidity::{ComponentIndex, PebbleGame};
