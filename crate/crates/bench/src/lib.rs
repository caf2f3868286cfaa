//! Shared inputs for the benchmarks.

use laman_core::{Edge, Instance, PointSet};

/// A generic 12-point set. Every prefix is generic too.
pub const POINTS: [(i64, i64); 12] = [
    (20, 71),
    (81, 86),
    (42, 28),
    (98, 70),
    (58, 81),
    (40, 9),
    (85, 82),
    (37, 16),
    (4, 32),
    (88, 28),
    (63, 47),
    (11, 94),
];

pub fn points(n: usize) -> PointSet {
    PointSet::from_integers(&POINTS[..n]).expect("generic prefix")
}

pub fn instance(n: usize, constraints: &[Edge]) -> Instance {
    Instance::new(points(n), constraints).expect("valid instance")
}
