//! Exact angle vectors.
//!
//! An interior angle of a counter-clockwise triangle is kept as the pair
//! `(dot, cross)` of its two edge vectors with `cross > 0`. The angle is
//! `atan2(cross, dot)`, which is strictly decreasing in `dot / cross`, so two
//! angles compare by a single cross-multiplication.

use std::cmp::Ordering;

use num_bigint::BigInt;

use crate::exact::cmp_products;
use crate::geometry::Point;

#[derive(Debug, Clone)]
pub struct Angle {
    dot: BigInt,
    cross: BigInt,
}

impl Angle {
    /// The angle at `apex` between the rays to `p` and `q`.
    pub fn at(apex: &Point, p: &Point, q: &Point) -> Angle {
        let ux = BigInt::from(p.x) - apex.x;
        let uy = BigInt::from(p.y) - apex.y;
        let vx = BigInt::from(q.x) - apex.x;
        let vy = BigInt::from(q.y) - apex.y;
        let dot = &ux * &vx + &uy * &vy;
        let cross: BigInt = &ux * &vy - &uy * &vx;
        Angle {
            dot,
            cross: if cross < BigInt::from(0) { -cross } else { cross },
        }
    }
}

impl Ord for Angle {
    fn cmp(&self, other: &Self) -> Ordering {
        // smaller angle <=> larger cotangent
        cmp_products(&other.dot, &self.cross, &self.dot, &other.cross)
    }
}

impl PartialOrd for Angle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Angle {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Angle {}

/// All interior angles of a triangulation, sorted non-decreasingly and
/// compared lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AngleVector(Vec<Angle>);

impl AngleVector {
    pub fn from_triangles<'a>(tris: impl IntoIterator<Item = [&'a Point; 3]>) -> Self {
        let mut angles = Vec::new();
        for [a, b, c] in tris {
            angles.push(Angle::at(a, b, c));
            angles.push(Angle::at(b, c, a));
            angles.push(Angle::at(c, a, b));
        }
        angles.sort();
        AngleVector(angles)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn angles(&self) -> &[Angle] {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point {
        Point::new(0, x, y)
    }

    #[test]
    fn right_angle_beats_acute() {
        let right = Angle::at(&p(0, 0), &p(1, 0), &p(0, 1));
        let acute = Angle::at(&p(0, 0), &p(2, 0), &p(1, 1));
        let obtuse = Angle::at(&p(0, 0), &p(1, 0), &p(-1, 1));
        assert!(acute < right);
        assert!(right < obtuse);
        assert_eq!(acute, Angle::at(&p(5, 5), &p(9, 5), &p(7, 7)));
    }

    #[test]
    fn single_triangle_vector() {
        let (a, b, c) = (p(0, 0), p(1, 0), p(0, 1));
        let v = AngleVector::from_triangles([[&a, &b, &c]]);
        assert_eq!(v.len(), 3);
        let half_right = Angle::at(&p(0, 0), &p(1, 0), &p(1, 1));
        assert_eq!(v.angles()[0], half_right);
        assert_eq!(v.angles()[1], half_right);
        assert_eq!(v.angles()[2], Angle::at(&a, &b, &c));
    }
}
