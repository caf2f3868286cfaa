//! Constrained Delaunay triangulations and their local updates.
//!
//! A [`Triangulation`] is stored as a rotation system: every vertex keeps its
//! neighbours in counter-clockwise order, which is enough to walk faces,
//! flip diagonals and retriangulate the cavity left by a new constraint.
//! Every in-circle decision uses [`incircle_tiebroken`], so the constrained
//! Delaunay triangulation of any constraint set is unique.

mod angle;

use std::cmp::Ordering;
use std::sync::Arc;

use thiserror::Error;

pub use angle::{Angle, AngleVector};

use crate::geometry::{incircle_tiebroken, Edge, EdgeSet, PointSet, Sign};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CdtError {
    #[error("constraint {0} crosses constraint {1}")]
    ConstraintCrossing(Edge, Edge),
    #[error("edge {0} has an endpoint outside the point set")]
    VertexOutOfRange(Edge),
    #[error("edge {0} is not in the triangulation")]
    NotAnEdge(Edge),
    #[error("the first points of the sweep are collinear")]
    Degenerate,
    #[error("edge set is not a triangulation: {0}")]
    NotATriangulation(String),
}

/// Role of an edge within a triangulation relative to a constraint set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeClass {
    /// Convex-hull edge; never flippable.
    Hull,
    /// Member of the constraint set.
    Constrained,
    /// Locally Delaunay, or not the diagonal of a convex quadrilateral.
    Legal,
    /// Flipping it would be a D-flip.
    Illegal,
}

/// A triangulation of a fixed point set with per-edge constraint flags.
#[derive(Debug, Clone)]
pub struct Triangulation {
    points: Arc<PointSet>,
    nbrs: Vec<Vec<usize>>,
    present: EdgeSet,
    constrained: EdgeSet,
}

impl PartialEq for Triangulation {
    fn eq(&self, other: &Self) -> bool {
        self.present == other.present && self.constrained == other.constrained
    }
}

impl Eq for Triangulation {}

/// Counter-clockwise order of `p` and `q` around `c`, starting from the
/// positive x-axis.
fn ccw_around(points: &PointSet, c: usize, p: usize, q: usize) -> Ordering {
    let half = |w: usize| {
        let (dx, dy) = (
            points.point(w).x - points.point(c).x,
            points.point(w).y - points.point(c).y,
        );
        if dy > 0 || (dy == 0 && dx > 0) {
            0
        } else {
            1
        }
    };
    half(p).cmp(&half(q)).then_with(|| match points.orient(c, p, q) {
        Sign::Positive => Ordering::Less,
        Sign::Negative => Ordering::Greater,
        Sign::Zero => Ordering::Equal,
    })
}

impl Triangulation {
    fn empty(points: Arc<PointSet>) -> Self {
        let n = points.len();
        Triangulation {
            nbrs: vec![Vec::new(); n],
            present: EdgeSet::new(n),
            constrained: EdgeSet::new(n),
            points,
        }
    }

    /// Wraps an explicit edge set, checking that it triangulates the point
    /// set (hull present, no crossings, `3n - h - 3` edges).
    pub fn from_edges(
        points: Arc<PointSet>,
        edges: impl IntoIterator<Item = Edge>,
        constraints: impl IntoIterator<Item = Edge>,
    ) -> Result<Self, CdtError> {
        let mut t = Triangulation::empty(points);
        let n = t.points.len();
        for e in edges {
            if e.v >= n {
                return Err(CdtError::VertexOutOfRange(e));
            }
            if !t.present.contains(e) {
                t.add_edge(e);
            }
        }
        for c in constraints {
            if !t.present.contains(c) {
                return Err(CdtError::NotATriangulation(format!("constraint {c} missing")));
            }
            t.constrained.insert(c);
        }
        let expected = 3 * n - t.points.hull().len() - 3;
        if t.edge_count() != expected {
            return Err(CdtError::NotATriangulation(format!(
                "{} edges, expected {expected}",
                t.edge_count()
            )));
        }
        if let Some(h) = t.points.hull_edges().find(|&h| !t.present.contains(h)) {
            return Err(CdtError::NotATriangulation(format!("hull edge {h} missing")));
        }
        let edges: Vec<Edge> = t.edges().collect();
        for (i, &e) in edges.iter().enumerate() {
            if let Some(&f) = edges[i + 1..].iter().find(|&&f| t.points.edges_cross(e, f)) {
                return Err(CdtError::NotATriangulation(format!("{e} crosses {f}")));
            }
        }
        Ok(t)
    }

    pub fn points(&self) -> &Arc<PointSet> {
        &self.points
    }

    pub fn vertex_count(&self) -> usize {
        self.points.len()
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        self.present.contains(e)
    }

    pub fn is_constrained(&self, e: Edge) -> bool {
        self.constrained.contains(e)
    }

    pub fn edge_set(&self) -> &EdgeSet {
        &self.present
    }

    pub fn constraint_set(&self) -> &EdgeSet {
        &self.constrained
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.present.iter()
    }

    pub fn edge_count(&self) -> usize {
        self.present.len()
    }

    /// Counter-clockwise neighbours of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.nbrs[v]
    }

    fn add_edge(&mut self, e: Edge) {
        self.present.insert(e);
        for (c, w) in [(e.u, e.v), (e.v, e.u)] {
            let pts = &self.points;
            let pos = self.nbrs[c]
                .binary_search_by(|&x| ccw_around(pts, c, x, w))
                .unwrap_or_else(|p| p);
            self.nbrs[c].insert(pos, w);
        }
    }

    fn remove_edge(&mut self, e: Edge) {
        self.present.remove(e);
        self.constrained.remove(e);
        for (c, w) in [(e.u, e.v), (e.v, e.u)] {
            if let Some(pos) = self.nbrs[c].iter().position(|&x| x == w) {
                self.nbrs[c].remove(pos);
            }
        }
    }

    /// Third vertex of the triangle to the left of the directed edge `u -> v`.
    pub fn left_vertex(&self, u: usize, v: usize) -> Option<usize> {
        let around = &self.nbrs[v];
        let pos = around.iter().position(|&x| x == u)?;
        let w = around[(pos + around.len() - 1) % around.len()];
        (w != u && self.points.orient(u, v, w).is_positive() && self.present.contains(Edge::new(u, w))).then_some(w)
    }

    /// Triangles as counter-clockwise vertex triples, each listed once with
    /// its smallest vertex first.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for u in 0..self.vertex_count() {
            let around = &self.nbrs[u];
            let d = around.len();
            for k in 0..d {
                let (v, w) = (around[k], around[(k + 1) % d]);
                if d >= 2
                    && u < v
                    && u < w
                    && self.points.orient(u, v, w).is_positive()
                    && self.present.contains(Edge::new(v, w))
                {
                    out.push([u, v, w]);
                }
            }
        }
        out
    }

    pub fn angle_vector(&self) -> AngleVector {
        let pts = &self.points;
        AngleVector::from_triangles(
            self.triangles()
                .into_iter()
                .map(|[a, b, c]| [pts.point(a), pts.point(b), pts.point(c)]),
        )
    }

    /// Whether `e` would be flipped by a D-flip, treating edges in `fixed`
    /// (and hull edges) as unflippable.
    pub fn is_illegal(&self, e: Edge, fixed: &EdgeSet) -> bool {
        if !self.present.contains(e) || fixed.contains(e) || self.points.is_hull_edge(e) {
            return false;
        }
        self.illegal_quad(e).is_some()
    }

    /// For a flippable, non-locally-Delaunay edge returns its opposite
    /// vertices `(left of u->v, left of v->u)`.
    fn illegal_quad(&self, e: Edge) -> Option<(usize, usize)> {
        let a = self.left_vertex(e.u, e.v)?;
        let b = self.left_vertex(e.v, e.u)?;
        if !self.points.edges_cross(e, Edge::new(a, b)) {
            return None;
        }
        let p = |i| self.points.point(i);
        let s = incircle_tiebroken(p(e.u), p(e.v), p(a), p(b)).expect("triangle u,v,a is ccw");
        (s == Sign::Positive).then_some((a, b))
    }

    pub fn classify_edge(&self, e: Edge, fixed: &EdgeSet) -> Result<EdgeClass, CdtError> {
        if !self.present.contains(e) {
            return Err(CdtError::NotAnEdge(e));
        }
        Ok(if self.points.is_hull_edge(e) {
            EdgeClass::Hull
        } else if fixed.contains(e) {
            EdgeClass::Constrained
        } else if self.illegal_quad(e).is_some() {
            EdgeClass::Illegal
        } else {
            EdgeClass::Legal
        })
    }

    /// Edges that are illegal with respect to `fixed`, in lexicographic order.
    pub fn illegal_edges<'a>(&'a self, fixed: &'a EdgeSet) -> impl Iterator<Item = Edge> + 'a {
        self.edges().filter(move |&e| self.is_illegal(e, fixed))
    }

    /// Lexicographically largest illegal edge with respect to `fixed`.
    pub fn max_illegal_edge(&self, fixed: &EdgeSet) -> Option<Edge> {
        self.illegal_edges(fixed).last()
    }

    /// Replaces the diagonal `e` of its quadrilateral by the other diagonal.
    fn flip(&mut self, e: Edge, a: usize, b: usize) -> Edge {
        self.remove_edge(e);
        let f = Edge::new(a, b);
        self.add_edge(f);
        f
    }

    /// Lawson flipping from a work stack until every edge in the affected
    /// region is locally Delaunay with respect to `fixed`.
    fn lawson(
        &mut self,
        mut stack: Vec<Edge>,
        fixed: &EdgeSet,
        on_flip: &mut dyn FnMut(&Triangulation, Edge, Edge),
    ) -> usize {
        let mut flips = 0;
        while let Some(e) = stack.pop() {
            if !self.present.contains(e) || fixed.contains(e) || self.points.is_hull_edge(e) {
                continue;
            }
            if let Some((a, b)) = self.illegal_quad(e) {
                let f = self.flip(e, a, b);
                flips += 1;
                on_flip(self, e, f);
                stack.extend([
                    Edge::new(e.u, a),
                    Edge::new(a, e.v),
                    Edge::new(e.v, b),
                    Edge::new(b, e.u),
                ]);
            }
        }
        flips
    }

    /// Flips illegal edges until none remain, making `constraints` the
    /// constraint set. Returns the number of D-flips performed.
    pub fn legalize(&mut self, constraints: &[Edge]) -> usize {
        self.legalize_with(constraints, |_, _, _| {})
    }

    /// [`Triangulation::legalize`], calling `on_flip(t, removed, added)` after
    /// each flip.
    pub fn legalize_with(
        &mut self,
        constraints: &[Edge],
        mut on_flip: impl FnMut(&Triangulation, Edge, Edge),
    ) -> usize {
        let n = self.vertex_count();
        self.constrained = EdgeSet::from_edges(n, constraints.iter().copied());
        let fixed = self.constrained.clone();
        let stack: Vec<Edge> = self.edges().collect();
        self.lawson(stack, &fixed, &mut on_flip)
    }

    /// Makes `e` a constraint and restores the constrained Delaunay property.
    ///
    /// Unconstrained edges crossing `e` are removed and the two cavities on
    /// either side of `e` are retriangulated independently.
    pub fn insert_edge_update(&mut self, e: Edge) -> Result<(), CdtError> {
        let n = self.vertex_count();
        if e.v >= n {
            return Err(CdtError::VertexOutOfRange(e));
        }
        if self.present.contains(e) {
            self.constrained.insert(e);
            return Ok(());
        }
        let (crossed, left, right) = self.cavity(e.u, e.v);
        if let Some(&c) = crossed.iter().find(|&&c| self.constrained.contains(c)) {
            return Err(CdtError::ConstraintCrossing(e, c));
        }
        for &c in &crossed {
            self.remove_edge(c);
        }
        self.add_edge(e);
        self.constrained.insert(e);
        self.fill(e.u, e.v, &left);
        let right_rev: Vec<usize> = right.iter().rev().copied().collect();
        self.fill(e.v, e.u, &right_rev);
        Ok(())
    }

    /// Drops `e` from the constraint set and legalizes around it. Hull edges
    /// only lose their flag.
    pub fn remove_edge_update(&mut self, e: Edge) -> Result<(), CdtError> {
        if e.v >= self.vertex_count() {
            return Err(CdtError::VertexOutOfRange(e));
        }
        if !self.present.contains(e) {
            return Err(CdtError::NotAnEdge(e));
        }
        self.constrained.remove(e);
        let fixed = self.constrained.clone();
        self.lawson(vec![e], &fixed, &mut |_, _, _| {});
        Ok(())
    }

    /// Walks from `u` to `v` through the triangles pierced by segment `uv`.
    /// Returns the pierced edges and the interior vertex chains to the left
    /// and to the right of `u -> v`, both ordered from `u` towards `v`.
    fn cavity(&self, u: usize, v: usize) -> (Vec<Edge>, Vec<usize>, Vec<usize>) {
        let pts = &self.points;
        let around = &self.nbrs[u];
        let d = around.len();
        let (mut a, mut b) = (0..d)
            .map(|k| (around[k], around[(k + 1) % d]))
            .find(|&(a, b)| {
                pts.orient(u, v, a).is_negative()
                    && pts.orient(u, v, b).is_positive()
                    && pts.orient(u, a, b).is_positive()
            })
            .expect("segment leaves u through some triangle");
        let mut crossed = vec![Edge::new(a, b)];
        let (mut left, mut right) = (vec![b], vec![a]);
        loop {
            let w = self.left_vertex(b, a).expect("segment stays inside the hull");
            if w == v {
                break;
            }
            if pts.orient(u, v, w).is_positive() {
                b = w;
                left.push(w);
            } else {
                a = w;
                right.push(w);
            }
            crossed.push(Edge::new(a, b));
        }
        (crossed, left, right)
    }

    /// Constrained Delaunay triangulation of the pseudo-polygon with base
    /// `a -> b` and `chain` (ordered from `a` to `b`) lying to its left.
    fn fill(&mut self, a: usize, b: usize, chain: &[usize]) {
        if chain.is_empty() {
            return;
        }
        let p = |i| self.points.point(i);
        let mut best = 0;
        for k in 1..chain.len() {
            let s =
                incircle_tiebroken(p(a), p(b), p(chain[best]), p(chain[k])).expect("chain vertex is left of the base");
            if s == Sign::Positive {
                best = k;
            }
        }
        let c = chain[best];
        for f in [Edge::new(a, c), Edge::new(c, b)] {
            if !self.present.contains(f) {
                self.add_edge(f);
            }
        }
        let (before, after) = (chain[..best].to_vec(), chain[best + 1..].to_vec());
        self.fill(a, c, &before);
        self.fill(c, b, &after);
    }
}

/// The constrained Delaunay triangulation of `points` with `constraints`.
///
/// Points are swept in lexicographic order, each attached to the visible
/// part of the current hull and legalized by flips; constraints are then
/// inserted one by one with [`Triangulation::insert_edge_update`].
pub fn build_cdt(points: Arc<PointSet>, constraints: &[Edge]) -> Result<Triangulation, CdtError> {
    let n = points.len();
    if let Some(&e) = constraints.iter().find(|e| e.v >= n) {
        return Err(CdtError::VertexOutOfRange(e));
    }
    let mut t = delaunay(points)?;
    for &c in constraints {
        t.insert_edge_update(c)?;
    }
    Ok(t)
}

fn delaunay(points: Arc<PointSet>) -> Result<Triangulation, CdtError> {
    let n = points.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (points.point(i).x, points.point(i).y));
    let mut t = Triangulation::empty(points.clone());
    let (p0, p1, p2) = (order[0], order[1], order[2]);
    let mut hull = match points.orient(p0, p1, p2) {
        Sign::Positive => vec![p0, p1, p2],
        Sign::Negative => vec![p0, p2, p1],
        Sign::Zero => return Err(CdtError::Degenerate),
    };
    for e in [Edge::new(p0, p1), Edge::new(p1, p2), Edge::new(p0, p2)] {
        t.add_edge(e);
    }
    let fixed = EdgeSet::new(n);
    for &p in &order[3..] {
        let h = hull.len();
        let visible: Vec<bool> = (0..h)
            .map(|k| points.orient(hull[k], hull[(k + 1) % h], p).is_negative())
            .collect();
        let start = (0..h)
            .find(|&k| visible[k] && !visible[(k + h - 1) % h])
            .ok_or(CdtError::Degenerate)?;
        let mut chain = vec![hull[start]];
        let mut k = start;
        let mut stack = Vec::new();
        while visible[k] {
            let next = (k + 1) % h;
            stack.push(Edge::new(hull[k], hull[next]));
            chain.push(hull[next]);
            k = next;
        }
        for &c in &chain {
            t.add_edge(Edge::new(p, c));
        }
        // Splice p between the first and last chain vertices.
        let last = (start + chain.len() - 1) % h;
        let mut new_hull = Vec::with_capacity(h + 1);
        let mut i = last;
        loop {
            new_hull.push(hull[i]);
            if i == start {
                break;
            }
            i = (i + 1) % h;
        }
        new_hull.push(p);
        hull = new_hull;
        t.lawson(stack, &fixed, &mut |_, _, _| {});
    }
    debug_assert_eq!(t.edge_count(), 3 * n - t.points.hull().len() - 3);
    Ok(t)
}

/// The underlying triangulation `T(L)` of a non-crossing edge set: hull
/// edges plus the constrained Delaunay triangulation of every face of
/// `L`, i.e. the constrained Delaunay triangulation with constraints `L`.
pub fn underlying_triangulation(points: Arc<PointSet>, framework: &[Edge]) -> Result<Triangulation, CdtError> {
    build_cdt(points, framework)
}

/// Number of edges of any triangulation of `points`.
pub fn triangulation_edge_count(points: &PointSet) -> usize {
    3 * points.len() - points.hull().len() - 3
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: usize, b: usize) -> Edge {
        Edge::from_labels(a, b)
    }

    fn quad() -> Arc<PointSet> {
        Arc::new(PointSet::from_integers(&[(0, 0), (4, 0), (3, 3), (0, 2)]).unwrap())
    }

    #[test]
    fn three_points_single_triangle() {
        let ps = Arc::new(PointSet::from_integers(&[(0, 0), (1, 0), (0, 1)]).unwrap());
        let t = build_cdt(ps, &[]).unwrap();
        assert_eq!(t.edges().collect::<Vec<_>>(), vec![e(1, 2), e(1, 3), e(2, 3)]);
        assert_eq!(t.triangles(), vec![[0, 1, 2]]);
    }

    #[test]
    fn four_point_cdt_picks_delaunay_diagonal() {
        // (3,3) lies on the circle through the other three points, so the
        // symbolic tie-break picks the diagonal.
        let ps = quad();
        let t = build_cdt(ps.clone(), &[]).unwrap();
        assert_eq!(t.edge_count(), 5);
        let p = |i| ps.point(i);
        let s13 = incircle_tiebroken(p(0), p(1), p(2), p(3)).unwrap();
        let expected_diag = if s13 == Sign::Positive { e(2, 4) } else { e(1, 3) };
        assert!(t.has_edge(expected_diag));
        assert_eq!(t.illegal_edges(&EdgeSet::new(4)).count(), 0);
    }

    fn quad_generic() -> Arc<PointSet> {
        // (0,0),(4,0),(4,3),(0,2): the circle through the first three has
        // centre (2,1.5), r^2 = 6.25; (0,2) is at distance^2 4.25, inside.
        Arc::new(PointSet::from_integers(&[(0, 0), (4, 0), (4, 3), (0, 2)]).unwrap())
    }

    #[test]
    fn generic_quad_examples() {
        let ps = quad_generic();
        let t = build_cdt(ps.clone(), &[]).unwrap();
        // (0,2) inside circle(1,2,3) => diagonal 13 is illegal, 24 is Delaunay.
        assert!(t.has_edge(e(2, 4)));
        assert!(!t.has_edge(e(1, 3)));
        let none = EdgeSet::new(4);
        assert_eq!(t.classify_edge(e(1, 2), &none).unwrap(), EdgeClass::Hull);
        assert_eq!(t.classify_edge(e(2, 4), &none).unwrap(), EdgeClass::Legal);
        assert_eq!(t.classify_edge(e(1, 3), &none), Err(CdtError::NotAnEdge(e(1, 3))));

        let tc = build_cdt(ps.clone(), &[e(1, 3)]).unwrap();
        assert!(tc.has_edge(e(1, 3)) && tc.is_constrained(e(1, 3)));
        let f = EdgeSet::from_edges(4, [e(1, 3)]);
        assert_eq!(tc.classify_edge(e(1, 3), &f).unwrap(), EdgeClass::Constrained);
        assert_eq!(tc.classify_edge(e(1, 3), &none).unwrap(), EdgeClass::Illegal);

        // Legalizing the non-Delaunay triangulation takes one flip.
        let mut bad = tc.clone();
        assert_eq!(bad.legalize(&[]), 1);
        assert_eq!(bad, t);
        let mut good = t.clone();
        assert_eq!(good.legalize(&[]), 0);

        // Updates in both directions.
        let mut up = t.clone();
        up.insert_edge_update(e(1, 3)).unwrap();
        assert_eq!(up, tc);
        up.remove_edge_update(e(1, 3)).unwrap();
        assert_eq!(up, t);
        let mut same = t.clone();
        same.remove_edge_update(e(2, 4)).unwrap();
        assert_eq!(same, t);
        let mut hull = build_cdt(t.points().clone(), &[e(1, 2)]).unwrap();
        hull.remove_edge_update(e(1, 2)).unwrap();
        assert_eq!(hull, t);
    }

    #[test]
    fn crossing_constraints_rejected() {
        let ps = quad_generic();
        let err = build_cdt(ps, &[e(1, 3), e(2, 4)]).unwrap_err();
        assert_eq!(err, CdtError::ConstraintCrossing(e(2, 4), e(1, 3)));
    }

    #[test]
    fn underlying_of_hull_is_cdt() {
        let ps = quad_generic();
        let hull: Vec<Edge> = ps.hull_edges().collect();
        let t = underlying_triangulation(ps.clone(), &hull).unwrap();
        let cdt = build_cdt(ps.clone(), &[]).unwrap();
        assert_eq!(t.edge_set(), cdt.edge_set());
        let full: Vec<Edge> = cdt.edges().collect();
        let tl = underlying_triangulation(ps, &full).unwrap();
        assert_eq!(tl.edge_set(), cdt.edge_set());
    }

    #[test]
    fn from_edges_validates() {
        let ps = quad_generic();
        assert!(Triangulation::from_edges(ps.clone(), [e(1, 2), e(2, 3), e(3, 4), e(1, 4), e(1, 3)], []).is_ok());
        assert!(Triangulation::from_edges(ps.clone(), [e(1, 2), e(2, 3), e(3, 4), e(1, 4)], []).is_err());
        assert!(Triangulation::from_edges(ps, [e(1, 2), e(2, 3), e(3, 4), e(1, 4), e(1, 3), e(2, 4)], []).is_err());
    }
}
