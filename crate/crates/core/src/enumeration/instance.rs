use std::sync::Arc;

use thiserror::Error;

use crate::cdt::{build_cdt, CdtError, Triangulation};
use crate::geometry::{assert_generic, complete_edges, Edge, EdgeSet, GenericityReport, GeometryError, PointSet};
use crate::rigidity::PebbleGame;

use super::framework::Framework;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerationError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("constraint {0} has an endpoint outside the point set")]
    ConstraintOutOfRange(Edge),
    #[error("constraint {0} is listed twice")]
    DuplicateConstraint(Edge),
    #[error("constraints {0} and {1} cross")]
    CrossingConstraints(Edge, Edge),
    #[error("constraint {0} makes the constraint set dependent in the Laman matroid")]
    DependentConstraints(Edge),
    #[error(transparent)]
    Cdt(#[from] CdtError),
    #[error("the root framework has no parent")]
    RootHasNoParent,
    #[error("framework {0} is not an F-constrained non-crossing Laman framework")]
    NotAFramework(String),
    #[error("edge {0} is a constraint and cannot be exchanged")]
    ConstraintExchange(Edge),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// A validated point set and constraint set, with everything that does not
/// depend on the current framework precomputed: the constrained Delaunay
/// triangulation, the root `L*`, and the crossing relation on `K_n`.
#[derive(Debug, Clone)]
pub struct Instance {
    points: Arc<PointSet>,
    constraints: Framework,
    fixed: EdgeSet,
    report: GenericityReport,
    cdt: Triangulation,
    root: Framework,
    root_set: EdgeSet,
    universe: Vec<Edge>,
    /// Row-major bit matrix over `universe` indices.
    crossing: Vec<u64>,
    row_words: usize,
}

impl Instance {
    pub fn new(points: impl Into<Arc<PointSet>>, constraints: &[Edge]) -> Result<Self, EnumerationError> {
        let points: Arc<PointSet> = points.into();
        let report = assert_generic(&points)?;
        let n = points.len();

        let mut sorted = constraints.to_vec();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(EnumerationError::DuplicateConstraint(w[0]));
            }
        }
        if let Some(&e) = sorted.iter().find(|e| e.v >= n) {
            return Err(EnumerationError::ConstraintOutOfRange(e));
        }
        for (i, &a) in sorted.iter().enumerate() {
            if let Some(&b) = sorted[i + 1..].iter().find(|&&b| points.edges_cross(a, b)) {
                return Err(EnumerationError::CrossingConstraints(a, b));
            }
        }
        let mut game = PebbleGame::new(n);
        for &e in &sorted {
            if !game.try_insert(e) {
                return Err(EnumerationError::DependentConstraints(e));
            }
        }

        let cdt = build_cdt(points.clone(), &sorted)?;
        // Matroid greedy: F first, then CDT edges in lexicographic order.
        let mut root = sorted.clone();
        for e in cdt.edges() {
            if root.len() == 2 * n - 3 {
                break;
            }
            if !sorted.contains(&e) && game.try_insert(e) {
                root.push(e);
            }
        }
        if root.len() != 2 * n - 3 {
            return Err(EnumerationError::Internal(
                "the CDT does not span a Laman framework".into(),
            ));
        }
        let root = Framework::new(root);
        let root_set = EdgeSet::from_edges(n, root.edges().iter().copied());

        let universe: Vec<Edge> = complete_edges(n).collect();
        let m = universe.len();
        let row_words = m.div_ceil(64);
        let mut crossing = vec![0u64; m * row_words];
        for i in 0..m {
            for j in i + 1..m {
                if points.edges_cross(universe[i], universe[j]) {
                    crossing[i * row_words + j / 64] |= 1 << (j % 64);
                    crossing[j * row_words + i / 64] |= 1 << (i % 64);
                }
            }
        }

        Ok(Instance {
            fixed: EdgeSet::from_edges(n, sorted.iter().copied()),
            constraints: Framework::new(sorted),
            points,
            report,
            cdt,
            root,
            root_set,
            universe,
            crossing,
            row_words,
        })
    }

    pub fn points(&self) -> &Arc<PointSet> {
        &self.points
    }

    pub fn vertex_count(&self) -> usize {
        self.points.len()
    }

    pub fn constraints(&self) -> &Framework {
        &self.constraints
    }

    /// The constraint set `F` as a bit set.
    pub fn fixed(&self) -> &EdgeSet {
        &self.fixed
    }

    pub fn genericity(&self) -> &GenericityReport {
        &self.report
    }

    /// The constrained Delaunay triangulation with constraints `F`.
    pub fn cdt(&self) -> &Triangulation {
        &self.cdt
    }

    /// `L*`, the lexicographically smallest constrained Delaunay Laman
    /// framework.
    pub fn root(&self) -> &Framework {
        &self.root
    }

    pub fn in_root(&self, e: Edge) -> bool {
        self.root_set.contains(e)
    }

    pub fn in_cdt(&self, e: Edge) -> bool {
        self.cdt.has_edge(e)
    }

    /// All edges of `K_n` in lexicographic order.
    pub fn universe(&self) -> &[Edge] {
        &self.universe
    }

    pub fn edge_index(&self, e: Edge) -> usize {
        e.index(self.points.len())
    }

    #[inline]
    pub fn crosses(&self, a: Edge, b: Edge) -> bool {
        let n = self.points.len();
        let (i, j) = (a.index(n), b.index(n));
        self.crossing[i * self.row_words + j / 64] >> (j % 64) & 1 == 1
    }

    /// Whether every edge of `l` is an edge of the CDT.
    pub fn is_cdlf(&self, l: &Framework) -> bool {
        l.edges().iter().all(|&e| self.cdt.has_edge(e))
    }

    /// The `L`-constrained Delaunay triangulation `T(L)`.
    pub fn underlying(&self, l: &Framework) -> Result<Triangulation, EnumerationError> {
        Ok(build_cdt(self.points.clone(), l.edges())?)
    }

    /// The CDT with every edge of a CDLF flagged as a constraint, which is
    /// `T(L)` for that framework.
    pub(crate) fn cdt_with_flags(&self, l: &Framework) -> Triangulation {
        let mut t = self.cdt.clone();
        for &e in l.edges() {
            t.insert_edge_update(e).expect("CDLF edge is a CDT edge");
        }
        t
    }

    /// Whether `l` contains `F`, has `2n - 3` pairwise non-crossing edges and
    /// is Laman.
    pub fn is_framework(&self, l: &Framework) -> bool {
        let n = self.vertex_count();
        if l.len() != 2 * n - 3 || l.edges().iter().any(|e| e.v >= n) {
            return false;
        }
        if !self.constraints.edges().iter().all(|&f| l.contains(f)) {
            return false;
        }
        let es = l.edges();
        for (i, &a) in es.iter().enumerate() {
            if es[i + 1..].iter().any(|&b| self.crosses(a, b)) {
                return false;
            }
        }
        crate::rigidity::is_laman(n, es)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: usize, b: usize) -> Edge {
        Edge::from_labels(a, b)
    }

    fn pts(c: &[(i64, i64)]) -> PointSet {
        PointSet::from_integers(c).unwrap()
    }

    #[test]
    fn triangle_root() {
        let inst = Instance::new(pts(&[(0, 0), (4, 1), (1, 3)]), &[]).unwrap();
        assert_eq!(inst.root().edges(), &[e(1, 2), e(1, 3), e(2, 3)]);
    }

    #[test]
    fn convex_quad_root_is_cdt() {
        // (0,0),(4,0),(4,3),(0,2): the Delaunay diagonal is 24.
        let inst = Instance::new(pts(&[(0, 0), (4, 0), (4, 3), (0, 2)]), &[]).unwrap();
        assert_eq!(inst.cdt().edge_count(), 5);
        assert_eq!(inst.root().edges(), inst.cdt().edges().collect::<Vec<_>>().as_slice());
        assert!(inst.root().contains(e(2, 4)));
        assert!(inst.is_cdlf(inst.root()));
    }

    #[test]
    fn constraint_validation() {
        let p = pts(&[(0, 0), (4, 0), (4, 3), (0, 2)]);
        assert!(matches!(
            Instance::new(p.clone(), &[e(1, 3), e(2, 4)]),
            Err(EnumerationError::CrossingConstraints(..))
        ));
        assert!(matches!(
            Instance::new(p.clone(), &[e(1, 3), e(1, 3)]),
            Err(EnumerationError::DuplicateConstraint(..))
        ));
        assert!(matches!(
            Instance::new(p.clone(), &[Edge::new(0, 7)]),
            Err(EnumerationError::ConstraintOutOfRange(..))
        ));
        let inst = Instance::new(p, &[e(1, 3)]).unwrap();
        assert!(inst.root().contains(e(1, 3)));
        assert!(inst.cdt().has_edge(e(1, 3)));

        let k4 = pts(&[(0, 0), (10, 0), (5, 9), (5, 3)]);
        let all = [e(1, 2), e(1, 3), e(1, 4), e(2, 3), e(2, 4), e(3, 4)];
        assert!(matches!(
            Instance::new(k4, &all),
            Err(EnumerationError::DependentConstraints(..))
        ));
        let line = pts(&[(0, 0), (1, 1), (2, 2), (0, 5)]);
        assert!(matches!(Instance::new(line, &[]), Err(EnumerationError::Geometry(_))));
    }

    #[test]
    fn crossing_table_matches_predicate() {
        let p = pts(&[(0, 0), (7, 1), (9, 6), (3, 8), (-2, 5), (4, 3)]);
        let inst = Instance::new(p.clone(), &[]).unwrap();
        for &a in inst.universe() {
            for &b in inst.universe() {
                assert_eq!(inst.crosses(a, b), p.edges_cross(a, b), "{a} {b}");
            }
        }
    }
}
