use std::cmp::Ordering;
use std::fmt;

use crate::geometry::Edge;

/// An edge set kept as a strictly increasing edge list.
///
/// The derived ordering is the lexicographic order on edge lists, which is
/// the order used to pick the root and to break ties in the parent function.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Framework {
    edges: Vec<Edge>,
}

impl Framework {
    /// Sorts and deduplicates `edges`.
    pub fn new(mut edges: Vec<Edge>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        Framework { edges }
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn into_edges(self) -> Vec<Edge> {
        self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn position(&self, e: Edge) -> Option<usize> {
        self.edges.binary_search(&e).ok()
    }

    /// `self - out + into`. Panics if `out` is missing or `into` present.
    pub fn exchange(&self, out: Edge, into: Edge) -> Framework {
        let mut edges = self.edges.clone();
        let k = edges.binary_search(&out).expect("removed edge must be present");
        edges.remove(k);
        let k = edges.binary_search(&into).expect_err("inserted edge must be absent");
        edges.insert(k, into);
        Framework { edges }
    }

    /// Edges of `self` missing from `other`, in order.
    pub fn difference<'a>(&'a self, other: &'a Framework) -> impl Iterator<Item = Edge> + 'a {
        self.edges.iter().copied().filter(move |&e| !other.contains(e))
    }
}

impl From<Vec<Edge>> for Framework {
    fn from(edges: Vec<Edge>) -> Self {
        Framework::new(edges)
    }
}

impl fmt::Display for Framework {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.edges {
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Framework {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Framework[{self}]")
    }
}

/// Lexicographic comparison of two sorted edge lists.
pub fn lex_compare(a: &[Edge], b: &[Edge]) -> Ordering {
    a.cmp(b)
}
