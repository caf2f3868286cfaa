use crate::cdt::Triangulation;
use crate::geometry::{Edge, EdgeSet};
use crate::rigidity::{ComponentIndex, PebbleGame};

use super::framework::Framework;
use super::instance::{EnumerationError, Instance};

/// Which replacement pool a condition-(c) threshold is taken over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pool {
    /// `L* - L'`, for children that stay inside the CDT.
    Root,
    /// `T(L') - L'`, for children with an `F`-illegal edge.
    Underlying,
}

/// Per-`e1` data: rigid components of `L' - e1` and both thresholds.
struct Removal {
    e1: Edge,
    comps: ComponentIndex,
    /// `None` stands for an empty restoring pool, i.e. `+inf`.
    root_min: Option<Edge>,
    under_min: Option<Edge>,
    legal: bool,
}

/// A framework `L'` with its underlying triangulation and the tables that
/// let every candidate exchange `(e1, e2)` be tested in constant time.
pub struct Node<'a> {
    inst: &'a Instance,
    framework: Framework,
    tri: Triangulation,
    members: EdgeSet,
    game: PebbleGame,
    /// Number of framework edges crossing each `K_n` edge, capped at 2.
    cross_n: Vec<u8>,
    /// The crossing framework edge when `cross_n == 1`.
    cross_e: Vec<Edge>,
    cdlf: bool,
    /// `max(L' - L*)`.
    max_outside_root: Option<Edge>,
    /// Lazily filled: whether `e2` is the largest `F`-illegal edge of
    /// `T(L' - e1 + e2)`.
    top_illegal: Vec<Option<bool>>,
    removal: Option<Removal>,
}

impl<'a> Node<'a> {
    /// Builds the tables for `framework`, given `tri = T(framework)`.
    pub fn new(inst: &'a Instance, framework: Framework, tri: Triangulation) -> Self {
        let n = inst.vertex_count();
        let m = inst.universe().len();
        let mut cross_n = vec![0u8; m];
        let mut cross_e = vec![Edge { u: 0, v: 1 }; m];
        for (k, &e2) in inst.universe().iter().enumerate() {
            for &f in framework.edges() {
                if inst.crosses(e2, f) {
                    cross_n[k] += 1;
                    cross_e[k] = f;
                    if cross_n[k] > 1 {
                        break;
                    }
                }
            }
        }
        Node {
            inst,
            members: EdgeSet::from_edges(n, framework.edges().iter().copied()),
            game: PebbleGame::with_edges(n, framework.edges().iter().copied()).0,
            cdlf: inst.is_cdlf(&framework),
            max_outside_root: framework.difference(inst.root()).last(),
            framework,
            tri,
            cross_n,
            cross_e,
            top_illegal: vec![None; m],
            removal: None,
        }
    }

    /// Builds `T(framework)` from scratch.
    pub fn build(inst: &'a Instance, framework: Framework) -> Result<Self, EnumerationError> {
        let tri = inst.underlying(&framework)?;
        Ok(Node::new(inst, framework, tri))
    }

    pub fn framework(&self) -> &Framework {
        &self.framework
    }

    pub fn triangulation(&self) -> &Triangulation {
        &self.tri
    }

    pub fn into_parts(self) -> (Framework, Triangulation) {
        (self.framework, self.tri)
    }

    fn removal(&mut self, e1: Edge) -> &Removal {
        if self.removal.as_ref().is_none_or(|r| r.e1 != e1) {
            let comps = self.game.components_without(e1);
            let restores = |e: &Edge| !comps.pair_find(e.u, e.v);
            let root_min = self.inst.root().difference(&self.framework).find(restores);
            let under_min = self.tri.edges().find(|e| !self.members.contains(*e) && restores(e));
            let legal = !self.tri.is_illegal(e1, self.inst.fixed());
            self.removal = Some(Removal {
                e1,
                comps,
                root_min,
                under_min,
                legal,
            });
        }
        self.removal.as_ref().unwrap()
    }

    /// `min{e in pool : L' - e1 + e is Laman}`, or `None` for `+inf`.
    pub fn threshold_c(&mut self, e1: Edge, pool: Pool) -> Option<Edge> {
        let r = self.removal(e1);
        match pool {
            Pool::Root => r.root_min,
            Pool::Underlying => r.under_min,
        }
    }

    /// Whether `L' - e1 + e2` is an `F`-constrained non-crossing Laman
    /// framework. Requires `e1` in `L' - F`.
    pub fn adjacent(&mut self, e1: Edge, e2: Edge) -> bool {
        if self.members.contains(e2) {
            return false;
        }
        let k = self.inst.edge_index(e2);
        match self.cross_n[k] {
            0 => {}
            1 if self.cross_e[k] == e1 => {}
            _ => return false,
        }
        !self.removal(e1).comps.pair_find(e2.u, e2.v)
    }

    /// `L' - e1 + e2` when adjacent.
    pub fn child(&mut self, e1: Edge, e2: Edge) -> Option<Framework> {
        (!self.inst.fixed().contains(e1) && self.members.contains(e1) && self.adjacent(e1, e2))
            .then(|| self.framework.exchange(e1, e2))
    }

    fn lt(e: Edge, bound: Option<Edge>) -> bool {
        bound.is_none_or(|b| e < b)
    }

    /// Whether `L' - e1 + e2` is a child of `L'`, testing the flag
    /// conditions before anything that needs rigid components.
    pub fn is_child(&mut self, e1: Edge, e2: Edge) -> bool {
        if self.members.contains(e2) {
            return false;
        }
        let k = self.inst.edge_index(e2);
        match self.cross_n[k] {
            0 => {}
            1 if self.cross_e[k] == e1 => {}
            _ => return false,
        }
        let f1 = self.f1_flags(e1, e2);
        let f2 = !self.tri.has_edge(e2) && !self.tri.is_illegal(e1, self.inst.fixed());
        if !f1 && !f2 {
            return false;
        }
        let r = self.removal(e1);
        if r.comps.pair_find(e2.u, e2.v) {
            return false;
        }
        if f1 && Self::lt(e1, r.root_min) {
            return true;
        }
        f2 && Self::lt(e1, r.under_min) && self.is_top_illegal(e2)
    }

    /// Whether some `e2` could make `L' - e1 + e2` a child: `e1` must be in
    /// `L*` (with `L'` a CDLF) or be `F`-legal in `T(L')`.
    pub fn may_remove(&self, e1: Edge) -> bool {
        !self.inst.fixed().contains(e1)
            && ((self.cdlf && self.inst.in_root(e1)) || !self.tri.is_illegal(e1, self.inst.fixed()))
    }

    fn f1_flags(&self, e1: Edge, e2: Edge) -> bool {
        self.cdlf
            && self.inst.in_root(e1)
            && self.inst.in_cdt(e2)
            && !self.inst.in_root(e2)
            && self.max_outside_root.is_none_or(|m| e2 > m)
    }

    /// Whether the Delaunay-case parent of `L' - e1 + e2` is `L'`, for an
    /// adjacent pair. Both frameworks must be CDLFs, which here reduces to
    /// `L'` being one since `e2` is then required to be a CDT edge.
    pub fn check_parent_f1(&mut self, e1: Edge, e2: Edge) -> bool {
        if !self.f1_flags(e1, e2) {
            return false;
        }
        let bound = self.removal(e1).root_min;
        Self::lt(e1, bound)
    }

    /// Whether the illegal-case parent of `L' - e1 + e2` is `L'`, for an
    /// adjacent pair.
    pub fn check_parent_f2(&mut self, e1: Edge, e2: Edge) -> bool {
        if self.tri.has_edge(e2) {
            return false;
        }
        let r = self.removal(e1);
        if !r.legal || !Self::lt(e1, r.under_min) {
            return false;
        }
        self.is_top_illegal(e2)
    }

    /// Whether `e2` is the largest `F`-illegal edge of `T(L' - e1 + e2)`
    /// for any admissible `e1`. With no crossing, `T(L' - e1 + e2)` equals
    /// `T(L' + e2)` for every `F`-legal `e1`; with one crossing edge, `e1`
    /// is that edge.
    fn is_top_illegal(&mut self, e2: Edge) -> bool {
        let k = self.inst.edge_index(e2);
        if let Some(v) = self.top_illegal[k] {
            return v;
        }
        let mut t = self.tri.clone();
        if self.cross_n[k] == 1 {
            t.remove_edge_update(self.cross_e[k])
                .expect("framework edge is present");
        }
        t.insert_edge_update(e2).expect("e2 crosses no remaining constraint");
        let v = t.max_illegal_edge(self.inst.fixed()) == Some(e2);
        self.top_illegal[k] = Some(v);
        v
    }

    /// The definitional test: is `L'` the parent of `L' - e1 + e2`?
    pub fn check_parent_slow(&mut self, e1: Edge, e2: Edge) -> Result<bool, EnumerationError> {
        let Some(child) = self.child(e1, e2) else {
            return Ok(false);
        };
        if &child == self.inst.root() {
            return Ok(false);
        }
        let t = self.child_triangulation(e1, e2)?;
        Ok(self.inst.parent(&child, &t)?.parent == self.framework)
    }

    /// `T(L' - e1 + e2)` by local updates of `T(L')`.
    pub fn child_triangulation(&self, e1: Edge, e2: Edge) -> Result<Triangulation, EnumerationError> {
        let mut t = self.tri.clone();
        t.remove_edge_update(e1)?;
        t.insert_edge_update(e2)?;
        Ok(t)
    }
}
