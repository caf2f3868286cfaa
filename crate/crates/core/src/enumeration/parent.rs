use crate::cdt::Triangulation;
use crate::geometry::Edge;
use crate::rigidity::components_after_removal;

use super::framework::Framework;
use super::instance::{EnumerationError, Instance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParentCase {
    /// The framework lies in the CDT; exchange towards `L*`.
    Delaunay,
    /// The framework has `F`-illegal edges; drop the largest one.
    Illegal,
}

/// One application of the parent function: `parent = child - removed + added`.
#[derive(Debug, Clone)]
pub struct ParentStep {
    pub parent: Framework,
    pub removed: Edge,
    pub added: Edge,
    pub case: ParentCase,
    /// `T(parent)`, obtained as a by-product.
    pub triangulation: Triangulation,
}

impl Instance {
    /// `L' - e1 + e2` when that is again an `F`-constrained non-crossing
    /// Laman framework.
    pub fn adjacency(&self, l: &Framework, e1: Edge, e2: Edge) -> Result<Option<Framework>, EnumerationError> {
        if self.fixed().contains(e1) {
            return Err(EnumerationError::ConstraintExchange(e1));
        }
        if !l.contains(e1) || l.contains(e2) {
            return Ok(None);
        }
        if l.edges().iter().any(|&f| f != e1 && self.crosses(f, e2)) {
            return Ok(None);
        }
        let comps = components_after_removal(self.vertex_count(), l.edges(), e1);
        Ok((!comps.pair_find(e2.u, e2.v)).then(|| l.exchange(e1, e2)))
    }

    /// The parent of `l`, given `t = T(l)`.
    pub fn parent(&self, l: &Framework, t: &Triangulation) -> Result<ParentStep, EnumerationError> {
        if l == self.root() {
            return Err(EnumerationError::RootHasNoParent);
        }
        let n = self.vertex_count();
        if self.is_cdlf(l) {
            let ac = l
                .difference(self.root())
                .last()
                .ok_or_else(|| EnumerationError::Internal("CDLF equal to root".into()))?;
            let comps = components_after_removal(n, l.edges(), ac);
            let st = self
                .root()
                .difference(l)
                .find(|e| !comps.pair_find(e.u, e.v))
                .ok_or_else(|| EnumerationError::Internal(format!("no exchange for {ac} in L*")))?;
            let parent = l.exchange(ac, st);
            let triangulation = self.cdt_with_flags(&parent);
            return Ok(ParentStep {
                parent,
                removed: ac,
                added: st,
                case: ParentCase::Delaunay,
                triangulation,
            });
        }
        let ac = t
            .max_illegal_edge(self.fixed())
            .ok_or_else(|| EnumerationError::Internal(format!("{l} is outside the CDT but has no F-illegal edge")))?;
        let mut t2 = t.clone();
        t2.remove_edge_update(ac)?;
        let comps = components_after_removal(n, l.edges(), ac);
        let st = t2
            .edges()
            .find(|&e| e != ac && !l.contains(e) && !comps.pair_find(e.u, e.v))
            .ok_or_else(|| EnumerationError::Internal(format!("no exchange for {ac} in T(L - ac)")))?;
        t2.insert_edge_update(st)?;
        Ok(ParentStep {
            parent: l.exchange(ac, st),
            removed: ac,
            added: st,
            case: ParentCase::Illegal,
            triangulation: t2,
        })
    }

    /// [`Instance::parent`], building `T(l)` first.
    pub fn parent_of(&self, l: &Framework) -> Result<ParentStep, EnumerationError> {
        let t = self.underlying(l)?;
        self.parent(l, &t)
    }
}
