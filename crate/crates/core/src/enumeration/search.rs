use std::ops::ControlFlow;

use crate::cdt::Triangulation;
use crate::geometry::Edge;

use super::framework::Framework;
use super::instance::{EnumerationError, Instance};
use super::node::Node;

/// How the driver decides whether a neighbour is a child.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ParentCheck {
    /// Constant-time conditions on the exchanged pair.
    #[default]
    Fast,
    /// Compute the neighbour's parent and compare.
    Definitional,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SearchOptions {
    pub parent_check: ParentCheck,
    /// Stop after this many frameworks have been reported.
    pub max_outputs: Option<u64>,
}

/// A framework as reported to the sink.
#[derive(Debug)]
pub struct Visit<'a> {
    /// 1-based emission index.
    pub index: u64,
    /// Depth in the search tree; the root has depth 0.
    pub depth: usize,
    pub framework: &'a Framework,
    pub triangulation: &'a Triangulation,
    /// `(e1, e2)` with `framework = parent - e1 + e2`; `None` for the root.
    pub exchange: Option<(Edge, Edge)>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub outputs: u64,
    pub max_depth: usize,
    /// Whether the sink or `max_outputs` stopped the search early.
    pub truncated: bool,
}

/// Scans candidate pairs of `node` from `(i, j)` onwards. Returns the first
/// child found together with the cursor position that produced it.
fn next_child(
    node: &mut Node<'_>,
    inst: &Instance,
    check: ParentCheck,
    mut i: usize,
    mut j: usize,
) -> Result<Option<(Edge, Edge)>, EnumerationError> {
    let len = node.framework().len();
    let universe = inst.universe();
    while i < len {
        let e1 = node.framework().edges()[i];
        let scan = match check {
            ParentCheck::Fast => node.may_remove(e1),
            ParentCheck::Definitional => !inst.fixed().contains(e1),
        };
        if scan {
            while j < universe.len() {
                let e2 = universe[j];
                j += 1;
                let hit = match check {
                    ParentCheck::Fast => node.is_child(e1, e2),
                    ParentCheck::Definitional => node.adjacent(e1, e2) && node.check_parent_slow(e1, e2)?,
                };
                if hit {
                    return Ok(Some((e1, e2)));
                }
            }
        }
        i += 1;
        j = 0;
    }
    Ok(None)
}

/// Reports every `F`-constrained non-crossing Laman framework of `inst`
/// exactly once, in depth-first order of the parent tree, starting with
/// `L*`. Only the current node is kept; moving up recomputes the parent and
/// the position of the exchange that led down.
pub fn reverse_search<F>(inst: &Instance, opts: SearchOptions, mut sink: F) -> Result<SearchStats, EnumerationError>
where
    F: FnMut(&Visit<'_>) -> ControlFlow<()>,
{
    let mut stats = SearchStats::default();
    let n = inst.vertex_count();
    let root = inst.root().clone();
    let root_tri = inst.cdt_with_flags(&root);
    let mut node = Node::new(inst, root, root_tri);
    let mut depth = 0usize;

    let mut emit = |node: &Node<'_>, depth: usize, exchange, stats: &mut SearchStats| {
        stats.outputs += 1;
        stats.max_depth = stats.max_depth.max(depth);
        let visit = Visit {
            index: stats.outputs,
            depth,
            framework: node.framework(),
            triangulation: node.triangulation(),
            exchange,
        };
        let stop = sink(&visit).is_break() || opts.max_outputs.is_some_and(|k| stats.outputs >= k);
        stats.truncated |= stop;
        stop
    };

    if emit(&node, 0, None, &mut stats) {
        return Ok(stats);
    }
    let (mut i, mut j) = (0, 0);
    loop {
        if let Some((e1, e2)) = next_child(&mut node, inst, opts.parent_check, i, j)? {
            let tri = node.child_triangulation(e1, e2)?;
            let child = node.framework().exchange(e1, e2);
            node = Node::new(inst, child, tri);
            depth += 1;
            if emit(&node, depth, Some((e1, e2)), &mut stats) {
                return Ok(stats);
            }
            (i, j) = (0, 0);
            continue;
        }
        if depth == 0 {
            return Ok(stats);
        }
        let (framework, tri) = node.into_parts();
        let step = inst.parent(&framework, &tri)?;
        // The child was reached as Adj(parent, st, ac); resume right after it.
        i = step
            .parent
            .position(step.added)
            .ok_or_else(|| EnumerationError::Internal("parent lost its added edge".into()))?;
        j = step.removed.index(n) + 1;
        node = Node::new(inst, step.parent, step.triangulation);
        depth -= 1;
    }
}
