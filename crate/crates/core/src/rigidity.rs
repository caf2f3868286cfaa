//! Laman independence and rigid components via the (2,3)-pebble game.
//!
//! Each vertex starts with two pebbles. An edge is accepted when four pebbles
//! can be gathered on its endpoints; one of them is then spent to cover the
//! edge, which is oriented away from the vertex that paid for it.

use crate::geometry::Edge;

/// Directed pebble bookkeeping for an independent edge set.
///
/// A vertex always holds `pebbles + out-degree = 2`, so the out-neighbours
/// fit in a fixed pair of slots.
#[derive(Debug, Clone)]
pub struct PebbleGame {
    n: usize,
    pebbles: Vec<u8>,
    /// The first `2 - pebbles[v]` slots of `out[v]` are used, in ascending
    /// order so searches are deterministic.
    out: Vec<[usize; 2]>,
    accepted: Vec<Edge>,
    // Search scratch.
    seen: Vec<u32>,
    epoch: u32,
    pred: Vec<usize>,
    stack: Vec<(usize, usize)>,
}

impl PebbleGame {
    pub fn new(n: usize) -> Self {
        PebbleGame {
            n,
            pebbles: vec![2; n],
            out: vec![[usize::MAX; 2]; n],
            accepted: Vec::new(),
            seen: vec![0; n],
            epoch: 0,
            pred: vec![usize::MAX; n],
            stack: Vec::with_capacity(n),
        }
    }

    /// Plays every edge of `edges`, returning the game and whether all were
    /// accepted.
    pub fn with_edges(n: usize, edges: impl IntoIterator<Item = Edge>) -> (Self, bool) {
        let mut g = PebbleGame::new(n);
        let mut all = true;
        for e in edges {
            all &= g.try_insert(e);
        }
        (g, all)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn accepted(&self) -> &[Edge] {
        &self.accepted
    }

    pub fn free_pebbles(&self) -> usize {
        self.pebbles.iter().map(|&p| p as usize).sum()
    }

    pub fn pebbles_at(&self, v: usize) -> u8 {
        self.pebbles[v]
    }

    fn outs(&self, v: usize) -> &[usize] {
        &self.out[v][..2 - self.pebbles[v] as usize]
    }

    /// Adds `x -> y`, paid for by a pebble of `x`.
    fn push_out(&mut self, x: usize, y: usize) {
        let k = 2 - self.pebbles[x] as usize;
        debug_assert!(k < 2);
        self.out[x][k] = y;
        if k == 1 && self.out[x][0] > y {
            self.out[x].swap(0, 1);
        }
        self.pebbles[x] -= 1;
    }

    /// Removes `x -> y`, returning its pebble to `x`.
    fn pop_out(&mut self, x: usize, y: usize) -> bool {
        let k = 2 - self.pebbles[x] as usize;
        match self.out[x][..k].iter().position(|&w| w == y) {
            Some(i) => {
                if i == 0 && k == 2 {
                    self.out[x][0] = self.out[x][1];
                }
                self.out[x][k - 1] = usize::MAX;
                self.pebbles[x] += 1;
                true
            }
            None => false,
        }
    }

    /// Accepts `e` iff the accepted set stays independent in the Laman
    /// matroid. A rejection may reorient edges but never changes the
    /// accepted set.
    pub fn try_insert(&mut self, e: Edge) -> bool {
        let (u, v) = (e.u, e.v);
        if !self.gather(u, 2, [u, v]) || !self.gather(v, 2, [u, v]) {
            return false;
        }
        self.push_out(u, v);
        self.accepted.push(e);
        true
    }

    /// Whether `e` could be accepted, leaving the accepted set unchanged.
    pub fn can_insert(&mut self, e: Edge) -> bool {
        self.gather(e.u, 2, [e.u, e.v]) && self.gather(e.v, 2, [e.u, e.v])
    }

    /// Drops an accepted edge, returning its pebble to the tail. Returns
    /// whether `e` was accepted.
    pub fn remove(&mut self, e: Edge) -> bool {
        let Some(k) = self.accepted.iter().position(|&f| f == e) else {
            return false;
        };
        self.accepted.remove(k);
        let found = self.pop_out(e.u, e.v) || self.pop_out(e.v, e.u);
        debug_assert!(found);
        true
    }

    /// Brings the pebble total on `{a, b}` up to `want`.
    fn gather_pair(&mut self, a: usize, b: usize, want: u8) -> bool {
        while self.pebbles[a] + self.pebbles[b] < want {
            let moved =
                (self.pebbles[a] < 2 && self.search(a, [a, b])) || (self.pebbles[b] < 2 && self.search(b, [a, b]));
            if !moved {
                return false;
            }
        }
        true
    }

    fn gather(&mut self, v: usize, want: u8, pinned: [usize; 2]) -> bool {
        while self.pebbles[v] < want {
            if !self.search(v, pinned) {
                return false;
            }
        }
        true
    }

    /// Depth-first search from `root` for a free pebble, visiting neighbours
    /// by ascending index. On success the path is reversed and the pebble
    /// moves to `root`. Pinned vertices may be passed through (reversing a
    /// path keeps the pebble count of its interior) but never give up their
    /// own pebbles.
    fn search(&mut self, root: usize, pinned: [usize; 2]) -> bool {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.seen.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
        let ep = self.epoch;
        self.seen[root] = ep;
        let mut stack = std::mem::take(&mut self.stack);
        stack.clear();
        stack.push((root, 0));
        let mut found = None;
        while let Some(top) = stack.last_mut() {
            let (x, k) = *top;
            if k >= 2 - self.pebbles[x] as usize {
                stack.pop();
                continue;
            }
            top.1 += 1;
            let y = self.out[x][k];
            if self.seen[y] == ep {
                continue;
            }
            self.seen[y] = ep;
            self.pred[y] = x;
            if self.pebbles[y] > 0 && !pinned.contains(&y) {
                found = Some(y);
                break;
            }
            stack.push((y, 0));
        }
        self.stack = stack;
        let Some(y) = found else {
            return false;
        };
        // Reverse the path root -> ... -> y: y pays for its new out-edge and
        // every other vertex swaps one out-edge for another.
        let mut w = y;
        while w != root {
            let p = self.pred[w];
            self.pop_out(p, w);
            self.push_out(w, p);
            w = p;
        }
        true
    }

    /// Rigid components of the accepted set minus `e`, leaving `self`
    /// untouched.
    pub fn components_without(&self, e: Edge) -> ComponentIndex {
        let mut g = self.clone();
        g.remove(e);
        g.components()
    }

    /// Rigid components of the accepted edge set.
    pub fn components(&mut self) -> ComponentIndex {
        let n = self.n;
        let mut edges = self.accepted.clone();
        edges.sort_unstable();
        let mut components = Vec::new();
        let mut pair = vec![false; n * n];
        let mut mark = vec![false; n];
        for &e in &edges {
            if pair[e.u * n + e.v] {
                continue;
            }
            let (a, b) = (e.u, e.v);
            // Pin three pebbles on the edge; a fourth is impossible.
            let ok = self.gather_pair(a, b, 3);
            debug_assert!(ok, "an accepted edge always admits three pebbles");
            self.reaches_free_pebble([a, b], &mut mark);
            let members: Vec<usize> = (0..n).filter(|&w| !mark[w]).collect();
            for &x in &members {
                for &y in &members {
                    pair[x * n + y] = true;
                }
            }
            components.push(members);
        }
        components.sort();
        ComponentIndex { n, components, pair }
    }

    /// Marks vertices from which a free pebble outside `pinned` is reachable.
    fn reaches_free_pebble(&self, pinned: [usize; 2], mark: &mut [bool]) {
        let n = self.n;
        for (w, m) in mark.iter_mut().enumerate().take(n) {
            *m = self.pebbles[w] > 0 && !pinned.contains(&w);
        }
        // Out-degrees are at most two, so a fixpoint sweep is cheap.
        let mut changed = true;
        while changed {
            changed = false;
            for x in 0..n {
                if !mark[x] && !pinned.contains(&x) && self.outs(x).iter().any(|&y| mark[y]) {
                    mark[x] = true;
                    changed = true;
                }
            }
        }
    }
}

/// Rigid components of an independent edge set with constant-time
/// pair-find.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentIndex {
    n: usize,
    components: Vec<Vec<usize>>,
    pair: Vec<bool>,
}

impl ComponentIndex {
    /// Components as sorted vertex lists, in ascending order.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    /// Whether `u` and `v` lie in a common rigid component.
    #[inline]
    pub fn pair_find(&self, u: usize, v: usize) -> bool {
        u == v || self.pair[u * self.n + v]
    }
}

/// Whether `edges` is independent in the Laman matroid on `n` vertices.
pub fn is_independent(n: usize, edges: &[Edge]) -> bool {
    PebbleGame::with_edges(n, edges.iter().copied()).1
}

/// Whether `edges` is a Laman graph on `n` vertices.
pub fn is_laman(n: usize, edges: &[Edge]) -> bool {
    n >= 2 && edges.len() == 2 * n - 3 && is_independent(n, edges)
}

/// Rigid components of the one-degree-of-freedom mechanism `framework - e`.
pub fn components_after_removal(n: usize, framework: &[Edge], e: Edge) -> ComponentIndex {
    let (mut game, _) = PebbleGame::with_edges(n, framework.iter().copied().filter(|&f| f != e));
    game.components()
}

/// Whether `framework - out + into` is Laman, for a Laman `framework`
/// containing `out`.
pub fn restores_laman(n: usize, framework: &[Edge], out: Edge, into: Edge) -> bool {
    out == into || !components_after_removal(n, framework, out).pair_find(into.u, into.v)
}
