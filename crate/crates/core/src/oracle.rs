//! Brute-force references for small instances.
//!
//! Nothing here calls into [`crate::rigidity`] or [`crate::cdt`]: crossings
//! are re-derived with big-integer cross products and the Laman property is
//! checked by counting edges inside every vertex subset.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use thiserror::Error;

use crate::geometry::{Edge, PointSet};

pub const MAX_FRAMEWORK_POINTS: usize = 9;
pub const MAX_RANK_POINTS: usize = 8;
pub const MAX_TRIANGULATION_POINTS: usize = 9;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{what} oracle is limited to {limit} points, got {n}")]
    TooLarge { what: &'static str, n: usize, limit: usize },
}

/// Result of an exhaustive framework enumeration.
#[derive(Debug, Clone, Default)]
pub struct OracleReport {
    /// Canonical (sorted) edge lists.
    pub frameworks: BTreeSet<Vec<Edge>>,
    /// Set when the constraint set admits no framework at all.
    pub diagnostic: Option<String>,
    /// Search nodes visited.
    pub nodes: u64,
}

fn guard(what: &'static str, n: usize, limit: usize) -> Result<(), OracleError> {
    if n > limit {
        Err(OracleError::TooLarge { what, n, limit })
    } else {
        Ok(())
    }
}

fn sgn(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i32 {
    let v =
        (BigInt::from(a.0) - o.0) * (BigInt::from(b.1) - o.1) - (BigInt::from(a.1) - o.1) * (BigInt::from(b.0) - o.0);
    match v.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

/// Pairwise "cannot coexist in a plane drawing" table over all of `K_n`.
fn conflict_table(p: &PointSet) -> Vec<Vec<bool>> {
    let n = p.len();
    let xy = |i: usize| (p.point(i).x, p.point(i).y);
    let edges: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let m = edges.len();
    let mut t = vec![vec![false; m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let (a, b) = edges[i];
            let (c, d) = edges[j];
            if a == c || a == d || b == c || b == d {
                continue;
            }
            let (pa, pb, pc, pd) = (xy(a), xy(b), xy(c), xy(d));
            let s1 = sgn(pa, pb, pc);
            let s2 = sgn(pa, pb, pd);
            let s3 = sgn(pc, pd, pa);
            let s4 = sgn(pc, pd, pb);
            let within = |o: (i64, i64), q: (i64, i64), r: (i64, i64)| {
                r.0 >= o.0.min(q.0) && r.0 <= o.0.max(q.0) && r.1 >= o.1.min(q.1) && r.1 <= o.1.max(q.1)
            };
            let hit = (s1 * s2 < 0 && s3 * s4 < 0)
                || (s1 == 0 && within(pa, pb, pc))
                || (s2 == 0 && within(pa, pb, pd))
                || (s3 == 0 && within(pc, pd, pa))
                || (s4 == 0 && within(pc, pd, pb));
            t[i][j] = hit;
            t[j][i] = hit;
        }
    }
    t
}

fn lex_index(n: usize, e: Edge) -> usize {
    (0..e.u).map(|r| n - 1 - r).sum::<usize>() + (e.v - e.u - 1)
}

fn all_pairs(n: usize) -> Vec<Edge> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| Edge { u, v })).collect()
}

/// Edge multiset counter with the definitional Laman subset check.
struct CountCheck {
    n: usize,
    adj: Vec<u32>,
}

impl CountCheck {
    fn new(n: usize) -> Self {
        CountCheck { n, adj: vec![0; n] }
    }

    fn spanned(&self, set: u32) -> u32 {
        (0..self.n)
            .filter(|&x| set >> x & 1 == 1)
            .map(|x| (self.adj[x] & set).count_ones())
            .sum::<u32>()
            / 2
    }

    /// Whether adding `e` keeps every subset within its `2k - 3` budget.
    fn admits(&self, e: Edge) -> bool {
        if self.adj[e.u] >> e.v & 1 == 1 {
            return false;
        }
        let base = (1u32 << e.u) | (1u32 << e.v);
        let others: Vec<usize> = (0..self.n).filter(|&x| x != e.u && x != e.v).collect();
        for mask in 0u32..(1 << others.len()) {
            let mut set = base;
            for (k, &x) in others.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    set |= 1 << x;
                }
            }
            let size = set.count_ones();
            if self.spanned(set) + 1 > 2 * size - 3 {
                return false;
            }
        }
        true
    }

    fn add(&mut self, e: Edge) {
        self.adj[e.u] |= 1 << e.v;
        self.adj[e.v] |= 1 << e.u;
    }

    fn remove(&mut self, e: Edge) {
        self.adj[e.u] &= !(1 << e.v);
        self.adj[e.v] &= !(1 << e.u);
    }
}

/// Whether `edges` is a Laman graph on `n` vertices, by subset counting.
pub fn is_laman_by_counting(n: usize, edges: &[Edge]) -> bool {
    if n < 2 || edges.len() != 2 * n - 3 || n > 31 {
        return false;
    }
    let mut c = CountCheck::new(n);
    for &e in edges {
        if !c.admits(e) {
            return false;
        }
        c.add(e);
    }
    true
}

/// Every `F`-constrained non-crossing Laman framework on `p`.
pub fn brute_frameworks(p: &PointSet, constraints: &[Edge]) -> Result<OracleReport, OracleError> {
    let n = p.len();
    guard("framework", n, MAX_FRAMEWORK_POINTS)?;
    let conflict = conflict_table(p);
    let pairs = all_pairs(n);
    let mut report = OracleReport::default();
    let mut fixed: Vec<Edge> = constraints.to_vec();
    fixed.sort();
    fixed.dedup();

    let mut check = CountCheck::new(n);
    for (i, &f) in fixed.iter().enumerate() {
        if fixed[..i].iter().any(|&g| conflict[lex_index(n, f)][lex_index(n, g)]) {
            report.diagnostic = Some(format!("constraint {f} crosses another constraint"));
            return Ok(report);
        }
        if !check.admits(f) {
            report.diagnostic = Some(format!("constraint {f} violates the Laman count"));
            return Ok(report);
        }
        check.add(f);
    }
    let universe: Vec<Edge> = pairs
        .iter()
        .copied()
        .filter(|&e| !fixed.contains(&e) && fixed.iter().all(|&f| !conflict[lex_index(n, e)][lex_index(n, f)]))
        .collect();
    let target = 2 * n - 3;
    let mut chosen = fixed.clone();

    struct Ctx<'a> {
        n: usize,
        universe: &'a [Edge],
        conflict: &'a [Vec<bool>],
        target: usize,
        report: &'a mut OracleReport,
    }

    fn go(ctx: &mut Ctx<'_>, k: usize, chosen: &mut Vec<Edge>, check: &mut CountCheck) {
        ctx.report.nodes += 1;
        if chosen.len() == ctx.target {
            let mut key = chosen.clone();
            key.sort();
            ctx.report.frameworks.insert(key);
            return;
        }
        if chosen.len() + (ctx.universe.len() - k) < ctx.target {
            return;
        }
        let e = ctx.universe[k];
        let ei = lex_index(ctx.n, e);
        if chosen.iter().all(|&c| !ctx.conflict[ei][lex_index(ctx.n, c)]) && check.admits(e) {
            chosen.push(e);
            check.add(e);
            go(ctx, k + 1, chosen, check);
            check.remove(e);
            chosen.pop();
        }
        go(ctx, k + 1, chosen, check);
    }

    let mut ctx = Ctx {
        n,
        universe: &universe,
        conflict: &conflict,
        target,
        report: &mut report,
    };
    go(&mut ctx, 0, &mut chosen, &mut check);
    Ok(report)
}

/// Size of a largest subset of `edges` in which every vertex subset of
/// size `k >= 2` spans at most `2k - 3` edges.
pub fn brute_rank(n: usize, edges: &[Edge]) -> Result<usize, OracleError> {
    guard("rank", n, MAX_RANK_POINTS)?;
    let mut list: Vec<Edge> = edges.to_vec();
    list.sort();
    list.dedup();
    let cap = list.len().min((2 * n).saturating_sub(3));

    fn go(list: &[Edge], k: usize, size: usize, best: &mut usize, cap: usize, check: &mut CountCheck) {
        if size > *best {
            *best = size;
        }
        if *best == cap || k == list.len() || size + (list.len() - k) <= *best {
            return;
        }
        let e = list[k];
        if check.admits(e) {
            check.add(e);
            go(list, k + 1, size + 1, best, cap, check);
            check.remove(e);
        }
        go(list, k + 1, size, best, cap, check);
    }

    let mut best = 0;
    let mut check = CountCheck::new(n);
    go(&list, 0, 0, &mut best, cap, &mut check);
    Ok(best)
}

/// Every triangulation of `p` containing `constraints`, as sorted edge
/// lists. These are the maximal plane edge sets, i.e. the maximal cliques
/// of the "does not cross" graph on the edges compatible with the
/// constraints, found with pivoting Bron-Kerbosch.
pub fn all_triangulations(p: &PointSet, constraints: &[Edge]) -> Result<Vec<Vec<Edge>>, OracleError> {
    let n = p.len();
    guard("triangulation", n, MAX_TRIANGULATION_POINTS)?;
    let conflict = conflict_table(p);
    let pairs = all_pairs(n);
    let idx: Vec<usize> = (0..pairs.len())
        .filter(|&i| constraints.iter().all(|&f| !conflict[i][lex_index(n, f)]))
        .collect();
    if constraints
        .iter()
        .any(|&f| constraints.iter().any(|&g| conflict[lex_index(n, f)][lex_index(n, g)]))
    {
        return Ok(Vec::new());
    }
    let m = idx.len();
    assert!(m <= 64);
    let compat: Vec<u64> = (0..m)
        .map(|a| {
            (0..m)
                .filter(|&b| b != a && !conflict[idx[a]][idx[b]])
                .fold(0u64, |acc, b| acc | 1 << b)
        })
        .collect();

    fn bk(r: u64, mut p: u64, mut x: u64, compat: &[u64], out: &mut Vec<u64>) {
        if p == 0 && x == 0 {
            out.push(r);
            return;
        }
        let pivot = (p | x).trailing_zeros() as usize;
        let mut cand = p & !compat[pivot];
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            bk(r | 1 << v, p & compat[v], x & compat[v], compat, out);
            p &= !(1 << v);
            x |= 1 << v;
        }
    }

    let all = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    let mut cliques = Vec::new();
    bk(0, all, 0, &compat, &mut cliques);
    let mut out: Vec<Vec<Edge>> = cliques
        .into_iter()
        .map(|c| (0..m).filter(|&b| c >> b & 1 == 1).map(|b| pairs[idx[b]]).collect())
        .collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: usize, b: usize) -> Edge {
        Edge::from_labels(a, b)
    }

    fn convex(n: usize) -> PointSet {
        // Points on the parabola y = x^2 are in convex position with no
        // three collinear.
        let c: Vec<(i64, i64)> = (0..n as i64).map(|i| (i, i * i)).collect();
        PointSet::from_integers(&c).unwrap()
    }

    #[test]
    fn three_points() {
        let p = convex(3);
        let r = brute_frameworks(&p, &[]).unwrap();
        assert_eq!(r.frameworks.len(), 1);
        assert_eq!(r.frameworks.iter().next().unwrap(), &vec![e(1, 2), e(1, 3), e(2, 3)]);
        assert_eq!(all_triangulations(&p, &[]).unwrap().len(), 1);
    }

    #[test]
    fn convex_quadrilateral() {
        let p = convex(4);
        assert_eq!(brute_frameworks(&p, &[]).unwrap().frameworks.len(), 2);
        assert_eq!(all_triangulations(&p, &[]).unwrap().len(), 2);
    }

    #[test]
    fn dependent_constraints_give_empty_set() {
        let p = convex(4);
        let k4m = [e(1, 2), e(1, 3), e(1, 4), e(2, 3), e(3, 4), e(2, 4)];
        let r = brute_frameworks(&p, &k4m).unwrap();
        assert!(r.frameworks.is_empty());
        assert!(r.diagnostic.is_some());
    }

    #[test]
    fn catalan_counts() {
        for (n, c) in [(5, 5), (6, 14), (7, 42), (8, 132)] {
            assert_eq!(all_triangulations(&convex(n), &[]).unwrap().len(), c, "n={n}");
        }
    }

    #[test]
    fn rank_examples() {
        assert_eq!(brute_rank(3, &[e(1, 2), e(1, 3), e(2, 3)]).unwrap(), 3);
        let k4: Vec<Edge> = all_pairs(4);
        assert_eq!(brute_rank(4, &k4).unwrap(), 5);
        let two = [e(1, 2), e(1, 3), e(2, 3), e(4, 5), e(4, 6), e(5, 6)];
        assert_eq!(brute_rank(6, &two).unwrap(), 6);
        let k5: Vec<Edge> = all_pairs(5);
        assert_eq!(brute_rank(5, &k5).unwrap(), 7);
    }

    #[test]
    fn guards() {
        let p = convex(10);
        assert!(matches!(brute_frameworks(&p, &[]), Err(OracleError::TooLarge { .. })));
        assert!(brute_rank(9, &[]).is_err());
    }

    #[test]
    fn lex_index_agrees() {
        for n in 2..8 {
            for (k, e) in all_pairs(n).into_iter().enumerate() {
                assert_eq!(lex_index(n, e), k);
            }
        }
    }
}
