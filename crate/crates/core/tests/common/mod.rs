#![allow(dead_code)]

use laman_core::geometry::{complete_edges, Edge, PointSet};
use laman_core::rigidity::is_independent;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn e(a: usize, b: usize) -> Edge {
    Edge::from_labels(a, b)
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i128 {
    (a.0 - o.0) as i128 * (b.1 - o.1) as i128 - (a.1 - o.1) as i128 * (b.0 - o.0) as i128
}

fn lifted(a: (i64, i64), b: (i64, i64), c: (i64, i64), d: (i64, i64)) -> i128 {
    let row = |p: (i64, i64)| {
        let (x, y) = ((p.0 - d.0) as i128, (p.1 - d.1) as i128);
        (x, y, x * x + y * y)
    };
    let (a, b, c) = (row(a), row(b), row(c));
    a.0 * (b.1 * c.2 - b.2 * c.1) - a.1 * (b.0 * c.2 - b.2 * c.0) + a.2 * (b.0 * c.1 - b.1 * c.0)
}

/// Random integer points with no three collinear and, if `strict`, no four
/// co-circular.
pub fn random_points(rng: &mut impl Rng, n: usize, span: i64, strict: bool) -> Vec<(i64, i64)> {
    'retry: loop {
        let mut pts: Vec<(i64, i64)> = Vec::with_capacity(n);
        while pts.len() < n {
            let p = (rng.gen_range(0..span), rng.gen_range(0..span));
            if pts.contains(&p) {
                continue;
            }
            let mut ok = true;
            for i in 0..pts.len() {
                for j in i + 1..pts.len() {
                    if cross(pts[i], pts[j], p) == 0 {
                        ok = false;
                    }
                }
            }
            if ok {
                pts.push(p);
            }
        }
        if strict {
            for a in 0..n {
                for b in a + 1..n {
                    for c in b + 1..n {
                        for d in c + 1..n {
                            if lifted(pts[a], pts[b], pts[c], pts[d]) == 0 {
                                continue 'retry;
                            }
                        }
                    }
                }
            }
        }
        return pts;
    }
}

pub fn point_set(coords: &[(i64, i64)]) -> PointSet {
    PointSet::from_integers(coords).unwrap()
}

/// A random non-crossing independent edge set of size at most `k`.
pub fn random_constraints(rng: &mut impl Rng, p: &PointSet, k: usize) -> Vec<Edge> {
    let mut pool: Vec<Edge> = complete_edges(p.len()).collect();
    pool.shuffle(rng);
    let mut f: Vec<Edge> = Vec::new();
    for c in pool {
        if f.len() >= k {
            break;
        }
        if f.iter().any(|&g| p.edges_cross(c, g)) {
            continue;
        }
        f.push(c);
        if !is_independent(p.len(), &f) {
            f.pop();
        }
    }
    f.sort();
    f
}

/// Does any pair of edges cross, decided with the naive segment test.
pub fn naive_crossing(coords: &[(i64, i64)], edges: &[Edge]) -> bool {
    let s = |o, a, b| cross(o, a, b).signum();
    for (i, &a) in edges.iter().enumerate() {
        for &b in &edges[i + 1..] {
            if a.shares_vertex(b) {
                continue;
            }
            let (p, q, r, t) = (coords[a.u], coords[a.v], coords[b.u], coords[b.v]);
            if s(p, q, r) * s(p, q, t) < 0 && s(r, t, p) * s(r, t, q) < 0 {
                return true;
            }
        }
    }
    false
}
