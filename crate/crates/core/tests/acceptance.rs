//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits with
//! a non-zero status if any criterion fails.

mod common;

use std::alloc::{GlobalAlloc, Layout, System};
use std::collections::BTreeSet;
use std::ops::ControlFlow;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::*;
use laman_core::cdt::{build_cdt, Triangulation};
use laman_core::enumeration::{reverse_search, Framework, Instance, Node, ParentCase, SearchOptions};
use laman_core::geometry::{complete_edges, Edge, PointSet};
use laman_core::oracle::{all_triangulations, brute_frameworks, is_laman_by_counting};
use rand::seq::SliceRandom;
use rand::Rng;

struct Counting;

static LIVE: AtomicUsize = AtomicUsize::new(0);

unsafe impl GlobalAlloc for Counting {
    unsafe fn alloc(&self, layout: Layout) -> *mut u8 {
        LIVE.fetch_add(layout.size(), Ordering::Relaxed);
        System.alloc(layout)
    }

    unsafe fn dealloc(&self, ptr: *mut u8, layout: Layout) {
        LIVE.fetch_sub(layout.size(), Ordering::Relaxed);
        System.dealloc(ptr, layout)
    }

    unsafe fn realloc(&self, ptr: *mut u8, layout: Layout, new_size: usize) -> *mut u8 {
        LIVE.fetch_add(new_size, Ordering::Relaxed);
        LIVE.fetch_sub(layout.size(), Ordering::Relaxed);
        System.realloc(ptr, layout, new_size)
    }
}

#[global_allocator]
static GLOBAL: Counting = Counting;

/// Bounds pinned by the criteria.
const ORACLE_INSTANCES: usize = 60;
const EXHAUSTIVE_INSTANCES: usize = 12;
const OPTIMALITY_INSTANCES: usize = 24;
const LEGALIZE_RUNS: usize = 100;
const UPDATE_OPS: usize = 10_000;
const PER_OUTPUT_LIMIT: Duration = Duration::from_millis(50);

type Outcome = Result<String, String>;

type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

struct Case {
    coords: Vec<(i64, i64)>,
    f: Vec<Edge>,
    inst: Instance,
    outputs: Vec<Framework>,
}

fn collect(inst: &Instance) -> Vec<Framework> {
    let mut out = Vec::new();
    reverse_search(inst, SearchOptions::default(), |v| {
        out.push(v.framework.clone());
        ControlFlow::Continue(())
    })
    .expect("search runs");
    out
}

/// The criterion-1 corpus: n cycles through 4..=8 and |F| through 0..n.
fn corpus() -> Vec<Case> {
    let mut r = rng(2024);
    (0..ORACLE_INSTANCES)
        .map(|t| {
            let n = 4 + t % 5;
            let k = (t / 5) % n;
            let coords = random_points(&mut r, n, 60, false);
            let p = point_set(&coords);
            let f = random_constraints(&mut r, &p, k);
            assert_eq!(f.len(), k);
            let inst = Instance::new(p, &f).expect("valid instance");
            let outputs = collect(&inst);
            Case {
                coords,
                f,
                inst,
                outputs,
            }
        })
        .collect()
}

fn criterion_1(cases: &[Case]) -> Outcome {
    let mut total = 0;
    let mut sizes = BTreeSet::new();
    for c in cases {
        let oracle = brute_frameworks(&point_set(&c.coords), &c.f).map_err(|e| e.to_string())?;
        let got: BTreeSet<Vec<Edge>> = c.outputs.iter().map(|l| l.edges().to_vec()).collect();
        if got != oracle.frameworks {
            return Err(format!(
                "{:?} F={:?}: search {} vs oracle {}",
                c.coords,
                c.f,
                got.len(),
                oracle.frameworks.len()
            ));
        }
        total += got.len();
        sizes.insert((c.coords.len(), c.f.len()));
    }
    Ok(format!(
        "{} instances, {} (n,|F|) shapes, {total} frameworks, set-equal to brute force",
        cases.len(),
        sizes.len()
    ))
}

fn criterion_2(cases: &[Case]) -> Outcome {
    let mut checked = 0;
    for c in cases {
        let n = c.coords.len();
        for l in &c.outputs {
            let es = l.edges();
            let ok = es.len() == 2 * n - 3
                && c.f.iter().all(|f| es.contains(f))
                && !naive_crossing(&c.coords, es)
                && is_laman_by_counting(n, es);
            if !ok {
                return Err(format!("{:?} F={:?}: invalid output {l}", c.coords, c.f));
            }
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} outputs: 2n-3 edges, contain F, non-crossing, subset-count Laman"
    ))
}

fn criterion_3(cases: &[Case]) -> Outcome {
    for c in cases {
        let keys: BTreeSet<&[Edge]> = c.outputs.iter().map(|l| l.edges()).collect();
        if keys.len() != c.outputs.len() {
            return Err(format!(
                "{:?}: {} outputs, {} distinct",
                c.coords,
                c.outputs.len(),
                keys.len()
            ));
        }
    }
    Ok(format!("{} instances, no repeated edge list", cases.len()))
}

fn criterion_4(cases: &[Case]) -> Outcome {
    let (mut chains, mut longest, mut illegal_steps) = (0, 0, 0);
    for c in cases {
        let n = c.coords.len();
        let cap = 5 * n * n;
        for l in &c.outputs {
            let mut cur = l.clone();
            let mut tri = c.inst.underlying(&cur).map_err(|e| e.to_string())?;
            let mut steps = 0;
            while &cur != c.inst.root() {
                let step = c.inst.parent(&cur, &tri).map_err(|e| format!("{l}: {e}"))?;
                if step.case == ParentCase::Illegal {
                    if step.triangulation.angle_vector() <= tri.angle_vector() {
                        return Err(format!("{l}: angle vector did not increase at step {steps}"));
                    }
                    illegal_steps += 1;
                }
                if steps % 5 == 0 && step.triangulation != c.inst.underlying(&step.parent).unwrap() {
                    return Err(format!("{l}: parent triangulation differs from rebuild"));
                }
                cur = step.parent;
                tri = step.triangulation;
                steps += 1;
                if steps > cap {
                    return Err(format!("{l}: parent chain exceeds 5n^2 = {cap}"));
                }
            }
            chains += 1;
            longest = longest.max(steps);
        }
    }
    Ok(format!(
        "{chains} chains reach L*, longest {longest} steps, {illegal_steps} illegal-case steps all raise the angle vector"
    ))
}

fn criterion_5() -> Outcome {
    let mut r = rng(55);
    let (mut pairs, mut children) = (0u64, 0u64);
    for t in 0..EXHAUSTIVE_INSTANCES {
        let n = 5 + t % 3;
        let coords = random_points(&mut r, n, 50, false);
        let p = point_set(&coords);
        let f = random_constraints(&mut r, &p, t % 4);
        let inst = Instance::new(p, &f).unwrap();
        for l in collect(&inst) {
            let mut node = Node::build(&inst, l.clone()).unwrap();
            for &e1 in l.edges().iter().filter(|e| !f.contains(e)) {
                for e2 in complete_edges(n).filter(|&e| !l.contains(e)) {
                    let adj = inst.adjacency(&l, e1, e2).unwrap();
                    if node.adjacent(e1, e2) != adj.is_some() {
                        return Err(format!("{l} ({e1},{e2}): adjacency tables disagree"));
                    }
                    let Some(child) = adj else { continue };
                    pairs += 1;
                    let slow = &child != inst.root() && inst.parent_of(&child).unwrap().parent == l;
                    let f1 = node.check_parent_f1(e1, e2);
                    let f2 = node.check_parent_f2(e1, e2);
                    if f1 && f2 {
                        return Err(format!("{l} ({e1},{e2}): both conditions fire"));
                    }
                    if (f1 || f2) != slow {
                        return Err(format!("{l} ({e1},{e2}): fast {} vs definitional {slow}", f1 || f2));
                    }
                    children += slow as u64;
                }
            }
        }
    }
    Ok(format!(
        "{EXHAUSTIVE_INSTANCES} instances, {pairs} adjacent pairs, {children} parent links, zero disagreements"
    ))
}

fn criterion_6() -> Outcome {
    let mut r = rng(66);
    let mut compared = 0;
    for t in 0..OPTIMALITY_INSTANCES {
        let n = 4 + t % 4;
        let coords = random_points(&mut r, n, 80, true);
        let p = Arc::new(point_set(&coords));
        let f = if t % 2 == 0 {
            Vec::new()
        } else {
            random_constraints(&mut r, &p, 1 + t % 3)
        };
        let cdt = build_cdt(p.clone(), &f).unwrap();
        let best = cdt.angle_vector();
        let mut seen_self = false;
        for edges in all_triangulations(&p, &f).unwrap() {
            let t = Triangulation::from_edges(p.clone(), edges.iter().copied(), f.iter().copied())
                .map_err(|e| e.to_string())?;
            let v = t.angle_vector();
            let same = t.edge_set() == cdt.edge_set();
            seen_self |= same;
            if v > best || (v == best && !same) {
                return Err(format!("{coords:?} F={f:?}: {edges:?} is not beaten by the CDT"));
            }
            compared += 1;
        }
        if !seen_self {
            return Err(format!("{coords:?}: CDT missing from the triangulation list"));
        }
    }
    Ok(format!(
        "{OPTIMALITY_INSTANCES} instances, {compared} triangulations, CDT is the unique angle-vector maximum"
    ))
}

/// A random triangulation containing `f`: shuffled greedy maximal plane set.
fn random_triangulation(r: &mut impl Rng, p: &PointSet, f: &[Edge]) -> Vec<Edge> {
    let mut edges = f.to_vec();
    let mut pool: Vec<Edge> = complete_edges(p.len()).filter(|e| !f.contains(e)).collect();
    pool.shuffle(r);
    for e in pool {
        if edges.iter().all(|&g| !p.edges_cross(e, g)) {
            edges.push(e);
        }
    }
    edges
}

fn criterion_7() -> Outcome {
    let mut r = rng(77);
    let (mut total, mut most) = (0, 0);
    for t in 0..LEGALIZE_RUNS {
        let n = 5 + t % 5;
        let coords = random_points(&mut r, n, 100, true);
        let p = Arc::new(point_set(&coords));
        let f = random_constraints(&mut r, &p, t % 3);
        let edges = random_triangulation(&mut r, &p, &f);
        let mut tri = Triangulation::from_edges(p.clone(), edges.iter().copied(), f.iter().copied())
            .map_err(|e| e.to_string())?;
        let mut prev = tri.angle_vector();
        let mut monotone = true;
        let flips = tri.legalize_with(&f, |t, _, _| {
            let v = t.angle_vector();
            monotone &= v > prev;
            prev = v;
        });
        if !monotone {
            return Err(format!("{coords:?}: a flip did not increase the angle vector"));
        }
        if flips > n * n {
            return Err(format!("{coords:?}: {flips} flips exceed n^2"));
        }
        if tri != build_cdt(p.clone(), &f).unwrap() {
            return Err(format!("{coords:?} F={f:?}: legalization did not reach the CDT"));
        }
        total += flips;
        most = most.max(flips);
    }
    Ok(format!(
        "{LEGALIZE_RUNS} runs, {total} flips, at most {most} per run, every flip increases the angle vector"
    ))
}

fn criterion_8() -> Outcome {
    let mut r = rng(88);
    let mut done = 0;
    let (mut inserts, mut removes) = (0, 0);
    while done < UPDATE_OPS {
        let n = r.gen_range(4..=10);
        // A small grid makes co-circular quadruples common.
        let coords = random_points(&mut r, n, 12, false);
        let p = Arc::new(point_set(&coords));
        let mut tri = build_cdt(p.clone(), &[]).unwrap();
        let mut cons: Vec<Edge> = Vec::new();
        for _ in 0..200 {
            if !cons.is_empty() && r.gen_bool(0.4) {
                let e = cons.swap_remove(r.gen_range(0..cons.len()));
                tri.remove_edge_update(e).map_err(|err| err.to_string())?;
                removes += 1;
            } else {
                let cand: Vec<Edge> = complete_edges(n)
                    .filter(|e| !cons.contains(e) && cons.iter().all(|&c| !p.edges_cross(*e, c)))
                    .collect();
                let Some(&e) = cand.choose(&mut r) else { continue };
                tri.insert_edge_update(e).map_err(|err| err.to_string())?;
                cons.push(e);
                inserts += 1;
            }
            done += 1;
            if tri != build_cdt(p.clone(), &cons).unwrap() {
                return Err(format!("{coords:?} constraints {cons:?}: update differs from rebuild"));
            }
        }
    }
    Ok(format!(
        "{done} updates ({inserts} inserts, {removes} removals) equal full rebuilds"
    ))
}

/// Fixed generic 10-point instance for the scaling check.
const SCALING: [(i64, i64); 10] = [
    (20, 71),
    (81, 86),
    (42, 28),
    (98, 70),
    (58, 81),
    (40, 9),
    (85, 82),
    (37, 16),
    (4, 32),
    (88, 28),
];

fn criterion_9() -> Outcome {
    let inst = Instance::new(point_set(&SCALING), &[]).unwrap();
    let start = Instant::now();
    let mut last = start;
    let mut worst = Duration::ZERO;
    let base = LIVE.load(Ordering::Relaxed);
    let mut early_peak = 0usize;
    let mut peak = 0usize;
    let stats = reverse_search(&inst, SearchOptions::default(), |v| {
        let now = Instant::now();
        worst = worst.max(now - last);
        last = now;
        let live = LIVE.load(Ordering::Relaxed).saturating_sub(base);
        peak = peak.max(live);
        if v.index <= 1000 {
            early_peak = early_peak.max(live);
        }
        ControlFlow::Continue(())
    })
    .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let mean = elapsed / stats.outputs.max(1) as u32;
    if worst >= PER_OUTPUT_LIMIT {
        return Err(format!("slowest output took {worst:?}"));
    }
    // Live heap may fluctuate with the current node, never with the count.
    if peak > early_peak + 4096 {
        return Err(format!("live heap grew from {early_peak} B to {peak} B"));
    }
    Ok(format!(
        "n=10: {} frameworks in {elapsed:.2?}, mean {mean:.2?}, slowest {worst:.2?} per output, live heap peak {peak} B (first 1000 outputs {early_peak} B)",
        stats.outputs
    ))
}

fn main() {
    let cases = corpus();
    let criteria: Vec<(&str, Check)> = vec![
        ("oracle set equality", Box::new(|| criterion_1(&cases))),
        ("structural validity", Box::new(|| criterion_2(&cases))),
        ("no duplicates", Box::new(|| criterion_3(&cases))),
        ("parent chain bound", Box::new(|| criterion_4(&cases))),
        ("fast parent checks", Box::new(criterion_5)),
        ("CDT optimality", Box::new(criterion_6)),
        ("monotone legalization", Box::new(criterion_7)),
        ("incremental updates", Box::new(criterion_8)),
        ("scaling smoke test", Box::new(criterion_9)),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {} [PASS] {name}: {msg} ({secs:.1}s)", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} [FAIL] {name}: {msg} ({secs:.1}s)", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
