//! Exact planar predicates, point sets and canonical edges.
//!
//! Coordinates are exact rationals sharing one power-of-ten denominator, so a
//! point set is stored as integer numerators. All signs below are exact.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::exact::{exact_sign, incircle_poly, orient_poly, Checked};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("points {0:?} are collinear; the in-circle test is undefined")]
    DegenerateTriangle([usize; 3]),
    #[error("collinear triples (1-based): {}", fmt_triples(.0))]
    Collinear(Vec<[usize; 3]>),
    #[error("points {} and {} coincide", .0 + 1, .1 + 1)]
    DuplicatePoint(usize, usize),
    #[error("cannot parse coordinate {0:?}")]
    BadCoordinate(String),
    #[error("coordinate {0:?} does not fit after rescaling to a common denominator")]
    CoordinateOverflow(String),
    #[error("at least 3 points are required, got {0}")]
    TooFewPoints(usize),
}

fn fmt_triples(t: &[[usize; 3]]) -> String {
    t.iter()
        .map(|[a, b, c]| format!("({},{},{})", a + 1, b + 1, c + 1))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Exact sign of a predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn is_positive(self) -> bool {
        self == Sign::Positive
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Negative
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

impl From<Ordering> for Sign {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }
}

/// A labelled point. `id` is the 0-based vertex index; coordinates are the
/// integer numerators over the owning [`PointSet`]'s common denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Point {
    pub id: usize,
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub fn new(id: usize, x: i64, y: i64) -> Self {
        Point { id, x, y }
    }

    fn xy(&self) -> (i64, i64) {
        (self.x, self.y)
    }
}

/// An undirected edge between two distinct vertices, stored with `u < v`.
///
/// Vertices are 0-based internally; `Display` and `Debug` print the 1-based
/// labels used in instance files, e.g. `(1,3)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    /// Canonical edge on `a`, `b`. Panics if `a == b`.
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "self-loop");
        if a < b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    /// Edge from 1-based labels.
    pub fn from_labels(a: usize, b: usize) -> Self {
        Edge::new(a - 1, b - 1)
    }

    /// Position of this edge in the lexicographic listing of `K_n`.
    #[inline]
    pub fn index(self, n: usize) -> usize {
        self.u * (2 * n - self.u - 1) / 2 + (self.v - self.u - 1)
    }

    pub fn has_vertex(self, w: usize) -> bool {
        self.u == w || self.v == w
    }

    pub fn shares_vertex(self, other: Edge) -> bool {
        self.has_vertex(other.u) || self.has_vertex(other.v)
    }

    pub fn labels(self) -> (usize, usize) {
        (self.u + 1, self.v + 1)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.u + 1, self.v + 1)
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Number of edges of `K_n`.
pub fn edge_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// All edges of `K_n` in lexicographic order.
pub fn complete_edges(n: usize) -> impl Iterator<Item = Edge> {
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| Edge { u, v }))
}

/// A subset of the edges of `K_n`, iterated in lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EdgeSet {
    n: usize,
    words: Vec<u64>,
}

impl EdgeSet {
    pub fn new(n: usize) -> Self {
        EdgeSet {
            n,
            words: vec![0; edge_count(n).div_ceil(64)],
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = Edge>) -> Self {
        let mut s = EdgeSet::new(n);
        for e in edges {
            s.insert(e);
        }
        s
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn contains(&self, e: Edge) -> bool {
        let i = e.index(self.n);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// Returns whether the edge was newly inserted.
    #[inline]
    pub fn insert(&mut self, e: Edge) -> bool {
        let i = e.index(self.n);
        let had = self.words[i / 64] >> (i % 64) & 1 == 1;
        self.words[i / 64] |= 1 << (i % 64);
        !had
    }

    /// Returns whether the edge was present.
    #[inline]
    pub fn remove(&mut self, e: Edge) -> bool {
        let i = e.index(self.n);
        let had = self.words[i / 64] >> (i % 64) & 1 == 1;
        self.words[i / 64] &= !(1 << (i % 64));
        had
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = Edge> + '_ {
        complete_edges(self.n).filter(move |&e| self.contains(e))
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A fixed planar point set with its convex hull.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<Point>,
    /// Coordinates are `numerator / 10^scale`.
    scale: u32,
    hull: Vec<usize>,
    on_hull: Vec<bool>,
}

impl PointSet {
    /// Builds a point set from integer coordinates (denominator 1).
    pub fn from_integers(coords: &[(i64, i64)]) -> Result<Self, GeometryError> {
        Self::build(coords.to_vec(), 0)
    }

    /// Builds a point set from decimal strings such as `"-1.25"`.
    ///
    /// All coordinates are rescaled to the largest number of fractional
    /// digits present, so the stored numerators are exact.
    pub fn from_decimals<S: AsRef<str>>(coords: &[(S, S)]) -> Result<Self, GeometryError> {
        let parsed = coords
            .iter()
            .map(|(x, y)| Ok((parse_decimal(x.as_ref())?, parse_decimal(y.as_ref())?)))
            .collect::<Result<Vec<_>, GeometryError>>()?;
        let scale = parsed.iter().flat_map(|(x, y)| [x.1, y.1]).max().unwrap_or(0);
        let rescale = |(m, digits): (i128, u32), raw: &str| -> Result<i64, GeometryError> {
            10i128
                .checked_pow(scale - digits)
                .and_then(|f| m.checked_mul(f))
                .and_then(|v| i64::try_from(v).ok())
                .ok_or_else(|| GeometryError::CoordinateOverflow(raw.to_string()))
        };
        let ints = parsed
            .into_iter()
            .zip(coords)
            .map(|((x, y), (rx, ry))| Ok((rescale(x, rx.as_ref())?, rescale(y, ry.as_ref())?)))
            .collect::<Result<Vec<_>, GeometryError>>()?;
        Self::build(ints, scale)
    }

    fn build(coords: Vec<(i64, i64)>, scale: u32) -> Result<Self, GeometryError> {
        if coords.len() < 3 {
            return Err(GeometryError::TooFewPoints(coords.len()));
        }
        let points: Vec<Point> = coords
            .iter()
            .enumerate()
            .map(|(id, &(x, y))| Point { id, x, y })
            .collect();
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by_key(|&i| (points[i].x, points[i].y));
        for w in order.windows(2) {
            if points[w[0]].xy() == points[w[1]].xy() {
                let (a, b) = (w[0].min(w[1]), w[0].max(w[1]));
                return Err(GeometryError::DuplicatePoint(a, b));
            }
        }
        let hull = convex_hull(&points, &order);
        let n = points.len();
        let mut on_hull = vec![false; edge_count(n)];
        for k in 0..hull.len() {
            let e = Edge::new(hull[k], hull[(k + 1) % hull.len()]);
            on_hull[e.index(n)] = true;
        }
        Ok(PointSet {
            points,
            scale,
            hull,
            on_hull,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    /// Coordinates as floating point, for drawing only.
    pub fn to_f64(&self, i: usize) -> (f64, f64) {
        let d = 10f64.powi(self.scale as i32);
        (self.points[i].x as f64 / d, self.points[i].y as f64 / d)
    }

    /// Hull vertices in counter-clockwise order.
    pub fn hull(&self) -> &[usize] {
        &self.hull
    }

    pub fn is_hull_edge(&self, e: Edge) -> bool {
        self.on_hull[e.index(self.len())]
    }

    pub fn hull_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let h = self.hull.len();
        (0..h).map(move |k| Edge::new(self.hull[k], self.hull[(k + 1) % h]))
    }

    pub fn orient(&self, a: usize, b: usize, c: usize) -> Sign {
        orientation(&self.points[a], &self.points[b], &self.points[c])
    }

    /// Whether the segments of `e` and `f` properly intersect.
    pub fn edges_cross(&self, e: Edge, f: Edge) -> bool {
        properly_intersect(
            (&self.points[e.u], &self.points[e.v]),
            (&self.points[f.u], &self.points[f.v]),
        )
    }
}

/// Andrew's monotone chain over pre-sorted indices; strict turns only.
fn convex_hull(points: &[Point], sorted: &[usize]) -> Vec<usize> {
    let turn = |a: usize, b: usize, c: usize| orientation(&points[a], &points[b], &points[c]);
    let mut lower: Vec<usize> = Vec::new();
    for &p in sorted {
        while lower.len() >= 2 && !turn(lower[lower.len() - 2], lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &p in sorted.iter().rev() {
        while upper.len() >= 2 && !turn(upper[upper.len() - 2], upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn parse_decimal(s: &str) -> Result<(i128, u32), GeometryError> {
    let bad = || GeometryError::BadCoordinate(s.to_string());
    let t = s.trim();
    let (neg, body) = match t.as_bytes().first() {
        Some(b'-') => (true, &t[1..]),
        Some(b'+') => (false, &t[1..]),
        _ => (false, t),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let m: i128 = if digits.is_empty() {
        0
    } else {
        digits
            .parse()
            .map_err(|_| GeometryError::CoordinateOverflow(s.to_string()))?
    };
    let frac = u32::try_from(frac_part.len()).map_err(|_| bad())?;
    if frac > 18 {
        return Err(GeometryError::CoordinateOverflow(s.to_string()));
    }
    Ok((if neg { -m } else { m }, frac))
}

/// Sign of the turn `a -> b -> c`: positive when `c` is strictly left of the
/// directed line `ab`.
pub fn orientation(a: &Point, b: &Point, c: &Point) -> Sign {
    exact_sign(
        || orient_poly::<Checked>(a.xy(), b.xy(), c.xy()),
        || orient_poly::<BigInt>(a.xy(), b.xy(), c.xy()),
    )
    .into()
}

/// The in-circle determinant sign. For a counter-clockwise triangle `abc`
/// it is positive iff `d` is strictly inside the circumcircle; the sign
/// flips for a clockwise triangle.
pub fn incircle(a: &Point, b: &Point, c: &Point, d: &Point) -> Result<Sign, GeometryError> {
    if orientation(a, b, c) == Sign::Zero {
        return Err(GeometryError::DegenerateTriangle([a.id, b.id, c.id]));
    }
    Ok(raw_incircle(a, b, c, d))
}

fn raw_incircle(a: &Point, b: &Point, c: &Point, d: &Point) -> Sign {
    exact_sign(
        || incircle_poly::<Checked>(a.xy(), b.xy(), c.xy(), d.xy()),
        || incircle_poly::<BigInt>(a.xy(), b.xy(), c.xy(), d.xy()),
    )
    .into()
}

/// [`incircle`] with co-circular ties broken symbolically.
///
/// The lift of point `i` is raised by `eps^(i+1)`, with lower ids carrying
/// the dominant infinitesimal. The derivative of the determinant with respect
/// to the lift of each row is a signed orientation of the other three
/// points; the sign of the first non-vanishing derivative, in id order,
/// decides a tie. This is the sign of a genuine lifting, so every
/// point set gets a unique (constrained) Delaunay triangulation.
pub fn incircle_tiebroken(a: &Point, b: &Point, c: &Point, d: &Point) -> Result<Sign, GeometryError> {
    let s = incircle(a, b, c, d)?;
    if s != Sign::Zero {
        return Ok(s);
    }
    let mut rows = [
        (a.id, orientation(b, c, d)),
        (b.id, -orientation(a, c, d)),
        (c.id, orientation(a, b, d)),
        (d.id, -orientation(a, b, c)),
    ];
    rows.sort_by_key(|r| r.0);
    // The last row's coefficient is -orient(a,b,c) != 0, so this never falls through.
    Ok(rows
        .iter()
        .map(|r| r.1)
        .find(|s| *s != Sign::Zero)
        .unwrap_or(Sign::Positive))
}

/// Whether two segments share a point while having no common endpoint label.
pub fn properly_intersect(s: (&Point, &Point), t: (&Point, &Point)) -> bool {
    let (p1, p2) = s;
    let (q1, q2) = t;
    if p1.id == q1.id || p1.id == q2.id || p2.id == q1.id || p2.id == q2.id {
        return false;
    }
    let d1 = orientation(p1, p2, q1);
    let d2 = orientation(p1, p2, q2);
    let d3 = orientation(q1, q2, p1);
    let d4 = orientation(q1, q2, p2);
    if d1 != d2 && d1 != Sign::Zero && d2 != Sign::Zero && d3 != d4 && d3 != Sign::Zero && d4 != Sign::Zero {
        return true;
    }
    let on = |a: &Point, b: &Point, c: &Point| {
        c.x >= a.x.min(b.x) && c.x <= a.x.max(b.x) && c.y >= a.y.min(b.y) && c.y <= a.y.max(b.y)
    };
    (d1 == Sign::Zero && on(p1, p2, q1))
        || (d2 == Sign::Zero && on(p1, p2, q2))
        || (d3 == Sign::Zero && on(q1, q2, p1))
        || (d4 == Sign::Zero && on(q1, q2, p2))
}

/// Outcome of a successful genericity check.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GenericityReport {
    /// Co-circular quadruples (0-based ids, ascending). These are legal;
    /// ties are broken by [`incircle_tiebroken`].
    pub cocircular: Vec<[usize; 4]>,
}

/// Rejects point sets with collinear triples and reports co-circular
/// quadruples.
pub fn assert_generic(p: &PointSet) -> Result<GenericityReport, GeometryError> {
    let n = p.len();
    let pts = p.points();
    let mut collinear = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if orientation(&pts[a], &pts[b], &pts[c]) == Sign::Zero {
                    collinear.push([a, b, c]);
                }
            }
        }
    }
    if !collinear.is_empty() {
        return Err(GeometryError::Collinear(collinear));
    }
    let mut cocircular = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    if raw_incircle(&pts[a], &pts[b], &pts[c], &pts[d]) == Sign::Zero {
                        cocircular.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    Ok(GenericityReport { cocircular })
}
