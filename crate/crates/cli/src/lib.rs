//! Front end for the `laman` binary: instance files, output records, SVG
//! drawings and the verification mode.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::ops::ControlFlow;
use std::path::{Path, PathBuf};

use laman_core::enumeration::{reverse_search, EnumerationError, Framework, Instance, ParentCheck, SearchOptions};
use laman_core::geometry::{Edge, GeometryError, PointSet};
use laman_core::oracle::brute_frameworks;
use laman_core::Triangulation;
use thiserror::Error;

/// Largest instance `--verify` accepts.
pub const VERIFY_LIMIT: usize = 8;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Coordinate(GeometryError),
    #[error("{0}")]
    Genericity(GeometryError),
    #[error("invalid constraints: {0}")]
    Constraints(EnumerationError),
    #[error("verification failed: {0}")]
    Mismatch(String),
    #[error("{0}")]
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Other(_) => 1,
            CliError::Parse { .. } | CliError::Coordinate(_) => 2,
            CliError::Genericity(_) => 3,
            CliError::Constraints(_) => 4,
            CliError::Mismatch(_) => 5,
        }
    }
}

impl From<EnumerationError> for CliError {
    fn from(e: EnumerationError) -> Self {
        use EnumerationError as E;
        match e {
            E::Geometry(g) => g.into(),
            E::ConstraintOutOfRange(_)
            | E::DuplicateConstraint(_)
            | E::CrossingConstraints(..)
            | E::DependentConstraints(_) => CliError::Constraints(e),
            other => CliError::Other(other.to_string()),
        }
    }
}

impl From<GeometryError> for CliError {
    fn from(g: GeometryError) -> Self {
        match g {
            GeometryError::BadCoordinate(_) | GeometryError::CoordinateOverflow(_) => CliError::Coordinate(g),
            g => CliError::Genericity(g),
        }
    }
}

/// A parsed instance file, before any geometric validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceFile {
    pub coords: Vec<(String, String)>,
    pub constraints: Vec<Edge>,
}

/// Parses the text format: `n`, `n` coordinate lines, `m`, `m` lines `u v`
/// with 1-based `u < v`. Blank lines and lines starting with `#` are skipped.
pub fn parse_instance_str(text: &str) -> Result<InstanceFile, CliError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let mut last = 0;
    let mut next = |what: &str| {
        let (k, l) = lines.next().ok_or_else(|| CliError::Parse {
            line: last + 1,
            msg: format!("unexpected end of file, expected {what}"),
        })?;
        last = k;
        Ok::<_, CliError>((k, l.split_whitespace().collect::<Vec<_>>()))
    };
    let bad = |line, msg: String| CliError::Parse { line, msg };
    let count = |(k, f): (usize, Vec<&str>), what: &str| match f.as_slice() {
        [x] => x
            .parse::<usize>()
            .map_err(|_| bad(k, format!("{what} must be a non-negative integer, got {x:?}"))),
        _ => Err(bad(k, format!("expected a single integer {what}"))),
    };

    let n = count(next("the point count")?, "point count")?;
    let mut coords = Vec::with_capacity(n);
    for _ in 0..n {
        match next("a coordinate line")? {
            (_, f) if f.len() == 2 => coords.push((f[0].to_string(), f[1].to_string())),
            (k, _) => return Err(bad(k, "expected two coordinates".into())),
        }
    }
    let m = count(next("the constraint count")?, "constraint count")?;
    let mut constraints = Vec::with_capacity(m);
    for _ in 0..m {
        let (k, f) = next("a constraint line")?;
        let ends: Vec<usize> = f.iter().filter_map(|x| x.parse().ok()).collect();
        match *ends.as_slice() {
            [u, v] if f.len() == 2 && 1 <= u && u < v && v <= n => constraints.push(Edge::from_labels(u, v)),
            [_, _] if f.len() == 2 => {
                return Err(bad(
                    k,
                    format!("constraint needs 1 <= u < v <= {n}, got {} {}", f[0], f[1]),
                ))
            }
            _ => return Err(bad(k, "expected two vertex labels".into())),
        }
    }
    if let Some((k, _)) = lines.next() {
        return Err(bad(k, "trailing content after the constraint list".into()));
    }
    Ok(InstanceFile { coords, constraints })
}

/// Reads an instance file and validates it: genericity, then the constraint
/// set (in range, non-crossing, independent).
pub fn parse_instance(path: &Path) -> Result<Instance, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })?;
    let file = parse_instance_str(&text)?;
    build_instance(&file)
}

pub fn build_instance(file: &InstanceFile) -> Result<Instance, CliError> {
    let points = PointSet::from_decimals(&file.coords).map_err(CliError::from)?;
    Ok(Instance::new(points, &file.constraints)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Enumerate,
    CountOnly,
    RootOnly,
    Verify,
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub mode: Mode,
    pub format: Format,
    pub svg_dir: Option<PathBuf>,
    pub parent_check: ParentCheck,
    pub max_outputs: Option<u64>,
    /// Attach search-tree depth and the exchanged pair to each record.
    pub tree: bool,
}

/// One emitted framework.
#[derive(Debug, Clone, Copy)]
pub struct Record<'a> {
    pub index: u64,
    pub framework: &'a Framework,
    pub depth: usize,
    /// `(e1, e2)` with this framework equal to its parent minus `e1` plus `e2`.
    pub exchange: Option<(Edge, Edge)>,
}

impl Record<'_> {
    pub fn write(&self, out: &mut dyn Write, format: Format, tree: bool) -> io::Result<()> {
        match format {
            Format::Text => {
                write!(out, "L {}: {}", self.index, self.framework)?;
                if tree {
                    write!(out, " depth={}", self.depth)?;
                    if let Some((a, b)) = self.exchange {
                        write!(out, " swap={a}->{b}")?;
                    }
                }
                writeln!(out)
            }
            Format::Json => {
                let pair = |e: Edge| {
                    let (u, v) = e.labels();
                    serde_json::json!([u, v])
                };
                let mut rec = serde_json::json!({
                    "index": self.index,
                    "edges": self.framework.edges().iter().map(|&e| pair(e)).collect::<Vec<_>>(),
                });
                if tree {
                    rec["depth"] = self.depth.into();
                    rec["swap"] = match self.exchange {
                        Some((a, b)) => serde_json::json!([pair(a), pair(b)]),
                        None => serde_json::Value::Null,
                    };
                }
                writeln!(out, "{rec}")
            }
        }
    }
}

/// Draws `framework` over its underlying triangulation: framework edges
/// solid, remaining triangulation edges dotted, constraints thicker.
pub fn render_svg(inst: &Instance, framework: &Framework, tri: &Triangulation) -> String {
    const SIZE: f64 = 480.0;
    let p = inst.points();
    let xy: Vec<(f64, f64)> = (0..p.len()).map(|i| p.to_f64(i)).collect();
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for &(x, y) in &xy {
        (x0, y0, x1, y1) = (x0.min(x), y0.min(y), x1.max(x), y1.max(y));
    }
    let span = (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
    let margin = 0.05 * span;
    let scale = SIZE / (span + 2.0 * margin);
    let at = |i: usize| {
        let (x, y) = xy[i];
        ((x - x0 + margin) * scale, (y1 - y + margin) * scale)
    };
    let (w, h) = ((x1 - x0 + 2.0 * margin) * scale, (y1 - y0 + 2.0 * margin) * scale);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.1}" height="{h:.1}" viewBox="0 0 {w:.1} {h:.1}">"#
    );
    let line = |s: &mut String, e: Edge, class: &str, style: &str| {
        let ((ax, ay), (bx, by)) = (at(e.u), at(e.v));
        let _ = writeln!(
            s,
            r#"  <line class="{class}" x1="{ax:.2}" y1="{ay:.2}" x2="{bx:.2}" y2="{by:.2}" {style}/>"#
        );
    };
    for e in tri.edges().filter(|&e| !framework.contains(e)) {
        line(
            &mut s,
            e,
            "fill",
            r#"stroke="gray" stroke-width="1" stroke-dasharray="2 4""#,
        );
    }
    for &e in framework.edges() {
        let width = if inst.constraints().contains(e) { 4 } else { 2 };
        line(&mut s, e, "bar", &format!(r#"stroke="black" stroke-width="{width}""#));
    }
    for i in 0..xy.len() {
        let (x, y) = at(i);
        let _ = writeln!(s, r#"  <circle cx="{x:.2}" cy="{y:.2}" r="4" fill="black"/>"#);
        let _ = writeln!(
            s,
            r#"  <text x="{:.2}" y="{:.2}" font-size="12">{}</text>"#,
            x + 6.0,
            y - 6.0,
            i + 1
        );
    }
    s.push_str("</svg>\n");
    s
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.into(),
        source,
    }
}

fn stdout_err(source: io::Error) -> CliError {
    CliError::Io {
        path: "<stdout>".into(),
        source,
    }
}

/// Runs one mode on `inst`, writing records or summaries to `out`.
pub fn run(inst: &Instance, opts: &RunOptions, out: &mut dyn Write) -> Result<(), CliError> {
    if let Some(dir) = &opts.svg_dir {
        fs::create_dir_all(dir).map_err(io_err(dir))?;
    }
    if opts.mode == Mode::RootOnly {
        let root = inst.root();
        let rec = Record {
            index: 1,
            framework: root,
            depth: 0,
            exchange: None,
        };
        rec.write(out, opts.format, opts.tree).map_err(stdout_err)?;
        if let Some(dir) = &opts.svg_dir {
            write_svg(dir, 1, &render_svg(inst, root, &inst.underlying(root)?))?;
        }
        return out.flush().map_err(stdout_err);
    }
    if opts.mode == Mode::Verify && inst.vertex_count() > VERIFY_LIMIT {
        return Err(CliError::Other(format!(
            "--verify is limited to {VERIFY_LIMIT} points, got {}",
            inst.vertex_count()
        )));
    }

    let search = SearchOptions {
        parent_check: opts.parent_check,
        max_outputs: opts.max_outputs,
    };
    let mut seen: BTreeSet<Vec<Edge>> = BTreeSet::new();
    let mut failure: Option<CliError> = None;
    let stats = reverse_search(inst, search, |v| {
        let mut step = || -> Result<(), CliError> {
            match opts.mode {
                Mode::Enumerate => {
                    let rec = Record {
                        index: v.index,
                        framework: v.framework,
                        depth: v.depth,
                        exchange: v.exchange,
                    };
                    rec.write(out, opts.format, opts.tree)
                        .and_then(|_| out.flush())
                        .map_err(stdout_err)?;
                }
                Mode::Verify => {
                    if !inst.is_framework(v.framework) {
                        return Err(CliError::Mismatch(format!(
                            "output {} is not a valid framework: {}",
                            v.index, v.framework
                        )));
                    }
                    if !seen.insert(v.framework.edges().to_vec()) {
                        return Err(CliError::Mismatch(format!(
                            "output {} repeats {}",
                            v.index, v.framework
                        )));
                    }
                }
                Mode::CountOnly | Mode::RootOnly => {}
            }
            if let Some(dir) = &opts.svg_dir {
                write_svg(dir, v.index, &render_svg(inst, v.framework, v.triangulation))?;
            }
            Ok(())
        };
        match step() {
            Ok(()) => ControlFlow::Continue(()),
            Err(e) => {
                failure = Some(e);
                ControlFlow::Break(())
            }
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }

    match opts.mode {
        Mode::CountOnly => match opts.format {
            Format::Text => writeln!(out, "{}", stats.outputs),
            Format::Json => writeln!(out, "{}", serde_json::json!({ "count": stats.outputs })),
        }
        .map_err(stdout_err)?,
        Mode::Verify => {
            let p = inst.points();
            let oracle = brute_frameworks(p, inst.constraints().edges()).map_err(|e| CliError::Other(e.to_string()))?;
            if stats.truncated {
                seen.iter()
                    .find(|l| !oracle.frameworks.contains(*l))
                    .map_or(Ok(()), |l| {
                        Err(CliError::Mismatch(format!(
                            "{} is not in the brute-force list",
                            Framework::new(l.clone())
                        )))
                    })?;
            } else if seen != oracle.frameworks {
                let missing = oracle.frameworks.difference(&seen).count();
                let extra = seen.difference(&oracle.frameworks).count();
                return Err(CliError::Mismatch(format!(
                    "search found {}, brute force {}; {missing} missing, {extra} unexpected",
                    seen.len(),
                    oracle.frameworks.len()
                )));
            }
            match opts.format {
                Format::Text => writeln!(out, "verified {} frameworks against brute force", seen.len()),
                Format::Json => writeln!(out, "{}", serde_json::json!({ "verified": seen.len() })),
            }
            .map_err(stdout_err)?;
        }
        Mode::Enumerate | Mode::RootOnly => {}
    }
    out.flush().map_err(stdout_err)
}

fn write_svg(dir: &Path, index: u64, svg: &str) -> Result<(), CliError> {
    let path = dir.join(format!("L{index:06}.svg"));
    fs::write(&path, svg).map_err(io_err(&path))
}
