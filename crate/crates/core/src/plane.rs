//! Finite projective planes as point/line incidence structures, the plane of
//! a ternary ring, coordinatization from a quadrangle, duality and plane
//! isomorphism.
//!
//! Coordinates in the plane of a ternary ring of order `n`:
//! point `[x, y]` is `x n + y`, ideal point `[m]` is `n^2 + m`, the vertex is
//! `n^2 + n`; line `<m, k>` is `m n + k`, vertical line `<x>` is `n^2 + x`,
//! the ideal line is `n^2 + n`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ternary::{verify_axioms, TernaryRing};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PointLabel {
    Affine(usize, usize),
    Ideal(usize),
    Vertex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LineLabel {
    Slope(usize, usize),
    Vertical(usize),
    IdealLine,
}

impl std::fmt::Display for PointLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PointLabel::Affine(x, y) => write!(f, "[{x},{y}]"),
            PointLabel::Ideal(m) => write!(f, "[{m}]"),
            PointLabel::Vertex => write!(f, "z"),
        }
    }
}

impl std::fmt::Display for LineLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LineLabel::Slope(m, k) => write!(f, "<{m},{k}>"),
            LineLabel::Vertical(x) => write!(f, "<{x}>"),
            LineLabel::IdealLine => write!(f, "Z"),
        }
    }
}

fn dual_point_label(l: LineLabel) -> PointLabel {
    match l {
        LineLabel::Slope(m, k) => PointLabel::Affine(m, k),
        LineLabel::Vertical(x) => PointLabel::Ideal(x),
        LineLabel::IdealLine => PointLabel::Vertex,
    }
}

fn dual_line_label(p: PointLabel) -> LineLabel {
    match p {
        PointLabel::Affine(x, y) => LineLabel::Slope(x, y),
        PointLabel::Ideal(m) => LineLabel::Vertical(m),
        PointLabel::Vertex => LineLabel::IdealLine,
    }
}

/// Raw incidence lists; not necessarily a projective plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Incidence {
    pub n_points: usize,
    pub lines: Vec<Vec<usize>>,
}

impl Incidence {
    pub fn new(n_points: usize, mut lines: Vec<Vec<usize>>) -> Result<Self> {
        for (i, line) in lines.iter_mut().enumerate() {
            if let Some(&bad) = line.iter().find(|&&p| p >= n_points) {
                return Err(Error::input(format!("line {i} lists point {bad}, out of range 0..{n_points}")));
            }
            let before = line.len();
            line.sort_unstable();
            line.dedup();
            if line.len() != before {
                return Err(Error::input(format!("line {i} lists a point twice")));
            }
        }
        Ok(Incidence { n_points, lines })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlaneCheck {
    pub pass: bool,
    pub witness: Option<String>,
}

impl PlaneCheck {
    fn from(w: Option<String>) -> Self {
        PlaneCheck {
            pass: w.is_none(),
            witness: w,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlaneReport {
    pub points_on_one_line: PlaneCheck,
    pub lines_meet_once: PlaneCheck,
    pub quadrangle_exists: PlaneCheck,
    pub uniform: PlaneCheck,
}

impl PlaneReport {
    pub fn all_pass(&self) -> bool {
        self.points_on_one_line.pass && self.lines_meet_once.pass && self.quadrangle_exists.pass && self.uniform.pass
    }
}

pub fn verify_plane_axioms(inc: &Incidence) -> PlaneReport {
    let np = inc.n_points;
    let nl = inc.lines.len();
    let mut on = vec![false; np * nl.max(1)];
    for (l, line) in inc.lines.iter().enumerate() {
        for &p in line {
            on[p * nl + l] = true;
        }
    }
    let points_on_one_line = 'w: {
        for a in 0..np {
            for b in a + 1..np {
                let c = (0..nl).filter(|&l| on[a * nl + l] && on[b * nl + l]).count();
                if c != 1 {
                    break 'w Some(format!("points {a} and {b} lie on {c} common lines"));
                }
            }
        }
        None
    };
    let lines_meet_once = 'w: {
        for l in 0..nl {
            for m in l + 1..nl {
                let c = (0..np).filter(|&p| on[p * nl + l] && on[p * nl + m]).count();
                if c != 1 {
                    break 'w Some(format!("lines {l} and {m} share {c} points"));
                }
            }
        }
        None
    };
    let uniform = 'w: {
        let Some(first) = inc.lines.first() else {
            break 'w Some("no lines".to_string());
        };
        let k = first.len();
        if k < 3 {
            break 'w Some(format!("lines have {k} points"));
        }
        if let Some(l) = inc.lines.iter().position(|line| line.len() != k) {
            break 'w Some(format!("line {l} has {} points, line 0 has {k}", inc.lines[l].len()));
        }
        let n = k - 1;
        if np != n * n + n + 1 || nl != np {
            break 'w Some(format!("{np} points and {nl} lines for lines of size {k}"));
        }
        None
    };
    let quadrangle_exists = {
        let collinear3 = |a: usize, b: usize, c: usize| {
            (0..nl).any(|l| on[a * nl + l] && on[b * nl + l] && on[c * nl + l])
        };
        let found = (0..np).any(|a| {
            (a + 1..np).any(|b| {
                (b + 1..np).any(|c| {
                    !collinear3(a, b, c)
                        && (c + 1..np).any(|d| {
                            !collinear3(a, b, d) && !collinear3(a, c, d) && !collinear3(b, c, d)
                        })
                })
            })
        });
        if found {
            None
        } else {
            Some("no four points with no three collinear".to_string())
        }
    };
    PlaneReport {
        points_on_one_line: PlaneCheck::from(points_on_one_line),
        lines_meet_once: PlaneCheck::from(lines_meet_once),
        quadrangle_exists: PlaneCheck::from(quadrangle_exists),
        uniform: PlaneCheck::from(uniform),
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Plane {
    order: usize,
    inc: Incidence,
    point_lines: Vec<Vec<usize>>,
    on: Vec<bool>,
    join: Vec<u32>,
    meet: Vec<u32>,
    point_labels: Option<Vec<PointLabel>>,
    line_labels: Option<Vec<LineLabel>>,
}

impl std::fmt::Debug for Plane {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Plane(order = {}, points = {})", self.order, self.inc.n_points)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Quadrangle {
    pub u: usize,
    pub v: usize,
    pub o: usize,
    pub e: usize,
}

impl Plane {
    pub fn new(inc: Incidence) -> Result<Self> {
        let report = verify_plane_axioms(&inc);
        if !report.all_pass() {
            let w = [
                &report.points_on_one_line,
                &report.lines_meet_once,
                &report.quadrangle_exists,
                &report.uniform,
            ]
            .into_iter()
            .find_map(|c| c.witness.clone())
            .unwrap_or_default();
            return Err(Error::precondition(format!("not a projective plane: {w}")));
        }
        let np = inc.n_points;
        let order = inc.lines[0].len() - 1;
        let mut point_lines = vec![Vec::new(); np];
        let mut on = vec![false; np * np];
        for (l, line) in inc.lines.iter().enumerate() {
            for &p in line {
                point_lines[p].push(l);
                on[p * np + l] = true;
            }
        }
        let mut join = vec![u32::MAX; np * np];
        for (l, line) in inc.lines.iter().enumerate() {
            for &a in line {
                for &b in line {
                    if a != b {
                        join[a * np + b] = l as u32;
                    }
                }
            }
        }
        let mut meet = vec![u32::MAX; np * np];
        for (p, ls) in point_lines.iter().enumerate() {
            for &l in ls {
                for &m in ls {
                    if l != m {
                        meet[l * np + m] = p as u32;
                    }
                }
            }
        }
        Ok(Plane {
            order,
            inc,
            point_lines,
            on,
            join,
            meet,
            point_labels: None,
            line_labels: None,
        })
    }

    pub fn from_lines(n_points: usize, lines: Vec<Vec<usize>>) -> Result<Self> {
        Self::new(Incidence::new(n_points, lines)?)
    }

    /// Attaches coordinate labels; both lists must have one entry per
    /// point or line.
    pub fn with_labels(mut self, points: Vec<PointLabel>, lines: Vec<LineLabel>) -> Result<Self> {
        if points.len() != self.n_points() || lines.len() != self.n_lines() {
            return Err(Error::input("label lists do not match the plane size"));
        }
        self.point_labels = Some(points);
        self.line_labels = Some(lines);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Self {
        self.point_labels = None;
        self.line_labels = None;
        self
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn n_points(&self) -> usize {
        self.inc.n_points
    }

    #[inline]
    pub fn n_lines(&self) -> usize {
        self.inc.lines.len()
    }

    pub fn incidence(&self) -> &Incidence {
        &self.inc
    }

    pub fn line(&self, l: usize) -> &[usize] {
        &self.inc.lines[l]
    }

    pub fn lines_through(&self, p: usize) -> &[usize] {
        &self.point_lines[p]
    }

    #[inline]
    pub fn is_on(&self, p: usize, l: usize) -> bool {
        self.on[p * self.n_points() + l]
    }

    /// The line through two distinct points.
    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        debug_assert_ne!(a, b);
        self.join[a * self.n_points() + b] as usize
    }

    /// The common point of two distinct lines.
    #[inline]
    pub fn meet(&self, l: usize, m: usize) -> usize {
        debug_assert_ne!(l, m);
        self.meet[l * self.n_points() + m] as usize
    }

    pub fn point_labels(&self) -> Option<&[PointLabel]> {
        self.point_labels.as_deref()
    }

    pub fn line_labels(&self) -> Option<&[LineLabel]> {
        self.line_labels.as_deref()
    }

    pub fn point_with_label(&self, label: PointLabel) -> Option<usize> {
        self.point_labels.as_ref()?.iter().position(|&l| l == label)
    }

    pub fn line_with_label(&self, label: LineLabel) -> Option<usize> {
        self.line_labels.as_ref()?.iter().position(|&l| l == label)
    }

    fn check_points(&self, pts: &[usize]) -> Result<()> {
        match pts.iter().find(|&&p| p >= self.n_points()) {
            Some(p) => Err(Error::input(format!("point {p} out of range"))),
            None => Ok(()),
        }
    }

    fn check_lines(&self, ls: &[usize]) -> Result<()> {
        match ls.iter().find(|&&l| l >= self.n_lines()) {
            Some(l) => Err(Error::input(format!("line {l} out of range"))),
            None => Ok(()),
        }
    }

    /// Whether all the given points lie on one line.
    pub fn collinear(&self, pts: &[usize]) -> Result<bool> {
        self.check_points(pts)?;
        let distinct: BTreeSet<usize> = pts.iter().copied().collect();
        let v: Vec<usize> = distinct.into_iter().collect();
        if v.len() <= 2 {
            return Ok(true);
        }
        let l = self.join(v[0], v[1]);
        Ok(v[2..].iter().all(|&p| self.is_on(p, l)))
    }

    /// Whether all the given lines pass through one point.
    pub fn concurrent(&self, ls: &[usize]) -> Result<bool> {
        self.check_lines(ls)?;
        let distinct: BTreeSet<usize> = ls.iter().copied().collect();
        let v: Vec<usize> = distinct.into_iter().collect();
        if v.len() <= 2 {
            return Ok(true);
        }
        let p = self.meet(v[0], v[1]);
        Ok(v[2..].iter().all(|&l| self.is_on(p, l)))
    }

    /// Rank of a point set in the plane: 0, 1, 2 or 3.
    pub fn rank_of_points(&self, pts: &[usize]) -> usize {
        let distinct: BTreeSet<usize> = pts.iter().copied().collect();
        let v: Vec<usize> = distinct.into_iter().collect();
        match v.len() {
            0 => 0,
            1 => 1,
            _ => {
                let l = self.join(v[0], v[1]);
                if v[2..].iter().all(|&p| self.is_on(p, l)) {
                    2
                } else {
                    3
                }
            }
        }
    }

    pub fn is_quadrangle(&self, q: &Quadrangle) -> bool {
        let pts = [q.u, q.v, q.o, q.e];
        if pts.iter().any(|&p| p >= self.n_points()) {
            return false;
        }
        for i in 0..4 {
            for j in i + 1..4 {
                if pts[i] == pts[j] {
                    return false;
                }
                for k in j + 1..4 {
                    if self.is_on(pts[k], self.join(pts[i], pts[j])) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// The plane `P_T`, labelled with its coordinates.
pub fn plane_from_ternary(tr: &TernaryRing) -> Result<Plane> {
    let report = verify_axioms(tr);
    if let Some((name, check)) = report.first_failure() {
        return Err(Error::precondition(format!(
            "ternary ring fails {name}: {}",
            check.counterexample.as_ref().map(|c| c.note.as_str()).unwrap_or("")
        )));
    }
    let n = tr.order();
    let n2 = n * n;
    let vertex = n2 + n;
    let mut lines = Vec::with_capacity(n2 + n + 1);
    for m in 0..n {
        for k in 0..n {
            let mut line: Vec<usize> = (0..n).map(|x| x * n + tr.t(x, m, k)).collect();
            line.push(n2 + m);
            lines.push(line);
        }
    }
    for x in 0..n {
        let mut line: Vec<usize> = (0..n).map(|y| x * n + y).collect();
        line.push(vertex);
        lines.push(line);
    }
    let mut ideal: Vec<usize> = (0..n).map(|m| n2 + m).collect();
    ideal.push(vertex);
    lines.push(ideal);

    let mut points = Vec::with_capacity(n2 + n + 1);
    for x in 0..n {
        for y in 0..n {
            points.push(PointLabel::Affine(x, y));
        }
    }
    points.extend((0..n).map(PointLabel::Ideal));
    points.push(PointLabel::Vertex);
    let mut line_labels = Vec::with_capacity(n2 + n + 1);
    for m in 0..n {
        for k in 0..n {
            line_labels.push(LineLabel::Slope(m, k));
        }
    }
    line_labels.extend((0..n).map(LineLabel::Vertical));
    line_labels.push(LineLabel::IdealLine);

    Plane::from_lines(n2 + n + 1, lines)?.with_labels(points, line_labels)
}

/// The canonical quadrangle `([0], z, [0,0], [1,1])` of a plane built by
/// [`plane_from_ternary`].
pub fn canonical_quadrangle(p: &Plane) -> Option<Quadrangle> {
    Some(Quadrangle {
        u: p.point_with_label(PointLabel::Ideal(0))?,
        v: p.point_with_label(PointLabel::Vertex)?,
        o: p.point_with_label(PointLabel::Affine(0, 0))?,
        e: p.point_with_label(PointLabel::Affine(1, 1))?,
    })
}

/// Points and lines exchanged; coordinate labels follow the exchange so that
/// the dual of `P_T` carries the coordinates of `P_{T*}`.
pub fn dual_plane(p: &Plane) -> Plane {
    let lines: Vec<Vec<usize>> = (0..p.n_points()).map(|pt| p.lines_through(pt).to_vec()).collect();
    let d = Plane::from_lines(p.n_lines(), lines).expect("the dual of a projective plane is one");
    match (p.point_labels(), p.line_labels()) {
        (Some(pl), Some(ll)) => d
            .with_labels(
                ll.iter().map(|&l| dual_point_label(l)).collect(),
                pl.iter().map(|&q| dual_line_label(q)).collect(),
            )
            .expect("sizes match"),
        _ => d,
    }
}

/// All ordered quadrangles `(u, v, o, e)` in lexicographic order.
pub fn enumerate_quadrangles(p: &Plane) -> impl Iterator<Item = Quadrangle> + '_ {
    let np = p.n_points();
    (0..np).flat_map(move |u| {
        (0..np).filter(move |&v| v != u).flat_map(move |v| {
            let uv = p.join(u, v);
            (0..np).filter(move |&o| !p.is_on(o, uv)).flat_map(move |o| {
                let (uo, vo) = (p.join(u, o), p.join(v, o));
                (0..np)
                    .filter(move |&e| !p.is_on(e, uv) && !p.is_on(e, uo) && !p.is_on(e, vo))
                    .map(move |e| Quadrangle { u, v, o, e })
            })
        })
    })
}

/// A ternary ring read off from a quadrangle, with the coordinates it gives
/// every point and line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coordinatization {
    pub ring: TernaryRing,
    pub point_labels: Vec<PointLabel>,
    pub line_labels: Vec<LineLabel>,
}

/// Coordinatizes `p` from the quadrangle `q`.
///
/// The points of `oe` other than `z = oe ^ uv` are labelled `o -> 0`,
/// `e -> 1`, then the rest in increasing index order. An affine point `P`
/// gets `x = label(vP ^ oe)` and `y = label(uP ^ oe)`. An ideal point
/// `w != v` has the slope `y(ow ^ ve)`. Then `t(x, m, k)` is the `y` of the
/// vertical line at `x` meeting the line through the ideal point of slope `m`
/// and the point `(0, k)`.
pub fn ternary_from_quadrangle(p: &Plane, q: &Quadrangle) -> Result<Coordinatization> {
    if !p.is_quadrangle(q) {
        return Err(Error::precondition(format!(
            "points {} {} {} {} do not form a quadrangle",
            q.u, q.v, q.o, q.e
        )));
    }
    let Quadrangle { u, v, o, e } = *q;
    let n = p.order();
    let np = p.n_points();
    let oe = p.join(o, e);
    let uv = p.join(u, v);
    let z = p.meet(oe, uv);

    let mut label = vec![usize::MAX; np];
    let mut elem = Vec::with_capacity(n);
    elem.push(o);
    elem.push(e);
    for &pt in p.line(oe) {
        if pt != o && pt != e && pt != z {
            elem.push(pt);
        }
    }
    for (r, &pt) in elem.iter().enumerate() {
        label[pt] = r;
    }
    let x_of = |pt: usize| label[p.meet(p.join(v, pt), oe)];
    let y_of = |pt: usize| label[p.meet(p.join(u, pt), oe)];

    let verticals: Vec<usize> = elem.iter().map(|&pt| p.join(v, pt)).collect();
    let horizontals: Vec<usize> = elem.iter().map(|&pt| p.join(u, pt)).collect();
    let mut ylab = vec![usize::MAX; np];
    let mut xlab = vec![usize::MAX; np];
    let mut point_at = vec![0usize; n * n];
    for x in 0..n {
        for y in 0..n {
            let pt = p.meet(verticals[x], horizontals[y]);
            point_at[x * n + y] = pt;
            xlab[pt] = x;
            ylab[pt] = y;
        }
    }
    debug_assert!(elem.iter().enumerate().all(|(r, &pt)| x_of(pt) == r && y_of(pt) == r));

    let ve = verticals[1];
    let mut slope = vec![usize::MAX; np];
    let mut ideal_of_slope = vec![usize::MAX; n];
    for &w in p.line(uv) {
        if w == v {
            continue;
        }
        let m = ylab[p.meet(p.join(o, w), ve)];
        slope[w] = m;
        ideal_of_slope[m] = w;
    }
    if ideal_of_slope.contains(&usize::MAX) {
        return Err(Error::Internal("slopes are not a bijection".into()));
    }

    let mut t = vec![0usize; n * n * n];
    for m in 0..n {
        for k in 0..n {
            let line = p.join(ideal_of_slope[m], point_at[k]);
            for x in 0..n {
                t[(x * n + m) * n + k] = ylab[p.meet(verticals[x], line)];
            }
        }
    }
    let ring = TernaryRing::new(n, t)?;

    let point_labels = (0..np)
        .map(|pt| {
            if pt == v {
                PointLabel::Vertex
            } else if p.is_on(pt, uv) {
                PointLabel::Ideal(slope[pt])
            } else {
                PointLabel::Affine(xlab[pt], ylab[pt])
            }
        })
        .collect();
    let vertical0 = verticals[0];
    let line_labels = (0..p.n_lines())
        .map(|l| {
            if l == uv {
                LineLabel::IdealLine
            } else if p.is_on(v, l) {
                LineLabel::Vertical(xlab[p.meet(l, oe)])
            } else {
                LineLabel::Slope(slope[p.meet(l, uv)], ylab[p.meet(l, vertical0)])
            }
        })
        .collect();
    Ok(Coordinatization {
        ring,
        point_labels,
        line_labels,
    })
}

/// A point bijection `p1 -> p2` carrying lines to lines, if one exists.
pub fn plane_isomorphism(p1: &Plane, p2: &Plane) -> Option<Vec<usize>> {
    if p1.n_points() != p2.n_points() || p1.order() != p2.order() {
        return None;
    }
    let np = p1.n_points();
    let st = IsoState {
        pmap: vec![usize::MAX; np],
        pused: vec![false; np],
        lmap: vec![usize::MAX; np],
        lused: vec![false; np],
        points: Vec::new(),
        lines: Vec::new(),
    };
    iso_search(p1, p2, st)
}

#[derive(Clone)]
struct IsoState {
    pmap: Vec<usize>,
    pused: Vec<bool>,
    lmap: Vec<usize>,
    lused: Vec<bool>,
    points: Vec<usize>,
    lines: Vec<usize>,
}

fn set_point(st: &mut IsoState, a: usize, b: usize, queue: &mut Vec<(bool, usize)>) -> bool {
    if st.pmap[a] != usize::MAX {
        return st.pmap[a] == b;
    }
    if st.pused[b] {
        return false;
    }
    st.pmap[a] = b;
    st.pused[b] = true;
    st.points.push(a);
    queue.push((true, a));
    true
}

fn set_line(st: &mut IsoState, l: usize, m: usize, queue: &mut Vec<(bool, usize)>) -> bool {
    if st.lmap[l] != usize::MAX {
        return st.lmap[l] == m;
    }
    if st.lused[m] {
        return false;
    }
    st.lmap[l] = m;
    st.lused[m] = true;
    st.lines.push(l);
    queue.push((false, l));
    true
}

fn propagate(p1: &Plane, p2: &Plane, st: &mut IsoState, mut queue: Vec<(bool, usize)>) -> bool {
    while let Some((is_point, x)) = queue.pop() {
        if is_point {
            let fx = st.pmap[x];
            for i in 0..st.points.len() {
                let y = st.points[i];
                if y == x {
                    continue;
                }
                let fy = st.pmap[y];
                if !set_line(st, p1.join(x, y), p2.join(fx, fy), &mut queue) {
                    return false;
                }
            }
            for i in 0..st.lines.len() {
                let l = st.lines[i];
                if p1.is_on(x, l) != p2.is_on(fx, st.lmap[l]) {
                    return false;
                }
            }
        } else {
            let fx = st.lmap[x];
            for i in 0..st.lines.len() {
                let l = st.lines[i];
                if l == x {
                    continue;
                }
                let fl = st.lmap[l];
                if !set_point(st, p1.meet(x, l), p2.meet(fx, fl), &mut queue) {
                    return false;
                }
            }
            for i in 0..st.points.len() {
                let a = st.points[i];
                if p1.is_on(a, x) != p2.is_on(st.pmap[a], fx) {
                    return false;
                }
            }
        }
    }
    true
}

fn iso_search(p1: &Plane, p2: &Plane, st: IsoState) -> Option<Vec<usize>> {
    let np = p1.n_points();
    let Some(a) = (0..np).find(|&a| st.pmap[a] == usize::MAX) else {
        let ok = (0..p1.n_lines()).all(|l| {
            let img: BTreeSet<usize> = p1.line(l).iter().map(|&x| st.pmap[x]).collect();
            let target = p1.join(p1.line(l)[0], p1.line(l)[1]);
            debug_assert_eq!(target, l);
            img.iter().copied().eq(p2.line(st.lmap[l]).iter().copied())
        });
        return ok.then_some(st.pmap);
    };
    for b in 0..np {
        if st.pused[b] {
            continue;
        }
        let mut next = st.clone();
        let mut queue = Vec::new();
        if set_point(&mut next, a, b, &mut queue) && propagate(p1, p2, &mut next, queue) {
            if let Some(m) = iso_search(p1, p2, next) {
                return Some(m);
            }
        }
    }
    None
}

/// Whether `t(x, m, w) = y`, the coordinate test for `[m], [0,w], [x,y]`
/// being collinear.
pub fn coordinate_collinear(tr: &TernaryRing, m: usize, w: usize, x: usize, y: usize) -> bool {
    tr.t(x, m, w) == y
}

/// Whether `t(g, h, 0) = k`, the coordinate test for `<g>, <h,0>, <0,k>`
/// being concurrent.
pub fn coordinate_concurrent(tr: &TernaryRing, g: usize, h: usize, k: usize) -> bool {
    tr.t(g, h, 0) == k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ternary::dual;

    fn pg(p: usize, k: u32) -> Plane {
        plane_from_ternary(&TernaryRing::from_field(p, k).unwrap()).unwrap()
    }

    fn fano_lines() -> Vec<Vec<usize>> {
        vec![
            vec![0, 1, 3],
            vec![1, 2, 4],
            vec![2, 3, 5],
            vec![3, 4, 6],
            vec![4, 5, 0],
            vec![5, 6, 1],
            vec![6, 0, 2],
        ]
    }

    #[test]
    fn planes_of_fields() {
        let f = pg(2, 1);
        assert_eq!((f.n_points(), f.n_lines(), f.order()), (7, 7, 2));
        assert!(f.incidence().lines.iter().all(|l| l.len() == 3));
        let p3 = pg(3, 1);
        assert_eq!((p3.n_points(), p3.n_lines()), (13, 13));
        assert!(verify_plane_axioms(pg(2, 2).incidence()).all_pass());
    }

    #[test]
    fn fano_axioms() {
        let inc = Incidence::new(7, fano_lines()).unwrap();
        assert!(verify_plane_axioms(&inc).all_pass());
        let mut broken = fano_lines();
        broken[0].retain(|&p| p != 3);
        let inc = Incidence::new(7, broken).unwrap();
        let r = verify_plane_axioms(&inc);
        assert!(!r.points_on_one_line.pass);
        assert!(Plane::new(inc).is_err());
    }

    #[test]
    fn incidence_rejects_malformed() {
        assert!(Incidence::new(3, vec![vec![0, 3]]).is_err());
        assert!(Incidence::new(3, vec![vec![0, 0]]).is_err());
    }

    #[test]
    fn collinearity_criteria() {
        let p = pg(3, 1);
        let pt = |l| p.point_with_label(l).unwrap();
        let ln = |l| p.line_with_label(l).unwrap();
        assert!(p
            .collinear(&[pt(PointLabel::Ideal(2)), pt(PointLabel::Affine(0, 2)), pt(PointLabel::Affine(1, 1))])
            .unwrap());
        assert!(p
            .concurrent(&[ln(LineLabel::Vertical(2)), ln(LineLabel::Slope(2, 0)), ln(LineLabel::Slope(0, 1))])
            .unwrap());
        let m = p.meet(ln(LineLabel::Vertical(2)), ln(LineLabel::Slope(2, 0)));
        assert_eq!(p.point_labels().unwrap()[m], PointLabel::Affine(2, 1));
        assert!(p.collinear(&[0, 5]).unwrap());
        assert!(p.collinear(&[0, 99]).is_err());
    }

    #[test]
    fn coordinate_criteria_match_incidence() {
        for (q, k) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            let tr = TernaryRing::from_field(q, k).unwrap();
            let p = plane_from_ternary(&tr).unwrap();
            let n = tr.order();
            let pt = |l| p.point_with_label(l).unwrap();
            let ln = |l| p.line_with_label(l).unwrap();
            for m in 0..n {
                for w in 0..n {
                    for x in 1..n {
                        for y in 0..n {
                            let c = p
                                .collinear(&[pt(PointLabel::Ideal(m)), pt(PointLabel::Affine(0, w)), pt(PointLabel::Affine(x, y))])
                                .unwrap();
                            assert_eq!(c, coordinate_collinear(&tr, m, w, x, y));
                        }
                    }
                }
            }
            for g in 1..n {
                for h in 1..n {
                    for kk in 0..n {
                        let c = p
                            .concurrent(&[ln(LineLabel::Vertical(g)), ln(LineLabel::Slope(h, 0)), ln(LineLabel::Slope(0, kk))])
                            .unwrap();
                        assert_eq!(c, coordinate_concurrent(&tr, g, h, kk));
                    }
                }
            }
        }
    }

    #[test]
    fn duals() {
        let f = pg(2, 1);
        assert!(plane_isomorphism(&f, &dual_plane(&f)).is_some());
        let p3 = pg(3, 1);
        assert!(plane_isomorphism(&p3, &dual_plane(&dual_plane(&p3))).is_some());
        for (q, k) in [(2, 1), (3, 1), (2, 2)] {
            let t = TernaryRing::from_field(q, k).unwrap();
            let d = dual_plane(&plane_from_ternary(&t).unwrap());
            let td = dual(&t).unwrap();
            // the dual ring fails only the unit axiom in odd characteristic,
            // so build its plane directly from the same coordinates
            let n = td.order();
            for (l, label) in d.line_labels().unwrap().iter().enumerate() {
                if let LineLabel::Slope(m, kk) = *label {
                    for x in 0..n {
                        let pt = d.point_with_label(PointLabel::Affine(x, td.t(x, m, kk))).unwrap();
                        assert!(d.is_on(pt, l));
                    }
                }
            }
        }
    }

    #[test]
    fn non_isomorphic_orders() {
        assert!(plane_isomorphism(&pg(2, 1), &pg(3, 1)).is_none());
    }

    #[test]
    fn quadrangle_counts() {
        let f = pg(2, 1);
        let qs: Vec<Quadrangle> = enumerate_quadrangles(&f).collect();
        assert_eq!(qs.len(), 168);
        assert!(qs.iter().all(|q| f.is_quadrangle(q)));
        assert!(qs.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(enumerate_quadrangles(&pg(3, 1)).count(), 13 * 12 * 9 * 4);
    }

    #[test]
    fn canonical_round_trip() {
        for (q, k) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            let t = TernaryRing::from_field(q, k).unwrap();
            let p = plane_from_ternary(&t).unwrap();
            let c = ternary_from_quadrangle(&p, &canonical_quadrangle(&p).unwrap()).unwrap();
            assert_eq!(c.ring, t);
            assert_eq!(c.point_labels, p.point_labels().unwrap());
            assert_eq!(c.line_labels, p.line_labels().unwrap());
        }
    }

    #[test]
    fn anchor_coordinates() {
        let p = pg(3, 1);
        let qs: Vec<Quadrangle> = enumerate_quadrangles(&p).step_by(97).collect();
        for q in qs {
            let c = ternary_from_quadrangle(&p, &q).unwrap();
            let i = p.meet(p.join(q.v, q.e), p.join(q.o, q.u));
            assert_eq!(c.point_labels[q.u], PointLabel::Ideal(0));
            assert_eq!(c.point_labels[q.v], PointLabel::Vertex);
            assert_eq!(c.point_labels[q.o], PointLabel::Affine(0, 0));
            assert_eq!(c.point_labels[q.e], PointLabel::Affine(1, 1));
            assert_eq!(c.point_labels[i], PointLabel::Affine(1, 0));
            let relabelled = plane_from_ternary(&c.ring).unwrap();
            assert!(plane_isomorphism(&relabelled, &p).is_some());
        }
    }

    #[test]
    fn fano_has_a_unique_ternary_ring() {
        let f = pg(2, 1);
        let target = TernaryRing::from_field(2, 1).unwrap();
        for q in enumerate_quadrangles(&f) {
            assert_eq!(ternary_from_quadrangle(&f, &q).unwrap().ring, target);
        }
    }

    #[test]
    fn degenerate_quadrangle_is_rejected() {
        let f = pg(2, 1);
        let l = f.line(0);
        let q = Quadrangle { u: l[0], v: l[1], o: l[2], e: 6 };
        assert!(ternary_from_quadrangle(&f, &q).is_err());
    }
}
