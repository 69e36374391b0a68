//! Embedding the frame and lift matroids of quasigroup expansions in finite
//! projective planes: explicit constructions over a ternary ring, decision
//! procedures that sweep every quadrangle, and coordinatization of embedded
//! nets.
//!
//! Coordinates below are those of the plane of a ternary ring. For a loop
//! image `S` the constructions are
//!
//! * frame, as lines: `g e12 -> <g>`, `h e23 -> <h,0>`, `k e13 -> <0,k>`, with
//!   half edges `d1 -> Z`, `d2 -> <0>`, `d3 -> <0,0>`. Concurrency is
//!   `t(g, h, 0) = k`.
//! * frame, as points: `g -> [g]`, `h -> [h,0]`, `k -> [0,k]`, with
//!   `d1 -> z`, `d2 -> [0]`, `d3 -> [0,0]`. Collinearity is `t(h, g, k) = 0`,
//!   the opposite of the diamond operation.
//! * lift, as points: `g -> [g]`, `h -> [0,h]`, `k -> [1,k]`, `e0 -> z`.
//!   Collinearity is `t(1, g, h) = k`.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::algebra::{first_loop_monomorphism_into, loop_isotope_at, principal_loop_isotope, Isotopism, Loop, Quasigroup};
use crate::biased::{expansion_from_quasigroup, EdgeId, Node, Pair};
use crate::error::{Error, Result};
use crate::matroid::{frame_matroid, is_representation, lift_matroid, Element, Matroid3};
use crate::plane::{
    dual_plane, enumerate_quadrangles, plane_from_ternary, ternary_from_quadrangle, Coordinatization, LineLabel, Plane,
    PointLabel, Quadrangle,
};
use crate::ternary::{additive_loop, diamond, multiplicative_quasigroup, TernaryRing};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessMode {
    /// Full frame matroid as lines of the plane.
    FrameLines,
    /// Full frame matroid as points, through the dual coordinatization.
    FramePointsDual,
    /// Extended lift matroid as points.
    LiftPoints,
    /// Extended lift matroid as points of the dual plane, i.e. lines.
    LiftLinesDual,
}

impl WitnessMode {
    fn is_frame(self) -> bool {
        matches!(self, WitnessMode::FrameLines | WitnessMode::FramePointsDual)
    }

    fn images_are_lines(self) -> bool {
        matches!(self, WitnessMode::FrameLines | WitnessMode::LiftLinesDual)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Target {
    Additive,
    Multiplicative,
    DiamondOpposite,
}

impl Target {
    fn of(mode: WitnessMode) -> Target {
        match mode {
            WitnessMode::FrameLines => Target::Multiplicative,
            WitnessMode::FramePointsDual => Target::DiamondOpposite,
            WitnessMode::LiftPoints | WitnessMode::LiftLinesDual => Target::Additive,
        }
    }

    /// The target quasigroup and the ring element of its index 0.
    fn build(self, tr: &TernaryRing) -> Result<(Quasigroup, usize)> {
        Ok(match self {
            Target::Additive => (additive_loop(tr)?.into_quasigroup(), 0),
            Target::Multiplicative => (multiplicative_quasigroup(tr)?, 1),
            Target::DiamondOpposite => (diamond(tr)?.opposite(), 1),
        })
    }

    fn order(self, n: usize) -> usize {
        match self {
            Target::Additive => n,
            _ => n - 1,
        }
    }
}

/// A verified embedding of `G~(QK3)` or `L0(QK3)` found from one quadrangle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingWitness {
    pub mode: WitnessMode,
    /// Position of the quadrangle in the lexicographic sweep.
    pub quadrangle_index: usize,
    /// In the input plane, or in its dual for `LiftLinesDual`.
    pub quadrangle: Quadrangle,
    #[serde(skip)]
    pub ring: TernaryRing,
    /// From the input quasigroup to the loop `Q0` that is embedded.
    pub isotopism: Isotopism,
    pub loop_identity: usize,
    /// `Q0` element to ring element.
    pub monomorphism: Vec<usize>,
    pub elements: Vec<Element>,
    /// Point indices of the input plane, or line indices for line modes.
    pub images: Vec<usize>,
    /// Coordinates of each image in the ring.
    pub image_labels: Vec<String>,
    pub verified: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Label {
    Point(PointLabel),
    Line(LineLabel),
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Label::Point(p) => write!(f, "{p}"),
            Label::Line(l) => write!(f, "{l}"),
        }
    }
}

/// Coordinates for every element given the ring element of each edge.
fn labels_for(mode: WitnessMode, elements: &[Element], ring_of: &dyn Fn(EdgeId) -> usize) -> Vec<Label> {
    use LineLabel as L;
    use PointLabel as P;
    elements
        .iter()
        .map(|&el| match (mode, el) {
            (_, Element::Extra) => Label::Point(P::Vertex),
            (WitnessMode::FrameLines, Element::Edge(e)) => Label::Line(match e {
                EdgeId::Link(Pair::P12, _) => L::Vertical(ring_of(e)),
                EdgeId::Link(Pair::P23, _) => L::Slope(ring_of(e), 0),
                EdgeId::Link(Pair::P13, _) => L::Slope(0, ring_of(e)),
                EdgeId::Half(Node::V1) => L::IdealLine,
                EdgeId::Half(Node::V2) => L::Vertical(0),
                EdgeId::Half(Node::V3) => L::Slope(0, 0),
            }),
            (WitnessMode::FramePointsDual, Element::Edge(e)) => Label::Point(match e {
                EdgeId::Link(Pair::P12, _) => P::Ideal(ring_of(e)),
                EdgeId::Link(Pair::P23, _) => P::Affine(ring_of(e), 0),
                EdgeId::Link(Pair::P13, _) => P::Affine(0, ring_of(e)),
                EdgeId::Half(Node::V1) => P::Vertex,
                EdgeId::Half(Node::V2) => P::Ideal(0),
                EdgeId::Half(Node::V3) => P::Affine(0, 0),
            }),
            (_, Element::Edge(e)) => Label::Point(match e {
                EdgeId::Link(Pair::P12, _) => P::Ideal(ring_of(e)),
                EdgeId::Link(Pair::P23, _) => P::Affine(0, ring_of(e)),
                EdgeId::Link(Pair::P13, _) => P::Affine(1, ring_of(e)),
                EdgeId::Half(_) => unreachable!("lift matroids of expansions have no half edges"),
            }),
            (_, Element::Point(_)) => unreachable!("matroids of expansions have edge elements"),
        })
        .collect()
}

fn resolve(labels: &[Label], point_of: &dyn Fn(PointLabel) -> Option<usize>, line_of: &dyn Fn(LineLabel) -> Option<usize>) -> Result<Vec<usize>> {
    labels
        .iter()
        .map(|&l| {
            match l {
                Label::Point(p) => point_of(p),
                Label::Line(m) => line_of(m),
            }
            .ok_or_else(|| Error::Internal(format!("no element with coordinates {l}")))
        })
        .collect()
}

fn mode_matroid(mode: WitnessMode, q: &Quasigroup) -> Result<Matroid3> {
    let omega = expansion_from_quasigroup(q);
    if mode.is_frame() {
        frame_matroid(&omega, true)
    } else {
        lift_matroid(&omega, true)
    }
}

/// An explicit embedding of the expansion of a subloop `S` of a ring's loop.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubsetEmbedding {
    /// Ring element of each index of the subloop.
    pub ring_elements: Vec<usize>,
    pub elements: Vec<Element>,
    /// Point or line indices of the plane of the ring.
    pub images: Vec<usize>,
    pub image_labels: Vec<String>,
    /// The image passes `is_representation` for the mode's matroid.
    pub verified: bool,
}

fn embed_subset(tr: &TernaryRing, s: &BTreeSet<usize>, mode: WitnessMode) -> Result<SubsetEmbedding> {
    let (target, offset) = Target::of(mode).build(tr)?;
    if s.is_empty() {
        return Err(Error::precondition("subset is empty"));
    }
    if s.iter().any(|&x| x < offset || x - offset >= target.order()) {
        return Err(Error::precondition("subset leaves the target loop"));
    }
    let idx: BTreeSet<usize> = s.iter().map(|&x| x - offset).collect();
    let (sub, labels) = target.restrict(&idx)?;
    let ring_elements: Vec<usize> = labels.iter().map(|&i| i + offset).collect();
    let m = mode_matroid(mode, &sub)?;
    let ring_of = |e: EdgeId| match e {
        EdgeId::Link(_, i) => ring_elements[i],
        EdgeId::Half(_) => 0,
    };
    let labs = labels_for(mode, m.elements(), &ring_of);
    let plane = plane_from_ternary(tr)?;
    let images = resolve(&labs, &|p| plane.point_with_label(p), &|l| plane.line_with_label(l))?;
    let verified = if mode.images_are_lines() {
        is_representation(&m, &dual_plane(&plane), &images)?
    } else {
        is_representation(&m, &plane, &images)?
    };
    Ok(SubsetEmbedding {
        ring_elements,
        elements: m.elements().to_vec(),
        images,
        image_labels: labs.iter().map(|l| l.to_string()).collect(),
        verified,
    })
}

/// `G~(S K3)` as lines of the plane of `tr`, for `S` a subloop of the
/// nonzero elements under `t(a, b, 0)`. Centers are `z`, `[0,0]` and `[0]`.
pub fn embed_frame_lines(tr: &TernaryRing, s: &BTreeSet<usize>) -> Result<SubsetEmbedding> {
    embed_subset(tr, s, WitnessMode::FrameLines)
}

/// `L0(S K3)` as points of the plane of `tr`, for `S` closed under
/// `t(1, a, b)`. The main lines `Z`, `<0>`, `<1>` meet at `z`, the image of
/// `e0`.
pub fn embed_lift_points(tr: &TernaryRing, s: &BTreeSet<usize>) -> Result<SubsetEmbedding> {
    embed_subset(tr, s, WitnessMode::LiftPoints)
}

/// `G~(S K3)` as points, for `S` a subloop of the opposite diamond
/// quasigroup on nonzero elements.
pub fn embed_frame_points(tr: &TernaryRing, s: &BTreeSet<usize>) -> Result<SubsetEmbedding> {
    embed_subset(tr, s, WitnessMode::FramePointsDual)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepOptions {
    /// Worker threads; 1 runs on the calling thread.
    pub jobs: usize,
    /// Collect one witness per successful quadrangle instead of the first.
    pub all: bool,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions { jobs: 1, all: false }
    }
}

struct Sweep<'a> {
    plane: &'a Plane,
    verify_plane: Plane,
    mode: WitnessMode,
    target: Target,
    q0: Loop,
    iso: Isotopism,
    matroid: Matroid3,
}

impl Sweep<'_> {
    fn at(&self, index: usize, quad: &Quadrangle) -> Result<Option<EmbeddingWitness>> {
        let c = ternary_from_quadrangle(self.plane, quad)?;
        let (target, offset) = self.target.build(&c.ring)?;
        let Some(phi) = first_loop_monomorphism_into(&self.q0, &target) else {
            return Ok(None);
        };
        let monomorphism: Vec<usize> = phi.iter().map(|&x| x + offset).collect();
        let w = self.witness(index, quad, c, monomorphism)?;
        Ok(Some(w))
    }

    fn witness(&self, index: usize, quad: &Quadrangle, c: Coordinatization, monomorphism: Vec<usize>) -> Result<EmbeddingWitness> {
        let iso = &self.iso;
        let ring_of = |e: EdgeId| match e {
            EdgeId::Link(Pair::P12, g) => monomorphism[iso.alpha[g]],
            EdgeId::Link(Pair::P23, h) => monomorphism[iso.beta[h]],
            EdgeId::Link(Pair::P13, k) => monomorphism[iso.gamma[k]],
            EdgeId::Half(_) => 0,
        };
        let labs = labels_for(self.mode, self.matroid.elements(), &ring_of);
        let points: HashMap<PointLabel, usize> = c.point_labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let lines: HashMap<LineLabel, usize> = c.line_labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let images = resolve(&labs, &|p| points.get(&p).copied(), &|l| lines.get(&l).copied())?;
        let verified = is_representation(&self.matroid, &self.verify_plane, &images)?;
        if !verified {
            return Err(Error::Internal(format!(
                "{:?} construction from quadrangle {index} is not a representation",
                self.mode
            )));
        }
        Ok(EmbeddingWitness {
            mode: self.mode,
            quadrangle_index: index,
            quadrangle: *quad,
            ring: c.ring,
            isotopism: self.iso.clone(),
            loop_identity: self.q0.identity(),
            monomorphism,
            elements: self.matroid.elements().to_vec(),
            images,
            image_labels: labs.iter().map(|l| l.to_string()).collect(),
            verified,
        })
    }

    fn run(&self, opts: &SweepOptions) -> Result<Vec<EmbeddingWitness>> {
        if self.q0.order() > self.target.order(self.plane.order()) {
            return Ok(Vec::new());
        }
        if opts.jobs <= 1 {
            let mut out = Vec::new();
            for (i, quad) in enumerate_quadrangles(self.plane).enumerate() {
                if let Some(w) = self.at(i, &quad)? {
                    out.push(w);
                    if !opts.all {
                        break;
                    }
                }
            }
            return Ok(out);
        }
        use rayon::prelude::*;
        let quads: Vec<Quadrangle> = enumerate_quadrangles(self.plane).collect();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
        pool.install(|| {
            if opts.all {
                let found: Vec<Option<EmbeddingWitness>> = quads
                    .par_iter()
                    .enumerate()
                    .map(|(i, q)| self.at(i, q))
                    .collect::<Result<_>>()?;
                Ok(found.into_iter().flatten().collect())
            } else {
                let first = quads.par_iter().enumerate().find_map_first(|(i, q)| self.at(i, q).transpose());
                first.transpose().map(|w| w.into_iter().collect())
            }
        })
    }
}

fn sweep(q: &Quasigroup, plane: &Plane, mode: WitnessMode, opts: &SweepOptions) -> Result<Vec<EmbeddingWitness>> {
    let (q0, iso) = principal_loop_isotope(q, 0)?;
    let verify_plane = if mode == WitnessMode::FrameLines {
        dual_plane(plane)
    } else {
        plane.clone()
    };
    let s = Sweep {
        plane,
        verify_plane,
        mode,
        target: Target::of(mode),
        q0,
        iso,
        matroid: mode_matroid(mode, q)?,
    };
    s.run(opts)
}

/// `G~(QK3)` embeds as lines of `p` exactly when the principal loop isotope
/// of `Q` embeds in the multiplicative loop of some coordinatizing ring.
pub fn decide_frame(q: &Quasigroup, p: &Plane) -> Result<Option<EmbeddingWitness>> {
    Ok(decide_frame_with(q, p, &SweepOptions::default())?.into_iter().next())
}

pub fn decide_frame_with(q: &Quasigroup, p: &Plane, opts: &SweepOptions) -> Result<Vec<EmbeddingWitness>> {
    sweep(q, p, WitnessMode::FrameLines, opts)
}

/// `G~(QK3)` as points of `p`, with target loop the opposite of the diamond
/// operation of each coordinatizing ring.
pub fn decide_frame_points(q: &Quasigroup, p: &Plane) -> Result<Option<EmbeddingWitness>> {
    Ok(decide_frame_points_with(q, p, &SweepOptions::default())?.into_iter().next())
}

pub fn decide_frame_points_with(q: &Quasigroup, p: &Plane, opts: &SweepOptions) -> Result<Vec<EmbeddingWitness>> {
    sweep(q, p, WitnessMode::FramePointsDual, opts)
}

/// `L0(QK3)` as points of `p`, with target the additive loop.
pub fn decide_lift(q: &Quasigroup, p: &Plane) -> Result<Option<EmbeddingWitness>> {
    Ok(decide_lift_with(q, p, &SweepOptions::default())?.into_iter().next())
}

pub fn decide_lift_with(q: &Quasigroup, p: &Plane, opts: &SweepOptions) -> Result<Vec<EmbeddingWitness>> {
    sweep(q, p, WitnessMode::LiftPoints, opts)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlanarReport {
    /// `Q` is trivial, so `G(QK3)` is a three-point line.
    pub trivial: bool,
    /// `G(QK3)` embeds as points of the plane.
    pub points_in_plane: bool,
    /// `G(QK3)` embeds as points of the dual plane, i.e. as lines.
    pub points_in_dual: bool,
    pub lift_points: Vec<EmbeddingWitness>,
    pub frame_points: Vec<EmbeddingWitness>,
    pub frame_lines: Vec<EmbeddingWitness>,
    pub lift_lines: Vec<EmbeddingWitness>,
}

/// Runs the lift and frame decisions for points of `p` and of its dual.
pub fn decide_planar(q: &Quasigroup, p: &Plane, opts: &SweepOptions) -> Result<PlanarReport> {
    let lift_points = decide_lift_with(q, p, opts)?;
    let frame_points = decide_frame_points_with(q, p, opts)?;
    let frame_lines = decide_frame_with(q, p, opts)?;
    let dual = dual_plane(p);
    let lift_lines: Vec<EmbeddingWitness> = sweep(q, &dual, WitnessMode::LiftLinesDual, opts)?;
    let trivial = q.order() == 1;
    Ok(PlanarReport {
        trivial,
        points_in_plane: trivial || !lift_points.is_empty() || !frame_points.is_empty(),
        points_in_dual: trivial || !frame_lines.is_empty() || !lift_lines.is_empty(),
        lift_points,
        frame_points,
        frame_lines,
        lift_lines,
    })
}

/// Three pencils of lines of a plane, line `i` of pencil `j` through center
/// `centers[j]`, forming a 3-net on the points where they cross.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddedNet {
    pub centers: [usize; 3],
    pub pencils: [Vec<usize>; 3],
}

impl EmbeddedNet {
    /// The quasigroup `g * h = k` where lines 12(g), 23(h), 13(k) are
    /// concurrent, after checking the net axioms.
    pub fn quasigroup(&self, p: &Plane) -> Result<Quasigroup> {
        let n = self.pencils[0].len();
        if n == 0 || self.pencils.iter().any(|l| l.len() != n) {
            return Err(Error::precondition("pencils must be nonempty and of equal size"));
        }
        for (j, pencil) in self.pencils.iter().enumerate() {
            let c = self.centers[j];
            if c >= p.n_points() || pencil.iter().any(|&l| l >= p.n_lines() || !p.is_on(c, l)) {
                return Err(Error::precondition(format!("pencil {j} does not pass through its center")));
            }
            if pencil.iter().collect::<BTreeSet<_>>().len() != n {
                return Err(Error::precondition(format!("pencil {j} repeats a line")));
            }
        }
        let mut rows = vec![vec![0; n]; n];
        for (g, row) in rows.iter_mut().enumerate() {
            for (h, cell) in row.iter_mut().enumerate() {
                let pt = p.meet(self.pencils[0][g], self.pencils[1][h]);
                let through: Vec<usize> = (0..n).filter(|&k| p.is_on(pt, self.pencils[2][k])).collect();
                match through[..] {
                    [k] => *cell = k,
                    _ => {
                        return Err(Error::precondition(format!(
                            "point of lines 12({g}) and 23({h}) is on {} lines of pencil 13",
                            through.len()
                        )))
                    }
                }
            }
        }
        Quasigroup::from_rows(rows)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AffineCoordinatization {
    pub quadrangle: Quadrangle,
    #[serde(skip)]
    pub ring: TernaryRing,
    /// Ring elements used by the net.
    pub subset: Vec<usize>,
    /// `a +* b = t*(1, a, b)`, i.e. the `d` with `t(a, 1, d) = b`, on `subset`.
    pub subquasigroup: Quasigroup,
    /// From the net's quasigroup to `subquasigroup`: line 12(g) is the vertical
    /// at `subset[alpha g]`, 23(h) the slope-0 line at height
    /// `subset[beta h]`, 13(k) the slope-1 line with intercept
    /// `subset[gamma k]`.
    pub isotopism: Isotopism,
}

/// Coordinatizes an affine 3-net (centers on one line) so that its quasigroup
/// becomes a subquasigroup of the additive operation of the dual ring.
///
/// The center of pencil 12 is `v`, that of 23 is `u`, `o` is the crossing of
/// lines 12(0) and 23(0), and `e` is another point of the 13 line through `o`
/// (a net point when there is one), so the 13 center is `oe ^ uv`.
pub fn coordinatize_affine_net(p: &Plane, net: &EmbeddedNet) -> Result<AffineCoordinatization> {
    let q = net.quasigroup(p)?;
    let [c12, c23, c13] = net.centers;
    if c12 == c23 || c12 == c13 || c23 == c13 || !p.collinear(&[c12, c23, c13])? {
        return Err(Error::precondition("centers are not three distinct collinear points"));
    }
    let (v, u) = (c12, c23);
    let o = p.meet(net.pencils[0][0], net.pencils[1][0]);
    let k0 = q.op(0, 0);
    let oe = net.pencils[2][k0];
    let uv = p.join(u, v);
    let (uo, vo) = (p.join(u, o), p.join(v, o));
    let usable = |e: usize| e != o && !p.is_on(e, uv) && !p.is_on(e, uo) && !p.is_on(e, vo);
    let net_point = (1..q.order())
        .map(|g| p.meet(net.pencils[0][g], oe))
        .find(|&e| usable(e));
    let e = net_point
        .or_else(|| p.line(oe).iter().copied().find(|&e| usable(e)))
        .ok_or_else(|| Error::Internal("no unit point on the 13 line through o".into()))?;
    let quad = Quadrangle { u, v, o, e };
    let c = ternary_from_quadrangle(p, &quad)?;
    let n = q.order();
    let coord = |pencil: usize, i: usize| -> Result<usize> {
        let l = net.pencils[pencil][i];
        match (pencil, c.line_labels[l]) {
            (0, LineLabel::Vertical(x)) => Ok(x),
            (1, LineLabel::Slope(0, y)) => Ok(y),
            (2, LineLabel::Slope(1, b)) => Ok(b),
            (_, other) => Err(Error::Internal(format!("net line {l} has unexpected coordinates {other}"))),
        }
    };
    let mut sets = [Vec::new(), Vec::new(), Vec::new()];
    for (j, set) in sets.iter_mut().enumerate() {
        *set = (0..n).map(|i| coord(j, i)).collect::<Result<Vec<_>>>()?;
    }
    let subset: BTreeSet<usize> = sets[0].iter().copied().collect();
    if sets.iter().any(|s| s.iter().copied().collect::<BTreeSet<_>>() != subset) {
        return Err(Error::Internal("pencils use different coordinate sets".into()));
    }
    let tr = &c.ring;
    let dual_add = Quasigroup::from_fn(tr.order(), |a, b| {
        (0..tr.order()).find(|&d| tr.t(a, 1, d) == b).expect("T2 gives a unique solution")
    })?;
    let (sub, labels) = dual_add.restrict(&subset)?;
    let pos = |x: usize| labels.binary_search(&x).expect("coordinate in subset");
    let isotopism = Isotopism {
        alpha: sets[0].iter().map(|&x| pos(x)).collect(),
        beta: sets[1].iter().map(|&x| pos(x)).collect(),
        gamma: sets[2].iter().map(|&x| pos(x)).collect(),
    };
    if !isotopism.is_valid_between(&q, &sub) {
        return Err(Error::Internal("coordinates do not carry the net quasigroup".into()));
    }
    Ok(AffineCoordinatization {
        quadrangle: quad,
        ring: c.ring.clone(),
        subset: labels,
        subquasigroup: sub,
        isotopism,
    })
}

/// Three point rows of a plane, one on each of three main lines, whose cross
/// lines (lines meeting every row in a point) form the balanced triangles:
/// point `g` of row 12, `h` of row 23 and `k` of row 13 are collinear exactly
/// when `g * h = k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddedDualNet {
    pub rows: [Vec<usize>; 3],
}

impl EmbeddedDualNet {
    pub fn from_witness(w: &EmbeddingWitness) -> EmbeddedDualNet {
        let mut rows = [Vec::new(), Vec::new(), Vec::new()];
        for (el, &img) in w.elements.iter().zip(&w.images) {
            if let Element::Edge(EdgeId::Link(pair, _)) = el {
                rows[pair.index()].push(img);
            }
        }
        EmbeddedDualNet { rows }
    }

    pub fn quasigroup(&self, p: &Plane) -> Result<Quasigroup> {
        let n = self.rows[0].len();
        if n == 0 || self.rows.iter().any(|r| r.len() != n) {
            return Err(Error::precondition("rows must be nonempty and of equal size"));
        }
        let mut rows = vec![vec![0; n]; n];
        for (g, row) in rows.iter_mut().enumerate() {
            for (h, cell) in row.iter_mut().enumerate() {
                let l = p.join(self.rows[0][g], self.rows[1][h]);
                let on: Vec<usize> = (0..n).filter(|&k| p.is_on(self.rows[2][k], l)).collect();
                match on[..] {
                    [k] => *cell = k,
                    _ => return Err(Error::precondition(format!("points 12({g}) and 23({h}) have no single third net point"))),
                }
            }
        }
        Quasigroup::from_rows(rows)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum CrossClosure {
    /// The edges kept in each fiber, and the subloop they carry in the
    /// principal loop isotope at `(a, b)`.
    Subloop {
        edges: [Vec<usize>; 3],
        a: usize,
        b: usize,
        isotopism: Isotopism,
        /// Elements of the loop isotope forming the subloop.
        subloop: Vec<usize>,
        loop_identity: usize,
    },
    /// Two points of `A` whose cross line leaves `A` at `missing`.
    NotClosed { through: (usize, usize), missing: usize },
    /// `A` is empty, outside the net, or inside one row.
    Degenerate { reason: String },
}

/// Decides whether `a` is cross-closed in an embedded dual net and, if it
/// spans, returns its sub-expansion and subloop.
pub fn cross_closed_subloop(p: &Plane, net: &EmbeddedDualNet, a: &BTreeSet<usize>) -> Result<CrossClosure> {
    let q = net.quasigroup(p)?;
    let n = q.order();
    let mut sel = [BTreeSet::new(), BTreeSet::new(), BTreeSet::new()];
    for &pt in a {
        let mut found = false;
        for (j, row) in net.rows.iter().enumerate() {
            if let Some(i) = row.iter().position(|&x| x == pt) {
                sel[j].insert(i);
                found = true;
            }
        }
        if !found {
            return Ok(CrossClosure::Degenerate {
                reason: format!("point {pt} is not a net point"),
            });
        }
    }
    let rows_hit = sel.iter().filter(|s| !s.is_empty()).count();
    if rows_hit <= 1 {
        return Ok(CrossClosure::Degenerate {
            reason: if a.is_empty() { "set is empty".into() } else { "set lies in one main line".into() },
        });
    }
    let point = |j: usize, i: usize| net.rows[j][i];
    for &g in &sel[0] {
        for &h in &sel[1] {
            let k = q.op(g, h);
            if !sel[2].contains(&k) {
                return Ok(CrossClosure::NotClosed { through: (point(0, g), point(1, h)), missing: point(2, k) });
            }
        }
        for &k in &sel[2] {
            let h = q.left_div(g, k);
            if !sel[1].contains(&h) {
                return Ok(CrossClosure::NotClosed { through: (point(0, g), point(2, k)), missing: point(1, h) });
            }
        }
    }
    for &h in &sel[1] {
        for &k in &sel[2] {
            let g = q.right_div(k, h);
            if !sel[0].contains(&g) {
                return Ok(CrossClosure::NotClosed { through: (point(1, h), point(2, k)), missing: point(0, g) });
            }
        }
    }
    debug_assert!(n > 0);
    let edges = sel.map(|s| s.into_iter().collect::<Vec<_>>());
    let (ga, hb) = (edges[0][0], edges[1][0]);
    let (lp, iso) = loop_isotope_at(&q, ga, hb);
    let subloop: BTreeSet<usize> = edges[0].iter().map(|&x| iso.alpha[x]).collect();
    if !lp.quasigroup().is_subquasigroup(&subloop) || !subloop.contains(&lp.identity()) {
        return Err(Error::Internal("closed set does not carry a subloop".into()));
    }
    Ok(CrossClosure::Subloop {
        edges,
        a: ga,
        b: hb,
        isotopism: iso,
        subloop: subloop.into_iter().collect(),
        loop_identity: lp.identity(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::is_isotopic;
    use crate::plane::canonical_quadrangle;

    fn field(p: usize, k: u32) -> TernaryRing {
        TernaryRing::from_field(p, k).unwrap()
    }

    fn pg(p: usize, k: u32) -> Plane {
        plane_from_ternary(&field(p, k)).unwrap()
    }

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    #[test]
    fn frame_lines_constructions() {
        let e = embed_frame_lines(&field(7, 1), &set(&[1, 2, 4])).unwrap();
        assert!(e.verified);
        assert_eq!(e.images.len(), 12);
        let e = embed_frame_lines(&field(3, 1), &set(&[1, 2])).unwrap();
        assert!(e.verified);
        assert_eq!(e.images.len(), 9);
        let e = embed_frame_lines(&field(5, 1), &set(&[1])).unwrap();
        assert!(e.verified);
        assert_eq!(e.images.len(), 6);
        assert!(embed_frame_lines(&field(7, 1), &set(&[1, 2])).is_err());
        assert!(embed_frame_lines(&field(7, 1), &set(&[0, 1])).is_err());
    }

    #[test]
    fn lift_points_constructions() {
        let e = embed_lift_points(&field(2, 1), &set(&[0, 1])).unwrap();
        assert!(e.verified);
        assert_eq!(set(&e.images), (0..7).collect());
        let e = embed_lift_points(&field(3, 1), &set(&[0, 1, 2])).unwrap();
        assert!(e.verified);
        assert_eq!(e.images.len(), 10);
        let e = embed_lift_points(&field(3, 1), &set(&[0])).unwrap();
        assert!(e.verified);
        assert_eq!(e.images.len(), 4);
        assert!(embed_lift_points(&field(5, 1), &set(&[0, 1])).is_err());
    }

    #[test]
    fn frame_points_constructions() {
        // -xy on GF(3) nonzero: identity is 2
        let e = embed_frame_points(&field(3, 1), &set(&[1, 2])).unwrap();
        assert!(e.verified);
        let e = embed_frame_points(&field(5, 1), &set(&[4])).unwrap();
        assert!(e.verified);
    }

    #[test]
    fn decisions_on_small_planes() {
        let z = Quasigroup::cyclic;
        assert!(decide_frame(&z(3), &pg(7, 1)).unwrap().is_some());
        assert!(decide_frame(&z(3), &pg(5, 1)).unwrap().is_none());
        assert!(decide_frame(&Quasigroup::trivial(), &pg(2, 1)).unwrap().is_some());
        assert!(decide_frame_points(&z(2), &pg(3, 1)).unwrap().is_some());
        assert!(decide_frame_points(&z(3), &pg(2, 2)).unwrap().is_some());
        assert!(decide_frame_points(&z(2), &pg(2, 1)).unwrap().is_none());
        assert!(decide_lift(&z(2), &pg(2, 1)).unwrap().is_some());
        assert!(decide_lift(&Quasigroup::klein_four(), &pg(2, 2)).unwrap().is_some());
        assert!(decide_lift(&z(4), &pg(2, 2)).unwrap().is_none());
    }

    #[test]
    fn witnesses_use_the_first_quadrangle_and_verify() {
        let w = decide_lift(&Quasigroup::cyclic(2), &pg(2, 1)).unwrap().unwrap();
        assert_eq!(w.quadrangle_index, 0);
        assert!(w.verified);
        assert_eq!(set(&w.images), (0..7).collect());
    }

    #[test]
    fn non_loop_quasigroups_go_through_the_isotope() {
        // x o y = x + y + 1 on Z3 is a loop with identity 2; x o y = 2x + 2y is not a loop
        let q = Quasigroup::from_fn(3, |x, y| (2 * x + 2 * y) % 3).unwrap();
        assert!(q.identity().is_none());
        let w = decide_lift(&q, &pg(3, 1)).unwrap().unwrap();
        assert!(w.verified);
        let w = decide_frame(&q, &pg(7, 1)).unwrap().unwrap();
        assert!(w.verified);
        assert!(decide_frame(&q, &pg(5, 1)).unwrap().is_none());
    }

    #[test]
    fn parallel_sweep_matches_serial() {
        let p = pg(2, 2);
        let q = Quasigroup::cyclic(3);
        let serial = decide_frame_with(&q, &p, &SweepOptions { jobs: 1, all: true }).unwrap();
        let parallel = decide_frame_with(&q, &p, &SweepOptions { jobs: 4, all: true }).unwrap();
        assert_eq!(serial, parallel);
        assert!(!serial.is_empty());
        let first = decide_frame_with(&q, &p, &SweepOptions { jobs: 4, all: false }).unwrap();
        assert_eq!(first[0], serial[0]);
    }

    #[test]
    fn planar_reports() {
        let fano = pg(2, 1);
        let r = decide_planar(&Quasigroup::trivial(), &fano, &SweepOptions::default()).unwrap();
        assert!(r.trivial && r.points_in_plane && r.points_in_dual);
        let r = decide_planar(&Quasigroup::cyclic(2), &fano, &SweepOptions::default()).unwrap();
        assert!(!r.lift_points.is_empty() && r.frame_points.is_empty());
        assert!(r.points_in_plane);
        let r = decide_planar(&Quasigroup::cyclic(3), &fano, &SweepOptions::default()).unwrap();
        assert!(!r.points_in_plane && !r.points_in_dual);
        for w in r.lift_points.iter().chain(&r.frame_points).chain(&r.frame_lines).chain(&r.lift_lines) {
            assert!(w.verified);
        }
    }

    #[test]
    fn lift_lines_in_dual_are_verified() {
        let p = pg(3, 1);
        let r = decide_planar(&Quasigroup::cyclic(3), &p, &SweepOptions::default()).unwrap();
        let w = &r.lift_lines[0];
        let m = lift_matroid(&expansion_from_quasigroup(&Quasigroup::cyclic(3)), true).unwrap();
        assert!(is_representation(&m, &dual_plane(&p), &w.images).unwrap());
    }

    #[test]
    fn mode_dichotomy_of_main_lines() {
        let p = pg(3, 1);
        let lift = decide_lift(&Quasigroup::cyclic(3), &p).unwrap().unwrap();
        let frame = decide_frame_points(&Quasigroup::cyclic(2), &p).unwrap().unwrap();
        let rows = |w: &EmbeddingWitness| EmbeddedDualNet::from_witness(w).rows;
        let mains = |r: [Vec<usize>; 3]| r.map(|row| p.join(row[0], row[1]));
        assert!(p.concurrent(&mains(rows(&lift))).unwrap());
        assert!(!p.concurrent(&mains(rows(&frame))).unwrap());
    }

    fn complete_affine_net(p: &Plane) -> EmbeddedNet {
        let l = p.line(0).to_vec();
        let centers = [l[0], l[1], l[2]];
        let pencils = centers.map(|c| p.lines_through(c).iter().copied().filter(|&m| m != 0).collect());
        EmbeddedNet { centers, pencils }
    }

    #[test]
    fn affine_net_of_order_three_plane_is_z3() {
        let p = pg(3, 1);
        let c = coordinatize_affine_net(&p, &complete_affine_net(&p)).unwrap();
        assert_eq!(c.subset.len(), 3);
        assert!(is_isotopic(&c.subquasigroup, &Quasigroup::cyclic(3)).is_some());
        assert!(c.isotopism.is_valid_between(&complete_affine_net(&p).quasigroup(&p).unwrap(), &c.subquasigroup));
    }

    #[test]
    fn lift_image_dualizes_to_an_affine_net() {
        let p = pg(2, 1);
        let e = embed_lift_points(&field(2, 1), &set(&[0, 1])).unwrap();
        let d = dual_plane(&p);
        let mut pencils = [Vec::new(), Vec::new(), Vec::new()];
        for (el, &img) in e.elements.iter().zip(&e.images) {
            if let Element::Edge(EdgeId::Link(pair, _)) = el {
                pencils[pair.index()].push(img);
            }
        }
        let centers = [
            p.line_with_label(LineLabel::IdealLine).unwrap(),
            p.line_with_label(LineLabel::Vertical(0)).unwrap(),
            p.line_with_label(LineLabel::Vertical(1)).unwrap(),
        ];
        let net = EmbeddedNet { centers, pencils };
        let c = coordinatize_affine_net(&d, &net).unwrap();
        assert!(is_isotopic(&c.subquasigroup, &Quasigroup::cyclic(2)).is_some());
    }

    #[test]
    fn single_point_affine_net() {
        let p = pg(3, 1);
        let full = complete_affine_net(&p);
        let q = full.quasigroup(&p).unwrap();
        let net = EmbeddedNet {
            centers: full.centers,
            pencils: [vec![full.pencils[0][0]], vec![full.pencils[1][0]], vec![full.pencils[2][q.op(0, 0)]]],
        };
        let c = coordinatize_affine_net(&p, &net).unwrap();
        assert_eq!(c.subset.len(), 1);
        let collinear_fail = EmbeddedNet {
            centers: [0, 1, canonical_quadrangle(&p).unwrap().o],
            ..net
        };
        assert!(coordinatize_affine_net(&p, &collinear_fail).is_err());
    }

    #[test]
    fn cross_closure() {
        let p = pg(5, 1);
        let w = decide_frame_points(&Quasigroup::cyclic(4), &p).unwrap().unwrap();
        let net = EmbeddedDualNet::from_witness(&w);
        let all: BTreeSet<usize> = net.rows.iter().flatten().copied().collect();
        match cross_closed_subloop(&p, &net, &all).unwrap() {
            CrossClosure::Subloop { subloop, .. } => assert_eq!(subloop.len(), 4),
            other => panic!("{other:?}"),
        }
        let q = net.quasigroup(&p).unwrap();
        let line = set(&[net.rows[0][0], net.rows[1][1], net.rows[2][q.op(0, 1)]]);
        match cross_closed_subloop(&p, &net, &line).unwrap() {
            CrossClosure::Subloop { subloop, .. } => assert_eq!(subloop.len(), 1),
            other => panic!("{other:?}"),
        }
        let two = set(&[net.rows[0][0], net.rows[0][1]]);
        assert!(matches!(cross_closed_subloop(&p, &net, &two).unwrap(), CrossClosure::Degenerate { .. }));
        let open = set(&[net.rows[0][0], net.rows[1][0], net.rows[1][1]]);
        assert!(matches!(cross_closed_subloop(&p, &net, &open).unwrap(), CrossClosure::NotClosed { .. }));
        // a subgroup of order 2 inside Z4
        let half: BTreeSet<usize> = {
            let mut s = BTreeSet::new();
            let (g, h) = (0, 0);
            let k = q.op(g, h);
            let sel = crate::nets::subnets(&crate::nets::net_from_quasigroup(&q))
                .into_iter()
                .find(|s| s.net.order() == 2 && s.lines[0].contains(&g) && s.lines[1].contains(&h))
                .unwrap();
            assert!(sel.lines[2].contains(&k));
            for j in 0..3 {
                for &i in &sel.lines[j] {
                    s.insert(net.rows[j][i]);
                }
            }
            s
        };
        match cross_closed_subloop(&p, &net, &half).unwrap() {
            CrossClosure::Subloop { subloop, .. } => assert_eq!(subloop.len(), 2),
            other => panic!("{other:?}"),
        }
    }
}
