//! Matroids of rank at most 3: frame, full frame, lift and extended lift
//! matroids of order-3 biased graphs, matroids of plane point sets, circuits,
//! representations and isomorphism.
//!
//! A matroid is stored by its total rank, its parallel classes and its
//! dependent triples (triples of pairwise non-parallel elements of rank 2).
//! Every element has rank 1.

use std::collections::BTreeSet;

use serde::{Serialize, Serializer};

use crate::biased::{BiasedGraph3, Circle, EdgeId, Node, Pair};
use crate::error::{Error, Result};
use crate::plane::Plane;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Edge(EdgeId),
    /// The extra point `e0` of an extended lift matroid.
    Extra,
    Point(usize),
}

impl std::fmt::Display for Element {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Element::Edge(e) => write!(f, "{e}"),
            Element::Extra => write!(f, "e0"),
            Element::Point(p) => write!(f, "p{p}"),
        }
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matroid3 {
    elements: Vec<Element>,
    rank: usize,
    class: Vec<usize>,
    parallel: BTreeSet<(usize, usize)>,
    triples: BTreeSet<[usize; 3]>,
}

impl Matroid3 {
    /// Builds a matroid from a rank oracle evaluated on sets of size 1 to 3
    /// and on the whole ground set.
    pub fn from_rank_fn(elements: Vec<Element>, rank_of: impl Fn(&[usize]) -> usize) -> Result<Self> {
        let n = elements.len();
        if let Some(i) = (0..n).find(|&i| rank_of(&[i]) != 1) {
            return Err(Error::precondition(format!("element {} is a loop", elements[i])));
        }
        let all: Vec<usize> = (0..n).collect();
        let rank = rank_of(&all);
        if rank > 3 {
            return Err(Error::precondition(format!("rank {rank} exceeds 3")));
        }
        let mut parallel = BTreeSet::new();
        let mut class: Vec<usize> = (0..n).collect();
        for i in 0..n {
            for j in i + 1..n {
                if rank_of(&[i, j]) == 1 {
                    parallel.insert((i, j));
                    if class[j] == j {
                        class[j] = class[i];
                    }
                }
            }
        }
        let mut triples = BTreeSet::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if class[i] != class[j] && class[i] != class[k] && class[j] != class[k] && rank_of(&[i, j, k]) <= 2 {
                        triples.insert([i, j, k]);
                    }
                }
            }
        }
        Ok(Matroid3 {
            elements,
            rank,
            class,
            parallel,
            triples,
        })
    }

    /// Builds a simple matroid from explicit dependent triples.
    pub fn from_triples(elements: Vec<Element>, rank: usize, triples: impl IntoIterator<Item = [usize; 3]>) -> Result<Self> {
        let n = elements.len();
        let mut set = BTreeSet::new();
        for mut t in triples {
            t.sort_unstable();
            if t[2] >= n || t[0] == t[1] || t[1] == t[2] {
                return Err(Error::input(format!("triple {t:?} is not three distinct elements")));
            }
            set.insert(t);
        }
        let m = Matroid3 {
            elements,
            rank,
            class: (0..n).collect(),
            parallel: BTreeSet::new(),
            triples: set,
        };
        if m.rank(&(0..n).collect::<Vec<_>>()) != rank {
            return Err(Error::input("stated rank disagrees with the dependent triples"));
        }
        Ok(m)
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn total_rank(&self) -> usize {
        self.rank
    }

    pub fn parallel_pairs(&self) -> &BTreeSet<(usize, usize)> {
        &self.parallel
    }

    pub fn dependent_triples(&self) -> &BTreeSet<[usize; 3]> {
        &self.triples
    }

    pub fn index_of(&self, e: Element) -> Option<usize> {
        self.elements.iter().position(|&x| x == e)
    }

    fn is_dependent_triple(&self, a: usize, b: usize, c: usize) -> bool {
        let mut t = [a, b, c];
        t.sort_unstable();
        self.triples.contains(&t)
    }

    /// Rank of a subset, from the parallel classes and dependent triples.
    pub fn rank(&self, set: &[usize]) -> usize {
        let reps: BTreeSet<usize> = set.iter().map(|&i| self.class[i]).collect();
        // representatives of classes, one element each
        let v: Vec<usize> = reps
            .iter()
            .map(|&c| *set.iter().find(|&&i| self.class[i] == c).expect("class present"))
            .collect();
        let r = match v.len() {
            0 => 0,
            1 => 1,
            2 => 2,
            _ => {
                let all_dep = (0..v.len()).all(|i| {
                    (i + 1..v.len()).all(|j| (j + 1..v.len()).all(|k| self.is_dependent_triple(v[i], v[j], v[k])))
                });
                if all_dep {
                    2
                } else {
                    3
                }
            }
        };
        r.min(self.rank)
    }

    /// Minimal dependent sets, each sorted, in lexicographic order.
    pub fn circuits(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut out = Vec::new();
        let max = (self.rank + 1).min(n);
        let mut comb = Vec::new();
        for k in 1..=max {
            subsets(n, k, &mut comb, 0, &mut |s| {
                if self.rank(s) < s.len() {
                    let minimal = (0..s.len()).all(|skip| {
                        let sub: Vec<usize> = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &x)| x).collect();
                        self.rank(&sub) == sub.len()
                    });
                    if minimal {
                        out.push(s.to_vec());
                    }
                }
            });
        }
        out.sort();
        out
    }

    /// Circuits as sorted element lists.
    pub fn circuit_elements(&self) -> BTreeSet<Vec<Element>> {
        self.circuits()
            .into_iter()
            .map(|c| {
                let mut v: Vec<Element> = c.into_iter().map(|i| self.elements[i]).collect();
                v.sort();
                v
            })
            .collect()
    }
}

fn subsets(n: usize, k: usize, cur: &mut Vec<usize>, start: usize, f: &mut dyn FnMut(&[usize])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for i in start..n {
        if n - i < k - cur.len() {
            break;
        }
        cur.push(i);
        subsets(n, k, cur, i + 1, f);
        cur.pop();
    }
}

struct Components {
    comp: [usize; 3],
    count: usize,
}

fn components(links: &[EdgeId]) -> Components {
    let mut parent = [0usize, 1, 2];
    fn find(p: &mut [usize; 3], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            x = p[x];
        }
        x
    }
    for e in links {
        if let EdgeId::Link(p, _) = e {
            let (a, b) = p.nodes();
            let (ra, rb) = (find(&mut parent, a.index()), find(&mut parent, b.index()));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let comp = [0, 1, 2].map(|x| find(&mut parent, x));
    let count = (0..3).filter(|&x| comp[x] == x).count();
    Components { comp, count }
}

fn edge_set(g: &BiasedGraph3, elements: &[Element], s: &[usize]) -> BTreeSet<EdgeId> {
    let _ = g;
    s.iter()
        .filter_map(|&i| match elements[i] {
            Element::Edge(e) => Some(e),
            _ => None,
        })
        .collect()
}

fn frame_rank(g: &BiasedGraph3, edges: &BTreeSet<EdgeId>) -> usize {
    let links: Vec<EdgeId> = edges.iter().copied().filter(|e| matches!(e, EdgeId::Link(..))).collect();
    let comps = components(&links);
    let mut balanced = 0;
    for root in (0..3).filter(|&x| comps.comp[x] == x) {
        let in_comp = |v: Node| comps.comp[v.index()] == root;
        let has_half = edges.iter().any(|e| matches!(e, EdgeId::Half(v) if in_comp(*v)));
        let comp_edges: BTreeSet<EdgeId> = links
            .iter()
            .copied()
            .filter(|e| match e {
                EdgeId::Link(p, _) => in_comp(p.nodes().0),
                EdgeId::Half(_) => false,
            })
            .collect();
        if !has_half && g.is_balanced_set(&comp_edges) {
            balanced += 1;
        }
    }
    3 - balanced
}

fn lift_rank(g: &BiasedGraph3, edges: &BTreeSet<EdgeId>, has_extra: bool) -> usize {
    let links: Vec<EdgeId> = edges.iter().copied().filter(|e| matches!(e, EdgeId::Link(..))).collect();
    let c = components(&links).count;
    let unbalanced = !g.is_balanced_set(edges);
    3 - c + usize::from(unbalanced || has_extra)
}

fn require_valid(g: &BiasedGraph3) -> Result<()> {
    let r = g.validate();
    if r.valid {
        Ok(())
    } else {
        Err(Error::precondition(format!(
            "graph violates the theta condition in {} theta subgraphs",
            r.violations.len()
        )))
    }
}

/// `G(omega)`, or the full frame matroid when `full` is set, with rank
/// `3 - b(S)` where `b(S)` counts balanced components of `(N, S)`.
pub fn frame_matroid(omega: &BiasedGraph3, full: bool) -> Result<Matroid3> {
    require_valid(omega)?;
    let g = if full { omega.full() } else { omega.clone() };
    let elements: Vec<Element> = g.edges().into_iter().map(Element::Edge).collect();
    let els = elements.clone();
    Matroid3::from_rank_fn(elements, |s| frame_rank(&g, &edge_set(&g, &els, s)))
}

/// `L(omega)`, or `L0(omega)` with the extra point `e0` when `extended` is set,
/// with rank `3 - c(S)`, plus one if `S` is unbalanced or contains `e0`.
pub fn lift_matroid(omega: &BiasedGraph3, extended: bool) -> Result<Matroid3> {
    require_valid(omega)?;
    let g = omega.clone();
    let mut elements: Vec<Element> = g.edges().into_iter().map(Element::Edge).collect();
    if extended {
        elements.push(Element::Extra);
    }
    let els = elements.clone();
    Matroid3::from_rank_fn(elements, |s| {
        let has_extra = s.iter().any(|&i| els[i] == Element::Extra);
        lift_rank(&g, &edge_set(&g, &els, s), has_extra)
    })
}

/// An unbalanced figure: a half edge or an unbalanced circle.
#[derive(Debug, Clone)]
struct Figure {
    edges: Vec<EdgeId>,
    nodes: Vec<Node>,
}

fn unbalanced_figures(g: &BiasedGraph3) -> Vec<Figure> {
    let all: BTreeSet<EdgeId> = g.links().collect();
    let mut out: Vec<Figure> = g
        .circles_within(&all)
        .into_iter()
        .filter(|&c| !g.is_balanced_circle(c))
        .map(|c| Figure {
            edges: c.edges(),
            nodes: c.nodes(),
        })
        .collect();
    for v in Node::ALL {
        if g.has_half_edge(v) {
            out.push(Figure {
                edges: vec![EdgeId::Half(v)],
                nodes: vec![v],
            });
        }
    }
    out
}

fn links_between(g: &BiasedGraph3, a: Node, b: Node) -> Vec<EdgeId> {
    Pair::ALL
        .into_iter()
        .filter(|p| p.contains(a) && p.contains(b) && a != b)
        .flat_map(|p| (0..g.size(p)).map(move |i| EdgeId::Link(p, i)))
        .collect()
}

fn sorted(edges: impl IntoIterator<Item = EdgeId>, extra: bool) -> Vec<Element> {
    let mut v: Vec<Element> = edges.into_iter().map(Element::Edge).collect();
    if extra {
        v.push(Element::Extra);
    }
    v.sort();
    v.dedup();
    v
}

/// Balanced circles and contrabalanced thetas, common to both matroids.
fn circles_and_thetas(g: &BiasedGraph3, out: &mut BTreeSet<Vec<Element>>) {
    let all: BTreeSet<EdgeId> = g.links().collect();
    for c in g.circles_within(&all) {
        if g.is_balanced_circle(c) {
            out.insert(sorted(c.edges(), false));
        }
    }
    for p in Pair::ALL {
        let s = g.size(p);
        for i in 0..s {
            for j in i + 1..s {
                for k in j + 1..s {
                    let digons = [Circle::Digon(p, i, j), Circle::Digon(p, i, k), Circle::Digon(p, j, k)];
                    if digons.iter().all(|&d| !g.is_balanced_circle(d)) {
                        out.insert(sorted([EdgeId::Link(p, i), EdgeId::Link(p, j), EdgeId::Link(p, k)], false));
                    }
                }
            }
        }
        let others: Vec<Pair> = Pair::ALL.into_iter().filter(|&o| o != p).collect();
        for i in 0..s {
            for j in i + 1..s {
                if g.is_balanced_circle(Circle::Digon(p, i, j)) {
                    continue;
                }
                for x in 0..g.size(others[0]) {
                    for y in 0..g.size(others[1]) {
                        let tri = |d: usize| {
                            let mut t = [0usize; 3];
                            t[p.index()] = d;
                            t[others[0].index()] = x;
                            t[others[1].index()] = y;
                            Circle::Triangle(t[0], t[1], t[2])
                        };
                        if !g.is_balanced_circle(tri(i)) && !g.is_balanced_circle(tri(j)) {
                            out.insert(sorted(
                                [EdgeId::Link(p, i), EdgeId::Link(p, j), EdgeId::Link(others[0], x), EdgeId::Link(others[1], y)],
                                false,
                            ));
                        }
                    }
                }
            }
        }
    }
}

fn tight_handcuffs(figs: &[Figure], out: &mut BTreeSet<Vec<Element>>) {
    for (i, a) in figs.iter().enumerate() {
        for b in &figs[i + 1..] {
            let shared = a.nodes.iter().filter(|v| b.nodes.contains(v)).count();
            let edge_disjoint = a.edges.iter().all(|e| !b.edges.contains(e));
            if shared == 1 && edge_disjoint {
                out.insert(sorted(a.edges.iter().chain(&b.edges).copied(), false));
            }
        }
    }
}

/// Circuits of the frame matroid (full when `full` is set) enumerated by
/// shape: balanced circles, contrabalanced thetas, and pairs of unbalanced
/// figures meeting in one node or joined by a path.
pub fn frame_circuit_catalog(omega: &BiasedGraph3, full: bool) -> BTreeSet<Vec<Element>> {
    let g = if full { omega.full() } else { omega.clone() };
    let mut out = BTreeSet::new();
    circles_and_thetas(&g, &mut out);
    let figs = unbalanced_figures(&g);
    tight_handcuffs(&figs, &mut out);
    for (i, a) in figs.iter().enumerate() {
        for b in &figs[i + 1..] {
            if a.nodes.iter().any(|v| b.nodes.contains(v)) {
                continue;
            }
            let both: Vec<Node> = a.nodes.iter().chain(&b.nodes).copied().collect();
            let free: Vec<Node> = Node::ALL.into_iter().filter(|v| !both.contains(v)).collect();
            for &x in &a.nodes {
                for &y in &b.nodes {
                    for e in links_between(&g, x, y) {
                        out.insert(sorted(a.edges.iter().chain(&b.edges).copied().chain([e]), false));
                    }
                    for &z in &free {
                        for e1 in links_between(&g, x, z) {
                            for e2 in links_between(&g, z, y) {
                                out.insert(sorted(a.edges.iter().chain(&b.edges).copied().chain([e1, e2]), false));
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Circuits of the lift matroid (extended with `e0` when `extended` is set):
/// balanced circles, contrabalanced thetas, tight handcuffs, pairs of
/// node-disjoint unbalanced figures, and each unbalanced figure with `e0`.
pub fn lift_circuit_catalog(omega: &BiasedGraph3, extended: bool) -> BTreeSet<Vec<Element>> {
    let mut out = BTreeSet::new();
    circles_and_thetas(omega, &mut out);
    let figs = unbalanced_figures(omega);
    tight_handcuffs(&figs, &mut out);
    for (i, a) in figs.iter().enumerate() {
        for b in &figs[i + 1..] {
            if a.nodes.iter().all(|v| !b.nodes.contains(v)) {
                out.insert(sorted(a.edges.iter().chain(&b.edges).copied(), false));
            }
        }
    }
    if extended {
        for f in &figs {
            out.insert(sorted(f.edges.iter().copied(), true));
        }
    }
    out
}

/// The matroid of projective dependence of a point set.
pub fn matroid_of_points(p: &Plane, points: &[usize]) -> Result<Matroid3> {
    if let Some(&bad) = points.iter().find(|&&x| x >= p.n_points()) {
        return Err(Error::input(format!("point {bad} out of range")));
    }
    let distinct: BTreeSet<usize> = points.iter().copied().collect();
    if distinct.len() != points.len() {
        return Err(Error::input("point set lists a point twice"));
    }
    let elements: Vec<Element> = points.iter().map(|&x| Element::Point(x)).collect();
    Matroid3::from_rank_fn(elements, |s| {
        let pts: Vec<usize> = s.iter().map(|&i| points[i]).collect();
        p.rank_of_points(&pts)
    })
}

/// Whether `map` (element index to point) is an injective representation of
/// `m` in `p`: pairs stay independent, triples are dependent exactly when
/// their images are collinear, and the ranks agree.
pub fn is_representation(m: &Matroid3, p: &Plane, map: &[usize]) -> Result<bool> {
    if map.len() != m.len() {
        return Err(Error::input(format!(
            "map has {} entries for {} elements",
            map.len(),
            m.len()
        )));
    }
    if let Some(&bad) = map.iter().find(|&&x| x >= p.n_points()) {
        return Err(Error::input(format!("image {bad} is not a point")));
    }
    let images: BTreeSet<usize> = map.iter().copied().collect();
    if images.len() != map.len() || !m.parallel.is_empty() {
        return Ok(false);
    }
    if p.rank_of_points(map) != m.total_rank() {
        return Ok(false);
    }
    let n = m.len();
    for i in 0..n {
        for j in i + 1..n {
            let l = p.join(map[i], map[j]);
            for k in j + 1..n {
                if m.is_dependent_triple(i, j, k) != p.is_on(map[k], l) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// A bijection of ground sets preserving parallel pairs and dependent
/// triples, if one exists.
pub fn matroid_isomorphic(m1: &Matroid3, m2: &Matroid3) -> Option<Vec<usize>> {
    let n = m1.len();
    if n != m2.len()
        || m1.rank != m2.rank
        || m1.triples.len() != m2.triples.len()
        || m1.parallel.len() != m2.parallel.len()
    {
        return None;
    }
    let profile = |m: &Matroid3, i: usize| {
        let t = m.triples.iter().filter(|t| t.contains(&i)).count();
        let p = m.parallel.iter().filter(|&&(a, b)| a == i || b == i).count();
        (t, p)
    };
    let p1: Vec<_> = (0..n).map(|i| profile(m1, i)).collect();
    let p2: Vec<_> = (0..n).map(|i| profile(m2, i)).collect();
    let mut a = p1.clone();
    let mut b = p2.clone();
    a.sort();
    b.sort();
    if a != b {
        return None;
    }
    let is_par = |m: &Matroid3, i: usize, j: usize| m.parallel.contains(&(i.min(j), i.max(j)));
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        k: usize,
        n: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        ok: &dyn Fn(&[usize], usize) -> bool,
        cand: &dyn Fn(usize, usize) -> bool,
    ) -> bool {
        if k == n {
            return true;
        }
        for y in 0..n {
            if used[y] || !cand(k, y) {
                continue;
            }
            map[k] = y;
            if ok(map, k) {
                used[y] = true;
                if go(k + 1, n, map, used, ok, cand) {
                    return true;
                }
                used[y] = false;
            }
            map[k] = usize::MAX;
        }
        false
    }
    let ok = |map: &[usize], k: usize| {
        (0..k).all(|i| is_par(m1, i, k) == is_par(m2, map[i], map[k]))
            && (0..k).all(|i| {
                (i + 1..k).all(|j| m1.is_dependent_triple(i, j, k) == m2.is_dependent_triple(map[i], map[j], map[k]))
            })
    };
    let cand = |x: usize, y: usize| p1[x] == p2[y];
    go(0, n, &mut map, &mut used, &ok, &cand).then_some(map)
}
