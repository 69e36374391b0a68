//! Biased graphs on the node set `{v1, v2, v3}`: the theta condition,
//! balance-closure, and biased expansions of `K3` with their quasigroups.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::algebra::Quasigroup;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Node {
    V1,
    V2,
    V3,
}

impl Node {
    pub const ALL: [Node; 3] = [Node::V1, Node::V2, Node::V3];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Node> {
        Node::ALL.get(i).copied()
    }
}

/// The three node pairs, in the order `12, 23, 13` used for fiber sizes
/// `p, q, r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Pair {
    P12,
    P23,
    P13,
}

impl Pair {
    pub const ALL: [Pair; 3] = [Pair::P12, Pair::P23, Pair::P13];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Pair> {
        Pair::ALL.get(i).copied()
    }

    pub fn nodes(self) -> (Node, Node) {
        match self {
            Pair::P12 => (Node::V1, Node::V2),
            Pair::P23 => (Node::V2, Node::V3),
            Pair::P13 => (Node::V1, Node::V3),
        }
    }

    pub fn contains(self, v: Node) -> bool {
        let (a, b) = self.nodes();
        a == v || b == v
    }

    pub fn name(self) -> &'static str {
        match self {
            Pair::P12 => "12",
            Pair::P23 => "23",
            Pair::P13 => "13",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeId {
    Link(Pair, usize),
    Half(Node),
}

impl EdgeId {
    /// The nodes the edge touches.
    pub fn nodes(self) -> Vec<Node> {
        match self {
            EdgeId::Link(p, _) => {
                let (a, b) = p.nodes();
                vec![a, b]
            }
            EdgeId::Half(v) => vec![v],
        }
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeId::Link(p, i) => write!(f, "e{}:{}", p.name(), i),
            EdgeId::Half(v) => write!(f, "h{}", v.index() + 1),
        }
    }
}

impl Serialize for EdgeId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A circle of an order-3 graph: a digon of two parallel links or a triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Circle {
    Digon(Pair, usize, usize),
    Triangle(usize, usize, usize),
}

impl Circle {
    pub fn edges(self) -> Vec<EdgeId> {
        match self {
            Circle::Digon(p, i, j) => vec![EdgeId::Link(p, i), EdgeId::Link(p, j)],
            Circle::Triangle(a, b, c) => vec![
                EdgeId::Link(Pair::P12, a),
                EdgeId::Link(Pair::P23, b),
                EdgeId::Link(Pair::P13, c),
            ],
        }
    }

    pub fn nodes(self) -> Vec<Node> {
        match self {
            Circle::Digon(p, _, _) => {
                let (a, b) = p.nodes();
                vec![a, b]
            }
            Circle::Triangle(..) => Node::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BiasedGraph3 {
    sizes: [usize; 3],
    half_edges: [bool; 3],
    // (pair, i, j) with i < j
    balanced_digons: BTreeSet<(Pair, usize, usize)>,
    // (a, b, c) with a in E12, b in E23, c in E13
    balanced_triangles: BTreeSet<(usize, usize, usize)>,
}

/// A theta subgraph with exactly two balanced circles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThetaViolation {
    pub edges: Vec<EdgeId>,
    pub balanced: Vec<Circle>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<ThetaViolation>,
}

/// The bipartite graph on `A = E12`, `B = E23` with one partial matching per
/// edge of `E13`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchingStructure {
    pub a: usize,
    pub b: usize,
    /// `matchings[k]` holds the pairs `(i, j)` of balanced triangles `a_i b_j c_k`.
    pub matchings: Vec<Vec<(usize, usize)>>,
}

impl BiasedGraph3 {
    pub fn new(
        sizes: [usize; 3],
        half_edges: [bool; 3],
        balanced_digons: BTreeSet<(Pair, usize, usize)>,
        balanced_triangles: BTreeSet<(usize, usize, usize)>,
    ) -> Result<Self> {
        let mut digons = BTreeSet::new();
        for &(p, i, j) in &balanced_digons {
            let s = sizes[p.index()];
            if i >= s || j >= s {
                return Err(Error::input(format!(
                    "digon ({i}, {j}) in E{} out of range 0..{s}",
                    p.name()
                )));
            }
            if i == j {
                return Err(Error::input(format!("digon ({i}, {j}) uses the same edge twice")));
            }
            digons.insert((p, i.min(j), i.max(j)));
        }
        for &(a, b, c) in &balanced_triangles {
            if a >= sizes[0] || b >= sizes[1] || c >= sizes[2] {
                return Err(Error::input(format!(
                    "triangle ({a}, {b}, {c}) out of range for fibers {sizes:?}"
                )));
            }
        }
        Ok(BiasedGraph3 {
            sizes,
            half_edges,
            balanced_digons: digons,
            balanced_triangles,
        })
    }

    pub fn sizes(&self) -> [usize; 3] {
        self.sizes
    }

    pub fn size(&self, p: Pair) -> usize {
        self.sizes[p.index()]
    }

    pub fn half_edges(&self) -> [bool; 3] {
        self.half_edges
    }

    pub fn has_half_edge(&self, v: Node) -> bool {
        self.half_edges[v.index()]
    }

    pub fn balanced_digons(&self) -> &BTreeSet<(Pair, usize, usize)> {
        &self.balanced_digons
    }

    pub fn balanced_triangles(&self) -> &BTreeSet<(usize, usize, usize)> {
        &self.balanced_triangles
    }

    pub fn with_half_edge(mut self, v: Node) -> Self {
        self.half_edges[v.index()] = true;
        self
    }

    pub fn without_half_edges(mut self) -> Self {
        self.half_edges = [false; 3];
        self
    }

    /// Links in order `E12, E23, E13`, then half edges by node.
    pub fn edges(&self) -> Vec<EdgeId> {
        let mut out: Vec<EdgeId> = self.links().collect();
        out.extend(
            Node::ALL
                .iter()
                .filter(|v| self.has_half_edge(**v))
                .map(|&v| EdgeId::Half(v)),
        );
        out
    }

    pub fn links(&self) -> impl Iterator<Item = EdgeId> + '_ {
        Pair::ALL
            .into_iter()
            .flat_map(move |p| (0..self.size(p)).map(move |i| EdgeId::Link(p, i)))
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        match e {
            EdgeId::Link(p, i) => i < self.size(p),
            EdgeId::Half(v) => self.has_half_edge(v),
        }
    }

    pub fn edge_count(&self) -> usize {
        self.sizes.iter().sum::<usize>() + self.half_edges.iter().filter(|&&h| h).count()
    }

    pub fn is_balanced_circle(&self, c: Circle) -> bool {
        match c {
            Circle::Digon(p, i, j) => self.balanced_digons.contains(&(p, i.min(j), i.max(j))),
            Circle::Triangle(a, b, c) => self.balanced_triangles.contains(&(a, b, c)),
        }
    }

    /// Every circle whose edges all lie in `set`.
    pub fn circles_within(&self, set: &BTreeSet<EdgeId>) -> Vec<Circle> {
        let mut by_pair: [Vec<usize>; 3] = Default::default();
        for e in set {
            if let EdgeId::Link(p, i) = *e {
                by_pair[p.index()].push(i);
            }
        }
        let mut out = Vec::new();
        for p in Pair::ALL {
            let v = &by_pair[p.index()];
            for (x, &i) in v.iter().enumerate() {
                for &j in &v[x + 1..] {
                    out.push(Circle::Digon(p, i, j));
                }
            }
        }
        for &a in &by_pair[0] {
            for &b in &by_pair[1] {
                for &c in &by_pair[2] {
                    out.push(Circle::Triangle(a, b, c));
                }
            }
        }
        out
    }

    fn check_edges(&self, set: &BTreeSet<EdgeId>) -> Result<()> {
        match set.iter().find(|e| !self.contains_edge(**e)) {
            Some(e) => Err(Error::input(format!("edge {e} is not in the graph"))),
            None => Ok(()),
        }
    }

    /// A set is balanced when it has no half edge and every circle in it is balanced.
    pub fn is_balanced_set(&self, set: &BTreeSet<EdgeId>) -> bool {
        set.iter().all(|e| matches!(e, EdgeId::Link(..)))
            && self
                .circles_within(set)
                .into_iter()
                .all(|c| self.is_balanced_circle(c))
    }

    /// Checks the theta condition over both theta shapes that exist at order 3.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let check = |circles: Vec<Circle>, edges: Vec<EdgeId>, out: &mut Vec<ThetaViolation>| {
            let balanced: Vec<Circle> = circles
                .into_iter()
                .filter(|&c| self.is_balanced_circle(c))
                .collect();
            if balanced.len() == 2 {
                out.push(ThetaViolation { edges, balanced });
            }
        };
        // three parallel links
        for p in Pair::ALL {
            let s = self.size(p);
            for i in 0..s {
                for j in i + 1..s {
                    for k in j + 1..s {
                        check(
                            vec![Circle::Digon(p, i, j), Circle::Digon(p, i, k), Circle::Digon(p, j, k)],
                            vec![EdgeId::Link(p, i), EdgeId::Link(p, j), EdgeId::Link(p, k)],
                            &mut violations,
                        );
                    }
                }
            }
        }
        // a digon plus a path of length 2 through the third node
        for p in Pair::ALL {
            let s = self.size(p);
            let others: Vec<Pair> = Pair::ALL.into_iter().filter(|&o| o != p).collect();
            for i in 0..s {
                for j in i + 1..s {
                    for x in 0..self.size(others[0]) {
                        for y in 0..self.size(others[1]) {
                            let tri = |d: usize| {
                                let mut t = [0usize; 3];
                                t[p.index()] = d;
                                t[others[0].index()] = x;
                                t[others[1].index()] = y;
                                Circle::Triangle(t[0], t[1], t[2])
                            };
                            check(
                                vec![Circle::Digon(p, i, j), tri(i), tri(j)],
                                vec![
                                    EdgeId::Link(p, i),
                                    EdgeId::Link(p, j),
                                    EdgeId::Link(others[0], x),
                                    EdgeId::Link(others[1], y),
                                ],
                                &mut violations,
                            );
                        }
                    }
                }
            }
        }
        ValidationReport {
            valid: violations.is_empty(),
            violations,
        }
    }

    /// For each `(a, b)` the unique `c` with `a b c` balanced, if the
    /// triangles make this graph an expansion; `None` otherwise.
    fn latin_table(&self) -> Option<Vec<usize>> {
        let n = self.sizes[0];
        if n == 0 || self.sizes != [n, n, n] || self.balanced_triangles.len() != n * n {
            return None;
        }
        let mut table = vec![usize::MAX; n * n];
        for &(a, b, c) in &self.balanced_triangles {
            if table[a * n + b] != usize::MAX {
                return None;
            }
            table[a * n + b] = c;
        }
        let rows: Vec<Vec<usize>> = table.chunks(n).map(<[usize]>::to_vec).collect();
        match crate::algebra::is_latin(&rows) {
            Ok(true) => Some(table),
            _ => None,
        }
    }

    /// Whether this is a biased expansion `gamma K3`: no half edges, no balanced
    /// digons, equal nonempty fibers, and every two edges from distinct fibers
    /// complete to exactly one balanced triangle.
    pub fn is_biased_expansion(&self) -> bool {
        !self.half_edges.iter().any(|&h| h)
            && self.balanced_digons.is_empty()
            && self.latin_table().is_some()
    }

    /// The fiber size of a biased expansion.
    pub fn gamma(&self) -> Option<usize> {
        self.is_biased_expansion().then_some(self.sizes[0])
    }

    pub fn full(&self) -> Self {
        let mut g = self.clone();
        g.half_edges = [true; 3];
        g
    }

    /// One pass of balance-closure: `set` plus every edge that completes a
    /// balanced circle with edges of `set`.
    pub fn balance_closure(&self, set: &BTreeSet<EdgeId>) -> Result<BTreeSet<EdgeId>> {
        self.check_edges(set)?;
        let mut out = set.clone();
        let mut with = set.clone();
        for e in self.links() {
            if set.contains(&e) {
                continue;
            }
            with.insert(e);
            let completes = self
                .circles_within(&with)
                .into_iter()
                .any(|c| c.edges().contains(&e) && self.is_balanced_circle(c));
            with.remove(&e);
            if completes {
                out.insert(e);
            }
        }
        Ok(out)
    }

    /// Iterates [`Self::balance_closure`] to a fixpoint.
    pub fn closed_hull(&self, set: &BTreeSet<EdgeId>) -> Result<BTreeSet<EdgeId>> {
        let mut cur = self.balance_closure(set)?;
        loop {
            let next = self.balance_closure(&cur)?;
            if next == cur {
                return Ok(cur);
            }
            cur = next;
        }
    }

    pub fn matching_structure(&self) -> Result<MatchingStructure> {
        if !self.balanced_digons.is_empty() {
            return Err(Error::precondition(
                "matching structure needs a graph without balanced digons",
            ));
        }
        let report = self.validate();
        if !report.valid {
            return Err(Error::precondition(format!(
                "graph violates the theta condition in {} theta subgraphs",
                report.violations.len()
            )));
        }
        let mut matchings = vec![Vec::new(); self.sizes[2]];
        for &(a, b, c) in &self.balanced_triangles {
            matchings[c].push((a, b));
        }
        Ok(MatchingStructure {
            a: self.sizes[0],
            b: self.sizes[1],
            matchings,
        })
    }

    /// The sub-biased-graph induced on a set of links, relabelled so each
    /// fiber keeps its original index order. Returns the labels per pair.
    pub fn restrict_links(&self, set: &BTreeSet<EdgeId>) -> Result<(BiasedGraph3, [Vec<usize>; 3])> {
        self.check_edges(set)?;
        let mut labels: [Vec<usize>; 3] = Default::default();
        for e in set {
            if let EdgeId::Link(p, i) = *e {
                labels[p.index()].push(i);
            }
        }
        let pos: Vec<BTreeMap<usize, usize>> = labels
            .iter()
            .map(|l| l.iter().enumerate().map(|(k, &v)| (v, k)).collect())
            .collect();
        let digons = self
            .balanced_digons
            .iter()
            .filter_map(|&(p, i, j)| {
                let m = &pos[p.index()];
                Some((p, *m.get(&i)?, *m.get(&j)?))
            })
            .collect();
        let triangles = self
            .balanced_triangles
            .iter()
            .filter_map(|&(a, b, c)| Some((*pos[0].get(&a)?, *pos[1].get(&b)?, *pos[2].get(&c)?)))
            .collect();
        let sizes = [labels[0].len(), labels[1].len(), labels[2].len()];
        let g = BiasedGraph3::new(sizes, [false; 3], digons, triangles)?;
        Ok((g, labels))
    }
}

/// `QK3`: fibers indexed by the elements of `Q`, with `g e12, h e23, k e13`
/// balanced exactly when `g * h = k`.
pub fn expansion_from_quasigroup(q: &Quasigroup) -> BiasedGraph3 {
    let n = q.order();
    let triangles = (0..n)
        .flat_map(|g| (0..n).map(move |h| (g, h)))
        .map(|(g, h)| (g, h, q.op(g, h)))
        .collect();
    BiasedGraph3 {
        sizes: [n, n, n],
        half_edges: [false; 3],
        balanced_digons: BTreeSet::new(),
        balanced_triangles: triangles,
    }
}

/// Reads off a quasigroup from a biased expansion. `beta[p][g]` is the edge
/// of fiber `p` labelled `g`; the product `g * h` is the label of the edge
/// completing `beta12(g), beta23(h)` to a balanced triangle.
pub fn quasigroup_from_expansion(omega: &BiasedGraph3, beta: [&[usize]; 3]) -> Result<Quasigroup> {
    if !omega.is_biased_expansion() {
        return Err(Error::precondition("graph is not a biased expansion of K3"));
    }
    let table = omega.latin_table().expect("checked expansion");
    let n = omega.sizes[0];
    for (p, b) in beta.iter().enumerate() {
        let is_bij = b.len() == n && {
            let mut seen = vec![false; n];
            b.iter().all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
        };
        if !is_bij {
            return Err(Error::input(format!(
                "labelling of fiber {} is not a bijection onto 0..{n}",
                Pair::ALL[p].name()
            )));
        }
    }
    let mut inv13 = vec![0; n];
    for (g, &e) in beta[2].iter().enumerate() {
        inv13[e] = g;
    }
    Quasigroup::from_fn(n, |g, h| inv13[table[beta[0][g] * n + beta[1][h]]])
}

/// [`quasigroup_from_expansion`] with every fiber labelled by edge index.
pub fn quasigroup_of_expansion(omega: &BiasedGraph3) -> Result<Quasigroup> {
    let id: Vec<usize> = (0..omega.sizes[0]).collect();
    quasigroup_from_expansion(omega, [&id, &id, &id])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::is_isotopic;

    fn set(v: &[EdgeId]) -> BTreeSet<EdgeId> {
        v.iter().copied().collect()
    }

    fn l(p: Pair, i: usize) -> EdgeId {
        EdgeId::Link(p, i)
    }

    #[test]
    fn validate_accepts_graph_without_balanced_circles() {
        let g = BiasedGraph3::new([2, 2, 2], [false; 3], BTreeSet::new(), BTreeSet::new()).unwrap();
        assert!(g.validate().valid);
    }

    #[test]
    fn validate_rejects_digon_with_one_balanced_triangle() {
        let g = BiasedGraph3::new(
            [2, 1, 1],
            [false; 3],
            [(Pair::P12, 0, 1)].into_iter().collect(),
            [(0, 0, 0)].into_iter().collect(),
        )
        .unwrap();
        let r = g.validate();
        assert!(!r.valid);
        assert_eq!(r.violations.len(), 1);
        assert_eq!(
            r.violations[0].balanced,
            vec![Circle::Digon(Pair::P12, 0, 1), Circle::Triangle(0, 0, 0)]
        );
    }

    #[test]
    fn validate_rejects_two_balanced_digons_of_three() {
        let g = BiasedGraph3::new(
            [3, 0, 0],
            [false; 3],
            [(Pair::P12, 0, 1), (Pair::P12, 1, 2)].into_iter().collect(),
            BTreeSet::new(),
        )
        .unwrap();
        assert!(!g.validate().valid);
    }

    #[test]
    fn validate_rejects_two_triangles_sharing_two_edges() {
        let g = BiasedGraph3::new(
            [2, 1, 1],
            [false; 3],
            BTreeSet::new(),
            [(0, 0, 0), (1, 0, 0)].into_iter().collect(),
        )
        .unwrap();
        assert!(!g.validate().valid);
    }

    #[test]
    fn new_rejects_bad_indices() {
        assert!(BiasedGraph3::new([1, 1, 1], [false; 3], BTreeSet::new(), [(0, 1, 0)].into_iter().collect()).is_err());
        assert!(BiasedGraph3::new([2, 1, 1], [false; 3], [(Pair::P12, 1, 1)].into_iter().collect(), BTreeSet::new()).is_err());
    }

    #[test]
    fn expansions() {
        let z2 = expansion_from_quasigroup(&Quasigroup::cyclic(2));
        assert_eq!(z2.edge_count(), 6);
        assert_eq!(
            z2.balanced_triangles().iter().copied().collect::<Vec<_>>(),
            vec![(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)]
        );
        assert!(z2.validate().valid && z2.is_biased_expansion());
        let z3 = expansion_from_quasigroup(&Quasigroup::cyclic(3));
        assert_eq!((z3.edge_count(), z3.balanced_triangles().len()), (9, 9));
        let one = expansion_from_quasigroup(&Quasigroup::trivial());
        assert_eq!(one.balanced_triangles().len(), 1);
        assert!(one.is_biased_expansion());
        let unequal = BiasedGraph3::new([2, 1, 1], [false; 3], BTreeSet::new(), BTreeSet::new()).unwrap();
        assert!(!unequal.is_biased_expansion());
    }

    #[test]
    fn quasigroup_round_trip() {
        let z3 = Quasigroup::cyclic(3);
        let omega = expansion_from_quasigroup(&z3);
        assert_eq!(quasigroup_of_expansion(&omega).unwrap(), z3);
        let id = [0, 1, 2];
        let swapped = quasigroup_from_expansion(&omega, [&[1, 0, 2], &id, &id]).unwrap();
        assert_ne!(swapped, z3);
        assert!(is_isotopic(&swapped, &z3).is_some());
        let one = expansion_from_quasigroup(&Quasigroup::trivial());
        assert_eq!(quasigroup_of_expansion(&one).unwrap(), Quasigroup::trivial());
        let bad = BiasedGraph3::new([2, 2, 2], [false; 3], BTreeSet::new(), BTreeSet::new()).unwrap();
        assert!(quasigroup_of_expansion(&bad).is_err());
    }

    #[test]
    fn balance_closure_examples() {
        let z2 = expansion_from_quasigroup(&Quasigroup::cyclic(2));
        assert!(z2.balance_closure(&BTreeSet::new()).unwrap().is_empty());
        assert_eq!(
            z2.balance_closure(&set(&[l(Pair::P12, 0), l(Pair::P23, 0)])).unwrap(),
            set(&[l(Pair::P12, 0), l(Pair::P23, 0), l(Pair::P13, 0)])
        );
        let all: BTreeSet<EdgeId> = z2.edges().into_iter().collect();
        assert_eq!(z2.balance_closure(&all).unwrap(), all);
        assert!(z2.balance_closure(&set(&[l(Pair::P12, 5)])).is_err());
    }

    #[test]
    fn closure_through_balanced_digon() {
        let g = BiasedGraph3::new([2, 0, 0], [false; 3], [(Pair::P12, 0, 1)].into_iter().collect(), BTreeSet::new()).unwrap();
        assert_eq!(
            g.balance_closure(&set(&[l(Pair::P12, 0)])).unwrap(),
            set(&[l(Pair::P12, 0), l(Pair::P12, 1)])
        );
    }

    #[test]
    fn full_adds_three_half_edges() {
        let z2 = expansion_from_quasigroup(&Quasigroup::cyclic(2));
        let f = z2.full();
        assert_eq!(f.edge_count(), 9);
        assert_eq!(f.full(), f);
        assert!(!f.is_biased_expansion());
    }

    #[test]
    fn matching_structures() {
        let z2 = expansion_from_quasigroup(&Quasigroup::cyclic(2));
        let m = z2.matching_structure().unwrap();
        assert_eq!((m.a, m.b), (2, 2));
        assert_eq!(m.matchings, vec![vec![(0, 0), (1, 1)], vec![(0, 1), (1, 0)]]);
        let empty = BiasedGraph3::new([2, 2, 2], [false; 3], BTreeSet::new(), BTreeSet::new()).unwrap();
        assert!(empty.matching_structure().unwrap().matchings.iter().all(Vec::is_empty));
        let one = expansion_from_quasigroup(&Quasigroup::trivial());
        assert_eq!(one.matching_structure().unwrap().matchings, vec![vec![(0, 0)]]);
        let digon = BiasedGraph3::new([2, 0, 0], [false; 3], [(Pair::P12, 0, 1)].into_iter().collect(), BTreeSet::new()).unwrap();
        assert!(digon.matching_structure().is_err());
    }
}
