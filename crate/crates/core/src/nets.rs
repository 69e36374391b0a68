//! Labelled 3-nets and partial 3-nets, and their correspondence with biased
//! expansions of `K3`.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::algebra::{Isotopism, Quasigroup};
use crate::biased::{BiasedGraph3, Pair};
use crate::error::{Error, Result};

/// A 3-net with `n` lines in each pencil (named 12, 23, 13). A point is the
/// triple of lines through it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Net3 {
    n: usize,
    points: BTreeSet<(usize, usize, usize)>,
}

impl Net3 {
    /// Checks that any two lines from distinct pencils share exactly one point.
    pub fn new(n: usize, points: BTreeSet<(usize, usize, usize)>) -> Result<Self> {
        if let Some(&bad) = points.iter().find(|&&(a, b, c)| a >= n || b >= n || c >= n) {
            return Err(Error::input(format!("point {bad:?} uses a line out of range 0..{n}")));
        }
        let mut count = [vec![0u32; n * n], vec![0u32; n * n], vec![0u32; n * n]];
        for &(a, b, c) in &points {
            count[0][a * n + b] += 1;
            count[1][b * n + c] += 1;
            count[2][a * n + c] += 1;
        }
        for (i, name) in ["12/23", "23/13", "12/13"].iter().enumerate() {
            if let Some(pos) = count[i].iter().position(|&k| k != 1) {
                return Err(Error::precondition(format!(
                    "lines {} and {} of pencils {name} meet in {} points",
                    pos / n,
                    pos % n,
                    count[i][pos]
                )));
            }
        }
        Ok(Net3 { n, points })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &BTreeSet<(usize, usize, usize)> {
        &self.points
    }

    /// `g * h = k` exactly when lines 12(g), 23(h), 13(k) share a point.
    pub fn quasigroup(&self) -> Quasigroup {
        let n = self.n;
        let mut rows = vec![vec![0; n]; n];
        for &(a, b, c) in &self.points {
            rows[a][b] = c;
        }
        Quasigroup::from_rows(rows).expect("net invariants give a Latin square")
    }

    /// Relabels the three pencils by `alpha`, `beta`, `gamma`.
    pub fn relabel(&self, iso: &Isotopism) -> Result<Net3> {
        if [&iso.alpha, &iso.beta, &iso.gamma].iter().any(|m| m.len() != self.n) {
            return Err(Error::input("relabelling has the wrong size"));
        }
        let points = self
            .points
            .iter()
            .map(|&(a, b, c)| (iso.alpha[a], iso.beta[b], iso.gamma[c]))
            .collect();
        Net3::new(self.n, points)
    }
}

pub fn net_from_quasigroup(q: &Quasigroup) -> Net3 {
    let n = q.order();
    let points = (0..n).flat_map(|g| (0..n).map(move |h| (g, h, q.op(g, h)))).collect();
    Net3 { n, points }
}

/// The biased expansion whose balanced triangles are the points of `net`.
pub fn expansion_from_net(net: &Net3) -> BiasedGraph3 {
    BiasedGraph3::new([net.n; 3], [false; 3], BTreeSet::new(), net.points.clone())
        .expect("net points index existing edges")
}

/// The 3-net of a biased expansion without half edges.
pub fn net_from_expansion(omega: &BiasedGraph3) -> Result<Net3> {
    if !omega.is_biased_expansion() {
        return Err(Error::precondition("graph is not a biased expansion of K3"));
    }
    if omega.half_edges().iter().any(|&h| h) {
        return Err(Error::precondition("half edges have no counterpart in a net"));
    }
    Net3::new(omega.size(Pair::P12), omega.balanced_triangles().clone())
}

/// Main lines are the fibers, points are edges `(fiber, index)`, short lines
/// are balanced triangles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartialNet3 {
    /// Points on main lines 12, 23, 13.
    pub main_sizes: [usize; 3],
    /// Short lines as the point they take from each main line.
    pub short_lines: Vec<(usize, usize, usize)>,
}

impl PartialNet3 {
    pub fn point_count(&self) -> usize {
        self.main_sizes.iter().sum()
    }

    /// Each short line has one point on every main line, indices in range, and
    /// two short lines share at most one point.
    pub fn is_valid(&self) -> bool {
        let [p, q, r] = self.main_sizes;
        if self.short_lines.iter().any(|&(a, b, c)| a >= p || b >= q || c >= r) {
            return false;
        }
        self.short_lines.iter().enumerate().all(|(i, &(a, b, c))| {
            self.short_lines[i + 1..]
                .iter()
                .all(|&(x, y, z)| usize::from(a == x) + usize::from(b == y) + usize::from(c == z) <= 1)
        })
    }

    /// Short lines through one point on each main line.
    pub fn incidences(&self) -> Vec<[(Pair, usize); 3]> {
        self.short_lines
            .iter()
            .map(|&(a, b, c)| [(Pair::P12, a), (Pair::P23, b), (Pair::P13, c)])
            .collect()
    }
}

pub fn partial_net_from_biased(omega: &BiasedGraph3) -> Result<PartialNet3> {
    let report = omega.validate();
    if !report.valid {
        return Err(Error::precondition("graph violates the theta condition"));
    }
    if omega.half_edges().iter().any(|&h| h) {
        return Err(Error::precondition("half edges have no counterpart in a partial net"));
    }
    if !omega.balanced_digons().is_empty() {
        return Err(Error::precondition("balanced digons would put two points on one short line twice"));
    }
    let net = PartialNet3 {
        main_sizes: omega.sizes(),
        short_lines: omega.balanced_triangles().iter().copied().collect(),
    };
    debug_assert!(net.is_valid());
    Ok(net)
}

/// A sub-3-net: the lines kept from each pencil and the net they form, with
/// line `i` of the subnet being line `lines[pencil][i]` of the parent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Subnet {
    pub lines: [Vec<usize>; 3],
    pub net: Net3,
}

fn close(q: &Quasigroup, mut sets: [BTreeSet<usize>; 3]) -> [BTreeSet<usize>; 3] {
    loop {
        let mut grew = false;
        let [r, c, k] = &sets;
        let mut add = [Vec::new(), Vec::new(), Vec::new()];
        for &a in r {
            for &b in c {
                add[2].push(q.op(a, b));
            }
            for &z in k {
                add[1].push(q.left_div(a, z));
            }
        }
        for &b in c {
            for &z in k {
                add[0].push(q.right_div(z, b));
            }
        }
        for (set, new) in sets.iter_mut().zip(add) {
            for x in new {
                grew |= set.insert(x);
            }
        }
        if !grew {
            return sets;
        }
    }
}

/// All sub-3-nets, i.e. the spanning connected balance-closed subgraphs of the
/// expansion, which are the Latin subsquares of the net's quasigroup.
/// Ordered by size, then by line sets.
pub fn subnets(net: &Net3) -> Vec<Subnet> {
    let q = net.quasigroup();
    let n = net.n;
    let mut seen: BTreeSet<[Vec<usize>; 3]> = BTreeSet::new();
    let mut queue = VecDeque::new();
    for &(a, b, c) in &net.points {
        let s = close(&q, [[a].into(), [b].into(), [c].into()]);
        let key = s.clone().map(|x| x.into_iter().collect::<Vec<_>>());
        if seen.insert(key) {
            queue.push_back(s);
        }
    }
    while let Some(s) = queue.pop_front() {
        for g in (0..n).filter(|g| !s[0].contains(g)) {
            let mut t = s.clone();
            t[0].insert(g);
            let t = close(&q, t);
            let key = t.clone().map(|x| x.into_iter().collect::<Vec<_>>());
            if seen.insert(key) {
                queue.push_back(t);
            }
        }
    }
    let mut out: Vec<Subnet> = seen
        .into_iter()
        .map(|lines| {
            let m = lines[0].len();
            let mut points = BTreeSet::new();
            for (i, &a) in lines[0].iter().enumerate() {
                for (j, &b) in lines[1].iter().enumerate() {
                    let c = q.op(a, b);
                    let k = lines[2].binary_search(&c).expect("closed");
                    points.insert((i, j, k));
                }
            }
            let net = Net3::new(m, points).expect("closed line sets form a subnet");
            Subnet { lines, net }
        })
        .collect();
    out.sort_by(|a, b| a.net.n.cmp(&b.net.n).then_with(|| a.lines.cmp(&b.lines)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{is_isotopic, loop_isotope_at};
    use crate::biased::expansion_from_quasigroup;
    use rand::SeedableRng;

    #[test]
    fn sizes() {
        assert_eq!(net_from_quasigroup(&Quasigroup::cyclic(2)).points().len(), 4);
        assert_eq!(net_from_quasigroup(&Quasigroup::trivial()).points().len(), 1);
        let z3 = Quasigroup::cyclic(3);
        let n = net_from_quasigroup(&z3);
        assert_eq!(n.points().len(), 9);
        assert!(n.points().iter().all(|&(g, h, k)| k == (g + h) % 3));
    }

    #[test]
    fn round_trips() {
        let q = Quasigroup::cyclic(2);
        assert_eq!(expansion_from_net(&net_from_quasigroup(&q)), expansion_from_quasigroup(&q));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for n in 1..=6 {
            let q = crate::random::random_latin_square(n, &mut rng);
            let net = net_from_quasigroup(&q);
            assert_eq!(net_from_expansion(&expansion_from_net(&net)).unwrap(), net);
            let om = expansion_from_quasigroup(&q);
            assert_eq!(expansion_from_net(&net_from_expansion(&om).unwrap()), om);
            assert_eq!(net.quasigroup(), q);
        }
    }

    #[test]
    fn bad_nets_are_rejected() {
        assert!(Net3::new(2, [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 1)].into()).is_err());
        assert!(Net3::new(2, [(0, 0, 0)].into()).is_err());
        assert!(Net3::new(1, [(0, 0, 1)].into()).is_err());
    }

    #[test]
    fn partial_nets() {
        let z2 = expansion_from_quasigroup(&Quasigroup::cyclic(2));
        let p = partial_net_from_biased(&z2).unwrap();
        assert_eq!((p.point_count(), p.short_lines.len()), (6, 4));
        let g = BiasedGraph3::new([1, 1, 0], [false; 3], BTreeSet::new(), BTreeSet::new()).unwrap();
        let p = partial_net_from_biased(&g).unwrap();
        assert_eq!((p.point_count(), p.short_lines.len()), (2, 0));
        let g = BiasedGraph3::new([2, 2, 2], [false; 3], BTreeSet::new(), [(0, 1, 1)].into()).unwrap();
        let p = partial_net_from_biased(&g).unwrap();
        assert_eq!((p.point_count(), p.short_lines.len()), (6, 1));
        assert!(p.is_valid());
        let d = BiasedGraph3::new([2, 0, 0], [false; 3], [(Pair::P12, 0, 1)].into(), BTreeSet::new()).unwrap();
        assert!(partial_net_from_biased(&d).is_err());
    }

    fn size_profile(net: &Net3) -> Vec<(usize, usize)> {
        let mut m = std::collections::BTreeMap::new();
        for s in subnets(net) {
            *m.entry(s.net.order()).or_insert(0) += 1;
        }
        m.into_iter().collect()
    }

    #[test]
    fn subnet_counts() {
        assert_eq!(size_profile(&net_from_quasigroup(&Quasigroup::trivial())), vec![(1, 1)]);
        // the four single points and the whole net
        assert_eq!(size_profile(&net_from_quasigroup(&Quasigroup::cyclic(2))), vec![(1, 4), (2, 1)]);
        assert_eq!(
            size_profile(&net_from_quasigroup(&Quasigroup::cyclic(4))),
            vec![(1, 16), (2, 4), (4, 1)]
        );
        assert_eq!(
            size_profile(&net_from_quasigroup(&Quasigroup::klein_four())),
            vec![(1, 16), (2, 12), (4, 1)]
        );
    }

    #[test]
    fn subnets_are_subloops_of_isotopes() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for n in [4, 5, 6] {
            let q = crate::random::random_latin_square(n, &mut rng);
            for s in subnets(&net_from_quasigroup(&q)) {
                let (a, b) = (s.lines[0][0], s.lines[1][0]);
                let (lp, iso) = loop_isotope_at(&q, a, b);
                let image: BTreeSet<usize> = s.lines[0].iter().map(|&x| iso.alpha[x]).collect();
                assert!(lp.quasigroup().is_subquasigroup(&image));
                assert!(image.contains(&lp.identity()));
                let again: BTreeSet<usize> = s.lines[1].iter().map(|&y| iso.beta[y]).collect();
                assert_eq!(image, again);
            }
        }
    }

    #[test]
    fn isotopic_quasigroups_give_isomorphic_nets() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for n in 1..=5 {
            let q = crate::random::random_latin_square(n, &mut rng);
            let r = crate::random::random_latin_square(n, &mut rng);
            if let Some(iso) = is_isotopic(&q, &r) {
                assert_eq!(net_from_quasigroup(&q).relabel(&iso).unwrap(), net_from_quasigroup(&r));
            }
            let (lp, iso) = loop_isotope_at(&q, 0, 0);
            assert_eq!(net_from_quasigroup(&q).relabel(&iso).unwrap(), net_from_quasigroup(lp.quasigroup()));
        }
    }
}
