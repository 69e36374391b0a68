//! Extends a finite biased graph of order 3 to a finite biased expansion of
//! `K3` by growing its matching structure in stages.

pub mod matching;

use std::collections::BTreeSet;

use serde::Serialize;

use crate::biased::{BiasedGraph3, EdgeId, Node, Pair};
use crate::error::{Error, Result};
use matching::{one_factorization, Bipartite};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThickeningResult {
    #[serde(skip)]
    pub expansion: BiasedGraph3,
    /// Input link to expansion link. Indices are preserved in every fiber.
    pub inclusion: Vec<(EdgeId, EdgeId)>,
    pub gamma: usize,
    /// Fiber sizes after sorting, largest first.
    pub sorted_sizes: [usize; 3],
    pub tau: usize,
    /// `r(p + q) - tau` when `r > 0`, with `p >= q >= r`.
    pub bound: Option<usize>,
    pub stripped_half_edges: Vec<Node>,
}

/// Matchings on a growing bipartite graph, `m[k]` holding edges `(a, b)`.
struct Stages {
    n_a: usize,
    n_b: usize,
    m: Vec<Vec<(usize, usize)>>,
}

impl Stages {
    fn unmatched(&self, k: usize) -> (Vec<usize>, Vec<usize>) {
        let mut a_used = vec![false; self.n_a];
        let mut b_used = vec![false; self.n_b];
        for &(a, b) in &self.m[k] {
            a_used[a] = true;
            b_used[b] = true;
        }
        let free = |used: Vec<bool>| {
            used.iter()
                .enumerate()
                .filter(|(_, &u)| !u)
                .map(|(i, _)| i)
                .collect::<Vec<_>>()
        };
        (free(a_used), free(b_used))
    }

    fn first_stage(&mut self) {
        let (ua, ub) = self.unmatched(0);
        for a in ua {
            self.m[0].push((a, self.n_b));
            self.n_b += 1;
        }
        for b in ub {
            self.m[0].push((self.n_a, b));
            self.n_a += 1;
        }
    }

    /// Completes `m[k]` with `max(r, u)` new nodes on each side, giving every
    /// other matching a complete matching of the new nodes.
    fn later_stage(&mut self, k: usize, r: usize) -> Result<()> {
        let (ua, ub) = self.unmatched(k);
        if ua.len() != ub.len() {
            return Err(Error::Internal(format!(
                "matching {k} leaves {} and {} nodes unmatched",
                ua.len(),
                ub.len()
            )));
        }
        let u = ua.len();
        if u == 0 {
            return Ok(());
        }
        let s = r.max(u);
        let (base_a, base_b) = (self.n_a, self.n_b);
        self.n_a += s;
        self.n_b += s;
        for (j, &a) in ua.iter().enumerate() {
            self.m[k].push((a, base_b + j));
        }
        for (j, &b) in ub.iter().enumerate() {
            self.m[k].push((base_a + j, b));
        }
        for j in u..s {
            self.m[k].push((base_a + j, base_b + j));
        }
        // new-node part of m[k] extends to the diagonal matching; the rest of
        // K_{s,s} splits into s - 1 >= r - 1 perfect matchings
        let rest = Bipartite::new(
            s,
            s,
            (0..s).flat_map(|a| (0..s).filter(move |&b| b != a).map(move |b| (a, b))),
        )?;
        let factors = one_factorization(&rest)?;
        let others = (0..self.m.len()).filter(|&o| o != k);
        for (o, factor) in others.zip(factors) {
            for (a, &b) in factor.iter().enumerate() {
                self.m[o].push((base_a + a, base_b + b));
            }
        }
        Ok(())
    }
}

/// Embeds `omega` in a biased expansion `gamma K3`.
///
/// Half edges are dropped (they play no part in balance); balanced digons are
/// rejected. Fibers are sorted so that `p >= q >= r` before construction and
/// unsorted afterwards. Input edges keep their indices in the expansion.
pub fn thicken(omega: &BiasedGraph3) -> Result<ThickeningResult> {
    let report = omega.validate();
    if !report.valid {
        return Err(Error::precondition(format!(
            "graph violates the theta condition in {} theta subgraphs",
            report.violations.len()
        )));
    }
    if !omega.balanced_digons().is_empty() {
        return Err(Error::precondition(
            "balanced digons must be resolved before thickening",
        ));
    }
    let stripped_half_edges: Vec<Node> = Node::ALL
        .into_iter()
        .filter(|&v| omega.has_half_edge(v))
        .collect();
    let sizes = omega.sizes();
    let mut roles = [0usize, 1, 2];
    roles.sort_by_key(|&i| std::cmp::Reverse(sizes[i]));
    let [p, q, r] = roles.map(|i| sizes[i]);
    let tau = omega.balanced_triangles().len();

    // balanced triangles in role order (A, B, C)
    let to_roles = |t: [usize; 3]| [t[roles[0]], t[roles[1]], t[roles[2]]];
    let mut from_roles = [0usize; 3];
    for (slot, &orig) in roles.iter().enumerate() {
        from_roles[orig] = slot;
    }

    let (gamma, matchings) = if p == 0 {
        (1, vec![vec![(0, 0)]])
    } else if r == 0 {
        let factors = one_factorization(&Bipartite::complete(p, p))?;
        let m = factors
            .into_iter()
            .map(|f| f.into_iter().enumerate().collect())
            .collect();
        (p, m)
    } else {
        let mut st = Stages {
            n_a: p,
            n_b: q,
            m: vec![Vec::new(); r],
        };
        for &(a, b, c) in omega.balanced_triangles() {
            let [ra, rb, rc] = to_roles([a, b, c]);
            st.m[rc].push((ra, rb));
        }
        st.first_stage();
        for k in 1..r {
            st.later_stage(k, r)?;
        }
        if st.n_a != st.n_b {
            return Err(Error::Internal("node classes ended with different sizes".into()));
        }
        let gamma = st.n_a;
        let mut used = vec![vec![false; gamma]; gamma];
        for mk in &st.m {
            if mk.len() != gamma {
                return Err(Error::Internal("a staged matching is not complete".into()));
            }
            for &(a, b) in mk {
                if std::mem::replace(&mut used[a][b], true) {
                    return Err(Error::Internal("staged matchings overlap".into()));
                }
            }
        }
        let complement = Bipartite::new(
            gamma,
            gamma,
            (0..gamma).flat_map(|a| (0..gamma).map(move |b| (a, b))).filter(|&(a, b)| !used[a][b]),
        )?;
        let mut m = st.m;
        for f in one_factorization(&complement)? {
            m.push(f.into_iter().enumerate().collect());
        }
        (gamma, m)
    };

    let mut triangles = BTreeSet::new();
    for (c, mk) in matchings.iter().enumerate() {
        for &(a, b) in mk {
            let role = [a, b, c];
            triangles.insert((role[from_roles[0]], role[from_roles[1]], role[from_roles[2]]));
        }
    }
    let expansion = BiasedGraph3::new([gamma; 3], [false; 3], BTreeSet::new(), triangles)?;
    let inclusion = omega
        .links()
        .map(|e| (e, e))
        .collect();
    Ok(ThickeningResult {
        expansion,
        inclusion,
        gamma,
        sorted_sizes: [p, q, r],
        tau,
        bound: (r > 0).then(|| r * (p + q) - tau),
        stripped_half_edges,
    })
}

/// Whether the inclusion in a thickening is injective, fiber-preserving and
/// keeps balanced triangles balanced and unbalanced ones unbalanced.
pub fn inclusion_preserves_balance(omega: &BiasedGraph3, res: &ThickeningResult) -> bool {
    let map: std::collections::BTreeMap<EdgeId, EdgeId> = res.inclusion.iter().copied().collect();
    if map.len() != res.inclusion.len() {
        return false;
    }
    let images: BTreeSet<EdgeId> = map.values().copied().collect();
    if images.len() != map.len() || omega.links().any(|e| !map.contains_key(&e)) {
        return false;
    }
    let fiber = |e: EdgeId| match e {
        EdgeId::Link(p, _) => Some(p),
        EdgeId::Half(_) => None,
    };
    if map.iter().any(|(a, b)| fiber(*a) != fiber(*b) || !res.expansion.contains_edge(*b)) {
        return false;
    }
    let idx = |e: EdgeId| match e {
        EdgeId::Link(_, i) => i,
        EdgeId::Half(_) => usize::MAX,
    };
    let img = |p: Pair, i: usize| idx(map[&EdgeId::Link(p, i)]);
    let [p, q, r] = omega.sizes();
    (0..p).all(|a| {
        (0..q).all(|b| {
            (0..r).all(|c| {
                omega.balanced_triangles().contains(&(a, b, c))
                    == res.expansion.balanced_triangles().contains(&(
                        img(Pair::P12, a),
                        img(Pair::P23, b),
                        img(Pair::P13, c),
                    ))
            })
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Quasigroup;
    use crate::biased::expansion_from_quasigroup;

    fn graph(sizes: [usize; 3], tri: &[(usize, usize, usize)]) -> BiasedGraph3 {
        BiasedGraph3::new(sizes, [false; 3], BTreeSet::new(), tri.iter().copied().collect()).unwrap()
    }

    #[test]
    fn expansion_is_kept() {
        let z3 = expansion_from_quasigroup(&Quasigroup::cyclic(3));
        let res = thicken(&z3).unwrap();
        assert_eq!(res.gamma, 3);
        assert_eq!(res.expansion, z3);
        assert!(res.inclusion.iter().all(|(a, b)| a == b));
    }

    #[test]
    fn no_third_fiber_pads_and_factorizes() {
        let g = graph([2, 1, 0], &[]);
        let res = thicken(&g).unwrap();
        assert_eq!(res.gamma, 2);
        assert_eq!(res.bound, None);
        assert!(res.expansion.is_biased_expansion());
        assert!(inclusion_preserves_balance(&g, &res));
    }

    #[test]
    fn triangle_with_extra_parallel_edge_meets_bound() {
        let g = graph([2, 1, 1], &[(0, 0, 0)]);
        let res = thicken(&g).unwrap();
        assert_eq!(res.bound, Some(2));
        assert!(res.gamma <= 2);
        assert!(res.expansion.is_biased_expansion());
        assert!(inclusion_preserves_balance(&g, &res));
    }

    #[test]
    fn sorting_roles_unsorts_the_output() {
        // largest fiber is E13
        let g = graph([1, 2, 3], &[(0, 1, 2), (0, 0, 0)]);
        let res = thicken(&g).unwrap();
        assert_eq!(res.sorted_sizes, [3, 2, 1]);
        assert!(res.expansion.is_biased_expansion());
        assert!(inclusion_preserves_balance(&g, &res));
        assert!(res.gamma <= res.bound.unwrap());
    }

    #[test]
    fn empty_graph_gives_trivial_expansion() {
        let res = thicken(&graph([0, 0, 0], &[])).unwrap();
        assert_eq!(res.gamma, 1);
        assert!(res.expansion.is_biased_expansion());
    }

    #[test]
    fn half_edges_are_stripped_and_digons_rejected() {
        let g = graph([1, 1, 1], &[]).full();
        let res = thicken(&g).unwrap();
        assert_eq!(res.stripped_half_edges, Node::ALL.to_vec());
        let d = BiasedGraph3::new([2, 0, 0], [false; 3], [(Pair::P12, 0, 1)].into_iter().collect(), BTreeSet::new()).unwrap();
        assert!(thicken(&d).is_err());
        let bad = graph([2, 1, 1], &[(0, 0, 0), (1, 0, 0)]);
        assert!(thicken(&bad).is_err());
    }

    #[test]
    fn no_edges_added_among_original_nodes() {
        let g = graph([3, 3, 2], &[(0, 0, 0), (1, 2, 1)]);
        let res = thicken(&g).unwrap();
        for &(a, b, c) in res.expansion.balanced_triangles() {
            if a < 3 && b < 3 && c < 2 {
                assert!(g.balanced_triangles().contains(&(a, b, c)));
            }
        }
    }
}
