//! Maximum bipartite matching by augmenting paths, and 1-factorization of
//! regular bipartite graphs.

use crate::error::{Error, Result};

/// A bipartite graph with `left` and `right` parts; `adj[i]` lists the right
/// neighbours of left node `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartite {
    pub left: usize,
    pub right: usize,
    pub adj: Vec<Vec<usize>>,
}

impl Bipartite {
    pub fn new(left: usize, right: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); left];
        for (a, b) in edges {
            if a >= left || b >= right {
                return Err(Error::input(format!("edge ({a}, {b}) outside parts {left} + {right}")));
            }
            adj[a].push(b);
        }
        for row in adj.iter_mut() {
            row.sort_unstable();
            row.dedup();
        }
        Ok(Bipartite { left, right, adj })
    }

    pub fn complete(left: usize, right: usize) -> Self {
        Bipartite {
            left,
            right,
            adj: vec![(0..right).collect(); left],
        }
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    pub fn remove_edge(&mut self, a: usize, b: usize) {
        self.adj[a].retain(|&x| x != b);
    }
}

/// A maximum matching as `mate[i] = Some(j)` for matched left nodes. Left
/// nodes are processed in index order and neighbours are tried in ascending
/// order, so the result is deterministic.
pub fn max_matching(g: &Bipartite) -> Vec<Option<usize>> {
    let mut right_mate = vec![usize::MAX; g.right];
    let mut seen = vec![false; g.right];
    for a in 0..g.left {
        seen.iter_mut().for_each(|s| *s = false);
        augment(g, a, &mut right_mate, &mut seen);
    }
    let mut mate = vec![None; g.left];
    for (b, &a) in right_mate.iter().enumerate() {
        if a != usize::MAX {
            mate[a] = Some(b);
        }
    }
    mate
}

fn augment(g: &Bipartite, a: usize, right_mate: &mut [usize], seen: &mut [bool]) -> bool {
    for &b in &g.adj[a] {
        if seen[b] {
            continue;
        }
        seen[b] = true;
        if right_mate[b] == usize::MAX || augment(g, right_mate[b], right_mate, seen) {
            right_mate[b] = a;
            return true;
        }
    }
    false
}

/// Splits a `d`-regular bipartite graph on equal parts into `d` perfect
/// matchings, each returned as `m[i] = j`.
pub fn one_factorization(g: &Bipartite) -> Result<Vec<Vec<usize>>> {
    if g.left != g.right {
        return Err(Error::precondition(format!(
            "parts have sizes {} and {}",
            g.left, g.right
        )));
    }
    let d = g.adj.first().map_or(0, Vec::len);
    let mut right_deg = vec![0usize; g.right];
    for (a, row) in g.adj.iter().enumerate() {
        if row.len() != d {
            return Err(Error::precondition(format!("left node {a} has degree {}, expected {d}", row.len())));
        }
        for &b in row {
            right_deg[b] += 1;
        }
    }
    if let Some(b) = right_deg.iter().position(|&x| x != d) {
        return Err(Error::precondition(format!("right node {b} has degree {}, expected {d}", right_deg[b])));
    }
    let mut rest = g.clone();
    let mut factors = Vec::with_capacity(d);
    for _ in 0..d {
        let mate = max_matching(&rest);
        let factor: Vec<usize> = mate
            .into_iter()
            .map(|m| m.expect("regular bipartite graphs have perfect matchings"))
            .collect();
        for (a, &b) in factor.iter().enumerate() {
            rest.remove_edge(a, b);
        }
        factors.push(factor);
    }
    Ok(factors)
}
