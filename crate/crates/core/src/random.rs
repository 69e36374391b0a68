//! Seeded generators for test inputs: Latin squares and order-3 biased graphs.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::Quasigroup;
use crate::biased::{BiasedGraph3, Node, Pair};

/// A random Latin square built row by row, each row a random perfect matching
/// between columns and the symbols still free in that column.
pub fn random_latin_square<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Quasigroup {
    assert!(n > 0);
    let mut col_used = vec![vec![false; n]; n];
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let mut cols: Vec<usize> = (0..n).collect();
        cols.shuffle(rng);
        let mut symbols: Vec<usize> = (0..n).collect();
        symbols.shuffle(rng);
        // match_sym[s] = column currently holding symbol s
        let mut match_sym = vec![usize::MAX; n];
        for &c in &cols {
            let mut seen = vec![false; n];
            let ok = augment(c, &col_used, &symbols, &mut match_sym, &mut seen);
            debug_assert!(ok, "a Latin rectangle always extends by a row");
        }
        let mut row = vec![0; n];
        for (s, &c) in match_sym.iter().enumerate() {
            row[c] = s;
            col_used[c][s] = true;
        }
        rows.push(row);
    }
    Quasigroup::from_rows(rows).expect("construction yields a Latin square")
}

fn augment(
    c: usize,
    col_used: &[Vec<bool>],
    symbols: &[usize],
    match_sym: &mut [usize],
    seen: &mut [bool],
) -> bool {
    for &s in symbols {
        if col_used[c][s] || seen[s] {
            continue;
        }
        seen[s] = true;
        if match_sym[s] == usize::MAX || augment(match_sym[s], col_used, symbols, match_sym, seen) {
            match_sym[s] = c;
            return true;
        }
    }
    false
}

/// A random biased graph of order 3 satisfying the theta condition, with no
/// balanced digons. Each cell `(a, b)` of the `p x q` grid receives a balanced
/// triangle with probability `density`, choosing a third edge that keeps the
/// triangles a partial Latin rectangle.
pub fn random_biased_graph<R: Rng + ?Sized>(
    p: usize,
    q: usize,
    r: usize,
    density: f64,
    half_edges: bool,
    rng: &mut R,
) -> BiasedGraph3 {
    let mut row_used = vec![vec![false; r]; p];
    let mut col_used = vec![vec![false; r]; q];
    let mut triangles = BTreeSet::new();
    for a in 0..p {
        for b in 0..q {
            if r == 0 || !rng.gen_bool(density) {
                continue;
            }
            let free: Vec<usize> = (0..r).filter(|&c| !row_used[a][c] && !col_used[b][c]).collect();
            if let Some(&c) = free.choose(rng) {
                row_used[a][c] = true;
                col_used[b][c] = true;
                triangles.insert((a, b, c));
            }
        }
    }
    let mut g = BiasedGraph3::new([p, q, r], [false; 3], BTreeSet::new(), triangles)
        .expect("indices are in range");
    if half_edges {
        for node in Node::ALL {
            if rng.gen_bool(0.5) {
                g = g.with_half_edge(node);
            }
        }
    }
    g
}

/// Like [`random_biased_graph`] but also joins parallel edges into balanced
/// digon classes; triangles are then made consistent with the classes.
pub fn random_biased_graph_with_digons<R: Rng + ?Sized>(
    sizes: [usize; 3],
    density: f64,
    rng: &mut R,
) -> BiasedGraph3 {
    // class[pair][i]: representative of the balanced-digon class of edge i
    let mut class: Vec<Vec<usize>> = sizes
        .iter()
        .map(|&s| {
            let mut c: Vec<usize> = (0..s).collect();
            for i in 1..s {
                if rng.gen_bool(0.3) {
                    c[i] = c[rng.gen_range(0..i)];
                }
            }
            c
        })
        .collect();
    for c in class.iter_mut() {
        for i in 0..c.len() {
            c[i] = c[c[i]];
        }
    }
    let reps = |pair: usize| -> Vec<usize> {
        let set: BTreeSet<usize> = class[pair].iter().copied().collect();
        set.into_iter().collect()
    };
    let inner = random_biased_graph(reps(0).len(), reps(1).len(), reps(2).len(), density, false, rng);
    let (r0, r1, r2) = (reps(0), reps(1), reps(2));
    let mut triangles = BTreeSet::new();
    for &(a, b, c) in inner.balanced_triangles() {
        for x in (0..sizes[0]).filter(|&x| class[0][x] == r0[a]) {
            for y in (0..sizes[1]).filter(|&y| class[1][y] == r1[b]) {
                for z in (0..sizes[2]).filter(|&z| class[2][z] == r2[c]) {
                    triangles.insert((x, y, z));
                }
            }
        }
    }
    let mut digons = BTreeSet::new();
    for (pi, pair) in Pair::ALL.iter().enumerate() {
        for i in 0..sizes[pi] {
            for j in i + 1..sizes[pi] {
                if class[pi][i] == class[pi][j] {
                    digons.insert((*pair, i, j));
                }
            }
        }
    }
    BiasedGraph3::new(sizes, [false; 3], digons, triangles).expect("indices are in range")
}
