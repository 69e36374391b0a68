//! Quasigroups, loops, conjugates, isotopy and subloop-monomorphism search.
//!
//! Elements are the integers `0..n`. A [`Quasigroup`] stores its Cayley table
//! together with both division tables so that left and right division are
//! constant-time lookups.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Returns whether a square table is a Latin square.
///
/// Errors when the table is not square or has an entry outside `0..n`.
pub fn is_latin(rows: &[Vec<usize>]) -> Result<bool> {
    let n = rows.len();
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::input(format!(
                "row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        if let Some(&bad) = row.iter().find(|&&v| v >= n) {
            return Err(Error::input(format!("entry {bad} in row {i} is out of range 0..{n}")));
        }
    }
    let mut seen = vec![false; n];
    for row in rows {
        seen.iter_mut().for_each(|s| *s = false);
        for &v in row {
            if std::mem::replace(&mut seen[v], true) {
                return Ok(false);
            }
        }
    }
    for col in 0..n {
        seen.iter_mut().for_each(|s| *s = false);
        for row in rows {
            if std::mem::replace(&mut seen[row[col]], true) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Serialized as its rows.
impl Serialize for Quasigroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quasigroup {
    n: usize,
    table: Vec<usize>,
    // ldiv[a * n + c] = y such that a * y = c
    ldiv: Vec<usize>,
    // rdiv[b * n + c] = x such that x * b = c
    rdiv: Vec<usize>,
}

impl fmt::Debug for Quasigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Quasigroup")
            .field("n", &self.n)
            .field("rows", &self.rows())
            .finish()
    }
}

impl Quasigroup {
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::input("a quasigroup needs at least one element"));
        }
        if !is_latin(&rows)? {
            return Err(Error::input("table is not a Latin square"));
        }
        let n = rows.len();
        let table: Vec<usize> = rows.into_iter().flatten().collect();
        Ok(Self::from_table_unchecked(n, table))
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        Self::from_rows(
            (0..n)
                .map(|x| (0..n).map(|y| f(x, y)).collect())
                .collect(),
        )
    }

    fn from_table_unchecked(n: usize, table: Vec<usize>) -> Self {
        let mut ldiv = vec![0; n * n];
        let mut rdiv = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let z = table[x * n + y];
                ldiv[x * n + z] = y;
                rdiv[y * n + z] = x;
            }
        }
        Quasigroup {
            n,
            table,
            ldiv,
            rdiv,
        }
    }

    /// The cyclic group `Z_n` written additively.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order 0");
        let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        Self::from_table_unchecked(n, table)
    }

    /// The Klein four-group, elements encoded as 2-bit vectors under xor.
    pub fn klein_four() -> Self {
        let table = (0..16).map(|i| (i / 4) ^ (i % 4)).collect();
        Self::from_table_unchecked(4, table)
    }

    pub fn trivial() -> Self {
        Self::from_table_unchecked(1, vec![0])
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x * self.n + y]
    }

    /// The unique `y` with `a * y = c`.
    #[inline]
    pub fn left_div(&self, a: usize, c: usize) -> usize {
        self.ldiv[a * self.n + c]
    }

    /// The unique `x` with `x * b = c`.
    #[inline]
    pub fn right_div(&self, c: usize, b: usize) -> usize {
        self.rdiv[b * self.n + c]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    pub fn opposite(&self) -> Self {
        let n = self.n;
        let table = (0..n * n).map(|i| self.op(i % n, i / n)).collect();
        Self::from_table_unchecked(n, table)
    }

    pub fn is_trivial(&self) -> bool {
        self.n == 1
    }

    /// Two-sided identity, if one exists.
    pub fn identity(&self) -> Option<usize> {
        (0..self.n).find(|&e| (0..self.n).all(|x| self.op(e, x) == x && self.op(x, e) == x))
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.op(x, x) == x).collect()
    }

    pub fn is_associative(&self) -> bool {
        let n = self.n;
        (0..n).all(|x| {
            (0..n).all(|y| (0..n).all(|z| self.op(self.op(x, y), z) == self.op(x, self.op(y, z))))
        })
    }

    pub fn is_subquasigroup(&self, set: &BTreeSet<usize>) -> bool {
        !set.is_empty()
            && set
                .iter()
                .all(|&x| set.iter().all(|&y| set.contains(&self.op(x, y))))
    }

    /// Restricts the operation to a closed subset. Element `i` of the result is
    /// `labels[i]` here.
    pub fn restrict(&self, set: &BTreeSet<usize>) -> Result<(Quasigroup, Vec<usize>)> {
        if !self.is_subquasigroup(set) {
            return Err(Error::precondition("subset is not closed under the operation"));
        }
        let labels: Vec<usize> = set.iter().copied().collect();
        let index = |v: usize| labels.binary_search(&v).expect("closed subset");
        let m = labels.len();
        let table = (0..m * m)
            .map(|i| index(self.op(labels[i / m], labels[i % m])))
            .collect();
        Ok((Self::from_table_unchecked(m, table), labels))
    }

    /// Relabels the table by an isotopism: the result `R` satisfies
    /// `gamma(self[x][y]) = R[alpha(x)][beta(y)]`.
    pub fn isotope(&self, iso: &Isotopism) -> Result<Quasigroup> {
        iso.check_order(self.n)?;
        let n = self.n;
        let mut table = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                table[iso.alpha[x] * n + iso.beta[y]] = iso.gamma[self.op(x, y)];
            }
        }
        Ok(Self::from_table_unchecked(n, table))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Loop {
    base: Quasigroup,
    identity: usize,
}

impl Loop {
    pub fn new(base: Quasigroup, identity: usize) -> Result<Self> {
        let n = base.order();
        if identity >= n {
            return Err(Error::input(format!("identity {identity} out of range 0..{n}")));
        }
        if let Some(x) = (0..n).find(|&x| base.op(identity, x) != x || base.op(x, identity) != x) {
            return Err(Error::precondition(format!(
                "{identity} is not a two-sided identity (fails at {x})"
            )));
        }
        Ok(Loop { base, identity })
    }

    /// Uses the table's identity element, failing if it has none.
    pub fn from_quasigroup(base: Quasigroup) -> Result<Self> {
        let e = base
            .identity()
            .ok_or_else(|| Error::precondition("quasigroup has no identity element"))?;
        Ok(Loop { base, identity: e })
    }

    pub fn trivial() -> Self {
        Loop {
            base: Quasigroup::trivial(),
            identity: 0,
        }
    }

    pub fn cyclic(n: usize) -> Self {
        Loop {
            base: Quasigroup::cyclic(n),
            identity: 0,
        }
    }

    pub fn klein_four() -> Self {
        Loop {
            base: Quasigroup::klein_four(),
            identity: 0,
        }
    }

    #[inline]
    pub fn quasigroup(&self) -> &Quasigroup {
        &self.base
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.base.order()
    }

    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.base.op(x, y)
    }

    pub fn into_quasigroup(self) -> Quasigroup {
        self.base
    }
}

/// A permutation of the roles `(x, y, z)` in the defining equation `x * y = z`.
///
/// `Conjugacy([a, b, c])` sends a solution triple `t` of the original table to
/// the triple `(t[a], t[b], t[c])` of the conjugate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Conjugacy(pub [usize; 3]);

impl Conjugacy {
    pub const IDENTITY: Conjugacy = Conjugacy([0, 1, 2]);
    pub const OPPOSITE: Conjugacy = Conjugacy([1, 0, 2]);

    pub const ALL: [Conjugacy; 6] = [
        Conjugacy([0, 1, 2]),
        Conjugacy([1, 0, 2]),
        Conjugacy([0, 2, 1]),
        Conjugacy([2, 1, 0]),
        Conjugacy([1, 2, 0]),
        Conjugacy([2, 0, 1]),
    ];

    pub fn inverse(self) -> Conjugacy {
        let mut inv = [0; 3];
        for (i, &s) in self.0.iter().enumerate() {
            inv[s] = i;
        }
        Conjugacy(inv)
    }

    pub fn name(self) -> &'static str {
        match self.0 {
            [0, 1, 2] => "xyz",
            [1, 0, 2] => "yxz",
            [0, 2, 1] => "xzy",
            [2, 1, 0] => "zyx",
            [1, 2, 0] => "yzx",
            [2, 0, 1] => "zxy",
            _ => "invalid",
        }
    }

    fn is_valid(self) -> bool {
        let mut seen = [false; 3];
        self.0.iter().all(|&s| s < 3 && !std::mem::replace(&mut seen[s], true))
    }
}

/// The parastrophe of `q` under a role permutation.
pub fn conjugate(q: &Quasigroup, sigma: Conjugacy) -> Result<Quasigroup> {
    if !sigma.is_valid() {
        return Err(Error::input(format!("{:?} is not a permutation of three roles", sigma.0)));
    }
    let n = q.order();
    let mut table = vec![usize::MAX; n * n];
    for x in 0..n {
        for y in 0..n {
            let t = [x, y, q.op(x, y)];
            table[t[sigma.0[0]] * n + t[sigma.0[1]]] = t[sigma.0[2]];
        }
    }
    Ok(Quasigroup::from_table_unchecked(n, table))
}

/// Three bijections `alpha, beta, gamma` on `0..n`, read as an isotopism from
/// `Q` to `Q'` when `gamma(Q[x][y]) = Q'[alpha(x)][beta(y)]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Isotopism {
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
    pub gamma: Vec<usize>,
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter()
        .all(|&v| v < p.len() && !std::mem::replace(&mut seen[v], true))
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &v) in p.iter().enumerate() {
        inv[v] = i;
    }
    inv
}

impl Isotopism {
    pub fn identity(n: usize) -> Self {
        let id: Vec<usize> = (0..n).collect();
        Isotopism {
            alpha: id.clone(),
            beta: id.clone(),
            gamma: id,
        }
    }

    /// The isotopism `(phi, phi, phi)` of an isomorphism.
    pub fn from_isomorphism(phi: Vec<usize>) -> Self {
        Isotopism {
            alpha: phi.clone(),
            beta: phi.clone(),
            gamma: phi,
        }
    }

    fn check_order(&self, n: usize) -> Result<()> {
        for (name, p) in [("alpha", &self.alpha), ("beta", &self.beta), ("gamma", &self.gamma)] {
            if p.len() != n || !is_permutation(p) {
                return Err(Error::input(format!("{name} is not a permutation of 0..{n}")));
            }
        }
        Ok(())
    }

    pub fn is_valid_between(&self, from: &Quasigroup, to: &Quasigroup) -> bool {
        let n = from.order();
        if to.order() != n || self.check_order(n).is_err() {
            return false;
        }
        (0..n).all(|x| {
            (0..n).all(|y| self.gamma[from.op(x, y)] == to.op(self.alpha[x], self.beta[y]))
        })
    }

    pub fn inverse(&self) -> Self {
        Isotopism {
            alpha: invert(&self.alpha),
            beta: invert(&self.beta),
            gamma: invert(&self.gamma),
        }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Isotopism) -> Self {
        let compose = |a: &[usize], b: &[usize]| a.iter().map(|&v| b[v]).collect();
        Isotopism {
            alpha: compose(&self.alpha, &next.alpha),
            beta: compose(&self.beta, &next.beta),
            gamma: compose(&self.gamma, &next.gamma),
        }
    }
}

/// The principal loop isotope `x o y = (x / b) * (a \ y)`, whose identity is
/// `a * b`. Returns the loop and the principal isotopism from `q` to it.
pub fn loop_isotope_at(q: &Quasigroup, a: usize, b: usize) -> (Loop, Isotopism) {
    let n = q.order();
    let iso = Isotopism {
        alpha: (0..n).map(|x| q.op(x, b)).collect(),
        beta: (0..n).map(|y| q.op(a, y)).collect(),
        gamma: (0..n).collect(),
    };
    let base = q.isotope(&iso).expect("translations are bijections");
    let lp = Loop {
        base,
        identity: q.op(a, b),
    };
    debug_assert!(Loop::new(lp.base.clone(), lp.identity).is_ok());
    (lp, iso)
}

/// A loop principally isotopic to `q` whose identity is `e`.
///
/// Rows are relabelled by the column of `b = e \ e` and columns by the row of
/// `e`; when `e * e = e` this is exactly the relabelling by the row and column
/// of `e`.
pub fn principal_loop_isotope(q: &Quasigroup, e: usize) -> Result<(Loop, Isotopism)> {
    if e >= q.order() {
        return Err(Error::input(format!("element {e} out of range 0..{}", q.order())));
    }
    let b = q.left_div(e, e);
    Ok(loop_isotope_at(q, e, b))
}

/// Homomorphism search from `src` into `dst` driven by a generating set of
/// `src`: once the generators have images, the rest follows by closure.
struct HomSearch<'a> {
    src: &'a Quasigroup,
    dst: &'a Quasigroup,
    injective: bool,
    gens: Vec<usize>,
}

#[derive(Clone)]
struct HomState {
    img: Vec<Option<usize>>,
    used: Vec<bool>,
    assigned: Vec<usize>,
    queue: Vec<usize>,
}

impl<'a> HomSearch<'a> {
    fn new(src: &'a Quasigroup, dst: &'a Quasigroup, injective: bool, start: &[usize]) -> Self {
        let gens = generating_set(src, start);
        HomSearch {
            src,
            dst,
            injective,
            gens,
        }
    }

    fn empty_state(&self) -> HomState {
        HomState {
            img: vec![None; self.src.order()],
            used: vec![false; self.dst.order()],
            assigned: Vec::new(),
            queue: Vec::new(),
        }
    }

    fn assign(&self, st: &mut HomState, x: usize, y: usize) -> bool {
        if let Some(z) = st.img[x] {
            return z == y;
        }
        if self.injective && st.used[y] {
            return false;
        }
        st.img[x] = Some(y);
        st.used[y] = true;
        st.assigned.push(x);
        st.queue.push(x);
        true
    }

    fn propagate(&self, st: &mut HomState) -> bool {
        while let Some(a) = st.queue.pop() {
            let fa = st.img[a].expect("queued elements are assigned");
            let len = st.assigned.len();
            for i in 0..len {
                let b = st.assigned[i];
                let fb = st.img[b].expect("assigned");
                if !self.assign(st, self.src.op(a, b), self.dst.op(fa, fb))
                    || !self.assign(st, self.src.op(b, a), self.dst.op(fb, fa))
                {
                    return false;
                }
            }
        }
        true
    }

    /// Calls `found` for every completion; stops early when it returns `false`.
    fn run(&self, st: HomState, g: usize, found: &mut dyn FnMut(Vec<usize>) -> bool) -> bool {
        if g == self.gens.len() {
            let map: Vec<usize> = st.img.iter().map(|v| v.expect("generated")).collect();
            return found(map);
        }
        let x = self.gens[g];
        if st.img[x].is_some() {
            return self.run(st, g + 1, found);
        }
        for y in 0..self.dst.order() {
            if self.injective && st.used[y] {
                continue;
            }
            let mut next = st.clone();
            if self.assign(&mut next, x, y) && self.propagate(&mut next) && !self.run(next, g + 1, found) {
                return false;
            }
        }
        true
    }

    fn start(&self, fixed: &[(usize, usize)], found: &mut dyn FnMut(Vec<usize>) -> bool) -> bool {
        let mut st = self.empty_state();
        for &(x, y) in fixed {
            if !self.assign(&mut st, x, y) {
                return true;
            }
        }
        if !self.propagate(&mut st) {
            return true;
        }
        self.run(st, 0, found)
    }
}

/// Greedy generating set: repeatedly adds the smallest element outside the
/// closure of what is already chosen (starting from `start`).
fn generating_set(q: &Quasigroup, start: &[usize]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut closed: BTreeSet<usize> = start.iter().copied().collect();
    closed = multiplicative_closure(q, &closed);
    for x in 0..q.order() {
        if !closed.contains(&x) {
            gens.push(x);
            closed.insert(x);
            closed = multiplicative_closure(q, &closed);
        }
    }
    gens
}

fn multiplicative_closure(q: &Quasigroup, seed: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut set = seed.clone();
    let mut frontier: Vec<usize> = set.iter().copied().collect();
    while let Some(a) = frontier.pop() {
        let current: Vec<usize> = set.iter().copied().collect();
        for b in current {
            for z in [q.op(a, b), q.op(b, a)] {
                if set.insert(z) {
                    frontier.push(z);
                }
            }
        }
    }
    set
}

/// All injective maps `phi: S -> L` with `phi(e_S) = e_L` and
/// `phi(x * y) = phi(x) * phi(y)`, sorted by image tuple.
pub fn find_subloop_monomorphisms(s: &Loop, l: &Loop) -> Vec<Vec<usize>> {
    let search = HomSearch::new(&s.base, &l.base, true, &[s.identity]);
    let mut out = Vec::new();
    search.start(&[(s.identity, l.identity)], &mut |m| {
        out.push(m);
        true
    });
    out.sort();
    out
}

/// Monomorphisms of the loop `s` into an arbitrary quasigroup `d`; the image
/// of the identity ranges over the idempotents of `d`, so the image is a
/// subloop of `d` with its own identity. Sorted by image tuple.
pub fn find_loop_monomorphisms_into(s: &Loop, d: &Quasigroup) -> Vec<Vec<usize>> {
    let search = HomSearch::new(&s.base, d, true, &[s.identity]);
    let mut out = Vec::new();
    for c in d.idempotents() {
        search.start(&[(s.identity, c)], &mut |m| {
            out.push(m);
            true
        });
    }
    out.sort();
    out
}

/// First monomorphism of `s` into `d` in search order (identity images in
/// increasing order, then generator images lexicographically).
pub fn first_loop_monomorphism_into(s: &Loop, d: &Quasigroup) -> Option<Vec<usize>> {
    if s.order() > d.order() {
        return None;
    }
    let search = HomSearch::new(&s.base, d, true, &[s.identity]);
    let mut hit = None;
    for c in d.idempotents() {
        search.start(&[(s.identity, c)], &mut |m| {
            hit = Some(m);
            false
        });
        if hit.is_some() {
            break;
        }
    }
    hit
}

/// Injective homomorphisms of `q` into `d` with no identity constraint, i.e.
/// isomorphisms of `q` onto subquasigroups of `d`. Sorted by image tuple.
pub fn find_subquasigroup_isomorphisms(q: &Quasigroup, d: &Quasigroup) -> Vec<Vec<usize>> {
    let search = HomSearch::new(q, d, true, &[]);
    let mut out = Vec::new();
    search.start(&[], &mut |m| {
        out.push(m);
        true
    });
    out.sort();
    out
}

/// A loop isomorphism `a -> b`, if one exists.
pub fn loop_isomorphism(a: &Loop, b: &Loop) -> Option<Vec<usize>> {
    if a.order() != b.order() {
        return None;
    }
    let search = HomSearch::new(&a.base, &b.base, true, &[a.identity]);
    let mut hit = None;
    search.start(&[(a.identity, b.identity)], &mut |m| {
        hit = Some(m);
        false
    });
    hit
}

/// An isotopism `q1 -> q2`, if one exists.
///
/// Both sides are normalized to loops; `q1` is isotopic to `q2` exactly when
/// its loop is isomorphic to one of the principal loop isotopes of the loop of
/// `q2`. Pairs `(a, b)` are tried in lexicographic order.
pub fn is_isotopic(q1: &Quasigroup, q2: &Quasigroup) -> Option<Isotopism> {
    let n = q1.order();
    if q2.order() != n {
        return None;
    }
    let (l1, to_l1) = principal_loop_isotope(q1, 0).expect("0 is an element");
    let (l2, to_l2) = principal_loop_isotope(q2, 0).expect("0 is an element");
    for a in 0..n {
        for b in 0..n {
            let (l2ab, to_l2ab) = loop_isotope_at(l2.quasigroup(), a, b);
            if let Some(phi) = loop_isomorphism(&l1, &l2ab) {
                let witness = to_l1
                    .then(&Isotopism::from_isomorphism(phi))
                    .then(&to_l2ab.inverse())
                    .then(&to_l2.inverse());
                debug_assert!(witness.is_valid_between(q1, q2));
                return Some(witness);
            }
        }
    }
    None
}

/// A role permutation `sigma` and an isotopism from `conjugate(q1, sigma)` to `q2`.
pub fn is_isostrophic(q1: &Quasigroup, q2: &Quasigroup) -> Option<(Conjugacy, Isotopism)> {
    Conjugacy::ALL.iter().find_map(|&sigma| {
        let c = conjugate(q1, sigma).expect("valid permutation");
        is_isotopic(&c, q2).map(|iso| (sigma, iso))
    })
}

/// Smallest subset containing `seed` closed under multiplication and both
/// divisions.
pub fn generated_subquasigroup(q: &Quasigroup, seed: &BTreeSet<usize>) -> Result<BTreeSet<usize>> {
    if let Some(&bad) = seed.iter().find(|&&x| x >= q.order()) {
        return Err(Error::input(format!("element {bad} out of range 0..{}", q.order())));
    }
    let mut set = seed.clone();
    let mut frontier: Vec<usize> = set.iter().copied().collect();
    while let Some(a) = frontier.pop() {
        let current: Vec<usize> = set.iter().copied().collect();
        for b in current {
            for z in [
                q.op(a, b),
                q.op(b, a),
                q.left_div(a, b),
                q.left_div(b, a),
                q.right_div(a, b),
                q.right_div(b, a),
            ] {
                if set.insert(z) {
                    frontier.push(z);
                }
            }
        }
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::random_latin_square;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn z(n: usize) -> Quasigroup {
        Quasigroup::cyclic(n)
    }

    #[test]
    fn latin_examples() {
        assert!(is_latin(&[vec![0, 1], vec![1, 0]]).unwrap());
        assert!(!is_latin(&[vec![0, 1], vec![0, 1]]).unwrap());
        assert!(is_latin(&z(5).rows()).unwrap());
    }

    #[test]
    fn latin_rejects_malformed() {
        assert!(is_latin(&[vec![0, 1], vec![1]]).is_err());
        assert!(is_latin(&[vec![0, 2], vec![1, 0]]).is_err());
    }

    #[test]
    fn conjugate_identity_and_transpose() {
        let q = z(3);
        assert_eq!(conjugate(&q, Conjugacy::IDENTITY).unwrap(), q);
        assert_eq!(conjugate(&q, Conjugacy::OPPOSITE).unwrap(), q.opposite());
    }

    #[test]
    fn conjugate_swap_yz_resolves_every_equation() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let q = random_latin_square(5, &mut rng);
        let c = conjugate(&q, Conjugacy([0, 2, 1])).unwrap();
        // brute force: c[x][z] = y iff q[x][y] = z
        for x in 0..5 {
            for y in 0..5 {
                for zz in 0..5 {
                    assert_eq!(c.op(x, zz) == y, q.op(x, y) == zz);
                }
            }
        }
    }

    #[test]
    fn conjugate_rejects_non_permutation() {
        assert!(conjugate(&z(2), Conjugacy([0, 0, 1])).is_err());
    }

    #[test]
    fn principal_loop_isotope_examples() {
        let (l, iso) = principal_loop_isotope(&z(3), 0).unwrap();
        assert_eq!(l.quasigroup(), &z(3));
        assert_eq!(iso, Isotopism::identity(3));

        let (l, iso) = principal_loop_isotope(&z(3), 1).unwrap();
        assert_eq!(l.identity(), 1);
        assert!(iso.is_valid_between(&z(3), l.quasigroup()));
        assert!(loop_isomorphism(&Loop::cyclic(3), &l).is_some());
    }

    #[test]
    fn isotopy_examples() {
        assert!(is_isotopic(&z(2), &z(2)).is_some());
        assert!(is_isotopic(&z(4), &Quasigroup::klein_four()).is_none());
        assert!(is_isotopic(&z(3), &z(4)).is_none());
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let q = random_latin_square(6, &mut rng);
        for e in 0..6 {
            let (l, _) = principal_loop_isotope(&q, e).unwrap();
            let w = is_isotopic(&q, l.quasigroup()).unwrap();
            assert!(w.is_valid_between(&q, l.quasigroup()));
        }
    }

    #[test]
    fn isostrophy_examples() {
        assert!(is_isostrophic(&z(3), &z(3).opposite()).is_some());
        assert!(is_isostrophic(&z(4), &Quasigroup::klein_four()).is_none());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let q = random_latin_square(5, &mut rng);
        for sigma in Conjugacy::ALL {
            let c = conjugate(&q, sigma).unwrap();
            let (s, iso) = is_isostrophic(&q, &c).unwrap();
            let cs = conjugate(&q, s).unwrap();
            assert!(iso.is_valid_between(&cs, &c));
        }
    }

    #[test]
    fn monomorphism_examples() {
        let ms = find_subloop_monomorphisms(&Loop::trivial(), &Loop::cyclic(5));
        assert_eq!(ms, vec![vec![0]]);
        let ms = find_subloop_monomorphisms(&Loop::cyclic(3), &Loop::cyclic(6));
        assert_eq!(ms, vec![vec![0, 2, 4], vec![0, 4, 2]]);
        assert!(find_subloop_monomorphisms(&Loop::cyclic(2), &Loop::cyclic(3)).is_empty());
    }

    #[test]
    fn monomorphisms_into_quasigroup_use_idempotents() {
        // x o y = x + y + 1 on Z_3 has the single idempotent 2, which is its identity
        let d = Quasigroup::from_fn(3, |x, y| (x + y + 1) % 3).unwrap();
        assert_eq!(d.idempotents(), vec![2]);
        assert_eq!(find_loop_monomorphisms_into(&Loop::trivial(), &d), vec![vec![2]]);
        assert!(find_loop_monomorphisms_into(&Loop::cyclic(2), &d).is_empty());
        let phi = first_loop_monomorphism_into(&Loop::cyclic(3), &d).unwrap();
        assert_eq!(phi[0], 2);
        // the idempotent quasigroup 2x + 2y has no loop inside it beyond points
        let idem = Quasigroup::from_fn(3, |x, y| (2 * x + 2 * y) % 3).unwrap();
        assert_eq!(find_loop_monomorphisms_into(&Loop::trivial(), &idem).len(), 3);
        assert!(first_loop_monomorphism_into(&Loop::cyclic(3), &idem).is_none());
    }

    #[test]
    fn subquasigroup_isomorphisms_without_identity() {
        // the idempotent quasigroup x o y = 2x + 2y on Z_3 sits inside itself 6 ways
        let d = Quasigroup::from_fn(3, |x, y| (2 * x + 2 * y) % 3).unwrap();
        assert_eq!(find_subquasigroup_isomorphisms(&d, &d).len(), 6);
        assert_eq!(find_subquasigroup_isomorphisms(&Quasigroup::trivial(), &d).len(), 3);
    }

    #[test]
    fn generated_subquasigroup_examples() {
        let set = |v: &[usize]| v.iter().copied().collect::<BTreeSet<_>>();
        assert_eq!(generated_subquasigroup(&z(4), &set(&[2])).unwrap(), set(&[0, 2]));
        assert_eq!(generated_subquasigroup(&z(4), &set(&[0, 1, 2, 3])).unwrap(), set(&[0, 1, 2, 3]));
        assert_eq!(generated_subquasigroup(&z(5), &set(&[1])).unwrap(), set(&[0, 1, 2, 3, 4]));
        assert!(generated_subquasigroup(&z(5), &set(&[7])).is_err());
    }

    #[test]
    fn loop_rejects_non_identity() {
        assert!(Loop::new(z(3), 1).is_err());
        assert!(Loop::new(z(3), 0).is_ok());
        assert!(Loop::from_quasigroup(Quasigroup::from_fn(3, |x, y| (2 * x + 2 * y) % 3).unwrap()).is_err());
    }

    #[test]
    fn restrict_relabels_closed_subsets() {
        let set: BTreeSet<usize> = [0, 2, 4].into_iter().collect();
        let (r, labels) = z(6).restrict(&set).unwrap();
        assert_eq!(labels, vec![0, 2, 4]);
        assert!(is_isotopic(&r, &z(3)).is_some());
        assert!(z(6).restrict(&[1].into_iter().collect()).is_err());
    }
}
