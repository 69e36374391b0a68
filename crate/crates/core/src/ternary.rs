//! Ternary rings: the axioms, the additive and multiplicative loops, the
//! diamond operation, the dual ring and linearity.
//!
//! Element `0` is index 0 and element `1` is index 1. Structures on the
//! nonzero elements (the multiplicative loop and the diamond quasigroup) use
//! index `i` for ring element `i + 1`.

use serde::Serialize;

use crate::algebra::{Isotopism, Loop, Quasigroup};
use crate::error::{Error, Result};
use crate::gf::Field;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TernaryRing {
    n: usize,
    // t[(x * n + m) * n + b] = t(x, m, b)
    t: Vec<usize>,
}

impl std::fmt::Debug for TernaryRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TernaryRing(n = {})", self.n)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub args: Vec<usize>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub pass: bool,
    pub counterexample: Option<Counterexample>,
}

impl AxiomCheck {
    fn from(c: Option<Counterexample>) -> Self {
        AxiomCheck {
            pass: c.is_none(),
            counterexample: c,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub t1: AxiomCheck,
    pub t2: AxiomCheck,
    pub t3: AxiomCheck,
    pub t4: AxiomCheck,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.t1.pass && self.t2.pass && self.t3.pass && self.t4.pass
    }

    pub fn first_failure(&self) -> Option<(&'static str, &AxiomCheck)> {
        [("T1", &self.t1), ("T2", &self.t2), ("T3", &self.t3), ("T4", &self.t4)]
            .into_iter()
            .find(|(_, c)| !c.pass)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearityReport {
    pub linear: bool,
    /// `(a, b, c)` with `t(a, b, c) != (a x b) + c`.
    pub witness: Option<[usize; 3]>,
}

impl TernaryRing {
    pub fn new(n: usize, t: Vec<usize>) -> Result<Self> {
        if n < 2 {
            return Err(Error::input("a ternary ring needs at least the elements 0 and 1"));
        }
        if t.len() != n * n * n {
            return Err(Error::input(format!("table has {} entries, expected {}", t.len(), n * n * n)));
        }
        if let Some(&bad) = t.iter().find(|&&v| v >= n) {
            return Err(Error::input(format!("entry {bad} out of range 0..{n}")));
        }
        Ok(TernaryRing { n, t })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize, usize) -> usize) -> Result<Self> {
        let mut t = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for m in 0..n {
                for b in 0..n {
                    t.push(f(x, m, b));
                }
            }
        }
        Self::new(n, t)
    }

    /// `t(x, m, b) = x m + b` over `GF(p^k)`.
    pub fn from_field(p: usize, k: u32) -> Result<Self> {
        let f = Field::new(p, k)?;
        Self::from_fn(f.order(), |x, m, b| f.add(f.mul(x, m), b))
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn t(&self, x: usize, m: usize, b: usize) -> usize {
        self.t[(x * self.n + m) * self.n + b]
    }

    pub fn table(&self) -> &[usize] {
        &self.t
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.t(1, a, b)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.t(a, b, 0)
    }
}

pub fn verify_axioms(tr: &TernaryRing) -> AxiomReport {
    let n = tr.n;
    let ce = |args: Vec<usize>, note: String| Some(Counterexample { args, note });

    let t1 = 'found: {
        for a in 0..n {
            for c in (0..n).filter(|&c| c != a) {
                for b in 0..n {
                    for d in 0..n {
                        let count = (0..n).filter(|&x| tr.t(x, a, b) == tr.t(x, c, d)).count();
                        if count != 1 {
                            break 'found ce(
                                vec![a, b, c, d],
                                format!("t(x,{a},{b}) = t(x,{c},{d}) has {count} solutions x"),
                            );
                        }
                    }
                }
            }
        }
        None
    };

    let t2 = 'found: {
        for a in 0..n {
            for b in 0..n {
                let mut seen = vec![false; n];
                for x in 0..n {
                    let v = tr.t(a, b, x);
                    if std::mem::replace(&mut seen[v], true) {
                        break 'found ce(vec![a, b, v], format!("t({a},{b},x) = {v} has several solutions x"));
                    }
                }
            }
        }
        None
    };

    let t3 = 'found: {
        for a in 0..n {
            for c in (0..n).filter(|&c| c != a) {
                let mut seen = vec![false; n * n];
                for x in 0..n {
                    for y in 0..n {
                        let (b, d) = (tr.t(a, x, y), tr.t(c, x, y));
                        if std::mem::replace(&mut seen[b * n + d], true) {
                            break 'found ce(
                                vec![a, b, c, d],
                                format!("t({a},x,y) = {b}, t({c},x,y) = {d} has several solutions"),
                            );
                        }
                    }
                }
            }
        }
        None
    };

    let t4 = 'found: {
        for a in 0..n {
            for b in 0..n {
                if tr.t(0, a, b) != b {
                    break 'found ce(vec![0, a, b], format!("t(0,{a},{b}) = {}", tr.t(0, a, b)));
                }
                if tr.t(a, 0, b) != b {
                    break 'found ce(vec![a, 0, b], format!("t({a},0,{b}) = {}", tr.t(a, 0, b)));
                }
            }
            if tr.t(1, a, 0) != a {
                break 'found ce(vec![1, a, 0], format!("t(1,{a},0) = {}", tr.t(1, a, 0)));
            }
            if tr.t(a, 1, 0) != a {
                break 'found ce(vec![a, 1, 0], format!("t({a},1,0) = {}", tr.t(a, 1, 0)));
            }
        }
        None
    };

    AxiomReport {
        t1: AxiomCheck::from(t1),
        t2: AxiomCheck::from(t2),
        t3: AxiomCheck::from(t3),
        t4: AxiomCheck::from(t4),
    }
}

/// `a + b = t(1, a, b)`, a loop with identity 0.
pub fn additive_loop(tr: &TernaryRing) -> Result<Loop> {
    let q = Quasigroup::from_fn(tr.n, |a, b| tr.add(a, b))?;
    Loop::new(q, 0)
}

/// `a x b = t(a, b, 0)` on the nonzero elements (index `i` is element `i + 1`),
/// without requiring an identity.
pub fn multiplicative_quasigroup(tr: &TernaryRing) -> Result<Quasigroup> {
    let n = tr.n;
    let mut rows = vec![vec![0; n - 1]; n - 1];
    for a in 1..n {
        for b in 1..n {
            let v = tr.mul(a, b);
            if v == 0 {
                return Err(Error::precondition(format!("{a} x {b} = 0")));
            }
            rows[a - 1][b - 1] = v - 1;
        }
    }
    Quasigroup::from_rows(rows)
}

/// The multiplicative loop on the nonzero elements; its identity is index 0,
/// i.e. the element 1.
pub fn multiplicative_loop(tr: &TernaryRing) -> Result<Loop> {
    Loop::new(multiplicative_quasigroup(tr)?, 0)
}

/// `x <> y = z` for the nonzero `z` with `t(x, y, z) = 0`, on nonzero elements.
pub fn diamond(tr: &TernaryRing) -> Result<Quasigroup> {
    let n = tr.n;
    let mut rows = vec![vec![0; n - 1]; n - 1];
    for x in 1..n {
        for y in 1..n {
            let zs: Vec<usize> = (0..n).filter(|&z| tr.t(x, y, z) == 0).collect();
            match zs.as_slice() {
                [z] if *z != 0 => rows[x - 1][y - 1] = z - 1,
                _ => {
                    return Err(Error::precondition(format!(
                        "t({x},{y},z) = 0 does not have a unique nonzero solution"
                    )))
                }
            }
        }
    }
    Quasigroup::from_rows(rows)
}

/// `t*(a, b, c) = d` exactly when `t(b, a, d) = c`.
pub fn dual(tr: &TernaryRing) -> Result<TernaryRing> {
    let n = tr.n;
    let mut t = vec![usize::MAX; n * n * n];
    for b in 0..n {
        for a in 0..n {
            for d in 0..n {
                let c = tr.t(b, a, d);
                let slot = &mut t[(a * n + b) * n + c];
                if *slot != usize::MAX {
                    return Err(Error::precondition(format!("t({b},{a},d) = {c} has several solutions d")));
                }
                *slot = d;
            }
        }
    }
    TernaryRing::new(n, t)
}

/// Whether `t(a, b, c) = (a x b) + c` for all triples.
pub fn is_linear(tr: &TernaryRing) -> LinearityReport {
    let n = tr.n;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if tr.t(a, b, c) != tr.add(tr.mul(a, b), c) {
                    return LinearityReport {
                        linear: false,
                        witness: Some([a, b, c]),
                    };
                }
            }
        }
    }
    LinearityReport {
        linear: true,
        witness: None,
    }
}

/// For linear `T`, the isotopism `(id, id, gamma)` from the diamond
/// quasigroup to the multiplicative loop with `gamma(x) + x = 0`, on
/// nonzero-element indices. It is verified before it is returned.
pub fn linear_diamond_isotopism(tr: &TernaryRing) -> Result<Isotopism> {
    if let Some(w) = is_linear(tr).witness {
        return Err(Error::precondition(format!(
            "ternary ring is not linear: t({},{},{}) differs from the product plus {}",
            w[0], w[1], w[2], w[2]
        )));
    }
    let n = tr.n;
    let id: Vec<usize> = (0..n - 1).collect();
    let mut gamma = Vec::with_capacity(n - 1);
    for x in 1..n {
        let y = (0..n)
            .find(|&y| tr.add(y, x) == 0)
            .ok_or_else(|| Error::precondition(format!("no y with y + {x} = 0")))?;
        if y == 0 {
            return Err(Error::precondition(format!("negative of {x} is 0")));
        }
        gamma.push(y - 1);
    }
    let iso = Isotopism {
        alpha: id.clone(),
        beta: id,
        gamma,
    };
    let from = diamond(tr)?;
    let to = multiplicative_loop(tr)?;
    if !iso.is_valid_between(&from, to.quasigroup()) {
        return Err(Error::Internal("negation map is not an isotopism".into()));
    }
    Ok(iso)
}
