//! Finite fields `GF(p^k)` of order at most 16.
//!
//! An element is the integer whose base-`p` digits are its polynomial
//! coefficients, lowest degree first, so `0` and `1` are the field's zero and
//! one and `p` is the class of `x`.

use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 16;

/// Monic irreducible polynomials used for the extension fields, low
/// coefficients first with the leading 1 omitted.
fn modulus(p: usize, k: u32) -> Option<&'static [usize]> {
    match (p, k) {
        (2, 2) => Some(&[1, 1]),       // x^2 + x + 1
        (2, 3) => Some(&[1, 1, 0]),    // x^3 + x + 1
        (3, 2) => Some(&[1, 0]),       // x^2 + 1
        (2, 4) => Some(&[1, 1, 0, 0]), // x^4 + x + 1
        _ => None,
    }
}

pub fn is_prime(p: usize) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// `q = p^k` with `p` prime, if `q` is a prime power.
pub fn prime_power(q: usize) -> Option<(usize, u32)> {
    let p = (2..=q).find(|&d| q.is_multiple_of(d))?;
    let mut k = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field {
    p: usize,
    k: u32,
    q: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
}

fn digits(mut v: usize, p: usize, k: u32) -> Vec<usize> {
    (0..k)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

fn undigits(d: &[usize], p: usize) -> usize {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

/// Remainder of `a` modulo the monic polynomial `m` (leading 1 implicit),
/// coefficients mod `p`, low first.
fn poly_rem(mut a: Vec<usize>, m: &[usize], p: usize) -> Vec<usize> {
    let k = m.len();
    while a.len() > k {
        let lead = a.pop().expect("nonempty");
        if lead == 0 {
            continue;
        }
        let shift = a.len() - k;
        for (i, &c) in m.iter().enumerate() {
            a[shift + i] = (a[shift + i] + (p - lead) * c) % p;
        }
    }
    a.resize(k, 0);
    a
}

fn poly_mul(a: &[usize], b: &[usize], p: usize) -> Vec<usize> {
    let mut out = vec![0; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

/// Brute-force irreducibility: no monic factor of degree `1..=deg/2`.
fn is_irreducible(m: &[usize], p: usize) -> bool {
    let deg = m.len();
    let mut full = m.to_vec();
    full.push(1);
    for d in 1..=deg / 2 {
        for code in 0..p.pow(d as u32) {
            let f = digits(code, p, d as u32);
            let mut rem = full.clone();
            // divide by the monic polynomial f + x^d
            while rem.len() > d {
                let lead = rem.pop().expect("nonempty");
                let shift = rem.len() - d;
                for (i, &c) in f.iter().enumerate() {
                    rem[shift + i] = (rem[shift + i] + (p - lead % p) * c) % p;
                }
            }
            if rem.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl Field {
    pub fn new(p: usize, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::input(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::input("extension degree must be at least 1"));
        }
        let q = p
            .checked_pow(k)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or_else(|| Error::input(format!("field order {p}^{k} exceeds {MAX_ORDER}")))?;
        let m: Vec<usize> = if k == 1 {
            vec![0]
        } else {
            let m = modulus(p, k).ok_or_else(|| Error::input(format!("no modulus for GF({p}^{k})")))?;
            if !is_irreducible(m, p) {
                return Err(Error::Internal(format!("modulus for GF({p}^{k}) is reducible")));
            }
            m.to_vec()
        };
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            let da = digits(a, p, k);
            for b in 0..q {
                let db = digits(b, p, k);
                let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = undigits(&s, p);
                mul[a * q + b] = if k == 1 {
                    a * b % p
                } else {
                    undigits(&poly_rem(poly_mul(&da, &db, p), &m, p), p)
                };
            }
        }
        Ok(Field { p, k, q, add, mul })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b]
    }

    pub fn neg(&self, a: usize) -> usize {
        (0..self.q).find(|&b| self.add(a, b) == 0).expect("additive inverse")
    }
}
