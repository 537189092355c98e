//! Discrete harmonic spaces on `d`-subsets of `[t]`: the subset
//! differentiation operator `gamma`, exact kernel bases, and the extension
//! `f~` of a harmonic function to orbit words.

use std::collections::BTreeMap;

use num::{BigInt, One, Zero};
use serde::{Deserialize, Serialize};

use crate::exactmath::{Rat, RatMatrix};
use crate::frobring::RingZk;
use crate::gcode::OrbitCode;
use crate::permgrp::next_word;
use crate::polyring::BivarPoly;
use crate::{guard_enum, Error, Result};

/// A rational-valued function on the `d`-subsets of `{0, .., t-1}`.
/// Members of `Harm_d(t)` satisfy `gamma(f) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarmonicFn {
    pub t: usize,
    pub d: usize,
    /// Sorted subset -> value; absent subsets are zero.
    pub values: BTreeMap<Vec<usize>, Rat>,
}

impl HarmonicFn {
    pub fn value(&self, z: &[usize]) -> Rat {
        self.values.get(z).cloned().unwrap_or_else(Rat::zero)
    }

    /// Verify `gamma(f) = 0` exactly.
    pub fn is_harmonic(&self) -> bool {
        gamma(self).values().all(|v| v.is_zero())
    }
}

/// All `d`-subsets of `{0, .., t-1}` in lexicographic order.
pub fn subsets_of_size(t: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, t: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for i in start..t {
            cur.push(i);
            rec(i + 1, t, d, cur, out);
            cur.pop();
        }
    }
    rec(0, t, d, &mut cur, &mut out);
    out
}

/// The differentiation `(gamma f)(y) = sum_{z superset y, |z| = d} f(z)`
/// on `(d-1)`-subsets. For `d = 0` the result is empty (zero map).
pub fn gamma(f: &HarmonicFn) -> BTreeMap<Vec<usize>, Rat> {
    let mut out: BTreeMap<Vec<usize>, Rat> = BTreeMap::new();
    if f.d == 0 {
        return out;
    }
    for y in subsets_of_size(f.t, f.d - 1) {
        out.insert(y, Rat::zero());
    }
    for (z, v) in &f.values {
        for skip in 0..z.len() {
            let mut y = z.clone();
            y.remove(skip);
            *out.get_mut(&y).unwrap() += v;
        }
    }
    out
}

/// Exact rational basis of `Harm_d(t) = ker gamma` on degree-`d` subsets.
///
/// Basis vectors are scaled to primitive integer form with positive
/// leading entry, so the output is deterministic.
pub fn harm_basis(t: usize, d: usize) -> Vec<HarmonicFn> {
    if d > t {
        // no d-subsets of [t]: the space is zero
        return Vec::new();
    }
    let cols = subsets_of_size(t, d);
    if d == 0 {
        let mut values = BTreeMap::new();
        values.insert(Vec::new(), Rat::one());
        return vec![HarmonicFn { t, d, values }];
    }
    let rows = subsets_of_size(t, d - 1);
    let mut m = RatMatrix::zero(rows.len(), cols.len());
    for (j, z) in cols.iter().enumerate() {
        for skip in 0..z.len() {
            let mut y = z.clone();
            y.remove(skip);
            let i = rows.binary_search(&y).unwrap();
            m.set(i, j, Rat::one());
        }
    }
    let kernel = rational_kernel(&m);
    kernel
        .into_iter()
        .map(|vec| {
            let vec = primitive_integer_form(vec);
            let mut values = BTreeMap::new();
            for (j, v) in vec.into_iter().enumerate() {
                if !v.is_zero() {
                    values.insert(cols[j].clone(), v);
                }
            }
            HarmonicFn { t, d, values }
        })
        .collect()
}

/// Kernel basis of `m` acting on column vectors, via exact elimination.
fn rational_kernel(m: &RatMatrix) -> Vec<Vec<Rat>> {
    let rows = m.rows;
    let cols = m.cols;
    let mut a = m.clone();
    let mut pivot_col_of_row: Vec<usize> = Vec::new();
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        // swap rows r and p
        for j in 0..cols {
            let x = a.get(r, j).clone();
            let y = a.get(p, j).clone();
            a.set(r, j, y);
            a.set(p, j, x);
        }
        let d = a.get(r, c).clone();
        for j in 0..cols {
            let v = a.get(r, j) / &d;
            a.set(r, j, v);
        }
        for i in 0..rows {
            if i == r || a.get(i, c).is_zero() {
                continue;
            }
            let f = a.get(i, c).clone();
            for j in 0..cols {
                let v = a.get(i, j) - &f * a.get(r, j);
                a.set(i, j, v);
            }
        }
        pivot_col_of_row.push(c);
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (row, &pc) in pivot_col_of_row.iter().enumerate() {
            v[pc] = -a.get(row, free).clone();
        }
        basis.push(v);
    }
    basis
}

fn primitive_integer_form(v: Vec<Rat>) -> Vec<Rat> {
    use num::Integer;
    let mut den = BigInt::one();
    for x in &v {
        den = den.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        g = BigInt::one();
    }
    let lead_neg = ints
        .iter()
        .find(|x| !x.is_zero())
        .map_or(false, |x| x < &BigInt::zero());
    ints.into_iter()
        .map(|x| {
            let mut q = x / &g;
            if lead_neg {
                q = -q;
            }
            Rat::from_integer(q)
        })
        .collect()
}

/// The extension of `f` to an orbit word, in closed form:
/// `f~(u) = (k-1)^d * sum_{z subset supp(u), |z| = d} f(z)`.
///
/// Each support `z` is realized by `(k-1)^d` weight-`d` vectors, which is
/// what the definitional sum over `(V theta_H)_d` counts; the enumerated
/// form is kept as [`f_tilde_by_enumeration`].
pub fn f_tilde(f: &HarmonicFn, u: &[u64], ring: RingZk) -> Result<Rat> {
    if u.len() != f.t {
        return Err(Error::DimensionMismatch(format!(
            "orbit word length {} != t = {}",
            u.len(),
            f.t
        )));
    }
    let supp: Vec<usize> = (0..u.len()).filter(|&i| u[i] != 0).collect();
    if supp.len() < f.d {
        return Ok(Rat::zero());
    }
    let mut total = Rat::zero();
    for z in subsets_of_size(supp.len(), f.d) {
        let subset: Vec<usize> = z.iter().map(|&i| supp[i]).collect();
        total += f.value(&subset);
    }
    let factor = BigInt::from(ring.size() - 1).pow(f.d as u32);
    Ok(total * Rat::from_integer(factor))
}

/// Definitional evaluation of `f~(u)`: sum `f(supp(v))` over all weight-`d`
/// orbit words `v` with support inside `supp(u)`. Exponential in `t`; used
/// as the oracle for [`f_tilde`].
pub fn f_tilde_by_enumeration(f: &HarmonicFn, u: &[u64], ring: RingZk) -> Result<Rat> {
    if u.len() != f.t {
        return Err(Error::DimensionMismatch(format!(
            "orbit word length {} != t = {}",
            u.len(),
            f.t
        )));
    }
    guard_enum(ring.size(), f.t)?;
    let k = ring.size();
    let mut total = Rat::zero();
    let mut v = vec![0u64; f.t];
    loop {
        let supp: Vec<usize> = (0..f.t).filter(|&i| v[i] != 0).collect();
        if supp.len() == f.d && supp.iter().all(|&i| u[i] != 0) {
            total += f.value(&supp);
        }
        if !next_word(&mut v, k) {
            break;
        }
    }
    Ok(total)
}

/// Divide the harmonic enumerator by `(xy)^d`, returning the degree
/// `t - 2d` quotient. A failure signals a non-harmonic `f` or an
/// implementation fault.
pub fn z_poly(d: &OrbitCode, f: &HarmonicFn) -> Result<BivarPoly> {
    let w = crate::enumerators::harmonic_weight_enum(d, f)?;
    let t = w.degree;
    if 2 * f.d > t {
        return Err(Error::NotDivisible { d: f.d });
    }
    let mut z = BivarPoly::zero(t - 2 * f.d);
    for (i, c) in w.terms() {
        // term x^{t-i} y^i; need i >= d and t - i >= d
        if i < f.d || t - i < f.d {
            return Err(Error::NotDivisible { d: f.d });
        }
        z.add_term(i - f.d, c.clone());
    }
    Ok(z)
}

/// JSON form: `{"t":2,"d":1,"values":{"[1]":"1","[2]":"-1"}}` with 1-based
/// subset keys and rational string values.
#[derive(Serialize, Deserialize)]
struct HarmonicFnJson {
    t: usize,
    d: usize,
    values: BTreeMap<String, String>,
}

impl HarmonicFn {
    pub fn to_json(&self) -> String {
        let values = self
            .values
            .iter()
            .map(|(z, v)| {
                let key = format!(
                    "[{}]",
                    z.iter()
                        .map(|i| (i + 1).to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                );
                (key, crate::polyring::rat_string(v))
            })
            .collect();
        serde_json::to_string(&HarmonicFnJson {
            t: self.t,
            d: self.d,
            values,
        })
        .expect("harmonic serialization")
    }

    pub fn from_json(text: &str) -> Result<HarmonicFn> {
        let raw: HarmonicFnJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut values = BTreeMap::new();
        for (key, val) in raw.values {
            let inner = key
                .trim()
                .strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(|| Error::Parse(format!("bad subset key {:?}", key)))?;
            let mut z: Vec<usize> = Vec::new();
            for part in inner.split(',').filter(|s| !s.trim().is_empty()) {
                let p: usize = part
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad point {:?}", part)))?;
                if p == 0 || p > raw.t {
                    return Err(Error::Parse(format!("point {} outside 1..={}", p, raw.t)));
                }
                z.push(p - 1);
            }
            z.sort_unstable();
            if z.len() != raw.d {
                return Err(Error::Parse(format!(
                    "subset {:?} does not have size d = {}",
                    key, raw.d
                )));
            }
            let v = parse_rat(&val)?;
            values.insert(z, v);
        }
        Ok(HarmonicFn {
            t: raw.t,
            d: raw.d,
            values,
        })
    }
}

fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {:?}", s)))?;
    let d: BigInt = d
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {:?}", s)))?;
    if d.is_zero() {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(Rat::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn sign_fn() -> HarmonicFn {
        // f({1}) = 1, f({2}) = -1 on t = 2 (0-based keys)
        let mut values = BTreeMap::new();
        values.insert(vec![0], rat(1, 1));
        values.insert(vec![1], rat(-1, 1));
        HarmonicFn { t: 2, d: 1, values }
    }

    #[test]
    fn gamma_examples() {
        let f = sign_fn();
        let g = gamma(&f);
        assert_eq!(g.get(&vec![]).unwrap(), &rat(0, 1));
        assert!(f.is_harmonic());

        let zero = HarmonicFn {
            t: 3,
            d: 1,
            values: BTreeMap::new(),
        };
        assert!(gamma(&zero).values().all(|v| v.is_zero()));

        let mut values = BTreeMap::new();
        for i in 0..3 {
            values.insert(vec![i], rat(1, 1));
        }
        let ones = HarmonicFn { t: 3, d: 1, values };
        assert_eq!(gamma(&ones).get(&vec![]).unwrap(), &rat(3, 1));
        assert!(!ones.is_harmonic());
    }

    #[test]
    fn basis_dimensions() {
        // dim Harm_d(t) = C(t,d) - C(t,d-1) for d <= t/2
        let binom = |t: usize, d: usize| -> i64 {
            subsets_of_size(t, d).len() as i64
        };
        for t in 1..=5usize {
            for d in 0..=(t / 2) {
                let b = harm_basis(t, d);
                let expect = if d == 0 {
                    1
                } else {
                    binom(t, d) - binom(t, d - 1)
                };
                assert_eq!(b.len() as i64, expect, "t={} d={}", t, d);
                for f in &b {
                    assert!(f.is_harmonic());
                }
            }
        }
        assert_eq!(harm_basis(2, 1).len(), 1);
        assert_eq!(harm_basis(4, 2).len(), 2);
        // d = 0 basis is the constant function
        let b0 = harm_basis(3, 0);
        assert_eq!(b0.len(), 1);
        assert_eq!(b0[0].value(&[]), rat(1, 1));
    }

    #[test]
    fn basis_of_harm_1_2_is_the_sign_function() {
        let b = harm_basis(2, 1);
        assert_eq!(b.len(), 1);
        let f = &b[0];
        // primitive integer form with positive leading entry
        assert_eq!(f.value(&[0]), rat(1, 1));
        assert_eq!(f.value(&[1]), rat(-1, 1));
    }

    #[test]
    fn f_tilde_closed_form_examples() {
        let ring = RingZk::new(4).unwrap();
        let f = sign_fn();
        assert_eq!(f_tilde(&f, &[1, 0], ring).unwrap(), rat(3, 1));
        assert_eq!(f_tilde(&f, &[1, 3], ring).unwrap(), rat(0, 1));
        // weight below d gives zero
        assert_eq!(f_tilde(&f, &[0, 0], ring).unwrap(), rat(0, 1));
        // d = 0: constant f(emptyset) everywhere
        let b0 = &harm_basis(2, 0)[0];
        assert_eq!(f_tilde(b0, &[2, 3], ring).unwrap(), rat(1, 1));
        assert_eq!(f_tilde(b0, &[0, 0], ring).unwrap(), rat(1, 1));
    }

    #[test]
    fn closed_form_matches_enumerated_oracle() {
        for k in [2u64, 3, 4, 5] {
            let ring = RingZk::new(k).unwrap();
            for t in 1..=4usize {
                for d in 0..=t.min(2) {
                    for f in harm_basis(t, d) {
                        let mut u = vec![0u64; t];
                        loop {
                            let fast = f_tilde(&f, &u, ring).unwrap();
                            let slow = f_tilde_by_enumeration(&f, &u, ring).unwrap();
                            assert_eq!(fast, slow, "k={} t={} d={} u={:?}", k, t, d, u);
                            if !next_word(&mut u, k) {
                                break;
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let f = sign_fn();
        let json = f.to_json();
        assert_eq!(
            json,
            r#"{"t":2,"d":1,"values":{"[1]":"1","[2]":"-1"}}"#
        );
        let back = HarmonicFn::from_json(&json).unwrap();
        assert_eq!(back, f);
    }
}
