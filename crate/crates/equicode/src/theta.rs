//! Truncated formal q-expansions with exact rational exponents: lattice
//! theta series in genus 1 and 2, the residue-class theta functions
//! `f_a`/`psi_a`/`phi_a`, Jacobi theta series with a reference vector, the
//! code-to-lattice correspondence checks, and a numeric check of the
//! Jacobi transformation formula.
//!
//! Exponents are stored as integer numerators over a fixed denominator
//! `den`, so series construction never touches floating point; floats
//! appear only in [`jacobi_formula_check`].

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, Integer, One, ToPrimitive, Zero};

use crate::enumerators::{cwe_g, cwe_h, jacobi_poly, JacobiSet};
use crate::exactmath::Rat;
use crate::frobring::RingZk;
use crate::gcode::{project_theta, Code};
use crate::lattice::{
    construction_a_orbit, dual_lattice, enumerate_vectors, inner_true, Lattice,
};
use crate::permgrp::HaydenOperator;
use crate::polyring::MultiPoly;
use crate::report::Report;
use crate::{Error, Result};

/// Truncated q-series `sum c_m q^{m/den}` keeping `m <= cutoff`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    pub den: u64,
    pub cutoff: i64,
    terms: BTreeMap<i64, BigInt>,
}

impl QSeries {
    pub fn zero(den: u64, cutoff: i64) -> Self {
        QSeries {
            den,
            cutoff,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(den: u64, cutoff: i64) -> Self {
        let mut s = Self::zero(den, cutoff);
        s.add_term(0, BigInt::one());
        s
    }

    pub fn add_term(&mut self, numer: i64, c: BigInt) {
        if numer > self.cutoff || c.is_zero() {
            return;
        }
        let e = self.terms.entry(numer).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&numer);
        }
    }

    pub fn coeff(&self, numer: i64) -> BigInt {
        self.terms.get(&numer).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        assert_eq!(self.den, other.den);
        let mut out = QSeries::zero(self.den, self.cutoff.min(other.cutoff));
        for (m, c) in self.terms.iter().chain(other.terms.iter()) {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &QSeries) -> QSeries {
        assert_eq!(self.den, other.den);
        let mut out = QSeries::zero(self.den, self.cutoff.min(other.cutoff));
        for (&m1, c1) in &self.terms {
            for (&m2, c2) in &other.terms {
                if m1 + m2 > out.cutoff {
                    break;
                }
                out.add_term(m1 + m2, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> QSeries {
        let mut acc = QSeries::one(self.den, self.cutoff);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn scale(&self, s: &BigInt) -> QSeries {
        let mut out = QSeries::zero(self.den, self.cutoff);
        for (&m, c) in &self.terms {
            out.add_term(m, c * s);
        }
        out
    }

    /// Re-express over a denominator that is a multiple of the current one.
    pub fn rescale_den(&self, new_den: u64) -> QSeries {
        assert_eq!(new_den % self.den, 0);
        let f = (new_den / self.den) as i64;
        let mut out = QSeries::zero(new_den, self.cutoff.saturating_mul(f));
        for (&m, c) in &self.terms {
            out.add_term(m * f, c.clone());
        }
        out
    }
}

/// Equality of two series on the common truncation window.
pub fn series_eq(a: &QSeries, b: &QSeries) -> bool {
    series_diff(a, b).is_none()
}

/// First differing exponent, as a human-readable witness.
pub fn series_diff(a: &QSeries, b: &QSeries) -> Option<String> {
    let den = lcm_u64(a.den, b.den);
    let ra = a.rescale_den(den);
    let rb = b.rescale_den(den);
    let window = ra.cutoff.min(rb.cutoff);
    for m in 0..=window {
        let ca = ra.coeff(m);
        let cb = rb.coeff(m);
        if ca != cb {
            return Some(format!("q^{}/{}: {} vs {}", m, den, ca, cb));
        }
    }
    None
}

fn lcm_u64(a: u64, b: u64) -> u64 {
    a / gcd_u64(a, b) * b
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

impl fmt::Display for QSeries {
    /// One line per term, `m/den: coeff`, ascending in `m`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (m, c) in &self.terms {
            writeln!(f, "{}/{}: {}", m, self.den, c)?;
        }
        Ok(())
    }
}

impl QSeries {
    /// JSON map form keyed by `"m/den"`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (m, c) in &self.terms {
            map.insert(
                format!("{}/{}", m, self.den),
                serde_json::Value::String(c.to_string()),
            );
        }
        serde_json::Value::Object(map)
    }
}

/// Genus-2 series: exponent keys `(m11, m12, m22)` over `den`, where the
/// `m12` slot carries twice the off-diagonal Gram entry times `den`.
/// Truncation is on `m11 + m22`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries2 {
    pub den: u64,
    pub cutoff: i64,
    terms: BTreeMap<(i64, i64, i64), BigInt>,
}

impl QSeries2 {
    pub fn zero(den: u64, cutoff: i64) -> Self {
        QSeries2 {
            den,
            cutoff,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(den: u64, cutoff: i64) -> Self {
        let mut s = Self::zero(den, cutoff);
        s.add_term((0, 0, 0), BigInt::one());
        s
    }

    pub fn add_term(&mut self, key: (i64, i64, i64), c: BigInt) {
        if key.0 + key.2 > self.cutoff || c.is_zero() {
            return;
        }
        let e = self.terms.entry(key).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64, i64), &BigInt)> {
        self.terms.iter()
    }

    pub fn mul(&self, other: &QSeries2) -> QSeries2 {
        assert_eq!(self.den, other.den);
        let mut out = QSeries2::zero(self.den, self.cutoff.min(other.cutoff));
        for (&(a1, b1, c1), x1) in &self.terms {
            for (&(a2, b2, c2), x2) in &other.terms {
                out.add_term((a1 + a2, b1 + b2, c1 + c2), x1 * x2);
            }
        }
        out
    }

    pub fn scale(&self, s: &BigInt) -> QSeries2 {
        let mut out = QSeries2::zero(self.den, self.cutoff);
        for (&k, c) in &self.terms {
            out.add_term(k, c * s);
        }
        out
    }

    pub fn rescale_den(&self, new_den: u64) -> QSeries2 {
        assert_eq!(new_den % self.den, 0);
        let f = (new_den / self.den) as i64;
        let mut out = QSeries2::zero(new_den, self.cutoff.saturating_mul(f));
        for (&(a, b, c), x) in &self.terms {
            out.add_term((a * f, b * f, c * f), x.clone());
        }
        out
    }

    /// Marginalize the off-diagonal slot (set `tau_12 = 0`); the result
    /// maps `(m11, m22) -> coeff`.
    pub fn collapse_offdiag(&self) -> BTreeMap<(i64, i64), BigInt> {
        let mut out: BTreeMap<(i64, i64), BigInt> = BTreeMap::new();
        for (&(a, _, c), x) in &self.terms {
            let e = out.entry((a, c)).or_insert_with(BigInt::zero);
            *e += x;
            if e.is_zero() {
                out.remove(&(a, c));
            }
        }
        out
    }
}

impl fmt::Display for QSeries2 {
    /// One line per term, `(m11,m12,m22)/den: coeff`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (&(a, b, c), x) in &self.terms {
            writeln!(f, "({},{},{})/{}: {}", a, b, c, self.den, x)?;
        }
        Ok(())
    }
}

pub fn series2_diff(a: &QSeries2, b: &QSeries2) -> Option<String> {
    let den = lcm_u64(a.den, b.den);
    let ra = a.rescale_den(den);
    let rb = b.rescale_den(den);
    let window = ra.cutoff.min(rb.cutoff);
    let keys: std::collections::BTreeSet<(i64, i64, i64)> = ra
        .terms
        .keys()
        .chain(rb.terms.keys())
        .filter(|k| k.0 + k.2 <= window)
        .cloned()
        .collect();
    for k in keys {
        let ca = ra.terms.get(&k).cloned().unwrap_or_else(BigInt::zero);
        let cb = rb.terms.get(&k).cloned().unwrap_or_else(BigInt::zero);
        if ca != cb {
            return Some(format!(
                "exponent ({},{},{})/{}: {} vs {}",
                k.0, k.1, k.2, den, ca, cb
            ));
        }
    }
    None
}

/// Jacobi series: keys `(norm numerator, index numerator)` over `den`;
/// the second slot tracks the power of `zeta = e^{2 pi i z}`. Truncation
/// is on the norm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiQSeries {
    pub den: u64,
    pub cutoff: i64,
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl JacobiQSeries {
    pub fn zero(den: u64, cutoff: i64) -> Self {
        JacobiQSeries {
            den,
            cutoff,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(den: u64, cutoff: i64) -> Self {
        let mut s = Self::zero(den, cutoff);
        s.add_term((0, 0), BigInt::one());
        s
    }

    pub fn add_term(&mut self, key: (i64, i64), c: BigInt) {
        if key.0 > self.cutoff || c.is_zero() {
            return;
        }
        let e = self.terms.entry(key).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &BigInt)> {
        self.terms.iter()
    }

    pub fn mul(&self, other: &JacobiQSeries) -> JacobiQSeries {
        assert_eq!(self.den, other.den);
        let mut out = JacobiQSeries::zero(self.den, self.cutoff.min(other.cutoff));
        for (&(n1, i1), c1) in &self.terms {
            for (&(n2, i2), c2) in &other.terms {
                out.add_term((n1 + n2, i1 + i2), c1 * c2);
            }
        }
        out
    }

    pub fn rescale_den(&self, new_den: u64) -> JacobiQSeries {
        assert_eq!(new_den % self.den, 0);
        let f = (new_den / self.den) as i64;
        let mut out = JacobiQSeries::zero(new_den, self.cutoff.saturating_mul(f));
        for (&(n, i), c) in &self.terms {
            out.add_term((n * f, i * f), c.clone());
        }
        out
    }

    /// Set the elliptic variable to zero (`zeta -> 1`): collapse to a
    /// plain q-series.
    pub fn at_z_zero(&self) -> QSeries {
        let mut out = QSeries::zero(self.den, self.cutoff);
        for (&(n, _), c) in &self.terms {
            out.add_term(n, c.clone());
        }
        out
    }
}

impl fmt::Display for JacobiQSeries {
    /// One line per term, `m/den z^i/den: coeff`, ascending in the norm.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (&(n, i), c) in &self.terms {
            writeln!(f, "{}/{} z^{}/{}: {}", n, self.den, i, self.den, c)?;
        }
        Ok(())
    }
}

pub fn jacobi_series_diff(a: &JacobiQSeries, b: &JacobiQSeries) -> Option<String> {
    let den = lcm_u64(a.den, b.den);
    let ra = a.rescale_den(den);
    let rb = b.rescale_den(den);
    let window = ra.cutoff.min(rb.cutoff);
    let keys: std::collections::BTreeSet<(i64, i64)> = ra
        .terms
        .keys()
        .chain(rb.terms.keys())
        .filter(|k| k.0 <= window)
        .cloned()
        .collect();
    for k in keys {
        let ca = ra.terms.get(&k).cloned().unwrap_or_else(BigInt::zero);
        let cb = rb.terms.get(&k).cloned().unwrap_or_else(BigInt::zero);
        if ca != cb {
            return Some(format!(
                "q^{}/{} zeta^{}/{}: {} vs {}",
                k.0, den, k.1, den, ca, cb
            ));
        }
    }
    None
}

/// Common denominator that makes every Gram entry of `l` an integer
/// multiple of `1/den`.
fn lattice_den(l: &Lattice) -> u64 {
    let gram = l.gram_true();
    let mut den = BigInt::one();
    for i in 0..gram.rows {
        for j in 0..gram.cols {
            den = den.lcm(gram.get(i, j).denom());
        }
    }
    den.to_u64().expect("denominator fits in u64")
}

fn rat_to_numer(v: &Rat, den: u64) -> i64 {
    let scaled = v * Rat::from_integer(BigInt::from(den));
    assert!(scaled.is_integer());
    scaled.to_integer().to_i64().expect("exponent fits in i64")
}

/// Theta series of a lattice: coefficient of `q^{m/den}` counts vectors of
/// norm `m/den`, for `m/den <= max_norm`.
pub fn theta_lattice(l: &Lattice, max_norm: &Rat) -> QSeries {
    let den = lattice_den(l);
    let cutoff = (max_norm * Rat::from_integer(BigInt::from(den)))
        .floor()
        .to_integer()
        .to_i64()
        .expect("cutoff fits in i64");
    let mut out = QSeries::zero(den, cutoff);
    for (_, norm) in enumerate_vectors(l, max_norm) {
        out.add_term(rat_to_numer(&norm, den), BigInt::one());
    }
    out
}

/// Genus-2 theta series: the key of a pair `(x1, x2)` is
/// `(<x1,x1>, 2 <x1,x2>, <x2,x2>) * den`, truncated on the diagonal sum.
pub fn theta_lattice_g2(l: &Lattice, max_combined: &Rat) -> QSeries2 {
    let den = lattice_den(l);
    let cutoff = (max_combined * Rat::from_integer(BigInt::from(den)))
        .floor()
        .to_integer()
        .to_i64()
        .expect("cutoff fits in i64");
    let vectors = enumerate_vectors(l, max_combined);
    let mut out = QSeries2::zero(den, cutoff);
    for (z1, n1) in &vectors {
        for (z2, n2) in &vectors {
            if n1 + n2 > *max_combined {
                continue;
            }
            let cross = inner_true(l, z1, z2);
            let key = (
                rat_to_numer(n1, den),
                2 * rat_to_numer(&cross, den),
                rat_to_numer(n2, den),
            );
            out.add_term(key, BigInt::one());
        }
    }
    out
}

/// Residue-class theta function `f_a = sum_{b = a mod k} q^{b^2 / k}`
/// (also `psi_a`), complete up to `max_norm`.
pub fn theta_fa(ring: RingZk, a: u64, max_norm: &Rat) -> QSeries {
    let k = ring.size();
    let cutoff = (max_norm * Rat::from_integer(BigInt::from(k)))
        .floor()
        .to_integer()
        .to_i64()
        .expect("cutoff fits in i64");
    let mut out = QSeries::zero(k, cutoff);
    let a = (a % k) as i64;
    let k = k as i64;
    let mut b = a;
    while b * b <= cutoff {
        out.add_term(b * b, BigInt::one());
        b += k;
    }
    let mut b = a - k;
    while b * b <= cutoff {
        out.add_term(b * b, BigInt::one());
        b -= k;
    }
    out
}

/// Genus-2 residue theta for `a in R^2`: keys `(b1^2, 2 b1 b2, b2^2)` over
/// `den = k`, truncated on `b1^2 + b2^2`.
pub fn theta_fa_g2(ring: RingZk, a: (u64, u64), max_combined: &Rat) -> QSeries2 {
    let k = ring.size() as i64;
    let cutoff = (max_combined * Rat::from_integer(BigInt::from(ring.size())))
        .floor()
        .to_integer()
        .to_i64()
        .expect("cutoff fits in i64");
    let mut out = QSeries2::zero(ring.size(), cutoff);
    let a1 = (a.0 % ring.size()) as i64;
    let a2 = (a.1 % ring.size()) as i64;
    let mut b1 = a1;
    while b1 * b1 <= cutoff {
        push_fa2_row(&mut out, b1, a2, k, cutoff);
        b1 += k;
    }
    let mut b1 = a1 - k;
    while b1 * b1 <= cutoff {
        push_fa2_row(&mut out, b1, a2, k, cutoff);
        b1 -= k;
    }
    out
}

fn push_fa2_row(out: &mut QSeries2, b1: i64, a2: i64, k: i64, cutoff: i64) {
    let rem = cutoff - b1 * b1;
    let mut b2 = a2;
    while b2 * b2 <= rem {
        out.add_term((b1 * b1, 2 * b1 * b2, b2 * b2), BigInt::one());
        b2 += k;
    }
    let mut b2 = a2 - k;
    while b2 * b2 <= rem {
        out.add_term((b1 * b1, 2 * b1 * b2, b2 * b2), BigInt::one());
        b2 -= k;
    }
}

/// `phi_a(tau, z) = sum_{b = a mod k} q^{b^2/k} zeta^b`; index numerators
/// share the denominator `k`.
pub fn phi_a(ring: RingZk, a: u64, max_norm: &Rat) -> JacobiQSeries {
    let k = ring.size();
    let cutoff = (max_norm * Rat::from_integer(BigInt::from(k)))
        .floor()
        .to_integer()
        .to_i64()
        .expect("cutoff fits in i64");
    let mut out = JacobiQSeries::zero(k, cutoff);
    let a = (a % k) as i64;
    let k = k as i64;
    let mut b = a;
    while b * b <= cutoff {
        out.add_term((b * b, b * k), BigInt::one());
        b += k;
    }
    let mut b = a - k;
    while b * b <= cutoff {
        out.add_term((b * b, b * k), BigInt::one());
        b -= k;
    }
    out
}

/// Substitute `x_a <- images[a]` into a genus-1 complete enumerator;
/// coefficients must be rational integers.
pub fn substitute_series(p: &MultiPoly, images: &[QSeries]) -> Result<QSeries> {
    assert_eq!(p.genus, 1);
    assert!(!p.paired);
    assert_eq!(images.len(), p.x_arity());
    let den = images.first().map_or(1, |s| s.den);
    let cutoff = images.iter().map(|s| s.cutoff).min().unwrap_or(0);
    let mut out = QSeries::zero(den, cutoff);
    for (m, c) in p.integer_coefficients().map_err(|_| {
        Error::NonIntegerResult("series substitution needs integer coefficients".into())
    })? {
        let mut acc = QSeries::one(den, cutoff);
        for (a, &e) in m.xs.iter().enumerate() {
            for _ in 0..e {
                acc = acc.mul(&images[a]);
            }
        }
        out = out.add(&acc.scale(&c));
    }
    Ok(out)
}

/// Genus-2 variant of [`substitute_series`].
pub fn substitute_series_g2(p: &MultiPoly, images: &[QSeries2]) -> Result<QSeries2> {
    assert_eq!(p.genus, 2);
    assert!(!p.paired);
    assert_eq!(images.len(), p.x_arity());
    let den = images.first().map_or(1, |s| s.den);
    let cutoff = images.iter().map(|s| s.cutoff).min().unwrap_or(0);
    let mut out = QSeries2::zero(den, cutoff);
    for (m, c) in p.integer_coefficients()? {
        let mut acc = QSeries2::one(den, cutoff);
        for (a, &e) in m.xs.iter().enumerate() {
            for _ in 0..e {
                acc = acc.mul(&images[a]);
            }
        }
        out = add2(&out, &acc.scale(&c));
    }
    Ok(out)
}

fn add2(a: &QSeries2, b: &QSeries2) -> QSeries2 {
    let mut out = QSeries2::zero(a.den, a.cutoff.min(b.cutoff));
    for (&k, c) in a.terms.iter().chain(b.terms.iter()) {
        out.add_term(k, c.clone());
    }
    out
}

/// Substitute `x_a <- phi_a` (on the distinguished places) and
/// `y_a <- psi_a` into a Jacobi polynomial.
pub fn substitute_series_jacobi(
    p: &MultiPoly,
    phi: &[JacobiQSeries],
    psi: &[QSeries],
) -> Result<JacobiQSeries> {
    assert!(p.paired);
    assert_eq!(p.genus, 1);
    let den = phi.first().map_or(1, |s| s.den);
    let cutoff = phi
        .iter()
        .map(|s| s.cutoff)
        .chain(psi.iter().map(|s| s.cutoff))
        .min()
        .unwrap_or(0);
    let mut out = JacobiQSeries::zero(den, cutoff);
    for (m, c) in p.integer_coefficients()? {
        let mut acc = JacobiQSeries::one(den, cutoff);
        for (a, &e) in m.xs.iter().enumerate() {
            for _ in 0..e {
                acc = acc.mul(&phi[a]);
            }
        }
        for (a, &e) in m.ys.iter().enumerate() {
            for _ in 0..e {
                // psi contributes no zeta power
                let mut lifted = JacobiQSeries::zero(den, cutoff);
                for (n, cc) in psi[a].terms() {
                    lifted.add_term((n, 0), cc.clone());
                }
                acc = acc.mul(&lifted);
            }
        }
        let mut scaled = JacobiQSeries::zero(den, cutoff);
        for (&k, cc) in &acc.terms {
            scaled.add_term(k, cc * &c);
        }
        out = {
            let mut merged = out;
            for (&k, cc) in &scaled.terms {
                merged.add_term(k, cc.clone());
            }
            merged
        };
    }
    Ok(out)
}

/// Jacobi theta series of a lattice with respect to a member `y`:
/// `sum_x q^{<x,x>} zeta^{<x,y>}`.
pub fn jacobi_theta_lattice(
    l: &Lattice,
    y_stored: &[Rat],
    max_norm: &Rat,
) -> Result<JacobiQSeries> {
    if !l.contains_stored(y_stored) {
        return Err(Error::NotMember);
    }
    let y_coeffs: Vec<BigInt> = l
        .basis
        .solve_left(y_stored)
        .expect("member has coordinates")
        .iter()
        .map(|c| c.to_integer())
        .collect();
    let den = lattice_den(l);
    let cutoff = (max_norm * Rat::from_integer(BigInt::from(den)))
        .floor()
        .to_integer()
        .to_i64()
        .expect("cutoff fits in i64");
    let mut out = JacobiQSeries::zero(den, cutoff);
    for (z, norm) in enumerate_vectors(l, max_norm) {
        let idx = inner_true(l, &z, &y_coeffs);
        out.add_term(
            (rat_to_numer(&norm, den), rat_to_numer(&idx, den)),
            BigInt::one(),
        );
    }
    Ok(out)
}

/// Check that the genus-`g` theta series of the orbit-coordinate
/// Construction-A lattice of `C theta_H` equals the complete enumerator
/// with the residue theta functions substituted.
pub fn verify_theta_correspondence(
    c: &Code,
    op: &HaydenOperator,
    genus: usize,
    max_norm: &Rat,
) -> Result<Report> {
    let d = project_theta(c, op);
    let lam = construction_a_orbit(&d);
    let ring = c.ring;
    match genus {
        1 => {
            let lhs = theta_lattice(&lam, max_norm);
            let images: Vec<QSeries> = (0..ring.size())
                .map(|a| theta_fa(ring, a, max_norm))
                .collect();
            let rhs = substitute_series(&cwe_h(&d), &images)?;
            let witness = series_diff(&lhs, &rhs);
            Ok(Report {
                flavor: "theta-correspondence(g=1)".into(),
                pass: witness.is_none(),
                lhs: first_terms(&lhs, 4),
                rhs: first_terms(&rhs, 4),
                witness,
            })
        }
        2 => {
            let lhs = theta_lattice_g2(&lam, max_norm);
            let k = ring.size();
            let mut images = Vec::with_capacity((k * k) as usize);
            for a1 in 0..k {
                for a2 in 0..k {
                    images.push(theta_fa_g2(ring, (a1, a2), max_norm));
                }
            }
            let rhs = substitute_series_g2(&cwe_g(&d, 2)?, &images)?;
            let witness = series2_diff(&lhs, &rhs);
            Ok(Report {
                flavor: "theta-correspondence(g=2)".into(),
                pass: witness.is_none(),
                lhs: format!("{} exponent keys", lhs.terms.len()),
                rhs: format!("{} exponent keys", rhs.terms.len()),
                witness,
            })
        }
        _ => Err(Error::Parse(format!("unsupported genus {}", genus))),
    }
}

fn first_terms(s: &QSeries, n: usize) -> String {
    s.terms
        .iter()
        .take(n)
        .map(|(m, c)| format!("{} q^{}/{}", c, m, s.den))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Check that the Jacobi polynomial of `C theta_H` with `x_a <- phi_a`,
/// `y_a <- psi_a` equals the Jacobi theta series of the orbit-coordinate
/// Construction-A lattice with reference vector `sqrt(k) * 1_T` (stored
/// `k * 1_T`). Any mismatch is reported as a coefficient diff.
pub fn verify_jacobi_correspondence(
    c: &Code,
    op: &HaydenOperator,
    t_set: &JacobiSet,
    max_norm: &Rat,
) -> Result<Report> {
    let d = project_theta(c, op);
    let lam = construction_a_orbit(&d);
    let ring = c.ring;
    let phi: Vec<JacobiQSeries> = (0..ring.size())
        .map(|a| phi_a(ring, a, max_norm))
        .collect();
    let psi: Vec<QSeries> = (0..ring.size())
        .map(|a| theta_fa(ring, a, max_norm))
        .collect();
    let poly_side = substitute_series_jacobi(&jacobi_poly(&d, t_set), &phi, &psi)?;
    let y_stored: Vec<Rat> = (0..d.t())
        .map(|j| {
            if t_set.contains(&j) {
                Rat::from_integer(BigInt::from(ring.size()))
            } else {
                Rat::zero()
            }
        })
        .collect();
    let lattice_side = jacobi_theta_lattice(&lam, &y_stored, max_norm)?;
    let witness = jacobi_series_diff(&poly_side, &lattice_side);
    Ok(Report {
        flavor: format!(
            "jacobi-correspondence(T={{{}}})",
            t_set
                .iter()
                .map(|i| (i + 1).to_string())
                .collect::<Vec<_>>()
                .join(",")
        ),
        pass: witness.is_none(),
        lhs: format!("{} terms (polynomial side)", poly_side.terms.len()),
        rhs: format!("{} terms (lattice side)", lattice_side.terms.len()),
        witness,
    })
}

/// Numeric check of the theta transformation formula
/// `theta_{dual}(z) = det^{1/2} (i/z)^{r/2} theta(-1/z)` at a purely
/// imaginary `z = i * z_im`, by direct summation with a tail bound.
pub fn jacobi_formula_check(l: &Lattice, z_im: f64, tol: f64) -> Result<Report> {
    assert!(z_im >= 1.0, "fast convergence needs Im(z) >= 1");
    let r = l.rank();
    let det = l.det_gram().to_f64().expect("finite determinant").sqrt();
    let dual = dual_lattice(l);
    let rate = std::f64::consts::PI * z_im.min(1.0 / z_im);
    let mut cut = ((10.0 / tol).ln() / rate).ceil() + 4.0;
    for _ in 0..6 {
        let lhs = theta_value(&dual, z_im, cut);
        let rhs = det * z_im.powf(-(r as f64) / 2.0) * theta_value(l, 1.0 / z_im, cut);
        let lhs_far = theta_value(&dual, z_im, cut + 4.0);
        let rhs_far = det * z_im.powf(-(r as f64) / 2.0) * theta_value(l, 1.0 / z_im, cut + 4.0);
        if (lhs_far - lhs).abs() <= tol / 10.0 && (rhs_far - rhs).abs() <= tol / 10.0 {
            let diff = (lhs_far - rhs_far).abs();
            return Ok(Report {
                flavor: "jacobi-formula".into(),
                pass: diff <= tol,
                lhs: format!("{:.12e}", lhs_far),
                rhs: format!("{:.12e}", rhs_far),
                witness: if diff <= tol {
                    None
                } else {
                    Some(format!("|difference| = {:.3e}", diff))
                },
            });
        }
        cut += 8.0;
    }
    Err(Error::NotConverged(format!(
        "tail bound not reached at norm cutoff {}",
        cut
    )))
}

/// `sum_x exp(-pi * y * <x,x>)` over vectors of norm at most `cut`.
fn theta_value(l: &Lattice, y: f64, cut: f64) -> f64 {
    let max_norm = Rat::new(BigInt::from((cut * 16.0).ceil() as i64), BigInt::from(16));
    enumerate_vectors(l, &max_norm)
        .iter()
        .map(|(_, n)| (-std::f64::consts::PI * y * n.to_f64().unwrap()).exp())
        .sum()
}
