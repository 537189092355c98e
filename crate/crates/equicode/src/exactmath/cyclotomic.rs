//! Cyclotomic integers represented in `Z[x]/(x^k - 1)`.
//!
//! A value is a coefficient vector of length `k`; the element is
//! `sum coeffs[j] * zeta_k^j`. Two values are equal iff their difference is
//! divisible by the k-th cyclotomic polynomial `Phi_k`, so canonicalization
//! reduces modulo `Phi_k` and keeps arithmetic integer-only. Character sums
//! over `Z_k` live here naturally as group-ring elements.

use num::{BigInt, Integer, One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// Monic `Phi_k` as an ascending coefficient vector, memoized per conductor.
fn cyclotomic_polynomial(k: usize) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&k) {
        return p.clone();
    }
    // Phi_k = (x^k - 1) / prod_{d | k, d < k} Phi_d, by exact division.
    let mut num = vec![BigInt::zero(); k + 1];
    num[0] = -BigInt::one();
    num[k] = BigInt::one();
    for d in 1..k {
        if k % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            num = poly_div_exact(&num, &phi_d);
        }
    }
    let arc = Arc::new(num);
    cache.lock().unwrap().insert(k, arc.clone());
    arc
}

/// Exact division of `a` by monic `b` over `Z`; panics if not exact.
fn poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    assert!(b[db].is_one(), "divisor must be monic");
    let mut rem = a.to_vec();
    let da = deg(&rem);
    if da < db as isize {
        assert!(rem.iter().all(|c| c.is_zero()), "division not exact");
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); (da as usize) - db + 1];
    for i in (db..=da as usize).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut rem[i]);
        for j in 0..db {
            rem[i - db + j] -= &c * &b[j];
        }
        quot[i - db] = c;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "division not exact");
    quot
}

fn deg(p: &[BigInt]) -> isize {
    for i in (0..p.len()).rev() {
        if !p[i].is_zero() {
            return i as isize;
        }
    }
    -1
}

/// An element of `Z[zeta_k]`, stored as a length-`k` coefficient vector in
/// `Z[x]/(x^k - 1)`. Canonical form has degree `< deg Phi_k`.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    conductor: usize,
    coeffs: Vec<BigInt>,
    canonical: bool,
}

impl Cyclotomic {
    pub fn zero(k: usize) -> Self {
        assert!(k >= 1);
        Cyclotomic {
            conductor: k,
            coeffs: vec![BigInt::zero(); k],
            canonical: true,
        }
    }

    pub fn one(k: usize) -> Self {
        Self::from_bigint(k, BigInt::one())
    }

    pub fn from_int(k: usize, v: i64) -> Self {
        Self::from_bigint(k, BigInt::from(v))
    }

    pub fn from_bigint(k: usize, v: BigInt) -> Self {
        let mut c = Self::zero(k);
        c.coeffs[0] = v;
        c.canonical = false;
        c
    }

    /// `zeta_k^e`, exponent taken modulo `k`.
    pub fn zeta_pow(k: usize, e: i64) -> Self {
        let mut c = Self::zero(k);
        let e = e.rem_euclid(k as i64) as usize;
        c.coeffs[e] = BigInt::one();
        c.canonical = false;
        c
    }

    pub fn conductor(&self) -> usize {
        self.conductor
    }

    /// Raw coefficients in `Z[x]/(x^k - 1)` (not necessarily canonical).
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Reduce modulo `Phi_k` in place. Idempotent.
    pub fn reduce(&mut self) {
        if self.canonical {
            return;
        }
        let phi = cyclotomic_polynomial(self.conductor);
        let dphi = phi.len() - 1;
        for i in (dphi..self.coeffs.len()).rev() {
            if self.coeffs[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut self.coeffs[i]);
            for j in 0..dphi {
                self.coeffs[i - dphi + j] -= &c * &phi[j];
            }
        }
        self.canonical = true;
    }

    /// Canonical representative modulo `Phi_k`.
    pub fn reduced(&self) -> Self {
        let mut c = self.clone();
        c.reduce();
        c
    }

    pub fn is_zero(&self) -> bool {
        self.reduced().coeffs.iter().all(|c| c.is_zero())
    }

    /// The value as a rational integer, if the canonical form is constant.
    pub fn as_integer(&self) -> Option<BigInt> {
        let r = self.reduced();
        if r.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(r.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.conductor, other.conductor);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Cyclotomic {
            conductor: self.conductor,
            coeffs,
            canonical: false,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.conductor, other.conductor);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Cyclotomic {
            conductor: self.conductor,
            coeffs,
            canonical: false,
        }
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            canonical: false,
        }
    }

    /// Cyclic convolution (`x^k = 1`), reduced afterwards.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.conductor, other.conductor);
        let k = self.conductor;
        let mut coeffs = vec![BigInt::zero(); k];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[(i + j) % k] += a * b;
            }
        }
        let mut c = Cyclotomic {
            conductor: k,
            coeffs,
            canonical: false,
        };
        c.reduce();
        c
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            canonical: self.canonical,
        }
    }

    /// Exact division of every canonical coefficient by an integer.
    pub fn div_exact(&self, s: &BigInt) -> crate::Result<Self> {
        assert!(!s.is_zero());
        let r = self.reduced();
        let mut coeffs = Vec::with_capacity(r.coeffs.len());
        for c in &r.coeffs {
            let (q, rem) = c.div_rem(s);
            if !rem.is_zero() {
                return Err(crate::Error::NonIntegerResult(format!(
                    "coefficient {} not divisible by {}",
                    c, s
                )));
            }
            coeffs.push(q);
        }
        Ok(Cyclotomic {
            conductor: self.conductor,
            coeffs,
            canonical: true,
        })
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.conductor == other.conductor && self.reduced().coeffs == other.reduced().coeffs
    }
}

impl Eq for Cyclotomic {}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.reduced();
        let mut first = true;
        let mut out = String::new();
        for (j, c) in r.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = c.is_negative();
            if first {
                if sign {
                    out.push('-');
                }
                first = false;
            } else {
                out.push_str(if sign { " - " } else { " + " });
            }
            if j == 0 {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                out.push('z');
                if j > 1 {
                    out.push_str(&format!("^{}", j));
                }
            }
        }
        if first {
            out.push('0');
        }
        f.write_str(&out)
    }
}
