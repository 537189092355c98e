//! Polynomial containers for the enumerator families: homogeneous bivariate
//! polynomials with rational coefficients, and sparse multivariate
//! polynomials over `Z[zeta_k]` whose variables are indexed by `R^g`
//! (optionally with a paired second family indexed by `R`).

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, One, Zero};

use crate::exactmath::{Cyclotomic, Rat};
use crate::{Error, Result};

/// Homogeneous bivariate polynomial of fixed total degree. Terms are keyed
/// by the `y`-exponent `i` (the term is `x^{d-i} y^i`); absent keys are
/// zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivarPoly {
    pub degree: usize,
    coeffs: BTreeMap<usize, Rat>,
}

impl BivarPoly {
    pub fn zero(degree: usize) -> Self {
        BivarPoly {
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, y_exp: usize, c: Rat) {
        assert!(y_exp <= self.degree);
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(y_exp).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&y_exp);
        }
    }

    pub fn coeff(&self, y_exp: usize) -> Rat {
        self.coeffs.get(&y_exp).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rat)> {
        self.coeffs.iter().map(|(&i, c)| (i, c))
    }

    pub fn is_zero_poly(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, s: &Rat) -> BivarPoly {
        let mut out = BivarPoly::zero(self.degree);
        for (&i, c) in &self.coeffs {
            out.add_term(i, c * s);
        }
        out
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    /// Value at `x = y = 1`: the coefficient sum.
    pub fn eval_at_ones(&self) -> Rat {
        self.coeffs.values().fold(Rat::zero(), |a, b| a + b)
    }

    /// Substitute the linear forms `x -> ax*x + bx*y`, `y -> ay*x + by*y`
    /// and expand exactly. Degree is preserved.
    pub fn substitute(&self, x_img: (&Rat, &Rat), y_img: (&Rat, &Rat)) -> BivarPoly {
        let d = self.degree;
        let mut out = BivarPoly::zero(d);
        // binomial expansion of (a*x + b*y)^e
        let pow_terms = |a: &Rat, b: &Rat, e: usize| -> Vec<Rat> {
            let mut v = Vec::with_capacity(e + 1);
            let mut binom = BigInt::one();
            for j in 0..=e {
                let c = Rat::from_integer(binom.clone()) * pow_rat(a, e - j) * pow_rat(b, j);
                v.push(c);
                if j < e {
                    binom = binom * BigInt::from((e - j) as u64) / BigInt::from((j + 1) as u64);
                }
            }
            v
        };
        for (&i, c) in &self.coeffs {
            let xe = pow_terms(x_img.0, x_img.1, d - i);
            let ye = pow_terms(y_img.0, y_img.1, i);
            for (jx, cx) in xe.iter().enumerate() {
                if cx.is_zero() {
                    continue;
                }
                for (jy, cy) in ye.iter().enumerate() {
                    if cy.is_zero() {
                        continue;
                    }
                    out.add_term(jx + jy, c * cx * cy);
                }
            }
        }
        out
    }
}

fn pow_rat(a: &Rat, e: usize) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..e {
        acc *= a;
    }
    acc
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        let mut first = true;
        for (&i, c) in &self.coeffs {
            let neg = c < &Rat::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    out.push('-');
                }
                first = false;
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() {
                factors.push(rat_string(&mag));
            }
            let xe = self.degree - i;
            if xe > 0 {
                factors.push(if xe == 1 { "x".into() } else { format!("x^{}", xe) });
            }
            if i > 0 {
                factors.push(if i == 1 { "y".into() } else { format!("y^{}", i) });
            }
            if factors.is_empty() {
                factors.push(rat_string(&mag));
            }
            out.push_str(&factors.join("*"));
        }
        f.write_str(&out)
    }
}

/// Canonical rational rendering: `"3"` or `"-1/2"`.
pub fn rat_string(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Monomial of a [`MultiPoly`]: exponents for the `x`-family (arity `k^g`)
/// and, when the polynomial is paired, for the `y`-family (arity `k`).
///
/// Ordered so that terms print with the lowest-indexed variables first
/// (`x0^2` before `x1*x3`): descending lexicographic on exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub xs: Vec<u16>,
    pub ys: Vec<u16>,
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other
            .xs
            .cmp(&self.xs)
            .then_with(|| other.ys.cmp(&self.ys))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    fn one(x_arity: usize, y_arity: usize) -> Self {
        Monomial {
            xs: vec![0; x_arity],
            ys: vec![0; y_arity],
        }
    }
}

/// Sparse homogeneous polynomial in variables `x_a`, `a in R^g` (plus an
/// optional paired family `y_a`, `a in R`), with coefficients in
/// `Z[zeta_k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    /// `|R| = k`.
    pub ring_size: u64,
    pub genus: usize,
    /// Total degree of every term.
    pub degree: usize,
    /// Whether the paired `y`-family is present.
    pub paired: bool,
    terms: BTreeMap<Monomial, Cyclotomic>,
}

impl MultiPoly {
    pub fn zero(ring_size: u64, genus: usize, degree: usize, paired: bool) -> Self {
        MultiPoly {
            ring_size,
            genus,
            degree,
            paired,
            terms: BTreeMap::new(),
        }
    }

    /// Number of `x`-variables, `k^g`.
    pub fn x_arity(&self) -> usize {
        (self.ring_size as usize).pow(self.genus as u32)
    }

    pub fn y_arity(&self) -> usize {
        if self.paired {
            self.ring_size as usize
        } else {
            0
        }
    }

    /// Variable index of a tuple `a in R^g` (lexicographic, first entry
    /// most significant).
    pub fn var_index(&self, a: &[u64]) -> usize {
        assert_eq!(a.len(), self.genus);
        let k = self.ring_size as usize;
        a.iter().fold(0usize, |acc, &d| acc * k + d as usize)
    }

    pub fn add_term(&mut self, m: Monomial, c: Cyclotomic) {
        debug_assert_eq!(m.xs.len(), self.x_arity());
        debug_assert_eq!(m.ys.len(), self.y_arity());
        debug_assert_eq!(
            m.xs.iter().map(|&e| e as usize).sum::<usize>()
                + m.ys.iter().map(|&e| e as usize).sum::<usize>(),
            self.degree
        );
        let entry = self
            .terms
            .entry(m)
            .or_insert_with(|| Cyclotomic::zero(self.ring_size as usize));
        *entry = entry.add(&c);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Cyclotomic)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero_poly(&self) -> bool {
        self.terms.values().all(|c| c.is_zero())
    }

    /// Normalize: reduce all coefficients, drop zeros.
    pub fn normalized(&self) -> MultiPoly {
        let mut out = MultiPoly::zero(self.ring_size, self.genus, self.degree, self.paired);
        for (m, c) in &self.terms {
            let r = c.reduced();
            if !r.is_zero() {
                out.terms.insert(m.clone(), r);
            }
        }
        out
    }

    /// Coefficient sum (all variables set to 1).
    pub fn eval_at_ones(&self) -> Cyclotomic {
        self.terms
            .values()
            .fold(Cyclotomic::zero(self.ring_size as usize), |a, b| a.add(b))
    }

    /// Exact division of every coefficient by an integer.
    pub fn div_exact(&self, s: &BigInt) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero(self.ring_size, self.genus, self.degree, self.paired);
        for (m, c) in &self.terms {
            let q = c.div_exact(s)?;
            if !q.is_zero() {
                out.terms.insert(m.clone(), q);
            }
        }
        Ok(out)
    }

    /// Assert every coefficient is a rational integer, returning them.
    pub fn integer_coefficients(&self) -> Result<Vec<(Monomial, BigInt)>> {
        let mut out = Vec::new();
        for (m, c) in &self.terms {
            match c.as_integer() {
                Some(v) => {
                    if !v.is_zero() {
                        out.push((m.clone(), v));
                    }
                }
                None => {
                    return Err(Error::NonIntegerResult(format!(
                        "coefficient {} is not a rational integer",
                        c
                    )))
                }
            }
        }
        Ok(out)
    }

    /// Substitute each variable by a linear form in the same family and
    /// expand exactly over `Z[zeta_k]`: `x_a -> sum_b x_images[a][b] x_b`
    /// and, when paired, `y_a -> sum_b y_images[a][b] y_b`.
    ///
    /// Expansion goes factor by factor with like-monomial merging, which
    /// keeps intermediates at the size of the final dense support.
    pub fn substitute_linear(
        &self,
        x_images: &[Vec<Cyclotomic>],
        y_images: Option<&[Vec<Cyclotomic>]>,
    ) -> MultiPoly {
        assert_eq!(x_images.len(), self.x_arity());
        if self.paired {
            assert_eq!(
                y_images.expect("paired family images").len(),
                self.y_arity()
            );
        }
        let k = self.ring_size as usize;
        let mut result = MultiPoly::zero(self.ring_size, self.genus, self.degree, self.paired);
        for (mono, coeff) in &self.terms {
            let mut acc: BTreeMap<Monomial, Cyclotomic> = BTreeMap::new();
            acc.insert(Monomial::one(self.x_arity(), self.y_arity()), coeff.clone());
            let expand = |acc: &mut BTreeMap<Monomial, Cyclotomic>,
                          images: &[Cyclotomic],
                          is_y: bool| {
                let mut next: BTreeMap<Monomial, Cyclotomic> = BTreeMap::new();
                for (m, c) in acc.iter() {
                    for (b, w) in images.iter().enumerate() {
                        if w.is_zero() {
                            continue;
                        }
                        let mut nm = m.clone();
                        if is_y {
                            nm.ys[b] += 1;
                        } else {
                            nm.xs[b] += 1;
                        }
                        let nc = c.mul(w);
                        let entry = next.entry(nm).or_insert_with(|| Cyclotomic::zero(k));
                        *entry = entry.add(&nc);
                    }
                }
                *acc = next;
            };
            for (a, &e) in mono.xs.iter().enumerate() {
                for _ in 0..e {
                    expand(&mut acc, &x_images[a], false);
                }
            }
            if let Some(y_images) = y_images {
                for (a, &e) in mono.ys.iter().enumerate() {
                    for _ in 0..e {
                        expand(&mut acc, &y_images[a], true);
                    }
                }
            }
            for (m, c) in acc {
                result.add_term(m, c);
            }
        }
        result.normalized()
    }

    /// Specialize a genus-1 unpaired polynomial to the weight enumerator:
    /// `x_0 -> x`, every other `x_a -> y`. Coefficients must be rational
    /// integers.
    pub fn specialize_cwe(&self) -> Result<BivarPoly> {
        assert_eq!(self.genus, 1, "specialization needs a genus-1 family");
        assert!(!self.paired);
        let mut out = BivarPoly::zero(self.degree);
        for (m, c) in self.integer_coefficients()? {
            let y_exp: usize = m.xs[1..].iter().map(|&e| e as usize).sum();
            out.add_term(y_exp, Rat::from_integer(c));
        }
        Ok(out)
    }

    /// Merge the paired `y`-family into the `x`-family (`y_a -> x_a`);
    /// collapses a Jacobi polynomial to the plain complete enumerator.
    pub fn collapse_pairing(&self) -> MultiPoly {
        assert!(self.paired);
        assert_eq!(self.genus, 1);
        let mut out = MultiPoly::zero(self.ring_size, 1, self.degree, false);
        for (m, c) in &self.terms {
            let mut xs = m.xs.clone();
            for (a, &e) in m.ys.iter().enumerate() {
                xs[a] += e;
            }
            out.add_term(Monomial { xs, ys: Vec::new() }, c.clone());
        }
        out.normalized()
    }

    fn var_name(&self, family: char, idx: usize) -> String {
        if self.genus == 1 {
            format!("{}{}", family, idx)
        } else {
            let k = self.ring_size as usize;
            let mut digits = vec![0usize; self.genus];
            let mut v = idx;
            for d in digits.iter_mut().rev() {
                *d = v % k;
                v /= k;
            }
            format!(
                "{}({})",
                family,
                digits
                    .iter()
                    .map(|d| d.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )
        }
    }

    /// JSON map form with stringified exponent keys.
    pub fn to_json(&self) -> serde_json::Value {
        let norm = self.normalized();
        let mut map = serde_json::Map::new();
        for (m, c) in &norm.terms {
            let key = if self.paired {
                format!("x:{:?} y:{:?}", m.xs, m.ys)
            } else {
                format!("x:{:?}", m.xs)
            };
            map.insert(key, serde_json::Value::String(c.to_string()));
        }
        serde_json::Value::Object(map)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let norm = self.normalized();
        if norm.terms.is_empty() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = Vec::new();
        for (m, c) in &norm.terms {
            let mut factors: Vec<String> = Vec::new();
            match c.as_integer() {
                Some(v) if v.is_one() => {}
                Some(v) => factors.push(v.to_string()),
                None => factors.push(format!("({})", c)),
            }
            for (a, &e) in m.xs.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = norm.var_name('x', a);
                factors.push(if e == 1 { name } else { format!("{}^{}", name, e) });
            }
            for (a, &e) in m.ys.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = norm.var_name('y', a);
                factors.push(if e == 1 { name } else { format!("{}^{}", name, e) });
            }
            if factors.is_empty() {
                factors.push("1".into());
            }
            parts.push(factors.join("*"));
        }
        f.write_str(&parts.join(" + "))
    }
}
