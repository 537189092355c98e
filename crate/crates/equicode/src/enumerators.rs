//! The enumerator families: Hamming weight enumerator, H-weight enumerator,
//! complete H-weight enumerator (any genus), harmonic H-weight enumerator,
//! and the complete H-Jacobi polynomial.
//!
//! Everything is computed in orbit coordinates; the trivial partition
//! recovers the classical objects through the same code path.

use std::collections::BTreeSet;

use num::BigInt;

use crate::exactmath::{Cyclotomic, Rat};
use crate::gcode::{h_weight, weight, Code, OrbitCode};
use crate::harmonic::{f_tilde, HarmonicFn};
use crate::polyring::{BivarPoly, Monomial, MultiPoly};
use crate::{Error, Result};

/// A distinguished set of orbit-coordinate places `T` (0-based indices
/// into `{0, .., t-1}`).
pub type JacobiSet = BTreeSet<usize>;

/// Hamming weight enumerator `sum_u x^{n-wt(u)} y^{wt(u)}`.
pub fn weight_enum(c: &Code) -> BivarPoly {
    let mut p = BivarPoly::zero(c.n);
    for w in c.words() {
        p.add_term(weight(w), Rat::from_integer(1.into()));
    }
    p
}

/// H-weight enumerator `sum_u x^{t-wt_H(u)} y^{wt_H(u)}` of degree `t`.
pub fn h_weight_enum(d: &OrbitCode) -> BivarPoly {
    let mut p = BivarPoly::zero(d.t());
    for u in d.words() {
        p.add_term(h_weight(u), Rat::from_integer(1.into()));
    }
    p
}

/// Complete H-weight enumerator `sum_u prod_a x_a^{n_a(u)}`.
pub fn cwe_h(d: &OrbitCode) -> MultiPoly {
    let k = d.ring.size();
    let mut p = MultiPoly::zero(k, 1, d.t(), false);
    for u in d.words() {
        let mut xs = vec![0u16; k as usize];
        for &v in u {
            xs[v as usize] += 1;
        }
        p.add_term(
            Monomial { xs, ys: Vec::new() },
            Cyclotomic::one(k as usize),
        );
    }
    p.normalized()
}

/// Genus-`g` complete H-weight enumerator: the sum over `g`-tuples of
/// codewords of the monomial counting column values in `R^g`.
pub fn cwe_g(d: &OrbitCode, genus: usize) -> Result<MultiPoly> {
    assert!(genus >= 1);
    let k = d.ring.size();
    let bound = crate::enum_bound();
    let tuples = (d.size() as u128).pow(genus as u32);
    if tuples > bound {
        return Err(Error::TooLarge {
            size: tuples,
            bound,
        });
    }
    let t = d.t();
    let arity = (k as usize).pow(genus as u32);
    let mut p = MultiPoly::zero(k, genus, t, false);
    let words = d.words();
    let mut index = vec![0usize; genus];
    loop {
        let mut xs = vec![0u16; arity];
        for j in 0..t {
            let mut var = 0usize;
            for &row in &index {
                var = var * k as usize + words[row][j] as usize;
            }
            xs[var] += 1;
        }
        p.add_term(
            Monomial { xs, ys: Vec::new() },
            Cyclotomic::one(k as usize),
        );
        // odometer over D^g
        let mut done = true;
        for slot in index.iter_mut().rev() {
            *slot += 1;
            if *slot < words.len() {
                done = false;
                break;
            }
            *slot = 0;
        }
        if done {
            break;
        }
    }
    Ok(p.normalized())
}

/// Harmonic H-weight enumerator `sum_u f~(u) x^{t-wt_H(u)} y^{wt_H(u)}`.
pub fn harmonic_weight_enum(d: &OrbitCode, f: &HarmonicFn) -> Result<BivarPoly> {
    if f.t != d.t() {
        return Err(Error::DimensionMismatch(format!(
            "harmonic function on t = {} against orbit code with t = {}",
            f.t,
            d.t()
        )));
    }
    let mut p = BivarPoly::zero(d.t());
    for u in d.words() {
        let c = f_tilde(f, u, d.ring)?;
        p.add_term(h_weight(u), c);
    }
    Ok(p)
}

/// Complete H-Jacobi polynomial attached to `T`: positions in `T` feed the
/// `x`-family, positions outside feed the `y`-family.
pub fn jacobi_poly(d: &OrbitCode, t_set: &JacobiSet) -> MultiPoly {
    let k = d.ring.size();
    let t = d.t();
    assert!(t_set.iter().all(|&i| i < t), "T outside 1..=t");
    let mut p = MultiPoly::zero(k, 1, t, true);
    for u in d.words() {
        let mut xs = vec![0u16; k as usize];
        let mut ys = vec![0u16; k as usize];
        for (j, &v) in u.iter().enumerate() {
            if t_set.contains(&j) {
                xs[v as usize] += 1;
            } else {
                ys[v as usize] += 1;
            }
        }
        p.add_term(Monomial { xs, ys }, Cyclotomic::one(k as usize));
    }
    p.normalized()
}

/// Evaluate the coefficient-sum identity: any enumerator at all-ones
/// counts `|D|^g`.
pub fn coefficient_sum_is_size(p: &MultiPoly, d: &OrbitCode, genus: usize) -> bool {
    p.eval_at_ones().as_integer()
        == Some(BigInt::from(d.size() as u64).pow(genus as u32))
}
