//! The MacWilliams transforms for all five enumerator flavors, plus the
//! identity-verification driver that compares a transformed enumerator of
//! `C theta_H` against the directly computed enumerator of the dual side.
//!
//! All arithmetic here is exact, in `Z`, `Q` or `Z[zeta_k]`; there are no
//! tolerances.

use num::{BigInt, One, Zero};

use crate::enumerators::{cwe_g, cwe_h, h_weight_enum, jacobi_poly, JacobiSet};
use crate::exactmath::{Cyclotomic, Rat};
use crate::frobring::RingZk;
use crate::gcode::{
    dual, h_dual, project_theta, scale_by_orbit_lengths, Code, OrbitCode,
};
use crate::harmonic::{harm_basis, z_poly};
use crate::permgrp::{next_word, orbit_length_matrix, HaydenOperator};
use crate::polyring::{BivarPoly, Monomial, MultiPoly};
use crate::report::Report;
use crate::{Error, Result};

/// Hamming-flavor transform: substitute `(x + (|R|-1) y, x - y)` and scale
/// by `1/size`. Errors when a resulting coefficient is not an integer,
/// which diagnoses an input that is not a submodule enumerator.
pub fn mw_hamming(p: &BivarPoly, ring: RingZk, size: u64) -> Result<BivarPoly> {
    let k = Rat::from_integer(BigInt::from(ring.size()));
    let one = Rat::one();
    let sub = p.substitute(
        (&one, &(k - &one)),
        (&one, &(-one.clone())),
    );
    let scaled = sub.scale(&Rat::new(BigInt::one(), BigInt::from(size)));
    if !scaled.is_integral() {
        return Err(Error::NonIntegerResult(format!(
            "transformed weight enumerator {}",
            scaled
        )));
    }
    Ok(scaled)
}

/// Character images `x_a -> sum_b chi(ab) x_b` for the genus-1 family.
fn char_images(ring: RingZk) -> Vec<Vec<Cyclotomic>> {
    let k = ring.size();
    (0..k)
        .map(|a| (0..k).map(|b| ring.char_value(ring.mul(a, b))).collect())
        .collect()
}

/// Complete-enumerator transform: exact character substitution, scaled by
/// `1/size`, with integrality asserted.
pub fn mw_cwe(p: &MultiPoly, ring: RingZk, size: u64) -> Result<MultiPoly> {
    assert_eq!(p.genus, 1);
    assert!(!p.paired);
    let sub = p.substitute_linear(&char_images(ring), None);
    let out = sub.div_exact(&BigInt::from(size))?;
    out.integer_coefficients()?;
    Ok(out)
}

/// Genus-`g` transform of an arbitrary polynomial by per-monomial
/// expansion of `x_a -> sum_{b in R^g} chi(a . b) x_b`. Exact but
/// exponential in `g * degree`; guarded by the enumeration bound.
pub fn mw_cwe_g(p: &MultiPoly, ring: RingZk, size: u64) -> Result<MultiPoly> {
    assert!(!p.paired);
    let k = ring.size();
    let genus = p.genus;
    let arity = p.x_arity();
    let work = (arity as u128).saturating_pow(p.degree as u32) * p.num_terms() as u128;
    let bound = crate::enum_bound();
    if work > bound {
        return Err(Error::TooLarge { size: work, bound });
    }
    // images indexed by tuples a, b in R^g with chi(sum a_i b_i)
    let tuples: Vec<Vec<u64>> = all_tuples(k, genus);
    let images: Vec<Vec<Cyclotomic>> = tuples
        .iter()
        .map(|a| {
            tuples
                .iter()
                .map(|b| {
                    let dot = a
                        .iter()
                        .zip(b)
                        .fold(0u64, |acc, (&x, &y)| ring.add(acc, ring.mul(x, y)));
                    ring.char_value(dot)
                })
                .collect()
        })
        .collect();
    let sub = p.substitute_linear(&images, None);
    let scale = BigInt::from(size).pow(genus as u32);
    let out = sub.div_exact(&scale)?;
    out.integer_coefficients()?;
    Ok(out)
}

fn all_tuples(k: u64, genus: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = vec![0u64; genus];
    loop {
        out.push(cur.clone());
        if !next_word(&mut cur, k) {
            break;
        }
    }
    out
}

/// Genus-`g` transform of `cwe_g(D)` computed from the codewords of `D`.
///
/// This is the same exact expansion as [`mw_cwe_g`], factored through the
/// character sums `S(w) = sum_{u in D} zeta^{(u,w)}` per `w in R^t`, which
/// the per-monomial route cannot afford beyond toy sizes. The two routes
/// are cross-checked in the tests.
pub fn mw_cwe_g_from_code(d: &OrbitCode, genus: usize, size: u64) -> Result<MultiPoly> {
    let ring = d.ring;
    let k = ring.size();
    let t = d.t();
    crate::guard_enum(k, t)?;
    // S(w) = sum_{u in D} zeta^{(u, w)}: tabulate exponent counts first.
    let mut s_table: Vec<(Vec<u64>, Cyclotomic)> = Vec::new();
    let mut w = vec![0u64; t];
    loop {
        let mut counts = vec![BigInt::zero(); k as usize];
        for u in d.words() {
            let ip = crate::gcode::inner_product(ring, u, &w);
            counts[ip as usize] += 1;
        }
        let mut s = Cyclotomic::zero(k as usize);
        for (e, c) in counts.iter().enumerate() {
            if !c.is_zero() {
                s = s.add(&Cyclotomic::zeta_pow(k as usize, e as i64).scale(c));
            }
        }
        s.reduce();
        if !s.is_zero() {
            s_table.push((w.clone(), s));
        }
        if !next_word(&mut w, k) {
            break;
        }
    }
    let combos = (s_table.len() as u128).saturating_pow(genus as u32);
    let bound = crate::enum_bound();
    if combos > bound {
        return Err(Error::TooLarge {
            size: combos,
            bound,
        });
    }
    let arity = (k as usize).pow(genus as u32);
    let mut out = MultiPoly::zero(k, genus, t, false);
    let mut index = vec![0usize; genus];
    loop {
        // coefficient = prod_i S(w_i); monomial from the columns of (w_i)
        let mut coeff = Cyclotomic::one(k as usize);
        for &i in &index {
            coeff = coeff.mul(&s_table[i].1);
        }
        let mut xs = vec![0u16; arity];
        for j in 0..t {
            let mut var = 0usize;
            for &i in &index {
                var = var * k as usize + s_table[i].0[j] as usize;
            }
            xs[var] += 1;
        }
        out.add_term(Monomial { xs, ys: Vec::new() }, coeff);
        let mut done = true;
        for slot in index.iter_mut().rev() {
            *slot += 1;
            if *slot < s_table.len() {
                done = false;
                break;
            }
            *slot = 0;
        }
        if done {
            break;
        }
    }
    let scale = BigInt::from(size).pow(genus as u32);
    let out = out.normalized().div_exact(&scale)?;
    out.integer_coefficients()?;
    Ok(out)
}

/// Harmonic-flavor transform of the quotient polynomial `Z`:
/// `(-1)^d (k^d / size) * Z(x + (k-1) y, x - y)`.
pub fn mw_harmonic(z: &BivarPoly, ring: RingZk, d: usize, size: u64) -> BivarPoly {
    let k = Rat::from_integer(BigInt::from(ring.size()));
    let one = Rat::one();
    let sub = z.substitute((&one, &(k.clone() - &one)), (&one, &(-one.clone())));
    let mut factor = Rat::new(
        BigInt::from(ring.size()).pow(d as u32),
        BigInt::from(size),
    );
    if d % 2 == 1 {
        factor = -factor;
    }
    sub.scale(&factor)
}

/// Jacobi-flavor transform: both variable families substituted by the
/// character forms, scaled by `1/size`.
pub fn mw_jacobi(p: &MultiPoly, ring: RingZk, size: u64) -> Result<MultiPoly> {
    assert!(p.paired);
    assert_eq!(p.genus, 1);
    let images = char_images(ring);
    let sub = p.substitute_linear(&images, Some(&images));
    let out = sub.div_exact(&BigInt::from(size))?;
    out.integer_coefficients()?;
    Ok(out)
}

/// Which MacWilliams identity to drive.
#[derive(Clone, Debug)]
pub enum Flavor {
    Hamming,
    Cwe,
    CweG { genus: usize },
    /// Runs every basis element of `Harm_d(t)` for the given `d`.
    Harmonic { d: usize },
    Jacobi { t_set: JacobiSet },
}

impl Flavor {
    pub fn name(&self) -> String {
        match self {
            Flavor::Hamming => "hamming".into(),
            Flavor::Cwe => "cwe".into(),
            Flavor::CweG { genus } => format!("cwe_g(g={})", genus),
            Flavor::Harmonic { d } => format!("harmonic(d={})", d),
            Flavor::Jacobi { t_set } => format!(
                "jacobi(T={{{}}})",
                t_set
                    .iter()
                    .map(|i| (i + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
        }
    }
}

/// Drive one MacWilliams identity on a G-code.
///
/// The dual-side enumerator is computed along two independent routes and
/// both must agree with the transform:
///
/// * the H-dual of `D = C theta_H`, enumerated inside `Z_k^t`;
/// * the projected dual `(dual(C) theta_H) M_H`, which exercises the
///   orbit-length-matrix identity through the full `R^n` dual.
///
/// For the Hamming and harmonic flavors the two routes give the same
/// enumerator verbatim (weights are invariant under the unit diagonal
/// `M_H`); for the complete flavors they give the same set.
pub fn check_identity(flavor: &Flavor, c: &Code, op: &HaydenOperator) -> Result<Report> {
    let ring = c.ring;
    let d = project_theta(c, op);
    let size = d.size() as u64;
    // route one: H-dual inside the orbit coordinates
    let dual_h = h_dual(&d)?;
    // route two: dual in R^n, projected, scaled by M_H
    let cdual = dual(c)?;
    let m = orbit_length_matrix(&op.partition);
    let dual_proj_scaled = scale_by_orbit_lengths(&project_theta(&cdual, op), &m);
    let routes_agree = dual_h.words() == dual_proj_scaled.words();

    let (pass, lhs, rhs, witness) = match flavor {
        Flavor::Hamming => {
            let transformed = mw_hamming(&h_weight_enum(&d), ring, size)?;
            let direct = h_weight_enum(&dual_h);
            let direct2 = h_weight_enum(&dual_proj_scaled);
            let ok = transformed == direct && transformed == direct2;
            (
                ok,
                direct.to_string(),
                transformed.to_string(),
                mismatch_witness(ok, routes_agree),
            )
        }
        Flavor::Cwe => {
            let transformed = mw_cwe(&cwe_h(&d), ring, size)?;
            let direct = cwe_h(&dual_h);
            let direct2 = cwe_h(&dual_proj_scaled);
            let ok = transformed == direct && transformed == direct2;
            (
                ok,
                direct.to_string(),
                transformed.to_string(),
                mismatch_witness(ok, routes_agree),
            )
        }
        Flavor::CweG { genus } => {
            let transformed = mw_cwe_g_from_code(&d, *genus, size)?;
            let direct = cwe_g(&dual_h, *genus)?;
            let direct2 = cwe_g(&dual_proj_scaled, *genus)?;
            let ok = transformed == direct && transformed == direct2;
            (
                ok,
                format!("{} terms", direct.num_terms()),
                format!("{} terms", transformed.num_terms()),
                mismatch_witness(ok, routes_agree),
            )
        }
        Flavor::Harmonic { d: deg } => {
            let t = d.t();
            let mut ok = true;
            let mut lhs = String::new();
            let mut rhs = String::new();
            for f in harm_basis(t, *deg) {
                let z = z_poly(&d, &f)?;
                let transformed = mw_harmonic(&z, ring, *deg, size);
                let direct = z_poly(&dual_h, &f)?;
                let direct2 = z_poly(&dual_proj_scaled, &f)?;
                if transformed.degree != t - 2 * deg {
                    ok = false;
                }
                if transformed != direct || transformed != direct2 {
                    ok = false;
                }
                if lhs.is_empty() {
                    lhs = direct.to_string();
                    rhs = transformed.to_string();
                }
            }
            (ok, lhs, rhs, mismatch_witness(ok, routes_agree))
        }
        Flavor::Jacobi { t_set } => {
            let transformed = mw_jacobi(&jacobi_poly(&d, t_set), ring, size)?;
            let direct = jacobi_poly(&dual_h, t_set);
            let direct2 = jacobi_poly(&dual_proj_scaled, t_set);
            let ok = transformed == direct && transformed == direct2;
            (
                ok,
                direct.to_string(),
                transformed.to_string(),
                mismatch_witness(ok, routes_agree),
            )
        }
    };
    Ok(Report {
        flavor: flavor.name(),
        pass: pass && routes_agree,
        lhs,
        rhs,
        witness,
    })
}

fn mismatch_witness(ok: bool, routes_agree: bool) -> Option<String> {
    if !routes_agree {
        Some("H-dual route and projected-dual route disagree".into())
    } else if !ok {
        Some("transform differs from direct dual enumerator".into())
    } else {
        None
    }
}
