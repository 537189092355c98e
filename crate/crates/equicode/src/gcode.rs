//! Linear codes over `Z_k` stored as fully enumerated submodules, their
//! brute-force duals, invariance under a permutation group, projection by
//! the averaging operator, and the orbit-coordinate (H-)dual machinery.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::frobring::RingZk;
use crate::permgrp::{
    next_word, HaydenOperator, OrbitLengthMatrix, OrbitPartition, PermGroup,
};
use crate::report::Report;
use crate::{guard_enum, Error, Result};

/// A word is a vector over `Z_k` with entries reduced mod k.
pub type Word = Vec<u64>;

/// A linear code: a fully enumerated `Z_k`-submodule of `Z_k^n` together
/// with a small generating set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Code {
    pub ring: RingZk,
    pub n: usize,
    /// Sorted, deduplicated codeword set.
    words: Vec<Word>,
    /// Generating subset (greedy, deterministic).
    gens: Vec<Word>,
}

/// JSON form of a code specification.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CodeSpec {
    pub modulus: u64,
    pub length: usize,
    pub generators: Vec<Vec<i64>>,
}

impl Code {
    /// Span of a generating set by closure under generator addition.
    pub fn span(ring: RingZk, n: usize, gens: &[Word]) -> Result<Code> {
        let bound = crate::enum_bound();
        for g in gens {
            if g.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "generator length {} != {}",
                    g.len(),
                    n
                )));
            }
        }
        let gens: Vec<Word> = gens
            .iter()
            .map(|g| g.iter().map(|&v| v % ring.size()).collect())
            .collect();
        let zero = vec![0u64; n];
        let mut set: BTreeSet<Word> = BTreeSet::new();
        set.insert(zero.clone());
        let mut frontier = vec![zero];
        while let Some(w) = frontier.pop() {
            for g in &gens {
                let s: Word = w.iter().zip(g).map(|(&a, &b)| ring.add(a, b)).collect();
                if set.insert(s.clone()) {
                    if set.len() as u128 > bound {
                        return Err(Error::TooLarge {
                            size: set.len() as u128,
                            bound,
                        });
                    }
                    frontier.push(s);
                }
            }
        }
        let words: Vec<Word> = set.into_iter().collect();
        let gens = greedy_generators(ring, &words);
        Ok(Code {
            ring,
            n,
            words,
            gens,
        })
    }

    /// Build a code from an explicit codeword list, verifying closure.
    pub fn from_words(ring: RingZk, n: usize, words: &[Word]) -> Result<Code> {
        let set: BTreeSet<Word> = words
            .iter()
            .map(|w| w.iter().map(|&v| v % ring.size()).collect())
            .collect();
        let words: Vec<Word> = set.into_iter().collect();
        if !words.contains(&vec![0u64; n]) {
            return Err(Error::Parse("codeword set does not contain 0".into()));
        }
        let gens = greedy_generators(ring, &words);
        let code = Code {
            ring,
            n,
            words,
            gens,
        };
        // The span of the extracted generators must reproduce the set.
        let spanned = Code::span(ring, n, &code.gens)?;
        if spanned.words != code.words {
            return Err(Error::Parse("word set is not a submodule".into()));
        }
        Ok(code)
    }

    pub fn from_spec(spec: &CodeSpec) -> Result<Code> {
        let ring = RingZk::new(spec.modulus)?;
        let gens: Vec<Word> = spec
            .generators
            .iter()
            .map(|g| g.iter().map(|&v| ring.reduce(v as i128)).collect())
            .collect();
        Code::span(ring, spec.length, &gens)
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn generators(&self) -> &[Word] {
        &self.gens
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.binary_search(w).is_ok()
    }

    /// Exhaustive submodule check (additive closure and scalar stability).
    pub fn check_submodule(&self) -> bool {
        for a in &self.words {
            for s in 0..self.ring.size() {
                let sa: Word = a.iter().map(|&x| self.ring.mul(s, x)).collect();
                if !self.contains(&sa) {
                    return false;
                }
            }
            for b in &self.words {
                let ab: Word = a
                    .iter()
                    .zip(b)
                    .map(|(&x, &y)| self.ring.add(x, y))
                    .collect();
                if !self.contains(&ab) {
                    return false;
                }
            }
        }
        true
    }
}

/// Extract a small deterministic generating set from a sorted word list.
fn greedy_generators(ring: RingZk, words: &[Word]) -> Vec<Word> {
    let Some(first) = words.first() else {
        return Vec::new();
    };
    let n = first.len();
    let mut gens: Vec<Word> = Vec::new();
    let mut span: BTreeSet<Word> = BTreeSet::new();
    span.insert(vec![0u64; n]);
    for w in words {
        if span.contains(w) {
            continue;
        }
        gens.push(w.clone());
        // close the current span under addition of w
        let mut frontier: Vec<Word> = span.iter().cloned().collect();
        while let Some(base) = frontier.pop() {
            let mut cur = base;
            loop {
                let next: Word = cur.iter().zip(w).map(|(&a, &b)| ring.add(a, b)).collect();
                if next == cur {
                    break;
                }
                if span.insert(next.clone()) {
                    cur = next;
                } else {
                    break;
                }
            }
        }
        // re-close under all generators (cheap at desk scale)
        let mut frontier: Vec<Word> = span.iter().cloned().collect();
        while let Some(base) = frontier.pop() {
            for g in &gens {
                let s: Word = base.iter().zip(g).map(|(&a, &b)| ring.add(a, b)).collect();
                if span.insert(s.clone()) {
                    frontier.push(s);
                }
            }
        }
    }
    gens
}

/// `u . v` in `Z_k`.
pub fn inner_product(ring: RingZk, u: &[u64], v: &[u64]) -> u64 {
    let mut acc = 0u64;
    for (a, b) in u.iter().zip(v) {
        acc = ring.add(acc, ring.mul(*a, *b));
    }
    acc
}

/// Hamming weight.
pub fn weight(w: &[u64]) -> usize {
    w.iter().filter(|&&x| x != 0).count()
}

/// Is `c g` contained in `C` for every codeword and every generator of G?
pub fn is_g_code(c: &Code, g: &PermGroup) -> bool {
    for gen in g.generators() {
        for w in c.words() {
            if !c.contains(&gen.apply_word(w)) {
                return false;
            }
        }
    }
    true
}

/// Brute-force dual `{u in R^n : (u, v) = 0 for all v in C}`.
pub fn dual(c: &Code) -> Result<Code> {
    let k = c.ring.size();
    let size = guard_enum(k, c.n)?;
    let mut found: Vec<Word> = Vec::new();
    let mut w = vec![0u64; c.n];
    loop {
        if c.gens
            .iter()
            .all(|g| inner_product(c.ring, &w, g) == 0)
        {
            found.push(w.clone());
        }
        if !next_word(&mut w, k) {
            break;
        }
    }
    let gens = greedy_generators(c.ring, &found);
    let dual = Code {
        ring: c.ring,
        n: c.n,
        words: found,
        gens,
    };
    // |C| * |dual C| = k^n over Z_k; a failure here is an implementation bug.
    assert_eq!(
        (c.size() as u128) * (dual.size() as u128),
        size,
        "duality cardinality identity failed"
    );
    Ok(dual)
}

/// A submodule of the orbit-constant vectors, stored by orbit coefficients
/// `(u_1, .., u_t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitCode {
    pub ring: RingZk,
    pub partition: OrbitPartition,
    words: Vec<Word>,
    gens: Vec<Word>,
}

impl OrbitCode {
    pub fn from_orbit_words(
        ring: RingZk,
        partition: OrbitPartition,
        words: Vec<Word>,
    ) -> OrbitCode {
        let set: BTreeSet<Word> = words.into_iter().collect();
        let words: Vec<Word> = set.into_iter().collect();
        let gens = greedy_generators(ring, &words);
        OrbitCode {
            ring,
            partition,
            words,
            gens,
        }
    }

    pub fn t(&self) -> usize {
        self.partition.t
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn generators(&self) -> &[Word] {
        &self.gens
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.binary_search(w).is_ok()
    }

    /// The codewords written out in `Z_k^n` (constant on each orbit).
    pub fn words_in_v(&self) -> Vec<Word> {
        self.words
            .iter()
            .map(|u| expand_orbit_word(u, &self.partition))
            .collect()
    }
}

/// Coefficients of an orbit-constant word; errors when some orbit is not
/// constant.
pub fn orbit_form(w: &[u64], p: &OrbitPartition) -> Result<Word> {
    let mut coeffs = Vec::with_capacity(p.t);
    for (idx, orbit) in p.orbits.iter().enumerate() {
        let v = w[orbit[0]];
        if orbit.iter().any(|&i| w[i] != v) {
            return Err(Error::NotOrbitConstant { orbit: idx + 1 });
        }
        coeffs.push(v);
    }
    Ok(coeffs)
}

/// Inverse of [`orbit_form`]: indicator-expansion into `Z_k^n`.
pub fn expand_orbit_word(u: &[u64], p: &OrbitPartition) -> Word {
    let mut w = vec![0u64; p.n];
    for (idx, orbit) in p.orbits.iter().enumerate() {
        for &i in orbit {
            w[i] = u[idx];
        }
    }
    w
}

/// H-weight: number of nonzero orbit coefficients.
pub fn h_weight(u: &[u64]) -> usize {
    weight(u)
}

/// Image `C theta_H` as an orbit code.
pub fn project_theta(c: &Code, op: &HaydenOperator) -> OrbitCode {
    let mut words: BTreeSet<Word> = BTreeSet::new();
    for w in c.words() {
        let img = op.apply_word(w);
        let coeffs = orbit_form(&img, &op.partition)
            .expect("averaged word must be orbit-constant");
        words.insert(coeffs);
    }
    OrbitCode::from_orbit_words(c.ring, op.partition.clone(), words.into_iter().collect())
}

/// Dual of an orbit code under the H-inner product `(u, v)_H = sum u_i v_i`
/// on `Z_k^t`, by exhaustive scan.
pub fn h_dual(d: &OrbitCode) -> Result<OrbitCode> {
    let k = d.ring.size();
    let t = d.t();
    let size = guard_enum(k, t)?;
    let mut found = Vec::new();
    let mut w = vec![0u64; t];
    loop {
        if d.gens.iter().all(|g| inner_product(d.ring, &w, g) == 0) {
            found.push(w.clone());
        }
        if !next_word(&mut w, k) {
            break;
        }
    }
    let out = OrbitCode::from_orbit_words(d.ring, d.partition.clone(), found);
    assert_eq!(
        (d.size() as u128) * (out.size() as u128),
        size,
        "H-duality cardinality identity failed"
    );
    Ok(out)
}

/// Multiply each orbit coefficient by the corresponding orbit length.
pub fn scale_by_orbit_lengths(d: &OrbitCode, m: &OrbitLengthMatrix) -> OrbitCode {
    // the per-orbit lengths, one per orbit in partition order
    let per_orbit: Vec<u64> = d
        .partition
        .orbits
        .iter()
        .map(|o| m.diagonal[o[0]] as u64)
        .collect();
    let words = d
        .words
        .iter()
        .map(|u| {
            u.iter()
                .zip(&per_orbit)
                .map(|(&x, &l)| d.ring.mul(x, l % d.ring.size()))
                .collect()
        })
        .collect();
    OrbitCode::from_orbit_words(d.ring, d.partition.clone(), words)
}

fn word_string(w: &[u64]) -> String {
    w.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("")
}

fn set_string(ws: &[Word]) -> String {
    let mut items: Vec<String> = ws.iter().map(|w| word_string(w)).collect();
    items.sort();
    format!("{{{}}}", items.join(", "))
}

/// Check the averaging-operator duality: the dual (taken in `R^n`) of
/// `C theta_H` splits as the direct sum of `ker theta_H` and
/// `(dual C) theta_H`.
pub fn verify_hayden(c: &Code, op: &HaydenOperator) -> Result<Report> {
    let k = c.ring.size();
    guard_enum(k, c.n)?;
    let proj = project_theta(c, op);
    let proj_words: Vec<Word> = proj.words_in_v();
    let proj_gens = greedy_generators(c.ring, &proj_words);

    // LHS: brute-force dual of the set C theta_H inside V.
    let mut lhs: BTreeSet<Word> = BTreeSet::new();
    let mut w = vec![0u64; c.n];
    loop {
        if proj_gens.iter().all(|g| inner_product(c.ring, &w, g) == 0) {
            lhs.insert(w.clone());
        }
        if !next_word(&mut w, k) {
            break;
        }
    }

    // RHS: ker theta_H + (dual C) theta_H, with directness from cardinality.
    let kernel = crate::permgrp::ker_theta_mod(op)?;
    let cdual = dual(c)?;
    let dual_proj: BTreeSet<Word> = cdual
        .words()
        .iter()
        .map(|w| op.apply_word(w))
        .collect();
    let mut sumset: BTreeSet<Word> = BTreeSet::new();
    for a in &kernel {
        for b in &dual_proj {
            let s: Word = a.iter().zip(b).map(|(&x, &y)| c.ring.add(x, y)).collect();
            sumset.insert(s);
        }
    }
    let direct = kernel.len() as u128 * dual_proj.len() as u128 == sumset.len() as u128;
    let equal = lhs == sumset;
    let witness = if equal {
        None
    } else {
        lhs.symmetric_difference(&sumset)
            .next()
            .map(|w| format!("set mismatch at {}", word_string(w)))
    };
    Ok(Report {
        flavor: "hayden".into(),
        pass: equal && direct,
        lhs: format!("|dual(C theta)| = {}", lhs.len()),
        rhs: format!(
            "|ker| * |dual(C) theta| = {} * {} (sumset {})",
            kernel.len(),
            dual_proj.len(),
            sumset.len()
        ),
        witness: witness.or(if direct {
            None
        } else {
            Some("sum is not direct".into())
        }),
    })
}

/// Check that the H-dual of `C theta_H` equals `(dual(C) theta_H) M_H`.
pub fn verify_orbit_matrix(c: &Code, op: &HaydenOperator) -> Result<Report> {
    let proj = project_theta(c, op);
    let lhs = h_dual(&proj)?;
    let cdual = dual(c)?;
    let dual_proj = project_theta(&cdual, op);
    let m = crate::permgrp::orbit_length_matrix(&op.partition);
    let rhs = scale_by_orbit_lengths(&dual_proj, &m);
    let pass = lhs.words() == rhs.words();
    Ok(Report {
        flavor: "orbit-matrix".into(),
        pass,
        lhs: set_string(&lhs.words_in_v()),
        rhs: set_string(&rhs.words_in_v()),
        witness: if pass {
            None
        } else {
            Some("H-dual differs from scaled projected dual".into())
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgrp::{group_closure, hayden, orbit_length_matrix, Permutation};

    pub(crate) fn z4_ring() -> RingZk {
        RingZk::new(4).unwrap()
    }

    fn z4_code() -> Code {
        Code::span(
            z4_ring(),
            4,
            &[vec![1, 1, 1, 3], vec![1, 3, 1, 1], vec![0, 0, 2, 2]],
        )
        .unwrap()
    }

    fn z4_op() -> HaydenOperator {
        let g = group_closure(4, &[Permutation::from_cycles(4, "(1 2 3)(4)").unwrap()]).unwrap();
        hayden(z4_ring(), &g).unwrap()
    }

    /// The sixteen listed codewords of the worked Z4 example.
    pub(crate) fn z4_table() -> Vec<Word> {
        let rows = [
            "0000", "1113", "1311", "2020", "0022", "3331", "3133", "0202", "2200", "3111",
            "1131", "2002", "0220", "1333", "3313", "2222",
        ];
        rows.iter()
            .map(|s| s.chars().map(|c| c.to_digit(10).unwrap() as u64).collect())
            .collect()
    }

    #[test]
    fn span_reproduces_the_z4_table() {
        let c = z4_code();
        assert_eq!(c.size(), 16);
        let mut expect = z4_table();
        expect.sort();
        assert_eq!(c.words(), &expect[..]);
        assert!(c.check_submodule());
    }

    #[test]
    fn span_edge_cases() {
        let c = Code::span(z4_ring(), 4, &[]).unwrap();
        assert_eq!(c.words(), &[vec![0, 0, 0, 0]]);

        let c = Code::span(z4_ring(), 4, &[vec![1, 1, 1, 3], vec![1, 3, 1, 1]]).unwrap();
        assert_eq!(c.size(), 8);
    }

    #[test]
    fn g_invariance() {
        let g = group_closure(4, &[Permutation::from_cycles(4, "(1 2 3)(4)").unwrap()]).unwrap();
        assert!(is_g_code(&z4_code(), &g));
        let zero = Code::span(z4_ring(), 4, &[]).unwrap();
        assert!(is_g_code(&zero, &g));

        let z2 = RingZk::new(2).unwrap();
        let c = Code::span(z2, 4, &[vec![1, 1, 0, 0]]).unwrap();
        let swap = group_closure(4, &[Permutation::from_cycles(4, "(1 3)(2 4)").unwrap()]).unwrap();
        assert!(!is_g_code(&c, &swap));
    }

    #[test]
    fn duals() {
        // the Z4 example is self-dual
        let c = z4_code();
        let d = dual(&c).unwrap();
        assert_eq!(c.words(), d.words());

        // {0} in Z4^2 dualizes to everything
        let zero = Code::span(z4_ring(), 2, &[]).unwrap();
        assert_eq!(dual(&zero).unwrap().size(), 16);

        // span{(1,1)} over Z3 -> span{(1,2)}
        let z3 = RingZk::new(3).unwrap();
        let c = Code::span(z3, 2, &[vec![1, 1]]).unwrap();
        let d = dual(&c).unwrap();
        let expect = Code::span(z3, 2, &[vec![1, 2]]).unwrap();
        assert_eq!(d.words(), expect.words());

        // bidual
        assert_eq!(dual(&d).unwrap().words(), c.words());
    }

    #[test]
    fn projection_of_the_z4_example() {
        let proj = project_theta(&z4_code(), &z4_op());
        assert_eq!(
            proj.words(),
            &[vec![0, 0], vec![1, 3], vec![2, 2], vec![3, 1]]
        );
        assert_eq!(
            set_string(&proj.words_in_v()),
            "{0000, 1113, 2222, 3331}"
        );
        // |C theta| divides |C|
        assert_eq!(16 % proj.size(), 0);

        let zero = Code::span(z4_ring(), 4, &[]).unwrap();
        let pzero = project_theta(&zero, &z4_op());
        assert_eq!(pzero.words(), &[vec![0, 0]]);
    }

    #[test]
    fn projected_words_are_fixed_points() {
        let op = z4_op();
        let proj = project_theta(&z4_code(), &op);
        for w in proj.words_in_v() {
            assert_eq!(op.apply_word(&w), w);
        }
    }

    #[test]
    fn orbit_forms() {
        let p = z4_op().partition;
        assert_eq!(orbit_form(&[1, 1, 1, 3], &p).unwrap(), vec![1, 3]);
        assert_eq!(orbit_form(&[0, 0, 0, 0], &p).unwrap(), vec![0, 0]);
        assert!(matches!(
            orbit_form(&[1, 2, 1, 3], &p),
            Err(Error::NotOrbitConstant { orbit: 1 })
        ));
        assert_eq!(expand_orbit_word(&[1, 3], &p), vec![1, 1, 1, 3]);
    }

    #[test]
    fn h_weights() {
        assert_eq!(h_weight(&[1, 3]), 2);
        assert_eq!(h_weight(&[0, 0]), 0);
        assert_eq!(h_weight(&[2, 0]), 1);
    }

    #[test]
    fn h_dual_of_the_projected_example() {
        let proj = project_theta(&z4_code(), &z4_op());
        let hd = h_dual(&proj).unwrap();
        assert_eq!(
            hd.words(),
            &[vec![0, 0], vec![1, 1], vec![2, 2], vec![3, 3]]
        );
        assert_eq!(proj.size() * hd.size(), 16);

        let zero = OrbitCode::from_orbit_words(
            z4_ring(),
            z4_op().partition,
            vec![vec![0, 0]],
        );
        assert_eq!(h_dual(&zero).unwrap().size(), 16);
    }

    #[test]
    fn orbit_length_scaling() {
        let op = z4_op();
        let m = orbit_length_matrix(&op.partition);
        let proj = project_theta(&z4_code(), &op);
        // C is self-dual, so the projected dual is the projection itself
        let scaled = scale_by_orbit_lengths(&proj, &m);
        assert_eq!(
            scaled.words(),
            &[vec![0, 0], vec![1, 1], vec![2, 2], vec![3, 3]]
        );
        // scaling by all-ones is the identity
        let trivial = OrbitLengthMatrix {
            diagonal: vec![1; 4],
        };
        assert_eq!(scale_by_orbit_lengths(&proj, &trivial).words(), proj.words());
        // unit diagonal scaling is a bijection
        assert_eq!(scaled.size(), proj.size());
    }

    #[test]
    fn hayden_identity_on_the_example() {
        let rep = verify_hayden(&z4_code(), &z4_op()).unwrap();
        assert!(rep.pass, "{:?}", rep);

        // trivial H degenerates to dual(C) = {0} + dual(C)
        let trivial = hayden(z4_ring(), &PermGroup::trivial(4)).unwrap();
        let rep = verify_hayden(&z4_code(), &trivial).unwrap();
        assert!(rep.pass);
    }

    #[test]
    fn orbit_matrix_identity_on_the_example() {
        let rep = verify_orbit_matrix(&z4_code(), &z4_op()).unwrap();
        assert!(rep.pass, "{:?}", rep);
        assert_eq!(rep.lhs, "{0000, 1111, 2222, 3333}");

        let trivial = hayden(z4_ring(), &PermGroup::trivial(4)).unwrap();
        let rep = verify_orbit_matrix(&z4_code(), &trivial).unwrap();
        assert!(rep.pass);
    }

    #[test]
    fn code_spec_json_round_trip() {
        let spec: CodeSpec = serde_json::from_str(
            r#"{"modulus": 4, "length": 4, "generators": [[1,1,1,3],[1,3,1,1],[0,0,2,2]]}"#,
        )
        .unwrap();
        let c = Code::from_spec(&spec).unwrap();
        assert_eq!(c.size(), 16);
    }
}
