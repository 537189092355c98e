//! Permutation groups on coordinates, orbit partitions, and the averaging
//! (Hayden) operator `theta_H = (1/|H|) sum_{h in H} h` in both mod-k and
//! rational form.
//!
//! The action on words is `(v g)_i = v_{i g^{-1}}`, i.e. the entry at
//! position `i` moves to position `g(i)`. Composition is left-to-right
//! application; the worked Z4 example in the test suite pins the
//! convention.

use std::collections::BTreeSet;

use crate::exactmath::{Rat, RatMatrix};
use crate::frobring::RingZk;
use crate::{guard_enum, Error, Result};

const DEFAULT_GROUP_BOUND: usize = 10_080;

/// A permutation of `{0, .., n-1}`; `images[i]` is the image of `i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::Parse("images are not a bijection".into()));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Parse disjoint-cycle notation with 1-based points, e.g. "(1 2 3)(4)".
    /// Commas are accepted as separators and fixed points may be omitted.
    pub fn from_cycles(n: usize, text: &str) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let body = text.trim();
        if body.is_empty() {
            return Ok(Permutation { images });
        }
        let mut rest = body;
        while !rest.is_empty() {
            let open = rest
                .find('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {:?}", text)))?;
            let close = rest[open..]
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unbalanced cycle in {:?}", text)))?
                + open;
            let cycle: Vec<usize> = rest[open + 1..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad point {:?}", s)))
                })
                .collect::<Result<_>>()?;
            for &p in &cycle {
                if p == 0 || p > n {
                    return Err(Error::Parse(format!("point {} outside 1..={}", p, n)));
                }
            }
            let m = cycle.len();
            for i in 0..m {
                images[cycle[i] - 1] = cycle[(i + 1) % m] - 1;
            }
            rest = &rest[close + 1..];
            rest = rest.trim_start();
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn image_of(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    /// `self` applied first, then `other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    /// Act on a word: the entry at position `i` moves to position `g(i)`.
    pub fn apply_word<T: Clone>(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.degree());
        let mut out = v.to_vec();
        for (i, x) in v.iter().enumerate() {
            out[self.images[i]] = x.clone();
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Cycle notation, 1-based, fixed points omitted (identity prints "()").
    pub fn to_cycles(&self) -> String {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut cur = self.images[start];
            while cur != start {
                seen[cur] = true;
                cyc.push(cur);
                cur = self.images[cur];
            }
            out.push('(');
            out.push_str(
                &cyc.iter()
                    .map(|p| (p + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
            );
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

/// A permutation group given by generators, with the full element set
/// enumerated and sorted lexicographically on image arrays.
#[derive(Clone, Debug)]
pub struct PermGroup {
    n: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
}

impl PermGroup {
    pub fn trivial(n: usize) -> Self {
        PermGroup {
            n,
            generators: Vec::new(),
            elements: vec![Permutation::identity(n)],
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }
}

/// Enumerate the closure of a generating set. Deterministic element order.
pub fn group_closure(n: usize, gens: &[Permutation]) -> Result<PermGroup> {
    group_closure_bounded(n, gens, DEFAULT_GROUP_BOUND)
}

pub fn group_closure_bounded(
    n: usize,
    gens: &[Permutation],
    bound: usize,
) -> Result<PermGroup> {
    for g in gens {
        if g.degree() != n {
            return Err(Error::DimensionMismatch(format!(
                "generator degree {} != {}",
                g.degree(),
                n
            )));
        }
    }
    let mut set: BTreeSet<Permutation> = BTreeSet::new();
    set.insert(Permutation::identity(n));
    let mut frontier: Vec<Permutation> = vec![Permutation::identity(n)];
    while let Some(p) = frontier.pop() {
        for g in gens {
            let q = p.compose(g);
            if set.insert(q.clone()) {
                if set.len() > bound {
                    return Err(Error::GroupTooLarge { bound });
                }
                frontier.push(q);
            }
        }
    }
    Ok(PermGroup {
        n,
        generators: gens.to_vec(),
        elements: set.into_iter().collect(),
    })
}

/// Orbits of the coordinates under a group, sorted by minimal element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    pub n: usize,
    /// Number of orbits.
    pub t: usize,
    /// Coordinate -> orbit index.
    pub orbit_of: Vec<usize>,
    /// Sorted coordinate sets, listed by minimal element.
    pub orbits: Vec<Vec<usize>>,
    /// Orbit lengths `m_i`.
    pub lengths: Vec<usize>,
}

pub fn orbits(g: &PermGroup) -> OrbitPartition {
    let n = g.degree();
    let mut orbit_of = vec![usize::MAX; n];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let idx = orbits.len();
        let mut stack = vec![start];
        let mut members = Vec::new();
        orbit_of[start] = idx;
        while let Some(p) = stack.pop() {
            members.push(p);
            for gen in g.generators() {
                for q in [gen.image_of(p), gen.inverse().image_of(p)] {
                    if orbit_of[q] == usize::MAX {
                        orbit_of[q] = idx;
                        stack.push(q);
                    }
                }
            }
        }
        members.sort_unstable();
        orbits.push(members);
    }
    let lengths = orbits.iter().map(|o| o.len()).collect();
    OrbitPartition {
        n,
        t: orbits.len(),
        orbit_of,
        orbits,
        lengths,
    }
}

/// Diagonal matrix `M_H = diag(l_1, .., l_n)` with `l_j` the length of the
/// orbit containing coordinate `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitLengthMatrix {
    pub diagonal: Vec<usize>,
}

pub fn orbit_length_matrix(p: &OrbitPartition) -> OrbitLengthMatrix {
    OrbitLengthMatrix {
        diagonal: (0..p.n).map(|j| p.lengths[p.orbit_of[j]]).collect(),
    }
}

/// The averaging operator of a subgroup `H`, as an idempotent matrix over
/// `Z_k` and as the rational orthogonal projection onto orbit-constant
/// vectors.
#[derive(Clone, Debug)]
pub struct HaydenOperator {
    pub ring: RingZk,
    /// `|H|^{-1} mod k`.
    pub inv_h: u64,
    pub group_order: usize,
    pub partition: OrbitPartition,
    /// Row-vector action matrix over `Z_k`, flattened n x n.
    matrix_mod: Vec<u64>,
    /// `(1/|H|) sum_h P_h` over the rationals.
    pub matrix_real: RatMatrix,
    n: usize,
}

/// Build the averaging operator; fails with `NotInvertible` when
/// `gcd(|H|, k) > 1`.
pub fn hayden(ring: RingZk, h: &PermGroup) -> Result<HaydenOperator> {
    let n = h.degree();
    let order = h.order() as u64;
    let inv_h = ring.inverse(order % ring.size())?;
    let mut counts = vec![0u64; n * n];
    for e in h.elements() {
        for i in 0..n {
            counts[i * n + e.image_of(i)] += 1;
        }
    }
    let matrix_mod: Vec<u64> = counts
        .iter()
        .map(|&c| ring.mul(ring.reduce(c as i128), inv_h))
        .collect();
    let mut matrix_real = RatMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            matrix_real.set(i, j, Rat::new(counts[i * n + j].into(), h.order().into()));
        }
    }
    Ok(HaydenOperator {
        ring,
        inv_h,
        group_order: h.order(),
        partition: orbits(h),
        matrix_mod,
        matrix_real,
        n,
    })
}

impl HaydenOperator {
    pub fn degree(&self) -> usize {
        self.n
    }

    /// `v * theta_H` over `Z_k`.
    pub fn apply_word(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.n);
        let k = self.ring.size();
        (0..self.n)
            .map(|j| {
                let mut acc = 0u64;
                for i in 0..self.n {
                    acc = (acc + v[i] * self.matrix_mod[i * self.n + j]) % k;
                }
                acc
            })
            .collect()
    }

    /// Direct evaluation `(1/|H|) sum_h v h` over `Z_k`, used as an oracle
    /// against the matrix route.
    pub fn apply_word_by_sum(&self, v: &[u64], h: &PermGroup) -> Vec<u64> {
        let mut acc = vec![0u64; self.n];
        for e in h.elements() {
            let vh = e.apply_word(v);
            for (a, b) in acc.iter_mut().zip(vh) {
                *a = self.ring.add(*a, b);
            }
        }
        acc.iter().map(|&a| self.ring.mul(a, self.inv_h)).collect()
    }

    pub fn matrix_mod_entry(&self, i: usize, j: usize) -> u64 {
        self.matrix_mod[i * self.n + j]
    }
}

/// Brute-force kernel `{v in R^n : v theta_H = 0}`.
pub fn ker_theta_mod(op: &HaydenOperator) -> Result<Vec<Vec<u64>>> {
    let k = op.ring.size();
    let n = op.degree();
    guard_enum(k, n)?;
    let mut out = Vec::new();
    let mut w = vec![0u64; n];
    loop {
        if op.apply_word(&w).iter().all(|&x| x == 0) {
            out.push(w.clone());
        }
        if !next_word(&mut w, k) {
            break;
        }
    }
    Ok(out)
}

/// Basis `{e_i - e_j : i, j adjacent in the same orbit}` of the real kernel
/// of the averaging projection; it has rank `n - t`.
pub fn ker_theta_real_basis(p: &OrbitPartition) -> RatMatrix {
    let mut rows = Vec::new();
    for orbit in &p.orbits {
        for pair in orbit.windows(2) {
            let mut row = vec![Rat::from_integer(0.into()); p.n];
            row[pair[0]] = Rat::from_integer(1.into());
            row[pair[1]] = Rat::from_integer((-1).into());
            rows.push(row);
        }
    }
    if rows.is_empty() {
        RatMatrix::zero(0, p.n)
    } else {
        RatMatrix::from_rows(rows)
    }
}

/// Odometer step through `Z_k^n`; returns false after the last word.
pub fn next_word(w: &mut [u64], k: u64) -> bool {
    for d in w.iter_mut().rev() {
        *d += 1;
        if *d < k {
            return true;
        }
        *d = 0;
    }
    false
}
