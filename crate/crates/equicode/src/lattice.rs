//! Construction-A lattices over `Z_k`, G-lattice predicates, the
//! sublattice `Lambda_0` of vectors whose averaged image stays in the
//! lattice, projections, duals (full-rank and span form), and exact
//! vector enumeration by norm.
//!
//! A lattice stores a rational row basis `B` and a scale `k_scale = s`;
//! the actual vectors are `z * B / sqrt(s)` for integer `z`. All
//! Construction-A lattices use `s = k`.

use num::{BigInt, Integer, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exactmath::{hnf, snf_preimage, IntMatrix, Rat, RatMatrix};
use crate::gcode::{is_g_code, project_theta, Code, OrbitCode};
use crate::permgrp::{HaydenOperator, OrbitPartition, PermGroup};
use crate::report::Report;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct Lattice {
    pub ambient_dim: usize,
    /// True vectors are `stored / sqrt(k_scale)`.
    pub k_scale: u64,
    /// Full-row-rank rational basis, one row per generator.
    pub basis: RatMatrix,
}

/// JSON form: `{"k_scale": 4, "basis": [["1", "1/2"], ...]}`.
#[derive(Serialize, Deserialize)]
pub struct LatticeJson {
    pub k_scale: u64,
    pub basis: Vec<Vec<String>>,
}

impl Lattice {
    pub fn new(ambient_dim: usize, k_scale: u64, basis: RatMatrix) -> Result<Self> {
        assert_eq!(basis.cols, ambient_dim);
        let l = Lattice {
            ambient_dim,
            k_scale,
            basis,
        };
        if l.basis.rank() != l.rank() {
            return Err(Error::Parse("basis rows are dependent".into()));
        }
        Ok(l)
    }

    /// `Z^n` with scale 1.
    pub fn standard(n: usize) -> Self {
        Lattice {
            ambient_dim: n,
            k_scale: 1,
            basis: IntMatrix::identity(n).to_rat(),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.rows
    }

    /// Gram matrix of the true vectors: `B B^T / s`.
    pub fn gram_true(&self) -> RatMatrix {
        self.basis
            .mul(&self.basis.transpose())
            .scale(&Rat::new(BigInt::one(), BigInt::from(self.k_scale)))
    }

    /// `det = sqrt(det Gram)`; returned as the exact rational `det Gram`.
    pub fn det_gram(&self) -> Rat {
        rat_det(&self.gram_true())
    }

    /// Membership of a stored (unscaled) vector.
    pub fn contains_stored(&self, v: &[Rat]) -> bool {
        match self.basis.solve_left(v) {
            Some(x) => x.iter().all(|c| c.is_integer()),
            None => false,
        }
    }

    /// Canonical basis: HNF of the denominator-cleared rows, rescaled.
    pub fn canonical_basis(&self) -> RatMatrix {
        let (cleared, den) = self.basis.clear_denominators();
        let h = hnf(&cleared);
        h.to_rat().scale(&Rat::new(BigInt::one(), den))
    }

    /// Rescale so that `k_scale` is squarefree, folding square factors
    /// into the basis.
    pub fn normalize_scale(&self) -> Lattice {
        let mut s = self.k_scale;
        let mut c = 1u64;
        let mut d = 2u64;
        while d * d <= s {
            while s % (d * d) == 0 {
                s /= d * d;
                c *= d;
            }
            d += 1;
        }
        Lattice {
            ambient_dim: self.ambient_dim,
            k_scale: s,
            basis: self
                .basis
                .scale(&Rat::new(BigInt::one(), BigInt::from(c))),
        }
    }

    pub fn to_json(&self) -> LatticeJson {
        LatticeJson {
            k_scale: self.k_scale,
            basis: (0..self.basis.rows)
                .map(|i| {
                    self.basis
                        .row(i)
                        .iter()
                        .map(crate::polyring::rat_string)
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_json(j: &LatticeJson) -> Result<Lattice> {
        let rows: Vec<Vec<Rat>> = j
            .basis
            .iter()
            .map(|row| row.iter().map(|s| parse_rat(s)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        let cols = rows.first().map_or(0, |r| r.len());
        Lattice::new(cols, j.k_scale, RatMatrix::from_rows(rows))
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

fn rat_det(m: &RatMatrix) -> Rat {
    assert_eq!(m.rows, m.cols);
    let (cleared, den) = m.clear_denominators();
    let det = cleared.det();
    let mut den_pow = Rat::one();
    for _ in 0..m.rows {
        den_pow *= Rat::from_integer(den.clone());
    }
    Rat::from_integer(det) / den_pow
}

/// Equality of lattices as vector sets: same squarefree scale and the same
/// Hermite-canonical basis.
pub fn lattice_eq(a: &Lattice, b: &Lattice) -> bool {
    let a = a.normalize_scale();
    let b = b.normalize_scale();
    if a.k_scale != b.k_scale || a.ambient_dim != b.ambient_dim || a.rank() != b.rank() {
        return false;
    }
    let (ca, da) = a.canonical_basis().clear_denominators();
    let (cb, db) = b.canonical_basis().clear_denominators();
    let lcm = da.lcm(&db);
    let scale_rows = |m: &IntMatrix, f: &BigInt| -> IntMatrix {
        let rows = (0..m.rows)
            .map(|i| m.row(i).iter().map(|v| v * f).collect())
            .collect();
        IntMatrix::from_rows(rows)
    };
    hnf(&scale_rows(&ca, &(&lcm / &da))) == hnf(&scale_rows(&cb, &(&lcm / &db)))
}

/// Construction A: stored vectors are the integer vectors whose reduction
/// mod k lies in the code; scale `1/sqrt(k)`.
pub fn construction_a(c: &Code) -> Lattice {
    let k = c.ring.size();
    let mut rows: Vec<Vec<BigInt>> = c
        .generators()
        .iter()
        .map(|g| g.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    for i in 0..c.n {
        let mut row = vec![BigInt::zero(); c.n];
        row[i] = BigInt::from(k);
        rows.push(row);
    }
    let h = hnf(&IntMatrix::from_rows(rows));
    assert_eq!(h.rows, c.n);
    // |det| = k^n / |C|
    let det = h.det().abs();
    let expect = BigInt::from(k).pow(c.n as u32) / BigInt::from(c.size() as u64);
    assert_eq!(det, expect, "Construction-A index mismatch");
    Lattice {
        ambient_dim: c.n,
        k_scale: k,
        basis: h.to_rat(),
    }
}

/// Construction A applied to an orbit code inside the `t`-dimensional
/// orbit-coordinate space (H-inner product is the standard one there).
pub fn construction_a_orbit(d: &OrbitCode) -> Lattice {
    let k = d.ring.size();
    let t = d.t();
    let mut rows: Vec<Vec<BigInt>> = d
        .generators()
        .iter()
        .map(|g| g.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    for i in 0..t {
        let mut row = vec![BigInt::zero(); t];
        row[i] = BigInt::from(k);
        rows.push(row);
    }
    let h = hnf(&IntMatrix::from_rows(rows));
    assert_eq!(h.rows, t);
    Lattice {
        ambient_dim: t,
        k_scale: k,
        basis: h.to_rat(),
    }
}

/// Does every generator of G map the lattice into itself?
pub fn is_g_lattice(l: &Lattice, g: &PermGroup) -> bool {
    for gen in g.generators() {
        for i in 0..l.basis.rows {
            let row = l.basis.row(i).to_vec();
            let permuted = gen.apply_word(&row);
            if !l.contains_stored(&permuted) {
                return false;
            }
        }
    }
    true
}

/// `Lambda_0 = {v in Lambda : v theta_H in Lambda}` for a full-rank
/// lattice, via the Smith-normal-form preimage in coefficient space.
pub fn lambda0(l: &Lattice, theta_real: &RatMatrix) -> Lattice {
    assert_eq!(l.rank(), l.ambient_dim, "full-rank lattice required");
    let b_inv = l.basis.inverse().expect("full-rank basis");
    let m = l.basis.mul(theta_real).mul(&b_inv);
    let x = snf_preimage(&m);
    Lattice {
        ambient_dim: l.ambient_dim,
        k_scale: l.k_scale,
        basis: x.to_rat().mul(&l.basis),
    }
}

/// Image lattice `Lambda theta_H`: the integer row span of the projected
/// basis, reduced to a basis. Errors when the image rank differs from the
/// expected one.
pub fn project_lattice(
    l: &Lattice,
    theta_real: &RatMatrix,
    expected_rank: Option<usize>,
) -> Result<Lattice> {
    let projected = l.basis.mul(theta_real);
    let (cleared, den) = projected.clear_denominators();
    let h = hnf(&cleared);
    if let Some(t) = expected_rank {
        if h.rows != t {
            return Err(Error::NotDiscrete {
                got: h.rows,
                expected: t,
            });
        }
    }
    Ok(Lattice {
        ambient_dim: l.ambient_dim,
        k_scale: l.k_scale,
        basis: h.to_rat().scale(&Rat::new(BigInt::one(), den)),
    })
}

/// Dual lattice with the same scale. For a full-rank basis this is
/// `s (B^{-1})^T`; in general the span-dual `s (B B^T)^{-1} B`, leaving
/// the orthogonal complement to the caller.
pub fn dual_lattice(l: &Lattice) -> Lattice {
    let bt = l.basis.transpose();
    let gram_inv = l
        .basis
        .mul(&bt)
        .inverse()
        .expect("independent basis rows");
    let dual = gram_inv
        .mul(&l.basis)
        .scale(&Rat::from_integer(BigInt::from(l.k_scale)));
    Lattice {
        ambient_dim: l.ambient_dim,
        k_scale: l.k_scale,
        basis: dual,
    }
}

/// All lattice vectors with true norm at most `max_norm`, as coefficient
/// vectors with their exact norms. Exact rational arithmetic throughout.
pub fn enumerate_vectors(l: &Lattice, max_norm: &Rat) -> Vec<(Vec<BigInt>, Rat)> {
    let r = l.rank();
    if r == 0 {
        return vec![(Vec::new(), Rat::zero())];
    }
    let gram = l.gram_true();
    let (lmat, diag) = ldlt(&gram);
    let mut out = Vec::new();
    let mut z = vec![BigInt::zero(); r];
    descend(
        r,
        &lmat,
        &diag,
        max_norm.clone(),
        Rat::zero(),
        &mut z,
        &mut out,
    );
    out
}

/// LDL^T of a symmetric positive definite rational matrix: unit lower
/// triangular `L` and positive diagonal `D` with `G = L D L^T`.
fn ldlt(g: &RatMatrix) -> (RatMatrix, Vec<Rat>) {
    let n = g.rows;
    let mut l = RatMatrix::identity(n);
    let mut d = vec![Rat::zero(); n];
    for j in 0..n {
        let mut dj = g.get(j, j).clone();
        for m in 0..j {
            dj -= l.get(j, m) * l.get(j, m) * &d[m];
        }
        assert!(dj > Rat::zero(), "Gram matrix not positive definite");
        d[j] = dj;
        for i in j + 1..n {
            let mut v = g.get(i, j).clone();
            for m in 0..j {
                v -= l.get(i, m) * l.get(j, m) * &d[m];
            }
            l.set(i, j, v / &d[j]);
        }
    }
    (l, d)
}

/// Depth-first scan over `z_{level-1}`: `Q(z) = sum_j D_j (z_j + c_j)^2`
/// with `c_j = sum_{i>j} z_i L_ij`.
fn descend(
    level: usize,
    lmat: &RatMatrix,
    diag: &[Rat],
    budget: Rat,
    norm_so_far: Rat,
    z: &mut Vec<BigInt>,
    out: &mut Vec<(Vec<BigInt>, Rat)>,
) {
    if level == 0 {
        out.push((z.clone(), norm_so_far));
        return;
    }
    let j = level - 1;
    let mut c = Rat::zero();
    for i in level..z.len() {
        c += Rat::from_integer(z[i].clone()) * lmat.get(i, j);
    }
    let start = (-c.clone()).floor().to_integer();
    let step = |zj: &BigInt| -> Option<Rat> {
        let term = {
            let v = Rat::from_integer(zj.clone()) + &c;
            &v * &v * &diag[j]
        };
        if term <= budget {
            Some(term)
        } else {
            None
        }
    };
    let mut zj = start.clone();
    while let Some(term) = step(&zj) {
        z[j] = zj.clone();
        descend(
            j,
            lmat,
            diag,
            budget.clone() - &term,
            norm_so_far.clone() + &term,
            z,
            out,
        );
        zj -= 1;
    }
    let mut zj = start + 1;
    while let Some(term) = step(&zj) {
        z[j] = zj.clone();
        descend(
            j,
            lmat,
            diag,
            budget.clone() - &term,
            norm_so_far.clone() + &term,
            z,
            out,
        );
        zj += 1;
    }
    z[j] = BigInt::zero();
}

/// Stored vector for a coefficient vector.
pub fn stored_vector(l: &Lattice, z: &[BigInt]) -> Vec<Rat> {
    (0..l.ambient_dim)
        .map(|j| {
            (0..l.rank())
                .map(|i| Rat::from_integer(z[i].clone()) * l.basis.get(i, j))
                .fold(Rat::zero(), |a, b| a + b)
        })
        .collect()
}

/// True inner product of two coefficient vectors.
pub fn inner_true(l: &Lattice, z1: &[BigInt], z2: &[BigInt]) -> Rat {
    let gram = l.gram_true();
    let mut acc = Rat::zero();
    for i in 0..l.rank() {
        if z1[i].is_zero() {
            continue;
        }
        for j in 0..l.rank() {
            if z2[j].is_zero() {
                continue;
            }
            acc += Rat::from_integer(z1[i].clone())
                * Rat::from_integer(z2[j].clone())
                * gram.get(i, j);
        }
    }
    acc
}

/// Check the lattice form of the averaging duality:
/// the dual of `Lambda_0 theta_H` splits into the real kernel of the
/// projection plus `Lambda_0^* theta_H`. The rank-`t` parts are compared
/// as span-duals; the kernel part is checked as an orthogonal-complement
/// equality.
pub fn verify_lattice_hayden(
    l: &Lattice,
    theta_real: &RatMatrix,
    partition: &OrbitPartition,
) -> Result<Report> {
    let t = partition.t;
    let l0 = lambda0(l, theta_real);
    let proj = project_lattice(&l0, theta_real, Some(t))?;
    let span_dual = dual_lattice(&proj);
    let dual_proj = project_lattice(&dual_lattice(&l0), theta_real, Some(t))?;
    let lattices_equal = lattice_eq(&span_dual, &dual_proj);

    // orthogonal complement of the span is exactly the kernel subspace
    let ker = crate::permgrp::ker_theta_real_basis(partition);
    let mut orthogonal = true;
    for i in 0..span_dual.basis.rows {
        for kk in 0..ker.rows {
            let dot = (0..l.ambient_dim)
                .map(|j| span_dual.basis.get(i, j) * ker.get(kk, j))
                .fold(Rat::zero(), |a, b| a + b);
            if !dot.is_zero() {
                orthogonal = false;
            }
        }
    }
    let ranks_fill = span_dual.basis.rank() + ker.rank() == l.ambient_dim;
    let pass = lattices_equal && orthogonal && ranks_fill;
    Ok(Report {
        flavor: "lattice-hayden".into(),
        pass,
        lhs: format!("span-dual rank {}", span_dual.rank()),
        rhs: format!("dual-then-project rank {}", dual_proj.rank()),
        witness: if pass {
            None
        } else if !lattices_equal {
            Some("span-dual differs from projected dual".into())
        } else if !orthogonal {
            Some("kernel not orthogonal to the projected span".into())
        } else {
            Some("ranks do not fill the ambient space".into())
        },
    })
}

/// Check the code/lattice correspondence for Construction A:
/// G-invariance transfers both ways, and the projected sublattice
/// `Lambda_0(C) theta_H` matches the orbit-coordinate Construction-A
/// lattice of `C theta_H` pointwise on a coefficient box.
pub fn verify_glattice_correspondence(
    c: &Code,
    g: &PermGroup,
    op: &HaydenOperator,
) -> Result<Report> {
    let lam = construction_a(c);
    let code_inv = is_g_code(c, g);
    let lattice_inv = is_g_lattice(&lam, g);
    let biconditional = code_inv == lattice_inv;

    let mut box_match = true;
    let mut witness = None;
    if code_inv {
        let t = op.partition.t;
        let l0 = lambda0(&lam, &op.matrix_real);
        let proj = project_lattice(&l0, &op.matrix_real, Some(t))?;
        let orbit_lattice = construction_a_orbit(&project_theta(c, op));
        // compare as sets of orbit-coefficient vectors on a box
        let k = c.ring.size() as i64;
        let radius = k + 2;
        let mut b = vec![-radius; t];
        loop {
            let stored_orbit: Vec<Rat> = b
                .iter()
                .map(|&v| Rat::from_integer(v.into()))
                .collect();
            let in_orbit_lattice = orbit_lattice.contains_stored(&stored_orbit);
            // expand b into the orbit-constant vector of R^n
            let expanded: Vec<Rat> = (0..op.partition.n)
                .map(|j| {
                    Rat::from_integer(b[op.partition.orbit_of[j]].into())
                })
                .collect();
            let in_projected = proj.contains_stored(&expanded);
            if in_orbit_lattice != in_projected {
                box_match = false;
                witness = Some(format!(
                    "coefficient vector {:?}: orbit lattice {} vs projected {}",
                    b, in_orbit_lattice, in_projected
                ));
                break;
            }
            // odometer over the box
            let mut done = true;
            for slot in b.iter_mut().rev() {
                *slot += 1;
                if *slot <= radius {
                    done = false;
                    break;
                }
                *slot = -radius;
            }
            if done {
                break;
            }
        }
    }
    let pass = biconditional && box_match;
    Ok(Report {
        flavor: "glattice-correspondence".into(),
        pass,
        lhs: format!("is_g_code = {}", code_inv),
        rhs: format!("is_g_lattice = {}", lattice_inv),
        witness: witness.or(if biconditional {
            None
        } else {
            Some("G-invariance biconditional failed".into())
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;
    use crate::frobring::RingZk;
    use crate::permgrp::{group_closure, hayden, orbits, Permutation};

    fn z4_ring() -> RingZk {
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

    #[test]
    fn construction_a_of_the_z4_code_is_unimodular() {
        let lam = construction_a(&z4_code());
        assert_eq!(lam.rank(), 4);
        // det Gram = (k^n / |C|)^2 / k^n = 1
        assert_eq!(lam.det_gram(), rat(1, 1));
        // integral Gram
        let gram = lam.gram_true();
        for i in 0..4 {
            for j in 0..4 {
                assert!(gram.get(i, j).is_integer());
            }
        }
        // self-dual
        assert!(lattice_eq(&lam, &dual_lattice(&lam)));
    }

    #[test]
    fn construction_a_of_trivial_codes() {
        // C = {0} in Z_4^1 gives stored 4Z at scale 4, i.e. 2Z
        let zero = Code::span(z4_ring(), 1, &[]).unwrap();
        let lam = construction_a(&zero);
        assert_eq!(lam.basis.get(0, 0), &rat(4, 1));
        assert_eq!(lam.det_gram(), rat(4, 1));

        // full Z2 gives (1/sqrt 2) Z
        let z2 = RingZk::new(2).unwrap();
        let full = Code::span(z2, 1, &[vec![1]]).unwrap();
        let lam = construction_a(&full);
        assert_eq!(lam.det_gram(), rat(1, 2));
    }

    #[test]
    fn g_lattice_predicate() {
        let g = group_closure(4, &[Permutation::from_cycles(4, "(1 2 3)(4)").unwrap()]).unwrap();
        let lam = construction_a(&z4_code());
        assert!(is_g_lattice(&lam, &g));
        assert!(is_g_lattice(&Lattice::standard(4), &g));

        let z2 = RingZk::new(2).unwrap();
        let c = Code::span(z2, 4, &[vec![1, 1, 0, 0]]).unwrap();
        let swap = group_closure(4, &[Permutation::from_cycles(4, "(1 3)(2 4)").unwrap()]).unwrap();
        assert!(!is_g_code(&c, &swap));
        assert!(!is_g_lattice(&construction_a(&c), &swap));
    }

    #[test]
    fn lambda0_identity_and_swap() {
        // theta = identity keeps the lattice
        let l = Lattice::standard(3);
        let id = RatMatrix::identity(3);
        assert!(lattice_eq(&lambda0(&l, &id), &l));

        // Z^2 with the swap: Lambda_0 = {a + b even}
        let swap_group =
            group_closure(2, &[Permutation::from_cycles(2, "(1 2)").unwrap()]).unwrap();
        let op = hayden(RingZk::new(3).unwrap(), &swap_group).unwrap();
        let l = Lattice::standard(2);
        let l0 = lambda0(&l, &op.matrix_real);
        for a in -4i64..=4 {
            for b in -4i64..=4 {
                let v = vec![Rat::from_integer(a.into()), Rat::from_integer(b.into())];
                assert_eq!(l0.contains_stored(&v), (a + b) % 2 == 0, "a={} b={}", a, b);
            }
        }
    }

    #[test]
    fn projection_by_the_identity_is_the_lattice() {
        let lam = construction_a(&z4_code());
        let id = RatMatrix::identity(4);
        let proj = project_lattice(&lam, &id, Some(4)).unwrap();
        assert!(lattice_eq(&proj, &lam));
    }

    #[test]
    fn projection_of_the_swap_instance() {
        let swap_group =
            group_closure(2, &[Permutation::from_cycles(2, "(1 2)").unwrap()]).unwrap();
        let op = hayden(RingZk::new(3).unwrap(), &swap_group).unwrap();
        let l = Lattice::standard(2);
        let l0 = lambda0(&l, &op.matrix_real);
        let proj = project_lattice(&l0, &op.matrix_real, Some(1)).unwrap();
        // image is Z * (1, 1)
        let expect = Lattice::new(
            2,
            1,
            RatMatrix::from_rows(vec![vec![rat(1, 1), rat(1, 1)]]),
        )
        .unwrap();
        assert!(lattice_eq(&proj, &expect));

        // span-dual of Z(1,1) is (1/2)(1,1)Z
        let sd = dual_lattice(&proj);
        let expect = Lattice::new(
            2,
            1,
            RatMatrix::from_rows(vec![vec![rat(1, 2), rat(1, 2)]]),
        )
        .unwrap();
        assert!(lattice_eq(&sd, &expect));
    }

    #[test]
    fn dual_of_scaled_line() {
        // stored 4Z at scale 4 is the true lattice 2Z; dual (1/2)Z
        let l = Lattice::new(1, 4, RatMatrix::from_rows(vec![vec![rat(4, 1)]])).unwrap();
        let d = dual_lattice(&l);
        // stored dual basis: 4 * (1/4) = 1, true (1/2)
        assert_eq!(d.basis.get(0, 0), &rat(1, 1));
        assert_eq!(d.det_gram(), rat(1, 4));
        // involution
        assert!(lattice_eq(&dual_lattice(&d), &l));
    }

    #[test]
    fn dual_lattice_is_an_involution() {
        let lam = construction_a(&z4_code());
        assert!(lattice_eq(&dual_lattice(&dual_lattice(&lam)), &lam));
        let z = Lattice::standard(3);
        assert!(lattice_eq(&dual_lattice(&dual_lattice(&z)), &z));
    }

    #[test]
    fn lambda0_has_finite_index() {
        let op = z4_op();
        let lam = construction_a(&z4_code());
        let l0 = lambda0(&lam, &op.matrix_real);
        // index = |det(B_0)| / |det(B)| must be a positive integer
        let mut index = rat_det(&l0.basis) / rat_det(&lam.basis);
        if index < Rat::zero() {
            index = -index;
        }
        assert!(index.is_integer());
        assert!(index >= Rat::one());
        // the sublattice really is contained in the lattice
        for i in 0..l0.basis.rows {
            assert!(lam.contains_stored(l0.basis.row(i)));
        }
    }

    #[test]
    fn lambda0_of_the_z4_lattice_matches_the_definition() {
        // pointwise scan: v in Lambda_0 iff v theta in Lambda
        let op = z4_op();
        let lam = construction_a(&z4_code());
        let l0 = lambda0(&lam, &op.matrix_real);
        assert_eq!(l0.rank(), 4);
        for (z, _) in enumerate_vectors(&lam, &rat(6, 1)) {
            let stored = crate::lattice::stored_vector(&lam, &z);
            let image: Vec<Rat> = (0..4)
                .map(|j| {
                    (0..4)
                        .map(|i| &stored[i] * op.matrix_real.get(i, j))
                        .fold(Rat::zero(), |a, b| a + b)
                })
                .collect();
            let by_definition = lam.contains_stored(&image);
            assert_eq!(l0.contains_stored(&stored), by_definition, "v = {:?}", stored);
        }
    }

    #[test]
    fn enumeration_matches_box_oracle() {
        // 2Z as stored 4Z at scale 4: norms 4 m^2
        let l = Lattice::new(1, 4, RatMatrix::from_rows(vec![vec![rat(4, 1)]])).unwrap();
        let vecs = enumerate_vectors(&l, &rat(36, 1));
        let norms: Vec<i64> = {
            use num::ToPrimitive;
            let mut v: Vec<i64> = vecs.iter().map(|(_, n)| n.to_integer().to_i64().unwrap()).collect();
            v.sort();
            v
        };
        assert_eq!(norms, vec![0, 4, 4, 16, 16, 36, 36]);

        // rank-2: the Construction-A lattice of the binary repetition code
        let z2 = RingZk::new(2).unwrap();
        let rep = Code::span(z2, 2, &[vec![1, 1]]).unwrap();
        let lam = construction_a(&rep);
        let vecs = enumerate_vectors(&lam, &rat(5, 1));
        // box oracle: (a, b) with a = b mod 2, norm (a^2 + b^2) / 2 <= 5
        let mut expect = 0;
        for a in -4i64..=4 {
            for b in -4i64..=4 {
                if (a - b) % 2 == 0 && a * a + b * b <= 10 {
                    expect += 1;
                }
            }
        }
        assert_eq!(vecs.len(), expect);
    }

    #[test]
    fn lattice_hayden_on_the_swap_instance() {
        let swap_group =
            group_closure(2, &[Permutation::from_cycles(2, "(1 2)").unwrap()]).unwrap();
        let op = hayden(RingZk::new(3).unwrap(), &swap_group).unwrap();
        let l = Lattice::standard(2);
        let rep = verify_lattice_hayden(&l, &op.matrix_real, &op.partition).unwrap();
        assert!(rep.pass, "{:?}", rep);
    }

    #[test]
    fn lattice_hayden_trivial_subgroup() {
        let op = hayden(z4_ring(), &PermGroup::trivial(3)).unwrap();
        let l = Lattice::standard(3);
        let rep = verify_lattice_hayden(&l, &op.matrix_real, &op.partition).unwrap();
        assert!(rep.pass, "{:?}", rep);
    }

    #[test]
    fn lattice_hayden_on_the_z4_lattice() {
        let op = z4_op();
        let lam = construction_a(&z4_code());
        let rep = verify_lattice_hayden(&lam, &op.matrix_real, &op.partition).unwrap();
        assert!(rep.pass, "{:?}", rep);
    }

    #[test]
    fn glattice_correspondence_on_the_z4_example() {
        let g = group_closure(4, &[Permutation::from_cycles(4, "(1 2 3)(4)").unwrap()]).unwrap();
        let rep = verify_glattice_correspondence(&z4_code(), &g, &z4_op()).unwrap();
        assert!(rep.pass, "{:?}", rep);
    }

    #[test]
    fn glattice_correspondence_negative_instance() {
        let z2 = RingZk::new(2).unwrap();
        let c = Code::span(z2, 4, &[vec![1, 1, 0, 0]]).unwrap();
        let swap = group_closure(4, &[Permutation::from_cycles(4, "(1 3)(2 4)").unwrap()]).unwrap();
        // |H| = 2 is not invertible mod 2, so use the trivial operator for
        // the correspondence part; the biconditional itself is the point.
        let op = hayden(z2, &PermGroup::trivial(4)).unwrap();
        let rep = verify_glattice_correspondence(&c, &swap, &op).unwrap();
        assert!(rep.pass, "{:?}", rep);
        assert!(rep.lhs.contains("false"));
        assert!(rep.rhs.contains("false"));
    }

    #[test]
    fn json_round_trip() {
        let lam = construction_a(&z4_code());
        let j = lam.to_json();
        let text = serde_json::to_string(&j).unwrap();
        let back: LatticeJson = serde_json::from_str(&text).unwrap();
        let l2 = Lattice::from_json(&back).unwrap();
        assert!(lattice_eq(&lam, &l2));
    }

    #[test]
    fn orbit_partitions_are_consistent() {
        let op = z4_op();
        let p = orbits(&group_closure(4, &[Permutation::from_cycles(4, "(1 2 3)(4)").unwrap()]).unwrap());
        assert_eq!(op.partition, p);
    }
}
