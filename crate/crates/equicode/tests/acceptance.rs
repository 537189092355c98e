//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line with its runtime. Every tolerance and threshold is pinned here.

use std::time::Instant;

use num::BigInt;
use rand::Rng;

use equicode::enumerators::{self, JacobiSet};
use equicode::exactmath::{rat, Rat};
use equicode::frobring::RingZk;
use equicode::gcode::{self, Code};
use equicode::harmonic;
use equicode::instances::{
    random_g_code, random_instance, random_subgroup, seeded_rng, sweep_combinations, z4_example,
};
use equicode::lattice;
use equicode::macwilliams::{self, Flavor};
use equicode::permgrp::{self, PermGroup};
use equicode::theta;

fn criterion(number: u32, description: &str, started: Instant, pass: bool, budget_s: f64) {
    let elapsed = started.elapsed().as_secs_f64();
    let in_budget = elapsed < budget_s;
    println!(
        "ACCEPTANCE {:2} [{}] {} ({:.2}s, budget {}s)",
        number,
        if pass && in_budget { "PASS" } else { "FAIL" },
        description,
        elapsed,
        budget_s
    );
    assert!(pass, "criterion {} failed", number);
    assert!(
        in_budget,
        "criterion {} exceeded its {}s budget: {:.2}s",
        number, budget_s, elapsed
    );
}

/// Criterion 1: the bundled Z4 example reproduces its reference values
/// byte-exactly in under a second.
#[test]
fn acceptance_01_worked_example_exact() {
    let started = Instant::now();
    let ex = z4_example();
    let op = permgrp::hayden(ex.ring, &ex.group).unwrap();
    let proj = gcode::project_theta(&ex.code, &op);
    let dual_h = gcode::h_dual(&proj).unwrap();
    let m = permgrp::orbit_length_matrix(&op.partition);

    let words = |ws: &[Vec<u64>]| -> Vec<String> {
        let mut v: Vec<String> = ws
            .iter()
            .map(|w| w.iter().map(|d| d.to_string()).collect())
            .collect();
        v.sort();
        v
    };
    let mut pass = words(&proj.words_in_v()) == ["0000", "1113", "2222", "3331"];
    pass &= words(&dual_h.words_in_v()) == ["0000", "1111", "2222", "3333"];
    pass &= m.diagonal == vec![3, 3, 3, 1];
    // the H-dual equals the projected dual scaled by M_H
    let rep = gcode::verify_orbit_matrix(&ex.code, &op).unwrap();
    pass &= rep.pass;
    pass &= enumerators::h_weight_enum(&dual_h).to_string() == "x^2 + 3*y^2";
    pass &= enumerators::h_weight_enum(&proj).to_string() == "x^2 + 3*y^2";
    criterion(1, "Z4 worked example, byte-exact values", started, pass, 1.0);
}

fn sweep_instances(seed: u64, count: usize) -> Vec<equicode::instances::Instance> {
    let mut rng = seeded_rng(seed);
    let combos = sweep_combinations();
    let mut out = Vec::with_capacity(count);
    let mut i = 0;
    while out.len() < count {
        let (k, ord) = combos[i % combos.len()];
        i += 1;
        let n_lo = ord.max(3);
        let n = rng.gen_range(n_lo..=5);
        out.push(random_instance(&mut rng, k, n, ord).unwrap());
    }
    out
}

/// Criterion 2: the duality split of the averaging operator holds on 200
/// random instances plus the worked example.
#[test]
fn acceptance_02_hayden_split_sweep() {
    let started = Instant::now();
    let mut pass = true;
    let ex = z4_example();
    let op = permgrp::hayden(ex.ring, &ex.group).unwrap();
    pass &= gcode::verify_hayden(&ex.code, &op).unwrap().pass;
    for inst in sweep_instances(2024, 200) {
        let op = inst.operator().unwrap();
        let rep = gcode::verify_hayden(&inst.code, &op).unwrap();
        if !rep.pass {
            eprintln!("split failed: {:?}", rep);
            pass = false;
        }
    }
    criterion(2, "duality split on 200 random instances", started, pass, 60.0);
}

/// Criterion 3: the orbit-length-matrix identity on the same sweep.
#[test]
fn acceptance_03_orbit_matrix_sweep() {
    let started = Instant::now();
    let mut pass = true;
    let ex = z4_example();
    let op = permgrp::hayden(ex.ring, &ex.group).unwrap();
    pass &= gcode::verify_orbit_matrix(&ex.code, &op).unwrap().pass;
    for inst in sweep_instances(2024, 200) {
        let op = inst.operator().unwrap();
        let rep = gcode::verify_orbit_matrix(&inst.code, &op).unwrap();
        if !rep.pass {
            eprintln!("orbit-matrix failed: {:?}", rep);
            pass = false;
        }
    }
    criterion(3, "orbit-length duality on 200 random instances", started, pass, 60.0);
}

/// Criterion 4: all five MacWilliams flavors on the worked example plus 50
/// random instances each, with trivial-subgroup runs reproducing the
/// classical identity.
#[test]
fn acceptance_04_macwilliams_suite() {
    let started = Instant::now();
    let mut pass = true;
    let ex = z4_example();
    let op = permgrp::hayden(ex.ring, &ex.group).unwrap();
    let example_flavors = [
        Flavor::Hamming,
        Flavor::Cwe,
        Flavor::CweG { genus: 2 },
        Flavor::Harmonic { d: 1 },
        Flavor::Harmonic { d: 2 },
        Flavor::Jacobi {
            t_set: [0usize].into_iter().collect(),
        },
    ];
    for flavor in &example_flavors {
        pass &= macwilliams::check_identity(flavor, &ex.code, &op).unwrap().pass;
    }

    // genus-2 instances stay at n <= 4 to keep tuple enumeration small
    let light_combos = [(2u64, 3usize), (3, 2), (4, 3), (5, 2)];
    let mut rng = seeded_rng(404);
    for i in 0..50 {
        let (k, ord) = light_combos[i % light_combos.len()];
        let n = rng.gen_range(ord.max(3)..=4);
        let inst = random_instance(&mut rng, k, n, ord).unwrap();
        let op = inst.operator().unwrap();
        let rep = macwilliams::check_identity(&Flavor::CweG { genus: 2 }, &inst.code, &op).unwrap();
        if !rep.pass {
            eprintln!("cwe_g failed: {:?}", rep);
            pass = false;
        }
    }
    for (flavor_idx, seed) in [(0u32, 405u64), (1, 406), (2, 407), (3, 408)] {
        for (i, inst) in sweep_instances(seed, 50).into_iter().enumerate() {
            let op = inst.operator().unwrap();
            let t = op.partition.t;
            let flavor = match flavor_idx {
                0 => Flavor::Hamming,
                1 => Flavor::Cwe,
                2 => Flavor::Harmonic { d: 1 + (i % 2) },
                _ => Flavor::Jacobi {
                    t_set: (0..t).filter(|j| j % 2 == i % 2).collect(),
                },
            };
            let rep = macwilliams::check_identity(&flavor, &inst.code, &op).unwrap();
            if !rep.pass {
                eprintln!("{} failed: {:?}", flavor.name(), rep);
                pass = false;
            }
        }
    }

    // trivial subgroup: the classical MacWilliams identity
    let mut rng = seeded_rng(409);
    for k in [2u64, 3, 4, 5, 6] {
        let ring = RingZk::new(k).unwrap();
        let n = 3;
        let h = PermGroup::trivial(n);
        let code = random_g_code(&mut rng, ring, n, &h).unwrap();
        let op = permgrp::hayden(ring, &h).unwrap();
        for flavor in [
            Flavor::Hamming,
            Flavor::Cwe,
            Flavor::Harmonic { d: 1 },
            Flavor::Jacobi {
                t_set: [0usize].into_iter().collect(),
            },
        ] {
            let rep = macwilliams::check_identity(&flavor, &code, &op).unwrap();
            if !rep.pass {
                eprintln!("trivial-H {} failed: {:?}", flavor.name(), rep);
                pass = false;
            }
        }
    }
    criterion(4, "MacWilliams suite, five flavors", started, pass, 120.0);
}

/// Criterion 5: harmonic structure. Divisibility by (xy)^d with the right
/// quotient degree for every basis function, and closed-form agreement
/// with the definitional oracle.
#[test]
fn acceptance_05_harmonic_structure() {
    let started = Instant::now();
    let mut pass = true;
    for inst in sweep_instances(505, 60) {
        let op = inst.operator().unwrap();
        let proj = gcode::project_theta(&inst.code, &op);
        let t = proj.t();
        let k = inst.ring.size();
        let kt = (k as u128).pow(t as u32);
        for d in 0..=2usize.min(t) {
            for f in harmonic::harm_basis(t, d) {
                // divisibility and quotient degree
                match harmonic::z_poly(&proj, &f) {
                    Ok(z) => {
                        if z.degree != t - 2 * d {
                            eprintln!("degree mismatch t={} d={}", t, d);
                            pass = false;
                        }
                    }
                    Err(e) => {
                        eprintln!("divisibility failed t={} d={}: {}", t, d, e);
                        pass = false;
                    }
                }
                // oracle equivalence; the oracle reads u only through its
                // support, so one representative per support class covers D
                if kt <= 100_000 {
                    let mut seen = std::collections::BTreeSet::new();
                    for u in proj.words() {
                        let supp: Vec<usize> = (0..t).filter(|&i| u[i] != 0).collect();
                        if !seen.insert(supp) {
                            continue;
                        }
                        let fast = harmonic::f_tilde(&f, u, inst.ring).unwrap();
                        let slow = harmonic::f_tilde_by_enumeration(&f, u, inst.ring).unwrap();
                        if fast != slow {
                            eprintln!("oracle mismatch at u={:?}", u);
                            pass = false;
                        }
                    }
                }
            }
        }
    }
    criterion(5, "harmonic divisibility and oracle equivalence", started, pass, 120.0);
}

/// Criterion 6: Construction A determinants, the unimodular worked
/// example, and the G-invariance biconditional on 50 paired instances.
#[test]
fn acceptance_06_construction_a() {
    let started = Instant::now();
    let mut pass = true;

    // det Gram = k^n / |C|^2 on the sweep (so |det L| = k^{n/2} / |C|)
    for inst in sweep_instances(606, 60) {
        let lam = lattice::construction_a(&inst.code);
        let expect = Rat::new(
            BigInt::from(inst.ring.size()).pow(inst.n as u32),
            BigInt::from(inst.code.size() as u64).pow(2),
        );
        if lam.det_gram() != expect {
            eprintln!("det mismatch k={} n={}", inst.ring.size(), inst.n);
            pass = false;
        }
    }

    let ex = z4_example();
    let lam = lattice::construction_a(&ex.code);
    pass &= lam.det_gram() == rat(1, 1);
    let gram = lam.gram_true();
    for i in 0..4 {
        for j in 0..4 {
            pass &= gram.get(i, j).is_integer();
        }
    }

    // 50 positive and 50 negative biconditional instances
    let mut rng = seeded_rng(607);
    let mut positives = 0;
    let mut negatives = 0;
    while positives < 50 || negatives < 50 {
        let k = [2u64, 3, 4, 5][rng.gen_range(0..4)];
        let ring = RingZk::new(k).unwrap();
        let n = rng.gen_range(3..=4usize);
        let ord = [2usize, 3][rng.gen_range(0..2)].min(n);
        let group = random_subgroup(&mut rng, n, ord);
        let code = if positives < 50 {
            random_g_code(&mut rng, ring, n, &group).unwrap()
        } else {
            // span of plain random words; usually not G-invariant
            let w: Vec<u64> = (0..n).map(|_| rng.gen_range(0..k)).collect();
            Code::span(ring, n, &[w]).unwrap()
        };
        let invariant = gcode::is_g_code(&code, &group);
        let lam = lattice::construction_a(&code);
        if lattice::is_g_lattice(&lam, &group) != invariant {
            eprintln!("biconditional failed at k={} n={}", k, n);
            pass = false;
        }
        if invariant {
            positives += 1;
        } else {
            negatives += 1;
        }
    }
    criterion(6, "Construction A determinants and G-invariance", started, pass, 60.0);
}

/// Criterion 7: theta-series correspondence, genus 1 to exponent 8 on the
/// worked example and 20 random instances, genus 2 to combined exponent 4
/// on 5 instances.
#[test]
fn acceptance_07_theta_correspondence() {
    let started = Instant::now();
    let mut pass = true;
    let ex = z4_example();
    let op = permgrp::hayden(ex.ring, &ex.group).unwrap();
    let rep = theta::verify_theta_correspondence(&ex.code, &op, 1, &rat(8, 1)).unwrap();
    pass &= rep.pass;

    for inst in sweep_instances(707, 20) {
        let op = inst.operator().unwrap();
        let rep = theta::verify_theta_correspondence(&inst.code, &op, 1, &rat(8, 1)).unwrap();
        if !rep.pass {
            eprintln!("genus-1 theta failed: {:?}", rep);
            pass = false;
        }
    }

    let rep = theta::verify_theta_correspondence(&ex.code, &op, 2, &rat(4, 1)).unwrap();
    pass &= rep.pass;
    let light_combos = [(2u64, 3usize), (3, 2), (4, 3), (5, 2)];
    let mut rng = seeded_rng(708);
    for (i, &(k, ord)) in light_combos.iter().enumerate().take(4) {
        let n = ord.max(3) + (i % 2);
        let inst = random_instance(&mut rng, k, n.min(4), ord).unwrap();
        let op = inst.operator().unwrap();
        let rep = theta::verify_theta_correspondence(&inst.code, &op, 2, &rat(4, 1)).unwrap();
        if !rep.pass {
            eprintln!("genus-2 theta failed: {:?}", rep);
            pass = false;
        }
    }
    criterion(7, "theta-series correspondence, genus 1 and 2", started, pass, 120.0);
}

/// Criterion 8: Jacobi correspondence with reference vector sqrt(k) 1_T on
/// the worked example for T in {{}, {1}, {1,2}}; a mismatch prints the
/// coefficient diff.
#[test]
fn acceptance_08_jacobi_correspondence() {
    let started = Instant::now();
    let mut pass = true;
    let ex = z4_example();
    let op = permgrp::hayden(ex.ring, &ex.group).unwrap();
    for t_set in [
        JacobiSet::new(),
        [0usize].into_iter().collect::<JacobiSet>(),
        [0usize, 1].into_iter().collect::<JacobiSet>(),
    ] {
        let rep = theta::verify_jacobi_correspondence(&ex.code, &op, &t_set, &rat(4, 1)).unwrap();
        if !rep.pass {
            eprintln!("jacobi correspondence failed: {:?}", rep);
            pass = false;
        }
    }
    criterion(8, "Jacobi theta correspondence on the worked example", started, pass, 60.0);
}

/// Criterion 9: the numeric transformation formula at z = i and 2i within
/// 1e-9 on the four pinned lattices.
#[test]
fn acceptance_09_transformation_formula() {
    let started = Instant::now();
    let mut pass = true;
    let tol = 1e-9;

    let z = lattice::Lattice::standard(1);
    let two_z = lattice::Lattice::new(
        1,
        1,
        equicode::exactmath::RatMatrix::from_rows(vec![vec![rat(2, 1)]]),
    )
    .unwrap();
    let ex = z4_example();
    let lam = lattice::construction_a(&ex.code);
    // rank-1 span-dual pair from Z^2 with the swap
    let swap = permgrp::group_closure(
        2,
        &[permgrp::Permutation::from_cycles(2, "(1 2)").unwrap()],
    )
    .unwrap();
    let op = permgrp::hayden(RingZk::new(3).unwrap(), &swap).unwrap();
    let l0 = lattice::lambda0(&lattice::Lattice::standard(2), &op.matrix_real);
    let proj = lattice::project_lattice(&l0, &op.matrix_real, Some(1)).unwrap();

    for l in [&z, &two_z, &lam, &proj] {
        for z_im in [1.0, 2.0] {
            let rep = theta::jacobi_formula_check(l, z_im, tol).unwrap();
            if !rep.pass {
                eprintln!("transformation formula failed: {:?}", rep);
                pass = false;
            }
        }
    }
    criterion(9, "numeric transformation formula at z = i, 2i", started, pass, 5.0);
}

/// Criterion 10: bidual and involution properties across the sweep.
#[test]
fn acceptance_10_involutions() {
    let started = Instant::now();
    let mut pass = true;
    for inst in sweep_instances(1010, 40) {
        // dual(dual(C)) = C
        let d = gcode::dual(&inst.code).unwrap();
        let dd = gcode::dual(&d).unwrap();
        if dd.words() != inst.code.words() {
            eprintln!("code bidual failed");
            pass = false;
        }
        // double MacWilliams transform is the identity
        let w = enumerators::weight_enum(&inst.code);
        let once = macwilliams::mw_hamming(&w, inst.ring, inst.code.size() as u64).unwrap();
        let twice = macwilliams::mw_hamming(&once, inst.ring, d.size() as u64).unwrap();
        if twice != w {
            eprintln!("double transform failed");
            pass = false;
        }
        // projected complete enumerator bidual
        let op = inst.operator().unwrap();
        let proj = gcode::project_theta(&inst.code, &op);
        let dual_h = gcode::h_dual(&proj).unwrap();
        let p = enumerators::cwe_h(&proj);
        let once = macwilliams::mw_cwe(&p, inst.ring, proj.size() as u64).unwrap();
        let twice = macwilliams::mw_cwe(&once, inst.ring, dual_h.size() as u64).unwrap();
        if twice != p.normalized() {
            eprintln!("double cwe transform failed");
            pass = false;
        }
        // dual lattice involution
        let lam = lattice::construction_a(&inst.code);
        if !lattice::lattice_eq(&lattice::dual_lattice(&lattice::dual_lattice(&lam)), &lam) {
            eprintln!("lattice involution failed");
            pass = false;
        }
    }
    criterion(10, "bidual and involution properties", started, pass, 120.0);
}
