//! Deterministic random problem instances for the verification sweeps,
//! and the bundled Z4 worked example.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::frobring::RingZk;
use crate::gcode::Code;
use crate::permgrp::{group_closure, hayden, HaydenOperator, PermGroup, Permutation};
use crate::Result;

/// A ring, a subgroup `H` acting on the coordinates, and a G-code for
/// `G = H` (closure of random words under the group action).
pub struct Instance {
    pub ring: RingZk,
    pub n: usize,
    pub group: PermGroup,
    pub code: Code,
}

impl Instance {
    pub fn operator(&self) -> Result<HaydenOperator> {
        hayden(self.ring, &self.group)
    }
}

/// A random permutation of prime order `ord` on `[n]`: a product of
/// disjoint `ord`-cycles on shuffled points, at least one cycle.
pub fn random_subgroup(rng: &mut ChaCha8Rng, n: usize, ord: usize) -> PermGroup {
    assert!(ord >= 1);
    if ord == 1 {
        return PermGroup::trivial(n);
    }
    assert!(n >= ord);
    let mut points: Vec<usize> = (0..n).collect();
    points.shuffle(rng);
    let max_cycles = n / ord;
    let cycles = rng.gen_range(1..=max_cycles);
    let mut images: Vec<usize> = (0..n).collect();
    for c in 0..cycles {
        let cyc = &points[c * ord..(c + 1) * ord];
        for i in 0..ord {
            images[cyc[i]] = cyc[(i + 1) % ord];
        }
    }
    let g = Permutation::from_images(images).expect("cycle construction");
    group_closure(n, &[g]).expect("small cyclic group")
}

/// A random G-code: the span of the orbit of one or two random words
/// under the group.
pub fn random_g_code(
    rng: &mut ChaCha8Rng,
    ring: RingZk,
    n: usize,
    group: &PermGroup,
) -> Result<Code> {
    let k = ring.size();
    let words = rng.gen_range(1..=2usize);
    let mut gens = Vec::new();
    for _ in 0..words {
        let w: Vec<u64> = (0..n).map(|_| rng.gen_range(0..k)).collect();
        for e in group.elements() {
            gens.push(e.apply_word(&w));
        }
    }
    Code::span(ring, n, &gens)
}

/// Random instance with `gcd(|H|, k) = 1` guaranteed by the caller's
/// choice of `ord`.
pub fn random_instance(
    rng: &mut ChaCha8Rng,
    k: u64,
    n: usize,
    ord: usize,
) -> Result<Instance> {
    let ring = RingZk::new(k)?;
    let group = random_subgroup(rng, n, ord);
    let code = random_g_code(rng, ring, n, &group)?;
    Ok(Instance {
        ring,
        n,
        group,
        code,
    })
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The valid `(k, |H|)` combinations with `k in {2..6}`, `|H| in {2, 3}`
/// and `gcd(|H|, k) = 1`; `k = 6` is covered by the trivial subgroup and
/// by `|H| = 5` since neither 2 nor 3 is invertible mod 6.
pub fn sweep_combinations() -> Vec<(u64, usize)> {
    vec![(2, 3), (3, 2), (4, 3), (5, 2), (5, 3), (6, 1), (6, 5)]
}

/// The bundled worked example: the self-dual Z4 code of length 4 fixed by
/// the 3-cycle on the first three coordinates.
pub struct Z4Example {
    pub ring: RingZk,
    pub group: PermGroup,
    pub code: Code,
}

pub fn z4_example() -> Z4Example {
    let ring = RingZk::new(4).expect("modulus 4");
    let g = Permutation::from_cycles(4, "(1 2 3)(4)").expect("cycle");
    let group = group_closure(4, &[g]).expect("order-3 group");
    let code = Code::span(
        ring,
        4,
        &[vec![1, 1, 1, 3], vec![1, 3, 1, 1], vec![0, 0, 2, 2]],
    )
    .expect("16-word code");
    Z4Example { ring, group, code }
}

/// The sixteen codewords of the bundled example, as listed.
pub fn z4_example_table() -> Vec<Vec<u64>> {
    [
        "0000", "1113", "1311", "2020", "0022", "3331", "3133", "0202", "2200", "3111", "1131",
        "2002", "0220", "1333", "3313", "2222",
    ]
    .iter()
    .map(|s| s.chars().map(|c| c.to_digit(10).unwrap() as u64).collect())
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gcode::is_g_code;

    #[test]
    fn random_instances_are_g_codes() {
        let mut rng = seeded_rng(11);
        for (k, ord) in sweep_combinations() {
            for _ in 0..5 {
                let n = rng.gen_range(ord.max(2)..=5);
                let inst = random_instance(&mut rng, k, n, ord).unwrap();
                assert!(is_g_code(&inst.code, &inst.group));
                assert_eq!(inst.group.order(), ord);
                // the exhaustive closure check is quadratic; keep it small
                if inst.code.size() <= 512 {
                    assert!(inst.code.check_submodule());
                }
            }
        }
    }

    #[test]
    fn sweeps_are_reproducible() {
        let a = random_instance(&mut seeded_rng(7), 4, 4, 3).unwrap();
        let b = random_instance(&mut seeded_rng(7), 4, 4, 3).unwrap();
        assert_eq!(a.code.words(), b.code.words());
    }

    #[test]
    fn bundled_example_matches_the_table() {
        let ex = z4_example();
        let mut table = z4_example_table();
        table.sort();
        assert_eq!(ex.code.words(), &table[..]);
    }
}
