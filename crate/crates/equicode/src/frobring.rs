//! The base ring `R_0 = Z_k` (with `F_p` the prime case) together with its
//! generating character `chi(a) = zeta_k^a` and unit arithmetic.
//!
//! Only commutative base rings are supported, so every left/right
//! distinction collapses and each statement is implemented once.

use crate::exactmath::Cyclotomic;
use crate::{Error, Result};

/// The ring of integers modulo `k`, `k >= 2`. Elements are plain `u64`
/// values in `[0, k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RingZk {
    k: u64,
}

impl RingZk {
    pub fn new(k: u64) -> Result<Self> {
        if k < 2 {
            return Err(Error::Parse(format!("modulus must be >= 2, got {}", k)));
        }
        Ok(RingZk { k })
    }

    /// `|R_0|`.
    pub fn size(&self) -> u64 {
        self.k
    }

    /// True when the ring is the finite field `F_p`. Reporting only; the
    /// arithmetic is identical.
    pub fn is_prime_field(&self) -> bool {
        let k = self.k;
        if k < 2 {
            return false;
        }
        let mut d = 2;
        while d * d <= k {
            if k % d == 0 {
                return false;
            }
            d += 1;
        }
        true
    }

    pub fn reduce(&self, v: i128) -> u64 {
        v.rem_euclid(self.k as i128) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.k
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.k - b % self.k) % self.k
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        (a * b) % self.k
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.k - a % self.k) % self.k
    }

    /// `m^{-1} mod k`; fails when `gcd(m, k) > 1`, which also signals that
    /// the averaging operator is undefined for a subgroup of order `m`.
    pub fn inverse(&self, m: u64) -> Result<u64> {
        let m = m % self.k;
        let (g, x, _) = ext_gcd(m as i128, self.k as i128);
        if g != 1 {
            return Err(Error::NotInvertible {
                value: m,
                modulus: self.k,
            });
        }
        Ok(self.reduce(x))
    }

    /// The generating character value `chi(a) = zeta_k^a`.
    pub fn char_value(&self, a: u64) -> Cyclotomic {
        Cyclotomic::zeta_pow(self.k as usize, (a % self.k) as i64)
    }

    /// `sum_{b in R} chi(a*b)`, computed term by term and reduced. Equals
    /// `k` when `a = 0` and `0` otherwise.
    pub fn char_sum(&self, a: u64) -> Cyclotomic {
        let mut s = Cyclotomic::zero(self.k as usize);
        for b in 0..self.k {
            s = s.add(&self.char_value(self.mul(a, b)));
        }
        s.reduced()
    }
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;

    #[test]
    fn char_values_z4() {
        let r = RingZk::new(4).unwrap();
        assert_eq!(r.char_value(0), Cyclotomic::one(4));
        assert_eq!(r.char_value(1), Cyclotomic::zeta_pow(4, 1));
        assert_eq!(r.char_value(2), Cyclotomic::from_int(4, -1));
    }

    #[test]
    fn char_sum_property_all_small_k() {
        for k in 2..=12u64 {
            let r = RingZk::new(k).unwrap();
            for a in 0..k {
                let s = r.char_sum(a);
                let expect = if a == 0 {
                    Cyclotomic::from_bigint(k as usize, BigInt::from(k))
                } else {
                    Cyclotomic::zero(k as usize)
                };
                assert_eq!(s, expect, "k={} a={}", k, a);
            }
        }
    }

    #[test]
    fn character_is_a_homomorphism() {
        for k in 2..=8u64 {
            let r = RingZk::new(k).unwrap();
            for a in 0..k {
                for b in 0..k {
                    let lhs = r.char_value(a).mul(&r.char_value(b));
                    assert_eq!(lhs, r.char_value(r.add(a, b)));
                }
            }
        }
    }

    #[test]
    fn inverses() {
        let z4 = RingZk::new(4).unwrap();
        assert_eq!(z4.inverse(3).unwrap(), 3);
        assert!(matches!(
            z4.inverse(2),
            Err(Error::NotInvertible { value: 2, modulus: 4 })
        ));
        let z5 = RingZk::new(5).unwrap();
        assert_eq!(z5.inverse(1).unwrap(), 1);
        for m in 1..5 {
            let inv = z5.inverse(m).unwrap();
            assert_eq!(z5.mul(m, inv), 1);
        }
    }

    #[test]
    fn prime_field_flag() {
        assert!(RingZk::new(5).unwrap().is_prime_field());
        assert!(RingZk::new(2).unwrap().is_prime_field());
        assert!(!RingZk::new(4).unwrap().is_prime_field());
        assert!(!RingZk::new(6).unwrap().is_prime_field());
    }
}
