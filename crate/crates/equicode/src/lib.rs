//! Exact toolkit for linear codes over `Z_k` carrying a permutation-group
//! action, and for the lattices built from them.
//!
//! The centre of the library is the averaging (Hayden) operator
//! `theta_H = (1/|H|) sum_{h in H} h` of a coordinate permutation group `H`.
//! Around it sit:
//!
//! * orbit projections of codes and their duals ([`gcode`]),
//! * five weight-enumerator families and their MacWilliams transforms
//!   ([`enumerators`], [`macwilliams`]),
//! * discrete harmonic functions and harmonic enumerators ([`harmonic`]),
//! * Construction-A lattices, their duals and projections ([`lattice`]),
//! * truncated theta series in exact rational q-exponents ([`theta`]).
//!
//! Everything is computed in exact arithmetic: big integers, big rationals
//! and cyclotomic integers `Z[zeta_k]`. Floating point appears only in the
//! numeric Jacobi transformation check.
//!
//! All enumerative routines work at desk scale and are guarded by
//! [`enum_bound`], which reads the `EQUICODE_MAX_ENUM` environment variable
//! (default `10^7`).

pub mod exactmath;
pub mod frobring;
pub mod permgrp;
pub mod gcode;
pub mod polyring;
pub mod enumerators;
pub mod harmonic;
pub mod macwilliams;
pub mod lattice;
pub mod theta;
pub mod report;
pub mod instances;

pub use exactmath::{Cyclotomic, IntMatrix, Rat, RatMatrix};
pub use frobring::RingZk;
pub use gcode::{Code, OrbitCode};
pub use permgrp::{HaydenOperator, OrbitPartition, PermGroup, Permutation};
pub use report::Report;

/// Errors shared by all modules.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("group closure exceeded the bound of {bound} elements")]
    GroupTooLarge { bound: usize },
    #[error("enumeration of {size} elements exceeds the bound {bound}")]
    TooLarge { size: u128, bound: u128 },
    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: u64, modulus: u64 },
    #[error("word is not constant on orbit {orbit}")]
    NotOrbitConstant { orbit: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("enumerator is not divisible by (xy)^{d}")]
    NotDivisible { d: usize },
    #[error("non-integer result: {0}")]
    NonIntegerResult(String),
    #[error("projected lattice has rank {got}, expected {expected}")]
    NotDiscrete { got: usize, expected: usize },
    #[error("reference vector is not a member of the lattice")]
    NotMember,
    #[error("numeric evaluation did not converge: {0}")]
    NotConverged(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Enumeration guard for brute-force scans over `k^n` words.
///
/// Reads `EQUICODE_MAX_ENUM` when set, otherwise `10_000_000`.
pub fn enum_bound() -> u128 {
    std::env::var("EQUICODE_MAX_ENUM")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(10_000_000)
}

/// Checks `k^n` against [`enum_bound`].
pub fn guard_enum(k: u64, n: usize) -> Result<u128> {
    let bound = enum_bound();
    let mut size: u128 = 1;
    for _ in 0..n {
        size = size.saturating_mul(k as u128);
        if size > bound {
            return Err(Error::TooLarge { size, bound });
        }
    }
    Ok(size)
}
