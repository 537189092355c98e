//! Exact arithmetic substrate: big rationals, cyclotomic integers, and
//! integer/rational matrix algorithms (Hermite and Smith normal forms,
//! inverses, kernels).

mod cyclotomic;
mod matrix;

pub use cyclotomic::Cyclotomic;
pub use matrix::{hnf, snf_preimage, snf_with_left, IntMatrix, RatMatrix};

/// Exact rational scalar. Always stored normalized with a positive
/// denominator.
pub type Rat = num::BigRational;

/// Convenience constructor for small rationals.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(num.into(), den.into())
}
