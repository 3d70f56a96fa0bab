//! Exact arithmetic in the ring of Laurent polynomials in `q^(1/4)` with
//! arbitrary-precision integer coefficients, plus the quantum combinatorics
//! built from them.
//!
//! - [`LaurentPoly`]: sparse exponent -> big-integer map; exponents are in
//!   quarter units of `q`, so `q = 4`, `v = q^(1/2) = 2`, `v^(1/2) = 1`.
//! - [`LaurentRatio`]: quotient of two Laurent polynomials (denominators such
//!   as `{2n+1}! [2n]` never need to be expanded away).
//! - [`qint`], [`qfactorial`], [`qfalling`], [`qbinom`]: `{a} = v^a - v^-a`
//!   and friends.
//!
//! One lattice covers both `v` and `v^(1/2)` powers, so no fractional
//! exponent bookkeeping appears anywhere else in the crate.

mod comb;
mod poly;
mod ratio;

pub use comb::{qbinom, qfactorial, qfalling, qint, qint_balanced};
pub use poly::{LaurentPoly, Norms};
pub(crate) use poly::{accumulate as poly_accumulate, mul_acc as poly_mul_acc};
pub use ratio::LaurentRatio;

use num_rational::BigRational;
use num_traits::One;

/// `base^exp` for a nonzero rational base and a possibly negative exponent.
pub fn rat_pow(base: &BigRational, exp: i64) -> BigRational {
    if exp == 0 {
        return BigRational::one();
    }
    let e = u32::try_from(exp.unsigned_abs()).expect("exponent fits u32");
    let num = base.numer().pow(e);
    let den = base.denom().pow(e);
    if exp > 0 {
        BigRational::new(num, den)
    } else {
        BigRational::new(den, num)
    }
}
