//! Exact integer scalars for the tower formulas.
//!
//! Every closed-form quantity in this crate (different degrees, genera,
//! place counts, the rationals built from them) is computed in exact
//! arithmetic over a scalar type chosen by the caller. `Scalar` is the
//! trait bound; the crate-root aliases [`crate::Int`] and [`crate::Rat`]
//! pick `BigInt` as the default so no level or exponent can overflow.
//! Fixed-width signed integers (`i64`, `i128`) satisfy the same bound and
//! are used in tests to cross-check the big-integer route.

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_traits::{NumAssign, Signed};

/// Exact signed integer scalar: `BigInt`, `i128`, `i64`, ...
pub trait Scalar: Integer + Signed + NumAssign + From<u32> + Clone + Debug + Display {}

impl<T> Scalar for T where T: Integer + Signed + NumAssign + From<u32> + Clone + Debug + Display {}

/// `base^exp` by repeated squaring, staying in the scalar type.
pub fn pow_u<T: Scalar>(base: &T, mut exp: u64) -> T {
    let mut acc = T::one();
    let mut sq = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            acc *= sq.clone();
        }
        exp >>= 1;
        if exp > 0 {
            sq = sq.clone() * sq;
        }
    }
    acc
}

/// Convert a `u64` that is known to be small (field parameters, level
/// indices) into the scalar type via two `u32` halves.
pub fn from_u64<T: Scalar>(v: u64) -> T {
    let hi = T::from((v >> 32) as u32);
    let lo = T::from((v & 0xffff_ffff) as u32);
    hi * pow_u(&T::from(2u32), 32) + lo
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn pow_u_matches_i128() {
        for base in 0i128..6 {
            for exp in 0u64..20 {
                assert_eq!(pow_u(&base, exp), base.pow(exp as u32));
            }
        }
    }

    #[test]
    fn pow_u_bigint_agrees_with_i128() {
        let b = BigInt::from(7);
        assert_eq!(pow_u(&b, 16), BigInt::from(7i128.pow(16)));
    }

    #[test]
    fn from_u64_roundtrips() {
        for v in [0u64, 1, 9, 1 << 33, u64::MAX] {
            assert_eq!(from_u64::<BigInt>(v), BigInt::from(v));
        }
    }
}
