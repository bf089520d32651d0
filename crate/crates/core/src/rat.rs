//! Exact rational scalars. Everything in this crate is computed over `Q`;
//! no floating point anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

/// The scalar type used throughout: arbitrary-precision rationals.
pub type Rat = BigRational;

/// Shorthand for `p/q` as a `Rat`. Panics on `q == 0`.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Shorthand for an integer as a `Rat`.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Formats a rational as `p` or `p/q` (lowest terms, denominator positive).
pub fn rat_to_string(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p` or `p/q` into a rational. Whitespace is not accepted.
pub fn parse_rat(s: &str) -> Option<Rat> {
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p).ok()?;
        let q = BigInt::from_str(q).ok()?;
        if q.is_zero() {
            return None;
        }
        Some(Rat::new(p, q))
    } else {
        let p = BigInt::from_str(s).ok()?;
        Some(Rat::from_integer(p))
    }
}

/// True when `x` is an integer.
pub fn is_integral(x: &Rat) -> bool {
    x.denom().is_one()
}

/// True when every coordinate is an integer.
pub fn all_integral(xs: &[Rat]) -> bool {
    xs.iter().all(is_integral)
}

/// The dot product `Σ x_i v_i` of a rational vector with an integer vector.
pub fn dot_rv(xs: &[Rat], v: &[i64]) -> Rat {
    debug_assert_eq!(xs.len(), v.len());
    let mut acc = Rat::zero();
    for (x, &a) in xs.iter().zip(v) {
        acc += x * rint(a);
    }
    acc
}

/// Denominator of `x` in lowest terms, if it fits in `i64`.
pub fn denominator_i64(x: &Rat) -> Option<i64> {
    use num_traits::ToPrimitive;
    x.denom().abs().to_i64()
}
