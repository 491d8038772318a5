//! Arbitrary-precision rationals and their wire format.
//!
//! Every rational crossing a file boundary is written as `"p/q"` (or `"p"`
//! when the denominator is 1) so nothing is ever rounded.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::Error;

/// Exact rational scalar. Always reduced, denominator positive.
pub type Rat = BigRational;

/// Shorthand for small integer constants.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d` as a reduced rational. Panics on `d = 0`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let s = s.trim();
    let mk_err = || Error::Parse(format!("invalid rational literal {s:?}"));
    match s.split_once('/') {
        None => {
            let n: BigInt = s.parse().map_err(|_| mk_err())?;
            Ok(Rat::from_integer(n))
        }
        Some((num, den)) => {
            let n: BigInt = num.trim().parse().map_err(|_| mk_err())?;
            let d: BigInt = den.trim().parse().map_err(|_| mk_err())?;
            if d.is_zero() {
                return Err(mk_err());
            }
            Ok(Rat::new(n, d))
        }
    }
}

/// Renders a rational as `"p"` or `"p/q"`.
pub fn rat_to_string(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Sign of a rational as -1, 0, or 1.
pub fn sign(x: &Rat) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}
