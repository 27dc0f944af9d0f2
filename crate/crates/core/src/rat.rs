//! Exact rational scalars used throughout the crate.
//!
//! All lattice arithmetic is done over `BigRational`; square roots are never
//! taken, quantities like the symplectic radius are carried as exact squares.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Parses "p/q" or "p". Whitespace is not accepted.
pub fn parse_rat(s: &str) -> Result<Rat> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| Error::BadRational(s.to_string()))?;
            let d: BigInt = d.parse().map_err(|_| Error::BadRational(s.to_string()))?;
            if d.is_zero() {
                return Err(Error::BadRational(s.to_string()));
            }
            Ok(Rat::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| Error::BadRational(s.to_string()))?;
            Ok(Rat::from_integer(n))
        }
    }
}

/// Canonical "p/q" string (just "p" for integers).
pub fn rat_str(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Least common multiple of the denominators of a slice of rationals.
pub fn common_denominator(coeffs: &[Rat]) -> BigInt {
    let mut lcm = BigInt::one();
    for c in coeffs {
        lcm = num_integer::lcm(lcm, c.denom().abs());
    }
    lcm
}
