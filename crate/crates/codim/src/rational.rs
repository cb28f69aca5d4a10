//! Exact rational scalars and big-integer helpers shared by the series,
//! catalog, and growth layers.
//!
//! Coefficients are arbitrary-precision rationals in canonical reduced form
//! (`num::BigRational` keeps gcd(numerator, denominator) = 1 and denominator
//! positive by construction). Nothing in the algebra layer touches floating
//! point; the conversion helpers here are the single crossing point into
//! `f64` log-space used by the growth diagnostics.

use num::bigint::Sign;
use num::{BigInt, BigRational, BigUint, One, Signed, Zero};

/// Exact rational scalar used for every series coefficient.
pub type Rational = BigRational;

/// Shorthand for a rational from machine integers.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Shorthand for an integer rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// n! as an exact big integer.
pub fn factorial(n: usize) -> BigUint {
    let mut acc = BigUint::one();
    for k in 2..=n {
        acc *= BigUint::from(k);
    }
    acc
}

/// Natural log of a positive big integer.
///
/// Values beyond f64 range are handled by splitting off the top 53 bits:
/// ln(x) = ln(x >> s) + s ln 2.
pub fn ln_biguint(x: &BigUint) -> f64 {
    debug_assert!(!x.is_zero());
    let bits = x.bits();
    if bits <= 53 {
        return to_f64_exact(x).ln();
    }
    let shift = bits - 53;
    let top: BigUint = x >> shift;
    to_f64_exact(&top).ln() + shift as f64 * std::f64::consts::LN_2
}

fn to_f64_exact(x: &BigUint) -> f64 {
    // Only called with x < 2^53, where the conversion is exact.
    let digits = x.to_u64_digits();
    match digits.len() {
        0 => 0.0,
        1 => digits[0] as f64,
        _ => unreachable!("value exceeds 53 bits"),
    }
}

/// Natural log of a non-negative rational; `None` for negative input,
/// `-inf` for zero.
pub fn ln_rational(q: &Rational) -> Option<f64> {
    match q.numer().sign() {
        Sign::Minus => None,
        Sign::NoSign => Some(f64::NEG_INFINITY),
        Sign::Plus => {
            let numer = q.numer().magnitude();
            let denom = q.denom().magnitude();
            Some(ln_biguint(numer) - ln_biguint(denom))
        }
    }
}

/// Floor of a rational as a big integer (rounds toward negative infinity).
pub fn floor_rational(q: &Rational) -> BigInt {
    q.floor().to_integer()
}

/// True if the rational is a non-negative integer.
pub fn is_nonneg_integer(q: &Rational) -> bool {
    q.is_integer() && !q.is_negative()
}
