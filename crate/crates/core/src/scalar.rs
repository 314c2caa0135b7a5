//! Exact rational scalars.
//!
//! The base field and the grading group are both realized inside the
//! arbitrary-precision rationals. `BigRational` keeps every value in lowest
//! terms with a positive denominator, so structural equality is value
//! equality.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::AlgebraError;

pub type Scalar = num_rational::BigRational;

/// Elements of the grading group. Realized as rationals so that `β/α` is a
/// field element.
pub type GroupElement = Scalar;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// `n/d`, reduced. Panics on `d == 0`; use [`parse_rational`] for user input.
pub fn rat(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

pub fn factorial(n: u32) -> Scalar {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    Scalar::from_integer(acc)
}

/// Generalized binomial coefficient `c(c-1)...(c-k+1)/k!`.
pub fn gen_binomial(c: &Scalar, k: u32) -> Scalar {
    let mut acc = Scalar::one();
    for i in 0..k {
        acc *= c - int(i as i64);
    }
    acc / factorial(k)
}

/// Ordinary binomial coefficient for nonnegative integers.
pub fn binomial(n: u32, k: u32) -> Scalar {
    if k > n {
        return Scalar::zero();
    }
    gen_binomial(&int(n as i64), k)
}

pub fn sign(k: u32) -> Scalar {
    if k.is_multiple_of(2) {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

/// Always renders as `p/q`, including integers (`3/1`).
pub fn to_pq(x: &Scalar) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Accepts `p`, `-p`, `p/q`, `-p/q` (ASCII or U+2212 minus).
pub fn parse_rational(s: &str) -> Result<Scalar, AlgebraError> {
    let t = s.trim().replace('\u{2212}', "-");
    let bad = || AlgebraError::InvalidRational(s.to_string());
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t.as_str(), "1"),
    };
    let numer: BigInt = num.parse().map_err(|_| bad())?;
    let denom: BigInt = den.parse().map_err(|_| bad())?;
    if denom.is_zero() {
        return Err(AlgebraError::ZeroDenominator(s.to_string()));
    }
    if denom.is_negative() {
        return Err(bad());
    }
    Ok(Scalar::new(numer, denom))
}

pub fn is_integer(x: &Scalar) -> bool {
    x.denom().is_one()
}

/// Lowest-terms invariant: gcd(p, q) = 1 and q > 0.
pub fn is_canonical(x: &Scalar) -> bool {
    x.denom().is_positive() && x.numer().gcd(x.denom()).is_one()
}
