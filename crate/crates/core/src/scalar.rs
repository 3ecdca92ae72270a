//! Exact rational scalars.
//!
//! Everything in this crate computes over arbitrary-precision rationals;
//! there is no floating point anywhere. `Q` is kept in lowest terms with a
//! positive denominator by construction.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// The scalar field: arbitrary-precision rationals in lowest terms.
pub type Q = BigRational;

/// Rational from a numerator/denominator pair.
pub fn q(num: i64, den: i64) -> Q {
    assert!(den != 0, "zero denominator");
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn qi(num: i64) -> Q {
    Q::from_integer(BigInt::from(num))
}

pub fn qzero() -> Q {
    Q::zero()
}

pub fn qone() -> Q {
    Q::one()
}

/// k! as a rational.
pub fn factorial(k: u32) -> Q {
    let mut acc = BigInt::one();
    for i in 2..=k as u64 {
        acc *= BigInt::from(i);
    }
    Q::from_integer(acc)
}

/// Generalized binomial coefficient C(n, k) for integer n (possibly
/// negative) and k >= 0: n(n-1)...(n-k+1)/k!.
pub fn binomial(n: i64, k: u32) -> Q {
    let mut num = BigInt::one();
    for i in 0..k as i64 {
        num *= BigInt::from(n - i);
    }
    Q::from_integer(num) / factorial(k)
}

/// Binomial coefficient C(r, k) for rational r and k >= 0.
pub fn binomial_q(r: &Q, k: u32) -> Q {
    let mut num = Q::one();
    for i in 0..k as i64 {
        num *= r - qi(i);
    }
    num / factorial(k)
}

/// Parse an exact rational literal: an optional sign, an integer, and an
/// optional `/denominator` part. Anything else (decimals in particular) is
/// rejected.
pub fn parse_rational(s: &str) -> Result<Q, String> {
    let s = s.trim();
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let num: BigInt = num_str
        .parse()
        .map_err(|_| format!("not an exact rational: `{s}`"))?;
    let den: BigInt = match den_str {
        Some(d) => d
            .parse()
            .map_err(|_| format!("not an exact rational: `{s}`"))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(Q::new(num, den))
}

/// Render a rational the way `parse_rational` reads it.
pub fn format_rational(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// True if `x` is a negative rational (used when pretty-printing sums).
pub fn is_negative(x: &Q) -> bool {
    x.is_negative()
}
