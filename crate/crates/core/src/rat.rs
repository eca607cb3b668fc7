use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Exact rational scalar.
pub type Rat = BigRational;

/// Shorthand for the rational `num / den`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub(crate) fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `"p"` or `"p/q"` (optional sign, surrounding whitespace ignored).
pub fn parse_rat(text: &str) -> Result<Rat> {
    let bad = || Error::Config(format!("not a rational literal: {text:?}"));
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(num, den))
}

/// `c^n` for a nonnegative exponent.
pub(crate) fn rat_pow(c: &Rat, n: u32) -> Rat {
    let mut out = Rat::one();
    for _ in 0..n {
        out *= c;
    }
    out
}

/// Renders a scalar as a factor inside a product: fractions and negatives get parentheses.
pub(crate) fn factor_string(c: &Rat) -> String {
    if c.is_integer() && !c.is_negative() {
        c.to_string()
    } else {
        format!("({c})")
    }
}
