//! Exact fraction helpers.
//!
//! Row-counting quantities (Hamming distances, traces) are fractions with
//! denominator bounded by the degree, so `Ratio<i64>` is exact for them.
//! Anything that can grow (word-metric objectives, certified bounds built
//! from user-supplied lambdas, interval arithmetic) goes through
//! `BigRational`.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};

use crate::error::{Error, Result};

/// Exact small fraction, used for per-row counts over a degree-n object.
pub type Frac = Ratio<i64>;

pub fn frac(num: i64, den: i64) -> Frac {
    Frac::new(num, den)
}

/// Lift a small fraction into arbitrary precision.
pub fn to_big(f: Frac) -> BigRational {
    BigRational::new(BigInt::from(*f.numer()), BigInt::from(*f.denom()))
}

pub fn big_ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parse "p/q" or a bare integer "p".
pub fn parse_frac(s: &str) -> Result<Frac> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: i64 = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
    let den: i64 = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
    if den == 0 {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Frac::new(num, den))
}

/// Parse "p/q" or "p" into a `BigRational`.
pub fn parse_big(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
    if den == BigInt::from(0) {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        assert_eq!(parse_frac("1/3").unwrap(), frac(1, 3));
        assert_eq!(parse_frac("4").unwrap(), frac(4, 1));
        assert_eq!(parse_frac(" -2/6 ").unwrap(), frac(-1, 3));
        assert!(parse_frac("1/0").is_err());
        assert!(parse_frac("x").is_err());
    }

    #[test]
    fn display_is_reduced() {
        assert_eq!(frac(2, 6).to_string(), "1/3");
        assert_eq!(frac(4, 2).to_string(), "2");
    }
}
