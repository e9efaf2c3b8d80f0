//! Exact rational scalars.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rat = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `"n/d"` or `"n"`. Returns `None` for anything else, including a
/// zero denominator.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => BigInt::from_str(s).ok().map(Rat::from_integer),
    }
}

/// Lowest-terms `"n/d"`, with the denominator always written out.
pub fn format_rat(q: &Rat) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn in_unit(q: &Rat) -> bool {
    *q >= Rat::zero() && *q <= Rat::one()
}

/// `a + (b - a) * s`
pub(crate) fn lerp(a: &Rat, b: &Rat, s: &Rat) -> Rat {
    a + (b - a) * s
}

/// Sorts and removes duplicates.
pub(crate) fn sorted_unique(mut xs: Vec<Rat>) -> Vec<Rat> {
    xs.sort();
    xs.dedup();
    xs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rat("1/3"), Some(rat(1, 3)));
        assert_eq!(parse_rat("2/6"), Some(rat(1, 3)));
        assert_eq!(parse_rat("-4"), Some(int(-4)));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(parse_rat("0.5"), None);
        assert_eq!(parse_rat(""), None);
    }

    #[test]
    fn format_always_has_denominator() {
        assert_eq!(format_rat(&int(1)), "1/1");
        assert_eq!(format_rat(&rat(-2, 4)), "-1/2");
    }
}
