//! Arbitrary-precision rationals.
//!
//! `num-rational` keeps every value in lowest terms with a positive
//! denominator, which is exactly the invariant the coefficient ring needs.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

/// `n / d` as an exact rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn from_big(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// Always `p/q`, including integers (`3/1`). Used for machine-readable output.
pub fn to_pq(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer.
pub fn parse_pq(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rational::new(p, q))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Integer power with a possibly negative exponent.
pub fn pow_i(base: &Rational, e: i64) -> Rational {
    let mut acc = Rational::one();
    let mut b = if e < 0 { base.recip() } else { base.clone() };
    let mut k = e.unsigned_abs();
    while k > 0 {
        if k & 1 == 1 {
            acc *= &b;
        }
        b = &b * &b;
        k >>= 1;
    }
    acc
}

pub fn is_integral(r: &Rational) -> bool {
    r.denom().is_one()
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_sign() {
        let r = rat(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(to_pq(&r), "-3/2");
        assert_eq!(to_pq(&int(3)), "3/1");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["4/7", "-3/2", "0/1", "12/1"] {
            assert_eq!(to_pq(&parse_pq(s).unwrap()), s);
        }
        assert_eq!(parse_pq("5"), Some(int(5)));
        assert_eq!(parse_pq("1/0"), None);
        assert_eq!(parse_pq("x"), None);
    }

    #[test]
    fn powers() {
        assert_eq!(pow_i(&int(2), 10), int(1024));
        assert_eq!(pow_i(&int(2), -3), rat(1, 8));
        assert_eq!(pow_i(&rat(-1, 3), 0), int(1));
    }

    #[test]
    fn no_overflow_on_large_values() {
        let big = pow_i(&int(3), 200);
        let r = &big / &pow_i(&int(3), 199);
        assert_eq!(r, int(3));
    }
}
