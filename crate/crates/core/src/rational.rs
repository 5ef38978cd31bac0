//! Rational helpers on top of `BigRational`.

use alloc::string::String;
use core::fmt::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exact rational number, always reduced with a positive denominator.
pub type Q = num_rational::BigRational;

/// `n` as a rational.
pub fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// `n/d` as a rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `x^e` for a possibly negative exponent. Panics on `0^e` with `e < 0`.
pub fn pow(x: &Q, e: i64) -> Q {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), e.unsigned_abs() as usize)
    }
}

/// Formats as `n` or `n/d`.
pub fn to_string(x: &Q) -> String {
    let mut s = String::new();
    if x.denom().is_one() {
        let _ = write!(s, "{}", x.numer());
    } else {
        let _ = write!(s, "{}/{}", x.numer(), x.denom());
    }
    s
}

/// Parses `n` or `n/d`.
pub fn parse(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
        None => Some(Q::from_integer(s.parse().ok()?)),
    }
}

/// Distinct prime factors of the denominator, ascending.
pub fn denominator_primes(x: &Q) -> alloc::vec::Vec<u64> {
    let mut d = x.denom().abs();
    let mut out = alloc::vec::Vec::new();
    let mut p = BigInt::from(2);
    while !d.is_one() {
        if (&p * &p) > d {
            let v = u64::try_from(&d).unwrap_or(u64::MAX);
            out.push(v);
            break;
        }
        if d.is_multiple_of(&p) {
            out.push(u64::try_from(&p).unwrap_or(u64::MAX));
            while d.is_multiple_of(&p) {
                d /= &p;
            }
        }
        p += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        for s in ["0", "-3", "7/12", "-1/108"] {
            assert_eq!(to_string(&parse(s).unwrap()), s);
        }
        assert_eq!(parse("4/8").unwrap(), rat(1, 2));
        assert!(parse("1/0").is_none());
        assert!(parse("x").is_none());
    }

    #[test]
    fn combinatorics() {
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(binomial(2, 5), BigInt::zero());
        assert_eq!(pow(&rat(2, 3), -2), rat(9, 4));
    }

    #[test]
    fn denominator_factors() {
        assert_eq!(denominator_primes(&rat(1, 459270)), [2, 3, 5, 7]);
        assert!(denominator_primes(&int(5)).is_empty());
    }
}
