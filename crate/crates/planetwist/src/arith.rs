//! Integer and rational helpers: primality, multiplicative orders, exact
//! square testing.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Deterministic Miller-Rabin for u64 (witness set valid for all 64-bit n).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Least e >= 1 with p^e = 1 mod n. Errors unless gcd(p, n) = 1 and n >= 2.
pub fn multiplicative_order(p: u64, n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::InvalidParams("modulus must be >= 2".into()));
    }
    if p.gcd(&n) != 1 {
        return Err(Error::InvalidParams(format!(
            "gcd({p}, {n}) != 1, multiplicative order undefined"
        )));
    }
    let mut x = p % n;
    let mut e = 1u64;
    while x != 1 {
        x = mul_mod(x, p % n, n);
        e += 1;
    }
    Ok(e)
}

/// Exact integer square root test: returns r with r*r == n for n >= 0.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// Exact rational square test; the witness w satisfies w^2 == q.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let num = exact_sqrt(q.numer())?;
    let den = exact_sqrt(q.denom())?;
    Some(BigRational::new(num, den))
}

/// True iff q is a square in Q. A nonzero q = a/b (lowest terms) is a square
/// iff the integer a*b is a perfect square.
pub fn is_rational_square(q: &BigRational) -> bool {
    if q.is_zero() {
        return true;
    }
    if q.is_negative() {
        return false;
    }
    exact_sqrt(&(q.numer() * q.denom())).is_some()
}

/// Legendre symbol (a|p) for an odd prime p, as -1, 0, or 1.
pub fn legendre(a: &BigInt, p: u64) -> i32 {
    let p_big = BigInt::from(p);
    let r = a.mod_floor(&p_big);
    if r.is_zero() {
        return 0;
    }
    let r_u64 = r.to_u64_digits().1[0];
    let e = pow_mod(r_u64, (p - 1) / 2, p);
    if e == 1 {
        1
    } else {
        -1
    }
}

/// p-adic valuation and unit part of a nonzero rational.
pub fn padic_split(q: &BigRational, p: u64) -> (i64, BigRational) {
    assert!(!q.is_zero());
    let p_big = BigInt::from(p);
    let mut v = 0i64;
    let mut num = q.numer().clone();
    let mut den = q.denom().clone();
    while (&num % &p_big).is_zero() {
        num /= &p_big;
        v += 1;
    }
    while (&den % &p_big).is_zero() {
        den /= &p_big;
        v -= 1;
    }
    (v, BigRational::new(num, den))
}

/// Hilbert symbol (a, b)_p over Q_p for an odd prime p.
///
/// With a = p^alpha u, b = p^beta w (u, w p-adic units):
/// (a,b)_p = (-1)^{alpha beta eps(p)} (u|p)^beta (w|p)^alpha,
/// eps(p) = (p-1)/2 mod 2.
pub fn hilbert_symbol_odd(a: &BigRational, b: &BigRational, p: u64) -> i32 {
    assert!(p % 2 == 1 && is_prime_u64(p));
    assert!(!a.is_zero() && !b.is_zero());
    let (alpha, u) = padic_split(a, p);
    let (beta, w) = padic_split(b, p);
    let eps = ((p - 1) / 2 % 2) as i64;
    let mut sign = 1i32;
    if (alpha * beta * eps) % 2 != 0 {
        sign = -sign;
    }
    // Legendre of the unit part: numerator * denominator is a unit square
    // times the unit itself, so (u|p) = (num*den | p).
    let lu = legendre(&(u.numer() * u.denom()), p);
    let lw = legendre(&(w.numer() * w.denom()), p);
    if beta % 2 != 0 {
        sign *= lu;
    }
    if alpha % 2 != 0 {
        sign *= lw;
    }
    sign
}

/// Parses a rational from "n" or "n/d" notation.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidParams(format!("cannot parse rational `{s}`"));
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let num: BigInt = n.trim().parse().map_err(|_| bad())?;
        let den: BigInt = d.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(BigRational::new(num, den))
    } else {
        let num: BigInt = s.parse().map_err(|_| bad())?;
        Ok(BigRational::from_integer(num))
    }
}

/// Formats a rational as "n" or "n/d".
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Ascending primes up to and including `bound`.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&n| is_prime_u64(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn primality_small() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1_000_000_007u64 * 3));
    }

    #[test]
    fn orders_mod_seven() {
        // brute-force oracle
        let brute = |p: u64| -> u64 {
            let mut x = p % 7;
            let mut e = 1;
            while x != 1 {
                x = x * (p % 7) % 7;
                e += 1;
            }
            e
        };
        assert_eq!(multiplicative_order(3, 7).unwrap(), 6);
        assert_eq!(multiplicative_order(5, 7).unwrap(), 6);
        assert_eq!(multiplicative_order(1, 7).unwrap(), 1);
        for p in [2u64, 3, 4, 5, 6, 8, 9, 13, 29, 997] {
            assert_eq!(multiplicative_order(p, 7).unwrap(), brute(p));
        }
        assert!(multiplicative_order(7, 7).is_err());
    }

    #[test]
    fn rational_squares() {
        assert!(is_rational_square(&q(4, 1)));
        assert!(is_rational_square(&q(9, 16)));
        assert!(!is_rational_square(&q(2, 1)));
        assert!(!is_rational_square(&q(-4, 1)));
        assert_eq!(rational_sqrt(&q(9, 4)).unwrap(), q(3, 2));
    }

    #[test]
    fn hilbert_symbol_obstruction_at_13() {
        // -2 is not a square mod 13 and v_13(-13) = 1, so (-2,-13)_13 = -1.
        let a = BigRational::from_i64(-2).unwrap();
        let b = BigRational::from_i64(-13).unwrap();
        assert_eq!(hilbert_symbol_odd(&a, &b, 13), -1);
        // (1, -13)_13 = 1: the form x^2 + 13 y^2 = 1 has the point (1, 0).
        let one = BigRational::from_i64(1).unwrap();
        assert_eq!(hilbert_symbol_odd(&one, &b, 13), 1);
    }

    #[test]
    fn rational_round_trip() {
        for s in ["3", "-3", "3/4", "-1/12"] {
            let v = parse_rational(s).unwrap();
            assert_eq!(format_rational(&v), s);
        }
        assert!(parse_rational("1/0").is_err());
    }
}
