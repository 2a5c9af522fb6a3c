//! Small exact-arithmetic helpers: primality, p-adic valuations, binomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Trial-division primality; inputs here are tiny.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Largest `s` with `p^s | n`; `n > 0`, `p >= 2`.
pub fn padic_valuation(mut n: u64, p: u64) -> u32 {
    assert!(n > 0 && p >= 2);
    let mut s = 0;
    while n.is_multiple_of(p) {
        n /= p;
        s += 1;
    }
    s
}

/// Prime factorization of a small positive integer, ascending.
pub fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n > 0);
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// v_p(n!) by Legendre's formula.
pub fn factorial_valuation(n: u64, p: u64) -> u64 {
    let mut total = 0;
    let mut q = p;
    while q <= n {
        total += n / q;
        match q.checked_mul(p) {
            Some(next) => q = next,
            None => break,
        }
    }
    total
}

/// v_p(C(n, k)) via Legendre; the independent route for Kummer-style claims.
pub fn binomial_valuation(n: u64, k: u64, p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    if k > n {
        return Err(Error::invalid(format!("binomial C({n},{k}) with k > n")));
    }
    Ok(factorial_valuation(n, p) - factorial_valuation(k, p) - factorial_valuation(n - k, p))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

pub fn factorial(n: u64) -> BigInt {
    let mut out = BigInt::one();
    for i in 2..=n {
        out *= BigInt::from(i);
    }
    out
}

pub fn big_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

/// lcm of the denominators of a set of rationals; 1 for the empty set.
pub fn denominator_lcm<'a>(values: impl Iterator<Item = &'a Rat>) -> BigInt {
    let mut l = BigInt::one();
    for v in values {
        l = l.lcm(&v.denom().abs());
    }
    l
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small() {
        let primes: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
    }

    #[test]
    fn valuations() {
        assert_eq!(padic_valuation(48, 2), 4);
        assert_eq!(padic_valuation(9, 3), 2);
        assert_eq!(factorial_valuation(10, 2), 8);
        // v_2(C(12,2)) = v_2(66) = 1
        assert_eq!(binomial_valuation(12, 2, 2).unwrap(), 1);
        // v_2(C(8,2)) = v_2(28) = 2
        assert_eq!(binomial_valuation(8, 2, 2).unwrap(), 2);
        assert!(binomial_valuation(8, 2, 6).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(8, 2), BigInt::from(28));
        assert_eq!(binomial(16, 8), BigInt::from(12870));
        assert_eq!(binomial(3, 7), BigInt::zero());
        assert_eq!(factorial(7), BigInt::from(5040));
    }

    #[test]
    fn denominator_lcm_of_rationals() {
        let vals = [ratio(1, 4), ratio(3, 2), rat(5)];
        assert_eq!(denominator_lcm(vals.iter()), BigInt::from(4));
        assert_eq!(denominator_lcm([].iter()), BigInt::one());
    }
}
