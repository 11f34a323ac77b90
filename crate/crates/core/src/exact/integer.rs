//! Rational-integer helpers: primality, prime lists, factorization and the
//! factored rendering used in reports.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn is_prime_u64(p: u64) -> bool {
    num_prime::nt_funcs::is_prime64(p)
}

pub fn is_prime(n: &BigInt) -> bool {
    if n.sign() != Sign::Plus {
        return false;
    }
    match n.to_u64() {
        Some(v) => is_prime_u64(v),
        None => num_prime::nt_funcs::is_prime(&n.magnitude().clone(), None).probably(),
    }
}

/// Returns `Ok(())` when `p` is prime, `NotPrimeError` otherwise.
pub fn require_prime(p: u64) -> Result<()> {
    if is_prime_u64(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p.to_string()))
    }
}

/// All primes `<= bound`, ascending.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    num_prime::nt_funcs::primes(bound + 1)
        .into_iter()
        .filter(|&p| p <= bound)
        .collect()
}

/// Prime factorization of `|n|` as `(prime, exponent)` pairs in ascending
/// prime order. `n = 0` is rejected; `|n| = 1` yields the empty list.
pub fn factor_integer(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    if n.is_zero() {
        return Err(Error::Factor("cannot factor zero".into()));
    }
    let mut m: BigUint = n.magnitude().clone();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    // strip small primes cheaply before handing the cofactor to Pollard rho
    for p in primes_up_to(10_000) {
        let bp = BigUint::from(p);
        let mut e = 0u32;
        while (&m % &bp).is_zero() {
            m /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((bp, e));
        }
        if m.is_one() {
            break;
        }
    }
    if !m.is_one() {
        let (found, rest) = num_prime::nt_funcs::factors(m.clone(), None);
        if let Some(rest) = rest {
            return Err(Error::Factor(format!(
                "could not completely factor {} (unfactored part {:?})",
                n,
                rest.iter().map(|r| r.to_string()).collect::<Vec<_>>()
            )));
        }
        for (p, e) in found {
            out.push((p, e as u32));
        }
    }
    out.sort();
    Ok(out
        .into_iter()
        .map(|(p, e)| (BigInt::from_biguint(Sign::Plus, p), e))
        .collect())
}

/// Renders `n` as a signed product of prime powers, ascending, e.g.
/// `-2^10 * 97^7`. Units render as `1` / `-1`.
pub fn render_factored(n: &BigInt) -> Result<String> {
    if n.is_zero() {
        return Ok("0".into());
    }
    let sign = if n.is_negative() { "-" } else { "" };
    let fs = factor_integer(n)?;
    if fs.is_empty() {
        return Ok(format!("{sign}1"));
    }
    let body = fs
        .iter()
        .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
        .collect::<Vec<_>>()
        .join(" * ");
    Ok(format!("{sign}{body}"))
}

/// Reduces a signed integer into `[0, p)`.
pub fn mod_u64(n: &BigInt, p: u64) -> u64 {
    let r = n % BigInt::from(p);
    let r = if r.is_negative() { r + BigInt::from(p) } else { r };
    r.to_u64().expect("residue fits in u64")
}

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn addmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

pub(crate) fn submod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        ((a as u128 + p as u128 - b as u128) % p as u128) as u64
    }
}

pub(crate) fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

/// Inverse modulo a prime; `a` must be nonzero mod `p`.
pub(crate) fn invmod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    powmod(a, p - 2, p)
}

/// Integer square root, rounded up.
pub(crate) fn isqrt_ceil(n: &BigInt) -> BigInt {
    let s = n.sqrt();
    if &(&s * &s) < n {
        s + 1
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_factors() {
        assert_eq!(primes_up_to(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert!(primes_up_to(1).is_empty());
        assert_eq!(primes_up_to(1000).len(), 168);
        let n = BigInt::from(-(1i64 << 10)) * BigInt::from(97).pow(7);
        assert_eq!(render_factored(&n).unwrap(), "-2^10 * 97^7");
        assert_eq!(render_factored(&BigInt::from(-4)).unwrap(), "-2^2");
        assert_eq!(render_factored(&BigInt::from(5)).unwrap(), "5");
        assert_eq!(render_factored(&BigInt::from(1)).unwrap(), "1");
        // two 12-digit primes: exercises the rho path
        let big = BigInt::from(100_000_000_003u64) * BigInt::from(100_000_000_019u64) * 12;
        let f = factor_integer(&big).unwrap();
        assert_eq!(f.len(), 4);
        assert_eq!(f[0], (BigInt::from(2), 2));
    }

    #[test]
    fn modular_helpers() {
        assert_eq!(mod_u64(&BigInt::from(-7), 5), 3);
        assert_eq!(invmod(3, 7), 5);
        assert_eq!(powmod(2, 10, 1000), 24);
        assert_eq!(submod(1, 3, 5), 3);
        assert!(require_prime(91).is_err());
    }
}
