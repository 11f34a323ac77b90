//! Factorization over F_p: squarefree decomposition, distinct-degree
//! splitting, then deterministic equal-degree splitting.

use num_bigint::BigUint;
use num_traits::One;

use super::integer::require_prime;
use super::{ModFactorization, ModPoly};
use crate::error::{Error, Result};

/// Complete factorization of `f` into monic irreducibles over F_p.
///
/// Factors are returned sorted by `(degree, coefficients)`; the unit is the
/// leading coefficient of `f`.
pub fn factor_mod_p(f: &ModPoly) -> Result<ModFactorization> {
    let p = f.modulus();
    require_prime(p)?;
    if f.deg() == 0 {
        return Err(Error::Degree("factor_mod_p needs degree >= 1".into()));
    }
    let unit = f.lc();
    let mut factors: Vec<(ModPoly, usize)> = Vec::new();
    for (part, mult) in squarefree_decomposition(&f.monic()) {
        for (g, d) in distinct_degree(&part) {
            for h in equal_degree(&g, d) {
                factors.push((h, mult));
            }
        }
    }
    factors.sort_by(|a, b| {
        (a.0.deg(), a.0.coeffs(), a.1).cmp(&(b.0.deg(), b.0.coeffs(), b.1))
    });
    Ok(ModFactorization { content: unit, factors })
}

/// Squarefree decomposition of a monic polynomial in characteristic p:
/// pairs `(g, m)` with `f = prod g^m`, each `g` squarefree, pairwise coprime.
pub fn squarefree_decomposition(f: &ModPoly) -> Vec<(ModPoly, usize)> {
    let p = f.modulus();
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let df = f.derivative();
    let mut c = f.gcd(&df);
    let mut w = f.div(&c);
    let mut i = 1;
    while w.deg() > 0 {
        let y = w.gcd(&c);
        let z = w.div(&y);
        if z.deg() > 0 {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.div(&w);
    }
    if c.deg() > 0 {
        let root = c.pth_root();
        for (g, m) in squarefree_decomposition(&root) {
            out.push((g, m * p as usize));
        }
    }
    out
}

/// Splits a squarefree monic polynomial into products of irreducibles of
/// equal degree: pairs `(g_d, d)`.
pub fn distinct_degree(f: &ModPoly) -> Vec<(ModPoly, usize)> {
    let p = f.modulus();
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = ModPoly::x(p);
    let mut h = x.clone();
    let mut d = 0;
    while rest.deg() >= 2 * (d + 1) {
        d += 1;
        h = h.powmod_u64(p, &rest);
        let g = rest.gcd(&h.sub(&x));
        if g.deg() > 0 {
            rest = rest.div(&g);
            h = h.rem(&rest);
            out.push((g, d));
        }
    }
    if rest.deg() > 0 {
        let deg = rest.deg();
        out.push((rest, deg));
    }
    out
}

/// The fixed sequence of monic splitting candidates: `x, x+1, …, x+(p-1)`,
/// then the degree-2 monics in base-p order of their lower coefficients, and
/// so on up to degree `max_deg`.
fn candidates(p: u64, max_deg: usize) -> impl Iterator<Item = ModPoly> {
    (1..=max_deg).flat_map(move |m| {
        let count = p.checked_pow(m as u32).unwrap_or(u64::MAX);
        (0..count).map(move |mut idx| {
            let mut coeffs = vec![0u64; m + 1];
            for c in coeffs.iter_mut().take(m) {
                *c = idx % p;
                idx /= p;
            }
            coeffs[m] = 1;
            ModPoly::new(p, coeffs)
        })
    })
}

/// Splits a product of distinct monic irreducibles of degree `d`.
pub fn equal_degree(f: &ModPoly, d: usize) -> Vec<ModPoly> {
    if f.deg() == d {
        return vec![f.clone()];
    }
    let p = f.modulus();
    let exponent = if p == 2 {
        None
    } else {
        Some((BigUint::from(p).pow(d as u32) - BigUint::one()) / 2u32)
    };
    for a in candidates(p, f.deg() - 1) {
        let b = match &exponent {
            Some(e) => a.powmod(e, f).sub(&ModPoly::one(p)),
            None => {
                // absolute trace a + a^2 + ... + a^(2^(d-1))
                let mut t = a.rem(f);
                let mut acc = t.clone();
                for _ in 1..d {
                    t = t.mul(&t).rem(f);
                    acc = acc.add(&t);
                }
                acc
            }
        };
        let g = f.gcd(&b);
        if g.deg() > 0 && g.deg() < f.deg() {
            let mut left = equal_degree(&g, d);
            left.extend(equal_degree(&f.div(&g), d));
            return left;
        }
    }
    unreachable!("some monic of degree < deg f separates two distinct irreducible factors")
}

/// Rabin-style irreducibility check, independent of the splitting routine:
/// `x^(p^n) = x mod f` and `gcd(x^(p^(n/q)) - x, f) = 1` for every prime
/// divisor `q` of `n`.
pub fn is_irreducible_mod_p(f: &ModPoly) -> bool {
    let n = f.deg();
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let p = f.modulus();
    let f = f.monic();
    let x = ModPoly::x(p);
    let frob_pow = |k: usize| {
        let mut h = x.clone();
        for _ in 0..k {
            h = h.powmod_u64(p, &f);
        }
        h
    };
    if frob_pow(n) != x.rem(&f) {
        return false;
    }
    let mut m = n;
    let mut q = 2;
    while m > 1 {
        if m % q == 0 {
            while m % q == 0 {
                m /= q;
            }
            let g = f.gcd(&frob_pow(n / q).sub(&x));
            if g.deg() > 0 {
                return false;
            }
        }
        q += 1;
    }
    true
}
