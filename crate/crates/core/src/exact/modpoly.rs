//! Dense polynomials over the prime field F_p (p < 2^64).

use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use super::integer::{addmod, invmod, mod_u64, mulmod, submod};
use super::IntPoly;

/// Polynomial over F_p with residues in `[0, p)`, ascending degree and no
/// trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl ModPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ModPoly { p, coeffs }
    }

    pub fn from_int_poly(f: &IntPoly, p: u64) -> Self {
        Self::new(p, f.coeffs().iter().map(|c| mod_u64(c, p)).collect())
    }

    pub fn zero(p: u64) -> Self {
        ModPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Self::new(p, vec![c])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    /// Lift to Z with coefficients in `[0, p)`.
    pub fn to_int_poly(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|&c| c.into()).collect())
    }

    pub fn monic(&self) -> ModPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = invmod(self.lc(), self.p);
        self.scale(inv)
    }

    pub fn scale(&self, c: u64) -> ModPoly {
        ModPoly::new(self.p, self.coeffs.iter().map(|&a| mulmod(a, c, self.p)).collect())
    }

    pub fn add(&self, o: &ModPoly) -> ModPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        ModPoly::new(self.p, (0..n).map(|i| addmod(self.coeff(i), o.coeff(i), self.p)).collect())
    }

    pub fn sub(&self, o: &ModPoly) -> ModPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        ModPoly::new(self.p, (0..n).map(|i| submod(self.coeff(i), o.coeff(i), self.p)).collect())
    }

    pub fn mul(&self, o: &ModPoly) -> ModPoly {
        if self.is_zero() || o.is_zero() {
            return ModPoly::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u128; self.coeffs.len() + o.coeffs.len() - 1];
        let pp = p as u128;
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u128 * b as u128) % pp;
            }
        }
        ModPoly::new(p, out.into_iter().map(|c| c as u64).collect())
    }

    /// Euclidean division; `b` must be nonzero.
    pub fn divrem(&self, b: &ModPoly) -> (ModPoly, ModPoly) {
        assert!(!b.is_zero(), "division by zero polynomial");
        let p = self.p;
        let db = b.deg();
        if self.is_zero() || self.deg() < db {
            return (ModPoly::zero(p), self.clone());
        }
        let inv = invmod(b.lc(), p);
        let mut r = self.coeffs.clone();
        let mut q = vec![0u64; self.deg() - db + 1];
        for k in (0..q.len()).rev() {
            let top = r[k + db];
            if top == 0 {
                continue;
            }
            let qk = mulmod(top, inv, p);
            for (i, &bc) in b.coeffs.iter().enumerate() {
                r[k + i] = submod(r[k + i], mulmod(qk, bc, p), p);
            }
            q[k] = qk;
        }
        (ModPoly::new(p, q), ModPoly::new(p, r))
    }

    pub fn rem(&self, b: &ModPoly) -> ModPoly {
        self.divrem(b).1
    }

    /// Exact quotient; panics in debug builds when the remainder is nonzero.
    pub fn div(&self, b: &ModPoly) -> ModPoly {
        let (q, r) = self.divrem(b);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, o: &ModPoly) -> ModPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*o = g`, `g` monic.
    pub fn ext_gcd(&self, o: &ModPoly) -> (ModPoly, ModPoly, ModPoly) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (ModPoly::one(p), ModPoly::zero(p));
        let (mut t0, mut t1) = (ModPoly::zero(p), ModPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = invmod(r0.lc(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn derivative(&self) -> ModPoly {
        let p = self.p;
        ModPoly::new(
            p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mulmod(c, (i as u64) % p, p))
                .collect(),
        )
    }

    /// `self^e mod m`.
    pub fn powmod(&self, e: &BigUint, m: &ModPoly) -> ModPoly {
        let mut result = ModPoly::one(self.p).rem(m);
        let base = self.rem(m);
        if e.is_zero() {
            return result;
        }
        for i in (0..e.bits()).rev() {
            result = result.mul(&result).rem(m);
            if e.bit(i) {
                result = result.mul(&base).rem(m);
            }
        }
        result
    }

    pub fn powmod_u64(&self, e: u64, m: &ModPoly) -> ModPoly {
        self.powmod(&BigUint::from(e), m)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0;
        for &c in self.coeffs.iter().rev() {
            acc = addmod(mulmod(acc, x, self.p), c, self.p);
        }
        acc
    }

    /// For a polynomial in `x^p` returns its p-th root (coefficients are
    /// fixed by Frobenius in F_p).
    pub(crate) fn pth_root(&self) -> ModPoly {
        let p = self.p as usize;
        debug_assert!(self.coeffs.iter().enumerate().all(|(i, &c)| c == 0 || i % p == 0));
        ModPoly::new(self.p, self.coeffs.iter().step_by(p).copied().collect())
    }

    /// Composition `self(g) mod m`.
    pub fn compose_mod(&self, g: &ModPoly, m: &ModPoly) -> ModPoly {
        let mut acc = ModPoly::zero(self.p);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&ModPoly::constant(self.p, c)).rem(m);
        }
        acc
    }
}

impl fmt::Debug for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModPoly({} mod {})", self, self.p)
    }
}

impl fmt::Display for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let t = match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".into(),
                (1, c) => format!("{c}*x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}*x^{i}"),
            };
            terms.push(t);
        }
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(p: u64, c: &[u64]) -> ModPoly {
        ModPoly::new(p, c.to_vec())
    }

    #[test]
    fn division_and_gcd() {
        let f = mp(5, &[1, 0, 1]);
        let g = mp(5, &[2, 1]);
        let (q, r) = f.divrem(&g);
        assert!(r.is_zero());
        assert_eq!(q, mp(5, &[3, 1]));
        assert_eq!(f.gcd(&mp(5, &[4, 2])), mp(5, &[2, 1]));
        let (g, s, t) = mp(7, &[1, 2, 1]).ext_gcd(&mp(7, &[3, 1]));
        assert!(g.is_one());
        assert!(s.mul(&mp(7, &[1, 2, 1])).add(&t.mul(&mp(7, &[3, 1]))).is_one());
    }

    #[test]
    fn frobenius_power() {
        // x^p = x in F_p[x]/(x^2 - x) since both roots lie in F_p
        let m = mp(11, &[0, 10, 1]);
        let x = ModPoly::x(11);
        assert_eq!(x.powmod_u64(11, &m), x);
        assert_eq!(mp(3, &[1, 0, 0, 2]).pth_root(), mp(3, &[1, 2]));
    }
}
