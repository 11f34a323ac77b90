//! Resultants and discriminants via fraction-free determinants.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::IntPoly;
use crate::error::{Error, Result};

/// Determinant of a square integer matrix by Bareiss elimination.
pub fn det_bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Sylvester matrix of `f` (degree m) and `g` (degree n), size m + n.
pub fn sylvester(f: &IntPoly, g: &IntPoly) -> Vec<Vec<BigInt>> {
    let m = f.deg();
    let n = g.deg();
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![BigInt::zero(); size];
        for (k, c) in f.coeffs().iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![BigInt::zero(); size];
        for (k, c) in g.coeffs().iter().rev().enumerate() {
            row[i + k] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// `Res(f, g) = lc(f)^deg g * prod g(alpha)` over the roots of `f`.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    if f.is_zero() || g.is_zero() {
        return BigInt::zero();
    }
    if f.deg() == 0 {
        return f.lc().pow(g.deg() as u32);
    }
    if g.deg() == 0 {
        return g.lc().pow(f.deg() as u32);
    }
    det_bareiss(sylvester(f, g))
}

/// `disc(f) = (-1)^(n(n-1)/2) Res(f, f') / lc(f)`.
pub fn poly_discriminant(f: &IntPoly) -> Result<BigInt> {
    let n = match f.degree() {
        Some(n) if n >= 1 => n,
        _ => return Err(Error::Degree("discriminant needs degree >= 1".into())),
    };
    if n == 1 {
        return Ok(BigInt::one());
    }
    let r = resultant(f, &f.derivative());
    let d = r / f.lc();
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -d } else { d })
}
