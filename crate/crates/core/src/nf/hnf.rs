//! Hermite normal form of full-rank integer lattices.
//!
//! Convention: the output basis is lower triangular (row `i` is supported on
//! columns `0..=i`), diagonal entries are positive, and each entry left of a
//! diagonal is reduced into `[0, B[j][j])`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// HNF basis of the lattice spanned by `rows` in `Z^n`. Fails when the rows
/// do not span a rank-`n` lattice.
pub fn hnf(rows: &[Vec<BigInt>], n: usize) -> Result<Vec<Vec<BigInt>>> {
    let mut pool: Vec<Vec<BigInt>> = rows
        .iter()
        .filter(|r| r.iter().any(|v| !v.is_zero()))
        .cloned()
        .collect();
    let mut basis: Vec<Vec<BigInt>> = vec![Vec::new(); n];
    for c in (0..n).rev() {
        let Some(pi) = pool.iter().position(|r| !r[c].is_zero()) else {
            return Err(Error::Inconsistency(format!("lattice has rank < {n}")));
        };
        let mut pivot = pool.swap_remove(pi);
        for r in pool.iter_mut() {
            if r[c].is_zero() {
                continue;
            }
            let a = pivot[c].clone();
            let b = r[c].clone();
            let eg = a.extended_gcd(&b);
            let (ag, bg) = (&a / &eg.gcd, &b / &eg.gcd);
            let new_pivot: Vec<BigInt> =
                pivot.iter().zip(r.iter()).map(|(u, v)| &eg.x * u + &eg.y * v).collect();
            let new_r: Vec<BigInt> =
                pivot.iter().zip(r.iter()).map(|(u, v)| &bg * u - &ag * v).collect();
            pivot = new_pivot;
            *r = new_r;
        }
        if pivot[c].is_negative() {
            for v in pivot.iter_mut() {
                *v = -&*v;
            }
        }
        pool.retain(|r| r.iter().any(|v| !v.is_zero()));
        basis[c] = pivot;
    }
    for i in 0..n {
        for j in (0..i).rev() {
            let q = basis[i][j].div_floor(&basis[j][j]);
            if q.is_zero() {
                continue;
            }
            let row_j = basis[j].clone();
            for (v, w) in basis[i].iter_mut().zip(&row_j) {
                *v -= &q * w;
            }
        }
    }
    Ok(basis)
}

/// Solves `x * B = t` for a lower-triangular `B`; `None` when `x` is not
/// integral.
pub fn solve_lower(basis: &[Vec<BigInt>], t: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = basis.len();
    let mut t = t.to_vec();
    let mut x = vec![BigInt::zero(); n];
    for k in (0..n).rev() {
        let (q, r) = t[k].div_rem(&basis[k][k]);
        if !r.is_zero() {
            return None;
        }
        for (tj, bj) in t.iter_mut().zip(&basis[k]).take(k + 1) {
            *tj -= &q * bj;
        }
        x[k] = q;
    }
    Some(x)
}
