//! Dense linear algebra over F_p.

use crate::exact::integer::{invmod, mulmod, submod};

/// Reduced row-echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut [Vec<u64>], p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = invmod(rows[r][c], p);
        for v in rows[r].iter_mut() {
            *v = mulmod(*v, inv, p);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                *v = submod(*v, mulmod(f, pv, p), p);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<u64>], p: u64) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, p).len()
}

/// Basis of `{x : x * M = 0}` for the row-vector action of `m`
/// (`m` has `rows.len()` rows). Returned in reduced echelon form.
pub fn left_kernel(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    if n == 0 {
        return Vec::new();
    }
    let k = m[0].len();
    // x M = 0  <=>  M^T x^T = 0
    let mut t: Vec<Vec<u64>> = (0..k).map(|j| (0..n).map(|i| m[i][j]).collect()).collect();
    null_space(&mut t, n, p)
}

/// Basis of `{v : A v = 0}` where `a` has `ncols` columns.
pub fn right_kernel(a: &[Vec<u64>], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut a = a.to_vec();
    null_space(&mut a, ncols, p)
}

fn null_space(a: &mut [Vec<u64>], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    if a.is_empty() {
        return (0..ncols).map(|i| unit(ncols, i)).collect();
    }
    let pivots = rref(a, p);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let mut basis: Vec<Vec<u64>> = free
        .iter()
        .map(|&fc| {
            let mut v = vec![0u64; ncols];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = submod(0, a[r][fc], p);
            }
            v
        })
        .collect();
    rref(&mut basis, p);
    basis
}

fn unit(n: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// `x * M` for a row vector `x`.
pub fn vec_mat(x: &[u64], m: &[Vec<u64>], p: u64) -> Vec<u64> {
    let k = m.first().map_or(0, |r| r.len());
    let mut out = vec![0u128; k];
    let pp = p as u128;
    for (xi, row) in x.iter().zip(m) {
        if *xi == 0 {
            continue;
        }
        for (o, &v) in out.iter_mut().zip(row) {
            *o = (*o + *xi as u128 * v as u128) % pp;
        }
    }
    out.into_iter().map(|v| v as u64).collect()
}

pub fn mat_mul(a: &[Vec<u64>], b: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    a.iter().map(|row| vec_mat(row, b, p)).collect()
}
