//! Finite commutative algebras over F_p given by structure constants.
//!
//! The main consumer is prime decomposition: for a maximal order `O` and a
//! rational prime `p`, the local components of `O/pO` are in bijection with
//! the places above `p`, with component dimension `e*f` and residue
//! dimension `f`.

pub mod linalg;

use crate::error::{Error, Result};
use crate::exact::integer::{addmod, mulmod, require_prime, submod};
use crate::exact::{factor_mod_p, ModPoly};

use linalg::{left_kernel, rank, rref};

/// Commutative associative unital F_p-algebra with a fixed basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpAlgebra {
    p: u64,
    dim: usize,
    /// `mul[(i * dim + j) * dim + k]` is the coefficient of `b_k` in `b_i b_j`.
    mul: Vec<u64>,
    one: Vec<u64>,
}

/// One local factor `e*A` of a split algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalComponent {
    pub idempotent: Vec<u64>,
    /// `dim_F_p(e*A)`; equals `e*f` when `A = O/pO` for a maximal order.
    pub dim: usize,
    /// Dimension of the image of `e*A` in `A/rad(A)`, i.e. the residue degree.
    pub residue_dim: usize,
}

impl FpAlgebra {
    /// Validates and builds an algebra. Rejects non-prime `p`, tables of the
    /// wrong size, unreduced residues, and tables that are not commutative,
    /// associative and unital with respect to `one`.
    pub fn new(p: u64, dim: usize, mul: Vec<u64>, one: Vec<u64>) -> Result<Self> {
        require_prime(p)?;
        if mul.len() != dim * dim * dim || one.len() != dim {
            return Err(Error::Algebra(format!(
                "table sizes do not match dimension {dim}"
            )));
        }
        if mul.iter().chain(&one).any(|&c| c >= p) {
            return Err(Error::Algebra(format!("entries must be reduced mod {p}")));
        }
        let a = FpAlgebra { p, dim, mul, one };
        a.validate()?;
        Ok(a)
    }

    /// `F_p[x]/(f)` with the power basis `1, x, …, x^(n-1)`.
    pub fn from_poly(f: &ModPoly) -> Result<Self> {
        let p = f.modulus();
        require_prime(p)?;
        let n = f.deg();
        if n == 0 {
            return Err(Error::Degree("quotient algebra needs degree >= 1".into()));
        }
        let f = f.monic();
        let mut powers = Vec::with_capacity(2 * n - 1);
        let x = ModPoly::x(p);
        let mut cur = ModPoly::one(p);
        for _ in 0..2 * n - 1 {
            powers.push(cur.rem(&f));
            cur = cur.mul(&x);
        }
        let mut mul = vec![0u64; n * n * n];
        for i in 0..n {
            for j in 0..n {
                let v = &powers[i + j];
                for k in 0..n {
                    mul[(i * n + j) * n + k] = v.coeff(k);
                }
            }
        }
        let mut one = vec![0; n];
        one[0] = 1;
        Ok(FpAlgebra { p, dim: n, mul, one })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn one(&self) -> &[u64] {
        &self.one
    }

    pub fn basis_element(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }

    fn entry(&self, i: usize, j: usize, k: usize) -> u64 {
        self.mul[(i * self.dim + j) * self.dim + k]
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = self.dim;
        let p = self.p as u128;
        let mut out = vec![0u128; n];
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..n {
                if b[j] == 0 {
                    continue;
                }
                let c = a[i] as u128 * b[j] as u128 % p;
                let row = &self.mul[(i * n + j) * n..(i * n + j + 1) * n];
                for (o, &t) in out.iter_mut().zip(row) {
                    if t != 0 {
                        *o = (*o + c * t as u128) % p;
                    }
                }
            }
        }
        out.into_iter().map(|v| v as u64).collect()
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| addmod(x, y, self.p)).collect()
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| submod(x, y, self.p)).collect()
    }

    pub fn scale(&self, a: &[u64], c: u64) -> Vec<u64> {
        a.iter().map(|&x| mulmod(x, c, self.p)).collect()
    }

    pub fn pow(&self, a: &[u64], mut e: u64) -> Vec<u64> {
        let mut result = self.one.clone();
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        result
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            let bi = self.basis_element(i);
            if self.mul(&self.one, &bi) != bi {
                return Err(Error::Algebra(format!("unit does not fix basis element {i}")));
            }
            for j in 0..n {
                for k in 0..n {
                    if self.entry(i, j, k) != self.entry(j, i, k) {
                        return Err(Error::Algebra(format!("b{i}*b{j} != b{j}*b{i}")));
                    }
                }
            }
        }
        for i in 0..n {
            for j in i..n {
                let bij: Vec<u64> = (0..n).map(|k| self.entry(i, j, k)).collect();
                for k in 0..n {
                    let left = self.mul(&bij, &self.basis_element(k));
                    let bjk: Vec<u64> = (0..n).map(|t| self.entry(j, k, t)).collect();
                    let right = self.mul(&self.basis_element(i), &bjk);
                    if left != right {
                        return Err(Error::Algebra(format!("(b{i}*b{j})*b{k} != b{i}*(b{j}*b{k})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Matrix of the (F_p-linear) Frobenius `x -> x^p`, row-vector convention.
    pub fn frobenius_matrix(&self) -> Vec<Vec<u64>> {
        (0..self.dim)
            .map(|i| self.pow(&self.basis_element(i), self.p))
            .collect()
    }

    /// Minimal polynomial over F_p of `x` inside `e*A`, where `e` is an
    /// idempotent acting as the unit (`x = e*x`).
    pub fn min_poly_in(&self, x: &[u64], e: &[u64]) -> ModPoly {
        let mut powers = vec![e.to_vec()];
        loop {
            let next = self.mul(powers.last().unwrap(), x);
            powers.push(next);
            if rank(&powers, self.p) < powers.len() {
                let ker = left_kernel(&powers, self.p);
                // first dependency: the kernel is one-dimensional with a
                // nonzero top coefficient
                let c = ker
                    .into_iter()
                    .find(|v| *v.last().unwrap() != 0)
                    .expect("dependency involves the newest power");
                return ModPoly::new(self.p, c).monic();
            }
        }
    }

    /// Evaluates `g(x)` in `e*A` with `x^0 = e`.
    pub fn eval_poly_in(&self, g: &ModPoly, x: &[u64], e: &[u64]) -> Vec<u64> {
        let mut acc = vec![0u64; self.dim];
        for &c in g.coeffs().iter().rev() {
            acc = self.mul(&acc, x);
            acc = self.add(&acc, &self.scale(e, c));
        }
        acc
    }
}

/// Basis (reduced echelon form) of the nilradical of `A`.
///
/// In a commutative algebra of characteristic p the Frobenius is linear and
/// an element is nilpotent iff `x^(p^k) = 0` for `p^k >= dim A`.
pub fn radical(a: &FpAlgebra) -> Result<Vec<Vec<u64>>> {
    let frob = a.frobenius_matrix();
    let mut power = frob.clone();
    let mut reach = a.p as u128;
    while reach < a.dim as u128 {
        power = linalg::mat_mul(&power, &frob, a.p);
        reach *= a.p as u128;
    }
    Ok(left_kernel(&power, a.p))
}

/// Splits `A` into local components `e_i A` with orthogonal primitive
/// idempotents summing to one, sorted by `(residue_dim, dim, idempotent)`.
pub fn split_idempotents(a: &FpAlgebra) -> Result<Vec<LocalComponent>> {
    let p = a.p;
    let n = a.dim;
    let rad = radical(a)?;
    // {x : x^p = x} is spanned by the primitive idempotents
    let mut frob_minus_id = a.frobenius_matrix();
    for (i, row) in frob_minus_id.iter_mut().enumerate() {
        row[i] = submod(row[i], 1, p);
    }
    let fixed = left_kernel(&frob_minus_id, p);
    let count = fixed.len();

    let mut idems = vec![a.one.clone()];
    for z in &fixed {
        if idems.len() == count {
            break;
        }
        let mut next = Vec::with_capacity(count);
        for e in &idems {
            let y = a.mul(z, e);
            let m = a.min_poly_in(&y, e);
            let fac = factor_mod_p(&m)?;
            if fac.factors.len() < 2 {
                next.push(e.clone());
                continue;
            }
            for piece in crt_idempotents(&m, &fac.factors, p) {
                next.push(a.eval_poly_in(&piece, &y, e));
            }
        }
        idems = next;
    }
    if idems.len() != count {
        return Err(Error::Algebra(format!(
            "idempotent refinement stalled at {} of {count} components",
            idems.len()
        )));
    }

    let mut comps: Vec<LocalComponent> = idems
        .into_iter()
        .map(|e| {
            let span: Vec<Vec<u64>> = (0..n).map(|j| a.mul(&e, &a.basis_element(j))).collect();
            let dim = rank(&span, p);
            let rad_part: Vec<Vec<u64>> = rad.iter().map(|r| a.mul(&e, r)).collect();
            let rad_dim = if rad_part.is_empty() { 0 } else { rank(&rad_part, p) };
            LocalComponent { idempotent: e, dim, residue_dim: dim - rad_dim }
        })
        .collect();
    comps.sort_by(|x, y| {
        (x.residue_dim, x.dim, &x.idempotent).cmp(&(y.residue_dim, y.dim, &y.idempotent))
    });
    Ok(comps)
}

/// Polynomials `E_i` with `E_i = 1 mod q_i^k_i` and `0 mod` the other
/// primary parts of `m`.
fn crt_idempotents(m: &ModPoly, factors: &[(ModPoly, usize)], p: u64) -> Vec<ModPoly> {
    factors
        .iter()
        .map(|(q, k)| {
            let mut qk = ModPoly::one(p);
            for _ in 0..*k {
                qk = qk.mul(q);
            }
            let cof = m.div(&qk);
            let (g, s, _) = cof.ext_gcd(&qk);
            debug_assert!(g.is_one());
            s.mul(&cof).rem(m)
        })
        .collect()
}

/// Echelon basis of a list of vectors (helper for tests and callers that
/// need canonical subspaces).
pub fn echelon_basis(vectors: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let mut m = vectors.to_vec();
    let r = rref(&mut m, p).len();
    m.truncate(r);
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quotient(p: u64, c: &[u64]) -> FpAlgebra {
        FpAlgebra::from_poly(&ModPoly::new(p, c.to_vec())).unwrap()
    }

    fn check_idempotents(a: &FpAlgebra, comps: &[LocalComponent]) {
        let mut sum = vec![0u64; a.dim()];
        for (i, c) in comps.iter().enumerate() {
            assert_eq!(a.mul(&c.idempotent, &c.idempotent), c.idempotent);
            for d in &comps[i + 1..] {
                assert!(a.mul(&c.idempotent, &d.idempotent).iter().all(|&v| v == 0));
            }
            sum = a.add(&sum, &c.idempotent);
        }
        assert_eq!(sum, a.one());
        assert_eq!(comps.iter().map(|c| c.dim).sum::<usize>(), a.dim());
    }

    #[test]
    fn radicals() {
        assert!(radical(&quotient(5, &[1, 0, 1])).unwrap().is_empty());
        assert_eq!(radical(&quotient(2, &[0, 0, 1])).unwrap(), vec![vec![0, 1]]);
        assert!(radical(&quotient(2, &[1, 1, 1])).unwrap().is_empty());
    }

    #[test]
    fn split_gaussian_mod_5() {
        let a = quotient(5, &[1, 0, 1]);
        let comps = split_idempotents(&a).unwrap();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.dim == 1 && c.residue_dim == 1));
        check_idempotents(&a, &comps);
    }

    #[test]
    fn field_of_four_elements() {
        let a = quotient(2, &[1, 1, 1]);
        let comps = split_idempotents(&a).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!((comps[0].dim, comps[0].residue_dim), (2, 2));
    }

    #[test]
    fn mixed_local_structure() {
        // (x+1)^3 (x^2+x+1) over F_2: components of dims 3 (residue 1) and 2 (residue 2)
        let f = ModPoly::new(2, vec![1, 1])
            .mul(&ModPoly::new(2, vec![1, 1]))
            .mul(&ModPoly::new(2, vec![1, 1]))
            .mul(&ModPoly::new(2, vec![1, 1, 1]));
        let a = FpAlgebra::from_poly(&f).unwrap();
        let comps = split_idempotents(&a).unwrap();
        let shape: Vec<(usize, usize)> = comps.iter().map(|c| (c.dim, c.residue_dim)).collect();
        assert_eq!(shape, vec![(3, 1), (2, 2)]);
        check_idempotents(&a, &comps);
        assert_eq!(radical(&a).unwrap().len(), 2);
    }

    #[test]
    fn bad_tables_rejected() {
        // non-commutative 2-dim table
        let mut mul = vec![0u64; 8];
        mul[0] = 1; // b0 b0 = b0
        mul[3] = 1; // b0 b1 = b1
        mul[4] = 1; // b1 b0 = b0  (should be b1)
        let r = FpAlgebra::new(3, 2, mul, vec![1, 0]);
        assert!(matches!(r, Err(Error::Algebra(_))));
        assert!(matches!(FpAlgebra::new(3, 2, vec![0; 7], vec![1, 0]), Err(Error::Algebra(_))));
        assert!(matches!(FpAlgebra::new(4, 1, vec![1], vec![1]), Err(Error::NotPrime(_))));
    }
}
