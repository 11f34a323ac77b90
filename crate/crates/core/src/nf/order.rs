//! Orders of a monic number field given in HNF over the power basis, and the
//! round-2 enlargement at a single prime.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::hnf::{hnf, solve_lower};
use crate::error::{Error, Result};
use crate::exact::integer::mod_u64;
use crate::exact::IntPoly;
use crate::ffalg::linalg::left_kernel;
use crate::ffalg::{radical, FpAlgebra};

/// A full-rank subring of `Z[θ] ⊗ Q`: basis `ω_i = (1/denom) Σ_j basis[i][j] θ^j`
/// with `basis` in HNF.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Order {
    poly: IntPoly,
    denom: BigInt,
    basis: Vec<Vec<BigInt>>,
    /// `mul[(i*n + j)*n + k]` is the `ω_k`-coordinate of `ω_i ω_j`.
    mul: Vec<BigInt>,
}

impl Order {
    /// The equation order `Z[θ]`.
    pub fn equation_order(poly: &IntPoly) -> Result<Self> {
        let n = poly.deg();
        let basis: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from((i == j) as u8)).collect())
            .collect();
        Order::build(poly, BigInt::one(), basis)
    }

    /// The order spanned by `rows / denom` (power-basis numerators).
    pub fn from_generators(poly: &IntPoly, rows: &[Vec<BigInt>], denom: BigInt) -> Result<Self> {
        let n = poly.deg();
        let basis = hnf(rows, n)?;
        let mut g = denom.clone();
        for row in &basis {
            for v in row {
                g = g.gcd(v);
            }
        }
        let basis = basis
            .into_iter()
            .map(|r| r.into_iter().map(|v| v / &g).collect())
            .collect();
        Order::build(poly, denom / g, basis)
    }

    fn build(poly: &IntPoly, denom: BigInt, basis: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = poly.deg();
        let elems: Vec<IntPoly> = basis.iter().map(|r| IntPoly::new(r.clone())).collect();
        let d2 = &denom * &denom;
        let mut mul = vec![BigInt::zero(); n * n * n];
        for i in 0..n {
            for j in i..n {
                let (_, prod) = (&elems[i] * &elems[j]).divrem_monic(poly);
                let num: Vec<BigInt> = (0..n).map(|k| prod.coeff(k)).collect();
                let x = coords_in(&basis, &denom, &num, &d2).ok_or_else(|| {
                    Error::Inconsistency("lattice is not closed under multiplication".into())
                })?;
                for k in 0..n {
                    mul[(i * n + j) * n + k] = x[k].clone();
                    mul[(j * n + i) * n + k] = x[k].clone();
                }
            }
        }
        Ok(Order { poly: poly.clone(), denom, basis, mul })
    }

    pub fn degree(&self) -> usize {
        self.basis.len()
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denom
    }

    /// HNF numerators of the basis over the power basis.
    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// `[O : Z[θ]] = denom^n / prod(diagonal)`.
    pub fn index(&self) -> BigInt {
        let n = self.degree() as u32;
        let diag: BigInt = self.basis.iter().enumerate().map(|(i, r)| r[i].clone()).product();
        self.denom.pow(n) / diag
    }

    /// Coordinates in the `ω` basis of the element `num / den` (power basis),
    /// or `None` if it is not in the order.
    pub fn coords(&self, num: &[BigInt], den: &BigInt) -> Option<Vec<BigInt>> {
        coords_in(&self.basis, &self.denom, num, den)
    }

    pub fn mul_coords(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let n = self.degree();
        let mut out = vec![BigInt::zero(); n];
        for i in 0..n {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[j].is_zero() {
                    continue;
                }
                let c = &a[i] * &b[j];
                for k in 0..n {
                    let t = &self.mul[(i * n + j) * n + k];
                    if !t.is_zero() {
                        out[k] += &c * t;
                    }
                }
            }
        }
        out
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &BigInt {
        let n = self.degree();
        &self.mul[(i * n + j) * n + k]
    }

    /// `O / pO` as an F_p-algebra in the reduced `ω` basis.
    pub fn residue_algebra(&self, p: u64) -> Result<FpAlgebra> {
        let n = self.degree();
        let mul = self.mul.iter().map(|v| mod_u64(v, p)).collect();
        let mut unit_num = vec![BigInt::zero(); n];
        unit_num[0] = BigInt::one();
        let one = self
            .coords(&unit_num, &BigInt::one())
            .ok_or_else(|| Error::Inconsistency("order does not contain 1".into()))?;
        FpAlgebra::new(p, n, mul, one.iter().map(|v| mod_u64(v, p)).collect())
    }

    /// One round-2 step at `p`: the multiplier ring of the p-radical, or
    /// `None` when it equals this order (the order is then p-maximal).
    pub fn enlarge_at(&self, p: u64) -> Result<Option<Order>> {
        let n = self.degree();
        let bp = BigInt::from(p);
        let alg = self.residue_algebra(p)?;
        let rad = radical(&alg)?;
        if rad.is_empty() {
            return Ok(None);
        }
        // I_p = pO + lift(rad(O/pO)) in ω-coordinates
        let mut gens: Vec<Vec<BigInt>> = rad
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        for i in 0..n {
            let mut v = vec![BigInt::zero(); n];
            v[i] = bp.clone();
            gens.push(v);
        }
        let ideal = hnf(&gens, n)?;
        // kernel of O/pO -> End(I_p / p I_p)
        let mut action: Vec<Vec<u64>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut e = vec![BigInt::zero(); n];
            e[i] = BigInt::one();
            let mut row = Vec::with_capacity(n * n);
            for h in &ideal {
                let prod = self.mul_coords(&e, h);
                let c = solve_lower(&ideal, &prod).ok_or_else(|| {
                    Error::Inconsistency("p-radical is not an ideal".into())
                })?;
                row.extend(c.iter().map(|v| mod_u64(v, p)));
            }
            action.push(row);
        }
        let ker = left_kernel(&action, p);
        if ker.is_empty() {
            return Ok(None);
        }
        // O' = (1/p) (pO + lift(ker)), written over the power basis
        let mut rows: Vec<Vec<BigInt>> = self
            .basis
            .iter()
            .map(|r| r.iter().map(|v| v * &bp).collect())
            .collect();
        for c in &ker {
            let mut v = vec![BigInt::zero(); n];
            for (ck, bk) in c.iter().zip(&self.basis) {
                if *ck == 0 {
                    continue;
                }
                let ck = BigInt::from(*ck);
                for (vj, bj) in v.iter_mut().zip(bk) {
                    *vj += &ck * bj;
                }
            }
            rows.push(v);
        }
        Order::from_generators(&self.poly, &rows, &self.denom * &bp).map(Some)
    }

    /// Repeats round-2 steps at `p` until the order is p-maximal.
    pub fn p_maximal(self, p: u64) -> Result<Order> {
        let mut order = self;
        while let Some(next) = order.enlarge_at(p)? {
            debug_assert!(next.index() > order.index());
            order = next;
        }
        Ok(order)
    }

    /// Exponent of `p` in the index.
    pub fn index_valuation(&self, p: u64) -> u32 {
        let mut idx = self.index().abs();
        let bp = BigInt::from(p);
        let mut v = 0;
        while !idx.is_zero() && (&idx % &bp).is_zero() {
            idx /= &bp;
            v += 1;
        }
        v
    }

    /// Fits a prime from a discriminant factorization into `u64` for the
    /// residue-algebra machinery.
    pub(crate) fn small_prime(p: &BigInt) -> Result<u64> {
        p.to_u64()
            .filter(|&v| v < (1 << 62))
            .ok_or_else(|| Error::Factor(format!("prime {p} is too large for round-2")))
    }
}

fn coords_in(
    basis: &[Vec<BigInt>],
    denom: &BigInt,
    num: &[BigInt],
    den: &BigInt,
) -> Option<Vec<BigInt>> {
    let mut t = Vec::with_capacity(num.len());
    for v in num {
        let (q, r) = (v * denom).div_rem(den);
        if !r.is_zero() {
            return None;
        }
        t.push(q);
    }
    solve_lower(basis, &t)
}
