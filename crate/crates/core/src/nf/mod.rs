//! Number fields `Q[x]/(f)` for monic irreducible `f`: maximal order,
//! discriminant, signature and prime decomposition.

pub mod hnf;
pub mod order;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::integer::{factor_integer, require_prime};
use crate::exact::{
    factor_mod_p, is_irreducible_over_q, poly_discriminant, sturm_signature, IntPoly, ModPoly,
};
use crate::ffalg::split_idempotents;

pub use order::Order;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumberField {
    poly: IntPoly,
    max_order: Order,
    poly_disc: BigInt,
    field_disc: BigInt,
    signature: (usize, usize),
    index_primes: Vec<u64>,
}

/// A place of `K` above the rational prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Place {
    pub p: u64,
    pub e: usize,
    pub f: usize,
    pub ordinal: usize,
}

/// The `(e, f)` pairs above `p`, sorted by `(f, e)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DecompProfile {
    pub p: u64,
    pub pairs: Vec<(usize, usize)>,
}

impl DecompProfile {
    pub fn is_ramified(&self) -> bool {
        self.pairs.iter().any(|&(e, _)| e > 1)
    }

    /// Ascending residue degrees.
    pub fn residue_degrees(&self) -> Vec<usize> {
        let mut fs: Vec<usize> = self.pairs.iter().map(|&(_, f)| f).collect();
        fs.sort_unstable();
        fs
    }

    pub fn total(&self) -> usize {
        self.pairs.iter().map(|&(e, f)| e * f).sum()
    }
}

/// Builds the field of a monic irreducible integer polynomial.
pub fn make_field(f: &IntPoly) -> Result<NumberField> {
    match f.degree() {
        Some(n) if n >= 1 => {}
        _ => return Err(Error::Degree("a number field needs degree >= 1".into())),
    }
    if !f.is_monic() {
        return Err(Error::Monic(format!("{f} is not monic")));
    }
    if !is_irreducible_over_q(f)? {
        return Err(Error::Reducible(format!("{f} is reducible over Q")));
    }
    let poly_disc = poly_discriminant(f)?;
    let signature = sturm_signature(f)?;
    let mut order = Order::equation_order(f)?;
    let mut index_primes = Vec::new();
    if f.deg() > 1 {
        for (q, e) in factor_integer(&poly_disc)? {
            if e < 2 {
                continue;
            }
            let p = Order::small_prime(&q)?;
            if dedekind_p_maximal(f, p)? {
                continue;
            }
            order = order.p_maximal(p)?;
            index_primes.push(p);
        }
    }
    let index = order.index();
    let field_disc = &poly_disc / (&index * &index);
    debug_assert!(&field_disc * &index * &index == poly_disc);
    Ok(NumberField { poly: f.clone(), max_order: order, poly_disc, field_disc, signature, index_primes })
}

/// Dedekind's criterion: whether `Z[θ]` is maximal at `p`.
pub fn dedekind_p_maximal(f: &IntPoly, p: u64) -> Result<bool> {
    require_prime(p)?;
    let fbar = ModPoly::from_int_poly(f, p);
    if fbar.deg() == 0 {
        return Err(Error::Degree("criterion needs deg f >= 1 mod p".into()));
    }
    let fac = factor_mod_p(&fbar)?;
    let mut g = ModPoly::one(p);
    for (gi, _) in &fac.factors {
        g = g.mul(gi);
    }
    let h = fbar.div(&g);
    let gz = g.to_int_poly();
    let hz = h.scale(fac.content).to_int_poly();
    let diff = &(&gz * &hz) - f;
    let big_f = diff.div_scalar_exact(&BigInt::from(p));
    let fmod = ModPoly::from_int_poly(&big_f, p);
    Ok(fmod.gcd(&g).gcd(&h).deg() == 0)
}

impl NumberField {
    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.deg()
    }

    pub fn max_order(&self) -> &Order {
        &self.max_order
    }

    pub fn poly_disc(&self) -> &BigInt {
        &self.poly_disc
    }

    pub fn field_disc(&self) -> &BigInt {
        &self.field_disc
    }

    pub fn signature(&self) -> (usize, usize) {
        self.signature
    }

    /// `[O_K : Z[θ]]`.
    pub fn index(&self) -> BigInt {
        self.max_order.index()
    }

    /// Primes dividing the index, ascending.
    pub fn index_primes(&self) -> &[u64] {
        &self.index_primes
    }

    pub fn is_index_prime(&self, p: u64) -> bool {
        self.index_primes.contains(&p)
    }
}

/// Places of `K` above `p` with their ordinals.
pub fn places_over(k: &NumberField, p: u64) -> Result<Vec<Place>> {
    require_prime(p)?;
    if k.is_index_prime(p) {
        places_via_algebra(k, p)
    } else {
        places_via_factoring(k, p)
    }
}

/// Reads places from `f mod p`; valid whenever `p` does not divide the index.
pub fn places_via_factoring(k: &NumberField, p: u64) -> Result<Vec<Place>> {
    require_prime(p)?;
    let fac = factor_mod_p(&ModPoly::from_int_poly(&k.poly, p))?;
    let mut keyed: Vec<(usize, usize, &[u64])> =
        fac.factors.iter().map(|(g, m)| (g.deg(), *m, g.coeffs())).collect();
    keyed.sort();
    Ok(keyed
        .into_iter()
        .enumerate()
        .map(|(ordinal, (f, e, _))| Place { p, e, f, ordinal })
        .collect())
}

/// Reads places from the local components of `O_K / pO_K`.
pub fn places_via_algebra(k: &NumberField, p: u64) -> Result<Vec<Place>> {
    require_prime(p)?;
    let alg = k.max_order.residue_algebra(p)?;
    // components come sorted by (f, e*f, idempotent), i.e. by (f, e, idempotent)
    split_idempotents(&alg)?
        .into_iter()
        .enumerate()
        .map(|(ordinal, c)| {
            if c.residue_dim == 0 || c.dim % c.residue_dim != 0 {
                return Err(Error::Inconsistency(format!(
                    "component of dim {} has residue dim {}",
                    c.dim, c.residue_dim
                )));
            }
            Ok(Place { p, e: c.dim / c.residue_dim, f: c.residue_dim, ordinal })
        })
        .collect()
}

fn profile_of(p: u64, places: &[Place]) -> DecompProfile {
    let mut pairs: Vec<(usize, usize)> = places.iter().map(|pl| (pl.e, pl.f)).collect();
    pairs.sort_by_key(|&(e, f)| (f, e));
    DecompProfile { p, pairs }
}

pub fn decompose(k: &NumberField, p: u64) -> Result<DecompProfile> {
    Ok(profile_of(p, &places_over(k, p)?))
}

/// The algebra-splitting path regardless of whether `p` divides the index.
pub fn decompose_via_algebra(k: &NumberField, p: u64) -> Result<DecompProfile> {
    Ok(profile_of(p, &places_via_algebra(k, p)?))
}

pub fn decomposition_type(k: &NumberField, p: u64) -> Result<Vec<usize>> {
    Ok(decompose(k, p)?.residue_degrees())
}

/// Whether `p` divides the field discriminant.
pub fn divides_disc(k: &NumberField, p: u64) -> bool {
    !k.field_disc.is_zero() && (&k.field_disc % BigInt::from(p)).is_zero()
}

/// `Q` itself, presented by `x`.
pub fn rationals() -> NumberField {
    make_field(&IntPoly::x()).expect("x is monic irreducible")
}

impl DecompProfile {
    /// The profile of `Q` at `p`.
    pub fn trivial(p: u64) -> Self {
        DecompProfile { p, pairs: vec![(1, 1)] }
    }
}
