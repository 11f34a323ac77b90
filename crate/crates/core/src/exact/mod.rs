//! Exact arithmetic: integers, integer and prime-field polynomials,
//! resultants, Sturm sequences and factorization.

pub mod factor_fp;
pub mod factor_z;
pub mod integer;
pub mod intpoly;
pub mod modpoly;
pub mod resultant;
pub mod sturm;

use num_bigint::BigInt;

pub use factor_fp::factor_mod_p;
pub use factor_z::{factor_over_q, is_irreducible_over_q};
pub use intpoly::IntPoly;
pub use modpoly::ModPoly;
pub use resultant::{poly_discriminant, resultant};
pub use sturm::sturm_signature;

/// `content * prod factor^multiplicity`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization<C, P> {
    pub content: C,
    pub factors: Vec<(P, usize)>,
}

pub type IntFactorization = Factorization<BigInt, IntPoly>;
pub type ModFactorization = Factorization<u64, ModPoly>;

impl<C, P> Factorization<C, P> {
    /// Sum of `degree * multiplicity` given a degree function.
    pub fn total_degree(&self, deg: impl Fn(&P) -> usize) -> usize {
        self.factors.iter().map(|(g, m)| deg(g) * m).sum()
    }
}

impl IntFactorization {
    pub fn expand(&self) -> IntPoly {
        let mut acc = IntPoly::constant(self.content.clone());
        for (g, m) in &self.factors {
            acc = &acc * &g.pow(*m as u32);
        }
        acc
    }
}

impl ModFactorization {
    pub fn expand(&self, p: u64) -> ModPoly {
        let mut acc = ModPoly::constant(p, self.content);
        for (g, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(g);
            }
        }
        acc
    }
}
