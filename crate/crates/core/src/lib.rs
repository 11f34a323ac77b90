//! Exact number-field arithmetic and the invariants that govern profinite
//! commensurability of S-arithmetic groups.
//!
//! The crate is layered bottom-up:
//!
//! * [`exact`]: integer and prime-field polynomials, resultants, Sturm
//!   sequences, factorization over F_p and over Q.
//! * [`ffalg`]: finite commutative F_p-algebras (radical, primitive idempotents).
//! * [`nf`]: number fields with maximal orders and prime decomposition.
//! * [`equiv`]: arithmetical equivalence tests.
//! * [`gassmann`]: permutation groups, coset characters and Gassmann triples.
//! * [`sarith`]: S-arithmetic triples, p-algebras, verdicts and l2 profiles.
//! * [`cli`]: file formats and command dispatch for the `arith-equiv` binary.

pub mod cli;
pub mod equiv;
pub mod error;
pub mod exact;
pub mod ffalg;
pub mod gassmann;
pub mod nf;
pub mod par;
pub mod sarith;

pub use error::{Error, Result};
