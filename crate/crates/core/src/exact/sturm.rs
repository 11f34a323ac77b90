//! Real-root counting with Sturm chains over Z.

use num_bigint::{BigInt, Sign};
use num_traits::Signed;

use super::IntPoly;
use crate::error::{Error, Result};

/// Sturm chain `f, f', -rem(f, f'), ...`, with every term scaled by a
/// positive constant so only signs carry meaning.
pub fn sturm_chain(f: &IntPoly) -> Vec<IntPoly> {
    let mut chain = vec![f.clone(), f.derivative()];
    loop {
        let a = &chain[chain.len() - 2];
        let b = &chain[chain.len() - 1];
        if b.is_zero() || b.deg() == 0 {
            break;
        }
        let delta = a.deg() - b.deg();
        // prem = lc(b)^(delta+1) * rem; undo the sign of that scalar
        let mut r = -&a.pseudo_rem(b);
        if b.lc().is_negative() && delta % 2 == 0 {
            r = -&r;
        }
        if r.is_zero() {
            break;
        }
        let c = r.content();
        chain.push(r.div_scalar_exact(&c));
    }
    chain
}

fn sign_changes(signs: impl Iterator<Item = Sign>) -> usize {
    let mut last = None;
    let mut changes = 0;
    for s in signs {
        if s == Sign::NoSign {
            continue;
        }
        if let Some(l) = last {
            if l != s {
                changes += 1;
            }
        }
        last = Some(s);
    }
    changes
}

fn sign_at_pos_inf(g: &IntPoly) -> Sign {
    g.lc().sign()
}

fn sign_at_neg_inf(g: &IntPoly) -> Sign {
    let s = g.lc().sign();
    if g.deg() % 2 == 1 {
        -s
    } else {
        s
    }
}

/// Number of distinct real roots of a squarefree polynomial.
pub fn count_real_roots(f: &IntPoly) -> usize {
    let chain = sturm_chain(f);
    let lo = sign_changes(chain.iter().map(sign_at_neg_inf));
    let hi = sign_changes(chain.iter().map(sign_at_pos_inf));
    lo - hi
}

/// Number of real roots in the half-open interval `(a, b]`, `a < b`.
pub fn count_real_roots_in(f: &IntPoly, a: &BigInt, b: &BigInt) -> usize {
    let chain = sturm_chain(f);
    let va = sign_changes(chain.iter().map(|g| g.eval(a).sign()));
    let vb = sign_changes(chain.iter().map(|g| g.eval(b).sign()));
    va - vb
}

/// Signature `(r, s)`: real roots and pairs of complex roots.
pub fn sturm_signature(f: &IntPoly) -> Result<(usize, usize)> {
    let n = match f.degree() {
        Some(n) if n >= 1 => n,
        _ => return Err(Error::Degree("signature needs degree >= 1".into())),
    };
    let g = f.gcd(&f.derivative());
    if g.deg() > 0 || g.is_zero() {
        return Err(Error::Squarefree(format!("{f} has a repeated root")));
    }
    let r = count_real_roots(f);
    debug_assert!((n - r) % 2 == 0);
    Ok((r, (n - r) / 2))
}
