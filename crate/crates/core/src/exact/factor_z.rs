//! Factorization over Q of integer polynomials: squarefree decomposition,
//! modular factorization, multifactor Hensel lifting and exhaustive
//! recombination under the Landau-Mignotte bound.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::factor_fp::factor_mod_p;
use super::integer::{isqrt_ceil, primes_up_to};
use super::{IntFactorization, IntPoly, ModPoly};
use crate::error::{Error, Result};

/// Number of good primes sampled before choosing the one with fewest
/// modular factors.
const PRIME_SAMPLES: usize = 8;

/// Factorization `f = content * prod g_i^{m_i}` with primitive irreducible
/// `g_i` of positive leading coefficient, sorted by `(degree, coefficients)`.
pub fn factor_over_q(f: &IntPoly) -> Result<IntFactorization> {
    if f.deg() == 0 {
        return Err(Error::Degree("factor_over_q needs degree >= 1".into()));
    }
    let mut content = f.content();
    if f.lc().is_negative() {
        content = -content;
    }
    let prim = f.div_scalar_exact(&content);
    let mut factors: Vec<(IntPoly, usize)> = Vec::new();
    for (part, mult) in squarefree_decomposition_z(&prim) {
        for g in factor_squarefree(&part) {
            factors.push((g, mult));
        }
    }
    factors.sort_by(|a, b| (a.0.deg(), a.0.coeffs()).cmp(&(b.0.deg(), b.0.coeffs())));
    Ok(IntFactorization { content, factors })
}

/// True iff `f` (degree >= 1) is irreducible over Q.
pub fn is_irreducible_over_q(f: &IntPoly) -> Result<bool> {
    let fac = factor_over_q(f)?;
    Ok(fac.factors.len() == 1 && fac.factors[0].1 == 1)
}

/// Yun's algorithm over Z for a primitive polynomial with positive leading
/// coefficient. Quotients are exact by Gauss's lemma.
fn squarefree_decomposition_z(f: &IntPoly) -> Vec<(IntPoly, usize)> {
    if is_squarefree_mod_some_prime(f) {
        return vec![(f.clone(), 1)];
    }
    let mut out = Vec::new();
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.div_exact(&a0).expect("gcd divides f");
    let c = df.div_exact(&a0).expect("gcd divides f'");
    let mut d = &c - &b.derivative();
    let mut i = 1;
    loop {
        let a = b.gcd(&d);
        if a.deg() > 0 {
            out.push((a.clone(), i));
        }
        b = b.div_exact(&a).expect("gcd divides b");
        if b.deg() == 0 {
            break;
        }
        let c = d.div_exact(&a).expect("gcd divides d");
        d = &c - &b.derivative();
        i += 1;
    }
    out
}

/// A squarefree reduction for some prime not dividing the leading
/// coefficient certifies squarefreeness over Q.
fn is_squarefree_mod_some_prime(f: &IntPoly) -> bool {
    let lc = f.lc();
    primes_up_to(400)
        .into_iter()
        .filter(|&p| !(&lc % BigInt::from(p)).is_zero())
        .take(30)
        .any(|p| {
            let fp = ModPoly::from_int_poly(f, p);
            fp.gcd(&fp.derivative()).deg() == 0
        })
}

/// Factors a squarefree primitive polynomial with positive leading
/// coefficient into irreducibles.
fn factor_squarefree(f: &IntPoly) -> Vec<IntPoly> {
    let n = f.deg();
    if n <= 1 {
        return vec![f.clone()];
    }
    let lc = f.lc();
    // pick the prime with fewest modular factors, intersecting the feasible
    // factor-degree sets along the way
    let mut best: Option<(u64, Vec<ModPoly>)> = None;
    let mut feasible: BTreeSet<usize> = (0..=n).collect();
    let mut sampled = 0;
    for p in primes_up_to(100_000).into_iter().skip(1) {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = ModPoly::from_int_poly(f, p);
        if fp.gcd(&fp.derivative()).deg() != 0 {
            continue;
        }
        let fac = factor_mod_p(&fp).expect("p is prime");
        let polys: Vec<ModPoly> = fac.factors.into_iter().map(|(g, _)| g).collect();
        if polys.len() == 1 {
            return vec![f.clone()];
        }
        let mut sums = BTreeSet::from([0usize]);
        for g in &polys {
            let shifted: Vec<usize> = sums.iter().map(|s| s + g.deg()).collect();
            sums.extend(shifted);
        }
        feasible = feasible.intersection(&sums).copied().collect();
        if feasible.len() <= 2 {
            return vec![f.clone()];
        }
        if best.as_ref().is_none_or(|(_, b)| polys.len() < b.len()) {
            best = Some((p, polys));
        }
        sampled += 1;
        if sampled >= PRIME_SAMPLES {
            break;
        }
    }
    let (p, modular) = best.expect("a squarefree polynomial has good primes");
    let bound = lifting_bound(f);
    let (modulus, lifted) = hensel_lift(f, p, &modular, &bound);
    debug_assert!(check_lift(f, &modulus, &lifted));
    recombine(f, &modulus, lifted, &feasible)
}

/// `2 * |lc| * 2^n * ||f||_2`: any factor `h` of `f`, rescaled to leading
/// coefficient `lc(f)`, has coefficients below half of this.
fn lifting_bound(f: &IntPoly) -> BigInt {
    let norm = isqrt_ceil(&f.norm2_squared());
    BigInt::from(2) * f.lc().abs() * (BigInt::one() << f.deg()) * norm
}

/// Quadratic Hensel step for `f = g*h mod m` with `s*g + t*h = 1 mod m` and
/// `h` monic. Returns the lifts modulo `m^2`.
fn hensel_step(
    m: &BigInt,
    f: &IntPoly,
    g: &IntPoly,
    h: &IntPoly,
    s: &IntPoly,
    t: &IntPoly,
) -> (IntPoly, IntPoly, IntPoly, IntPoly) {
    let m2 = m * m;
    let e = (f - &(g * h)).rem_coeffs(&m2);
    let (q, r) = (s * &e).rem_coeffs(&m2).divrem_monic(h);
    let g2 = (&(g + &(t * &e)) + &(&q * g)).rem_coeffs(&m2);
    let h2 = (h + &r).rem_coeffs(&m2);
    let b = (&(&(s * &g2) + &(t * &h2)) - &IntPoly::one()).rem_coeffs(&m2);
    let (c, d) = (s * &b).rem_coeffs(&m2).divrem_monic(&h2);
    let s2 = (s - &d).rem_coeffs(&m2);
    let t2 = (&(t - &(t * &b)) - &(&c * &g2)).rem_coeffs(&m2);
    (g2, h2, s2, t2)
}

/// Lifts `f = lc(f) * prod modular mod p` to a modulus `p^(2^k) > bound`.
/// Returns the modulus and monic lifted factors in input order.
fn hensel_lift(f: &IntPoly, p: u64, modular: &[ModPoly], bound: &BigInt) -> (BigInt, Vec<IntPoly>) {
    let pb = BigInt::from(p);
    let mut steps = 0;
    let mut modulus = pb.clone();
    while &modulus <= bound {
        modulus = &modulus * &modulus;
        steps += 1;
    }
    let lc_mod_p = super::integer::mod_u64(&f.lc(), p);
    let mut current = f.clone();
    let mut out = Vec::with_capacity(modular.len());
    for i in 0..modular.len() - 1 {
        let h0 = modular[i].clone();
        let mut g0 = ModPoly::constant(p, lc_mod_p);
        for other in &modular[i + 1..] {
            g0 = g0.mul(other);
        }
        let (one, s0, t0) = g0.ext_gcd(&h0);
        debug_assert!(one.is_one());
        let (mut g, mut h) = (g0.to_int_poly(), h0.to_int_poly());
        let (mut s, mut t) = (s0.to_int_poly(), t0.to_int_poly());
        let mut m = pb.clone();
        for _ in 0..steps {
            let target = current.rem_coeffs(&(&m * &m));
            let next = hensel_step(&m, &target, &g, &h, &s, &t);
            g = next.0;
            h = next.1;
            s = next.2;
            t = next.3;
            m = &m * &m;
        }
        out.push(h);
        current = g;
    }
    // the last factor is what remains, made monic
    let lc = current.lc();
    let inv = mod_inverse(&lc, &modulus);
    out.push(current.scale(&inv).rem_coeffs(&modulus));
    (modulus, out)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = num_integer::Integer::extended_gcd(a, m);
    debug_assert!(e.gcd.is_one());
    num_integer::Integer::mod_floor(&e.x, m)
}

/// Zassenhaus recombination over subsets of increasing size.
fn recombine(
    f: &IntPoly,
    modulus: &BigInt,
    mut lifted: Vec<IntPoly>,
    feasible: &BTreeSet<usize>,
) -> Vec<IntPoly> {
    let mut rest = f.clone();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut hit = None;
        for subset in Subsets::new(lifted.len(), size) {
            let deg: usize = subset.iter().map(|&i| lifted[i].deg()).sum();
            if !feasible.contains(&deg) {
                continue;
            }
            let lc = rest.lc();
            // cheap constant-term test before the full product
            let mut c0 = lc.clone();
            for &i in &subset {
                c0 = (c0 * lifted[i].coeff(0)) % modulus;
            }
            let c0 = IntPoly::constant(c0).symmetric_mod(modulus).coeff(0);
            if !c0.is_zero() && !(rest.coeff(0) * &lc % &c0).is_zero() {
                continue;
            }
            let mut cand = IntPoly::constant(lc.clone());
            for &i in &subset {
                cand = (&cand * &lifted[i]).rem_coeffs(modulus);
            }
            let cand = cand.symmetric_mod(modulus).primitive_part();
            if let Some(q) = rest.div_exact(&cand) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                found.push(cand);
                rest = q;
                lifted = lifted
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, g)| g)
                    .collect();
            }
            None => size += 1,
        }
    }
    if rest.deg() > 0 {
        found.push(rest.primitive_part());
    }
    found
}

/// Lexicographic k-subsets of `0..n`.
struct Subsets {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Subsets {
    fn new(n: usize, k: usize) -> Self {
        Subsets { n, idx: (0..k).collect(), done: k > n }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

fn check_lift(f: &IntPoly, modulus: &BigInt, lifted: &[IntPoly]) -> bool {
    let mut acc = IntPoly::constant(f.lc());
    for g in lifted {
        acc = (&acc * g).rem_coeffs(modulus);
    }
    acc == f.rem_coeffs(modulus)
}
