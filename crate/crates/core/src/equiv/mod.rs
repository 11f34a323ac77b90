//! Arithmetical equivalence of number fields: invariant comparison,
//! decomposition-type sweeps, and certification in prime degree through the
//! norm of `g(x - sθ)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::integer::{factor_integer, primes_up_to};
use crate::exact::resultant::resultant;
use crate::exact::{factor_over_q, IntPoly};
use crate::nf::{decomposition_type, NumberField, Order};
use crate::par::{self, Execution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EquivVerdict {
    CertifiedEquivalent,
    CertifiedDistinct,
    EquivalentUpToBound,
    Distinct,
}

impl EquivVerdict {
    pub fn is_equivalent(self) -> bool {
        matches!(self, EquivVerdict::CertifiedEquivalent | EquivVerdict::EquivalentUpToBound)
    }

    pub fn is_certified(self) -> bool {
        matches!(self, EquivVerdict::CertifiedEquivalent | EquivVerdict::CertifiedDistinct)
    }
}

impl fmt::Display for EquivVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EquivVerdict::CertifiedEquivalent => "CERTIFIED_EQUIVALENT",
            EquivVerdict::CertifiedDistinct => "CERTIFIED_DISTINCT",
            EquivVerdict::EquivalentUpToBound => "EQUIVALENT_UP_TO_BOUND",
            EquivVerdict::Distinct => "DISTINCT",
        })
    }
}

/// How a verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    InvariantBattery,
    IdenticalPolynomial,
    Perlis,
    RadicalFamily,
    Sweep,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::InvariantBattery => "invariant_battery",
            Method::IdenticalPolynomial => "identical_polynomial",
            Method::Perlis => "perlis",
            Method::RadicalFamily => "radical_family",
            Method::Sweep => "sweep",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Battery {
    pub degree_equal: bool,
    pub disc_equal: bool,
    pub signature_equal: bool,
}

impl Battery {
    pub fn passed(&self) -> bool {
        self.degree_equal && self.disc_equal && self.signature_equal
    }
}

/// Decomposition types of both fields at one prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeRecord {
    pub p: u64,
    pub k_type: Vec<usize>,
    pub l_type: Vec<usize>,
}

impl PrimeRecord {
    pub fn agrees(&self) -> bool {
        self.k_type == self.l_type
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivReport {
    pub verdict: EquivVerdict,
    pub method: Method,
    /// Sweep bound, when a sweep contributed.
    pub bound: Option<u64>,
    pub battery: Option<Battery>,
    /// Per-prime records in ascending prime order.
    pub evidence: Vec<PrimeRecord>,
    /// Smallest prime with differing decomposition types.
    pub witness: Option<u64>,
    /// Degrees of the irreducible factors of the norm polynomial (Perlis route).
    pub norm_factor_degrees: Option<Vec<usize>>,
}

impl EquivReport {
    fn new(verdict: EquivVerdict, method: Method) -> Self {
        EquivReport {
            verdict,
            method,
            bound: None,
            battery: None,
            evidence: Vec::new(),
            witness: None,
            norm_factor_degrees: None,
        }
    }

    pub fn mismatches(&self) -> usize {
        self.evidence.iter().filter(|r| !r.agrees()).count()
    }
}

pub fn invariant_battery(k: &NumberField, l: &NumberField) -> Battery {
    Battery {
        degree_equal: k.degree() == l.degree(),
        disc_equal: k.field_disc() == l.field_disc(),
        signature_equal: k.signature() == l.signature(),
    }
}

/// Primes `<= bound` together with every prime dividing either polynomial
/// discriminant, ascending.
pub fn sweep_primes(k: &NumberField, l: &NumberField, bound: u64) -> Result<Vec<u64>> {
    let mut ps = primes_up_to(bound);
    for field in [k, l] {
        if field.degree() < 2 {
            continue;
        }
        for (q, _) in factor_integer(field.poly_disc())? {
            let q = Order::small_prime(&q)?;
            if q > bound {
                ps.push(q);
            }
        }
    }
    ps.sort_unstable();
    ps.dedup();
    Ok(ps)
}

pub fn compare_types(k: &NumberField, l: &NumberField, bound: u64) -> Result<EquivReport> {
    compare_types_with(k, l, bound, Execution::default())
}

/// `compare_types` with an explicit execution strategy. The report does not
/// depend on the strategy.
pub fn compare_types_with(
    k: &NumberField,
    l: &NumberField,
    bound: u64,
    exec: Execution,
) -> Result<EquivReport> {
    let primes = sweep_primes(k, l, bound)?;
    let records = par::map(exec, &primes, |&p| -> Result<PrimeRecord> {
        Ok(PrimeRecord { p, k_type: decomposition_type(k, p)?, l_type: decomposition_type(l, p)? })
    });
    let evidence = records.into_iter().collect::<Result<Vec<_>>>()?;
    let witness = evidence.iter().find(|r| !r.agrees()).map(|r| r.p);
    let verdict = if witness.is_some() { EquivVerdict::Distinct } else { EquivVerdict::EquivalentUpToBound };
    let mut report = EquivReport::new(verdict, Method::Sweep);
    report.bound = Some(bound);
    report.evidence = evidence;
    report.witness = witness;
    Ok(report)
}

/// `N(x) = Res_y(f(y), g(x - s*y))`: the norm from `K[x]` to `Q[x]` of
/// `g(x - sθ)`, recovered by interpolation at `x = 0, …, deg f * deg g`.
pub fn trager_norm(f: &IntPoly, g: &IntPoly, s: i64) -> IntPoly {
    let n = f.deg() * g.deg();
    let ys: Vec<BigInt> = (0..=n as i64)
        .map(|x0| {
            let h = g.compose_linear(&BigInt::from(x0), &BigInt::from(-s));
            resultant(f, &h)
        })
        .collect();
    interpolate_unit_grid(&ys)
}

/// The integer polynomial of degree `< ys.len()` with `P(i) = ys[i]`.
fn interpolate_unit_grid(ys: &[BigInt]) -> IntPoly {
    // forward differences give the binomial-basis coefficients
    let mut diffs = ys.to_vec();
    let mut newton = Vec::with_capacity(ys.len());
    for k in 0..ys.len() {
        newton.push(diffs[0].clone());
        for i in 0..ys.len() - k - 1 {
            diffs[i] = &diffs[i + 1] - &diffs[i];
        }
    }
    // sum c_k * x(x-1)...(x-k+1) / k!
    let mut acc = vec![BigRational::zero(); ys.len()];
    let mut falling = vec![BigInt::one()];
    let mut fact = BigInt::one();
    for (k, c) in newton.iter().enumerate() {
        if k > 0 {
            fact *= BigInt::from(k);
            let mut next = vec![BigInt::zero(); falling.len() + 1];
            let shift = BigInt::from(k - 1);
            for (i, a) in falling.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= a * &shift;
            }
            falling = next;
        }
        if c.is_zero() {
            continue;
        }
        for (i, a) in falling.iter().enumerate() {
            acc[i] += BigRational::new(c * a, fact.clone());
        }
    }
    IntPoly::new(
        acc.into_iter()
            .map(|r| {
                debug_assert!(r.is_integer());
                r.to_integer()
            })
            .collect(),
    )
}

/// Decides equivalence in prime degree: `g` splits over `K` iff the
/// compositum has degree `< p^2` iff the fields are arithmetically
/// equivalent.
pub fn perlis_certify(k: &NumberField, l: &NumberField) -> Result<EquivReport> {
    if k.degree() != l.degree() {
        return Ok(EquivReport::new(EquivVerdict::CertifiedDistinct, Method::Perlis));
    }
    let n = k.degree();
    if !crate::exact::integer::is_prime_u64(n as u64) {
        return Err(Error::Degree(format!("certification needs prime degree, got {n}")));
    }
    let (f, g) = (k.poly(), l.poly());
    let mut s = 0i64;
    let norm = loop {
        let norm = trager_norm(f, g, s);
        if norm.gcd(&norm.derivative()).deg() == 0 {
            break norm;
        }
        s += 1;
    };
    let fac = factor_over_q(&norm)?;
    let mut degrees: Vec<usize> = fac
        .factors
        .iter()
        .flat_map(|(h, m)| std::iter::repeat_n(h.deg(), *m))
        .collect();
    degrees.sort_unstable();
    let verdict = if degrees.len() > 1 {
        EquivVerdict::CertifiedEquivalent
    } else {
        EquivVerdict::CertifiedDistinct
    };
    let mut report = EquivReport::new(verdict, Method::Perlis);
    report.norm_factor_degrees = Some(degrees);
    Ok(report)
}

/// Recognizes `{x^(2^r) - a, x^(2^r) - 2^(2^(r-1)) a}` with `r >= 3` and
/// squarefree `|a| >= 3`, a family of equivalent non-conjugate fields.
pub fn is_radical_family_pair(f: &IntPoly, g: &IntPoly) -> Result<bool> {
    let Some((nf, a)) = pure_power(f) else { return Ok(false) };
    let Some((ng, b)) = pure_power(g) else { return Ok(false) };
    if nf != ng || !nf.is_power_of_two() || nf < 8 {
        return Ok(false);
    }
    let twist = BigInt::from(2).pow((nf / 2) as u32);
    for (small, big) in [(&a, &b), (&b, &a)] {
        if &(small * &twist) != big || small.abs() < BigInt::from(3) {
            continue;
        }
        if factor_integer(small)?.iter().all(|&(_, e)| e == 1) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `x^n - a` as `(n, a)`.
fn pure_power(f: &IntPoly) -> Option<(usize, BigInt)> {
    let n = f.deg();
    if n < 2 || !f.is_monic() || (1..n).any(|i| !f.coeff(i).is_zero()) {
        return None;
    }
    Some((n, -f.coeff(0)))
}

/// Ceiling for the witness search after a failed invariant battery.
const WITNESS_SEARCH_LIMIT: u64 = 1 << 20;

/// Strongest verdict available: invariants, then identical input, then
/// certification in prime degree, otherwise a sweep to `bound`. A failed
/// invariant yields DISTINCT with the smallest witness prime.
pub fn arith_equiv(k: &NumberField, l: &NumberField, bound: u64) -> Result<EquivReport> {
    arith_equiv_with(k, l, bound, Execution::default())
}

pub fn arith_equiv_with(
    k: &NumberField,
    l: &NumberField,
    bound: u64,
    exec: Execution,
) -> Result<EquivReport> {
    let battery = invariant_battery(k, l);
    if !battery.passed() {
        // differing zeta functions differ at infinitely many primes, so
        // widening the sweep always reaches a witness
        let mut b = bound.max(2);
        let mut report = loop {
            let r = compare_types_with(k, l, b, exec)?;
            if r.witness.is_some() || b >= WITNESS_SEARCH_LIMIT {
                break r;
            }
            b = (b * 4).min(WITNESS_SEARCH_LIMIT);
        };
        if report.witness.is_none() {
            report.verdict = EquivVerdict::CertifiedDistinct;
        }
        report.method = Method::InvariantBattery;
        report.battery = Some(battery);
        return Ok(report);
    }
    let mut sweep = compare_types_with(k, l, bound, exec)?;
    sweep.battery = Some(battery);
    if k.poly() == l.poly() {
        sweep.verdict = EquivVerdict::CertifiedEquivalent;
        sweep.method = Method::IdenticalPolynomial;
        return Ok(sweep);
    }
    let n = k.degree();
    if crate::exact::integer::is_prime_u64(n as u64) {
        let cert = perlis_certify(k, l)?;
        if let (EquivVerdict::CertifiedEquivalent, Some(w)) = (cert.verdict, sweep.witness) {
            return Err(Error::Inconsistency(format!("norm splits but decomposition types differ at {w}")));
        }
        sweep.verdict = cert.verdict;
        sweep.method = Method::Perlis;
        sweep.norm_factor_degrees = cert.norm_factor_degrees;
        return Ok(sweep);
    }
    if sweep.witness.is_none() && is_radical_family_pair(k.poly(), l.poly())? {
        sweep.verdict = EquivVerdict::CertifiedEquivalent;
        sweep.method = Method::RadicalFamily;
    }
    Ok(sweep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nf::make_field;

    fn field(c: &[i64]) -> NumberField {
        make_field(&IntPoly::from_i64(c)).unwrap()
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = IntPoly::from_i64(&[5, -3, 0, 7, -1]);
        let ys: Vec<BigInt> = (0..5).map(|x| p.eval(&BigInt::from(x))).collect();
        assert_eq!(interpolate_unit_grid(&ys), p);
    }

    #[test]
    fn norm_of_shift_zero_is_power() {
        let f = IntPoly::from_i64(&[-2, 0, 0, 1]);
        let g = IntPoly::from_i64(&[-3, 0, 0, 1]);
        assert_eq!(trager_norm(&f, &g, 0), g.pow(3));
    }

    #[test]
    fn gaussian_vs_minus_two() {
        let k = field(&[1, 0, 1]);
        let l = field(&[2, 0, 1]);
        let b = invariant_battery(&k, &l);
        assert!(b.degree_equal && !b.disc_equal);
        let r = compare_types(&k, &l, 20).unwrap();
        assert_eq!(r.verdict, EquivVerdict::Distinct);
        // 3 is inert in Q(i) and splits in Q(sqrt -2); 5 behaves the other way
        assert_eq!(r.witness, Some(3));
        let at5 = r.evidence.iter().find(|e| e.p == 5).unwrap();
        assert_eq!((at5.k_type.clone(), at5.l_type.clone()), (vec![1, 1], vec![2]));
        let r = compare_types(&k, &k, 50).unwrap();
        assert_eq!((r.verdict, r.mismatches()), (EquivVerdict::EquivalentUpToBound, 0));
    }

    #[test]
    fn cubic_certification() {
        let k = field(&[-2, 0, 0, 1]);
        let l = field(&[-3, 0, 0, 1]);
        assert_eq!(perlis_certify(&k, &k).unwrap().verdict, EquivVerdict::CertifiedEquivalent);
        let r = perlis_certify(&k, &l).unwrap();
        assert_eq!(r.verdict, EquivVerdict::CertifiedDistinct);
        assert_eq!(r.norm_factor_degrees, Some(vec![9]));
        let q = field(&[-2, 0, 0, 0, 1]);
        assert!(matches!(perlis_certify(&q, &q), Err(Error::Degree(_))));
        assert_eq!(perlis_certify(&k, &q).unwrap().verdict, EquivVerdict::CertifiedDistinct);
    }

    #[test]
    fn radical_family_recognition() {
        let f = IntPoly::from_i64(&[-3, 0, 0, 0, 0, 0, 0, 0, 1]);
        let g = IntPoly::from_i64(&[-48, 0, 0, 0, 0, 0, 0, 0, 1]);
        assert!(is_radical_family_pair(&f, &g).unwrap());
        assert!(is_radical_family_pair(&g, &f).unwrap());
        let h = IntPoly::from_i64(&[-12, 0, 0, 0, 0, 0, 0, 0, 1]);
        assert!(!is_radical_family_pair(&f, &h).unwrap());
        let quartic = IntPoly::from_i64(&[-3, 0, 0, 0, 1]);
        let quartic2 = IntPoly::from_i64(&[-12, 0, 0, 0, 1]);
        assert!(!is_radical_family_pair(&quartic, &quartic2).unwrap());
    }
}
