//! S-arithmetic triples `(k, G, S)`: S-rank, p-algebras, the
//! profinite-commensurability condition battery and ℓ²-Betti profiles.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::equiv::{arith_equiv, EquivVerdict};
use crate::error::{Error, Result};
use crate::exact::integer::{is_prime_u64, primes_up_to};
use crate::nf::{divides_disc, places_over, NumberField, Place};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `SL(n)`, `n >= 2`.
    Sl(usize),
    /// `Spin(p, q)`, `p + q >= 3`, `p + q != 4`.
    Spin(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    pub family: Family,
    /// Signature at each real place, in the field's real-place order (Spin only).
    pub real_forms: Option<Vec<(usize, usize)>>,
}

impl GroupSpec {
    pub fn sl(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Form(format!("SL({n}) is not simple")));
        }
        Ok(GroupSpec { family: Family::Sl(n), real_forms: None })
    }

    pub fn spin(p: usize, q: usize, real_forms: Option<Vec<(usize, usize)>>) -> Result<Self> {
        let m = p + q;
        if m < 3 || m == 4 {
            return Err(Error::Form(format!("Spin({p},{q}) is not absolutely almost simple")));
        }
        if let Some(forms) = &real_forms {
            if let Some(&(a, b)) = forms.iter().find(|&&(a, b)| a + b != m) {
                return Err(Error::Form(format!("real form ({a},{b}) does not have dimension {m}")));
            }
        }
        Ok(GroupSpec { family: Family::Spin(p, q), real_forms })
    }

    pub fn dim(&self) -> usize {
        match self.family {
            Family::Sl(n) => n * n - 1,
            Family::Spin(p, q) => (p + q) * (p + q - 1) / 2,
        }
    }

    pub fn rank_c(&self) -> usize {
        match self.family {
            Family::Sl(n) => n - 1,
            Family::Spin(p, q) => (p + q) / 2,
        }
    }

    fn forms(&self) -> Result<&[(usize, usize)]> {
        self.real_forms
            .as_deref()
            .ok_or_else(|| Error::Form("Spin group needs real_forms".into()))
    }

    /// Rank over `R` at each real place.
    pub fn real_ranks(&self, r: usize) -> Result<Vec<usize>> {
        match self.family {
            Family::Sl(n) => Ok(vec![n - 1; r]),
            Family::Spin(..) => Ok(self.forms()?.iter().map(|&(a, b)| a.min(b)).collect()),
        }
    }

    /// Default local rank at a finite place: the absolute rank when the
    /// family is known to be split there, otherwise `None`.
    fn default_finite_rank(&self) -> Option<usize> {
        match self.family {
            Family::Sl(n) => Some(n - 1),
            Family::Spin(p, q) => {
                let split = |a: usize, b: usize| a.abs_diff(b) <= 1;
                let forms_ok = match &self.real_forms {
                    Some(f) => f.iter().all(|&(a, b)| (a, b) == (p, q)),
                    None => false,
                };
                (split(p, q) && forms_ok).then(|| self.rank_c())
            }
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Sl(n) => write!(f, "SL {n}"),
            Family::Spin(p, q) => write!(f, "Spin {p} {q}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Csp {
    Asserted,
    Auto,
    Unknown,
}

impl fmt::Display for Csp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Csp::Asserted => "ASSERTED",
            Csp::Auto => "AUTO",
            Csp::Unknown => "UNKNOWN",
        })
    }
}

/// `(k, G, S)` with the infinite places implicitly in `S`.
#[derive(Debug, Clone)]
pub struct Triple {
    pub field: NumberField,
    pub group: GroupSpec,
    finite_s: Vec<Place>,
    pub csp: Csp,
    local_rank: BTreeMap<(u64, usize), usize>,
}

impl Triple {
    /// Resolves `finite_s` references `(p, ordinal)` against `places_over`.
    pub fn new(
        field: NumberField,
        group: GroupSpec,
        finite_s: &[(u64, usize)],
        csp: Csp,
        local_rank: BTreeMap<(u64, usize), usize>,
    ) -> Result<Self> {
        if let (Family::Spin(..), Some(forms)) = (group.family, &group.real_forms) {
            let r = field.signature().0;
            if forms.len() != r {
                return Err(Error::Form(format!("{} real forms given for {r} real places", forms.len())));
            }
        }
        let mut resolved: BTreeSet<Place> = BTreeSet::new();
        for &(p, ord) in finite_s {
            let place = resolve(&field, p, ord)?;
            resolved.insert(place);
        }
        for &(p, ord) in local_rank.keys() {
            if !resolved.iter().any(|v| v.p == p && v.ordinal == ord) {
                return Err(Error::Place(format!("local_rank override {p}:{ord} is not in S")));
            }
        }
        Ok(Triple { field, group, finite_s: resolved.into_iter().collect(), csp, local_rank })
    }

    /// Finite places of `S`, ordered by `(p, ordinal)`.
    pub fn finite_s(&self) -> &[Place] {
        &self.finite_s
    }

    pub fn s_at(&self, p: u64) -> Vec<Place> {
        self.finite_s.iter().filter(|v| v.p == p).copied().collect()
    }

    pub fn s_primes(&self) -> BTreeSet<u64> {
        self.finite_s.iter().map(|v| v.p).collect()
    }

    /// Total number of places in `S`, infinite ones included.
    pub fn s_size(&self) -> usize {
        let (r, s) = self.field.signature();
        r + s + self.finite_s.len()
    }

    pub fn local_rank(&self, v: &Place) -> Result<usize> {
        if let Some(&r) = self.local_rank.get(&(v.p, v.ordinal)) {
            return Ok(r);
        }
        self.group.default_finite_rank().ok_or_else(|| {
            Error::Form(format!(
                "local rank of {} at {}:{} needs an override",
                self.group, v.p, v.ordinal
            ))
        })
    }
}

fn resolve(field: &NumberField, p: u64, ord: usize) -> Result<Place> {
    if !is_prime_u64(p) {
        return Err(Error::Place(format!("{p}:{ord}: {p} is not prime")));
    }
    places_over(field, p)?
        .into_iter()
        .find(|v| v.ordinal == ord)
        .ok_or_else(|| Error::Place(format!("no place {p}:{ord}")))
}

pub fn s_rank(t: &Triple) -> Result<usize> {
    let (r, s) = t.field.signature();
    let real: usize = t.group.real_ranks(r)?.iter().sum();
    let complex = s * t.group.rank_c();
    let mut finite = 0;
    for v in t.finite_s() {
        finite += t.local_rank(v)?;
    }
    Ok(real + complex + finite)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HigherRank {
    pub pass: bool,
    pub s_rank: usize,
    pub reasons: Vec<String>,
}

pub fn higher_rank_check(t: &Triple) -> Result<HigherRank> {
    let rank = s_rank(t)?;
    let mut reasons = Vec::new();
    if rank < 2 {
        reasons.push(format!("S-rank {rank} < 2"));
    }
    for v in t.finite_s() {
        if t.local_rank(v)? == 0 {
            reasons.push(format!("place {}:{} has local rank 0", v.p, v.ordinal));
        }
    }
    Ok(HigherRank { pass: reasons.is_empty(), s_rank: rank, reasons })
}

/// Simple-ideal dimensions `dim G * e_v * f_v` over places `v | p` outside `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PAlgebraInvariant {
    pub p: u64,
    pub dims: Vec<usize>,
}

impl fmt::Display for PAlgebraInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d: Vec<String> = self.dims.iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", d.join(","))
    }
}

pub fn p_algebra_invariant(t: &Triple, p: u64) -> Result<PAlgebraInvariant> {
    let in_s = t.s_at(p);
    let dim = t.group.dim();
    let mut dims: Vec<usize> = places_over(&t.field, p)?
        .into_iter()
        .filter(|v| !in_s.iter().any(|w| w.ordinal == v.ordinal))
        .map(|v| dim * v.e * v.f)
        .collect();
    dims.sort_unstable();
    Ok(PAlgebraInvariant { p, dims })
}

/// Whether `G` is isotropic over `k`.
pub fn isotropic_over_k(spec: &GroupSpec, _k: &NumberField) -> Result<bool> {
    match spec.family {
        Family::Sl(_) => Ok(true),
        Family::Spin(p, q) => {
            if p + q < 5 {
                return Err(Error::Form(format!(
                    "isotropy of a {}-dimensional form is not decided here",
                    p + q
                )));
            }
            Ok(spec.forms()?.iter().all(|&(a, b)| a > 0 && b > 0))
        }
    }
}

/// AUTO becomes ASSERTED for isotropic groups of higher rank.
pub fn resolve_csp(t: &Triple) -> Result<Csp> {
    Ok(match t.csp {
        Csp::Auto => {
            let iso = isotropic_over_k(&t.group, &t.field).unwrap_or(false);
            if iso && higher_rank_check(t)?.pass {
                Csp::Asserted
            } else {
                Csp::Unknown
            }
        }
        other => other,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condition {
    pub name: &'static str,
    pub status: Status,
    pub evidence: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Commensurable,
    NotCommensurable,
    Unknown,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Commensurable => "COMMENSURABLE",
            Outcome::NotCommensurable => "NOT_COMMENSURABLE",
            Outcome::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub outcome: Outcome,
    pub conditions: Vec<Condition>,
    /// Present when a CSP-unknown side prevented a negative outcome.
    pub csp_caveat: Option<String>,
}

impl Verdict {
    pub fn condition(&self, name: &str) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.name == name)
    }
}

/// Primes at which the necessary conditions are compared: `p <= bound`
/// together with the primes under `S` and `T`.
fn check_primes(a: &Triple, b: &Triple, bound: u64) -> Vec<u64> {
    let mut set: BTreeSet<u64> = primes_up_to(bound).into_iter().collect();
    set.extend(a.s_primes());
    set.extend(b.s_primes());
    set.into_iter().collect()
}

fn residue_degrees(places: &[Place]) -> Vec<usize> {
    let mut fs: Vec<usize> = places.iter().map(|v| v.f).collect();
    fs.sort_unstable();
    fs
}

fn is_unramified(t: &Triple, p: u64) -> bool {
    !divides_disc(&t.field, p)
}

/// Evaluates the necessary conditions for profinite commensurability.
/// Both triples must be of higher rank.
pub fn check_necessary(a: &Triple, b: &Triple, bound: u64) -> Result<Verdict> {
    for (side, t) in [("first", a), ("second", b)] {
        let hr = higher_rank_check(t)?;
        if !hr.pass {
            return Err(Error::HigherRank(format!("{side} triple: {}", hr.reasons.join("; "))));
        }
    }
    let primes = check_primes(a, b, bound);
    let mut conditions = Vec::new();

    let (da, db) = (a.group.dim(), b.group.dim());
    let (na, nb) = (a.field.degree(), b.field.degree());
    conditions.push(Condition {
        name: "dim_or_degree",
        status: if da == db && na == nb { Status::Pass } else { Status::Fail },
        evidence: format!("dim {da} vs {db}, degree {na} vs {nb}"),
    });

    let report = arith_equiv(&a.field, &b.field, bound)?;
    let mut ev = format!("{} via {}", report.verdict, report.method);
    if let Some(w) = report.witness {
        ev.push_str(&format!(", witness {w}"));
    }
    conditions.push(Condition {
        name: "arith_equiv",
        status: if report.verdict.is_equivalent() { Status::Pass } else { Status::Fail },
        evidence: ev,
    });

    let unrelated = |t: &Triple| -> BTreeSet<u64> {
        let sp = t.s_primes();
        primes.iter().copied().filter(|p| !sp.contains(p)).collect()
    };
    let (ua, ub) = (unrelated(a), unrelated(b));
    let diff = ua.symmetric_difference(&ub).next().copied();
    conditions.push(Condition {
        name: "unrelated_primes",
        status: if diff.is_none() { Status::Pass } else { Status::Fail },
        evidence: match diff {
            Some(p) => format!("p={p} is unrelated on one side only"),
            None => format!("{} unrelated primes agree", ua.len()),
        },
    });

    let mut bij_fail = None;
    let mut bij_checked = 0;
    for &p in a.s_primes().union(&b.s_primes()) {
        if !(is_unramified(a, p) && is_unramified(b, p)) {
            continue;
        }
        bij_checked += 1;
        let (fa, fb) = (residue_degrees(&a.s_at(p)), residue_degrees(&b.s_at(p)));
        if fa != fb {
            bij_fail = Some(format!("p={p} residue degrees {fa:?} vs {fb:?}"));
            break;
        }
    }
    conditions.push(Condition {
        name: "residue_bijection",
        status: match (&bij_fail, bij_checked) {
            (Some(_), _) => Status::Fail,
            (None, 0) => Status::Skip,
            (None, _) => Status::Pass,
        },
        evidence: bij_fail.unwrap_or_else(|| format!("{bij_checked} unramified primes in S or T")),
    });

    let mut alg_fail = None;
    for &p in &primes {
        let (ia, ib) = (p_algebra_invariant(a, p)?, p_algebra_invariant(b, p)?);
        if ia != ib {
            alg_fail = Some(format!("p={p} {ia} vs {ib}"));
            break;
        }
    }
    conditions.push(Condition {
        name: "p_algebra",
        status: if alg_fail.is_some() { Status::Fail } else { Status::Pass },
        evidence: alg_fail.unwrap_or_else(|| format!("{} primes agree", primes.len())),
    });

    let failed = conditions.iter().any(|c| c.status == Status::Fail);
    let (ca, cb) = (resolve_csp(a)?, resolve_csp(b)?);
    let (outcome, csp_caveat) = if !failed {
        (Outcome::Unknown, None)
    } else if ca == Csp::Asserted && cb == Csp::Asserted {
        (Outcome::NotCommensurable, None)
    } else {
        (
            Outcome::Unknown,
            Some(format!("congruence subgroup property not established (first {ca}, second {cb})")),
        )
    };
    Ok(Verdict { outcome, conditions, csp_caveat })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sufficient {
    pub holds: bool,
    pub reasons: Vec<String>,
}

fn ramified_primes(t: &Triple) -> Vec<u64> {
    let d = t.field.field_disc();
    if t.field.degree() < 2 {
        return Vec::new();
    }
    crate::exact::integer::factor_integer(d)
        .map(|f| f.into_iter().filter_map(|(p, _)| u64::try_from(p).ok()).collect())
        .unwrap_or_default()
}

/// The sufficient construction: equivalent fields, identical isotropic
/// groups, `S` containing every place over a ramified prime, and matching
/// residue degrees at the remaining primes.
pub fn check_sufficient(a: &Triple, b: &Triple, bound: u64) -> Result<Sufficient> {
    let mut reasons = Vec::new();
    let report = arith_equiv(&a.field, &b.field, bound)?;
    if report.verdict != EquivVerdict::CertifiedEquivalent {
        reasons.push(format!("fields are {} rather than certified equivalent", report.verdict));
    }
    let forms = |g: &GroupSpec| {
        let mut f = g.real_forms.clone().unwrap_or_default();
        f.sort_unstable();
        f
    };
    if a.group.family != b.group.family || forms(&a.group) != forms(&b.group) {
        reasons.push(format!("groups differ: {} vs {}", a.group, b.group));
    }
    for (side, t) in [("first", a), ("second", b)] {
        if !isotropic_over_k(&t.group, &t.field).unwrap_or(false) {
            reasons.push(format!("{side} group is not known to be isotropic"));
        }
        for p in ramified_primes(t) {
            let all = places_over(&t.field, p)?.len();
            if t.s_at(p).len() != all {
                reasons.push(format!("{side} S misses a place over ramified {p}"));
            }
        }
    }
    for &p in a.s_primes().union(&b.s_primes()) {
        if !(is_unramified(a, p) && is_unramified(b, p)) {
            continue;
        }
        let (fa, fb) = (residue_degrees(&a.s_at(p)), residue_degrees(&b.s_at(p)));
        if fa != fb {
            reasons.push(format!("no residue-degree bijection at {p}: {fa:?} vs {fb:?}"));
        }
    }
    Ok(Sufficient { holds: reasons.is_empty(), reasons })
}

/// Necessary conditions first; if none fails, the sufficient construction
/// may upgrade the outcome to COMMENSURABLE.
pub fn decide(a: &Triple, b: &Triple, bound: u64) -> Result<Verdict> {
    let mut v = check_necessary(a, b, bound)?;
    let failed = v.conditions.iter().any(|c| c.status == Status::Fail);
    if failed {
        v.conditions.push(Condition { name: "sufficient", status: Status::Skip, evidence: "a necessary condition failed".into() });
        return Ok(v);
    }
    let suff = check_sufficient(a, b, bound)?;
    if suff.holds {
        v.outcome = Outcome::Commensurable;
        v.conditions.push(Condition { name: "sufficient", status: Status::Pass, evidence: "construction matched".into() });
    } else {
        v.conditions.push(Condition { name: "sufficient", status: Status::Fail, evidence: suff.reasons.join("; ") });
    }
    Ok(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum L2Kind {
    AllZero,
    Concentrated,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct L2Profile {
    pub kind: L2Kind,
    pub degree: Option<usize>,
    pub euler_sign: i8,
    /// Finite places contribute through their Steinberg degree; the
    /// residue-field-size hypothesis behind that is reported, not checked.
    pub finite_place_note: bool,
}

fn delta_and_dim(spec: &GroupSpec, r: usize) -> Result<Vec<(usize, usize)>> {
    match spec.family {
        Family::Sl(n) => Ok(vec![((n - 1) - n / 2, n * (n + 1) / 2 - 1); r]),
        Family::Spin(..) => Ok(spec
            .forms()?
            .iter()
            .map(|&(a, b)| {
                if a == 0 || b == 0 {
                    (0, 0)
                } else {
                    ((a + b) / 2 - a / 2 - b / 2, a * b)
                }
            })
            .collect()),
    }
}

pub fn l2_profile(t: &Triple) -> Result<L2Profile> {
    let (r, s) = t.field.signature();
    let factors = delta_and_dim(&t.group, r)?;
    let note = !t.finite_s().is_empty();
    let zero = L2Profile { kind: L2Kind::AllZero, degree: None, euler_sign: 0, finite_place_note: note };
    if s > 0 || factors.iter().any(|&(delta, _)| delta > 0) {
        return Ok(zero);
    }
    debug_assert!(factors.iter().all(|&(_, d)| d % 2 == 0));
    let mut degree: usize = factors.iter().map(|&(_, d)| d / 2).sum();
    for v in t.finite_s() {
        degree += t.local_rank(v)?;
    }
    Ok(L2Profile {
        kind: L2Kind::Concentrated,
        degree: Some(degree),
        euler_sign: if degree % 2 == 0 { 1 } else { -1 },
        finite_place_note: note,
    })
}
