//! `key = value` input files for fields, triples and permutation groups.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::IntPoly;
use crate::gassmann::{parse_generators, Perm};
use crate::nf::{make_field, places_over, NumberField};
use crate::sarith::{Csp, GroupSpec, Triple};

/// Parses `key = value` lines; `#` starts a comment. Keys outside `allowed`
/// and repeated keys are rejected.
pub fn parse_kv(text: &str, allowed: &[&str]) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("line {}: expected key = value", lineno + 1)))?;
        let key = key.trim();
        if !allowed.contains(&key) {
            return Err(Error::Parse(format!("line {}: unknown key {key:?}", lineno + 1)));
        }
        if out.insert(key.to_string(), value.trim().to_string()).is_some() {
            return Err(Error::Parse(format!("line {}: duplicate key {key:?}", lineno + 1)));
        }
    }
    Ok(out)
}

pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn required<'a>(kv: &'a BTreeMap<String, String>, key: &str) -> Result<&'a str> {
    kv.get(key)
        .map(String::as_str)
        .ok_or_else(|| Error::Parse(format!("missing key {key:?}")))
}

/// Comma-separated integer coefficients in ascending degree.
pub fn parse_poly(text: &str) -> Result<IntPoly> {
    let coeffs = text
        .split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("bad coefficient {t:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if coeffs.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    Ok(IntPoly::new(coeffs))
}

pub fn field_from_str(text: &str) -> Result<NumberField> {
    let kv = parse_kv(text, &["poly"])?;
    make_field(&parse_poly(required(&kv, "poly")?)?)
}

pub fn load_field(path: &Path) -> Result<NumberField> {
    field_from_str(&read(path)?)
}

fn parse_usize(t: &str, what: &str) -> Result<usize> {
    t.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad {what} {t:?}")))
}

fn parse_group(text: &str, forms: Option<Vec<(usize, usize)>>) -> Result<GroupSpec> {
    let parts: Vec<&str> = text.split_whitespace().collect();
    match parts.as_slice() {
        ["SL", n] => {
            if forms.is_some() {
                return Err(Error::Parse("real_forms only apply to Spin".into()));
            }
            GroupSpec::sl(parse_usize(n, "SL rank")?)
        }
        ["Spin", p, q] => GroupSpec::spin(parse_usize(p, "Spin p")?, parse_usize(q, "Spin q")?, forms),
        _ => Err(Error::Parse(format!("group must be \"SL n\" or \"Spin p q\", got {text:?}"))),
    }
}

/// `(p1,q1) (p2,q2) …`
fn parse_forms(text: &str) -> Result<Vec<(usize, usize)>> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Ok(Vec::new());
    }
    let inner = compact
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("bad real_forms {text:?}")))?;
    inner
        .split(")(")
        .map(|pair| {
            let (a, b) = pair
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("bad real form {pair:?}")))?;
            Ok((parse_usize(a, "signature")?, parse_usize(b, "signature")?))
        })
        .collect()
}

/// `p:ordinal` tokens, plus `p:*` for every place over `p`.
fn parse_s(text: &str, field: &NumberField) -> Result<Vec<(u64, usize)>> {
    let mut out = Vec::new();
    for tok in text.split_whitespace() {
        let (p, ord) = tok
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("bad place token {tok:?}")))?;
        let p: u64 = p
            .parse()
            .map_err(|_| Error::Parse(format!("bad prime in {tok:?}")))?;
        if ord == "*" {
            let all = places_over(field, p).map_err(|e| Error::Place(format!("{tok}: {e}")))?;
            out.extend(all.into_iter().map(|v| (p, v.ordinal)));
        } else {
            out.push((p, parse_usize(ord, "ordinal")?));
        }
    }
    Ok(out)
}

fn parse_local_ranks(text: &str) -> Result<BTreeMap<(u64, usize), usize>> {
    let mut out = BTreeMap::new();
    for tok in text.split_whitespace() {
        let parts: Vec<&str> = tok.split(':').collect();
        let [p, ord, r] = parts.as_slice() else {
            return Err(Error::Parse(format!("local_rank token {tok:?} must be p:ordinal:r")));
        };
        let p: u64 = p
            .parse()
            .map_err(|_| Error::Parse(format!("bad prime in {tok:?}")))?;
        out.insert((p, parse_usize(ord, "ordinal")?), parse_usize(r, "rank")?);
    }
    Ok(out)
}

fn parse_csp(text: &str) -> Result<Csp> {
    match text {
        "auto" => Ok(Csp::Auto),
        "assert" => Ok(Csp::Asserted),
        "unknown" => Ok(Csp::Unknown),
        other => Err(Error::Parse(format!("csp must be auto, assert or unknown, got {other:?}"))),
    }
}

pub fn triple_from_str(text: &str) -> Result<Triple> {
    let kv = parse_kv(text, &["field.poly", "group", "real_forms", "S", "csp", "local_rank"])?;
    let field = make_field(&parse_poly(required(&kv, "field.poly")?)?)?;
    let forms = kv.get("real_forms").map(|t| parse_forms(t)).transpose()?;
    let group = parse_group(required(&kv, "group")?, forms)?;
    let s = parse_s(kv.get("S").map(String::as_str).unwrap_or(""), &field)?;
    let csp = parse_csp(kv.get("csp").map(String::as_str).unwrap_or("auto"))?;
    let ranks = parse_local_ranks(kv.get("local_rank").map(String::as_str).unwrap_or(""))?;
    Triple::new(field, group, &s, csp, ranks)
}

pub fn load_triple(path: &Path) -> Result<Triple> {
    triple_from_str(&read(path)?)
}

/// A group with two subgroups, each given by generators.
#[derive(Debug, Clone)]
pub struct GassmannFile {
    pub degree: usize,
    pub group: Vec<Perm>,
    pub u: Vec<Perm>,
    pub v: Vec<Perm>,
}

pub fn gassmann_from_str(text: &str) -> Result<GassmannFile> {
    let kv = parse_kv(text, &["degree", "group", "U", "V"])?;
    let degree = parse_usize(required(&kv, "degree")?, "degree")?;
    Ok(GassmannFile {
        degree,
        group: parse_generators(required(&kv, "group")?, degree)?,
        u: parse_generators(required(&kv, "U")?, degree)?,
        v: parse_generators(required(&kv, "V")?, degree)?,
    })
}

pub fn load_gassmann(path: &Path) -> Result<GassmannFile> {
    gassmann_from_str(&read(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kv_rules() {
        let kv = parse_kv("# c\npoly = 1, 0, 1  # trailing\n", &["poly"]).unwrap();
        assert_eq!(kv["poly"], "1, 0, 1");
        assert!(parse_kv("color = red", &["poly"]).is_err());
        assert!(parse_kv("poly = 1\npoly = 2", &["poly"]).is_err());
        assert!(parse_kv("poly", &["poly"]).is_err());
    }

    #[test]
    fn forms_and_tokens() {
        assert_eq!(parse_forms("(3,2) (3, 2)").unwrap(), vec![(3, 2), (3, 2)]);
        assert!(parse_forms("3,2").is_err());
        let t = triple_from_str("field.poly = 1,0,1\ngroup = SL 3\nS = 2:0 5:*\n").unwrap();
        assert_eq!(t.finite_s().len(), 3);
        let bad = triple_from_str("field.poly = 1,0,1\ngroup = SL 3\nS = 3:1\n");
        assert!(matches!(bad, Err(Error::Place(_))));
        let t = triple_from_str("field.poly = -2,0,1\ngroup = Spin 3 2\nreal_forms = (3,2) (3,2)\n").unwrap();
        assert_eq!(t.finite_s().len(), 0);
        assert!(matches!(
            triple_from_str("field.poly = -2,0,1\ngroup = Spin 3 2\nreal_forms = (3,2)\n"),
            Err(Error::Form(_))
        ));
    }
}
