//! Permutations of `{0, …, m-1}` as image vectors, with parsing and printing
//! in 1-based disjoint-cycle notation.

use std::fmt;

use crate::error::{Error, Result};

/// `p[i]` is the image of `i`. Composition `a.compose(b)` applies `b` first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(m: usize) -> Self {
        Perm((0..m).collect())
    }

    /// Validates that `images` is a bijection of `0..len`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &v in &images {
            if v >= m || seen[v] {
                return Err(Error::Parse(format!("{images:?} is not a permutation")));
            }
            seen[v] = true;
        }
        Ok(Perm(images))
    }

    /// Builds a permutation of degree `m` from 0-based cycles.
    pub fn from_cycles(m: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..m).collect();
        let mut used = vec![false; m];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a >= m {
                    return Err(Error::Parse(format!("point {} exceeds degree {m}", a + 1)));
                }
                if used[a] {
                    return Err(Error::Parse(format!("point {} repeated in cycles", a + 1)));
                }
                used[a] = true;
                images[a] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&j| self.0[j]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Disjoint cycles (0-based), each starting at its smallest point,
    /// fixed points included as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let m = self.0.len();
        let mut seen = vec![false; m];
        let mut out = Vec::new();
        for start in 0..m {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.0[start];
            while j != start {
                seen[j] = true;
                cycle.push(j);
                j = self.0[j];
            }
            out.push(cycle);
        }
        out
    }

    /// Ascending cycle lengths.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable();
        t
    }

    pub fn order(&self) -> usize {
        self.cycles()
            .iter()
            .map(Vec::len)
            .fold(1, num_integer::lcm)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<Vec<usize>> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|v| (v + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses one permutation such as `(1 2 3)(4 5)`; `()` is the identity.
pub fn parse_perm(text: &str, degree: usize) -> Result<Perm> {
    let gens = parse_generators(text, degree)?;
    match gens.len() {
        1 => Ok(gens.into_iter().next().unwrap()),
        _ => Err(Error::Parse(format!("expected one permutation in {text:?}"))),
    }
}

/// Parses whitespace-separated permutations. Cycles written back to back
/// (`(1 2)(3 4)`) belong to one permutation; whitespace between `)` and `(`
/// starts the next one.
pub fn parse_generators(text: &str, degree: usize) -> Result<Vec<Perm>> {
    let mut gens = Vec::new();
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut current: Option<Vec<usize>> = None;
    let mut token = String::new();
    let mut chars = text.chars().peekable();
    let mut started = false;
    let flush_token = |token: &mut String, cur: &mut Vec<usize>| -> Result<()> {
        if token.is_empty() {
            return Ok(());
        }
        let v: usize = token
            .parse()
            .map_err(|_| Error::Parse(format!("bad point {token:?}")))?;
        if v == 0 || v > degree {
            return Err(Error::Parse(format!("point {v} outside 1..={degree}")));
        }
        cur.push(v - 1);
        token.clear();
        Ok(())
    };
    while let Some(c) = chars.next() {
        match c {
            '(' => {
                if current.is_some() {
                    return Err(Error::Parse("nested '('".into()));
                }
                current = Some(Vec::new());
                started = true;
            }
            ')' => {
                let mut cur = current
                    .take()
                    .ok_or_else(|| Error::Parse("unmatched ')'".into()))?;
                flush_token(&mut token, &mut cur)?;
                if !cur.is_empty() {
                    cycles.push(cur);
                }
                if chars.peek() != Some(&'(') {
                    gens.push(Perm::from_cycles(degree, &cycles)?);
                    cycles.clear();
                    started = false;
                }
            }
            c if c.is_whitespace() || c == ',' => {
                if let Some(cur) = current.as_mut() {
                    flush_token(&mut token, cur)?;
                }
            }
            c if c.is_ascii_digit() => {
                if current.is_none() {
                    return Err(Error::Parse(format!("digit outside a cycle in {text:?}")));
                }
                token.push(c);
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
        }
    }
    if current.is_some() || started {
        return Err(Error::Parse(format!("unterminated cycle in {text:?}")));
    }
    Ok(gens)
}
