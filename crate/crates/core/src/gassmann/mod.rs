//! Finite permutation groups, coset actions and permutation characters.
//!
//! Two subgroups `U, V` of `G` with equal permutation characters form a
//! Gassmann triple; the cycle type of `g` on `G/U` then plays the role of a
//! decomposition type.

pub mod perm;

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::par::{self, Execution};

pub use perm::{parse_generators, parse_perm, Perm};

pub const DEFAULT_CAP: usize = 10_000;

#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    /// Breadth-first closure order: identity first.
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        PermGroup::with_cap(degree, generators, DEFAULT_CAP)
    }

    pub fn with_cap(degree: usize, generators: Vec<Perm>, cap: usize) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::Parse(format!("generator {g} has degree {} not {degree}", g.degree())));
        }
        let id = Perm::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &generators {
                let h = g.compose(&elements[i]);
                if index.contains_key(&h) {
                    continue;
                }
                if elements.len() == cap {
                    return Err(Error::GroupTooLarge(format!("more than {cap} elements")));
                }
                index.insert(h.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(h);
            }
        }
        Ok(PermGroup { degree, generators, elements, index })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.index.contains_key(g)
    }

    pub fn position(&self, g: &Perm) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// The subgroup generated by `gens`, which must lie in `self`.
    pub fn subgroup(&self, gens: &[Perm]) -> Result<PermGroup> {
        if let Some(g) = gens.iter().find(|g| !self.contains(g)) {
            return Err(Error::ElementNotInGroup(g.to_string()));
        }
        PermGroup::with_cap(self.degree, gens.to_vec(), self.order() + 1)
    }
}

/// Left action of `G` on the cosets `gU`.
#[derive(Debug, Clone)]
pub struct CosetAction<'g> {
    parent: &'g PermGroup,
    subgroup: PermGroup,
    members: HashSet<Perm>,
    /// First element (in closure order) of each coset.
    reps: Vec<usize>,
    /// Coset number of each parent element.
    coset_of: Vec<usize>,
}

impl<'g> CosetAction<'g> {
    pub fn new(parent: &'g PermGroup, subgroup_gens: &[Perm]) -> Result<Self> {
        let subgroup = parent.subgroup(subgroup_gens)?;
        let members: HashSet<Perm> = subgroup.elements().iter().cloned().collect();
        let mut coset_of = vec![usize::MAX; parent.order()];
        let mut reps = Vec::new();
        for (i, g) in parent.elements().iter().enumerate() {
            if coset_of[i] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(i);
            for u in subgroup.elements() {
                let j = parent.index[&g.compose(u)];
                coset_of[j] = c;
            }
        }
        Ok(CosetAction { parent, subgroup, members, reps, coset_of })
    }

    pub fn parent(&self) -> &PermGroup {
        self.parent
    }

    pub fn subgroup(&self) -> &PermGroup {
        &self.subgroup
    }

    pub fn num_cosets(&self) -> usize {
        self.reps.len()
    }

    /// Canonical representatives, one per coset.
    pub fn representatives(&self) -> Vec<&Perm> {
        self.reps.iter().map(|&i| &self.parent.elements[i]).collect()
    }

    fn check(&self, g: &Perm) -> Result<()> {
        if self.parent.contains(g) {
            Ok(())
        } else {
            Err(Error::ElementNotInGroup(g.to_string()))
        }
    }

    /// `g` acting on coset numbers.
    pub fn act(&self, g: &Perm, coset: usize) -> Result<usize> {
        self.check(g)?;
        let r = &self.parent.elements[self.reps[coset]];
        Ok(self.coset_of[self.parent.index[&g.compose(r)]])
    }

    /// The permutation of `G/U` induced by `g`.
    pub fn coset_perm(&self, g: &Perm) -> Result<Perm> {
        self.check(g)?;
        let images = (0..self.num_cosets())
            .map(|c| {
                let r = &self.parent.elements[self.reps[c]];
                self.coset_of[self.parent.index[&g.compose(r)]]
            })
            .collect();
        Perm::from_images(images)
    }

    /// Full `element x coset -> coset` table in parent closure order.
    pub fn action_table(&self) -> Vec<Vec<usize>> {
        self.parent
            .elements()
            .iter()
            .map(|g| self.coset_perm(g).expect("parent element").images().to_vec())
            .collect()
    }
}

/// Number of cosets `rU` with `g rU = rU`, i.e. `r^-1 g r ∈ U`.
pub fn perm_character(a: &CosetAction<'_>, g: &Perm) -> Result<usize> {
    a.check(g)?;
    Ok(a.representatives()
        .into_iter()
        .filter(|r| a.members.contains(&r.inverse().compose(g).compose(r)))
        .count())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GassmannResult {
    pub equal: bool,
    /// First element (closure order) where the characters differ.
    pub witness: Option<Perm>,
    /// Character values at the witness on `G/U` and `G/V`.
    pub values: Option<(usize, usize)>,
}

pub fn gassmann_equal(g: &PermGroup, u_gens: &[Perm], v_gens: &[Perm]) -> Result<GassmannResult> {
    gassmann_equal_with(g, u_gens, v_gens, Execution::default())
}

pub fn gassmann_equal_with(
    g: &PermGroup,
    u_gens: &[Perm],
    v_gens: &[Perm],
    exec: Execution,
) -> Result<GassmannResult> {
    let au = CosetAction::new(g, u_gens)?;
    let av = CosetAction::new(g, v_gens)?;
    let values = par::map(exec, g.elements(), |x| -> Result<(usize, usize)> {
        Ok((perm_character(&au, x)?, perm_character(&av, x)?))
    });
    for (x, v) in g.elements().iter().zip(values) {
        let (a, b) = v?;
        if a != b {
            return Ok(GassmannResult { equal: false, witness: Some(x.clone()), values: Some((a, b)) });
        }
    }
    Ok(GassmannResult { equal: true, witness: None, values: None })
}

/// Checks that every `g` has the same cycle type on `G/U` and `G/V`.
pub fn gassmann_implies_types(g: &PermGroup, u_gens: &[Perm], v_gens: &[Perm]) -> Result<bool> {
    gassmann_implies_types_with(g, u_gens, v_gens, Execution::default())
}

pub fn gassmann_implies_types_with(
    g: &PermGroup,
    u_gens: &[Perm],
    v_gens: &[Perm],
    exec: Execution,
) -> Result<bool> {
    let au = CosetAction::new(g, u_gens)?;
    let av = CosetAction::new(g, v_gens)?;
    let agree = par::map(exec, g.elements(), |x| -> Result<bool> {
        Ok(au.coset_perm(x)?.cycle_type() == av.coset_perm(x)?.cycle_type())
    });
    for a in agree {
        if !a? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Fixed-point counts `s -> 1^G_U(g^s)` for `s = 1..=n`.
pub fn frobenius_fix_counts(a: &CosetAction<'_>, g: &Perm) -> Result<BTreeMap<usize, usize>> {
    let n = a.num_cosets();
    let mut out = BTreeMap::new();
    let mut power = Perm::identity(g.degree());
    for s in 1..=n {
        power = g.compose(&power);
        out.insert(s, perm_character(a, &power)?);
    }
    Ok(out)
}

/// Forward map: fixed points of `g^s` for a permutation of cycle type `fs`.
pub fn fix_counts_of_cycle_type(fs: &[usize], max_s: usize) -> BTreeMap<usize, usize> {
    (1..=max_s)
        .map(|s| (s, fs.iter().filter(|&&f| s % f == 0).sum()))
        .collect()
}

/// Recovers the cycle type `{f_i}` of a permutation of `n` points from
/// `fix_counts[s] = Σ_{f_i | s} f_i`, solving for the number of `s`-cycles in
/// increasing `s`. An absent `s` means no cycles of length exactly `s`.
pub fn decomposition_from_frobenius(
    fix_counts: &BTreeMap<usize, usize>,
    n: usize,
) -> Result<Vec<usize>> {
    let max_s = fix_counts.keys().next_back().copied().unwrap_or(0).max(n);
    let mut cycles = vec![0usize; max_s + 1];
    for s in 1..=max_s {
        let below: usize = (1..s).filter(|d| s % d == 0).map(|d| d * cycles[d]).sum();
        let Some(&count) = fix_counts.get(&s) else { continue };
        if count < below || (count - below) % s != 0 {
            return Err(Error::Inconsistency(format!(
                "fixed-point count {count} at s = {s} is not reachable"
            )));
        }
        cycles[s] = (count - below) / s;
    }
    let total: usize = cycles.iter().enumerate().map(|(s, c)| s * c).sum();
    if total != n {
        return Err(Error::Inconsistency(format!("cycle lengths sum to {total}, not {n}")));
    }
    Ok(cycles
        .iter()
        .enumerate()
        .flat_map(|(s, &c)| std::iter::repeat_n(s, c))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(text: &str, m: usize) -> Vec<Perm> {
        parse_generators(text, m).unwrap()
    }

    #[test]
    fn s3_point_stabilizer() {
        let g = PermGroup::new(3, gens("(1 2 3) (1 2)", 3)).unwrap();
        assert_eq!(g.order(), 6);
        let a = CosetAction::new(&g, &gens("(2 3)", 3)).unwrap();
        assert_eq!(a.num_cosets(), 3);
        assert_eq!(perm_character(&a, &Perm::identity(3)).unwrap(), 3);
        assert_eq!(perm_character(&a, &parse_perm("(1 2)", 3).unwrap()).unwrap(), 1);
        let burnside: usize = g.elements().iter().map(|x| perm_character(&a, x).unwrap()).sum();
        assert_eq!(burnside, g.order());
        let outside = parse_perm("(1 2)", 4).unwrap();
        assert!(matches!(perm_character(&a, &outside), Err(Error::ElementNotInGroup(_))));
    }

    #[test]
    fn klein_four() {
        let k = gens("(1 2)(3 4) (1 3)(2 4)", 4);
        let g = PermGroup::new(4, k.clone()).unwrap();
        let au = CosetAction::new(&g, &k[..1]).unwrap();
        assert_eq!(perm_character(&au, &k[1]).unwrap(), 0);
        let r = gassmann_equal(&g, &k[..1], &k[1..]).unwrap();
        assert!(!r.equal);
        assert_eq!(r.witness, Some(k[0].clone()));
        assert_eq!(r.values, Some((2, 0)));
        assert!(gassmann_equal(&g, &k[..1], &k[..1]).unwrap().equal);
    }

    #[test]
    fn frobenius_inversion() {
        let counts = BTreeMap::from([(1, 1), (2, 3), (4, 7)]);
        assert_eq!(decomposition_from_frobenius(&counts, 7).unwrap(), vec![1, 2, 4]);
        let idc = fix_counts_of_cycle_type(&[1; 5], 5);
        assert_eq!(decomposition_from_frobenius(&idc, 5).unwrap(), vec![1; 5]);
        let cyc = fix_counts_of_cycle_type(&[6], 6);
        assert_eq!(decomposition_from_frobenius(&cyc, 6).unwrap(), vec![6]);
        let bad = BTreeMap::from([(1, 1), (2, 2)]);
        assert!(matches!(decomposition_from_frobenius(&bad, 3), Err(Error::Inconsistency(_))));
    }

    #[test]
    fn cap_enforced() {
        let s5 = gens("(1 2 3 4 5) (1 2)", 5);
        assert!(matches!(PermGroup::with_cap(5, s5, 100), Err(Error::GroupTooLarge(_))));
    }
}
