//! Finite groups as Cayley tables, independent of the library's permutation
//! groups. Element 0 is always the identity.

use std::collections::{BTreeMap, HashSet, VecDeque};

use arith_equiv::gassmann::Perm;

#[derive(Clone, Debug)]
pub struct Table {
    pub n: usize,
    mul: Vec<usize>,
}

impl Table {
    pub fn new(n: usize, mul: Vec<usize>) -> Self {
        Table { n, mul }
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        (0..self.n).find(|&b| self.mul(a, b) == 0).unwrap()
    }

    pub fn order_of(&self, a: usize) -> usize {
        let (mut x, mut k) = (a, 1);
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_group(&self) -> bool {
        let n = self.n;
        (0..n).all(|a| self.mul(0, a) == a && self.mul(a, 0) == a)
            && (0..n).all(|a| {
                let mut row = vec![false; n];
                (0..n).all(|b| !std::mem::replace(&mut row[self.mul(a, b)], true))
            })
            && (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c)))))
    }

    /// Smallest subgroup containing `gens`, as a bitmask.
    pub fn closure(&self, gens: &[usize]) -> u32 {
        let mut set = 1u32;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(g, x);
                if set & (1 << y) == 0 {
                    set |= 1 << y;
                    queue.push_back(y);
                }
            }
        }
        set
    }

    /// Greedy generating set.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = 1u32;
        for g in 1..self.n {
            if span & (1 << g) == 0 {
                gens.push(g);
                span = self.closure(&gens);
            }
        }
        gens
    }

    /// Every subgroup with a generating set, found as joins of cyclic ones.
    pub fn subgroups(&self) -> Vec<(u32, Vec<usize>)> {
        let cyclic: Vec<(u32, usize)> = (0..self.n).map(|g| (self.closure(&[g]), g)).collect();
        let mut seen: HashSet<u32> = HashSet::new();
        let mut out: Vec<(u32, Vec<usize>)> = Vec::new();
        let mut queue = VecDeque::new();
        seen.insert(1);
        out.push((1, Vec::new()));
        queue.push_back(0);
        while let Some(i) = queue.pop_front() {
            let (set, gens) = out[i].clone();
            for &(c, g) in &cyclic {
                if c & !set == 0 {
                    continue;
                }
                let mut j = gens.clone();
                j.push(g);
                let s = self.closure(&j);
                if seen.insert(s) {
                    out.push((s, j));
                    queue.push_back(out.len() - 1);
                }
            }
        }
        out
    }

    /// Left multiplication `x -> g x` as permutations.
    pub fn regular(&self, g: usize) -> Perm {
        Perm::from_images((0..self.n).map(|x| self.mul(g, x)).collect()).unwrap()
    }

    /// Ascending cycle lengths of `g` acting on the left cosets of `h`.
    pub fn coset_cycle_type(&self, h: u32, g: usize) -> Vec<usize> {
        let members: Vec<usize> = (0..self.n).filter(|&x| h & (1 << x) != 0).collect();
        let mut coset_of = vec![usize::MAX; self.n];
        let mut reps = Vec::new();
        for x in 0..self.n {
            if coset_of[x] == usize::MAX {
                for &u in &members {
                    coset_of[self.mul(x, u)] = reps.len();
                }
                reps.push(x);
            }
        }
        let image: Vec<usize> = reps.iter().map(|&r| coset_of[self.mul(g, r)]).collect();
        let mut seen = vec![false; reps.len()];
        let mut lens = Vec::new();
        for s in 0..reps.len() {
            if !seen[s] {
                let (mut j, mut len) = (s, 0);
                while !seen[j] {
                    seen[j] = true;
                    j = image[j];
                    len += 1;
                }
                lens.push(len);
            }
        }
        lens.sort_unstable();
        lens
    }

    /// Isomorphism invariant strong enough to separate all groups of order
    /// at most 24.
    pub fn fingerprint(&self) -> Vec<usize> {
        let n = self.n;
        let mut elems: Vec<(usize, usize, usize)> = (0..n)
            .map(|g| {
                let cent = (0..n).filter(|&x| self.mul(g, x) == self.mul(x, g)).count();
                let roots = (0..n).filter(|&x| self.mul(x, x) == g).count();
                (self.order_of(g), cent, roots)
            })
            .collect();
        elems.sort_unstable();
        let comms: Vec<usize> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b)))
            .collect();
        let derived = self.closure(&comms).count_ones() as usize;
        let mut subs: BTreeMap<(usize, bool, bool), usize> = BTreeMap::new();
        for (s, _) in self.subgroups() {
            let size = s.count_ones() as usize;
            let cyclic = (0..n).any(|g| self.closure(&[g]) == s);
            let normal = (0..n).all(|g| {
                let gi = self.inv(g);
                (0..n).filter(|&x| s & (1 << x) != 0).all(|x| s & (1 << self.mul(self.mul(g, x), gi)) != 0)
            });
            *subs.entry((size, normal, cyclic)).or_default() += 1;
        }
        let mut fp = vec![n, derived];
        fp.extend(elems.into_iter().flat_map(|(a, b, c)| [a, b, c]));
        fp.extend(subs.into_iter().flat_map(|((a, b, c), k)| [a, b as usize, c as usize, k]));
        fp
    }
}

pub fn cyclic(n: usize) -> Table {
    Table::new(n, (0..n * n).map(|k| (k / n + k % n) % n).collect())
}

/// `<a, b | a^m, b^n = a^t, b a b^-1 = a^r>` with elements `a^i b^j` at
/// index `i + m j`. `None` when the parameters do not give a group of order
/// `m n`.
pub fn metacyclic(m: usize, n: usize, r: usize, t: usize) -> Option<Table> {
    let pow = |e: usize| (0..e).fold(1 % m, |acc, _| acc * r % m);
    if num_integer::gcd(r, m) != 1 || pow(n) != 1 % m || (r * t) % m != t % m {
        return None;
    }
    let size = m * n;
    let mut mul = vec![0; size * size];
    for x in 0..size {
        let (i, j) = (x % m, x / m);
        for y in 0..size {
            let (k, l) = (y % m, y / m);
            let mut a = (i + pow(j) * k) % m;
            let mut b = j + l;
            if b >= n {
                b -= n;
                a = (a + t) % m;
            }
            mul[x * size + y] = a + m * b;
        }
    }
    Some(Table::new(size, mul))
}

pub fn direct(a: &Table, b: &Table) -> Table {
    let n = a.n * b.n;
    let mut mul = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            mul[x * n + y] = a.mul(x % a.n, y % a.n) + a.n * b.mul(x / a.n, y / a.n);
        }
    }
    Table::new(n, mul)
}

/// All automorphisms of `t`, each as an element map.
pub fn automorphisms(t: &Table) -> Vec<Vec<usize>> {
    let gens = t.generators();
    let orders: Vec<usize> = gens.iter().map(|&g| t.order_of(g)).collect();
    let candidates: Vec<Vec<usize>> = orders
        .iter()
        .map(|&o| (0..t.n).filter(|&x| t.order_of(x) == o).collect())
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    'outer: loop {
        let images: Vec<usize> = choice.iter().zip(&candidates).map(|(&c, cs)| cs[c]).collect();
        if let Some(map) = extend_hom(t, &gens, &images) {
            out.push(map);
        }
        for k in 0..choice.len() {
            choice[k] += 1;
            if choice[k] < candidates[k].len() {
                continue 'outer;
            }
            choice[k] = 0;
        }
        break;
    }
    out
}

fn extend_hom(t: &Table, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; t.n];
    map[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (&g, &h) in gens.iter().zip(images) {
            let (y, fy) = (t.mul(g, x), t.mul(h, map[x]));
            if map[y] == usize::MAX {
                map[y] = fy;
                queue.push_back(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    for a in 0..t.n {
        for b in 0..t.n {
            if map[t.mul(a, b)] != t.mul(map[a], map[b]) {
                return None;
            }
        }
    }
    let distinct: HashSet<usize> = map.iter().copied().collect();
    (distinct.len() == t.n).then_some(map)
}

/// `N ⋊ C_h` where the generator of `C_h` acts by `phi`, which must satisfy
/// `phi^h = id`.
pub fn semidirect(t: &Table, phi: &[usize], h: usize) -> Table {
    let m = t.n;
    let mut powers = vec![(0..m).collect::<Vec<_>>()];
    for j in 1..h {
        let prev = &powers[j - 1];
        powers.push((0..m).map(|x| phi[prev[x]]).collect());
    }
    let n = m * h;
    let mut mul = vec![0; n * n];
    for x in 0..n {
        let (a, j) = (x % m, x / m);
        for y in 0..n {
            let (b, l) = (y % m, y / m);
            mul[x * n + y] = t.mul(a, powers[j][b]) + m * ((j + l) % h);
        }
    }
    Table::new(n, mul)
}

fn is_power_identity(phi: &[usize], h: usize) -> bool {
    let mut cur: Vec<usize> = (0..phi.len()).collect();
    for _ in 0..h {
        cur = cur.iter().map(|&x| phi[x]).collect();
    }
    cur.iter().enumerate().all(|(i, &x)| i == x)
}

/// One representative per isomorphism class for each order `1..=max`,
/// built from cyclic, metacyclic, direct and cyclic-by-normal semidirect
/// constructions and deduplicated by fingerprint.
pub fn small_groups(max: usize) -> Vec<Table> {
    let mut by_order: Vec<Vec<Table>> = vec![Vec::new(); max + 1];
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    for order in 1..=max {
        let mut candidates = vec![cyclic(order)];
        for m in 1..=order {
            if order % m != 0 {
                continue;
            }
            let n = order / m;
            for r in 0..m.max(1) {
                for t in 0..m {
                    candidates.extend(metacyclic(m, n, r, t));
                }
            }
        }
        for a in 2..order {
            if order % a == 0 && order / a >= 2 {
                for x in &by_order[a] {
                    for y in &by_order[order / a] {
                        candidates.push(direct(x, y));
                    }
                }
            }
        }
        for h in 2..=order {
            if order % h != 0 {
                continue;
            }
            for base in by_order[order / h].clone() {
                for phi in automorphisms(&base) {
                    if is_power_identity(&phi, h) {
                        candidates.push(semidirect(&base, &phi, h));
                    }
                }
            }
        }
        for c in candidates {
            if c.n != order {
                continue;
            }
            let fp = c.fingerprint();
            if !seen.contains(&fp) && c.is_group() {
                seen.insert(fp);
                by_order[order].push(c);
            }
        }
    }
    by_order.into_iter().flatten().collect()
}
