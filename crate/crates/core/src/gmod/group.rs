use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};

/// A permutation of `{0, …, n−1}` stored as its image list.
pub type Perm = Vec<usize>;

/// `(p∘q)(i) = p(q(i))`
pub fn compose(p: &[usize], q: &[usize]) -> Perm {
    q.iter().map(|&i| p[i]).collect()
}

pub fn perm_inverse(p: &[usize]) -> Perm {
    let mut out = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        out[j] = i;
    }
    out
}

pub fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&j| j < p.len() && !std::mem::replace(&mut seen[j], true))
}

/// Cycle notation with 1-based points, `()` for the identity.
pub fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cycle.push((i + 1).to_string());
            i = p[i];
        }
        out.push('(');
        out.push_str(&cycle.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// A finite group given by its full multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates the table exhaustively (closure, associativity, identity, inverses).
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidGroup("table is not square over 0..n".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for g in 0..n {
            let h = (0..n)
                .find(|&h| table[g][h] == identity && table[h][g] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {g} has no inverse")))?;
            inverse.push(h);
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(FiniteGroup { table, identity, inverse })
    }

    fn from_table_unchecked(table: Vec<Vec<usize>>) -> Self {
        let n = table.len();
        let identity = (0..n).find(|&e| (0..n).all(|g| table[e][g] == g)).expect("identity");
        let inverse = (0..n).map(|g| (0..n).find(|&h| table[g][h] == identity).expect("inverse")).collect();
        FiniteGroup { table, identity, inverse }
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `C_m` with element `k` standing for `t^k`.
    pub fn cyclic(m: usize) -> Self {
        assert!(m >= 1, "cyclic group of order 0");
        Self::from_table_unchecked((0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect())
    }

    /// `S_n` acting on `{0, …, n−1}`; elements are the permutations in
    /// lexicographic order, so the identity has id 0.
    pub fn symmetric(n: usize) -> (Self, Vec<Perm>) {
        let mut perms = vec![(0..n).collect::<Perm>()];
        loop {
            let mut p = perms.last().unwrap().clone();
            // next permutation in lexicographic order
            let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else { break };
            let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
            p.swap(i - 1, j);
            p[i..].reverse();
            perms.push(p);
        }
        (Self::from_perm_list(&perms), perms)
    }

    /// The group of permutations generated by `gens`, elements listed in
    /// breadth-first order from the identity.
    pub fn from_permutations(degree: usize, gens: &[Perm]) -> Result<(Self, Vec<Perm>)> {
        for g in gens {
            if g.len() != degree || !is_permutation(g) {
                return Err(Error::InvalidGroup(format!("{g:?} is not a permutation of degree {degree}")));
            }
        }
        let elements = closure((0..degree).collect(), gens, |a, b| compose(a, b));
        Ok((Self::from_perm_list(&elements), elements))
    }

    fn from_perm_list(perms: &[Perm]) -> Self {
        let index: BTreeMap<&Perm, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let table = perms
            .iter()
            .map(|a| perms.iter().map(|b| index[&compose(a, b)]).collect())
            .collect();
        Self::from_table_unchecked(table)
    }

    /// `G × H` with `(g, h)` at id `g·|H| + h`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let (m, n) = (g.order(), h.order());
        let table = (0..m * n)
            .map(|x| (0..m * n).map(|y| g.mul(x / n, y / n) * n + h.mul(x % n, y % n)).collect())
            .collect();
        Self::from_table_unchecked(table)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn non_identity(&self) -> impl Iterator<Item = usize> + '_ {
        self.elements().filter(move |&g| g != self.identity)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// A generator when the group is cyclic.
    pub fn cyclic_generator(&self) -> Option<usize> {
        self.elements().find(|&g| self.element_order(g) == self.order())
    }

    /// Smallest subgroup containing `gens`, as a sorted id list.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut ids = closure(self.identity, gens, |a, b| self.mul(*a, *b));
        ids.sort_unstable();
        ids
    }

    /// Validates a subset and re-indexes it as a group of its own.
    pub fn subgroup(&self, ids: &[usize]) -> Result<Subgroup> {
        let mut parent_ids = ids.to_vec();
        parent_ids.sort_unstable();
        parent_ids.dedup();
        if parent_ids.iter().any(|&g| g >= self.order()) {
            return Err(Error::NotASubgroup("element id out of range".into()));
        }
        if !parent_ids.contains(&self.identity) {
            return Err(Error::NotASubgroup("identity missing".into()));
        }
        let local: BTreeMap<usize, usize> = parent_ids.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let mut table = Vec::with_capacity(parent_ids.len());
        for &a in &parent_ids {
            let mut row = Vec::with_capacity(parent_ids.len());
            for &b in &parent_ids {
                match local.get(&self.mul(a, b)) {
                    Some(&c) => row.push(c),
                    None => return Err(Error::NotASubgroup(format!("product of {a} and {b} leaves the set"))),
                }
            }
            table.push(row);
        }
        Ok(Subgroup { group: Self::from_table_unchecked(table), parent_ids })
    }

    /// Left coset representatives of `h` (the smallest id in each coset).
    pub fn left_transversal(&self, h: &[usize]) -> Vec<usize> {
        let mut covered = vec![false; self.order()];
        let mut reps = Vec::new();
        for g in self.elements() {
            if covered[g] {
                continue;
            }
            reps.push(g);
            for &x in h {
                covered[self.mul(g, x)] = true;
            }
        }
        reps
    }
}

/// A subgroup together with its embedding into the parent group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub group: FiniteGroup,
    /// `parent_ids[k]` is the parent id of local element `k` (sorted ascending)
    pub parent_ids: Vec<usize>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.parent_ids.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.parent_ids.binary_search(&g).is_ok()
    }

    pub fn local_id(&self, g: usize) -> Option<usize> {
        self.parent_ids.binary_search(&g).ok()
    }
}

/// Breadth-first closure of `{start}` under right multiplication by `gens`.
pub(crate) fn closure<T: Clone + Ord>(start: T, gens: &[T], mul: impl Fn(&T, &T) -> T) -> Vec<T> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = mul(&x, g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
        out.push(x);
    }
    out
}
