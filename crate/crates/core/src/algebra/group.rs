use std::collections::{BTreeSet, VecDeque};

use num_integer::Integer;

use super::AlgebraError;

/// Largest group order accepted; group axioms are checked by brute force.
pub const MAX_GROUP_ORDER: usize = 64;

/// A finite group given by its multiplication table.
///
/// Elements are indices `0..n`; `table[a][b]` is the index of `a·b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validates the table against the group axioms.
    pub fn from_table(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, AlgebraError> {
        let n = table.len();
        if n == 0 || n > MAX_GROUP_ORDER {
            return Err(AlgebraError::GroupTooLarge(n));
        }
        if names.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(AlgebraError::NotAGroup("table is not square".into()));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(AlgebraError::NotAGroup("entry out of range".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| AlgebraError::NotAGroup("no identity".into()))?;
        let mut inverses = vec![0; n];
        for a in 0..n {
            inverses[a] = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| AlgebraError::NotAGroup(format!("{} has no inverse", names[a])))?;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(AlgebraError::NotAGroup("not associative".into()));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            names,
            table,
            identity,
            inverses,
        })
    }

    /// The cyclic group of order `n`, element `i` standing for `g^i`.
    pub fn cyclic(n: usize) -> Self {
        let names = (0..n).map(|i| format!("g{i}")).collect();
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        FiniteGroup::from_table(names, table).expect("cyclic group")
    }

    /// `Z/n1 × Z/n2 × …`, element index in mixed radix (first factor fastest).
    pub fn abelian(orders: &[usize]) -> Self {
        let mut g = FiniteGroup::cyclic(1);
        for &n in orders {
            g = g.direct_product(&FiniteGroup::cyclic(n));
        }
        g
    }

    /// The symmetric group on `k` letters; elements in lexicographic order.
    pub fn symmetric(k: usize) -> Self {
        let mut all = Vec::new();
        permutations(k, &mut Vec::new(), &mut vec![false; k], &mut all);
        let index = |p: &Vec<usize>| all.iter().position(|q| q == p).expect("perm");
        let table = all
            .iter()
            .map(|a| {
                all.iter()
                    .map(|b| {
                        // (a·b)(i) = a(b(i))
                        let c: Vec<usize> = (0..k).map(|i| a[b[i]]).collect();
                        index(&c)
                    })
                    .collect()
            })
            .collect();
        let names = all
            .iter()
            .map(|p| p.iter().map(|x| x.to_string()).collect::<String>())
            .collect();
        FiniteGroup::from_table(names, table).expect("symmetric group")
    }

    /// `G × H`, element `(g, h)` at index `g + |G|·h`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let n = self.order();
        let m = other.order();
        let mut table = vec![vec![0; n * m]; n * m];
        let mut names = Vec::with_capacity(n * m);
        for h in 0..m {
            for g in 0..n {
                names.push(format!("({},{})", self.names[g], other.names[h]));
            }
        }
        for x in 0..n * m {
            for y in 0..n * m {
                let (g1, h1) = (x % n, x / n);
                let (g2, h2) = (y % n, y / n);
                table[x][y] = self.mul(g1, g2) + n * other.mul(h1, h2);
            }
        }
        FiniteGroup::from_table(names, table).expect("product of groups")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        // x g x^{-1}
        self.mul(self.mul(x, g), self.inv(x))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order())
            .map(|a| self.element_order(a))
            .fold(1, |acc, k| acc.lcm(&k))
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The subgroup generated by `gens`, as a sorted element list.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = BTreeSet::from([self.identity]);
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// True when `elems` is closed under multiplication and contains 1.
    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        let set: BTreeSet<usize> = elems.iter().copied().collect();
        set.contains(&self.identity)
            && set
                .iter()
                .all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    /// A small generating set, chosen greedily in index order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        // prefer elements of large order so cyclic groups get one generator
        let mut order: Vec<usize> = (0..self.order()).collect();
        order.sort_by_key(|&a| (std::cmp::Reverse(self.element_order(a)), a));
        for a in order {
            if span.len() == self.order() {
                break;
            }
            if !span.contains(&a) {
                gens.push(a);
                span = self.generated(&gens);
            }
        }
        gens
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for g in 0..n {
            if seen[g] {
                continue;
            }
            let cls: BTreeSet<usize> = (0..n).map(|x| self.conjugate(x, g)).collect();
            for &c in &cls {
                seen[c] = true;
            }
            classes.push(cls.into_iter().collect());
        }
        classes
    }

    /// The commutator subgroup `[G, G]`.
    pub fn commutator_subgroup(&self) -> Vec<usize> {
        let n = self.order();
        let mut comms = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let c = self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)));
                comms.push(c);
            }
        }
        comms.sort_unstable();
        comms.dedup();
        self.generated(&comms)
    }

    /// The normal closure of `elems`.
    pub fn normal_closure(&self, elems: &[usize]) -> Vec<usize> {
        let mut gens = Vec::new();
        for &e in elems {
            for x in 0..self.order() {
                gens.push(self.conjugate(x, e));
            }
        }
        gens.sort_unstable();
        gens.dedup();
        self.generated(&gens)
    }

    /// True when `elems` is a normal subgroup.
    pub fn is_normal(&self, elems: &[usize]) -> bool {
        let set: BTreeSet<usize> = elems.iter().copied().collect();
        self.is_subgroup(elems)
            && (0..self.order()).all(|x| set.iter().all(|&h| set.contains(&self.conjugate(x, h))))
    }

    /// Restricts the table to a subgroup.
    pub fn subgroup(&self, elems: &[usize]) -> Result<(FiniteGroup, Vec<usize>), AlgebraError> {
        if !self.is_subgroup(elems) {
            return Err(AlgebraError::NotAGroup("not a subgroup".into()));
        }
        let mut elems: Vec<usize> = elems.to_vec();
        elems.sort_unstable();
        elems.dedup();
        let pos = |x: usize| elems.iter().position(|&e| e == x).expect("closed");
        let table = elems
            .iter()
            .map(|&a| elems.iter().map(|&b| pos(self.mul(a, b))).collect())
            .collect();
        let names = elems.iter().map(|&e| self.names[e].clone()).collect();
        Ok((FiniteGroup::from_table(names, table)?, elems))
    }

    /// `G/N` for a normal subgroup `N`, with the projection as an element
    /// map. Cosets are numbered by their least element.
    pub fn quotient(&self, n: &[usize]) -> Result<(FiniteGroup, Vec<usize>), AlgebraError> {
        if !self.is_normal(n) {
            return Err(AlgebraError::NotAGroup("not a normal subgroup".into()));
        }
        let mut reps: Vec<usize> = Vec::new();
        let mut map = vec![usize::MAX; self.order()];
        for x in 0..self.order() {
            if map[x] != usize::MAX {
                continue;
            }
            for &y in n {
                map[self.mul(x, y)] = reps.len();
            }
            reps.push(x);
        }
        let table = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| map[self.mul(a, b)]).collect())
            .collect();
        let names = reps.iter().map(|&r| format!("{}N", self.names[r])).collect();
        Ok((FiniteGroup::from_table(names, table)?, map))
    }

    /// Double coset representatives of `H \ G / D`, with the cosets.
    pub fn double_cosets(&self, h: &[usize], d: &[usize]) -> Vec<(usize, Vec<usize>)> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let mut cos = BTreeSet::new();
            for &a in h {
                for &b in d {
                    cos.insert(self.mul(self.mul(a, x), b));
                }
            }
            for &c in &cos {
                seen[c] = true;
            }
            out.push((x, cos.into_iter().collect()));
        }
        out
    }
}

fn permutations(k: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for i in 0..k {
        if !used[i] {
            used[i] = true;
            cur.push(i);
            permutations(k, cur, used, out);
            cur.pop();
            used[i] = false;
        }
    }
}
