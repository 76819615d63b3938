use std::collections::{BTreeSet, HashMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

/// A finite group stored as its multiplication table. Element `0` is the
/// identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
    element_names: Vec<String>,
    solvable: bool,
    derived_length: usize,
}

impl FiniteGroup {
    /// Validates the group axioms: `0` is a two-sided identity, every row and
    /// column is a permutation, and multiplication is associative (checked on
    /// all triples up to order 64, on 100 000 seeded random triples above).
    pub fn from_table(name: impl Into<String>, table: Vec<Vec<usize>>, element_names: Vec<String>) -> Result<Self> {
        let name = name.into();
        let n = table.len();
        let bad = |msg: String| Error::InvalidInput(format!("group {name}: {msg}"));
        if n == 0 {
            return Err(bad("empty table".into()));
        }
        if element_names.len() != n {
            return Err(bad(format!("{} names for {n} elements", element_names.len())));
        }
        if table.iter().any(|row| row.len() != n) {
            return Err(bad("table is not square".into()));
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        if flat.iter().any(|&x| x >= n) {
            return Err(bad("entry out of range".into()));
        }
        let at = |a: usize, b: usize| flat[a * n + b];
        for a in 0..n {
            if at(0, a) != a || at(a, 0) != a {
                return Err(bad("element 0 is not the identity".into()));
            }
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for b in 0..n {
                row[at(a, b)] = true;
                col[at(b, a)] = true;
            }
            if row.contains(&false) || col.contains(&false) {
                return Err(bad(format!("row or column {a} is not a permutation")));
            }
        }
        let assoc = |a: usize, b: usize, c: usize| at(at(a, b), c) == at(a, at(b, c));
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(bad(format!("not associative at ({a}, {b}, {c})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            for _ in 0..100_000 {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !assoc(a, b, c) {
                    return Err(bad(format!("not associative at ({a}, {b}, {c})")));
                }
            }
        }
        let inverses = (0..n).map(|a| (0..n).find(|&b| at(a, b) == 0).unwrap()).collect();
        let mut g = Self {
            name,
            order: n,
            table: flat,
            inverses,
            element_names,
            solvable: false,
            derived_length: 0,
        };
        let (solvable, length) = g.derived_series_data();
        g.solvable = solvable;
        g.derived_length = length;
        Ok(g)
    }

    /// `ℤ/n` with elements named `0 … n−1`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("cyclic group of order 0".into()));
        }
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(format!("Z{n}"), table, (0..n).map(|i| i.to_string()).collect())
    }

    /// The permutation group generated by `generators` (images of `0..degree`),
    /// composing as `(gh)(x) = g(h(x))`. Elements are sorted lexicographically
    /// as image vectors, so the identity comes first, and named in cycle
    /// notation on points `1..=degree`.
    pub fn from_permutations(name: impl Into<String>, degree: usize, generators: &[Vec<usize>]) -> Result<Self> {
        for g in generators {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::InvalidInput(format!("{g:?} is not a permutation of {degree} points")));
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::from([identity.clone()]);
        let mut queue = VecDeque::from([identity]);
        while let Some(p) = queue.pop_front() {
            for g in generators {
                let q: Vec<usize> = (0..degree).map(|x| p[g[x]]).collect();
                if found.insert(q.clone()) {
                    queue.push_back(q);
                }
            }
        }
        let elements: Vec<Vec<usize>> = found.into_iter().collect();
        let index: HashMap<&[usize], usize> = elements.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        let table = elements
            .iter()
            .map(|g| {
                elements
                    .iter()
                    .map(|h| {
                        let gh: Vec<usize> = (0..degree).map(|x| g[h[x]]).collect();
                        index[gh.as_slice()]
                    })
                    .collect()
            })
            .collect();
        let names = elements.iter().map(|p| cycle_notation(p)).collect();
        Self::from_table(name, table, names)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn conjugate(&self, g: usize, a: usize) -> usize {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn element_name(&self, a: usize) -> &str {
        &self.element_names[a]
    }

    pub fn element_names(&self) -> &[String] {
        &self.element_names
    }

    pub fn element_by_name(&self, name: &str) -> Option<usize> {
        self.element_names.iter().position(|n| n == name)
    }

    pub fn is_solvable(&self) -> bool {
        self.solvable
    }

    /// Length of the derived series until it stabilizes.
    pub fn derived_length(&self) -> usize {
        self.derived_length
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Sorted element set of `⟨gens⟩`.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order).filter(|&i| seen[i]).collect()
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.order];
        for &a in set {
            if a >= self.order {
                return false;
            }
            member[a] = true;
        }
        member[0] && set.iter().all(|&a| set.iter().all(|&b| member[self.mul(a, self.inv(b))]))
    }

    /// Smallest element of the conjugacy class of `a`.
    pub fn class_minimum(&self, a: usize) -> usize {
        (0..self.order).map(|g| self.conjugate(g, a)).min().unwrap()
    }

    fn derived_series_data(&self) -> (bool, usize) {
        let mut current: Vec<usize> = (0..self.order).collect();
        let mut length = 0;
        loop {
            if current.len() == 1 {
                return (true, length);
            }
            let commutators: BTreeSet<usize> = current
                .iter()
                .flat_map(|&a| {
                    current.iter().map(move |&b| self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b))))
                })
                .collect();
            let next = self.generated_subgroup(&commutators.into_iter().collect::<Vec<_>>());
            if next.len() == current.len() {
                return (false, length);
            }
            current = next;
            length += 1;
        }
    }

    /// Labeled Cayley graph of `G` for a generating tuple: elements numbered in
    /// breadth-first order from the identity, then the successor of each under
    /// right multiplication by each tuple entry. Two generating tuples give the
    /// same key iff some automorphism of `G` carries one to the other.
    pub fn cayley_key(&self, tuple: &[usize]) -> Vec<u32> {
        let mut label = vec![u32::MAX; self.order];
        let mut order = Vec::with_capacity(self.order);
        label[0] = 0;
        order.push(0);
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            head += 1;
            for &a in tuple {
                let y = self.mul(x, a);
                if label[y] == u32::MAX {
                    label[y] = order.len() as u32;
                    order.push(y);
                }
            }
        }
        let mut key = Vec::with_capacity(order.len() * tuple.len() + 1);
        key.push(order.len() as u32);
        for &x in &order {
            key.extend(tuple.iter().map(|&a| label[self.mul(x, a)]));
        }
        key
    }

    /// Whether the two groups are isomorphic.
    pub fn is_isomorphic(&self, other: &FiniteGroup) -> bool {
        if self.order != other.order || self.is_abelian() != other.is_abelian() {
            return false;
        }
        let orders_a: Vec<usize> = (0..self.order).map(|a| self.element_order(a)).collect();
        let orders_b: Vec<usize> = (0..other.order).map(|a| other.element_order(a)).collect();
        let (mut sa, mut sb) = (orders_a.clone(), orders_b.clone());
        sa.sort_unstable();
        sb.sort_unstable();
        if sa != sb {
            return false;
        }
        let gens = self.small_generating_set();
        let target = self.cayley_key(&gens);
        let mut tuple = vec![0; gens.len()];
        self.search_images(other, &gens, &orders_a, &orders_b, &target, 0, &mut tuple)
    }

    #[allow(clippy::too_many_arguments)]
    fn search_images(
        &self,
        other: &FiniteGroup,
        gens: &[usize],
        orders_a: &[usize],
        orders_b: &[usize],
        target: &[u32],
        depth: usize,
        tuple: &mut Vec<usize>,
    ) -> bool {
        if depth == gens.len() {
            return other.cayley_key(tuple) == target;
        }
        for b in 0..other.order {
            if orders_b[b] == orders_a[gens[depth]] {
                tuple[depth] = b;
                if self.search_images(other, gens, orders_a, orders_b, target, depth + 1, tuple) {
                    return true;
                }
            }
        }
        false
    }

    /// Greedy generating set: repeatedly add the element of largest order
    /// outside the current subgroup.
    pub fn small_generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut sub = vec![0];
        while sub.len() < self.order {
            let next = (0..self.order)
                .filter(|a| sub.binary_search(a).is_err())
                .max_by_key(|&a| (self.element_order(a), std::cmp::Reverse(a)))
                .unwrap();
            gens.push(next);
            sub = self.generated_subgroup(&gens);
        }
        gens
    }
}

/// Cycle notation on points `1..=n`; `()` for the identity.
pub fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push((x + 1).to_string());
            x = p[x];
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
