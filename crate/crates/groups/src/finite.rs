//! Small finite groups held as full multiplication tables.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::coset::CosetTable;
use crate::lowindex::is_normal;

/// Finite group on elements `0..n` with identity 0 and distinguished
/// generators. `mul[i * n + j]` is the product `i * j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    n: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    gens: Vec<u32>,
    orders: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FiniteGroupError {
    #[error("the subgroup of the coset table is not normal")]
    NotNormal,
    #[error("coset table is not complete")]
    Incomplete,
    #[error("permutations do not generate a group of order at most {0}")]
    TooLarge(usize),
}

/// Isomorphism-invariant summary used to prefilter and order classes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct InvariantVector {
    pub order: u64,
    /// Abelian invariants of the group, units dropped (ascending).
    pub abelianization: Vec<u64>,
    /// `None` when the group is not solvable.
    pub derived_length: Option<u32>,
    pub class_count: usize,
    /// `(element order, count)` ascending by order.
    pub order_histogram: Vec<(u64, usize)>,
}

impl FiniteGroup {
    /// The quotient `G / K` acting regularly on the cosets of a normal `K`.
    pub fn from_regular_table(table: &CosetTable) -> Result<Self, FiniteGroupError> {
        if !table.is_complete() {
            return Err(FiniteGroupError::Incomplete);
        }
        if !is_normal(table) {
            return Err(FiniteGroupError::NotNormal);
        }
        let n = table.index();
        let tree = table.tree();
        let mut mul = vec![0u32; n * n];
        for i in 0..n {
            mul[i * n] = i as u32;
            // Parents precede children in a standard table.
            for j in 1..n {
                let (c, x) = tree[j].expect("connected");
                mul[i * n + j] = table.get(mul[i * n + c] as usize, x) as u32;
            }
        }
        let gens = (0..table.generators().len()).map(|g| table.get(0, 2 * g) as u32).collect();
        Ok(Self::from_parts(n, mul, gens))
    }

    /// The group generated by permutations of `0..degree`, if its order is
    /// at most `cap`.
    pub fn from_permutations(perms: &[Vec<usize>], cap: usize) -> Result<Self, FiniteGroupError> {
        let degree = perms.first().map_or(0, Vec::len);
        let id: Vec<u32> = (0..degree as u32).collect();
        let mut index = std::collections::HashMap::new();
        index.insert(id.clone(), 0u32);
        let mut elems = vec![id];
        let mut edges: Vec<Vec<u32>> = Vec::new();
        let mut i = 0;
        while i < elems.len() {
            let mut row = Vec::with_capacity(perms.len());
            for g in perms {
                let next: Vec<u32> = elems[i].iter().map(|&v| g[v as usize] as u32).collect();
                let k = match index.get(&next) {
                    Some(&k) => k,
                    None => {
                        if elems.len() >= cap {
                            return Err(FiniteGroupError::TooLarge(cap));
                        }
                        let k = elems.len() as u32;
                        index.insert(next.clone(), k);
                        elems.push(next);
                        k
                    }
                };
                row.push(k);
            }
            edges.push(row);
            i += 1;
        }
        // Element e is a permutation applied as "first e, then g".
        let n = elems.len();
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let prod: Vec<u32> = elems[a].iter().map(|&v| elems[b][v as usize]).collect();
                mul[a * n + b] = index[&prod];
            }
        }
        let gens = (0..perms.len()).map(|g| if n > 0 { edges[0][g] } else { 0 }).collect();
        Ok(Self::from_parts(n, mul, gens))
    }

    fn from_parts(n: usize, mul: Vec<u32>, gens: Vec<u32>) -> Self {
        let mut inv = vec![0u32; n];
        for i in 0..n {
            let j = (0..n).find(|&j| mul[i * n + j] == 0).expect("group table has inverses");
            inv[i] = j as u32;
        }
        let mut g = FiniteGroup { n, mul, inv, gens, orders: Vec::new() };
        g.orders = (0..n as u32).map(|e| g.element_order(e)).collect();
        g
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.n + b as usize]
    }

    pub fn inverse(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn generators(&self) -> &[u32] {
        &self.gens
    }

    fn element_order(&self, e: u32) -> u64 {
        let (mut x, mut k) = (e, 1);
        while x != 0 {
            x = self.mul(x, e);
            k += 1;
        }
        k
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Right regular action of the generators, as permutations of elements.
    pub fn generator_permutations(&self) -> Vec<Vec<usize>> {
        self.gens.iter().map(|&g| (0..self.n as u32).map(|e| self.mul(e, g) as usize).collect()).collect()
    }

    /// Membership mask of the subgroup generated by `set`.
    pub fn closure(&self, set: &[u32]) -> Vec<bool> {
        let mut mask = vec![false; self.n];
        mask[0] = true;
        let mut queue = vec![0u32];
        let mut i = 0;
        while i < queue.len() {
            let a = queue[i];
            i += 1;
            for &s in set {
                let b = self.mul(a, s);
                if !mask[b as usize] {
                    mask[b as usize] = true;
                    queue.push(b);
                }
            }
        }
        mask
    }

    fn derived_subgroup(&self, mask: &[bool]) -> Vec<bool> {
        let elems: Vec<u32> = (0..self.n as u32).filter(|&e| mask[e as usize]).collect();
        let mut comms = vec![false; self.n];
        for &a in &elems {
            for &b in &elems {
                let c = self.mul(self.mul(self.inverse(a), self.inverse(b)), self.mul(a, b));
                comms[c as usize] = true;
            }
        }
        let set: Vec<u32> = (0..self.n as u32).filter(|&e| comms[e as usize]).collect();
        self.closure(&set)
    }

    pub fn derived_length(&self) -> Option<u32> {
        let mut mask = vec![true; self.n];
        let mut size = self.n;
        let mut len = 0;
        while size > 1 {
            let next = self.derived_subgroup(&mask);
            let next_size = next.iter().filter(|&&b| b).count();
            if next_size == size {
                return None;
            }
            mask = next;
            size = next_size;
            len += 1;
        }
        Some(len)
    }

    /// Conjugacy class of each element, as a representative label.
    pub fn class_labels(&self) -> Vec<u32> {
        let mut label: Vec<u32> = (0..self.n as u32).collect();
        fn find(l: &mut [u32], x: u32) -> u32 {
            let mut r = x;
            while l[r as usize] != r {
                r = l[r as usize];
            }
            let mut x = x;
            while l[x as usize] != r {
                let nx = l[x as usize];
                l[x as usize] = r;
                x = nx;
            }
            r
        }
        for e in 0..self.n as u32 {
            for &g in &self.gens {
                let c = self.mul(self.mul(self.inverse(g), e), g);
                let (a, b) = (find(&mut label, e), find(&mut label, c));
                if a != b {
                    let (lo, hi) = (a.min(b), a.max(b));
                    label[hi as usize] = lo;
                }
            }
        }
        (0..self.n as u32).map(|e| find(&mut label, e)).collect()
    }

    pub fn class_count(&self) -> usize {
        let labels = self.class_labels();
        labels.iter().enumerate().filter(|(i, &l)| *i as u32 == l).count()
    }

    /// Abelian invariants of `G / [G, G]` from the orders of its elements.
    pub fn abelianization(&self) -> Vec<u64> {
        let d = self.derived_subgroup(&vec![true; self.n]);
        let dsize = d.iter().filter(|&&b| b).count();
        let a = (self.n / dsize) as u64;
        // Order of g[G,G] in the quotient.
        let coset_order = |g: u32| {
            let (mut x, mut k) = (g, 1u64);
            while !d[x as usize] {
                x = self.mul(x, g);
                k += 1;
            }
            k
        };
        let qorders: Vec<u64> = (0..self.n as u32).map(coset_order).collect();
        let mut exps_by_prime: Vec<(u64, Vec<u32>)> = Vec::new();
        for p in prime_factors(a) {
            // s[k] = log_p #{x : p^k x = 0}; e_i >= k counted by s[k] - s[k-1].
            let mut s = vec![0u32];
            let mut k = 1u32;
            loop {
                let pk = p.pow(k);
                let count = qorders.iter().filter(|&&o| pk % o == 0).count() / dsize;
                let sk = log_exact(count as u64, p);
                if sk == *s.last().unwrap() {
                    break;
                }
                s.push(sk);
                k += 1;
            }
            let mut exps = Vec::new();
            for k in 1..s.len() {
                let at_least_k = s[k] - s[k - 1];
                let at_least_next = if k + 1 < s.len() { s[k + 1] - s[k] } else { 0 };
                for _ in 0..(at_least_k - at_least_next) {
                    exps.push(k as u32);
                }
            }
            exps.sort_unstable_by(|x, y| y.cmp(x));
            exps_by_prime.push((p, exps));
        }
        let len = exps_by_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
        let mut out: Vec<u64> = (0..len)
            .map(|i| exps_by_prime.iter().map(|(p, e)| e.get(i).map_or(1, |&k| p.pow(k))).product())
            .collect();
        out.sort_unstable();
        out
    }

    pub fn order_histogram(&self) -> Vec<(u64, usize)> {
        let mut h = BTreeMap::new();
        for &o in &self.orders {
            *h.entry(o).or_insert(0) += 1;
        }
        h.into_iter().collect()
    }

    pub fn invariants(&self) -> InvariantVector {
        InvariantVector {
            order: self.n as u64,
            abelianization: self.abelianization(),
            derived_length: self.derived_length(),
            class_count: self.class_count(),
            order_histogram: self.order_histogram(),
        }
    }

    /// A generating subset of the distinguished generators.
    fn irredundant_generators(&self) -> Vec<u32> {
        let mut chosen: Vec<u32> = Vec::new();
        let mut mask = self.closure(&[]);
        for &g in &self.gens {
            if !mask[g as usize] {
                chosen.push(g);
                mask = self.closure(&chosen);
            }
        }
        chosen
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn log_exact(mut v: u64, p: u64) -> u32 {
    let mut k = 0;
    while v > 1 {
        debug_assert_eq!(v % p, 0);
        v /= p;
        k += 1;
    }
    k
}

pub const ISO_BOUND: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("group order {order} exceeds the isomorphism-test bound {bound}")]
pub struct IsoBoundError {
    pub order: usize,
    pub bound: usize,
}

/// Isomorphism test: invariant prefilter, then a backtracking search for
/// images of a generating set of `a` that extend to a bijective homomorphism.
pub fn iso_test(a: &FiniteGroup, b: &FiniteGroup, bound: usize) -> Result<bool, IsoBoundError> {
    for g in [a, b] {
        if g.order() > bound {
            return Err(IsoBoundError { order: g.order(), bound });
        }
    }
    if a.invariants() != b.invariants() {
        return Ok(false);
    }
    let gens = a.irredundant_generators();
    let (la, lb) = (a.class_labels(), b.class_labels());
    let class_size = |l: &[u32]| {
        let mut sizes = vec![0usize; l.len()];
        for &x in l {
            sizes[x as usize] += 1;
        }
        l.iter().map(|&x| sizes[x as usize]).collect::<Vec<_>>()
    };
    let (sa, sb) = (class_size(&la), class_size(&lb));
    let candidates: Vec<Vec<u32>> = gens
        .iter()
        .map(|&g| {
            (0..b.order() as u32)
                .filter(|&h| b.orders()[h as usize] == a.orders()[g as usize] && sb[h as usize] == sa[g as usize])
                .collect()
        })
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    Ok(extend(a, b, &gens, &candidates, &mut images))
}

fn extend(a: &FiniteGroup, b: &FiniteGroup, gens: &[u32], cands: &[Vec<u32>], images: &mut Vec<u32>) -> bool {
    let k = images.len();
    if k > 0 && !consistent(a, b, &gens[..k], images) {
        return false;
    }
    if k == gens.len() {
        return true;
    }
    for &h in &cands[k] {
        images.push(h);
        if extend(a, b, gens, cands, images) {
            return true;
        }
        images.pop();
    }
    false
}

/// Whether `gens[i] -> images[i]` extends to an injective homomorphism on
/// the subgroup they generate; when they generate all of `a` and orders
/// agree, this is an isomorphism.
fn consistent(a: &FiniteGroup, b: &FiniteGroup, gens: &[u32], images: &[u32]) -> bool {
    let mut f = vec![u32::MAX; a.order()];
    let mut used = vec![false; b.order()];
    f[0] = 0;
    used[0] = true;
    let mut queue = vec![0u32];
    let mut i = 0;
    while i < queue.len() {
        let u = queue[i];
        i += 1;
        for (&g, &h) in gens.iter().zip(images) {
            let v = a.mul(u, g);
            let fv = b.mul(f[u as usize], h);
            if f[v as usize] == u32::MAX {
                if used[fv as usize] {
                    return false;
                }
                f[v as usize] = fv;
                used[fv as usize] = true;
                queue.push(v);
            } else if f[v as usize] != fv {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> FiniteGroup {
        FiniteGroup::from_permutations(&[(0..n).map(|i| (i + 1) % n).collect()], 1000).unwrap()
    }

    fn perms(list: &[&[usize]]) -> Vec<Vec<usize>> {
        list.iter().map(|p| p.to_vec()).collect()
    }

    #[test]
    fn abelian_invariants_from_orders() {
        let z6 = cyclic(6);
        assert_eq!(z6.abelianization(), vec![6]);
        let z2z2 = FiniteGroup::from_permutations(&perms(&[&[1, 0, 3, 2], &[2, 3, 0, 1]]), 100).unwrap();
        assert_eq!(z2z2.abelianization(), vec![2, 2]);
        let s3 = FiniteGroup::from_permutations(&perms(&[&[1, 0, 2], &[1, 2, 0]]), 100).unwrap();
        assert_eq!((s3.order(), s3.abelianization(), s3.derived_length(), s3.class_count()), (6, vec![2], Some(2), 3));
        let a5 = FiniteGroup::from_permutations(&perms(&[&[1, 2, 0, 3, 4], &[0, 1, 3, 4, 2]]), 100).unwrap();
        assert_eq!((a5.order(), a5.derived_length(), a5.class_count()), (60, None, 5));
        assert!(a5.abelianization().is_empty());
    }

    #[test]
    fn isomorphisms() {
        // Z/6 generated by a 6-cycle vs by (2-cycle, 3-cycle).
        let a = cyclic(6);
        let b = FiniteGroup::from_permutations(&perms(&[&[1, 0, 2, 3, 4], &[0, 1, 3, 4, 2]]), 100).unwrap();
        assert!(iso_test(&a, &b, ISO_BOUND).unwrap());
        let z4 = cyclic(4);
        let v4 = FiniteGroup::from_permutations(&perms(&[&[1, 0, 3, 2], &[2, 3, 0, 1]]), 100).unwrap();
        assert!(!iso_test(&z4, &v4, ISO_BOUND).unwrap());
        // D4 and Q8 (as permutations of 8 points).
        let d4 = FiniteGroup::from_permutations(&perms(&[&[1, 2, 3, 0], &[0, 3, 2, 1]]), 100).unwrap();
        let q8 = FiniteGroup::from_permutations(
            &perms(&[&[1, 2, 3, 0, 5, 6, 7, 4], &[4, 7, 6, 5, 2, 1, 0, 3]]),
            100,
        )
        .unwrap();
        assert_eq!((d4.order(), q8.order()), (8, 8));
        assert_ne!(d4.order_histogram(), q8.order_histogram());
        assert!(!iso_test(&d4, &q8, ISO_BOUND).unwrap());
        assert!(iso_test(&q8, &q8, ISO_BOUND).unwrap());
        assert!(iso_test(&cyclic(600), &cyclic(600), ISO_BOUND).is_err());
    }
}
