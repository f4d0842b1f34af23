//! Todd–Coxeter coset enumeration and complete coset tables.
//!
//! Columns: generator `i` is column `2i`, its inverse `2i + 1`, so the
//! inverse column of `x` is `x ^ 1`.

use rigidity_core::GroupWord;
use serde::{Deserialize, Serialize};

use crate::presentation::Presentation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Relator-based filling (Haselgrove–Leech–Trotter) with lookahead on overflow.
    #[default]
    Hlt,
    /// Definitions in table order, each followed by deduction processing.
    Felsch,
}

impl std::str::FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "hlt" => Ok(Strategy::Hlt),
            "felsch" => Ok(Strategy::Felsch),
            _ => Err(format!("unknown strategy {s:?} (expected hlt or felsch)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum EnumStatus {
    Complete,
    Overflowed { limit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TableError {
    #[error("coset table is not complete")]
    Incomplete,
    #[error("permutation {0} is not a permutation of the right degree")]
    NotPermutation(usize),
    #[error("expected {expected} permutations, got {got}")]
    WrongCount { expected: usize, got: usize },
    #[error("the permutations do not act transitively")]
    NotTransitive,
    #[error("relator {0} does not close")]
    RelatorFails(usize),
}

/// A coset table. When `Complete`, every entry is defined, coset 0 is the
/// subgroup, every relator closes at every coset, and cosets are numbered
/// in standard (first-appearance, row-major) order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetTable {
    generators: Vec<String>,
    status: EnumStatus,
    cosets: usize,
    /// Row-major, `2 * generators.len()` columns, 0-based coset entries.
    table: Vec<u32>,
    /// Total cosets defined during the enumeration that produced this table.
    pub defined: usize,
}

impl CosetTable {
    pub(crate) fn from_raw(generators: Vec<String>, cosets: usize, table: Vec<u32>) -> Self {
        let mut t = CosetTable { generators, status: EnumStatus::Complete, cosets, table, defined: cosets };
        t.standardize();
        t
    }

    fn overflowed(generators: Vec<String>, limit: usize, defined: usize) -> Self {
        CosetTable { generators, status: EnumStatus::Overflowed { limit }, cosets: 0, table: Vec::new(), defined }
    }

    /// Table of the transitive action given by one permutation per generator
    /// (0-based images), with point 0 as the subgroup.
    pub fn from_permutations(p: &Presentation, perms: &[Vec<usize>]) -> Result<Self, TableError> {
        if perms.len() != p.rank() {
            return Err(TableError::WrongCount { expected: p.rank(), got: perms.len() });
        }
        let n = perms.first().map_or(1, Vec::len);
        let cols = 2 * p.rank();
        let mut table = vec![u32::MAX; n * cols];
        for (g, perm) in perms.iter().enumerate() {
            if perm.len() != n {
                return Err(TableError::NotPermutation(g));
            }
            for (i, &j) in perm.iter().enumerate() {
                if j >= n || table[j * cols + 2 * g + 1] != u32::MAX {
                    return Err(TableError::NotPermutation(g));
                }
                table[i * cols + 2 * g] = j as u32;
                table[j * cols + 2 * g + 1] = i as u32;
            }
        }
        let t = CosetTable::from_raw(p.generators().to_vec(), n, table);
        if t.cosets != n {
            return Err(TableError::NotTransitive);
        }
        if let Some(i) = t.failing_relator(p) {
            return Err(TableError::RelatorFails(i));
        }
        Ok(t)
    }

    pub fn status(&self) -> EnumStatus {
        self.status
    }

    pub fn is_complete(&self) -> bool {
        self.status == EnumStatus::Complete
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    /// Number of cosets (the index); 0 when overflowed.
    pub fn index(&self) -> usize {
        self.cosets
    }

    pub fn columns(&self) -> usize {
        2 * self.generators.len()
    }

    #[inline]
    pub fn get(&self, coset: usize, col: usize) -> usize {
        self.table[coset * self.columns() + col] as usize
    }

    pub fn raw(&self) -> &[u32] {
        &self.table
    }

    pub fn trace(&self, coset: usize, cols: &[usize]) -> usize {
        cols.iter().fold(coset, |c, &x| self.get(c, x))
    }

    pub fn trace_word(&self, p: &Presentation, coset: usize, w: &GroupWord) -> usize {
        self.trace(coset, &p.word_columns(w))
    }

    /// Image of every coset under generator `g`.
    pub fn permutation(&self, g: usize) -> Vec<usize> {
        (0..self.cosets).map(|c| self.get(c, 2 * g)).collect()
    }

    pub fn permutations(&self) -> Vec<Vec<usize>> {
        (0..self.generators.len()).map(|g| self.permutation(g)).collect()
    }

    /// First relator (by position) that fails to close at some coset.
    pub fn failing_relator(&self, p: &Presentation) -> Option<usize> {
        let rels = p.relator_columns();
        rels.iter().position(|r| (0..self.cosets).any(|c| self.trace(c, r) != c))
    }

    /// Spanning-tree edge `(parent, column)` reaching each coset; coset 0 has none.
    pub fn tree(&self) -> Vec<Option<(usize, usize)>> {
        let mut parent = vec![None; self.cosets];
        let mut seen = vec![false; self.cosets];
        if self.cosets > 0 {
            seen[0] = true;
        }
        for c in 0..self.cosets {
            for x in 0..self.columns() {
                let d = self.get(c, x);
                if !seen[d] {
                    seen[d] = true;
                    parent[d] = Some((c, x));
                }
            }
        }
        parent
    }

    /// Coset representatives as column sequences along the spanning tree.
    pub fn transversal(&self) -> Vec<Vec<usize>> {
        let tree = self.tree();
        let mut reps: Vec<Vec<usize>> = vec![Vec::new(); self.cosets];
        // Standard order guarantees parents precede children.
        for d in 1..self.cosets {
            let (c, x) = tree[d].expect("standardized table is connected");
            let mut w = reps[c].clone();
            w.push(x);
            reps[d] = w;
        }
        reps
    }

    pub fn columns_to_word(&self, cols: &[usize]) -> GroupWord {
        GroupWord::from_letters(cols.iter().map(|&x| (self.generators[x / 2].as_str(), if x % 2 == 0 { 1 } else { -1 })))
    }

    /// Whether the subgroup of `self` contains the subgroup of `other`
    /// (both tables over the same presentation).
    pub fn contains_subgroup_of(&self, other: &CosetTable) -> bool {
        // Schreier generators of `other` must fix coset 0 of `self`.
        let reps = other.transversal();
        (0..other.cosets).all(|c| {
            (0..other.columns()).step_by(2).all(|x| {
                let d = other.get(c, x);
                let mut w = reps[c].clone();
                w.push(x);
                w.extend(reps[d].iter().rev().map(|&y| y ^ 1));
                self.trace(0, &w) == 0
            })
        })
    }

    /// Renumbers cosets reachable from 0 in first-appearance order and drops
    /// the rest.
    fn standardize(&mut self) {
        let cols = self.columns();
        let n = self.cosets;
        if n == 0 {
            return;
        }
        let mut new_of = vec![u32::MAX; n];
        let mut old_of = vec![0u32];
        new_of[0] = 0;
        let mut i = 0;
        while i < old_of.len() {
            let o = old_of[i] as usize;
            for x in 0..cols {
                let t = self.table[o * cols + x] as usize;
                if new_of[t] == u32::MAX {
                    new_of[t] = old_of.len() as u32;
                    old_of.push(t as u32);
                }
            }
            i += 1;
        }
        let mut table = Vec::with_capacity(old_of.len() * cols);
        for &o in &old_of {
            for x in 0..cols {
                table.push(new_of[self.table[o as usize * cols + x] as usize]);
            }
        }
        self.cosets = old_of.len();
        self.table = table;
    }
}

/// Enumerates the cosets of the subgroup generated by `subgens` in the
/// group presented by `p`, defining at most `max_cosets` live cosets.
pub fn coset_enumerate(p: &Presentation, subgens: &[GroupWord], max_cosets: usize, strategy: Strategy) -> CosetTable {
    assert!(max_cosets >= 1, "max_cosets must be positive");
    let mut e = Enumerator::new(p, subgens, max_cosets, strategy == Strategy::Felsch);
    let ok = match strategy {
        Strategy::Hlt => e.run_hlt(),
        Strategy::Felsch => e.run_felsch(),
    };
    if !ok {
        return CosetTable::overflowed(p.generators().to_vec(), max_cosets, e.total_defined);
    }
    e.finish(p.generators().to_vec())
}

/// Order of the group presented by `p`, if enumeration over the trivial
/// subgroup completes within the limit.
pub fn group_order(p: &Presentation, max_cosets: usize) -> Option<usize> {
    let t = coset_enumerate(p, &[], max_cosets, Strategy::Hlt);
    t.is_complete().then(|| t.index())
}

struct Overflow;

const NONE: u32 = 0;
const DEDUCTION_CAP: usize = 1 << 20;

/// Working state; cosets are 1-based so that 0 marks an undefined entry.
struct Enumerator {
    cols: usize,
    rels: Vec<Vec<usize>>,
    subgens: Vec<Vec<usize>>,
    /// Rotations of relators grouped by their first column.
    rotations: Vec<Vec<Vec<usize>>>,
    table: Vec<u32>,
    /// `p[c] == c` for live cosets; otherwise points towards the survivor.
    p: Vec<u32>,
    n: usize,
    live: usize,
    limit: usize,
    total_defined: usize,
    felsch: bool,
    deductions: Vec<(u32, usize)>,
    deductions_lost: bool,
}

impl Enumerator {
    fn new(pres: &Presentation, subgens: &[GroupWord], limit: usize, felsch: bool) -> Self {
        let cols = 2 * pres.rank();
        let rels = pres.relator_columns();
        let mut rotations = vec![Vec::new(); cols];
        for r in &rels {
            for i in 0..r.len() {
                let rot: Vec<usize> = r[i..].iter().chain(&r[..i]).copied().collect();
                if !rotations[rot[0]].contains(&rot) {
                    rotations[rot[0]].push(rot);
                }
            }
        }
        let mut e = Enumerator {
            cols,
            rels,
            subgens: subgens.iter().map(|w| pres.word_columns(w)).collect(),
            rotations,
            table: vec![NONE; 2 * cols],
            p: vec![0, 1],
            n: 1,
            live: 1,
            limit,
            total_defined: 1,
            felsch,
            deductions: Vec::new(),
            deductions_lost: false,
        };
        e.table.reserve(cols * limit.min(1 << 16));
        e
    }

    #[inline]
    fn at(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.cols + x]
    }

    #[inline]
    fn set(&mut self, c: u32, x: usize, d: u32) {
        self.table[c as usize * self.cols + x] = d;
    }

    #[inline]
    fn is_live(&self, c: u32) -> bool {
        self.p[c as usize] == c
    }

    fn push_deduction(&mut self, c: u32, x: usize) {
        if !self.felsch {
            return;
        }
        if self.deductions.len() >= DEDUCTION_CAP {
            self.deductions_lost = true;
        } else {
            self.deductions.push((c, x));
        }
    }

    fn define(&mut self, c: u32, x: usize) -> Result<(), Overflow> {
        if self.live >= self.limit {
            return Err(Overflow);
        }
        self.n += 1;
        self.live += 1;
        self.total_defined += 1;
        let d = self.n as u32;
        self.table.extend(std::iter::repeat_n(NONE, self.cols));
        self.p.push(d);
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        self.push_deduction(c, x);
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.p[r as usize] != r {
            r = self.p[r as usize];
        }
        let mut c = c;
        while self.p[c as usize] != r {
            let next = self.p[c as usize];
            self.p[c as usize] = r;
            c = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32, queue: &mut Vec<u32>) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, kill) = if a < b { (a, b) } else { (b, a) };
        self.p[kill as usize] = keep;
        self.live -= 1;
        queue.push(kill);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.at(e, x);
                if f == NONE {
                    continue;
                }
                if self.at(f, x ^ 1) == e {
                    self.set(f, x ^ 1, NONE);
                }
                let (e1, f1) = (self.rep(e), self.rep(f));
                let t = self.at(e1, x);
                if t != NONE {
                    self.merge(f1, t, &mut queue);
                } else {
                    let u = self.at(f1, x ^ 1);
                    if u != NONE {
                        self.merge(e1, u, &mut queue);
                    } else {
                        self.set(e1, x, f1);
                        self.set(f1, x ^ 1, e1);
                        self.push_deduction(e1, x);
                    }
                }
            }
        }
    }

    /// Traces `w` from `c` in both directions. With `fill`, gaps are closed
    /// by new definitions; otherwise only single-entry gaps are deduced.
    fn scan(&mut self, c: u32, w: &[usize], fill: bool) -> Result<(), Overflow> {
        loop {
            let (mut f, mut i) = (c, 0);
            let mut j = w.len();
            while i < j {
                let t = self.at(f, w[i]);
                if t == NONE {
                    break;
                }
                f = t;
                i += 1;
            }
            if i == j {
                if f != c {
                    self.coincidence(f, c);
                }
                return Ok(());
            }
            let mut b = c;
            while j > i {
                let t = self.at(b, w[j - 1] ^ 1);
                if t == NONE {
                    break;
                }
                b = t;
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                self.set(f, w[i], b);
                self.set(b, w[i] ^ 1, f);
                self.push_deduction(f, w[i]);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    fn fill_subgroup(&mut self) -> Result<(), Overflow> {
        for k in 0..self.subgens.len() {
            let w = std::mem::take(&mut self.subgens[k]);
            let r = self.rep(1);
            let res = self.scan(r, &w, true);
            self.subgens[k] = w;
            res?;
        }
        Ok(())
    }

    /// Scans every live coset under every relator without defining.
    fn lookahead(&mut self) {
        let rels = std::mem::take(&mut self.rels);
        let mut c = 1;
        while c <= self.n as u32 {
            for r in &rels {
                if !self.is_live(c) {
                    break;
                }
                let _ = self.scan(c, r, false);
            }
            c += 1;
        }
        self.rels = rels;
    }

    /// Renumbers live cosets consecutively; returns the new number of the
    /// first live coset at or after `c`.
    fn compact(&mut self, c: u32) -> u32 {
        let mut new_of = vec![0u32; self.n + 1];
        let mut k = 0;
        for old in 1..=self.n as u32 {
            if self.is_live(old) {
                k += 1;
                new_of[old as usize] = k;
            }
        }
        let mut table = vec![NONE; (k as usize + 1) * self.cols];
        for old in 1..=self.n as u32 {
            if !self.is_live(old) {
                continue;
            }
            let nc = new_of[old as usize] as usize;
            for x in 0..self.cols {
                let t = self.at(old, x);
                table[nc * self.cols + x] = if t == NONE { NONE } else { new_of[t as usize] };
            }
        }
        let next = (c..=self.n as u32).find(|&o| self.is_live(o)).map_or(k + 1, |o| new_of[o as usize]);
        self.table = table;
        self.n = k as usize;
        self.p = (0..=k).collect();
        self.deductions.clear();
        next
    }

    fn run_hlt(&mut self) -> bool {
        if self.fill_subgroup().is_err() {
            return false;
        }
        loop {
            let mut c = 1u32;
            while c as usize <= self.n {
                if !self.is_live(c) {
                    c += 1;
                    continue;
                }
                if self.hlt_row(c).is_err() {
                    self.lookahead();
                    c = self.compact(c);
                    if self.live >= self.limit {
                        // Lookahead may have completed the table.
                        return self.all_defined();
                    }
                    continue;
                }
                c += 1;
            }
            // Coincidences can reopen rows already passed.
            if self.all_defined() {
                return true;
            }
        }
    }

    fn hlt_row(&mut self, c: u32) -> Result<(), Overflow> {
        let rels = std::mem::take(&mut self.rels);
        let mut res = Ok(());
        for r in &rels {
            if !self.is_live(c) {
                break;
            }
            res = self.scan(c, r, true);
            if res.is_err() {
                break;
            }
        }
        self.rels = rels;
        res?;
        for x in 0..self.cols {
            if !self.is_live(c) {
                break;
            }
            if self.at(c, x) == NONE {
                self.define(c, x)?;
            }
        }
        Ok(())
    }

    fn all_defined(&self) -> bool {
        (1..=self.n as u32).filter(|&c| self.is_live(c)).all(|c| (0..self.cols).all(|x| self.at(c, x) != NONE))
    }

    fn process_deductions(&mut self) {
        while let Some((c, x)) = self.deductions.pop() {
            if !self.is_live(c) {
                continue;
            }
            for (from, col) in [(c, x), (self.at(c, x), x ^ 1)] {
                if from == NONE || !self.is_live(from) {
                    continue;
                }
                for k in 0..self.rotations[col].len() {
                    if !self.is_live(from) {
                        break;
                    }
                    let w = std::mem::take(&mut self.rotations[col][k]);
                    let _ = self.scan(from, &w, false);
                    self.rotations[col][k] = w;
                }
            }
            if self.deductions_lost {
                self.deductions.clear();
                self.deductions_lost = false;
                self.lookahead();
            }
        }
    }

    fn run_felsch(&mut self) -> bool {
        if self.fill_subgroup().is_err() {
            return false;
        }
        self.process_deductions();
        let mut c = 1u32;
        loop {
            while c as usize <= self.n && (!self.is_live(c) || (0..self.cols).all(|x| self.at(c, x) != NONE)) {
                c += 1;
            }
            if c as usize > self.n {
                return true;
            }
            let x = (0..self.cols).find(|&x| self.at(c, x) == NONE).unwrap();
            let before = self.live;
            if self.define(c, x).is_err() {
                return false;
            }
            self.process_deductions();
            let _ = self.fill_subgroup();
            self.process_deductions();
            if self.live < before + 1 {
                // Coincidences may have reopened earlier rows.
                c = 1;
            }
        }
    }

    fn finish(mut self, generators: Vec<String>) -> CosetTable {
        let first = self.rep(1);
        let _ = self.compact(first);
        let n = self.n;
        let mut table = Vec::with_capacity(n * self.cols);
        for c in 1..=n as u32 {
            for x in 0..self.cols {
                table.push(self.at(c, x) - 1);
            }
        }
        let mut t = CosetTable::from_raw(generators, n, table);
        t.defined = self.total_defined;
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{delta, fixture, free};

    fn w(s: &str) -> GroupWord {
        GroupWord::parse(s).unwrap()
    }

    #[test]
    fn small_groups() {
        for s in [Strategy::Hlt, Strategy::Felsch] {
            let s3 = Presentation::from_strs("s3", &["a", "b"], &["a^2", "b^3", "(a b)^2"]).unwrap();
            let t = coset_enumerate(&s3, &[], 100, s);
            assert_eq!(t.index(), 6);
            assert_eq!(t.failing_relator(&s3), None);
            assert_eq!(coset_enumerate(&s3, &[w("a")], 100, s).index(), 3);
            let d2 = delta(2);
            // Order 10: the index-2 kernel is the lens space group Z/5.
            assert_eq!(coset_enumerate(&d2, &[], 1000, s).index(), 10, "{s:?}");
        }
    }

    #[test]
    fn overflow_is_a_status() {
        let t = coset_enumerate(&free(2), &[w("a")], 1000, Strategy::Hlt);
        assert_eq!(t.status(), EnumStatus::Overflowed { limit: 1000 });
        let t = coset_enumerate(&free(2), &[w("a")], 1000, Strategy::Felsch);
        assert!(!t.is_complete());
    }

    #[test]
    fn abelian_quotients() {
        let g = fixture("gamma4").unwrap();
        // Killing the commutator leaves Z/3 + Z/15.
        let ab = g.with_relators("ab", [w("a b A B")]);
        assert_eq!(coset_enumerate(&ab, &[], 1000, Strategy::Hlt).index(), 45);
        assert_eq!(coset_enumerate(&ab, &[], 1000, Strategy::Felsch).index(), 45);
    }

    #[test]
    fn permutation_round_trip() {
        let d2 = delta(2);
        let t = coset_enumerate(&d2, &[], 100, Strategy::Hlt);
        let u = CosetTable::from_permutations(&d2, &t.permutations()).unwrap();
        assert_eq!(t.raw(), u.raw());
        assert!(t.contains_subgroup_of(&t));
    }
}
