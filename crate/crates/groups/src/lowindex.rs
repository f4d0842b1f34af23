//! Low-index subgroups by backtracking over partial coset tables (Sims).
//!
//! Entries are filled at the first undefined position in row-major order,
//! so every partial table is standard. Conjugacy classes are pruned to their
//! least member by renumbering from each coset. In normal-only mode the
//! canonicity test is replaced by the requirement that every renumbering
//! reproduces the table, which is propagated as deductions.

use num_bigint::BigInt;
use rigidity_core::GroupWord;
use serde::Serialize;

use crate::coset::CosetTable;
use crate::presentation::Presentation;
use crate::rs::{subgroup_abelianization, SchreierGenerators};

const UNDEF: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LowIndexOptions {
    /// Only normal subgroups.
    pub normal_only: bool,
    /// Search-node budget; exceeding it yields a partial result.
    pub node_limit: u64,
}

impl Default for LowIndexOptions {
    fn default() -> Self {
        LowIndexOptions { normal_only: false, node_limit: 50_000_000 }
    }
}

#[derive(Debug, Clone)]
pub struct LowIndexTables {
    /// Canonical tables sorted by flattened table.
    pub tables: Vec<CosetTable>,
    pub complete: bool,
    pub nodes: u64,
}

/// Coset tables of all subgroups of index at most `max_index`, one per
/// conjugacy class (every normal subgroup is its own class).
pub fn low_index_tables(p: &Presentation, max_index: usize, opts: LowIndexOptions) -> LowIndexTables {
    assert!(max_index >= 1, "max_index must be positive");
    let finish = |s: Search, complete: bool, nodes: u64| {
        let mut tables: Vec<CosetTable> =
            s.found.into_iter().map(|(n, t)| CosetTable::from_raw(p.generators().to_vec(), n, t)).collect();
        tables.sort_by(|a, b| a.raw().cmp(b.raw()));
        LowIndexTables { tables, complete, nodes }
    };
    if !opts.normal_only {
        let mut s = Search::new(p, max_index, opts, Order::GapFirst);
        let complete = s.run();
        let nodes = s.nodes;
        return finish(s, complete, nodes);
    }
    // Alternate the two orders under a growing budget; the total cost is
    // within a small factor of the better order.
    let mut budget = PORTFOLIO_START;
    let mut total = 0;
    loop {
        let last = budget >= opts.node_limit;
        let limit = budget.min(opts.node_limit);
        for order in [Order::GapFirst, Order::FreeFirst] {
            let mut s = Search::new(p, max_index, LowIndexOptions { node_limit: limit, ..opts }, order);
            let complete = s.run();
            total += s.nodes;
            if complete || (last && order == Order::FreeFirst) {
                return finish(s, complete, total);
            }
        }
        budget = budget.saturating_mul(4);
    }
}

const PORTFOLIO_START: u64 = 4096;

#[derive(Debug, Clone, Serialize)]
pub struct SubgroupRecord {
    pub index: usize,
    #[serde(serialize_with = "crate::serialize_ints")]
    pub invariants: Vec<BigInt>,
    pub normal: bool,
    /// Index of the normal core, when the permutation group is at most `CORE_CAP`.
    pub core_index: Option<usize>,
    /// Schreier generators of the subgroup as words in the ambient generators.
    pub generators: Vec<GroupWord>,
    #[serde(skip)]
    pub table: CosetTable,
}

#[derive(Debug, Clone, Serialize)]
pub struct SubgroupListing {
    pub max_index: usize,
    pub complete: bool,
    pub nodes: u64,
    pub subgroups: Vec<SubgroupRecord>,
}

pub const CORE_CAP: usize = 1_000_000;

impl SubgroupRecord {
    pub fn new(p: &Presentation, table: CosetTable) -> Self {
        let invariants = subgroup_abelianization(p, &table).expect("complete table");
        let generators = SchreierGenerators::new(&table).words(&table);
        SubgroupRecord {
            index: table.index(),
            invariants,
            normal: is_normal(&table),
            core_index: perm_group_order(&table.permutations(), CORE_CAP),
            generators,
            table,
        }
    }
}

/// One record per conjugacy class of subgroups of index at most `max_index`.
pub fn low_index_subgroups(p: &Presentation, max_index: usize) -> SubgroupListing {
    low_index_subgroups_with(p, max_index, LowIndexOptions::default())
}

pub fn low_index_subgroups_with(p: &Presentation, max_index: usize, opts: LowIndexOptions) -> SubgroupListing {
    let r = low_index_tables(p, max_index, opts);
    SubgroupListing {
        max_index,
        complete: r.complete,
        nodes: r.nodes,
        subgroups: r.tables.into_iter().map(|t| SubgroupRecord::new(p, t)).collect(),
    }
}

/// Whether the subgroup fixing coset 0 is normal: each Schreier generator
/// must fix every coset.
pub fn is_normal(table: &CosetTable) -> bool {
    let reps = table.transversal();
    let n = table.index();
    let cols = table.columns();
    (0..n).all(|c| {
        (0..cols).step_by(2).all(|x| {
            let d = table.get(c, x);
            let mut w = reps[c].clone();
            w.push(x);
            w.extend(reps[d].iter().rev().map(|&y| y ^ 1));
            (0..n).all(|s| table.trace(s, &w) == s)
        })
    })
}

/// Order of the permutation group generated by `perms`, or `None` past `cap`.
pub fn perm_group_order(perms: &[Vec<usize>], cap: usize) -> Option<usize> {
    let n = perms.first().map_or(0, Vec::len);
    let id: Vec<u32> = (0..n as u32).collect();
    let mut seen = std::collections::HashSet::new();
    seen.insert(id.clone());
    let mut queue = vec![id];
    let mut i = 0;
    while i < queue.len() {
        let cur = queue[i].clone();
        i += 1;
        for g in perms {
            let next: Vec<u32> = cur.iter().map(|&v| g[v as usize] as u32).collect();
            if seen.insert(next.clone()) {
                if seen.len() > cap {
                    return None;
                }
                queue.push(next);
            }
        }
    }
    Some(seen.len())
}

struct Search {
    cols: usize,
    max: usize,
    opts: LowIndexOptions,
    rotations: Vec<Vec<Vec<usize>>>,
    rels: Vec<Vec<usize>>,
    table: Vec<u32>,
    n: usize,
    /// Creation edge of each coset (normal-only mode).
    parent: Vec<(u32, usize)>,
    log: Vec<usize>,
    deductions: Vec<(u32, usize)>,
    found: Vec<(usize, Vec<u32>)>,
    nodes: u64,
    aborted: bool,
    order: Order,
}

/// Ranking of candidate gaps in normal-only mode. Short relators with large
/// powers favour closing the shortest trace; long relators favour the column
/// with the fewest choices. Neither dominates, so both run as a portfolio.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Order {
    GapFirst,
    FreeFirst,
}

impl Search {
    fn new(p: &Presentation, max: usize, opts: LowIndexOptions, order: Order) -> Self {
        let cols = 2 * p.rank();
        let mut rotations = vec![Vec::new(); cols];
        let rels = p.relator_columns();
        for r in &rels {
            for i in 0..r.len() {
                let rot: Vec<usize> = r[i..].iter().chain(&r[..i]).copied().collect();
                if !rotations[rot[0]].contains(&rot) {
                    rotations[rot[0]].push(rot);
                }
            }
        }
        Search {
            cols,
            max,
            opts,
            rotations,
            rels,
            table: vec![UNDEF; max * cols],
            n: 1,
            parent: vec![(0, 0); max],
            log: Vec::new(),
            deductions: Vec::new(),
            found: Vec::new(),
            nodes: 0,
            aborted: false,
            order,
        }
    }

    #[inline]
    fn at(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.cols + x]
    }

    fn assign(&mut self, c: u32, x: usize, d: u32) {
        let (i, j) = (c as usize * self.cols + x, d as usize * self.cols + (x ^ 1));
        self.table[i] = d;
        self.table[j] = c;
        self.log.push(i);
        self.log.push(j);
        self.deductions.push((c, x));
    }

    fn undo(&mut self, mark: usize) {
        while self.log.len() > mark {
            let i = self.log.pop().unwrap();
            self.table[i] = UNDEF;
        }
    }

    /// Scans `w` from `c` without definitions; false on a contradiction.
    fn scan(&mut self, c: u32, w: &[usize]) -> bool {
        let (mut f, mut i, mut j) = (c, 0, w.len());
        while i < j {
            let t = self.at(f, w[i]);
            if t == UNDEF {
                break;
            }
            f = t;
            i += 1;
        }
        if i == j {
            return f == c;
        }
        let mut b = c;
        while j > i {
            let t = self.at(b, w[j - 1] ^ 1);
            if t == UNDEF {
                break;
            }
            b = t;
            j -= 1;
        }
        if j == i {
            return f == b;
        }
        if j == i + 1 {
            self.assign(f, w[i], b);
        }
        true
    }

    fn process(&mut self) -> bool {
        while let Some((c, x)) = self.deductions.pop() {
            let d = self.at(c, x);
            for (from, col) in [(c, x), (d, x ^ 1)] {
                for k in 0..self.rotations[col].len() {
                    let w = std::mem::take(&mut self.rotations[col][k]);
                    let ok = self.scan(from, &w);
                    self.rotations[col][k] = w;
                    if !ok {
                        self.deductions.clear();
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Normal-only propagation, first stage: every non-tree edge `(j, x) -> k`
    /// gives a loop `w_j x w_k^-1` in the subgroup, which must then close at
    /// every coset; such loops are scanned like relators.
    fn propagate_loops(&mut self) -> bool {
        loop {
            if !self.process() {
                return false;
            }
            let before = self.log.len();
            let n = self.n;
            let mut words: Vec<Vec<usize>> = vec![Vec::new(); n];
            for j in 1..n {
                let (p, x) = self.parent[j];
                let mut w = words[p as usize].clone();
                w.push(x);
                words[j] = w;
            }
            let mut lp = Vec::new();
            for j in 0..n as u32 {
                for x in (0..self.cols).step_by(2) {
                    let k = self.at(j, x);
                    if k == UNDEF || self.parent[k as usize] == (j, x) && k != 0 || self.parent[j as usize] == (k, x ^ 1) && j != 0 {
                        continue;
                    }
                    lp.clear();
                    lp.extend_from_slice(&words[j as usize]);
                    lp.push(x);
                    lp.extend(words[k as usize].iter().rev().map(|&y| y ^ 1));
                    for s in 1..n as u32 {
                        if !self.scan(s, &lp) {
                            self.deductions.clear();
                            return false;
                        }
                    }
                }
            }
            if self.log.len() == before {
                return true;
            }
        }
    }

    /// Normal-only propagation: for every coset s, the map j -> s.w_j must
    /// respect every defined edge.
    fn propagate_regular(&mut self) -> bool {
        let n = self.n;
        let mut phi = vec![UNDEF; n];
        loop {
            if !self.process() {
                return false;
            }
            let before = self.log.len();
            for s in 1..n as u32 {
                phi[0] = s;
                for j in 1..n {
                    let (pc, px) = self.parent[j];
                    let a = phi[pc as usize];
                    phi[j] = if a == UNDEF { UNDEF } else { self.at(a, px) };
                }
                for j in 0..n as u32 {
                    let a = phi[j as usize];
                    if a == UNDEF {
                        continue;
                    }
                    for x in 0..self.cols {
                        let k = self.at(j, x);
                        if k == UNDEF {
                            continue;
                        }
                        let b = phi[k as usize];
                        if b == UNDEF {
                            continue;
                        }
                        let t = self.at(a, x);
                        if t == UNDEF {
                            if self.at(b, x ^ 1) != UNDEF {
                                return false;
                            }
                            self.assign(a, x, b);
                        } else if t != b {
                            return false;
                        }
                    }
                }
                // Distinct cosets must stay distinct under phi.
                let mut hit = vec![false; n];
                for &a in &phi {
                    if a != UNDEF {
                        if hit[a as usize] {
                            return false;
                        }
                        hit[a as usize] = true;
                    }
                }
            }
            if self.log.len() == before {
                return true;
            }
        }
    }

    /// Sims' test: no renumbering from another coset gives a smaller table.
    fn is_canonical(&self) -> bool {
        let n = self.n;
        let mut new_of = vec![UNDEF; n];
        let mut old_of = Vec::with_capacity(n);
        'start: for s in 1..n as u32 {
            new_of.iter_mut().for_each(|v| *v = UNDEF);
            old_of.clear();
            new_of[s as usize] = 0;
            old_of.push(s);
            let mut next = 1u32;
            for row in 0..n as u32 {
                if row as usize >= old_of.len() {
                    continue 'start;
                }
                let o = old_of[row as usize];
                for x in 0..self.cols {
                    let t = self.at(o, x);
                    let cur = self.at(row, x);
                    if t == UNDEF || cur == UNDEF {
                        continue 'start;
                    }
                    let mut m = new_of[t as usize];
                    if m == UNDEF {
                        m = next;
                        new_of[t as usize] = m;
                        old_of.push(t);
                        next += 1;
                    }
                    if m < cur {
                        return false;
                    }
                    if m > cur {
                        continue 'start;
                    }
                }
            }
        }
        true
    }

    fn first_gap(&self) -> Option<(u32, usize)> {
        let i = self.table[..self.n * self.cols].iter().position(|&v| v == UNDEF)?;
        Some(((i / self.cols) as u32, i % self.cols))
    }

    /// Normal-only order: the first undefined entry on some relator trace,
    /// ranked by the trace's missing length and the column's branching
    /// factor. Any order works there because no canonicity test is involved.
    fn tightest_gap(&self) -> Option<(u32, usize)> {
        // Branching factor of a column: cosets whose inverse slot is free.
        let free: Vec<usize> =
            (0..self.cols).map(|x| (0..self.n as u32).filter(|&d| self.at(d, x ^ 1) == UNDEF).count()).collect();
        let mut best: Option<((usize, usize), u32, usize)> = None;
        for c in 0..self.n as u32 {
            for w in &self.rels {
                let (mut f, mut i) = (c, 0);
                while i < w.len() {
                    let t = self.at(f, w[i]);
                    if t == UNDEF {
                        break;
                    }
                    f = t;
                    i += 1;
                }
                if i == w.len() {
                    continue;
                }
                let (mut b, mut j) = (c, w.len());
                while j > i {
                    let t = self.at(b, w[j - 1] ^ 1);
                    if t == UNDEF {
                        break;
                    }
                    b = t;
                    j -= 1;
                }
                let key = match self.order {
                    Order::GapFirst => (j - i, free[w[i]]),
                    Order::FreeFirst => (free[w[i]], j - i),
                };
                if best.is_none_or(|(k, _, _)| key < k) {
                    best = Some((key, f, w[i]));
                }
            }
        }
        best.map(|(_, c, x)| (c, x)).or_else(|| self.first_gap())
    }

    fn run(&mut self) -> bool {
        self.descend();
        !self.aborted
    }

    fn descend(&mut self) {
        self.nodes += 1;
        if self.nodes > self.opts.node_limit {
            self.aborted = true;
            return;
        }
        let gap = if self.opts.normal_only { self.tightest_gap() } else { self.first_gap() };
        let Some((c, x)) = gap else {
            self.found.push((self.n, self.table[..self.n * self.cols].to_vec()));
            return;
        };
        for d in 0..=self.n as u32 {
            if self.aborted {
                return;
            }
            let fresh = d as usize == self.n;
            if fresh && self.n == self.max {
                break;
            }
            if !fresh && self.at(d, x ^ 1) != UNDEF {
                continue;
            }
            let mark = self.log.len();
            if fresh {
                self.parent[self.n] = (c, x);
                self.n += 1;
            }
            self.assign(c, x, d);
            let ok = if self.opts.normal_only { self.propagate_loops() && self.propagate_regular() } else { self.process() && self.is_canonical() };
            if ok {
                self.descend();
            }
            self.deductions.clear();
            self.undo(mark);
            if fresh {
                self.n -= 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{delta, free};

    #[test]
    fn free_group_counts() {
        // Conjugacy classes of subgroups of F2 of index 1, 2, 3: 1, 3, 7.
        let f = free(2);
        let r = low_index_tables(&f, 3, LowIndexOptions::default());
        let count = |k| r.tables.iter().filter(|t| t.index() == k).count();
        assert_eq!((count(1), count(2), count(3)), (1, 3, 7));
        // Normal subgroups: the kernels onto Z/2 and Z/3.
        let n = low_index_tables(&f, 3, LowIndexOptions { normal_only: true, ..Default::default() });
        let ncount = |k| n.tables.iter().filter(|t| t.index() == k).count();
        assert_eq!((ncount(1), ncount(2), ncount(3)), (1, 3, 4));
        for t in &n.tables {
            assert!(is_normal(t));
        }
    }

    #[test]
    fn normal_mode_agrees_with_filter() {
        let d4 = delta(4);
        let all = low_index_tables(&d4, 6, LowIndexOptions::default());
        let normal = low_index_tables(&d4, 6, LowIndexOptions { normal_only: true, ..Default::default() });
        let filtered: Vec<_> = all.tables.iter().filter(|t| is_normal(t)).map(|t| t.raw().to_vec()).collect();
        let direct: Vec<_> = normal.tables.iter().map(|t| t.raw().to_vec()).collect();
        assert_eq!(filtered, direct);
    }

    #[test]
    fn node_limit_gives_partial() {
        let r = low_index_tables(&free(2), 6, LowIndexOptions { normal_only: false, node_limit: 100 });
        assert!(!r.complete);
    }
}
