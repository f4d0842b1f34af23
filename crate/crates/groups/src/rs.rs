//! Reidemeister–Schreier rewriting and Tietze reduction.

use std::collections::HashSet;

use num_bigint::BigInt;
use rigidity_core::exact::{abelian_invariants, IntMatrix};
use rigidity_core::GroupWord;

use crate::coset::{CosetTable, TableError};
use crate::presentation::Presentation;

/// Schreier generators of a complete table: one per non-tree edge `(coset,
/// generator)`, in row-major order.
#[derive(Debug, Clone)]
pub struct SchreierGenerators {
    /// `slot[c * rank + g]` is the generator index of edge `(c, g)`, or
    /// `None` on a tree edge.
    slot: Vec<Option<usize>>,
    edges: Vec<(usize, usize)>,
    rank: usize,
}

impl SchreierGenerators {
    pub fn new(table: &CosetTable) -> Self {
        let rank = table.generators().len();
        let tree = table.tree();
        let mut slot = vec![None; table.index() * rank];
        let mut edges = Vec::new();
        for c in 0..table.index() {
            for g in 0..rank {
                let d = table.get(c, 2 * g);
                let is_tree = tree[d] == Some((c, 2 * g)) || tree[c] == Some((d, 2 * g + 1));
                if !is_tree {
                    slot[c * rank + g] = Some(edges.len());
                    edges.push((c, g));
                }
            }
        }
        SchreierGenerators { slot, edges, rank }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Words `w_c g w_d^-1` in the ambient generators.
    pub fn words(&self, table: &CosetTable) -> Vec<GroupWord> {
        let reps = table.transversal();
        self.edges
            .iter()
            .map(|&(c, g)| {
                let d = table.get(c, 2 * g);
                let mut cols = reps[c].clone();
                cols.push(2 * g);
                cols.extend(reps[d].iter().rev().map(|&y| y ^ 1));
                table.columns_to_word(&cols)
            })
            .collect()
    }

    /// Rewrites a loop traced from `coset` as a sequence of signed Schreier
    /// generators `(index, +1 | -1)`.
    pub fn rewrite(&self, table: &CosetTable, coset: usize, cols: &[usize]) -> Vec<(usize, i8)> {
        let mut out = Vec::new();
        let mut c = coset;
        for &x in cols {
            let d = table.get(c, x);
            let (from, g, sign) = if x % 2 == 0 { (c, x / 2, 1) } else { (d, x / 2, -1) };
            if let Some(s) = self.slot[from * self.rank + g] {
                out.push((s, sign));
            }
            c = d;
        }
        out
    }
}

fn schreier_name(i: usize) -> String {
    format!("y{}", i + 1)
}

/// Unreduced Reidemeister–Schreier presentation: every relator rewritten
/// from every coset.
pub fn reidemeister_schreier_raw(p: &Presentation, table: &CosetTable) -> Result<Presentation, TableError> {
    if !table.is_complete() {
        return Err(TableError::Incomplete);
    }
    let sg = SchreierGenerators::new(table);
    let names: Vec<String> = (0..sg.len()).map(schreier_name).collect();
    let mut rels = Vec::new();
    for r in p.relator_columns() {
        for c in 0..table.index() {
            let letters = sg.rewrite(table, c, &r);
            rels.push(GroupWord::from_letters(letters.iter().map(|&(s, e)| (names[s].as_str(), e))));
        }
    }
    Ok(Presentation::new(&format!("{}-sub{}", p.name, table.index()), names, rels).expect("names are valid"))
}

/// Subgroup presentation after Tietze reduction.
pub fn reidemeister_schreier(p: &Presentation, table: &CosetTable) -> Result<Presentation, TableError> {
    Ok(tietze_reduce(&reidemeister_schreier_raw(p, table)?, TIETZE_CAP))
}

/// Abelian invariants of the subgroup described by `table`.
pub fn subgroup_abelianization(p: &Presentation, table: &CosetTable) -> Result<Vec<BigInt>, TableError> {
    if !table.is_complete() {
        return Err(TableError::Incomplete);
    }
    let sg = SchreierGenerators::new(table);
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let mut seen = HashSet::new();
    for r in p.relator_columns() {
        for c in 0..table.index() {
            let mut row = vec![0i64; sg.len()];
            for (s, e) in sg.rewrite(table, c, &r) {
                row[s] += e as i64;
            }
            if row.iter().any(|&v| v != 0) && seen.insert(row.clone()) {
                rows.push(row.into_iter().map(BigInt::from).collect());
            }
        }
    }
    let m = IntMatrix::from_rows(rows, sg.len()).expect("rows have one entry per generator");
    Ok(abelian_invariants(&m))
}

pub const TIETZE_CAP: usize = 10_000;
const LENGTH_CAP: usize = 1 << 20;

type Letters = Vec<(usize, i8)>;

fn reduce(w: &mut Letters) {
    let mut out: Letters = Vec::with_capacity(w.len());
    for &l in w.iter() {
        if let Some(&last) = out.last() {
            if last.0 == l.0 && last.1 == -l.1 {
                out.pop();
                continue;
            }
        }
        out.push(l);
    }
    // Cyclic reduction.
    let (mut i, mut j) = (0, out.len());
    while j >= i + 2 && out[i].0 == out[j - 1].0 && out[i].1 == -out[j - 1].1 {
        i += 1;
        j -= 1;
    }
    *w = out[i..j].to_vec();
}

fn invert(w: &[(usize, i8)]) -> Letters {
    w.iter().rev().map(|&(g, e)| (g, -e)).collect()
}

/// Least rotation of `w` or of its inverse; equal for relators that define
/// the same normal closure trivially.
fn canonical(w: &Letters) -> Letters {
    let mut best: Option<Letters> = None;
    for v in [w.clone(), invert(w)] {
        for i in 0..v.len().max(1) {
            let rot: Letters = v[i..].iter().chain(&v[..i]).copied().collect();
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}

/// Removes trivial and duplicate relators and eliminates generators that
/// occur exactly once in some relator, for at most `cap` eliminations.
pub fn tietze_reduce(p: &Presentation, cap: usize) -> Presentation {
    let gens = p.generators().to_vec();
    let mut rels: Vec<Letters> = p
        .relators()
        .iter()
        .map(|r| {
            r.letters().into_iter().map(|(g, s)| (p.generator_index(g).unwrap(), s)).collect()
        })
        .collect();
    let mut alive = vec![true; gens.len()];
    for _ in 0..cap {
        for r in rels.iter_mut() {
            reduce(r);
        }
        rels.retain(|r| !r.is_empty());
        let mut seen = HashSet::new();
        rels.retain(|r| seen.insert(canonical(r)));
        // Shortest relator containing a generator exactly once.
        let mut pick: Option<(usize, usize)> = None;
        for (ri, r) in rels.iter().enumerate() {
            if pick.is_some_and(|(pr, _)| rels[pr].len() <= r.len()) {
                continue;
            }
            let mut counts = std::collections::HashMap::new();
            for &(g, _) in r {
                *counts.entry(g).or_insert(0usize) += 1;
            }
            if let Some(pos) = r.iter().position(|(g, _)| counts[g] == 1) {
                pick = Some((ri, pos));
            }
        }
        let Some((ri, pos)) = pick else { break };
        let r = rels.swap_remove(ri);
        let (g, e) = r[pos];
        // r = u g^e v, so g^e = u^-1 v^-1.
        let u = &r[..pos];
        let v = &r[pos + 1..];
        let mut value: Letters = invert(u);
        value.extend(invert(v));
        if e < 0 {
            value = invert(&value);
        }
        let inverse_value = invert(&value);
        let mut total = 0;
        for w in rels.iter_mut() {
            if w.iter().any(|&(h, _)| h == g) {
                let mut nw = Letters::with_capacity(w.len());
                for &(h, s) in w.iter() {
                    if h == g {
                        nw.extend(if s > 0 { &value } else { &inverse_value });
                    } else {
                        nw.push((h, s));
                    }
                }
                *w = nw;
            }
            total += w.len();
        }
        alive[g] = false;
        if total > LENGTH_CAP {
            break;
        }
    }
    for r in rels.iter_mut() {
        reduce(r);
    }
    rels.retain(|r| !r.is_empty());
    let kept: Vec<usize> = (0..gens.len()).filter(|&g| alive[g]).collect();
    let names: Vec<String> = kept.iter().map(|&g| gens[g].clone()).collect();
    let words = rels.iter().map(|r| GroupWord::from_letters(r.iter().map(|&(g, s)| (gens[g].as_str(), s))));
    Presentation::new(&p.name, names, words).expect("subset of valid generators")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{delta, free};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn index_two_in_free_group() {
        let f = free(2);
        let t = CosetTable::from_permutations(&f, &[vec![1, 0], vec![0, 1]]).unwrap();
        let h = reidemeister_schreier(&f, &t).unwrap();
        assert_eq!(h.rank(), 3);
        assert!(h.relators().is_empty());
        assert_eq!(subgroup_abelianization(&f, &t).unwrap(), ints(&[0, 0, 0]));
    }

    #[test]
    fn commutator_subgroup_of_delta4() {
        let d4 = delta(4);
        // The kernel of the map onto Z/4 sending both meridians to 1.
        let t = CosetTable::from_permutations(&d4, &[vec![1, 2, 3, 0], vec![1, 2, 3, 0]]).unwrap();
        assert_eq!(subgroup_abelianization(&d4, &t).unwrap(), ints(&[3, 15]));
        let h = reidemeister_schreier(&d4, &t).unwrap();
        assert_eq!(h.abelianization(), ints(&[3, 15]));
    }

    #[test]
    fn tietze_keeps_torsion() {
        let p = Presentation::from_strs("g", &["a", "b", "c"], &["a^3", "b = c", "c a c^-1 a"]).unwrap();
        let q = tietze_reduce(&p, 100);
        assert_eq!(q.rank(), 2);
        assert_eq!(q.abelianization(), p.abelianization());
    }
}
