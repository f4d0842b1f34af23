//! Lück approximation sequences `b1(H_i) / [G : H_i]` along nested chains.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rigidity_core::exact::snf;

use crate::coset::{CosetTable, TableError};
use crate::presentation::Presentation;
use crate::rs::subgroup_abelianization;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LuckError {
    #[error("chain member {0} is not a complete coset table")]
    Incomplete(usize),
    #[error("chain member {0} is not contained in its predecessor")]
    NotNested(usize),
    #[error("the abelianization is trivial, so there is no cyclic cover")]
    PerfectGroup,
    #[error("modulus {modulus} does not divide the invariant {invariant}")]
    BadModulus { modulus: u64, invariant: BigInt },
    #[error("moduli must form a divisibility chain: {0} then {1}")]
    NotDivisibilityChain(u64, u64),
    #[error(transparent)]
    Table(#[from] TableError),
}

/// First Betti number of the subgroup: the number of free summands.
pub fn betti_1(p: &Presentation, table: &CosetTable) -> Result<usize, TableError> {
    Ok(subgroup_abelianization(p, table)?.iter().filter(|d| d.is_zero()).count())
}

pub fn luck_sequence(p: &Presentation, chain: &[CosetTable]) -> Result<Vec<BigRational>, LuckError> {
    for (i, t) in chain.iter().enumerate() {
        if !t.is_complete() {
            return Err(LuckError::Incomplete(i));
        }
        if i > 0 && !chain[i - 1].contains_subgroup_of(t) {
            return Err(LuckError::NotNested(i));
        }
    }
    chain
        .iter()
        .map(|t| {
            let b = betti_1(p, t)?;
            Ok(BigRational::new(BigInt::from(b), BigInt::from(t.index())))
        })
        .collect()
}

/// Kernels of `G -> Z/m` for each modulus, all factoring through the last
/// Smith coordinate of the abelianization (the largest cyclic factor, free if
/// there is one). Moduli must form a divisibility chain so the kernels nest.
pub fn cyclic_cover_chain(p: &Presentation, moduli: &[u64]) -> Result<Vec<CosetTable>, LuckError> {
    let m = p.relation_matrix();
    let cols = p.rank();
    let res = snf(&m, true);
    let (_, right) = res.transforms.expect("transforms requested");
    let last = cols.checked_sub(1).ok_or(LuckError::PerfectGroup)?;
    let invariant = res.diagonal.get(last).cloned().unwrap_or_else(BigInt::zero);
    if invariant.is_one() {
        return Err(LuckError::PerfectGroup);
    }
    for w in moduli.windows(2) {
        if w[0] == 0 || w[1] % w[0] != 0 {
            return Err(LuckError::NotDivisibilityChain(w[0], w[1]));
        }
    }
    moduli
        .iter()
        .map(|&modulus| {
            if modulus == 0 || (!invariant.is_zero() && (&invariant % BigInt::from(modulus)) != BigInt::zero()) {
                return Err(LuckError::BadModulus { modulus, invariant: invariant.clone() });
            }
            let md = BigInt::from(modulus);
            let perms: Vec<Vec<usize>> = (0..cols)
                .map(|g| {
                    let shift = ((right.get(g, last) % &md + &md) % &md).to_string().parse::<usize>().unwrap();
                    (0..modulus as usize).map(|i| (i + shift) % modulus as usize).collect()
                })
                .collect();
            Ok(CosetTable::from_permutations(p, &perms)?)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{fixture, free};

    #[test]
    fn free_group_chain() {
        let f = free(2);
        let chain = cyclic_cover_chain(&f, &[2, 4, 8]).unwrap();
        let v = luck_sequence(&f, &chain).unwrap();
        let want: Vec<BigRational> =
            [2, 4, 8].iter().map(|&d| BigRational::new(BigInt::from(d + 1), BigInt::from(d))).collect();
        assert_eq!(v, want);
        let reversed: Vec<CosetTable> = chain.into_iter().rev().collect();
        assert_eq!(luck_sequence(&f, &reversed), Err(LuckError::NotNested(1)));
    }

    #[test]
    fn bad_moduli() {
        let g = fixture("gamma4").unwrap();
        assert!(matches!(cyclic_cover_chain(&g, &[4]), Err(LuckError::BadModulus { .. })));
        assert!(matches!(cyclic_cover_chain(&g, &[3, 5]), Err(LuckError::NotDivisibilityChain(3, 5))));
    }
}
