//! Elementary semigroups: the roots of the class trees.
//!
//! For a feasible pair `(F, g)` every elementary semigroup is
//! `{0} ∪ A ∪ {F+1, ->}` with `A` a subset of `{ceil((F+1)/2), ..., F-1}` of
//! size `F - g`, so the roots are streamed as `(F - g)`-combinations of that
//! range in lexicographic order.

use crate::error::{Error, Result};
use crate::kunz::{KunzVector, MAX_GENUS};
use crate::semigroup::GapSemigroup;

/// `Sem(F, g)` is nonempty iff `g <= F <= 2g - 1`.
pub fn feasible(frobenius: u32, genus: u32) -> bool {
    genus >= 1 && genus <= frobenius && frobenius < 2 * genus
}

pub(crate) fn check_feasible(frobenius: u32, genus: u32) -> Result<()> {
    if genus > MAX_GENUS {
        return Err(Error::GenusCap {
            genus,
            cap: MAX_GENUS,
        });
    }
    if !feasible(frobenius, genus) {
        return Err(Error::Infeasible { frobenius, genus });
    }
    Ok(())
}

/// First element of the candidate range, `ceil((F+1)/2)`.
fn range_start(frobenius: u32) -> u32 {
    frobenius / 2 + 1
}

/// `#E(F, g) = C(ceil(F/2) - 1, F - g)`.
pub fn count_elementary(frobenius: u32, genus: u32) -> Result<u64> {
    check_feasible(frobenius, genus)?;
    let n = frobenius.div_ceil(2) - 1;
    Ok(num_integer::binomial(
        u64::from(n),
        u64::from(frobenius - genus),
    ))
}

/// One elementary root: the elements of `A` below `F`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElementarySeed {
    pub frobenius: u32,
    pub genus: u32,
    pub subset: Vec<u32>,
}

impl ElementarySeed {
    /// `χ_A`: coordinate `i` is 0 iff `i ∈ A` or `i > F`.
    pub fn kunz(&self) -> KunzVector {
        let below_f = (u128::MAX >> (127 - self.frobenius)) & !1;
        let bits = self.subset.iter().fold(below_f, |acc, &a| acc & !(1 << a));
        KunzVector::from_raw(self.genus, bits)
    }

    pub fn semigroup(&self) -> GapSemigroup {
        let gaps = (1..=u64::from(self.frobenius))
            .filter(|&i| self.subset.binary_search(&(i as u32)).is_err())
            .collect();
        GapSemigroup::from_sorted_gaps_unchecked(gaps)
    }
}

/// Lexicographic stream of the seeds of `E(F, g)`.
#[derive(Clone, Debug)]
pub struct ElementarySeeds {
    frobenius: u32,
    genus: u32,
    // Current combination as offsets into the candidate range; `None` once
    // exhausted.
    current: Option<Vec<u32>>,
    pool: u32,
}

impl Iterator for ElementarySeeds {
    type Item = ElementarySeed;

    fn next(&mut self) -> Option<ElementarySeed> {
        let current = self.current.as_mut()?;
        let start = range_start(self.frobenius);
        let seed = ElementarySeed {
            frobenius: self.frobenius,
            genus: self.genus,
            subset: current.iter().map(|&k| start + k).collect(),
        };
        if !next_combination(current, self.pool) {
            self.current = None;
        }
        Some(seed)
    }
}

/// Advances `comb` (a strictly increasing k-subset of `0..n`) to its
/// lexicographic successor. Returns false when `comb` was the last one.
fn next_combination(comb: &mut [u32], n: u32) -> bool {
    let k = comb.len() as u32;
    let Some(pos) = (0..comb.len()).rev().find(|&p| comb[p] < n - k + p as u32) else {
        return false;
    };
    comb[pos] += 1;
    for q in pos + 1..comb.len() {
        comb[q] = comb[q - 1] + 1;
    }
    true
}

pub fn enumerate_elementary(frobenius: u32, genus: u32) -> Result<ElementarySeeds> {
    check_feasible(frobenius, genus)?;
    let pool = frobenius.div_ceil(2) - 1;
    let k = frobenius - genus;
    Ok(ElementarySeeds {
        frobenius,
        genus,
        current: Some((0..k).collect()),
        pool,
    })
}

/// The seed at lexicographic position `rank`, for splitting the stream into
/// independent ranges.
pub fn seed_at(frobenius: u32, genus: u32, rank: u64) -> Result<Option<ElementarySeed>> {
    let total = count_elementary(frobenius, genus)?;
    if rank >= total {
        return Ok(None);
    }
    let pool = u64::from(frobenius.div_ceil(2) - 1);
    let k = u64::from(frobenius - genus);
    let start = range_start(frobenius);
    let mut rank = rank;
    let mut subset = Vec::with_capacity(k as usize);
    let mut next = 0u64;
    for slot in 0..k {
        let remaining = k - slot - 1;
        loop {
            // Combinations that start this slot with `next`.
            let block = num_integer::binomial(pool - next - 1, remaining);
            if rank < block {
                break;
            }
            rank -= block;
            next += 1;
        }
        subset.push(start + next as u32);
        next += 1;
    }
    Ok(Some(ElementarySeed {
        frobenius,
        genus,
        subset,
    }))
}

pub fn is_elementary(s: &GapSemigroup) -> bool {
    match s.frobenius() {
        Some(f) => f < 2 * s.multiplicity(),
        None => true,
    }
}

/// `max{i : x_i = 1} < 2 min{i : x_i = 0}`.
pub fn is_elementary_kunz(x: &KunzVector) -> bool {
    x.frobenius() < 2 * x.multiplicity()
}
