//! Numerical semigroups in gap-set form.
//!
//! A numerical semigroup `S` is stored as its finite set of gaps `N \ S`,
//! kept strictly increasing. Everything above the largest gap (the Frobenius
//! number) belongs to `S`, so every closure check only has to look at
//! integers up to twice the Frobenius number.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GapSemigroup {
    gaps: Vec<u64>,
}

impl GapSemigroup {
    /// The semigroup `N` itself (no gaps).
    pub fn naturals() -> Self {
        GapSemigroup { gaps: Vec::new() }
    }

    /// Builds a semigroup from an arbitrary collection of gaps, checking that
    /// the complement is closed under addition.
    pub fn from_gaps<I: IntoIterator<Item = u64>>(gaps: I) -> Result<Self> {
        let mut gaps: Vec<u64> = gaps.into_iter().collect();
        gaps.sort_unstable();
        gaps.dedup();
        if gaps.first() == Some(&0) {
            return Err(Error::ZeroGap);
        }
        let s = GapSemigroup { gaps };
        if let Some((a, b)) = s.closure_violation() {
            return Err(Error::NotClosed { a, b });
        }
        Ok(s)
    }

    /// `gaps` must be strictly increasing, positive, and the complement of a
    /// semigroup. Checked in debug builds only.
    pub(crate) fn from_sorted_gaps_unchecked(gaps: Vec<u64>) -> Self {
        let s = GapSemigroup { gaps };
        debug_assert!(s.gaps.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(s.gaps.first() != Some(&0));
        debug_assert!(s.closure_violation().is_none());
        s
    }

    /// The submonoid of `N` generated by `gens`.
    ///
    /// Membership is sieved over a growing window until a run of consecutive
    /// members as long as the smallest generator appears; from there on every
    /// integer is reachable by adding that generator.
    pub fn from_generators(gens: &[u64]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        if gens.contains(&0) {
            return Err(Error::ZeroGenerator);
        }
        let gcd = gens.iter().fold(0u64, |acc, &g| acc.gcd(&g));
        if gcd != 1 {
            return Err(Error::NotNumericalSemigroup { gcd });
        }
        let mut gens = gens.to_vec();
        gens.sort_unstable();
        gens.dedup();
        let smallest = gens[0] as usize;

        let mut member = vec![true];
        let mut run = 1usize;
        let mut bound = 2 * smallest + 2;
        loop {
            while member.len() < bound {
                let n = member.len();
                let is_member = gens
                    .iter()
                    .take_while(|&&g| g as usize <= n)
                    .any(|&g| member[n - g as usize]);
                member.push(is_member);
                run = if is_member { run + 1 } else { 0 };
                if run >= smallest {
                    let gaps = member
                        .iter()
                        .enumerate()
                        .filter(|(_, &m)| !m)
                        .map(|(i, _)| i as u64)
                        .collect();
                    return Ok(GapSemigroup::from_sorted_gaps_unchecked(gaps));
                }
            }
            bound *= 2;
        }
    }

    pub fn gaps(&self) -> &[u64] {
        &self.gaps
    }

    pub fn genus(&self) -> u64 {
        self.gaps.len() as u64
    }

    /// Largest gap; `None` for `N`, which has no Frobenius number.
    pub fn frobenius(&self) -> Option<u64> {
        self.gaps.last().copied()
    }

    /// Smallest integer `c` with `c + N` contained in `S`.
    pub fn conductor(&self) -> u64 {
        self.frobenius().map_or(0, |f| f + 1)
    }

    pub fn multiplicity(&self) -> u64 {
        // Smallest positive integer not in the gap list: gaps start at 1 and
        // the first hole in 1, 2, 3, ... is the multiplicity.
        self.gaps
            .iter()
            .enumerate()
            .find(|&(i, &gap)| gap != i as u64 + 1)
            .map_or(self.gaps.len() as u64 + 1, |(i, _)| i as u64 + 1)
    }

    pub fn contains(&self, n: u64) -> bool {
        self.gaps.binary_search(&n).is_err()
    }

    /// Nonzero elements of `S` up to and including `bound`.
    pub fn elements_up_to(&self, bound: u64) -> impl Iterator<Item = u64> + '_ {
        (1..=bound).filter(move |&n| self.contains(n))
    }

    /// First pair of non-gaps whose sum is a gap, if any.
    fn closure_violation(&self) -> Option<(u64, u64)> {
        let f = self.frobenius()?;
        for a in self.elements_up_to(f) {
            for b in self.elements_up_to(f - a).filter(|&b| b >= a) {
                if !self.contains(a + b) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Elements of `S \ {0}` that are not the sum of two nonzero elements.
    pub fn minimal_generators(&self) -> Vec<u64> {
        let m = self.multiplicity();
        // Anything above F + m is m plus an element, so not minimal.
        let upper = (self.conductor() + m).saturating_sub(1).max(m);
        self.elements_up_to(upper)
            .filter(|&s| !self.is_sum_of_two(s))
            .collect()
    }

    fn is_sum_of_two(&self, s: u64) -> bool {
        self.elements_up_to(s / 2).any(|a| self.contains(s - a))
    }

    pub fn is_minimal_generator(&self, x: u64) -> bool {
        x > 0 && self.contains(x) && !self.is_sum_of_two(x)
    }

    /// Gaps `x` with `x + s` in `S` for every nonzero `s` in `S`.
    pub fn pseudo_frobenius(&self) -> Result<Vec<u64>> {
        let f = self.frobenius().ok_or(Error::NoPseudoFrobenius)?;
        Ok(self
            .gaps
            .iter()
            .copied()
            .filter(|&x| self.elements_up_to(f).all(|s| self.contains(x + s)))
            .collect())
    }

    /// `S \ {x}` for a minimal generator `x`.
    pub fn remove_generator(&self, x: u64) -> Result<Self> {
        if !self.is_minimal_generator(x) {
            return Err(Error::NotMinimalGenerator { x });
        }
        let mut gaps = self.gaps.clone();
        let at = gaps.binary_search(&x).unwrap_err();
        gaps.insert(at, x);
        Ok(GapSemigroup::from_sorted_gaps_unchecked(gaps))
    }

    /// Apéry set of `S` with respect to a nonzero element `n`.
    pub fn apery_set(&self, n: u64) -> Result<AperySet> {
        if n == 0 || !self.contains(n) {
            return Err(Error::NotAnElement { n });
        }
        let elements = (0..n)
            .map(|i| {
                (0..)
                    .map(|k| i + k * n)
                    .find(|&w| self.contains(w))
                    .unwrap()
            })
            .collect();
        Ok(AperySet {
            modulus: n,
            elements,
        })
    }
}

impl fmt::Display for GapSemigroup {
    /// Renders the canonical comma-separated gap list (empty for `N`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.gaps)
    }
}

pub(crate) fn write_list<T: fmt::Display>(f: &mut impl fmt::Write, items: &[T]) -> fmt::Result {
    for (k, item) in items.iter().enumerate() {
        if k > 0 {
            f.write_char(',')?;
        }
        write!(f, "{item}")?;
    }
    Ok(())
}

/// `w_i` is the least element of `S` congruent to `i` modulo `modulus`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AperySet {
    pub modulus: u64,
    pub elements: Vec<u64>,
}

impl AperySet {
    /// Selmer: `g = (sum w_i) / n - (n - 1) / 2`.
    pub fn genus_by_selmer(&self) -> u64 {
        let n = self.modulus;
        let sum: u64 = self.elements.iter().sum();
        let twice = 2 * sum - n * (n - 1);
        debug_assert_eq!(twice % (2 * n), 0);
        twice / (2 * n)
    }

    /// Selmer: `F = max w_i - n`; `-1` when `S = N`.
    pub fn frobenius_by_selmer(&self) -> i64 {
        *self.elements.iter().max().unwrap() as i64 - self.modulus as i64
    }
}
