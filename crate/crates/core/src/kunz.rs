//! Kunz-coordinates vectors relative to `2g`.
//!
//! For a semigroup `S` of genus `g`, the Apéry set with respect to `2g` has
//! every `w_i` equal to either `i` or `i + 2g`, so the Kunz coordinates
//! `(w_i - i) / 2g` are 0/1 and coordinate `i` is 1 exactly when `i` is a gap.
//!
//! Layout: the vector is packed into one `u128`, coordinate `i` at bit `i`
//! for `i` in `1..=2g-1`. Bit 0 stands for the element 0 and is always clear,
//! and no bit above `2g-1` is ever set. This caps the genus at
//! [`MAX_GENUS`].

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::semigroup::GapSemigroup;

/// Largest genus whose vector (2g-1 coordinates plus bit 0) fits in a `u128`.
pub const MAX_GENUS: u32 = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KunzVector {
    genus: u32,
    bits: u128,
}

/// The first Kunz-membership condition a 0/1 vector fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `x_i + x_j - x_{i+j} < 0`
    Superadditivity { i: u32, j: u32 },
    /// The coordinates do not sum to `g`.
    Weight { expected: u32, found: u32 },
    /// `x_F` must be 1 for a vector of Frobenius number `F`.
    FrobeniusNotGap { frobenius: u32 },
    /// A coordinate beyond `F` is 1.
    GapBeyondFrobenius { index: u32 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::Superadditivity { i, j } => {
                write!(f, "x_{i} + x_{j} - x_{} < 0", i + j)
            }
            Violation::Weight { expected, found } => {
                write!(f, "coordinates sum to {found}, expected {expected}")
            }
            Violation::FrobeniusNotGap { frobenius } => write!(f, "x_{frobenius} is 0"),
            Violation::GapBeyondFrobenius { index } => write!(f, "x_{index} is 1 beyond F"),
        }
    }
}

/// Bits `1..=2g-1`.
#[inline]
pub(crate) fn window(genus: u32) -> u128 {
    debug_assert!((1..=MAX_GENUS).contains(&genus));
    (u128::MAX >> (128 - 2 * genus)) & !1
}

#[inline]
fn below(i: u32) -> u128 {
    if i >= 128 {
        u128::MAX
    } else {
        (1u128 << i) - 1
    }
}

/// Whether `i` is the sum of two elements of the nonzero-element mask
/// `elements`. Word-level: reversing the mask below `i` maps bit `j` to bit
/// `i - j`.
#[inline]
pub(crate) fn is_sum_of_two(elements: u128, i: u32) -> bool {
    let low = elements & below(i) & !1;
    low != 0 && (low.reverse_bits() >> (127 - i)) & low != 0
}

/// Whether `p` is a pseudo-Frobenius number of the vector `gaps`:
/// `x_p = 1` and `x_j >= x_{p+j}` for all `j` in the window.
#[inline]
pub(crate) fn is_pseudo_frobenius_bits(gaps: u128, window: u128, p: u32) -> bool {
    let elements = window & !gaps;
    gaps >> p & 1 == 1 && (gaps >> p) & elements == 0
}

fn superadditivity_violation(bits: u128, window: u128, limit: u32) -> Option<(u32, u32)> {
    // Only sums up to `limit` are constrained.
    let elements = window & !bits & below(limit + 1);
    let mut rest = elements;
    while rest != 0 {
        let i = rest.trailing_zeros();
        rest &= rest - 1;
        let bad = (elements << i) & bits & below(limit + 1) & !below(2 * i);
        if bad != 0 {
            let sum = bad.trailing_zeros();
            return Some((i, sum - i));
        }
    }
    None
}

impl KunzVector {
    /// Wraps already-validated bits.
    pub(crate) fn from_raw(genus: u32, bits: u128) -> Self {
        debug_assert_eq!(bits & !window(genus), 0);
        KunzVector { genus, bits }
    }

    /// Builds a vector from its coordinates `x_1..x_{2g-1}`, rejecting
    /// anything outside `Kunz(g)`.
    pub fn from_coords(coords: &[bool]) -> Result<Self> {
        let genus = genus_for_len(coords.len())?;
        let bits = pack(coords);
        let x = KunzVector { genus, bits };
        x.validate().map_err(Error::NotKunzVector)?;
        Ok(x)
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    /// Number of coordinates, `2g - 1`.
    pub fn len(&self) -> u32 {
        2 * self.genus - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Packed gap mask (see module docs for layout).
    pub fn bits(&self) -> u128 {
        self.bits
    }

    pub fn window(&self) -> u128 {
        window(self.genus)
    }

    /// Coordinate `x_i`, `1 <= i <= 2g - 1`.
    pub fn get(&self, i: u32) -> bool {
        debug_assert!(i >= 1 && i <= self.len());
        self.bits >> i & 1 == 1
    }

    pub fn coords(&self) -> Vec<bool> {
        (1..=self.len()).map(|i| self.get(i)).collect()
    }

    /// Nonzero elements of `S_x` inside the window.
    pub fn elements(&self) -> u128 {
        self.window() & !self.bits
    }

    /// `x + e_i - e_j`: makes `i` a gap and `j` an element.
    pub(crate) fn swap(&self, gain: u32, lose: u32) -> Self {
        debug_assert!(!self.get(gain) && self.get(lose));
        KunzVector {
            genus: self.genus,
            bits: (self.bits | 1 << gain) & !(1 << lose),
        }
    }

    pub fn validate(&self) -> std::result::Result<(), Violation> {
        let found = self.bits.count_ones();
        if let Some((i, j)) = superadditivity_violation(self.bits, self.window(), self.len()) {
            return Err(Violation::Superadditivity { i, j });
        }
        if found != self.genus {
            return Err(Violation::Weight {
                expected: self.genus,
                found,
            });
        }
        Ok(())
    }

    pub fn frobenius(&self) -> u32 {
        127 - self.bits.leading_zeros()
    }

    /// Smallest element; `2g` when the whole window is gaps (only for g = 1).
    pub fn multiplicity(&self) -> u32 {
        let e = self.elements();
        if e == 0 {
            2 * self.genus
        } else {
            e.trailing_zeros()
        }
    }

    /// Minimal-generator test for an index inside the window.
    pub fn is_minimal_generator(&self, i: u32) -> bool {
        !self.get(i) && !is_sum_of_two(self.elements(), i)
    }

    pub fn is_pseudo_frobenius(&self, p: u32) -> bool {
        is_pseudo_frobenius_bits(self.bits, self.window(), p)
    }

    /// The gap set `supp(x)`.
    pub fn gaps(&self) -> Vec<u64> {
        BitIndices(self.bits).map(u64::from).collect()
    }

    pub fn to_semigroup(&self) -> GapSemigroup {
        GapSemigroup::from_sorted_gaps_unchecked(self.gaps())
    }

    /// Generators `2g, 2g*x_1 + 1, ..., 2g*x_{2g-1} + 2g - 1` of `S_x`.
    pub fn inverse_generators(&self) -> Vec<u64> {
        let n = 2 * u64::from(self.genus);
        std::iter::once(n)
            .chain((1..=self.len()).map(|i| n * u64::from(self.get(i)) + u64::from(i)))
            .collect()
    }
}

struct BitIndices(u128);

impl Iterator for BitIndices {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(i)
    }
}

pub(crate) fn bit_indices(bits: u128) -> impl Iterator<Item = u32> {
    BitIndices(bits)
}

fn genus_for_len(len: usize) -> Result<u32> {
    if len.is_multiple_of(2) {
        return Err(Error::KunzLength(len));
    }
    let genus = (len as u32).div_ceil(2);
    if genus > MAX_GENUS {
        return Err(Error::GenusCap {
            genus,
            cap: MAX_GENUS,
        });
    }
    Ok(genus)
}

fn pack(coords: &[bool]) -> u128 {
    coords
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .fold(0, |acc, (k, _)| acc | 1 << (k + 1))
}

impl fmt::Display for KunzVector {
    /// Coordinates as a bit string, `x_1` first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.len() {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for KunzVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KunzVector({self})")
    }
}

impl FromStr for KunzVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let coords = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::KunzLength(s.len())),
            })
            .collect::<Result<Vec<_>>>()?;
        KunzVector::from_coords(&coords)
    }
}

/// `Kunz(S)`: coordinate `i` is 1 iff `i` is a gap, for `i` in `1..=2g-1`.
pub fn kunz_from_semigroup(s: &GapSemigroup) -> Result<KunzVector> {
    let genus = check_genus(s.genus())?;
    let bits = s.gaps().iter().fold(0u128, |acc, &gap| acc | 1 << gap);
    Ok(KunzVector::from_raw(genus, bits))
}

/// Same vector through the Apéry set of `S` with respect to `2g`:
/// `x_i = (w_i - i) / 2g`.
pub fn kunz_from_apery(s: &GapSemigroup) -> Result<KunzVector> {
    let genus = check_genus(s.genus())?;
    let n = 2 * u64::from(genus);
    let ap = s.apery_set(n)?;
    let bits = ap
        .elements
        .iter()
        .enumerate()
        .skip(1)
        .fold(0u128, |acc, (i, &w)| {
            let coord = (w - i as u64) / n;
            debug_assert!(coord <= 1);
            acc | (coord as u128) << i
        });
    Ok(KunzVector::from_raw(genus, bits))
}

fn check_genus(genus: u64) -> Result<u32> {
    if genus == 0 {
        return Err(Error::ZeroGenus);
    }
    if genus > u64::from(MAX_GENUS) {
        return Err(Error::GenusCap {
            genus: genus.min(u64::from(u32::MAX)) as u32,
            cap: MAX_GENUS,
        });
    }
    Ok(genus as u32)
}

/// `S_x`, after checking that `x` really is a Kunz vector.
pub fn semigroup_from_kunz(x: &KunzVector) -> Result<GapSemigroup> {
    x.validate().map_err(Error::NotKunzVector)?;
    Ok(x.to_semigroup())
}

/// Membership in `Kunz(g)` for a raw 0/1 vector of length `2g - 1`.
pub fn is_kunz_vector(coords: &[bool]) -> bool {
    KunzVector::from_coords(coords).is_ok()
}

/// Membership in `Kunz(F, g)`: `x_F = 1`, zeros after `F`, superadditivity
/// on sums up to `F`, and weight `g` on the first `F` coordinates.
pub fn is_kunz_of_fg(coords: &[bool], frobenius: u32) -> bool {
    let Ok(genus) = genus_for_len(coords.len()) else {
        return false;
    };
    check_fg(genus, pack(coords), frobenius).is_ok()
}

pub(crate) fn check_fg(
    genus: u32,
    bits: u128,
    frobenius: u32,
) -> std::result::Result<(), Violation> {
    if frobenius == 0 || frobenius > 2 * genus - 1 || bits >> frobenius & 1 == 0 {
        return Err(Violation::FrobeniusNotGap { frobenius });
    }
    let beyond = bits & !below(frobenius + 1);
    if beyond != 0 {
        return Err(Violation::GapBeyondFrobenius {
            index: beyond.trailing_zeros(),
        });
    }
    if let Some((i, j)) = superadditivity_violation(bits, window(genus), frobenius) {
        return Err(Violation::Superadditivity { i, j });
    }
    let found = (bits & below(frobenius + 1)).count_ones();
    if found != genus {
        return Err(Violation::Weight {
            expected: genus,
            found,
        });
    }
    Ok(())
}

impl KunzVector {
    pub fn is_kunz_of_fg(&self, frobenius: u32) -> bool {
        check_fg(self.genus, self.bits, frobenius).is_ok()
    }
}

/// Invariants of `S_x` read directly off the coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KunzInvariants {
    pub frobenius: u32,
    pub multiplicity: u32,
    /// Minimal generators inside `1..=2g-1` only; generators at or above
    /// `2g` are not visible from the window.
    pub minimal_generators: Vec<u32>,
    pub pseudo_frobenius: Vec<u32>,
}

pub fn kunz_invariants(x: &KunzVector) -> KunzInvariants {
    KunzInvariants {
        frobenius: x.frobenius(),
        multiplicity: x.multiplicity(),
        minimal_generators: bit_indices(x.elements())
            .filter(|&i| x.is_minimal_generator(i))
            .collect(),
        pseudo_frobenius: bit_indices(x.bits)
            .filter(|&p| x.is_pseudo_frobenius(p))
            .collect(),
    }
}
