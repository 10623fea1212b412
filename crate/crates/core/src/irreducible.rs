//! Irreducible semigroups with a fixed Frobenius number.
//!
//! `S` is irreducible iff `g(S) = ceil((F(S)+1)/2)`: symmetric when `F` is
//! odd, pseudo-symmetric when `F` is even. All of them with Frobenius
//! number `F` form a single class whose root is
//! `T(F) = {0} ∪ {ceil((F+1)/2), ..., F-1} ∪ {F+1, ->}`.

use std::fmt;

use serde::Serialize;

use crate::elementary;
use crate::error::{Error, Result};
use crate::forest::{self, Scope, Visit};
use crate::semigroup::GapSemigroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IrreducibleKind {
    Symmetric,
    PseudoSymmetric,
}

impl IrreducibleKind {
    pub fn for_frobenius(frobenius: u64) -> Self {
        if frobenius % 2 == 1 {
            IrreducibleKind::Symmetric
        } else {
            IrreducibleKind::PseudoSymmetric
        }
    }
}

impl fmt::Display for IrreducibleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IrreducibleKind::Symmetric => "symmetric",
            IrreducibleKind::PseudoSymmetric => "pseudo-symmetric",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibleClassification {
    pub kind: IrreducibleKind,
    pub semigroup: GapSemigroup,
}

/// Genus shared by every irreducible semigroup of Frobenius number `F`.
pub fn irreducible_genus(frobenius: u32) -> u32 {
    (frobenius + 1).div_ceil(2)
}

/// `Some` iff `g(S) = ceil((F+1)/2)`. `N` has no Frobenius number and is
/// never classified.
pub fn classify(s: &GapSemigroup) -> Option<IrreducibleClassification> {
    let f = s.frobenius()?;
    (s.genus() == (f + 1).div_ceil(2)).then(|| IrreducibleClassification {
        kind: IrreducibleKind::for_frobenius(f),
        semigroup: s.clone(),
    })
}

/// The unique elementary root `T(F)`.
pub fn root_of(frobenius: u32) -> Result<GapSemigroup> {
    let genus = irreducible_genus(frobenius);
    let mut seeds = elementary::enumerate_elementary(frobenius, genus)?;
    let seed = seeds.next().expect("one root");
    debug_assert!(seeds.next().is_none());
    Ok(seed.semigroup())
}

/// Walks `I(F)`; the visitor also receives the symmetric/pseudo-symmetric
/// tag. Returns the number of semigroups visited.
pub fn enumerate_irreducible<E, V>(frobenius: u32, mut visitor: V) -> Result<u64, E>
where
    E: From<Error>,
    V: FnMut(Visit<'_>, IrreducibleKind) -> Result<(), E>,
{
    let genus = irreducible_genus(frobenius);
    let scope = Scope::frobenius_genus(frobenius, genus)?;
    assert_eq!(elementary::count_elementary(frobenius, genus)?, 1);
    let kind = IrreducibleKind::for_frobenius(u64::from(frobenius));
    forest::enumerate(scope, |v| visitor(v, kind))
}
