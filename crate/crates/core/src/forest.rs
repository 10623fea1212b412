//! The forest of `Sem(F, g)`.
//!
//! Semigroups with the same Frobenius number and genus are grouped by the
//! projection `theta`, which reflects every nonzero element `x < F/2` to
//! `F - x`. Each class holds exactly one elementary semigroup, and the
//! classes are trees whose edges send a node `P` with `F > 2 m(P)` to its
//! parent `(P \ {m(P)}) ∪ {F - m(P)}`. Walking every tree from its
//! elementary root, for every `F` in `g..=2g-1`, visits `Sem(g)` exactly
//! once without any visited set.
//!
//! All traversal happens on [`KunzVector`]s; the child test is a handful of
//! word operations per candidate index.

use rayon::prelude::*;

use crate::elementary::{self, check_feasible, ElementarySeed};
use crate::error::{Error, Result};
use crate::kunz::{self, is_sum_of_two, KunzVector, MAX_GENUS};
use crate::semigroup::GapSemigroup;

/// `theta(S)`: drop every nonzero `x < F/2` from `S` and add `F - x`.
pub fn theta(s: &GapSemigroup, frobenius: u32) -> Result<GapSemigroup> {
    let genus = s.genus() as u32;
    if s.frobenius() != Some(u64::from(frobenius)) {
        return Err(Error::NotInClass { frobenius, genus });
    }
    let f = u64::from(frobenius);
    let small: Vec<u64> = s.elements_up_to(f).filter(|&x| 2 * x < f).collect();
    let mut gaps: Vec<u64> = s
        .gaps()
        .iter()
        .copied()
        .filter(|&gap| !small.iter().any(|&x| f - x == gap))
        .chain(small.iter().copied())
        .collect();
    gaps.sort_unstable();
    GapSemigroup::from_gaps(gaps)
}

/// `theta` on Kunz vectors: `x + sum e_i - sum e_{F-i}` over `i < F/2` with
/// `x_i = 0`.
pub fn theta_kunz(x: &KunzVector, frobenius: u32) -> Result<KunzVector> {
    kunz::check_fg(x.genus(), x.bits(), frobenius).map_err(Error::NotKunzVector)?;
    let small = x.elements() & ((1u128 << frobenius.div_ceil(2)) - 1);
    let reflected = kunz::bit_indices(small).fold(0u128, |acc, i| acc | 1 << (frobenius - i));
    Ok(KunzVector::from_raw(
        x.genus(),
        (x.bits() | small) & !reflected,
    ))
}

/// One step toward the class root: `x + e_m - e_{F-m}` with `m` the
/// multiplicity. `None` once `F < 2m`, i.e. at the root.
pub fn parent_step(x: &KunzVector, frobenius: u32) -> Option<KunzVector> {
    let m = x.multiplicity();
    (frobenius > 2 * m).then(|| x.swap(m, frobenius - m))
}

/// Smallest candidate child index for `z`: `i > F/2` and `F - i < m(z)`.
#[inline]
fn first_candidate(z: &KunzVector, frobenius: u32) -> u32 {
    let m = z.multiplicity();
    (frobenius / 2 + 1).max((frobenius + 1).saturating_sub(m))
}

/// Remaining child conditions for an index already inside the candidate
/// window. Cheap bit tests first, then the two minimal-generator scans, then
/// the pseudo-Frobenius test on `z + e_i`.
#[inline]
fn passes_child_conditions(z: &KunzVector, frobenius: u32, i: u32) -> bool {
    let bits = z.bits();
    let reflected = frobenius - i;
    let doubled = 2 * reflected;
    if 2 * frobenius == 3 * i || bits >> i & 1 == 1 || bits >> doubled & 1 == 1 {
        return false;
    }
    let elements = z.elements();
    if is_sum_of_two(elements, i) || is_sum_of_two(elements, doubled) {
        return false;
    }
    kunz::is_pseudo_frobenius_bits(bits | 1 << i, z.window(), reflected)
}

fn next_child_index(z: &KunzVector, frobenius: u32, from: u32) -> Option<u32> {
    (from..frobenius).find(|&i| passes_child_conditions(z, frobenius, i))
}

/// Whether `i` belongs to `Gamma(z)`.
pub fn is_child_index(z: &KunzVector, frobenius: u32, i: u32) -> bool {
    i >= first_candidate(z, frobenius) && i < frobenius && passes_child_conditions(z, frobenius, i)
}

/// `Gamma(z)` in increasing order.
pub fn child_indices(z: &KunzVector, frobenius: u32) -> Vec<u32> {
    (first_candidate(z, frobenius)..frobenius)
        .filter(|&i| passes_child_conditions(z, frobenius, i))
        .collect()
}

/// Children of `z` in its class tree, `z + e_i - e_{F-i}` for `i` in
/// `Gamma(z)`.
pub fn children(z: &KunzVector, frobenius: u32) -> Vec<KunzVector> {
    child_indices(z, frobenius)
        .into_iter()
        .map(|i| z.swap(i, frobenius - i))
        .collect()
}

/// Children of `Q` computed on the semigroup itself: `(Q \ {x}) ∪ {F - x}`
/// for minimal generators `x` with `F/2 < x < F`, `F - x < m(Q)`,
/// `2F != 3x`, `2(F - x)` a minimal generator, and `F - x` pseudo-Frobenius
/// in `Q \ {x}`.
pub fn children_semigroup(q: &GapSemigroup, frobenius: u32) -> Vec<GapSemigroup> {
    let f = u64::from(frobenius);
    let m = q.multiplicity();
    let mut out = Vec::new();
    for x in q.minimal_generators() {
        if !(2 * x > f && x < f && f - x < m && 2 * f != 3 * x) {
            continue;
        }
        if !q.is_minimal_generator(2 * (f - x)) {
            continue;
        }
        let without = q.remove_generator(x).expect("x is a minimal generator");
        let pf = without.pseudo_frobenius().expect("F is still a gap");
        if !pf.contains(&(f - x)) {
            continue;
        }
        let gaps = without.gaps().iter().copied().filter(|&gap| gap != f - x);
        out.push(GapSemigroup::from_gaps(gaps).expect("child is a numerical semigroup"));
    }
    out
}

/// Depth-first cursor over one class tree, root first, children in
/// increasing index order.
///
/// Holds one `(node, next candidate)` frame per tree level, so memory is
/// bounded by the tree depth.
#[derive(Clone, Debug)]
pub struct ClassTraversal {
    frobenius: u32,
    pending_root: Option<KunzVector>,
    stack: Vec<(KunzVector, u32)>,
    max_depth: usize,
}

impl ClassTraversal {
    pub fn new(root: KunzVector, frobenius: u32) -> Result<Self> {
        kunz::check_fg(root.genus(), root.bits(), frobenius).map_err(Error::NotKunzVector)?;
        if !elementary::is_elementary_kunz(&root) {
            return Err(Error::NotInClass {
                frobenius,
                genus: root.genus(),
            });
        }
        Ok(ClassTraversal {
            frobenius,
            pending_root: Some(root),
            stack: Vec::with_capacity(root.genus() as usize),
            max_depth: 0,
        })
    }

    /// Deepest stack seen so far.
    pub fn max_depth(&self) -> usize {
        self.max_depth
    }

    fn push(&mut self, node: KunzVector) {
        debug_assert!(
            node.is_kunz_of_fg(self.frobenius),
            "{node} not in Kunz({}, g)",
            self.frobenius
        );
        let from = first_candidate(&node, self.frobenius);
        self.stack.push((node, from));
        self.max_depth = self.max_depth.max(self.stack.len());
    }
}

impl Iterator for ClassTraversal {
    type Item = KunzVector;

    fn next(&mut self) -> Option<KunzVector> {
        if let Some(root) = self.pending_root.take() {
            self.push(root);
            return Some(root);
        }
        let frobenius = self.frobenius;
        while let Some((node, from)) = self.stack.last_mut() {
            match next_child_index(node, frobenius, *from) {
                Some(i) => {
                    *from = i + 1;
                    let child = node.swap(i, frobenius - i);
                    self.push(child);
                    return Some(child);
                }
                None => {
                    self.stack.pop();
                }
            }
        }
        None
    }
}

/// What a visitor sees for each semigroup.
#[derive(Clone, Copy, Debug)]
pub struct Visit<'a> {
    pub node: &'a KunzVector,
    pub frobenius: u32,
    pub root: &'a KunzVector,
}

impl Visit<'_> {
    pub fn genus(&self) -> u32 {
        self.node.genus()
    }
}

/// Walks the class of an elementary `root`, calling `visitor` once per
/// member. Returns the class size.
pub fn traverse_class<E, V>(root: &KunzVector, frobenius: u32, mut visitor: V) -> Result<u64, E>
where
    E: From<Error>,
    V: FnMut(Visit<'_>) -> Result<(), E>,
{
    let mut count = 0;
    for node in ClassTraversal::new(*root, frobenius)? {
        visitor(Visit {
            node: &node,
            frobenius,
            root,
        })?;
        count += 1;
    }
    Ok(count)
}

/// An elementary root together with its Frobenius number: one independent
/// unit of work.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassRoot {
    pub frobenius: u32,
    pub root: KunzVector,
}

impl ClassRoot {
    fn from_seed(seed: &ElementarySeed) -> Self {
        ClassRoot {
            frobenius: seed.frobenius,
            root: seed.kunz(),
        }
    }

    pub fn traversal(&self) -> ClassTraversal {
        ClassTraversal::new(self.root, self.frobenius).expect("roots are elementary")
    }

    pub fn traverse<E, V>(&self, visitor: V) -> Result<u64, E>
    where
        E: From<Error>,
        V: FnMut(Visit<'_>) -> Result<(), E>,
    {
        traverse_class(&self.root, self.frobenius, visitor)
    }

    pub fn count(&self) -> u64 {
        self.traversal().count() as u64
    }
}

/// Which semigroups to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    /// `Sem(g)`
    Genus(u32),
    /// `Sem(F, g)`
    FrobeniusGenus { frobenius: u32, genus: u32 },
    /// All semigroups with Frobenius number `F`, over every genus.
    Frobenius(u32),
}

impl Scope {
    pub fn genus(genus: u32) -> Result<Self> {
        if genus == 0 {
            return Err(Error::ZeroGenus);
        }
        if genus > MAX_GENUS {
            return Err(Error::GenusCap {
                genus,
                cap: MAX_GENUS,
            });
        }
        Ok(Scope::Genus(genus))
    }

    pub fn frobenius_genus(frobenius: u32, genus: u32) -> Result<Self> {
        check_feasible(frobenius, genus)?;
        Ok(Scope::FrobeniusGenus { frobenius, genus })
    }

    pub fn frobenius(frobenius: u32) -> Result<Self> {
        if frobenius == 0 {
            return Err(Error::Infeasible {
                frobenius,
                genus: 0,
            });
        }
        if frobenius > MAX_GENUS {
            return Err(Error::GenusCap {
                genus: frobenius,
                cap: MAX_GENUS,
            });
        }
        Ok(Scope::Frobenius(frobenius))
    }

    /// The `(F, g)` pairs covered, in output order.
    pub fn pairs(&self) -> Vec<(u32, u32)> {
        match *self {
            Scope::Genus(g) => (g..2 * g).map(|f| (f, g)).collect(),
            Scope::FrobeniusGenus { frobenius, genus } => vec![(frobenius, genus)],
            Scope::Frobenius(f) => ((f + 1).div_ceil(2)..=f).map(|g| (f, g)).collect(),
        }
    }

    /// Class roots in deterministic order: `F` (or `g`) ascending, then
    /// lexicographic seed order.
    pub fn roots(&self) -> impl Iterator<Item = ClassRoot> {
        self.pairs().into_iter().flat_map(|(f, g)| {
            elementary::enumerate_elementary(f, g)
                .expect("scope pairs are feasible")
                .map(|seed| ClassRoot::from_seed(&seed))
        })
    }

    /// Class roots split by seed rank, with no list of seeds held in memory.
    pub fn par_roots(&self) -> impl ParallelIterator<Item = ClassRoot> {
        self.pairs().into_par_iter().flat_map(|(f, g)| {
            let total = elementary::count_elementary(f, g).expect("scope pairs are feasible");
            (0..total).into_par_iter().map(move |rank| {
                let seed = elementary::seed_at(f, g, rank)
                    .expect("scope pairs are feasible")
                    .expect("rank in range");
                ClassRoot::from_seed(&seed)
            })
        })
    }
}

/// Visits every semigroup in `scope` in deterministic order.
pub fn enumerate<E, V>(scope: Scope, mut visitor: V) -> Result<u64, E>
where
    E: From<Error>,
    V: FnMut(Visit<'_>) -> Result<(), E>,
{
    let mut total = 0;
    for class in scope.roots() {
        total += class.traverse(&mut visitor)?;
    }
    Ok(total)
}

/// Parallel version of [`enumerate`] on the current rayon pool; visit order
/// is unspecified.
pub fn par_enumerate<E, V>(scope: Scope, visitor: V) -> Result<u64, E>
where
    E: From<Error> + Send,
    V: Fn(Visit<'_>) -> Result<(), E> + Sync,
{
    scope
        .par_roots()
        .map(|class| class.traverse(&visitor))
        .try_reduce(|| 0, |a, b| Ok(a + b))
}

/// `#scope` without keeping any semigroup around.
pub fn count(scope: Scope) -> u64 {
    scope.roots().map(|class| class.count()).sum()
}

pub fn par_count(scope: Scope) -> u64 {
    scope.par_roots().map(|class| class.count()).sum()
}

pub fn enumerate_fg<E, V>(frobenius: u32, genus: u32, visitor: V) -> Result<u64, E>
where
    E: From<Error>,
    V: FnMut(Visit<'_>) -> Result<(), E>,
{
    enumerate(Scope::frobenius_genus(frobenius, genus)?, visitor)
}

pub fn enumerate_genus<E, V>(genus: u32, visitor: V) -> Result<u64, E>
where
    E: From<Error>,
    V: FnMut(Visit<'_>) -> Result<(), E>,
{
    enumerate(Scope::genus(genus)?, visitor)
}

pub fn enumerate_frobenius<E, V>(frobenius: u32, visitor: V) -> Result<u64, E>
where
    E: From<Error>,
    V: FnMut(Visit<'_>) -> Result<(), E>,
{
    enumerate(Scope::frobenius(frobenius)?, visitor)
}

/// Collects the Kunz vectors of `scope`; for tests and small inputs.
pub fn collect(scope: Scope) -> Vec<KunzVector> {
    let mut out = Vec::new();
    enumerate::<Error, _>(scope, |v| {
        out.push(*v.node);
        Ok(())
    })
    .expect("collecting cannot fail");
    out
}
