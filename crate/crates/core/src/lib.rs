//! Enumeration of numerical semigroups by genus and Frobenius number.
//!
//! `Sem(g)` splits into `Sem(F, g)` for `F` in `g..=2g-1`; each `Sem(F, g)`
//! splits into disjoint classes, one per elementary semigroup, and each
//! class is a tree rooted at that elementary semigroup. The [`forest`]
//! module walks those trees on packed Kunz-coordinates vectors, and
//! [`oracle`] holds two brute-force enumerators to check it against.

pub mod cli;
pub mod elementary;
pub mod error;
pub mod forest;
pub mod irreducible;
pub mod kunz;
pub mod oracle;
pub mod semigroup;

pub use error::{Error, Result};
pub use forest::{ClassRoot, ClassTraversal, Scope, Visit};
pub use kunz::KunzVector;
pub use semigroup::GapSemigroup;
