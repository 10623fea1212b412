use thiserror::Error;

use crate::kunz::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty generator set")]
    EmptyGenerators,
    #[error("generators must be positive integers")]
    ZeroGenerator,
    #[error("not a numerical semigroup: generators have gcd {gcd}")]
    NotNumericalSemigroup { gcd: u64 },
    #[error("0 cannot be a gap")]
    ZeroGap,
    #[error("gap set is not the complement of a semigroup: {a} + {b} is a gap")]
    NotClosed { a: u64, b: u64 },
    #[error("no pseudo-Frobenius numbers: the semigroup is the whole of N")]
    NoPseudoFrobenius,
    #[error("{n} is not a nonzero element of the semigroup")]
    NotAnElement { n: u64 },
    #[error("{x} is not a minimal generator")]
    NotMinimalGenerator { x: u64 },
    #[error("not a Kunz vector: {0}")]
    NotKunzVector(Violation),
    #[error("Kunz vector length must be odd and positive, got {0}")]
    KunzLength(usize),
    #[error("genus must be positive")]
    ZeroGenus,
    #[error("genus {genus} exceeds the configured cap {cap}")]
    GenusCap { genus: u32, cap: u32 },
    #[error("no numerical semigroup has Frobenius number {frobenius} and genus {genus} (need g <= F <= 2g-1)")]
    Infeasible { frobenius: u32, genus: u32 },
    #[error("semigroup does not have Frobenius number {frobenius} and genus {genus}")]
    NotInClass { frobenius: u32, genus: u32 },
    #[error("oracle refuses genus {genus}: cap is {cap}")]
    OracleCap { genus: u32, cap: u32 },
}
