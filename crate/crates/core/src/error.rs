use thiserror::Error;

use crate::lattice::Elem;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Which argument of the multiplication a distributivity failure concerns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl core::fmt::Display for Side {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Side::Left => f.write_str("left"),
            Side::Right => f.write_str("right"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element index {index} out of range for {len} elements")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("table has {found} entries, expected {expected}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("cover relation contains a cycle")]
    CycleDetected,
    #[error("relation is not a partial order")]
    NotPartialOrder,
    #[error("poset has no bottom or no top")]
    NotBounded,
    #[error("elements {0} and {1} have no least upper bound or greatest lower bound")]
    NotALattice(Elem, Elem),
    #[error("map is not sup-preserving")]
    NotSupPreserving,
    #[error("map is not meet-preserving")]
    NotMeetPreserving,
    #[error("map is not monotone")]
    NotMonotone,
    #[error("search space of {estimate} candidates exceeds the budget of {budget}")]
    BudgetExceeded { estimate: u128, budget: u64 },
    #[error("M_{n} exceeds the atom budget of {max}")]
    TooManyAtoms { n: usize, max: u32 },
    #[error("multiplication is not associative at ({0}, {1}, {2})")]
    NotAssociative(Elem, Elem, Elem),
    #[error("multiplication does not distribute on the {0} at ({1}, {2}, {3})")]
    NotDistributive(Side, Elem, Elem, Elem),
    #[error("bottom does not absorb {0}")]
    BottomNotAbsorbed(Elem),
    #[error("maps are not inverse antitone bijections")]
    NotADuality,
    #[error("element {0} is not dualizing")]
    NotDualizing(Elem),
    #[error("negations do not form a Frobenius structure: {0} fails")]
    NotFrobenius(&'static str),
    #[error("dual multiplications disagree at ({0}, {1})")]
    CoincidenceFailed(Elem, Elem),
    #[error("map is not injective: {0} and {1} have the same image")]
    NotInjective(Elem, Elem),
    #[error("map is not a nucleus: {0}")]
    NotANucleus(&'static str),
    #[error("pair is not a Serre Galois connection: {0} fails")]
    NotSerreGC(&'static str),
    #[error("pair is not a Serre duality on the quotient: {0} fails")]
    NotSerreDualityOnQuotient(&'static str),
    #[error("relation is not associative at ({0}, {1}, {2})")]
    NotAssociativeRelation(Elem, Elem, Elem),
    #[error("relation is not weakly symmetric")]
    NotWeaklySymmetric,
    #[error("map is not tight")]
    NotTight,
    #[error("generator atoms must be pairwise distinct atoms of M_n")]
    NotDistinctAtoms,
    #[error("check failed: {0}")]
    CheckFailed(&'static str),
}
