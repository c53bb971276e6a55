//! Exact computations on finite quantales.
//!
//! The crate works with finite complete lattices whose elements are dense
//! indices `0..n`, with order, join and meet tables precomputed. On top of
//! that it provides:
//!
//! - [`lattice`]: lattices, endomaps, adjoints, sup-endomap enumeration;
//! - [`quantale`]: quantales, residuals, Frobenius and Girard structures
//!   given by primitive negations, the Chu construction, units and positivity;
//! - [`nucleus`]: quantic nuclei, quotients, Serre Galois connections;
//! - [`phase`]: powerset quantales over finite semigroups, relation-induced
//!   Galois connections, phase quantales and the representation of Frobenius
//!   quantales as phase quantales;
//! - [`raney`]: Raney transforms, tight and cotight maps, the Girard quantale
//!   of tight endomaps and the quantale of meet-preserving endomaps;
//! - [`mn`]: tight endomaps of the diamond lattices `M_n`.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
pub mod lattice;
pub mod mn;
pub mod nucleus;
pub mod phase;
pub mod quantale;
pub mod raney;

pub use error::{Error, Result};
pub use lattice::{EndoMap, Elem, FiniteLattice, LatticeMap, LatticeSpec};
pub use nucleus::{Nucleus, QuotientQuantale};
pub use quantale::{FrobeniusQuantale, Quantale, SerrePairReport};
pub use raney::{MapFamily, TightQuantale};

/// Limits on the size of exhaustive searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Upper bound on the number of candidate maps an enumeration may visit.
    pub max_candidates: u64,
    /// Largest semigroup whose powerset quantale may be formed.
    pub max_powerset: u32,
    /// Largest `n` for which `M_n` endomaps are enumerated.
    pub max_atoms: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_candidates: 1_000_000_000,
            max_powerset: 20,
            max_atoms: 6,
        }
    }
}
