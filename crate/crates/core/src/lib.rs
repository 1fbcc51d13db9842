//! Exact enumeration and machine verification of three alternating-sign
//! formulas for the Eulerian numbers, each proved by a sign-reversing
//! involution:
//!
//! * [`barred`]: anchored barred permutations and the float/unnecessary
//!   toggle, which certifies `⟨n,k⟩ = Σ (-1)^i C(n+1,i) (k+1-i)^n`.
//! * [`poset`]: the same toggle restricted to linear extensions of a poset,
//!   giving P-Eulerian numbers from bounded P-partition counts.
//! * [`composition`]: decorated set compositions and the split/merge toggle
//!   behind the Stirling-number formula.
//! * [`complex`]: partitionable simplicial complexes, decorated faces, and
//!   the barycentric subdivisions whose h-vectors are Eulerian rows.
//!
//! All counts are exact [`num_bigint::BigInt`] values.

pub mod barred;
pub mod complex;
pub mod composition;
mod error;
pub mod involution;
pub mod numbers;
pub mod perm;
pub mod poset;

pub use error::{Error, Result};
pub use num_bigint::BigInt;
pub use perm::Permutation;

/// Size limits for the exhaustive enumerators.
///
/// Every enumerator in this crate is exact and exponential; these limits turn
/// an accidental huge request into an [`Error::BoundExceeded`] instead of a
/// hung process.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Largest permutation length enumerated directly (10! is about 3.6M).
    pub max_n: usize,
    /// Largest number of objects any single enumeration may visit.
    pub max_items: u64,
    /// Largest `n` accepted by the barycentric `Δₙ` builder.
    pub max_delta_n: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_n: 10, max_items: 50_000_000, max_delta_n: 7 }
    }
}

impl Bounds {
    pub(crate) fn check_n(&self, what: &'static str, n: usize) -> Result<()> {
        if n > self.max_n {
            return Err(Error::BoundExceeded { what, value: n as u128, limit: self.max_n as u128 });
        }
        Ok(())
    }

    pub(crate) fn check_items(&self, what: &'static str, count: u128) -> Result<()> {
        if count > u128::from(self.max_items) {
            return Err(Error::BoundExceeded { what, value: count, limit: u128::from(self.max_items) });
        }
        Ok(())
    }
}
