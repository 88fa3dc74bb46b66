//! Exact computational engine for the finite 2-group quotients `G_k` of the
//! pro-2 group built over the wreath product `W = C2 wr Z2`.
//!
//! The crate provides:
//!
//! * [`group`] — canonical polycyclic normal forms and collection arithmetic
//!   for elements of `G_k`;
//! * [`subgroup`] — echelonized induced bases over GF(2): membership by
//!   sifting, closures, normal closures, commutator / power / product
//!   subgroups and exact intersections;
//! * [`series`] — the lower central, lower 2-, dimension (Jennings),
//!   Frattini, 2-power, iterated 2-power and R/N filtration series with
//!   their factor tables and closed-form cross-checks;
//! * [`wreath`] — the independent oracle: the finite wreath product
//!   `W_k = C2 wr C_(2^k)`, the projection `G_k -> W_k`, breadth-first
//!   closure, relator checking and the power-of-a-product collection
//!   identities;
//! * [`spectra`] — the named subgroups `Z`, `Z_k`, `H`, `K(m,n)`, `L(m,n)`
//!   and exact per-level Hausdorff-dimension ratios for each series;
//! * [`verify`] — the full structural check suite driven by the `pro2` CLI.

pub mod error;
pub mod group;
pub mod series;
pub mod spectra;
pub mod subgroup;
pub mod verify;
pub mod wreath;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
pub use group::{Element, Gen, GroupContext, MAX_LEVEL};
pub use series::{SeriesKind, SeriesTable};
pub use spectra::{NamedSubgroup, Ratio, RatioPoint};
pub use subgroup::Subgroup;
pub use wreath::WreathElement;

/// Default cap on exhaustive subgroup enumeration, as log2.
pub const DEFAULT_CAP_LOG2: u32 = 22;
