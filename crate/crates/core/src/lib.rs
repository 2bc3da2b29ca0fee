//! A computational calculus for finite categories, truncated simplicial sets,
//! and prederivators.
//!
//! The library provides exact, deterministic implementations of:
//! - finite categories with explicit composition tables ([`fincat`]),
//! - simplicial sets truncated at a dimension bound, with a lifting-property
//!   engine ([`sset`]),
//! - the homotopy-category functor `ho` ([`hocat`]),
//! - prederivators evaluated over a finite probe family, the underlying
//!   simplicial set functor `R`, and the left adjoint `L` computed as a
//!   pointwise colimit ([`pdv`], [`lkan`]),
//! - the quasi-representability checker and the reconstruction of a
//!   prederivator from its underlying simplicial set ([`quasirep`]),
//! - finite shadows of the transferred model structure: fibrancy, fibration
//!   and acyclic-fibration tests, cofibration injectivity, and certified
//!   weak-equivalence consequences ([`modelcheck`]).
//!
//! Everything is quantified over explicitly declared finite data; checks that
//! approximate an unbounded property say so in their reports.

pub mod budget;
pub mod error;
pub mod fincat;
pub mod hocat;
pub mod lkan;
pub mod modelcheck;
pub mod pdv;
pub mod present;
pub mod quasirep;
pub mod report;
pub mod sset;
pub mod suite;
pub mod textio;

pub use budget::Limits;
pub use error::Error;
