//! Automorphism groups of the multiplicative monoid (ℤ/pᵉℤ, ·) and of its
//! unit group, computed in closed form and verified exhaustively against
//! brute-force oracles.
//!
//! The library is organized as:
//!
//! - [`residue`]: canonical arithmetic modulo pᵉ, p-adic decomposition,
//!   element orders, discrete logarithms, minimal generating sets;
//! - [`unit_aut`]: parameterized automorphisms of the unit group, the
//!   liftable subgroup, and reduction between prime-power levels;
//! - [`group_table`]: explicit finite group tables, product constructions,
//!   and certified isomorphism search;
//! - [`structure`]: the twisted-triple model of the unit automorphism group
//!   for p = 2 and its dihedral/central-product decomposition;
//! - [`monoid_aut`]: automorphisms of the full monoid, their semidirect
//!   model, structure reports per regime, and the transported ring;
//! - [`oracle`]: classification-agnostic brute-force references;
//! - [`verify`]: the exhaustive verification suites.

pub mod arith;
pub mod error;
pub mod group_table;
pub mod monoid_aut;
pub mod oracle;
pub mod regime;
pub mod report;
pub mod residue;
pub mod ring;
pub mod structure;
pub mod unit_aut;
pub mod verify;

pub use error::{Error, Result};
pub use monoid_aut::MonoidAutParam;
pub use residue::{ModulusContext, PadicForm, Residue, UnitDecomposition, UnitResidue};
pub use unit_aut::UnitAutParam;
