//! Exact symbolic toolkit for mapping class groups of nonorientable surfaces
//! `N_{g,s}^n` with `g >= 3`.
//!
//! * [`word`]: free-group words and automorphisms.
//! * [`catalog`]: surfaces, curve families and generating sets.
//! * [`schreier`]: generator transfer to finite-index subgroups.
//! * [`lantern`]: Artin-level checks of the lantern, braid and push relations.
//! * [`abelian`]: relation ledger, Smith normal form and `H_1`.

pub mod abelian;
pub mod catalog;
pub mod lantern;
pub mod schreier;
pub mod word;

pub use catalog::{GeneratorName, GroupKind, SurfaceSpec};
pub use word::{FreeAutomorphism, Letter, Word};
