//! Finite multiplicative Lie algebras: validation, exterior squares realized
//! by coset enumeration, Schur and Bogomolov multipliers, exact-sequence and
//! isoclinism machinery.
//!
//! A multiplicative Lie algebra is a group with a second operation `*`
//! subject to five axioms (alternating, twisted biadditivity in each slot, a
//! Jacobi-type identity, conjugation equivariance). Everything here works on
//! dense index tables with the identity fixed at index 0.

pub mod corpus;
pub mod error;
pub mod exterior;
pub mod fp;
pub mod iso;
pub mod mla;
pub mod snf;
pub mod subset;
pub mod table;

pub use error::{Error, GroupDefect, MlaDefect, Result};
pub use mla::{FiniteMla, MlaMorphism};
pub use subset::SubSet;
pub use table::{GroupMap, GroupTable};
