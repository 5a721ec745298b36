//! Finite Γ-AG-groupoids.
//!
//! A [`GammaMagma`] is a finite carrier `0..n` together with one `n × n`
//! multiplication table per Γ-label. On top of that this crate provides:
//!
//! * [`laws`]: exhaustive checks of the left invertive, medial, AG\*\*,
//!   paramedial and related identities, with lexicographically least witnesses;
//! * [`crisp`]: subset products, the crisp Γ-ideal kinds, intra-regularity;
//! * [`fuzzy`]: exact-rational fuzzy subsets, the sup-min Γ-product and the
//!   fuzzy Γ-ideal kinds;
//! * [`theorems`]: executable statements about fuzzy Γ-ideals, checked
//!   exhaustively over a finite value lattice or by seeded sampling;
//! * [`finder`]: enumeration of small models up to isomorphism.

pub mod corpus;
pub mod crisp;
mod error;
pub mod finder;
pub mod fuzzy;
pub mod integer;
pub mod laws;
mod magma;
pub mod theorems;

pub use crate::crisp::{CrispSubset, IdealKind, IntraWitness, KindSet};
pub use crate::error::{Error, PartialSearch, Result};
pub use crate::fuzzy::{FuzzyKind, FuzzyKindSet, FuzzySubset, Grade, Lattice};
pub use crate::laws::{check_laws, Law, LawReport, LawWitness};
pub use crate::magma::{from_base_with_terms, GammaMagma, StructureFile, TermPattern};
pub use crate::theorems::{verify, verify_all, Mode, Verdict, VerifyOptions};
