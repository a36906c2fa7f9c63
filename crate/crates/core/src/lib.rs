//! Combinatorial invariants of dimer algebras on the torus.
//!
//! The crate is organised bottom-up: [`quiver`] holds the embedded quiver,
//! [`matchings`] its perfect and simple matchings, [`rewrite`] the relations
//! as a rewriting system, [`contraction`] the contraction maps and their
//! monomial images, [`semigroup`] the monomial algebras `S` and `R`,
//! [`center`] centrality and reduced-center membership, and [`normality`]
//! the normality criteria for `R`.

pub mod center;
pub mod commands;
pub mod contraction;
pub mod cycles;
pub mod error;
pub mod fixtures;
pub mod linalg;
pub mod matchings;
pub mod monomial;
pub mod normality;
pub mod oracle;
pub mod par;
pub mod quiver;
pub mod report;
pub mod rewrite;
pub mod semigroup;
pub mod verdict;

pub use error::{Error, Result};
pub use par::Execution;
pub use quiver::{ArrowId, DimerQuiver, FaceId, HomVec, PathWord, VertexId};
pub use verdict::Verdict;
