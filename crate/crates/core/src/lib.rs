//! Exact symbolic computations for type-A quantum groups.
//!
//! The crate is organised bottom-up:
//!
//! - [`scalars`]: coefficients in `Q(q)` or a cyclotomic field, and exact
//!   matrix rank.
//! - [`weights`]: the `GL_n` weight lattice, the symmetric group, the dot
//!   action and Kostant's subsets of positive roots.
//! - [`qalgebra`]: graded pieces of the positive and negative nilpotent
//!   parts, the Drinfeld pairing and the dual map it induces.
//! - [`qmatrix`]: the quantum matrix generators, their PBW rewriting and a
//!   complete check of their relations on `V ⊗ V`.
//! - [`koszul`]: quantum symmetric and exterior algebras and the Koszul
//!   complex, strand by strand.
//! - [`cohomology`]: the Borel–Weil–Bott rule and the tables built on it.
//! - [`invariants`]: the twisted Weyl action on the group algebra of the
//!   weight lattice and the free-basis decomposition.
//! - [`verify`]: seeded property suites that back the command-line tool.

pub mod cohomology;
pub mod config;
pub mod error;
pub mod invariants;
pub mod koszul;
pub mod linmap;
pub mod qalgebra;
pub mod qmatrix;
pub mod scalars;
pub mod syntax;
pub mod umod;
pub mod verify;
pub mod weights;

pub use error::{Error, Result};
pub use scalars::{Mode, Scalar, ScalarMatrix};
