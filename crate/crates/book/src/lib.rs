//! The guide's chapters, compiled so that every code listing runs as a
//! doctest under `cargo test`.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/scalars.md")]
pub mod chapter1 {}

#[doc = include_str!("../../../book/src/weights.md")]
pub mod chapter2 {}

#[doc = include_str!("../../../book/src/quantum-matrices.md")]
pub mod chapter3 {}

#[doc = include_str!("../../../book/src/pairing.md")]
pub mod chapter4 {}

#[doc = include_str!("../../../book/src/koszul.md")]
pub mod chapter5 {}

#[doc = include_str!("../../../book/src/cohomology.md")]
pub mod chapter6 {}

#[doc = include_str!("../../../book/src/invariants.md")]
pub mod chapter7 {}

#[doc = include_str!("../../../book/src/verify.md")]
pub mod chapter8 {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod chapter9 {}
