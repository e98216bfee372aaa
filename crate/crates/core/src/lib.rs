//! Exact counts of conjugacy classes of affine classical groups.
//!
//! The crate computes `k(AGL(n,q))`, `k(AGU(n,q))`, `k(ASp(2n,q))` and
//! `k(AO^±(n,q))` three independent ways: closed-form generating functions
//! ([`classcount`]), character-side recursions ([`classcount`]), and
//! brute-force enumeration of small groups ([`oracle`]). The [`bounds`] module
//! checks the known upper bounds and exceptional values against those counts.

pub mod bounds;
pub mod classcount;
pub mod error;
pub mod oracle;
pub mod partitions;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
