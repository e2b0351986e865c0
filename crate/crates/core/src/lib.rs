//! Minimum generator numbers of iterated wreath products of almost simple
//! groups constructed via regular actions, together with a permutation-group
//! brute-force oracle that cross-checks every formula component at small
//! scale.
//!
//! The crate is organized as:
//!
//! - [`abelian`] — invariant-factor arithmetic and Smith normal form
//! - [`catalog`] — the table of almost simple groups the formulas consume
//! - [`formula`] — the closed-form rank computations
//! - [`permgrp`] — permutation groups, BSGS, and generator search
//! - [`verify`] — formula-vs-oracle cross-validation suites

pub mod abelian;
pub mod catalog;
pub mod error;
pub mod formula;
pub mod permgrp;
pub mod verify;

pub use error::{Error, Result};
