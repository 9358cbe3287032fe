//! Covering spaces of surfaces and the group-theoretic engines behind them.
//!
//! The crate is organised bottom-up:
//!
//! * [`group`]: free-group words, abelianization, Stallings foldings and
//!   permutation representations of finite quotients.
//! * [`surface`] and [`finite_cover`]: finite-type surfaces and the exact
//!   topological type of finite covers.
//! * [`model`]: infinite-type surfaces as locally finite graphs of
//!   finite-type pieces, with truncated end-space computation.
//! * [`forge`]: covering maps between models, decision tables for
//!   homology covers and the "everything covers everything" cover chain.
//! * [`ends`]: Cayley balls, ends of groups and almost-invariant functions.
//! * [`tree`]: Bass–Serre trees of free products of cyclic groups.

pub mod ends;
pub mod error;
pub mod finite_cover;
pub mod forge;
pub mod group;
pub mod limits;
pub mod model;
pub mod surface;
pub mod tree;

pub use error::{Error, Result};
pub use limits::Limits;
