//! Computing with finite etale group-scheme models: finite groups carrying a
//! Galois action, their nonabelian H^1, twists, semidirect products, Malle
//! growth invariants, structural deciders, and exact arithmetic counts of
//! connected torsor classes over the rationals.
//!
//! Everything is finite and exact. Groups live on dense multiplication
//! tables (order at most 128), Galois groups are finite quotients, and the
//! algebraic side never touches floating point; only the growth-fit
//! regression works with `f64`.

pub mod arith;
pub mod catalog;
pub mod cohomology;
pub mod error;
pub mod gamma;
pub mod group;
pub mod heights;
pub mod model;
pub mod perm;
pub mod structure;

pub use error::{Error, Result};
pub use gamma::GammaGroup;
pub use group::{FiniteGroup, GroupHom, Subgroup};
pub use heights::Rational;
