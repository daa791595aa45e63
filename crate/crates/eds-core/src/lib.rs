//! Exact exterior-differential-systems toolkit.
//!
//! The crate is organized in layers:
//!
//! * [`field`] — symbols, exact rational-function arithmetic, seeded
//!   sampling, and fraction-free linear algebra;
//! * [`exterior`] — coframes, differential forms, structure equations, and
//!   identity derivation from `d^2 = 0`;
//! * [`pfaffian`] — linear Pfaffian systems: tableau extraction, torsion
//!   absorption, reduced characters, the involutivity test, and
//!   prolongation;
//! * [`jets`] — exact order-by-order solving of the compatibility system for
//!   surface metrics in isothermal coordinates;
//! * [`unicorn`] — floating-point construction and verification of the
//!   generalized coframes produced from those solutions;
//! * [`scenarios`] — end-to-end reproductions of the computations the other
//!   layers exist to support, with machine-checkable reports;
//! * [`dsl`] — a small text format for describing coframes and exterior
//!   systems.

pub mod exterior;
pub mod field;
pub mod jets;
pub mod pfaffian;
pub mod scenarios;

pub use exterior::{CoframedSpace, ExteriorError, Form};
pub use field::{FieldError, RatExpr, Workspace};
pub use pfaffian::{InvolutivityReport, LinearPfaffianSystem, PfaffianError};
