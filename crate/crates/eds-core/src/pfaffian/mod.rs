//! Linear Pfaffian systems with independence condition: decomposition into
//! tableau and torsion, torsion absorption, reduced characters, integral
//! elements, Cartan's involutivity test, and one step of prolongation.
//!
//! A system splits a coframe into generators `theta^a` (the Pfaffian system
//! itself), independence forms `omega^i`, and a complement `pi^eps`.
//! Linearity means each `d(theta^a)` is congruent to
//!
//! ```text
//! A^a_{eps i} pi^eps ^ omega^i  +  T^a_{ij} omega^i ^ omega^j
//! ```
//!
//! modulo the generators — no `pi ^ pi` terms survive. The analysis here
//! extracts the tableau `A` and torsion `T`, absorbs the torsion into the
//! complement when a shift `pi^eps -> pi^eps - x^eps_i omega^i` kills it,
//! computes reduced characters by stacking the tableau along a random
//! generic flag, measures the dimension of the space of integral elements,
//! and compares the two in Cartan's test. Every randomized step draws from
//! a seeded [`crate::field::Sampler`], so reports are reproducible bit for
//! bit.

mod absorb;
mod characters;
mod integral;
mod prolong;
mod report;
mod system;
mod tableau;


pub use absorb::Absorption;
pub use characters::{CharacterAnalysis, CharacterTrial};
pub use integral::{IntegralElements, SolveMode};
pub use prolong::Prolongation;
pub use report::{Generality, InvolutivityReport, TorsionStatus};
pub use system::LinearPfaffianSystem;
pub use tableau::{Decomposition, Tableau, TorsionTable};

use thiserror::Error;

use crate::exterior::ExteriorError;
use crate::field::FieldError;

/// Errors raised by the Pfaffian-analysis layer. Generator and form indices
/// in messages are 1-based, matching the usual display conventions.
#[derive(Error, Debug)]
pub enum PfaffianError {
    #[error("split coframe has rank {rank} at a generic point, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },

    #[error(
        "system is not linear: d(theta^{generator}) keeps {pi_a} ^ {pi_b} \
         with coefficient {coefficient} modulo the generators"
    )]
    NotLinear {
        generator: usize,
        pi_a: String,
        pi_b: String,
        coefficient: String,
    },

    #[error("no generic evaluation point found after {attempts} attempts")]
    GenericPointExhausted { attempts: usize },

    #[error(
        "re-expanding tableau and torsion does not reproduce d(theta^{generator}) \
         modulo the generators"
    )]
    DecompositionMismatch { generator: usize },

    #[error(
        "torsion of theta^{generator} on omega^{i} ^ omega^{j} is essential; \
         the system has no integral elements to prolong"
    )]
    EssentialTorsion { generator: usize, i: usize, j: usize },

    #[error(transparent)]
    Field(#[from] FieldError),

    #[error(transparent)]
    Exterior(#[from] ExteriorError),
}
