//! Exterior calculus over a coframe: forms, structure equations, the
//! exterior derivative, and identity derivation from `d^2 = 0`.

pub mod form;
pub mod identities;
pub mod space;

#[cfg(test)]
mod tests;

pub use form::{sort_with_sign, Form};
pub use identities::{derive_identities, IdentityDerivation, IdentityTarget};
pub use space::CoframedSpace;

use thiserror::Error;

use crate::field::FieldError;

/// Errors raised by the exterior-calculus layer.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ExteriorError {
    #[error("no structure equation has been set for coframe element `{name}`")]
    IncompleteStructure { name: String },

    #[error("no differential rule is known for symbol `{symbol}`")]
    MissingDifferential { symbol: String },

    #[error("structure equations are contradictory: residual at {context} cannot vanish")]
    ContradictoryStructure { context: String },

    #[error("residual equations are not affine in unknown `{symbol}`")]
    NotAffine { symbol: String },

    #[error(transparent)]
    Field(#[from] FieldError),
}
