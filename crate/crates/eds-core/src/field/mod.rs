//! Exact scalar arithmetic: symbols, sparse polynomials, rational
//! expressions, seeded rational sampling, and fraction-free linear algebra.
//!
//! Everything downstream (exterior calculus, Pfaffian analysis, jet solving)
//! is built on the types in this module; no floating point enters until the
//! numeric verification layer.

pub mod linalg;
pub mod poly;
pub mod ratexpr;
pub mod rng;
pub mod workspace;

#[cfg(test)]
mod tests;

pub use linalg::{solve_linear, LinearSolution};
pub use poly::{format_ratio, Monomial, Poly};
pub use ratexpr::RatExpr;
pub use rng::Sampler;
pub use workspace::{CirclePair, SymbolId, SymbolInfo, SymbolKind, Workspace};

use thiserror::Error;

/// Errors raised by the exact-arithmetic layer.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("symbol `{name}` is already declared in this workspace")]
    DuplicateSymbol { name: String },

    #[error("unknown symbol `{name}`")]
    UnknownSymbol { name: String },

    #[error("division by an expression that reduces to zero")]
    ZeroDenominator,

    #[error("operands belong to different workspaces")]
    MixedWorkspaces,

    #[error("symbol `{name}` has no value in the evaluation assignment")]
    UnassignedSymbol { name: String },

    #[error("denominator vanishes at the evaluation point")]
    EvaluationSingularity,

    #[error("rewrite rules for `{symbol}` did not reach a fixed point (cycle suspected)")]
    RewriteCycle { symbol: String },

    #[error("linear system is inconsistent: equation {equation} reduces to a nonzero constant")]
    InconsistentSystem { equation: usize },
}
