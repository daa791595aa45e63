//! Exact Taylor-jet analysis of the linked equations (L) and (C).
//!
//! This layer works in conformal coordinates `(z1, z2)` where the unknowns
//! of the geometric problem reduce to two scalar functions: an invariant `m`
//! and a conformal factor `u`.  It provides
//!
//! - [`Series2`]: exact truncated bivariate power series,
//! - [`JetState`]: coefficient tables for `(m, u)` with residual evaluation,
//! - [`solve_forward`]: an order-by-order solver that builds exact formal
//!   solutions from boundary jets along `z2 = 0`, validating that the data
//!   satisfies the compatibility recurrence the equations impose on it,
//! - [`random_admissible`]: seeded draws of compatible boundary data.
//!
//! All arithmetic is rational, so "the residual vanishes" is a statement
//! about every retained coefficient being exactly zero, not small.

use num_rational::BigRational;
use thiserror::Error;

mod series;
mod solve;
mod state;

pub use series::{rational_to_f64, Series2};
pub use solve::{
    is_exact_solution, random_admissible, solve_forward, solve_forward_seeded, FillPolicy,
    FreeData,
};
pub use state::{
    residual_jets, residual_max, residual_rows, CVariant, JetSample, JetState, Residuals,
};

/// Errors from jet construction, solving, and evaluation.
#[derive(Debug, Error)]
pub enum JetError {
    /// A series had to be inverted but its constant term vanishes.
    #[error("series has vanishing constant term, its reciprocal does not exist")]
    SingularSeries,

    /// Input data violated a stated precondition.
    #[error("precondition violated: {what}")]
    Precondition { what: String },

    /// Boundary data contradicts the compatibility recurrence.
    #[error(
        "incompatible boundary data at jet order {order}: {equation} forces \
         {coefficient} = {required}, but {supplied} was supplied"
    )]
    Compatibility {
        order: usize,
        equation: String,
        coefficient: String,
        required: BigRational,
        supplied: BigRational,
    },

    /// A sample point left the declared trust radius.
    #[error("sample point ({z1}, {z2}) lies outside the trust radius {h_bound}")]
    OutsideTrustRadius { z1: f64, z2: f64, h_bound: f64 },

    /// A coefficient table failed to parse.
    #[error("jet table line {line}: {message}")]
    Table { line: usize, message: String },
}

#[cfg(test)]
mod tests;
