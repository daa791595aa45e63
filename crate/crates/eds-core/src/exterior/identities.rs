//! Identity derivation from `d^2 = 0`.
//!
//! Given a coframed space whose structure equations or differential tables
//! mention unknown coefficient symbols, differentiating twice must give zero
//! identically; collecting the wedge coefficients of each `d^2` residual
//! yields equations that are affine in those unknowns. Solving them produces
//! the compatibility identities of the structure (and detects contradictory
//! structure equations).

use crate::field::{
    linalg::{solve_linear_with, PivotRule},
    FieldError, RatExpr, SymbolId,
};

use super::space::CoframedSpace;
use super::ExteriorError;

/// What to differentiate twice.
#[derive(Clone, Copy, Debug)]
pub enum IdentityTarget {
    /// A coframe element (uses its structure equation).
    Element(usize),
    /// A function symbol (uses its differential rule).
    Function(SymbolId),
}

/// Result of an identity derivation.
#[derive(Clone, Debug)]
pub struct IdentityDerivation {
    /// Solved unknowns, in solving order: `symbol -> expression`. When the
    /// system is underdetermined the expressions may mention the free
    /// unknowns listed below.
    pub rules: Vec<(SymbolId, RatExpr)>,
    /// Unknowns the residuals do not determine.
    pub underdetermined: Vec<SymbolId>,
    /// Every collected residual equation (label, left-hand side); each
    /// vanishes after the rules are substituted.
    pub equations: Vec<(String, RatExpr)>,
}

/// Derive the identities forced on `unknowns` by `d^2 = 0` across the given
/// targets.
pub fn derive_identities(
    space: &CoframedSpace,
    targets: &[IdentityTarget],
    unknowns: &[SymbolId],
) -> Result<IdentityDerivation, ExteriorError> {
    let ws = space.workspace();
    let mut equations: Vec<(String, RatExpr)> = Vec::new();
    for target in targets {
        let (label_base, residual) = match *target {
            IdentityTarget::Element(idx) => (
                format!("d^2({})", space.element_name(idx)),
                space.d_square_element(idx)?,
            ),
            IdentityTarget::Function(sym) => (
                format!("d^2({})", ws.name(sym)),
                space.d_square_function(sym)?,
            ),
        };
        for (indices, coeff) in residual.terms() {
            let mono = indices
                .iter()
                .map(|&i| space.element_name(i).to_string())
                .collect::<Vec<_>>()
                .join("^");
            equations.push((format!("{} @ {}", label_base, mono), coeff.clone()));
        }
    }

    // Affine extraction: each equation is linear in the unknowns with
    // unknown-free coefficients.
    let zero_rules: Vec<(SymbolId, RatExpr)> = unknowns
        .iter()
        .map(|&u| (u, RatExpr::zero(ws)))
        .collect();
    let mut rows: Vec<Vec<RatExpr>> = Vec::with_capacity(equations.len());
    let mut rhs: Vec<RatExpr> = Vec::with_capacity(equations.len());
    for (_, eq) in &equations {
        let mut row = Vec::with_capacity(unknowns.len());
        for &u in unknowns {
            let coeff = eq.derivative(u);
            if unknowns.iter().any(|&v| coeff.contains_symbol(v)) {
                return Err(ExteriorError::NotAffine {
                    symbol: ws.name(u),
                });
            }
            row.push(coeff);
        }
        let constant = eq.apply_rewrites(&zero_rules).map_err(ExteriorError::Field)?;
        rows.push(row);
        rhs.push(constant.neg());
    }

    let solution = solve_linear_with(ws, &rows, &rhs, unknowns.len(), PivotRule::Simplest)
        .map_err(|e| match e {
            FieldError::InconsistentSystem { equation } => {
                ExteriorError::ContradictoryStructure {
                    context: equations[equation].0.clone(),
                }
            }
            other => ExteriorError::Field(other),
        })?;

    let underdetermined: Vec<SymbolId> = solution.free.iter().map(|&f| unknowns[f]).collect();
    let mut rules = Vec::with_capacity(solution.pivots.len());
    for &p in &solution.pivots {
        let mut expr = solution.particular[p].clone();
        for (j, &f) in solution.free.iter().enumerate() {
            let v = &solution.nullspace[j][p];
            if !v.is_zero() {
                expr = expr.add(&v.mul(&RatExpr::symbol(ws, unknowns[f])));
            }
        }
        rules.push((unknowns[p], expr));
    }
    Ok(IdentityDerivation {
        rules,
        underdetermined,
        equations,
    })
}
