//! Integral elements: the dimension and defining relations of the solution
//! space of the first-order conditions `pi^eps|_E = p^eps_i omega^i`.

use num_rational::BigRational;
use serde::Serialize;

use crate::field::linalg::{rank_q, solve_linear, LinearSolution};
use crate::field::{Poly, RatExpr, Sampler};

use super::absorb::symmetry_system;
use super::{Decomposition, PfaffianError};

/// Salt for the sampler stream used by the generic-point rank checks.
const INTEGRAL_SALT: u64 = 0x5EED_0002;

/// Coefficient-matrix size (entries) up to which [`SolveMode::Auto`] solves
/// symbolically; larger systems get generic-point ranks only.
const AUTO_SYMBOLIC_LIMIT: usize = 2000;

/// How to measure the solution space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveMode {
    /// Symbolic elimination when the coefficient matrix has at most
    /// [`AUTO_SYMBOLIC_LIMIT`] entries, generic-point ranks otherwise.
    Auto,
    /// Force symbolic elimination (exact relations, may be expensive).
    Symbolic,
    /// Force generic-point ranks (dimension only, no relations).
    Numeric,
}

/// Solution space of the integral-element equations.
#[derive(Clone, Debug, Serialize)]
pub struct IntegralElements {
    /// Dimension of the space of integral elements over a point (number of
    /// free `p^eps_i` after the relations).
    pub dimension: usize,
    /// Solved unknowns as textual relations `p<eps>_<i> = ...` (symbolic
    /// passes only; empty when only ranks were computed).
    pub relations: Vec<String>,
    /// Names of the unknowns that remain free (symbolic passes only).
    pub free: Vec<String>,
    /// The rank differed between random generic points, or between the
    /// symbolic and numeric passes; results may sit at a non-generic point.
    pub non_generic: bool,
    /// Whether the relations were computed symbolically.
    pub symbolic: bool,
}

impl Decomposition {
    /// Solve the integral-element equations. The rank is always sampled at
    /// three random generic points (warning on disagreement); relations come
    /// from symbolic elimination when the mode allows it.
    ///
    /// Expects the torsion to be absorbed (zero): with torsion present the
    /// equations can be inconsistent, which surfaces as an inconsistency
    /// error from the symbolic pass.
    pub fn integral_elements(
        &self,
        mode: SolveMode,
        seed: u64,
    ) -> Result<IntegralElements, PfaffianError> {
        let ws = self.tableau.workspace();
        let t = self.tableau.n_complement();
        let k = self.tableau.n_independence();
        let n_unknowns = t * k;
        let (rows, rhs) = symmetry_system(&self.tableau, &self.torsion);

        let symbolic = match mode {
            SolveMode::Symbolic => true,
            SolveMode::Numeric => false,
            SolveMode::Auto => rows.len() * n_unknowns <= AUTO_SYMBOLIC_LIMIT,
        };

        // Numeric rank at three generic points.
        let mut avoid: Vec<Poly> = Vec::new();
        for entry in rows.iter().flatten().chain(rhs.iter()) {
            if !entry.den().is_constant() {
                avoid.push(entry.den().clone());
            }
        }
        let mut sampler = Sampler::new(seed).fork(INTEGRAL_SALT);
        let mut point_ranks = Vec::with_capacity(3);
        for _ in 0..3 {
            if n_unknowns == 0 {
                point_ranks.push(0);
                continue;
            }
            let point = sampler.generic_assignment(ws, &avoid).ok_or(
                PfaffianError::GenericPointExhausted {
                    attempts: Sampler::GENERIC_RETRIES,
                },
            )?;
            let numeric: Vec<Vec<BigRational>> = rows
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|e| e.evaluate(&point))
                        .collect::<Result<_, _>>()
                })
                .collect::<Result<_, _>>()?;
            point_ranks.push(rank_q(&numeric));
        }
        let numeric_rank = *point_ranks.iter().max().expect("three ranks");
        let ranks_agree = point_ranks.iter().all(|&r| r == numeric_rank);

        if symbolic {
            let solution = solve_linear(ws, &rows, &rhs, n_unknowns)?;
            Ok(IntegralElements {
                dimension: n_unknowns - solution.rank,
                relations: relation_strings(&solution, k),
                free: solution.free.iter().map(|&f| unknown_name(f, k)).collect(),
                non_generic: !ranks_agree || numeric_rank != solution.rank,
                symbolic: true,
            })
        } else {
            Ok(IntegralElements {
                dimension: n_unknowns - numeric_rank,
                relations: Vec::new(),
                free: Vec::new(),
                non_generic: !ranks_agree,
                symbolic: false,
            })
        }
    }
}

/// Display name of the flattened unknown `idx = eps * k + i`: `p<eps>_<i>`
/// with 1-based indices.
pub(crate) fn unknown_name(idx: usize, k: usize) -> String {
    format!("p{}_{}", idx / k + 1, idx % k + 1)
}

/// Pivot unknowns of a solved system as relations `p<eps>_<i> = <combo of
/// free unknowns and constant>`, in pivot order.
pub(crate) fn relation_strings(solution: &LinearSolution, k: usize) -> Vec<String> {
    solution
        .pivots
        .iter()
        .map(|&p| {
            let terms: Vec<(RatExpr, String)> = solution
                .free
                .iter()
                .zip(&solution.nullspace)
                .map(|(&f, basis)| (basis[p].clone(), unknown_name(f, k)))
                .collect();
            format!(
                "{} = {}",
                unknown_name(p, k),
                linear_combo_string(&solution.particular[p], &terms)
            )
        })
        .collect()
}

/// Human-readable `constant + sum coeff * name`, with unit coefficients
/// elided and an all-zero combination printed as `0`.
fn linear_combo_string(constant: &RatExpr, terms: &[(RatExpr, String)]) -> String {
    let mut pieces: Vec<String> = Vec::new();
    if !constant.is_zero() {
        pieces.push(constant.display().to_string());
    }
    for (coeff, name) in terms {
        if coeff.is_zero() {
            continue;
        }
        if coeff.is_one() {
            pieces.push(name.clone());
        } else if coeff.neg().is_one() {
            pieces.push(format!("-{}", name));
        } else {
            pieces.push(format!("({}) * {}", coeff.display(), name));
        }
    }
    if pieces.is_empty() {
        return "0".to_string();
    }
    let mut out = pieces[0].clone();
    for piece in &pieces[1..] {
        if let Some(rest) = piece.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(piece);
        }
    }
    out
}
