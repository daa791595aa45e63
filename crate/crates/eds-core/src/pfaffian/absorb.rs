//! Torsion absorption: shift the complement `pi^eps -> pi^eps - x^eps_i
//! omega^i` so that re-decomposition has zero torsion, or certify that no
//! shift works.

use crate::exterior::Form;
use crate::field::linalg::{solve_linear_with, PivotRule};
use crate::field::{FieldError, RatExpr};

use super::tableau::{Tableau, TorsionTable};
use super::{Decomposition, LinearPfaffianSystem, PfaffianError};

/// Outcome of trying to absorb the apparent torsion.
pub enum Absorption {
    /// A shift killed the torsion. `shift[eps][i]` is the coefficient
    /// `x^eps_i` subtracted from `pi^eps` along `omega^i`, and `system` is
    /// the same system with the shifted complement.
    Absorbed {
        system: LinearPfaffianSystem,
        shift: Vec<Vec<RatExpr>>,
    },
    /// No shift works: the absorption equation for the named torsion
    /// coefficient is inconsistent. Indices are 0-based.
    Essential {
        generator: usize,
        omega_pair: (usize, usize),
        witness: RatExpr,
    },
}

/// Shared left-hand side of absorption and integral-element equations: for
/// unknowns `u^eps_i` flattened eps-major (`u[eps * k + i]`), the equation
/// indexed `(a, i < j)` reads
///
/// ```text
/// sum_eps ( A^a_{eps i} u^eps_j  -  A^a_{eps j} u^eps_i )  =  T^a_{ij}.
/// ```
///
/// Absorption solves it for the shift `x`; integral elements solve the same
/// system for the coefficients `p` of `pi^eps|_E = p^eps_i omega^i` (with
/// zero right-hand side once the torsion is absorbed).
pub(crate) fn symmetry_system(
    tableau: &Tableau,
    torsion: &TorsionTable,
) -> (Vec<Vec<RatExpr>>, Vec<RatExpr>) {
    let ws = tableau.workspace();
    let s0 = tableau.n_generators();
    let t = tableau.n_complement();
    let k = tableau.n_independence();
    let n_unknowns = t * k;
    let mut rows = Vec::with_capacity(s0 * k * (k.saturating_sub(1)) / 2);
    let mut rhs = Vec::with_capacity(rows.capacity());
    for a in 0..s0 {
        for i in 0..k {
            for j in (i + 1)..k {
                let mut row = vec![RatExpr::zero(ws); n_unknowns];
                for eps in 0..t {
                    let a_i = tableau.entry(a, eps, i);
                    if !a_i.is_zero() {
                        row[eps * k + j] = row[eps * k + j].add(a_i);
                    }
                    let a_j = tableau.entry(a, eps, j);
                    if !a_j.is_zero() {
                        row[eps * k + i] = row[eps * k + i].sub(a_j);
                    }
                }
                rows.push(row);
                rhs.push(torsion.entry(a, i, j));
            }
        }
    }
    (rows, rhs)
}

/// Map an equation index of [`symmetry_system`] back to `(a, i, j)`.
pub(crate) fn equation_index(eq: usize, k: usize) -> (usize, usize, usize) {
    let pairs_per_generator = k * (k - 1) / 2;
    let a = eq / pairs_per_generator;
    let mut rem = eq % pairs_per_generator;
    for i in 0..k {
        let row_pairs = k - 1 - i;
        if rem < row_pairs {
            return (a, i, i + 1 + rem);
        }
        rem -= row_pairs;
    }
    unreachable!("equation index out of range");
}

impl LinearPfaffianSystem {
    /// Decompose and try to absorb the torsion. Failure to absorb is a
    /// valued outcome carrying a witness, not an error.
    pub fn absorb(&self) -> Result<Absorption, PfaffianError> {
        let decomposition = self.decompose()?;
        self.absorb_decomposed(&decomposition)
    }

    pub(crate) fn absorb_decomposed(
        &self,
        decomposition: &Decomposition,
    ) -> Result<Absorption, PfaffianError> {
        let ws = self.space().workspace();
        let t = self.n_complement();
        let k = self.n_independence();
        if decomposition.torsion.is_zero() {
            return Ok(Absorption::Absorbed {
                system: self.clone(),
                shift: vec![vec![RatExpr::zero(ws); k]; t],
            });
        }
        let (rows, rhs) = symmetry_system(&decomposition.tableau, &decomposition.torsion);
        // Simplest-entry pivoting keeps intermediate expressions small; on
        // large symbolic systems (frame-bundle prolongations) first-nonzero
        // pivots can blow up coefficient sizes by orders of magnitude.
        match solve_linear_with(ws, &rows, &rhs, t * k, PivotRule::Simplest) {
            Ok(solution) => {
                // Any solution absorbs; take the one with free unknowns at
                // zero (the particular solution) for determinism.
                let shift: Vec<Vec<RatExpr>> = (0..t)
                    .map(|eps| solution.particular[eps * k..(eps + 1) * k].to_vec())
                    .collect();
                let complement: Vec<Form> = self
                    .complement()
                    .iter()
                    .enumerate()
                    .map(|(eps, pi)| {
                        let mut shifted = pi.clone();
                        for (i, x) in shift[eps].iter().enumerate() {
                            if !x.is_zero() {
                                shifted = shifted.sub(&self.independence()[i].scale(x));
                            }
                        }
                        shifted
                    })
                    .collect();
                let system = self.with_complement(complement)?;
                Ok(Absorption::Absorbed { system, shift })
            }
            Err(FieldError::InconsistentSystem { equation }) => {
                let (a, i, j) = equation_index(equation, k);
                Ok(Absorption::Essential {
                    generator: a,
                    omega_pair: (i, j),
                    witness: decomposition.torsion.entry(a, i, j),
                })
            }
            Err(e) => Err(e.into()),
        }
    }
}
