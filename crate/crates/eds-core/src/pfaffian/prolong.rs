//! One prolongation step: adjoin the free first-order coefficients as new
//! coordinates and extend the Pfaffian system by `pi^eps - p^eps_i omega^i`.

use crate::exterior::Form;
use crate::field::linalg::solve_linear;
use crate::field::RatExpr;

use super::absorb::symmetry_system;
use super::integral::{relation_strings, unknown_name};
use super::{Absorption, LinearPfaffianSystem, PfaffianError};

/// Result of prolonging a system once.
pub struct Prolongation {
    /// System on the extended space: old generators plus
    /// `pi^eps - p^eps_i omega^i`, with the new `dp` differentials as the
    /// complement.
    pub system: LinearPfaffianSystem,
    /// Names of the adjoined free coordinates, in flattening order.
    pub new_coordinates: Vec<String>,
    /// Relations that eliminated the dependent `p^eps_i`.
    pub relations: Vec<String>,
}

impl LinearPfaffianSystem {
    /// Absorb the torsion, solve the integral-element equations
    /// symbolically, adjoin one coordinate per free `p^eps_i`, and rebuild
    /// the system with generators `pi^eps - p^eps_i omega^i` (dependent
    /// `p`'s replaced by their solved expressions). Essential torsion is an
    /// error: there are no integral elements to prolong onto.
    pub fn prolong_step(&self) -> Result<Prolongation, PfaffianError> {
        let absorbed = match self.absorb()? {
            Absorption::Absorbed { system, .. } => system,
            Absorption::Essential {
                generator,
                omega_pair,
                ..
            } => {
                return Err(PfaffianError::EssentialTorsion {
                    generator: generator + 1,
                    i: omega_pair.0 + 1,
                    j: omega_pair.1 + 1,
                })
            }
        };
        let decomposition = absorbed.decompose()?;
        let ws = absorbed.space().workspace().clone();
        let t = absorbed.n_complement();
        let k = absorbed.n_independence();
        let (rows, rhs) = symmetry_system(&decomposition.tableau, &decomposition.torsion);
        let solution = solve_linear(&ws, &rows, &rhs, t * k)?;

        // Adjoin the free unknowns as coordinates and express every unknown:
        // free ones as their own symbol, pivots through the solved relations.
        let mut space = absorbed.space().clone();
        let mut new_coordinates = Vec::with_capacity(solution.free.len());
        let mut complement = Vec::with_capacity(solution.free.len());
        let mut free_symbols = Vec::with_capacity(solution.free.len());
        for &f in &solution.free {
            let name = unknown_name(f, k);
            let (sym, element) = space.add_coordinate(&name)?;
            new_coordinates.push(name);
            free_symbols.push(sym);
            complement.push(element);
        }
        let mut expressions = vec![RatExpr::zero(&ws); t * k];
        for (&f, &sym) in solution.free.iter().zip(&free_symbols) {
            expressions[f] = RatExpr::symbol(&ws, sym);
        }
        for &p in &solution.pivots {
            let mut expr = solution.particular[p].clone();
            for (basis, &sym) in solution.nullspace.iter().zip(&free_symbols) {
                if !basis[p].is_zero() {
                    expr = expr.add(&basis[p].mul(&RatExpr::symbol(&ws, sym)));
                }
            }
            expressions[p] = expr;
        }

        let mut generators = absorbed.generators().to_vec();
        for (eps, pi) in absorbed.complement().iter().enumerate() {
            let mut generator = pi.clone();
            for (i, omega) in absorbed.independence().iter().enumerate() {
                let coeff = &expressions[eps * k + i];
                if !coeff.is_zero() {
                    generator = generator.sub(&omega.scale(coeff));
                }
            }
            generators.push(generator);
        }
        let complement_forms: Vec<Form> = complement
            .iter()
            .map(|&element| space.element(element))
            .collect();
        let system = LinearPfaffianSystem::new(
            space,
            generators,
            absorbed.independence().to_vec(),
            complement_forms,
            self.seed(),
        )?;
        Ok(Prolongation {
            system,
            new_coordinates,
            relations: relation_strings(&solution, k),
        })
    }
}
