//! Decomposition of `d(theta^a)` into tableau and torsion against the split
//! coframe, verified by re-expanding the extracted data.

use std::collections::BTreeMap;

use crate::exterior::Form;
use crate::field::linalg::invert_ratexpr;
use crate::field::{RatExpr, Workspace};

use super::{LinearPfaffianSystem, PfaffianError};

/// Coefficients `A^a_{eps i}` of `pi^eps ^ omega^i` in `d(theta^a)` modulo
/// the generators.
#[derive(Clone)]
pub struct Tableau {
    ws: Workspace,
    n_generators: usize,
    n_complement: usize,
    n_independence: usize,
    entries: Vec<Vec<Vec<RatExpr>>>,
}

impl Tableau {
    pub fn zero(ws: &Workspace, n_generators: usize, n_complement: usize, n_independence: usize) -> Self {
        let entries = vec![vec![vec![RatExpr::zero(ws); n_independence]; n_complement]; n_generators];
        Tableau {
            ws: ws.clone(),
            n_generators,
            n_complement,
            n_independence,
            entries,
        }
    }

    pub fn workspace(&self) -> &Workspace {
        &self.ws
    }

    pub fn n_generators(&self) -> usize {
        self.n_generators
    }

    pub fn n_complement(&self) -> usize {
        self.n_complement
    }

    pub fn n_independence(&self) -> usize {
        self.n_independence
    }

    /// `A^a_{eps i}` (all indices 0-based).
    pub fn entry(&self, a: usize, eps: usize, i: usize) -> &RatExpr {
        &self.entries[a][eps][i]
    }

    pub(crate) fn set_entry(&mut self, a: usize, eps: usize, i: usize, value: RatExpr) {
        self.entries[a][eps][i] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries
            .iter()
            .all(|block| block.iter().all(|row| row.iter().all(|e| e.is_zero())))
    }
}

/// Torsion coefficients `T^a_{ij}`, stored for `i < j` and antisymmetrized
/// on lookup.
#[derive(Clone)]
pub struct TorsionTable {
    ws: Workspace,
    n_generators: usize,
    n_independence: usize,
    entries: BTreeMap<(usize, usize, usize), RatExpr>,
}

impl TorsionTable {
    pub fn zero(ws: &Workspace, n_generators: usize, n_independence: usize) -> Self {
        TorsionTable {
            ws: ws.clone(),
            n_generators,
            n_independence,
            entries: BTreeMap::new(),
        }
    }

    pub fn n_generators(&self) -> usize {
        self.n_generators
    }

    pub fn n_independence(&self) -> usize {
        self.n_independence
    }

    /// `T^a_{ij}` with the antisymmetry `T^a_{ji} = -T^a_{ij}` applied.
    pub fn entry(&self, a: usize, i: usize, j: usize) -> RatExpr {
        if i == j {
            return RatExpr::zero(&self.ws);
        }
        if i < j {
            self.entries
                .get(&(a, i, j))
                .cloned()
                .unwrap_or_else(|| RatExpr::zero(&self.ws))
        } else {
            self.entry(a, j, i).neg()
        }
    }

    pub(crate) fn set_entry(&mut self, a: usize, i: usize, j: usize, value: RatExpr) {
        assert!(i < j, "torsion entries are stored for i < j");
        if value.is_zero() {
            self.entries.remove(&(a, i, j));
        } else {
            self.entries.insert((a, i, j), value);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Stored (nonzero) entries as `(a, i, j, T^a_{ij})` with `i < j`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, usize, &RatExpr)> {
        self.entries.iter().map(|(&(a, i, j), v)| (a, i, j, v))
    }
}

/// Tableau and torsion of a system, as extracted by
/// [`LinearPfaffianSystem::decompose`].
#[derive(Clone)]
pub struct Decomposition {
    pub tableau: Tableau,
    pub torsion: TorsionTable,
}

impl LinearPfaffianSystem {
    /// Express every `d(theta^a)` in the split coframe and read off the
    /// tableau `A^a_{eps i}` and torsion `T^a_{ij}`; a surviving `pi ^ pi`
    /// term means the system is not linear. The extraction is verified by
    /// re-expanding `A` and `T` against the actual complement and
    /// independence forms and checking that the difference from `d(theta^a)`
    /// vanishes modulo the generators.
    pub fn decompose(&self) -> Result<Decomposition, PfaffianError> {
        let space = self.space();
        let ws = space.workspace();
        let n = space.n_elements();
        let s0 = self.s0();
        let k = self.n_independence();
        let t = self.n_complement();

        // The split coframe phi = (theta, omega, pi) relates to the
        // underlying elements e by phi = C e; substituting
        // e_j = sum_r Cinv[j][r] phi^r re-expresses any form in phi, with the
        // resulting term indices meaning positions in the split coframe.
        let c = self.coframe_matrix();
        let cinv = invert_ratexpr(ws, &c)
            .expect("split coframe verified invertible at a generic point");
        let replacement: Vec<Form> = (0..n)
            .map(|j| {
                let mut image = Form::zero(ws, 1);
                for (r, coeff) in cinv[j].iter().enumerate() {
                    if !coeff.is_zero() {
                        image.add_term(&[r], coeff.clone());
                    }
                }
                image
            })
            .collect();

        let in_omega = |r: usize| r >= s0 && r < s0 + k;
        let mut tableau = Tableau::zero(ws, s0, t, k);
        let mut torsion = TorsionTable::zero(ws, s0, k);

        for (a, theta) in self.generators().iter().enumerate() {
            let d_theta = space.d(theta)?;
            let split = space.change_basis(&d_theta, &replacement)?;
            for (indices, coeff) in split.terms() {
                let (p, q) = (indices[0], indices[1]);
                if p < s0 {
                    // Involves a generator: vanishes modulo the system.
                    continue;
                }
                if in_omega(p) && in_omega(q) {
                    torsion.set_entry(a, p - s0, q - s0, coeff.clone());
                } else if in_omega(p) {
                    // coeff * omega^i ^ pi^eps = -coeff * pi^eps ^ omega^i.
                    tableau.set_entry(a, q - s0 - k, p - s0, coeff.neg());
                } else {
                    return Err(PfaffianError::NotLinear {
                        generator: a + 1,
                        pi_a: format!("pi^{}", p - s0 - k + 1),
                        pi_b: format!("pi^{}", q - s0 - k + 1),
                        coefficient: coeff.display().to_string(),
                    });
                }
            }
        }

        // Re-expansion check: rebuild A.pi^omega + T.omega^omega from the
        // actual 1-forms and compare with d(theta^a) modulo the generators.
        for (a, theta) in self.generators().iter().enumerate() {
            let mut rebuilt = Form::zero(ws, 2);
            for eps in 0..t {
                for i in 0..k {
                    let entry = tableau.entry(a, eps, i);
                    if !entry.is_zero() {
                        let wedge = self.complement()[eps].wedge(&self.independence()[i]);
                        rebuilt = rebuilt.add(&wedge.scale(entry));
                    }
                }
            }
            for (ta, i, j, value) in torsion.iter() {
                if ta == a {
                    let wedge = self.independence()[i].wedge(&self.independence()[j]);
                    rebuilt = rebuilt.add(&wedge.scale(value));
                }
            }
            let residual = space.d(theta)?.sub(&rebuilt);
            let split = space.change_basis(&residual, &replacement)?;
            if split.terms().any(|(indices, _)| indices[0] >= s0) {
                return Err(PfaffianError::DecompositionMismatch { generator: a + 1 });
            }
        }

        Ok(Decomposition { tableau, torsion })
    }
}
