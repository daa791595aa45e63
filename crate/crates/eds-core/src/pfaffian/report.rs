//! The involutivity report and the pipeline behind Cartan's test:
//! decompose, absorb, characters, integral elements, compare.

use serde::Serialize;

use super::{
    Absorption, CharacterTrial, LinearPfaffianSystem, PfaffianError, SolveMode,
};

/// What happened to the apparent torsion.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum TorsionStatus {
    /// Torsion vanished after shifting the complement; `shift[eps][i]` is
    /// the coefficient of `omega^i` subtracted from `pi^eps` (all zero when
    /// the decomposition was already torsion-free).
    Absorbed { shift: Vec<Vec<String>> },
    /// Some torsion survives every shift. Indices are 0-based; the witness
    /// is the torsion coefficient whose absorption equation is inconsistent.
    Essential {
        generator: usize,
        omega_pair: (usize, usize),
        witness: String,
    },
}

/// "Solutions depend on `functions` functions of `variables` variables":
/// the last nonzero character and its position, or `(s0, 0)` when every
/// character vanishes (solutions depend on constants only).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Generality {
    pub functions: usize,
    pub variables: usize,
}

/// Outcome of Cartan's involutivity test on a linear Pfaffian system.
#[derive(Clone, Debug, Serialize)]
pub struct InvolutivityReport {
    /// Rank of the Pfaffian system (number of generators).
    pub s0: usize,
    /// Reduced characters `s_1 .. s_k`.
    pub characters: Vec<usize>,
    /// Dimension of the space of integral elements over a point.
    pub integral_dim: usize,
    /// Torsion absorbed and `integral_dim = s_1 + 2 s_2 + ... + k s_k`.
    pub cartan_ok: bool,
    pub torsion: TorsionStatus,
    pub generality: Generality,
    /// Per-trial character evidence (seeds and rank profiles).
    pub trials: Vec<CharacterTrial>,
    /// Fewer than two trials attained the reported character profile.
    pub unstable: bool,
    /// Integral-element relations (symbolic passes only).
    pub relations: Vec<String>,
    /// A generic-point rank check disagreed somewhere in the pipeline.
    pub non_generic: bool,
    /// Master seed the report was produced from.
    pub seed: u64,
}

impl InvolutivityReport {
    /// Cartan's bound `s_1 + 2 s_2 + ... + k s_k`.
    pub fn cartan_bound(&self) -> usize {
        self.characters
            .iter()
            .enumerate()
            .map(|(l, &s)| (l + 1) * s)
            .sum()
    }
}

/// Generality from a character vector: the last nonzero character, or
/// `(s0, 0)` when all characters vanish.
fn generality(characters: &[usize], s0: usize) -> Generality {
    characters
        .iter()
        .rposition(|&s| s != 0)
        .map(|l| Generality {
            functions: characters[l],
            variables: l + 1,
        })
        .unwrap_or(Generality {
            functions: s0,
            variables: 0,
        })
}

impl LinearPfaffianSystem {
    /// Run the full involutivity pipeline with the default solve mode.
    pub fn cartan_test(&self, trials: usize, seed: u64) -> Result<InvolutivityReport, PfaffianError> {
        self.cartan_test_with(trials, seed, SolveMode::Auto)
    }

    /// Decompose, absorb, compute characters on the absorbed system, measure
    /// the integral elements, and compare with Cartan's bound. With
    /// essential torsion there are no integral elements: the report carries
    /// the witness, a zero integral dimension, and `cartan_ok = false`.
    pub fn cartan_test_with(
        &self,
        trials: usize,
        seed: u64,
        mode: SolveMode,
    ) -> Result<InvolutivityReport, PfaffianError> {
        let decomposition = self.decompose()?;
        match self.absorb_decomposed(&decomposition)? {
            Absorption::Essential {
                generator,
                omega_pair,
                witness,
            } => {
                let analysis = decomposition.tableau.reduced_characters(trials, seed)?;
                Ok(InvolutivityReport {
                    s0: self.s0(),
                    integral_dim: 0,
                    cartan_ok: false,
                    torsion: TorsionStatus::Essential {
                        generator,
                        omega_pair,
                        witness: witness.display().to_string(),
                    },
                    generality: Generality {
                        functions: 0,
                        variables: 0,
                    },
                    trials: analysis.trials,
                    unstable: analysis.unstable,
                    relations: Vec::new(),
                    non_generic: false,
                    characters: analysis.characters,
                    seed,
                })
            }
            Absorption::Absorbed { system, shift } => {
                let absorbed = system.decompose()?;
                assert!(
                    absorbed.torsion.is_zero(),
                    "absorption left torsion behind"
                );
                let analysis = absorbed.tableau.reduced_characters(trials, seed)?;
                let integral = absorbed.integral_elements(mode, seed)?;
                let bound: usize = analysis
                    .characters
                    .iter()
                    .enumerate()
                    .map(|(l, &s)| (l + 1) * s)
                    .sum();
                Ok(InvolutivityReport {
                    s0: self.s0(),
                    integral_dim: integral.dimension,
                    cartan_ok: integral.dimension == bound,
                    torsion: TorsionStatus::Absorbed {
                        shift: shift
                            .iter()
                            .map(|row| row.iter().map(|x| x.display().to_string()).collect())
                            .collect(),
                    },
                    generality: generality(&analysis.characters, self.s0()),
                    trials: analysis.trials,
                    unstable: analysis.unstable,
                    relations: integral.relations,
                    non_generic: integral.non_generic,
                    characters: analysis.characters,
                    seed,
                })
            }
        }
    }
}
