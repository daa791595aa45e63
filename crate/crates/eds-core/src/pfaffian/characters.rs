//! Reduced characters of a tableau, computed from random generic flags.
//!
//! For a flag spanned by directions `v_1, ..., v_k`, the partial sums
//! `s_1 + ... + s_l` equal the rank of the tableau contractions
//! `A(v_1), ..., A(v_l)` stacked into one matrix over the complement index.
//! A random invertible integer matrix realizes a generic flag with
//! probability one, and a random rational point makes the symbolic entries
//! numeric; the reported characters are the componentwise maximum of the
//! rank profiles over the requested trials.

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::field::linalg::rank_q;
use crate::field::{Poly, Sampler};

use super::{PfaffianError, Tableau};

/// One random-flag trial.
#[derive(Clone, Debug, Serialize)]
pub struct CharacterTrial {
    /// Seed of this trial's sampler (master seed plus trial index).
    pub seed: u64,
    /// Rank profile: `ranks[l-1] = s_1 + ... + s_l` for this flag.
    pub ranks: Vec<usize>,
    /// Characters this flag achieved (consecutive differences of `ranks`).
    pub characters: Vec<usize>,
}

/// Characters merged over all trials, with the per-trial evidence.
#[derive(Clone, Debug, Serialize)]
pub struct CharacterAnalysis {
    /// Reduced characters `s_1 .. s_k`.
    pub characters: Vec<usize>,
    pub trials: Vec<CharacterTrial>,
    /// Fewer than two trials attained the reported maximum profile, so the
    /// value lacks independent confirmation.
    pub unstable: bool,
}

impl Tableau {
    /// Denominators of symbolic entries, which a sample point must avoid.
    fn denominators_to_avoid(&self) -> Vec<Poly> {
        let mut avoid: Vec<Poly> = Vec::new();
        for a in 0..self.n_generators() {
            for eps in 0..self.n_complement() {
                for i in 0..self.n_independence() {
                    let den = self.entry(a, eps, i).den();
                    if !den.is_constant() {
                        avoid.push(den.clone());
                    }
                }
            }
        }
        avoid
    }

    /// Evaluate every entry at a random generic point drawn from `sampler`,
    /// avoiding the entries' denominators.
    fn numeric_entries(
        &self,
        sampler: &mut Sampler,
    ) -> Result<Vec<Vec<Vec<BigRational>>>, PfaffianError> {
        let ws = self.workspace();
        let avoid = self.denominators_to_avoid();
        let point = sampler.generic_assignment(ws, &avoid).ok_or(
            PfaffianError::GenericPointExhausted {
                attempts: Sampler::GENERIC_RETRIES,
            },
        )?;
        let (s0, t, k) = (self.n_generators(), self.n_complement(), self.n_independence());
        let mut numeric = vec![vec![vec![BigRational::zero(); k]; t]; s0];
        for (a, block) in numeric.iter_mut().enumerate() {
            for (eps, row) in block.iter_mut().enumerate() {
                for (i, value) in row.iter_mut().enumerate() {
                    *value = self.entry(a, eps, i).evaluate(&point)?;
                }
            }
        }
        Ok(numeric)
    }

    /// Rank profile `[s_1, s_1+s_2, ..]` of this tableau along an explicitly
    /// given flag: column `l` of `flag` is the `l`-th direction, expressed in
    /// the independence basis. Symbolic entries are evaluated at a random
    /// generic point drawn from `seed`. Lets a caller check a distinguished
    /// (for instance, coordinate) flag against the generic characters.
    pub fn rank_profile_for_flag(
        &self,
        flag: &[Vec<BigRational>],
        seed: u64,
    ) -> Result<Vec<usize>, PfaffianError> {
        let k = self.n_independence();
        assert_eq!(flag.len(), k, "flag must be a {k}x{k} matrix");
        for row in flag {
            assert_eq!(row.len(), k, "flag must be a {k}x{k} matrix");
        }
        let mut sampler = Sampler::new(seed);
        let numeric = self.numeric_entries(&mut sampler)?;
        Ok(stacked_rank_profile(&numeric, flag, self.n_complement(), k))
    }

    /// Reduced characters `s_1 .. s_k` from `trials` random flags, each
    /// evaluated at its own random generic point. Trial `m` draws from seed
    /// `seed + m`, so trials are independent of each other and reproducible.
    pub fn reduced_characters(
        &self,
        trials: usize,
        seed: u64,
    ) -> Result<CharacterAnalysis, PfaffianError> {
        assert!(trials >= 1, "at least one trial is required");
        let t = self.n_complement();
        let k = self.n_independence();

        let mut merged_ranks = vec![0usize; k];
        let mut records: Vec<CharacterTrial> = Vec::with_capacity(trials);
        for trial in 0..trials {
            let trial_seed = seed.wrapping_add(trial as u64);
            let mut sampler = Sampler::new(trial_seed);
            let numeric = self.numeric_entries(&mut sampler)?;
            let flag = sampler.invertible_int_matrix(k);

            let ranks = stacked_rank_profile(&numeric, &flag, t, k);
            for (m, r) in merged_ranks.iter_mut().zip(&ranks) {
                *m = (*m).max(*r);
            }
            records.push(CharacterTrial {
                seed: trial_seed,
                characters: profile_to_characters(&ranks),
                ranks,
            });
        }

        let characters = profile_to_characters(&merged_ranks);
        let attained = records
            .iter()
            .filter(|r| r.ranks == merged_ranks)
            .count();
        Ok(CharacterAnalysis {
            characters,
            trials: records,
            unstable: attained < 2,
        })
    }
}

/// Stack the contractions `A(v_1), .., A(v_l)` (v_l = column `l` of the flag
/// matrix) and record the rank over the complement index after each
/// direction.
fn stacked_rank_profile(
    numeric: &[Vec<Vec<BigRational>>],
    flag: &[Vec<BigRational>],
    t: usize,
    k: usize,
) -> Vec<usize> {
    let mut ranks = Vec::with_capacity(k);
    let mut stacked: Vec<Vec<BigRational>> = Vec::new();
    for l in 0..k {
        for block in numeric {
            let row: Vec<BigRational> = (0..t)
                .map(|eps| {
                    (0..k)
                        .map(|i| &block[eps][i] * &flag[i][l])
                        .fold(BigRational::zero(), |acc, x| acc + x)
                })
                .collect();
            stacked.push(row);
        }
        let rank = if t == 0 { 0 } else { rank_q(&stacked) };
        ranks.push(rank);
    }
    ranks
}

/// Consecutive differences of a rank profile.
fn profile_to_characters(ranks: &[usize]) -> Vec<usize> {
    let mut characters = Vec::with_capacity(ranks.len());
    let mut previous = 0usize;
    for &r in ranks {
        characters.push(r - previous);
        previous = r;
    }
    characters
}
