//! The system type: a coframe split into generators, independence forms,
//! and a complement, validated for rank at random generic points.

use num_rational::BigRational;

use crate::exterior::{CoframedSpace, Form};
use crate::field::linalg::rank_q;
use crate::field::{Poly, RatExpr, Sampler};

use super::PfaffianError;

/// Salt for the sampler stream used by coframe-rank validation, so the
/// validation points are independent of the character trials drawn from the
/// same master seed.
const RANK_CHECK_SALT: u64 = 0x5EED_0001;

/// A linear Pfaffian system with independence condition.
///
/// The coframe of `space` is split (not necessarily in element order) into
/// `s0` generators `theta^a`, `k` independence forms `omega^i`, and
/// `t = n - s0 - k` complement forms `pi^eps`; together the three blocks
/// must span the coframe, which is checked at construction by evaluating
/// their coefficient matrix at three random generic points. Linearity is
/// checked lazily by [`LinearPfaffianSystem::decompose`], where a violation
/// can be reported with the offending coefficient.
#[derive(Clone)]
pub struct LinearPfaffianSystem {
    space: CoframedSpace,
    generators: Vec<Form>,
    independence: Vec<Form>,
    complement: Vec<Form>,
    seed: u64,
}

impl LinearPfaffianSystem {
    pub fn new(
        space: CoframedSpace,
        generators: Vec<Form>,
        independence: Vec<Form>,
        complement: Vec<Form>,
        seed: u64,
    ) -> Result<Self, PfaffianError> {
        for f in generators
            .iter()
            .chain(independence.iter())
            .chain(complement.iter())
        {
            assert_eq!(f.degree(), 1, "system data must be 1-forms");
        }
        assert_eq!(
            generators.len() + independence.len() + complement.len(),
            space.n_elements(),
            "generators, independence forms, and complement must fill the coframe"
        );
        let sys = LinearPfaffianSystem {
            space,
            generators,
            independence,
            complement,
            seed,
        };
        sys.validate_rank()?;
        Ok(sys)
    }

    pub fn space(&self) -> &CoframedSpace {
        &self.space
    }

    pub fn generators(&self) -> &[Form] {
        &self.generators
    }

    pub fn independence(&self) -> &[Form] {
        &self.independence
    }

    pub fn complement(&self) -> &[Form] {
        &self.complement
    }

    /// Rank of the Pfaffian system (number of generators).
    pub fn s0(&self) -> usize {
        self.generators.len()
    }

    /// Number of independence forms.
    pub fn n_independence(&self) -> usize {
        self.independence.len()
    }

    /// Number of complement forms.
    pub fn n_complement(&self) -> usize {
        self.complement.len()
    }

    /// Master seed used for validation and derived systems.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Coefficient matrix of the split coframe over the underlying elements:
    /// one row per form, ordered generators, independence, complement.
    pub(crate) fn coframe_matrix(&self) -> Vec<Vec<RatExpr>> {
        let n = self.space.n_elements();
        self.generators
            .iter()
            .chain(self.independence.iter())
            .chain(self.complement.iter())
            .map(|f| (0..n).map(|j| f.coeff(&[j])).collect())
            .collect()
    }

    /// Same system with the complement forms replaced (used by absorption);
    /// revalidates the rank, which row operations cannot change.
    pub(crate) fn with_complement(&self, complement: Vec<Form>) -> Result<Self, PfaffianError> {
        LinearPfaffianSystem::new(
            self.space.clone(),
            self.generators.clone(),
            self.independence.clone(),
            complement,
            self.seed,
        )
    }

    fn validate_rank(&self) -> Result<(), PfaffianError> {
        let ws = self.space.workspace();
        let n = self.space.n_elements();
        let matrix = self.coframe_matrix();
        let mut avoid: Vec<Poly> = Vec::new();
        for row in &matrix {
            for entry in row {
                if !entry.den().is_constant() {
                    avoid.push(entry.den().clone());
                }
            }
        }
        let mut sampler = Sampler::new(self.seed).fork(RANK_CHECK_SALT);
        for _ in 0..3 {
            let point = sampler
                .generic_assignment(ws, &avoid)
                .ok_or(PfaffianError::GenericPointExhausted {
                    attempts: Sampler::GENERIC_RETRIES,
                })?;
            let numeric: Vec<Vec<BigRational>> = matrix
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|e| e.evaluate(&point))
                        .collect::<Result<_, _>>()
                })
                .collect::<Result<_, _>>()?;
            let rank = rank_q(&numeric);
            if rank != n {
                return Err(PfaffianError::RankDeficient { rank, expected: n });
            }
        }
        Ok(())
    }
}
