//! Deterministic, seeded sampling of rational numbers, matrices, and
//! generic evaluation points.
//!
//! All randomized routines in the library draw through a [`Sampler`] so that
//! every run with the same seed reproduces the same ranks, characters, and
//! reports bit for bit.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::poly::Poly;
use super::workspace::{SymbolId, Workspace};

/// Default master seed used by the command-line tools.
pub const DEFAULT_SEED: u64 = 0x00C0_FFEE;

/// Seeded random source for exact-arithmetic sampling.
pub struct Sampler {
    seed: u64,
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Independent stream derived from this sampler's seed and a salt; the
    /// derived stream does not depend on how much of this one was consumed.
    pub fn fork(&self, salt: u64) -> Sampler {
        Sampler::new(
            self.seed
                .wrapping_mul(0x9E37_79B9_7F4A_7C15)
                .wrapping_add(salt)
                .rotate_left(17),
        )
    }

    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    /// Small nonzero rational: numerator in `[-999, 999] \ {0}`,
    /// denominator in `[1, 50]`.
    pub fn nonzero_rational(&mut self) -> BigRational {
        let mut numer = 0i64;
        while numer == 0 {
            numer = self.int_in(-999, 999);
        }
        let denom = self.int_in(1, 50);
        BigRational::new(BigInt::from(numer), BigInt::from(denom))
    }

    /// Small rational that may be zero.
    pub fn rational(&mut self) -> BigRational {
        let numer = self.int_in(-999, 999);
        let denom = self.int_in(1, 50);
        BigRational::new(BigInt::from(numer), BigInt::from(denom))
    }

    /// Exact point on the unit circle, `cos^2 + sin^2 = 1`, away from the
    /// axis points.
    pub fn circle_point(&mut self) -> (BigRational, BigRational) {
        let mut t = BigRational::zero();
        while t.is_zero() {
            t = BigRational::new(
                BigInt::from(self.int_in(-40, 40)),
                BigInt::from(self.int_in(1, 40)),
            );
        }
        let one = BigRational::one();
        let t2 = &t * &t;
        let denom = &one + &t2;
        let cos = (&one - &t2) / &denom;
        let sin = (BigRational::from_integer(BigInt::from(2)) * &t) / &denom;
        (cos, sin)
    }

    /// Square integer matrix with entries in `[-9, 9]` and nonzero
    /// determinant (resampled until invertible).
    pub fn invertible_int_matrix(&mut self, n: usize) -> Vec<Vec<BigRational>> {
        loop {
            let m: Vec<Vec<BigRational>> = (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| BigRational::from_integer(BigInt::from(self.int_in(-9, 9))))
                        .collect()
                })
                .collect();
            if !det_q(&m).is_zero() {
                return m;
            }
        }
    }

    /// Number of resampling attempts [`Sampler::generic_assignment`] makes
    /// before giving up.
    pub const GENERIC_RETRIES: usize = 20;

    /// Assignment of every workspace symbol to a small rational, with circle
    /// pairs placed on the unit circle, resampled (up to
    /// [`Self::GENERIC_RETRIES`] times) until all of the `avoid` polynomials
    /// are nonzero at the point.
    pub fn generic_assignment(
        &mut self,
        ws: &Workspace,
        avoid: &[Poly],
    ) -> Option<HashMap<SymbolId, BigRational>> {
        'retry: for _ in 0..Self::GENERIC_RETRIES {
            let mut assignment = HashMap::new();
            for (cos_id, sin_id) in ws
                .circle_pairs()
                .iter()
                .map(|p| (p.cos, p.sin))
                .collect::<Vec<_>>()
            {
                let (c, s) = self.circle_point();
                assignment.insert(cos_id, c);
                assignment.insert(sin_id, s);
            }
            for id in ws.ids() {
                assignment.entry(id).or_insert_with(|| self.nonzero_rational());
            }
            for p in avoid {
                match p.eval(&assignment) {
                    Some(v) if !v.is_zero() => {}
                    _ => continue 'retry,
                }
            }
            return Some(assignment);
        }
        None
    }
}

/// Determinant by exact fraction-free elimination.
pub fn det_q(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    if n == 0 {
        return BigRational::one();
    }
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let mut det = BigRational::one();
    for k in 0..n {
        // Partial pivot: first nonzero entry in column k at or below row k.
        let pivot_row = match (k..n).find(|&i| !a[i][k].is_zero()) {
            Some(r) => r,
            None => return BigRational::zero(),
        };
        if pivot_row != k {
            a.swap(k, pivot_row);
            det = -det;
        }
        let pivot = a[k][k].clone();
        det *= &pivot;
        for i in (k + 1)..n {
            let factor = &a[i][k] / &pivot;
            for j in k..n {
                let sub = &factor * &a[k][j];
                a[i][j] -= sub;
            }
        }
    }
    det
}
