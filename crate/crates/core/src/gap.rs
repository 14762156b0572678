//! Correlation matrices that satisfy every Bell inequality yet lie outside
//! `C_n`. None exist for `n <= 4`; for `n >= 5` the all-equal family already
//! contains them.

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bell::check_bell;
use crate::correlation::{check_guard, pair_count, CorrelationMatrix};
use crate::error::{Error, Result};
use crate::lp::FeasibilityResult;
use crate::membership::{membership, membership_system};
use crate::rational::{rat, Rational};

/// Largest denominator tried in the all-equal scan.
pub const SCAN_MAX_DENOMINATOR: i64 = 24;
/// Random candidates tried after the scan.
pub const RANDOM_ATTEMPTS: usize = 2000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GapSource {
    /// `σ_ij = c` for all pairs.
    AllEqual(Rational),
    /// The `attempt`-th seeded random candidate.
    Random { seed: u64, attempt: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapWitness {
    pub matrix: CorrelationMatrix,
    /// Farkas certificate against [`membership_system`] of `matrix`.
    pub certificate: Vec<Rational>,
    pub source: GapSource,
}

impl GapWitness {
    /// Re-checks both halves of the claim in exact arithmetic.
    pub fn verify(&self) -> Result<bool> {
        let sys = membership_system(&self.matrix)?;
        Ok(check_bell(&self.matrix).is_empty()
            && FeasibilityResult::Infeasible(self.certificate.clone()).verify(&sys))
    }
}

fn try_candidate(matrix: CorrelationMatrix, source: GapSource) -> Result<Option<GapWitness>> {
    if !check_bell(&matrix).is_empty() {
        return Ok(None);
    }
    Ok(match membership(&matrix)? {
        FeasibilityResult::Feasible(_) => None,
        FeasibilityResult::Infeasible(certificate) => Some(GapWitness {
            matrix,
            certificate,
            source,
        }),
    })
}

/// Finds a Bell-satisfying matrix outside `C_n`, with its certificate.
///
/// Scans `σ_ij = c` for reduced `c = p/q ∈ (-1/3, 0)` by increasing `q`,
/// then falls back to random rational matrices drawn from `seed`.
pub fn gap_search(n: usize, seed: u64) -> Result<GapWitness> {
    if n < 5 {
        return Err(Error::Argument(format!(
            "n = {n}: Bell inequalities characterize C_n for n <= 4, no gap exists"
        )));
    }
    check_guard(n)?;

    for q in 1..=SCAN_MAX_DENOMINATOR {
        // -1/3 < p/q < 0
        for p in (-q + 1) / 3..0 {
            if 3 * p <= -q || p.gcd(&q) != 1 {
                continue;
            }
            let c = rat(p, q);
            let m = CorrelationMatrix::all_equal(n, c.clone())?;
            if let Some(w) = try_candidate(m, GapSource::AllEqual(c))? {
                return Ok(w);
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let den = 12;
    for attempt in 0..RANDOM_ATTEMPTS {
        let upper = (0..pair_count(n))
            .map(|_| rat(rng.random_range(-den..=den), den))
            .collect();
        let m = CorrelationMatrix::new(n, upper)?;
        if let Some(w) = try_candidate(m, GapSource::Random { seed, attempt })? {
            return Ok(w);
        }
    }
    Err(Error::Search(format!(
        "no gap matrix for n = {n} after the all-equal scan and {RANDOM_ATTEMPTS} random candidates"
    )))
}
