//! Joint laws of `n` spin variables and the correlations they induce.

use std::collections::BTreeMap;

use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::correlation::{check_guard, pairs, CorrelationMatrix};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::sign::SignVector;

/// Name of the generator behind [`sample_correlations`].
pub const SAMPLER_RNG: &str = "ChaCha8Rng";

/// A sign-symmetric probability distribution on `{-1, +1}^n`.
///
/// Weights are dense over all `2^n` atoms, indexed by [`SignVector::mask`].
/// Sign symmetry (`P(ω) = P(-ω)`) makes every marginal a fair spin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointSpinDistribution {
    n: usize,
    weights: Vec<Rational>,
}

impl JointSpinDistribution {
    pub fn new(n: usize, weights: Vec<Rational>) -> Result<Self> {
        check_guard(n)?;
        if weights.len() != 1 << n {
            return Err(Error::Dimension(format!(
                "{} weights for {} atoms",
                weights.len(),
                1usize << n
            )));
        }
        if let Some(w) = weights.iter().find(|w| w.is_negative()) {
            return Err(Error::Probability(format!("negative weight {w}")));
        }
        let total: Rational = weights.iter().sum();
        if !total.is_one() {
            return Err(Error::Probability(format!("weights sum to {total}")));
        }
        let full = (1u64 << n) - 1;
        for (mask, w) in weights.iter().enumerate() {
            if *w != weights[(!(mask as u64) & full) as usize] {
                return Err(Error::Probability(format!(
                    "not sign-symmetric at atom {}",
                    SignVector::from_mask(n, mask as u64)?
                )));
            }
        }
        Ok(Self { n, weights })
    }

    /// Builds from a sparse map; missing atoms get weight zero.
    pub fn from_map(n: usize, map: &BTreeMap<SignVector, Rational>) -> Result<Self> {
        check_guard(n)?;
        let mut weights = vec![Rational::zero(); 1 << n];
        for (sign, w) in map {
            if sign.len() != n {
                return Err(Error::Dimension(format!(
                    "atom {sign} has length {}",
                    sign.len()
                )));
            }
            weights[sign.mask() as usize] = w.clone();
        }
        Self::new(n, weights)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight(&self, sign: &SignVector) -> &Rational {
        &self.weights[sign.mask() as usize]
    }

    /// Atoms with nonzero weight, in mask order.
    pub fn support(&self) -> impl Iterator<Item = (SignVector, &Rational)> + '_ {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, w)| !w.is_zero())
            .map(|(mask, w)| {
                (
                    SignVector::from_mask(self.n, mask as u64).expect("mask in range"),
                    w,
                )
            })
    }

    /// `P(ξ_i = +1)`.
    pub fn marginal_plus(&self, i: usize) -> Rational {
        self.support()
            .filter(|(s, _)| s.get(i) > 0)
            .map(|(_, w)| w.clone())
            .sum()
    }
}

/// Splits each class weight equally between `ω` and `-ω`.
///
/// `class_weights[c]` is the weight of sign class `c` (see [`SignVector`]).
pub fn realize(class_weights: &[Rational], n: usize) -> Result<JointSpinDistribution> {
    check_guard(n)?;
    let classes = 1usize << (n - 1);
    if class_weights.len() != classes {
        return Err(Error::Dimension(format!(
            "{} class weights for {classes} sign classes",
            class_weights.len()
        )));
    }
    if let Some(w) = class_weights.iter().find(|w| w.is_negative()) {
        return Err(Error::Probability(format!("negative class weight {w}")));
    }
    let total: Rational = class_weights.iter().sum();
    if !total.is_one() {
        return Err(Error::Probability(format!("class weights sum to {total}")));
    }
    let half = Rational::new(1.into(), 2.into());
    let mut weights = vec![Rational::zero(); 1 << n];
    for (c, w) in class_weights.iter().enumerate() {
        let rep = SignVector::from_class(n, c)?;
        let w = w * &half;
        weights[rep.negate().mask() as usize] = w.clone();
        weights[rep.mask() as usize] = w;
    }
    JointSpinDistribution::new(n, weights)
}

/// `σ_ij = Σ_ω P(ω) ω_i ω_j`.
pub fn correlations_of(dist: &JointSpinDistribution) -> CorrelationMatrix {
    let n = dist.n;
    let mut upper = vec![Rational::zero(); n * (n - 1) / 2];
    for (sign, w) in dist.support() {
        for (k, (i, j)) in pairs(n).enumerate() {
            if sign.product(i, j) > 0 {
                upper[k] += w;
            } else {
                upper[k] -= w;
            }
        }
    }
    CorrelationMatrix::new(n, upper).expect("expectations of ±1 products lie in [-1, 1]")
}

/// Empirical correlations from i.i.d. draws.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleEstimate {
    pub n: usize,
    pub count: u64,
    pub seed: u64,
    pub rng: &'static str,
    /// `σ̂_ij` in upper-triangle order.
    pub upper: Vec<f64>,
    /// `sqrt((1 - σ̂_ij²) / count)`.
    pub std_err: Vec<f64>,
}

/// Draws `count` samples from `dist` with a generator seeded by `seed`.
pub fn sample_correlations(
    dist: &JointSpinDistribution,
    count: u64,
    seed: u64,
) -> Result<SampleEstimate> {
    if count == 0 {
        return Err(Error::Argument("sample count must be at least 1".into()));
    }
    let atoms: Vec<SignVector> = dist.support().map(|(s, _)| s).collect();
    let mut cumulative = Vec::with_capacity(atoms.len());
    let mut acc = Rational::zero();
    for (_, w) in dist.support() {
        acc += w;
        cumulative.push(acc.to_f64().unwrap_or(1.0));
    }
    if let Some(last) = cumulative.last_mut() {
        *last = f64::INFINITY;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = vec![0u64; atoms.len()];
    for _ in 0..count {
        let u: f64 = rng.random();
        let idx = cumulative.partition_point(|&c| c <= u);
        hits[idx] += 1;
    }

    let n = dist.n;
    let mut sums = vec![0i64; n * (n - 1) / 2];
    for (atom, &h) in atoms.iter().zip(&hits) {
        for (k, (i, j)) in pairs(n).enumerate() {
            sums[k] += i64::from(atom.product(i, j)) * h as i64;
        }
    }
    let upper: Vec<f64> = sums.iter().map(|&s| s as f64 / count as f64).collect();
    let std_err = upper
        .iter()
        .map(|s| ((1.0 - s * s).max(0.0) / count as f64).sqrt())
        .collect();
    Ok(SampleEstimate {
        n,
        count,
        seed,
        rng: SAMPLER_RNG,
        upper,
        std_err,
    })
}
