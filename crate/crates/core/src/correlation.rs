//! Symmetric unit-diagonal matrices stored by their strict upper triangle.

use std::ops::Deref;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{in_unit_interval, Rational};
use crate::sign::SignVector;
use crate::MAX_SPINS;

/// `n(n-1)/2`, the number of off-diagonal pairs.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Position of the zero-based pair `(i, j)`, `i < j`, in lexicographic order
/// `(0,1), (0,2), …, (1,2), …`.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// Iterates the zero-based pairs `(i, j)`, `i < j < n`, in storage order.
pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

/// A symmetric matrix with ones on the diagonal. Entries are unconstrained.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnitDiagonalMatrix {
    n: usize,
    upper: Vec<Rational>,
}

impl UnitDiagonalMatrix {
    pub fn new(n: usize, upper: Vec<Rational>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Dimension("matrix order must be positive".into()));
        }
        if upper.len() != pair_count(n) {
            return Err(Error::Dimension(format!(
                "order {n} needs {} upper-triangle entries, got {}",
                pair_count(n),
                upper.len()
            )));
        }
        Ok(Self { n, upper })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn upper(&self) -> &[Rational] {
        &self.upper
    }

    pub fn into_upper(self) -> Vec<Rational> {
        self.upper
    }

    /// Entry `(i, j)` of the full matrix, zero-based, either order.
    pub fn get(&self, i: usize, j: usize) -> Rational {
        assert!(
            i < self.n && j < self.n,
            "index ({i}, {j}) out of range for order {}",
            self.n
        );
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => Rational::one(),
            std::cmp::Ordering::Less => self.upper[pair_index(self.n, i, j)].clone(),
            std::cmp::Ordering::Greater => self.upper[pair_index(self.n, j, i)].clone(),
        }
    }

    pub fn to_full(&self) -> Vec<Vec<Rational>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j)).collect())
            .collect()
    }

    /// True when every entry lies in `[-1, 1]`.
    pub fn is_correlation(&self) -> bool {
        self.upper.iter().all(in_unit_interval)
    }
}

/// A [`UnitDiagonalMatrix`] whose entries all lie in `[-1, 1]`.
///
/// This is the shape of any correlation matrix of `±1` variables; whether it
/// is actually realizable (lies in `C_n`) is a separate question answered by
/// [`crate::membership`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CorrelationMatrix(UnitDiagonalMatrix);

impl CorrelationMatrix {
    pub fn new(n: usize, upper: Vec<Rational>) -> Result<Self> {
        Self::try_from(UnitDiagonalMatrix::new(n, upper)?)
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(n, vec![Rational::zero(); pair_count(n)])
    }

    /// Every off-diagonal entry equal to `c`.
    pub fn all_equal(n: usize, c: Rational) -> Result<Self> {
        Self::new(n, vec![c; pair_count(n)])
    }

    /// The rank-one matrix `ωωᵀ`.
    pub fn from_sign(sign: &SignVector) -> Self {
        let n = sign.len();
        let upper = pairs(n)
            .map(|(i, j)| Rational::from_integer(sign.product(i, j).into()))
            .collect();
        Self(UnitDiagonalMatrix { n, upper })
    }

    pub fn as_unit_diagonal(&self) -> &UnitDiagonalMatrix {
        &self.0
    }

    pub fn into_inner(self) -> UnitDiagonalMatrix {
        self.0
    }
}

impl TryFrom<UnitDiagonalMatrix> for CorrelationMatrix {
    type Error = Error;

    fn try_from(m: UnitDiagonalMatrix) -> Result<Self> {
        if let Some((k, v)) = m
            .upper
            .iter()
            .enumerate()
            .find(|(_, v)| !in_unit_interval(v))
        {
            return Err(Error::Invalid(format!(
                "correlation entry {k} = {v} outside [-1, 1]"
            )));
        }
        Ok(Self(m))
    }
}

impl Deref for CorrelationMatrix {
    type Target = UnitDiagonalMatrix;

    fn deref(&self) -> &UnitDiagonalMatrix {
        &self.0
    }
}

/// The `2^(n-1)` vertices `ωωᵀ` of `C_n`, one per sign class, in class order
/// (see [`SignVector`]).
pub fn extreme_points(n: usize) -> Result<Vec<CorrelationMatrix>> {
    check_guard(n)?;
    Ok(SignVector::classes(n)
        .map(|s| CorrelationMatrix::from_sign(&s))
        .collect())
}

pub(crate) fn check_guard(n: usize) -> Result<()> {
    if n == 0 || n > MAX_SPINS {
        return Err(Error::Size(format!("n = {n} outside 1..={MAX_SPINS}")));
    }
    Ok(())
}
