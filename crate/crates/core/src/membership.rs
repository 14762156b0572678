//! Membership in `C_n` as an LP over convex weights on the vertices.

use num_traits::One;

use crate::correlation::{check_guard, UnitDiagonalMatrix};
use crate::distribution::{realize, JointSpinDistribution};
use crate::error::Result;
use crate::lp::{solve_feasibility, FeasibilityResult, FeasibilitySystem};
use crate::rational::Rational;
use crate::sign::SignVector;
use crate::CorrelationMatrix;

/// One column per sign class: the vertex's upper triangle over a final `1`.
/// The right-hand side is `(σ, 1)`.
pub fn membership_system(sigma: &UnitDiagonalMatrix) -> Result<FeasibilitySystem> {
    let n = sigma.n();
    check_guard(n)?;
    let columns: Vec<Vec<Rational>> = SignVector::classes(n)
        .map(|s| {
            let mut col = CorrelationMatrix::from_sign(&s).into_inner().into_upper();
            col.push(Rational::one());
            col
        })
        .collect();
    let mut rhs = sigma.upper().to_vec();
    rhs.push(Rational::one());
    FeasibilitySystem::from_columns(&columns, rhs)
}

/// `Feasible(weights)` iff `sigma ∈ C_n`; the weights are indexed by sign
/// class and feed directly into [`realize`].
pub fn membership(sigma: &UnitDiagonalMatrix) -> Result<FeasibilityResult> {
    solve_feasibility(&membership_system(sigma)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Realization {
    /// A spin distribution with correlation matrix `sigma`, with the class
    /// weights it was built from.
    Realized {
        distribution: JointSpinDistribution,
        class_weights: Vec<Rational>,
    },
    /// Farkas certificate over the rows of [`membership_system`].
    Infeasible(Vec<Rational>),
}

/// A joint spin law realizing `sigma`, or a proof that none exists.
///
/// When several laws exist (any interior point for `n >= 4`) this returns the
/// vertex-supported one the solver lands on.
pub fn realizability(sigma: &UnitDiagonalMatrix) -> Result<Realization> {
    Ok(match membership(sigma)? {
        FeasibilityResult::Feasible(w) => Realization::Realized {
            distribution: realize(&w, sigma.n())?,
            class_weights: w,
        },
        FeasibilityResult::Infeasible(y) => Realization::Infeasible(y),
    })
}
