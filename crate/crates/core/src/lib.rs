//! Exact arithmetic for the polytope `C_n` of correlation matrices realizable
//! by `n` spin random variables (each uniform on `{-1, +1}`).
//!
//! The crate covers:
//!
//! - the vertices of `C_n` (rank-one sign matrices `ωωᵀ`),
//! - the triangle (Bell) inequality system and its evaluation,
//! - the barycentric transform of the three-spin tetrahedron,
//! - realization of correlation matrices as joint spin distributions,
//! - certified rational LP feasibility ([`lp`]) and polytope membership,
//! - V/H conversion by brute-force facet enumeration ([`geometry`]),
//! - the search for Bell-satisfying matrices outside `C_n` for `n >= 5`.
//!
//! All correctness-bearing computations use [`Rational`] (arbitrary precision).
//! Floating point only appears in the Monte-Carlo sampler.

pub mod bell;
pub mod correlation;
pub mod distribution;
pub mod error;
pub mod gap;
pub mod geometry;
mod linalg;
pub mod lp;
pub mod membership;
pub mod rational;
pub mod sign;
pub mod tetrahedron;

pub use bell::{bell_system, check_bell, evaluate_bell, BellInequality};
pub use correlation::{
    extreme_points, pair_count, pair_index, CorrelationMatrix, UnitDiagonalMatrix,
};
pub use distribution::{
    correlations_of, realize, sample_correlations, JointSpinDistribution, SampleEstimate,
};
pub use error::{Error, Result};
pub use gap::{gap_search, GapWitness};
pub use geometry::{
    affine_hull_dim, facet_enumerate, h_membership, is_simplex, simplex_count_identity, AffineHull,
    HRepresentation, HalfSpace, VRepresentation,
};
pub use lp::{solve_feasibility, FeasibilityResult, FeasibilitySystem};
pub use membership::{membership, membership_system, realizability, Realization};
pub use rational::Rational;
pub use sign::SignVector;
pub use tetrahedron::{
    barycentric3, bell_transform, compose3, moment_vector, BarycentricCoords, BellEvaluation,
    ComposedMatrix, MomentVector, TRANSFORM,
};

/// Largest `n` for which vertices, atoms and LP columns are enumerated.
pub const MAX_SPINS: usize = 12;
