//! Exact feasibility of `M·λ = b, λ >= 0` by phase-I simplex.
//!
//! Artificial variables absorb the initial infeasibility and their sum is
//! minimized; a lexicographic ratio test keeps the method from cycling, so
//! it terminates on every input. When
//! the minimum is positive the final reduced costs give a Farkas certificate
//! `y` with `yᵀM <= 0` and `yᵀb > 0`. Both outcomes are re-verified exactly
//! before they are returned.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{dot, Rational};

/// Largest number of columns (or rows) accepted by [`solve_feasibility`].
pub const MAX_COLUMNS: usize = 1 << 12;

/// The system `M·λ = b`, `λ >= 0`, with `M` stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilitySystem {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    cols: usize,
}

impl FeasibilitySystem {
    pub fn new(rows: Vec<Vec<Rational>>, rhs: Vec<Rational>) -> Result<Self> {
        if rows.len() != rhs.len() {
            return Err(Error::Dimension(format!(
                "{} matrix rows but {} right-hand sides",
                rows.len(),
                rhs.len()
            )));
        }
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(r) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::Dimension(format!(
                "row {r} has {} entries, expected {cols}",
                rows[r].len()
            )));
        }
        Ok(Self { rows, rhs, cols })
    }

    /// Builds from columns `M_j` (all of length `b.len()`).
    pub fn from_columns(columns: &[Vec<Rational>], rhs: Vec<Rational>) -> Result<Self> {
        let m = rhs.len();
        if let Some(j) = columns.iter().position(|c| c.len() != m) {
            return Err(Error::Dimension(format!(
                "column {j} has length {}, expected {m}",
                columns[j].len()
            )));
        }
        let rows = (0..m)
            .map(|i| columns.iter().map(|c| c[i].clone()).collect())
            .collect();
        Ok(Self {
            rows,
            rhs,
            cols: columns.len(),
        })
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn rhs(&self) -> &[Rational] {
        &self.rhs
    }

    /// `yᵀM`.
    pub fn transpose_apply(&self, y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.cols];
        for (row, yi) in self.rows.iter().zip(y) {
            if yi.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(row) {
                *o += yi * a;
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FeasibilityResult {
    /// A basic solution `λ >= 0` of `M·λ = b`.
    Feasible(Vec<Rational>),
    /// A Farkas vector `y`: `yᵀM <= 0` and `yᵀb > 0`.
    Infeasible(Vec<Rational>),
}

impl FeasibilityResult {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FeasibilityResult::Feasible(_))
    }

    /// Checks the point or certificate against `sys` in exact arithmetic.
    pub fn verify(&self, sys: &FeasibilitySystem) -> bool {
        match self {
            FeasibilityResult::Feasible(x) => {
                x.len() == sys.cols
                    && x.iter().all(|v| !v.is_negative())
                    && sys
                        .rows
                        .iter()
                        .zip(&sys.rhs)
                        .all(|(row, b)| dot(row, x) == *b)
            }
            FeasibilityResult::Infeasible(y) => {
                y.len() == sys.rows.len()
                    && sys.transpose_apply(y).iter().all(|v| !v.is_positive())
                    && dot(y, &sys.rhs).is_positive()
            }
        }
    }
}

/// Revised phase-I simplex with integer (fraction-free) pivoting.
///
/// Only the basis inverse is stored. Every entry is an integer and the true
/// value is the entry divided by `denom`, which stays positive; after each
/// pivot the entries are minors of the initial tableau, so the division in
/// [`Revised::pivot`] is exact.
struct Revised {
    // Integer rows of the scaled system (flipped so the right-hand side is >= 0).
    columns: Vec<Vec<BigInt>>,
    // m rows of [B⁻¹ | x_B], then the reduced costs of the artificial
    // columns followed by minus the phase-I objective.
    rows: Vec<Vec<BigInt>>,
    denom: BigInt,
    basis: Vec<usize>,
    m: usize,
    k: usize,
}

impl Revised {
    /// `scales[i]` is the positive integer row `i` was multiplied by, negated
    /// when the row was flipped to make its right-hand side `>= 0`.
    fn phase_one(sys: &FeasibilitySystem) -> (Self, Vec<BigInt>) {
        let m = sys.rows.len();
        let k = sys.cols;
        let mut scaled = Vec::with_capacity(m);
        let mut scales = Vec::with_capacity(m);
        let mut rows = Vec::with_capacity(m + 1);
        for (i, (row, b)) in sys.rows.iter().zip(&sys.rhs).enumerate() {
            let mut scale = row
                .iter()
                .chain(std::iter::once(b))
                .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            if b.is_negative() {
                scale = -scale;
            }
            let factor = Rational::from_integer(scale.clone());
            let to_int = |v: &Rational| (v * &factor).to_integer();
            scaled.push(row.iter().map(to_int).collect::<Vec<_>>());
            let mut r: Vec<BigInt> = (0..m)
                .map(|a| {
                    if a == i {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect();
            r.push(to_int(b));
            rows.push(r);
            scales.push(scale);
        }
        let mut objective = vec![BigInt::zero(); m + 1];
        objective[m] = -rows.iter().map(|r| &r[m]).sum::<BigInt>();
        rows.push(objective);
        let columns = (0..k)
            .map(|j| scaled.iter().map(|r| r[j].clone()).collect())
            .collect();
        let revised = Self {
            columns,
            rows,
            denom: BigInt::one(),
            basis: (k..k + m).collect(),
            m,
            k,
        };
        (revised, scales)
    }

    fn rhs(&self, r: usize) -> &BigInt {
        &self.rows[r][self.m]
    }

    /// `denom · y` where `y = c_Bᵀ B⁻¹` are the phase-I duals.
    fn scaled_duals(&self) -> Vec<BigInt> {
        self.rows[self.m][..self.m]
            .iter()
            .map(|c| &self.denom - c)
            .collect()
    }

    /// `denom ·` reduced cost of column `j`.
    fn scaled_reduced_cost(&self, j: usize, duals: &[BigInt]) -> BigInt {
        if j >= self.k {
            return self.rows[self.m][j - self.k].clone();
        }
        let mut acc = BigInt::zero();
        for (y, a) in duals.iter().zip(&self.columns[j]) {
            if !a.is_zero() && !y.is_zero() {
                acc -= y * a;
            }
        }
        acc
    }

    /// Most negative reduced cost, smallest index on ties.
    fn entering(&self) -> Option<(usize, BigInt)> {
        let duals = self.scaled_duals();
        let mut basic = vec![false; self.k + self.m];
        for &b in &self.basis {
            basic[b] = true;
        }
        let mut best: Option<(usize, BigInt)> = None;
        for (j, &is_basic) in basic.iter().enumerate() {
            if is_basic {
                continue;
            }
            let cost = self.scaled_reduced_cost(j, &duals);
            if !cost.is_negative() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, b)| cost < *b) {
                best = Some((j, cost));
            }
        }
        best
    }

    /// `denom · B⁻¹ A_j`.
    fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.m)
            .map(|r| {
                if j >= self.k {
                    return self.rows[r][j - self.k].clone();
                }
                let mut acc = BigInt::zero();
                for (b, a) in self.rows[r][..self.m].iter().zip(&self.columns[j]) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += b * a;
                    }
                }
                acc
            })
            .collect()
    }

    /// Lexicographic minimum ratio test over the rows `[x_B | B⁻¹] / α_r`.
    ///
    /// Those rows start lexicographically positive and stay so, which rules
    /// out cycling whatever column enters.
    fn leaving(&self, alpha: &[BigInt]) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (r, a) in alpha.iter().enumerate() {
            if !a.is_positive() {
                continue;
            }
            let better = match best {
                None => true,
                Some(b) => self.lex_less(r, a, b, &alpha[b]),
            };
            if better {
                best = Some(r);
            }
        }
        best
    }

    /// `row_r / a_r <lex row_b / a_b`, with the right-hand side compared first.
    fn lex_less(&self, r: usize, a_r: &BigInt, b: usize, a_b: &BigInt) -> bool {
        let order = std::iter::once(self.m).chain(0..self.m);
        for t in order {
            let lhs = &self.rows[r][t] * a_b;
            let rhs = &self.rows[b][t] * a_r;
            match lhs.cmp(&rhs) {
                std::cmp::Ordering::Less => return true,
                std::cmp::Ordering::Greater => return false,
                std::cmp::Ordering::Equal => {}
            }
        }
        false
    }

    fn pivot(&mut self, r: usize, j: usize, mut alpha: Vec<BigInt>, cost: BigInt) {
        alpha.push(cost);
        let p = alpha[r].clone();
        let prow = std::mem::take(&mut self.rows[r]);
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = &alpha[i];
            for (v, pv) in row.iter_mut().zip(&prow) {
                let mut t = &*v * &p;
                if !f.is_zero() && !pv.is_zero() {
                    t -= f * pv;
                }
                *v = t / &self.denom;
            }
        }
        self.rows[r] = prow;
        self.denom = p;
        self.basis[r] = j;
    }

    fn value(&self, v: &BigInt) -> Rational {
        Rational::new(v.clone(), self.denom.clone())
    }
}

/// Decides `M·λ = b, λ >= 0` and returns a verified point or certificate.
///
/// Pricing takes the most negative reduced cost; the lexicographic ratio
/// test guarantees termination.
pub fn solve_feasibility(sys: &FeasibilitySystem) -> Result<FeasibilityResult> {
    if sys.cols > MAX_COLUMNS || sys.rows.len() > MAX_COLUMNS {
        return Err(Error::Size(format!(
            "{}×{} system exceeds the {MAX_COLUMNS} limit",
            sys.rows.len(),
            sys.cols
        )));
    }
    let m = sys.rows.len();
    let k = sys.cols;
    let (mut t, scales) = Revised::phase_one(sys);

    while let Some((j, cost)) = t.entering() {
        let alpha = t.column(j);
        let r = t
            .leaving(&alpha)
            .ok_or_else(|| Error::Internal("phase-I objective unbounded below".into()))?;
        t.pivot(r, j, alpha, cost);
    }

    let infeasibility: BigInt = (0..m)
        .filter(|&r| t.basis[r] >= k)
        .map(|r| t.rhs(r).clone())
        .sum();

    let result = if infeasibility.is_zero() {
        let mut x = vec![Rational::zero(); k];
        for r in 0..m {
            if t.basis[r] < k {
                x[t.basis[r]] = t.value(t.rhs(r));
            }
        }
        FeasibilityResult::Feasible(x)
    } else {
        // Phase-I duals mapped back through the row scaling.
        let y = t
            .scaled_duals()
            .iter()
            .zip(&scales)
            .map(|(y, s)| t.value(y) * Rational::from_integer(s.clone()))
            .collect();
        FeasibilityResult::Infeasible(y)
    };

    if !result.verify(sys) {
        return Err(Error::Internal(format!(
            "solver produced an unverifiable {} result",
            if result.is_feasible() {
                "feasible"
            } else {
                "infeasible"
            }
        )));
    }
    Ok(result)
}
