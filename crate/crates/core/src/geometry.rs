//! V- and H-representations of polytopes and the conversion between them.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::correlation::CorrelationMatrix;
use crate::error::{Error, Result};
use crate::linalg::{nullspace, rank};
use crate::rational::{dot, Rational};

/// Guards for [`facet_enumerate`].
pub const MAX_FACET_POINTS: usize = 64;
pub const MAX_FACET_DIM: usize = 10;

/// A finite point set in `Q^dim`; the polytope is its convex hull.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VRepresentation {
    dim: usize,
    points: Vec<Vec<Rational>>,
}

impl VRepresentation {
    /// Repeated points are dropped, keeping first occurrences in order.
    pub fn new(dim: usize, points: Vec<Vec<Rational>>) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::Dimension(format!(
                "point of length {} in dimension {dim}",
                p.len()
            )));
        }
        let mut seen = BTreeSet::new();
        let points = points
            .into_iter()
            .filter(|p| seen.insert(p.clone()))
            .collect();
        Ok(Self { dim, points })
    }

    /// Upper triangles of the given matrices as points in `Q^(n(n-1)/2)`.
    pub fn from_matrices(matrices: &[CorrelationMatrix]) -> Result<Self> {
        let dim = matrices.first().map_or(0, |m| m.upper().len());
        Self::new(dim, matrices.iter().map(|m| m.upper().to_vec()).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<Rational>] {
        &self.points
    }
}

/// `normal · x + offset >= 0`, scaled so the first nonzero of
/// `(offset, normal)` has absolute value 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfSpace {
    normal: Vec<Rational>,
    offset: Rational,
}

impl HalfSpace {
    pub fn new(normal: Vec<Rational>, offset: Rational) -> Result<Self> {
        if normal.iter().all(Zero::is_zero) {
            return Err(Error::Invalid("halfspace normal is zero".into()));
        }
        let lead = std::iter::once(&offset)
            .chain(&normal)
            .find(|v| !v.is_zero())
            .expect("normal is nonzero")
            .abs();
        let normal = normal.into_iter().map(|v| v / &lead).collect();
        Ok(Self {
            normal,
            offset: offset / lead,
        })
    }

    pub fn normal(&self) -> &[Rational] {
        &self.normal
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    /// `normal · x + offset`.
    pub fn evaluate(&self, x: &[Rational]) -> Rational {
        dot(&self.normal, x) + &self.offset
    }
}

impl Ord for HalfSpace {
    /// Descending on `(offset, normal)` so positive coefficients come first.
    fn cmp(&self, other: &Self) -> Ordering {
        (&other.offset, &other.normal).cmp(&(&self.offset, &self.normal))
    }
}

impl PartialOrd for HalfSpace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Halfspaces plus the affine equalities `normal · x + offset = 0` of the hull.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRepresentation {
    pub dim: usize,
    pub halfspaces: Vec<HalfSpace>,
    pub affine_equalities: Vec<(Vec<Rational>, Rational)>,
}

impl HRepresentation {
    /// Indices of the halfspaces holding with equality at `x`.
    pub fn tight(&self, x: &[Rational]) -> Vec<usize> {
        self.halfspaces
            .iter()
            .enumerate()
            .filter(|(_, h)| h.evaluate(x).is_zero())
            .map(|(i, _)| i)
            .collect()
    }
}

/// The affine hull of a point set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineHull {
    pub dim: usize,
    /// Indices of `dim + 1` affinely independent input points.
    pub independent: Vec<usize>,
    /// Basis of the direction space: differences from the first independent point.
    pub directions: Vec<Vec<Rational>>,
    /// Equalities cutting out the hull, each scaled so its first nonzero is `+1`.
    pub equalities: Vec<(Vec<Rational>, Rational)>,
}

pub fn affine_hull_dim(v: &VRepresentation) -> Result<AffineHull> {
    let Some(origin) = v.points.first() else {
        return Err(Error::Argument("affine hull of an empty point set".into()));
    };
    let mut independent = vec![0];
    let mut directions: Vec<Vec<Rational>> = Vec::new();
    for (i, p) in v.points.iter().enumerate().skip(1) {
        if directions.len() == v.dim {
            break;
        }
        let diff: Vec<Rational> = p.iter().zip(origin).map(|(a, b)| a - b).collect();
        directions.push(diff);
        if rank(&directions) == directions.len() {
            independent.push(i);
        } else {
            directions.pop();
        }
    }
    let equalities = nullspace(&directions, v.dim)
        .into_iter()
        .map(|normal| {
            let lead = normal
                .iter()
                .find(|x| !x.is_zero())
                .expect("basis vector")
                .clone();
            let normal: Vec<Rational> = normal.into_iter().map(|x| x / &lead).collect();
            let offset = -dot(&normal, origin);
            (normal, offset)
        })
        .collect();
    Ok(AffineHull {
        dim: directions.len(),
        independent,
        directions,
        equalities,
    })
}

/// True iff the points are affinely independent.
pub fn is_simplex(v: &VRepresentation) -> Result<bool> {
    Ok(v.points.len() == affine_hull_dim(v)?.dim + 1)
}

/// Whether `2^(n-1) = n(n-1)/2 + 1`, i.e. whether `C_n` has exactly as many
/// vertices as a simplex of its dimension.
pub fn simplex_count_identity(n: u32) -> bool {
    if n == 0 || n > 64 {
        return false;
    }
    let n = u128::from(n);
    1u128 << (n - 1) == n * (n - 1) / 2 + 1
}

/// Facet-defining halfspaces of `conv(v)` by brute force over point subsets.
///
/// Every subset of `hull dim` points spanning a hyperplane of the affine hull
/// is a candidate; it is kept when all points lie weakly on one side. Normals
/// are taken inside the direction space of the hull, which makes them unique
/// up to scale even when the hull is not full-dimensional.
pub fn facet_enumerate(v: &VRepresentation) -> Result<HRepresentation> {
    if v.points.len() > MAX_FACET_POINTS || v.dim > MAX_FACET_DIM {
        return Err(Error::Size(format!(
            "{} points in dimension {} exceeds the facet enumeration limit ({MAX_FACET_POINTS} points, dimension {MAX_FACET_DIM})",
            v.points.len(),
            v.dim
        )));
    }
    let hull = affine_hull_dim(v)?;
    let r = hull.dim;
    let mut facets = BTreeSet::new();
    if r > 0 {
        let mut search = FacetSearch {
            v,
            directions: &hull.directions,
            facets: &mut facets,
        };
        for base in 0..v.points.len() {
            search.extend(&[base], &[], r - 1);
        }
    }
    Ok(HRepresentation {
        dim: v.dim,
        halfspaces: facets.into_iter().collect(),
        affine_equalities: hull.equalities,
    })
}

struct FacetSearch<'a> {
    v: &'a VRepresentation,
    directions: &'a [Vec<Rational>],
    facets: &'a mut BTreeSet<HalfSpace>,
}

impl FacetSearch<'_> {
    /// Row `[d_t · (q - base)]_t` constraining `a = Σ μ_t d_t` to vanish on `q - base`.
    fn constraint(&self, base: usize, q: usize) -> Vec<Rational> {
        let e: Vec<Rational> = self.v.points[q]
            .iter()
            .zip(&self.v.points[base])
            .map(|(x, y)| x - y)
            .collect();
        self.directions.iter().map(|d| dot(d, &e)).collect()
    }

    /// Grows `chosen` (strictly increasing indices, first is the base point)
    /// by `remaining` further points, skipping any that are affinely
    /// dependent on those already chosen.
    fn extend(&mut self, chosen: &[usize], echelon: &[(usize, Vec<Rational>)], remaining: usize) {
        if remaining == 0 {
            let rows: Vec<Vec<Rational>> = echelon.iter().map(|(_, r)| r.clone()).collect();
            if let Some(h) = self.halfspace(chosen[0], &rows) {
                self.facets.insert(h);
            }
            return;
        }
        let last = *chosen.last().expect("base point");
        let n = self.v.points.len();
        for q in last + 1..=n - remaining {
            let Some(row) = reduce(self.constraint(chosen[0], q), echelon) else {
                continue;
            };
            let mut next_echelon = echelon.to_vec();
            next_echelon.push(row);
            let mut next = chosen.to_vec();
            next.push(q);
            self.extend(&next, &next_echelon, remaining - 1);
        }
    }

    fn halfspace(&self, base: usize, rows: &[Vec<Rational>]) -> Option<HalfSpace> {
        let ns = nullspace(rows, self.directions.len());
        if ns.len() != 1 {
            return None;
        }
        let dim = self.v.dim;
        let mut normal = vec![Rational::zero(); dim];
        for (mu, d) in ns[0].iter().zip(self.directions) {
            if mu.is_zero() {
                continue;
            }
            for (a, x) in normal.iter_mut().zip(d) {
                *a += mu * x;
            }
        }
        let offset = -dot(&normal, &self.v.points[base]);
        let (mut pos, mut neg) = (false, false);
        for p in &self.v.points {
            let value = dot(&normal, p) + &offset;
            pos |= value.is_positive();
            neg |= value.is_negative();
            if pos && neg {
                return None;
            }
        }
        let (normal, offset) = if neg {
            (normal.into_iter().map(|x| -x).collect(), -offset)
        } else {
            (normal, offset)
        };
        HalfSpace::new(normal, offset).ok()
    }
}

/// Reduces `row` against echelon rows; `None` if it becomes zero.
fn reduce(
    mut row: Vec<Rational>,
    echelon: &[(usize, Vec<Rational>)],
) -> Option<(usize, Vec<Rational>)> {
    for (p, e) in echelon {
        if row[*p].is_zero() {
            continue;
        }
        let f = &row[*p] / &e[*p];
        for (x, y) in row.iter_mut().zip(e) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
    }
    let p = row.iter().position(|x| !x.is_zero())?;
    Some((p, row))
}

/// True iff `x` meets every equality exactly and every halfspace weakly.
pub fn h_membership(h: &HRepresentation, x: &[Rational]) -> Result<bool> {
    if x.len() != h.dim {
        return Err(Error::Dimension(format!(
            "point of length {} in dimension {}",
            x.len(),
            h.dim
        )));
    }
    Ok(h.affine_equalities
        .iter()
        .all(|(a, c)| (dot(a, x) + c).is_zero())
        && h.halfspaces.iter().all(|hs| !hs.evaluate(x).is_negative()))
}
