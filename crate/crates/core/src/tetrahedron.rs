//! The three-spin case, where `C_3` is a tetrahedron.
//!
//! With `x = (1, σ12, σ13, σ23)` and the fixed sign matrix [`TRANSFORM`] `A`,
//! `y = A·x` lists the four Bell left-hand sides, and since `A·A = 4·I` the
//! barycentric coordinates of `σ` against the vertices `Σ1..Σ4` are `y / 4`.

use num_traits::{One, Signed};

use crate::correlation::{CorrelationMatrix, UnitDiagonalMatrix};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Columns are the moment vectors of the vertices `Σ1..Σ4`; rows are the
/// coefficient patterns of the four Bell inequalities.
pub const TRANSFORM: [[i8; 4]; 4] = [[1, 1, 1, 1], [1, -1, 1, -1], [1, 1, -1, -1], [1, -1, -1, 1]];

fn apply(v: &[Rational; 4]) -> [Rational; 4] {
    std::array::from_fn(|r| {
        TRANSFORM[r]
            .iter()
            .zip(v)
            .map(|(&a, x)| if a > 0 { x.clone() } else { -x })
            .sum()
    })
}

/// `(1, σ12, σ13, σ23)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentVector([Rational; 4]);

impl MomentVector {
    pub fn new(x: [Rational; 4]) -> Result<Self> {
        if !x[0].is_one() {
            return Err(Error::Invalid(format!(
                "moment vector must start with 1, got {}",
                x[0]
            )));
        }
        Ok(Self(x))
    }

    pub fn components(&self) -> &[Rational; 4] {
        &self.0
    }
}

/// `A·x`: the four Bell left-hand sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BellEvaluation([Rational; 4]);

impl BellEvaluation {
    pub fn components(&self) -> &[Rational; 4] {
        &self.0
    }

    /// All components `>= 0`.
    pub fn in_positive_orthant(&self) -> bool {
        self.0.iter().all(|y| !y.is_negative())
    }
}

/// Affine coordinates against `Σ1..Σ4`; they always sum to one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarycentricCoords([Rational; 4]);

impl BarycentricCoords {
    pub fn new(lambda: [Rational; 4]) -> Result<Self> {
        let sum: Rational = lambda.iter().sum();
        if !sum.is_one() {
            return Err(Error::AffineConstraint(sum.to_string()));
        }
        Ok(Self(lambda))
    }

    pub fn components(&self) -> &[Rational; 4] {
        &self.0
    }

    /// All coordinates `>= 0`, i.e. the point lies in the tetrahedron.
    pub fn is_convex(&self) -> bool {
        self.0.iter().all(|l| !l.is_negative())
    }
}

/// Result of [`compose3`]: entries outside `[-1, 1]` cannot be a correlation
/// matrix and come back as a raw symmetric matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComposedMatrix {
    Correlation(CorrelationMatrix),
    NonCorrelation(UnitDiagonalMatrix),
}

impl ComposedMatrix {
    pub fn matrix(&self) -> &UnitDiagonalMatrix {
        match self {
            ComposedMatrix::Correlation(m) => m,
            ComposedMatrix::NonCorrelation(m) => m,
        }
    }

    pub fn is_correlation(&self) -> bool {
        matches!(self, ComposedMatrix::Correlation(_))
    }
}

fn require_three(sigma: &UnitDiagonalMatrix) -> Result<()> {
    if sigma.n() != 3 {
        return Err(Error::Dimension(format!(
            "expected order 3, got {}",
            sigma.n()
        )));
    }
    Ok(())
}

pub fn moment_vector(sigma: &UnitDiagonalMatrix) -> Result<MomentVector> {
    require_three(sigma)?;
    let u = sigma.upper();
    Ok(MomentVector([
        Rational::one(),
        u[0].clone(),
        u[1].clone(),
        u[2].clone(),
    ]))
}

pub fn bell_transform(x: &MomentVector) -> BellEvaluation {
    BellEvaluation(apply(&x.0))
}

/// `λ = A·x / 4`. `sigma` lies in `C_3` exactly when every `λ_i >= 0`.
pub fn barycentric3(sigma: &UnitDiagonalMatrix) -> Result<BarycentricCoords> {
    let y = bell_transform(&moment_vector(sigma)?);
    let quarter = Rational::new(1.into(), 4.into());
    let lambda = y.0.map(|v| v * &quarter);
    debug_assert!(lambda.iter().sum::<Rational>().is_one());
    Ok(BarycentricCoords(lambda))
}

/// `λ1·Σ1 + λ2·Σ2 + λ3·Σ3 + λ4·Σ4`, the inverse of [`barycentric3`].
pub fn compose3(lambda: &BarycentricCoords) -> ComposedMatrix {
    let x = apply(&lambda.0);
    debug_assert!(x[0].is_one());
    let [_, s12, s13, s23] = x;
    let m = UnitDiagonalMatrix::new(3, vec![s12, s13, s23]).expect("three entries");
    match CorrelationMatrix::try_from(m.clone()) {
        Ok(c) => ComposedMatrix::Correlation(c),
        Err(_) => ComposedMatrix::NonCorrelation(m),
    }
}

/// `A·A`, computed.
pub fn transform_squared() -> [[i64; 4]; 4] {
    std::array::from_fn(|r| {
        std::array::from_fn(|c| {
            (0..4)
                .map(|k| i64::from(TRANSFORM[r][k] * TRANSFORM[k][c]))
                .sum()
        })
    })
}

impl From<BarycentricCoords> for [Rational; 4] {
    fn from(b: BarycentricCoords) -> Self {
        b.0
    }
}

impl Default for BarycentricCoords {
    /// The barycenter.
    fn default() -> Self {
        let q = Rational::new(1.into(), 4.into());
        Self([q.clone(), q.clone(), q.clone(), q])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bell::check_bell;
    use crate::correlation::extreme_points;
    use crate::rational::{int, rat};
    use proptest::prelude::*;

    fn m3(a: Rational, b: Rational, c: Rational) -> CorrelationMatrix {
        CorrelationMatrix::new(3, vec![a, b, c]).unwrap()
    }

    fn bary(v: [Rational; 4]) -> BarycentricCoords {
        BarycentricCoords::new(v).unwrap()
    }

    #[test]
    fn transform_is_involutory_up_to_four() {
        let sq = transform_squared();
        for (r, row) in sq.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                assert_eq!(v, if r == c { 4 } else { 0 });
            }
        }
    }

    #[test]
    fn moment_vectors() {
        let s1 = &extreme_points(3).unwrap()[0];
        assert_eq!(
            moment_vector(s1).unwrap().components(),
            &[int(1), int(1), int(1), int(1)]
        );
        let id = CorrelationMatrix::identity(3).unwrap();
        assert_eq!(
            moment_vector(&id).unwrap().components(),
            &[int(1), int(0), int(0), int(0)]
        );
        let h = m3(rat(1, 2), int(0), int(0));
        assert_eq!(
            moment_vector(&h).unwrap().components(),
            &[int(1), rat(1, 2), int(0), int(0)]
        );
        let four = CorrelationMatrix::identity(4).unwrap();
        assert!(matches!(moment_vector(&four), Err(Error::Dimension(_))));
        assert!(MomentVector::new([int(2), int(0), int(0), int(0)]).is_err());
    }

    #[test]
    fn transform_examples() {
        let y = |x: [Rational; 4]| bell_transform(&MomentVector::new(x).unwrap()).0;
        assert_eq!(
            y([int(1), int(1), int(1), int(1)]),
            [int(4), int(0), int(0), int(0)]
        );
        assert_eq!(
            y([int(1), int(0), int(0), int(0)]),
            [int(1), int(1), int(1), int(1)]
        );
        assert_eq!(
            y([int(1), rat(1, 2), int(0), int(0)]),
            [rat(3, 2), rat(1, 2), rat(3, 2), rat(1, 2)]
        );
    }

    #[test]
    fn barycentric_examples() {
        let s1 = &extreme_points(3).unwrap()[0];
        assert_eq!(
            barycentric3(s1).unwrap().0,
            [int(1), int(0), int(0), int(0)]
        );
        let id = CorrelationMatrix::identity(3).unwrap();
        assert_eq!(barycentric3(&id).unwrap(), BarycentricCoords::default());
        let neg = m3(int(-1), int(-1), int(-1));
        let b = barycentric3(&neg).unwrap();
        assert_eq!(b.0, [rat(-1, 2), rat(1, 2), rat(1, 2), rat(1, 2)]);
        assert!(!b.is_convex());
        let four = CorrelationMatrix::identity(4).unwrap();
        assert!(matches!(barycentric3(&four), Err(Error::Dimension(_))));
    }

    #[test]
    fn vertices_have_unit_coordinates() {
        for (k, v) in extreme_points(3).unwrap().iter().enumerate() {
            let b = barycentric3(v).unwrap();
            for (i, l) in b.0.iter().enumerate() {
                assert_eq!(*l, int(i64::from(i == k)));
            }
        }
    }

    #[test]
    fn compose_examples() {
        let v = extreme_points(3).unwrap();
        let c = compose3(&bary([int(1), int(0), int(0), int(0)]));
        assert_eq!(c, ComposedMatrix::Correlation(v[0].clone()));
        let c = compose3(&BarycentricCoords::default());
        assert_eq!(c.matrix().upper(), &[int(0), int(0), int(0)]);
        let c = compose3(&bary([rat(1, 2), rat(1, 2), int(0), int(0)]));
        assert_eq!(c.matrix().upper(), &[int(0), int(1), int(0)]);
        assert!(c.is_correlation());
    }

    #[test]
    fn compose_flags_out_of_range() {
        let c = compose3(&bary([int(2), int(-1), int(0), int(0)]));
        assert!(!c.is_correlation());
        assert_eq!(c.matrix().upper(), &[int(3), int(1), int(3)]);
    }

    #[test]
    fn affine_constraint() {
        let err = BarycentricCoords::new([int(1), int(1), int(0), int(0)]).unwrap_err();
        assert_eq!(err, Error::AffineConstraint("2".into()));
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-40i64..=40, 1i64..=20).prop_map(|(p, q)| rat(p, q))
    }

    fn corr3() -> impl Strategy<Value = CorrelationMatrix> {
        proptest::array::uniform3((-20i64..=20, 1i64..=20))
            .prop_filter("entries in [-1, 1]", |a| {
                a.iter().all(|(p, q)| p.abs() <= *q)
            })
            .prop_map(|a| {
                m3(
                    rat(a[0].0, a[0].1),
                    rat(a[1].0, a[1].1),
                    rat(a[2].0, a[2].1),
                )
            })
    }

    proptest! {
        #[test]
        fn round_trip(a in small_rational(), b in small_rational(), c in small_rational()) {
            let d = Rational::one() - &a - &b - &c;
            let lambda = bary([a, b, c, d]);
            let back = barycentric3(compose3(&lambda).matrix()).unwrap();
            prop_assert_eq!(back, lambda);
        }

        #[test]
        fn three_way_equivalence(sigma in corr3()) {
            let bell_ok = check_bell(&sigma).is_empty();
            let convex = barycentric3(&sigma).unwrap().is_convex();
            let orthant = bell_transform(&moment_vector(&sigma).unwrap()).in_positive_orthant();
            prop_assert_eq!(bell_ok, convex);
            prop_assert_eq!(convex, orthant);
        }
    }
}
