//! Triangle (Bell) inequalities
//! `1 + ε_i ε_j σ_ij + ε_i ε_k σ_ik + ε_j ε_k σ_jk >= 0`.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::correlation::{pair_count, pair_index, CorrelationMatrix, UnitDiagonalMatrix};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// One inequality of the system: a triple `i < j < k` (zero-based) and signs
/// `(ε_i, ε_j, ε_k)` with `ε_i = +1`.
///
/// Negating all three signs leaves the inequality unchanged, so every triple
/// carries exactly four canonical patterns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BellInequality {
    triple: [usize; 3],
    signs: [i8; 3],
}

impl BellInequality {
    /// Any sign pattern is accepted and canonicalized.
    pub fn new(triple: [usize; 3], signs: [i8; 3]) -> Result<Self> {
        if !(triple[0] < triple[1] && triple[1] < triple[2]) {
            return Err(Error::Argument(format!(
                "triple {triple:?} is not strictly increasing"
            )));
        }
        if signs.iter().any(|&e| e != 1 && e != -1) {
            return Err(Error::Invalid(format!("signs {signs:?} are not all ±1")));
        }
        let signs = if signs[0] == 1 {
            signs
        } else {
            signs.map(|e| -e)
        };
        Ok(Self { triple, signs })
    }

    /// Zero-based indices.
    pub fn triple(&self) -> [usize; 3] {
        self.triple
    }

    pub fn signs(&self) -> [i8; 3] {
        self.signs
    }

    /// Coefficients on `σ_ij`, `σ_ik`, `σ_jk`.
    pub fn pair_coefficients(&self) -> [i8; 3] {
        let [a, b, c] = self.signs;
        [a * b, a * c, b * c]
    }

    /// The inequality as `offset + normal · upper >= 0` over the upper triangle
    /// of an order-`n` matrix. The offset is always 1.
    pub fn as_affine(&self, n: usize) -> Result<(Rational, Vec<Rational>)> {
        self.check_order(n)?;
        let mut normal = vec![Rational::zero(); pair_count(n)];
        for (pos, coef) in self
            .pair_positions(n)
            .into_iter()
            .zip(self.pair_coefficients())
        {
            normal[pos] = Rational::from_integer(coef.into());
        }
        Ok((Rational::one(), normal))
    }

    fn pair_positions(&self, n: usize) -> [usize; 3] {
        let [i, j, k] = self.triple;
        [
            pair_index(n, i, j),
            pair_index(n, i, k),
            pair_index(n, j, k),
        ]
    }

    fn check_order(&self, n: usize) -> Result<()> {
        if self.triple[2] >= n {
            return Err(Error::Dimension(format!(
                "inequality on indices {:?} needs order > {}, matrix has order {n}",
                self.triple.map(|t| t + 1),
                self.triple[2] + 1
            )));
        }
        Ok(())
    }

    fn sort_key(&self) -> ([usize; 3], u8) {
        let neg = |e: i8| u8::from(e < 0);
        (self.triple, neg(self.signs[1]) | neg(self.signs[2]) << 1)
    }
}

impl Ord for BellInequality {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for BellInequality {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BellInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [i, j, k] = self.triple.map(|t| t + 1);
        let names = [format!("s{i}{j}"), format!("s{i}{k}"), format!("s{j}{k}")];
        f.write_str("1")?;
        for (c, name) in self.pair_coefficients().iter().zip(&names) {
            write!(f, " {} {name}", if *c > 0 { '+' } else { '-' })?;
        }
        f.write_str(" >= 0")
    }
}

/// All `4·C(n,3)` canonical inequalities, sorted by triple, then by signs in
/// the order `(+,+,+)`, `(+,-,+)`, `(+,+,-)`, `(+,-,-)`.
pub fn bell_system(n: usize) -> Vec<BellInequality> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for mask in 0..4u8 {
                    let sj = if mask & 1 == 1 { -1 } else { 1 };
                    let sk = if mask & 2 == 2 { -1 } else { 1 };
                    out.push(BellInequality {
                        triple: [i, j, k],
                        signs: [1, sj, sk],
                    });
                }
            }
        }
    }
    out
}

/// Left-hand side `1 + ε_i ε_j σ_ij + ε_i ε_k σ_ik + ε_j ε_k σ_jk`.
pub fn evaluate_bell(ineq: &BellInequality, sigma: &UnitDiagonalMatrix) -> Result<Rational> {
    ineq.check_order(sigma.n())?;
    let upper = sigma.upper();
    let mut value = Rational::one();
    for (pos, coef) in ineq
        .pair_positions(sigma.n())
        .into_iter()
        .zip(ineq.pair_coefficients())
    {
        if coef > 0 {
            value += &upper[pos];
        } else {
            value -= &upper[pos];
        }
    }
    Ok(value)
}

/// The inequalities `sigma` violates (strictly negative value), with values.
pub fn violations(sigma: &UnitDiagonalMatrix) -> Vec<(BellInequality, Rational)> {
    bell_system(sigma.n())
        .into_iter()
        .filter_map(|ineq| {
            let v = evaluate_bell(&ineq, sigma).expect("system matches matrix order");
            v.is_negative().then_some((ineq, v))
        })
        .collect()
}

/// The violated inequalities; empty means every Bell inequality holds.
pub fn check_bell(sigma: &CorrelationMatrix) -> Vec<BellInequality> {
    violations(sigma)
        .into_iter()
        .map(|(ineq, _)| ineq)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlation::extreme_points;
    use crate::rational::{int, rat};

    fn corr(n: usize, upper: &[Rational]) -> CorrelationMatrix {
        CorrelationMatrix::new(n, upper.to_vec()).unwrap()
    }

    #[test]
    fn system_sizes() {
        assert!(bell_system(1).is_empty());
        assert!(bell_system(2).is_empty());
        assert_eq!(bell_system(3).len(), 4);
        assert_eq!(bell_system(4).len(), 16);
        assert_eq!(bell_system(5).len(), 40);
        let s = bell_system(6);
        assert!(s.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn three_spin_system_matches_printed_inequalities() {
        // 1+s12+s13+s23, 1-s12+s13-s23, 1+s12-s13-s23, 1-s12-s13+s23
        let expected = [[1, 1, 1], [-1, 1, -1], [1, -1, -1], [-1, -1, 1]];
        let got: Vec<_> = bell_system(3)
            .iter()
            .map(|b| b.pair_coefficients())
            .collect();
        assert_eq!(got, expected);
        assert_eq!(bell_system(3)[1].to_string(), "1 - s12 + s13 - s23 >= 0");
    }

    #[test]
    fn canonical_signs() {
        let a = BellInequality::new([0, 1, 2], [-1, 1, 1]).unwrap();
        assert_eq!(a.signs(), [1, -1, -1]);
        assert!(BellInequality::new([1, 0, 2], [1, 1, 1]).is_err());
        assert!(BellInequality::new([0, 1, 2], [1, 0, 1]).is_err());
    }

    #[test]
    fn evaluation_examples() {
        let id = CorrelationMatrix::identity(4).unwrap();
        for ineq in bell_system(4) {
            assert_eq!(evaluate_bell(&ineq, &id).unwrap(), int(1));
        }
        let neg = corr(3, &[int(-1), int(-1), int(-1)]);
        let all_plus = BellInequality::new([0, 1, 2], [1, 1, 1]).unwrap();
        assert_eq!(evaluate_bell(&all_plus, &neg).unwrap(), int(-2));
        let sigma1 = corr(3, &[int(1), int(1), int(1)]);
        let pmm = BellInequality::new([0, 1, 2], [1, -1, -1]).unwrap();
        assert_eq!(evaluate_bell(&pmm, &sigma1).unwrap(), int(0));
    }

    #[test]
    fn evaluation_dimension_error() {
        let ineq = BellInequality::new([0, 1, 3], [1, 1, 1]).unwrap();
        let m = CorrelationMatrix::identity(3).unwrap();
        assert!(matches!(evaluate_bell(&ineq, &m), Err(Error::Dimension(_))));
    }

    #[test]
    fn single_violation_at_minus_one() {
        let neg = corr(3, &[int(-1), int(-1), int(-1)]);
        let v = violations(&neg);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].0.signs(), [1, 1, 1]);
        assert_eq!(v[0].1, int(-2));
        // the mixed patterns all evaluate to 2
        for ineq in &bell_system(3)[1..] {
            assert_eq!(evaluate_bell(ineq, &neg).unwrap(), int(2));
        }
    }

    #[test]
    fn five_spin_all_equal_passes() {
        let m = CorrelationMatrix::all_equal(5, rat(-3, 10)).unwrap();
        assert!(check_bell(&m).is_empty());
        let values: Vec<_> = bell_system(5)
            .iter()
            .map(|b| evaluate_bell(b, &m).unwrap())
            .collect();
        assert_eq!(values.iter().filter(|v| **v == rat(1, 10)).count(), 10);
        assert_eq!(values.iter().filter(|v| **v == rat(13, 10)).count(), 30);
    }

    #[test]
    fn vertices_satisfy_and_touch() {
        for n in 3..=7 {
            for v in extreme_points(n).unwrap() {
                assert!(check_bell(&v).is_empty());
                assert!(bell_system(n)
                    .iter()
                    .any(|b| evaluate_bell(b, &v).unwrap().is_zero()));
            }
        }
    }

    #[test]
    fn affine_form_agrees_with_evaluation() {
        let m = corr(
            4,
            &[
                rat(1, 2),
                rat(-1, 3),
                int(0),
                rat(2, 7),
                rat(-1, 1),
                rat(1, 9),
            ],
        );
        for b in bell_system(4) {
            let (c, a) = b.as_affine(4).unwrap();
            let lhs: Rational = c + crate::rational::dot(&a, m.upper());
            assert_eq!(lhs, evaluate_bell(&b, &m).unwrap());
        }
    }
}
