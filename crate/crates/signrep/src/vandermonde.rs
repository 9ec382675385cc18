//! Generalized Vandermonde matrices `(a_i ^ d_j)` for strictly increasing
//! points and strictly increasing exponents.
//!
//! With all points positive the determinant is strictly positive and the
//! inverse has the checkerboard sign pattern `(-1)^{i+j}`. When the smallest
//! point is 0 and the smallest exponent is 0 the top row of the matrix is
//! `(1, 0, ..., 0)` (using `0^0 = 1`) and the inverse keeps the checkerboard
//! pattern except that row 0 is `(+, 0, ..., 0)`.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{pow_u32, sign_of, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedVandermonde {
    points: Vec<Rational>,
    exponents: Vec<u32>,
    entries: Vec<Vec<Rational>>,
}

impl GeneralizedVandermonde {
    /// Entry `(i, j)` is `points[i] ^ exponents[j]`, with `0^0 = 1`.
    pub fn build(points: Vec<Rational>, exponents: Vec<u32>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyInput("points"));
        }
        if points.len() != exponents.len() {
            return Err(Error::DimensionMismatch {
                expected: points.len(),
                found: exponents.len(),
            });
        }
        if points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::NotStrictlyIncreasing("points"));
        }
        if exponents.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::NotStrictlyIncreasing("exponents"));
        }
        let entries = points
            .iter()
            .map(|a| exponents.iter().map(|&d| pow_u32(a, d)).collect())
            .collect();
        Ok(GeneralizedVandermonde {
            points,
            exponents,
            entries,
        })
    }

    pub fn size(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Rational] {
        &self.points
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn entries(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Rational {
        let n = self.size();
        let mut m: Vec<Vec<Rational>> = self.entries.clone();
        let mut sign = Rational::one();
        let mut prev = Rational::one();
        for k in 0..n.saturating_sub(1) {
            if m[k][k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                    return Rational::zero();
                };
                m.swap(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = num / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        sign * m[n - 1][n - 1].clone()
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Vec<Vec<Rational>>> {
        let n = self.size();
        let mut a = self.entries.clone();
        let mut inv: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Err(Error::SingularMatrix);
            };
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].clone();
            for j in 0..n {
                a[col][j] /= &p;
                inv[col][j] /= &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    let av = &a[col][j] * &f;
                    a[r][j] -= av;
                    let iv = &inv[col][j] * &f;
                    inv[r][j] -= iv;
                }
            }
        }
        Ok(inv)
    }

    /// The inverse mapped entrywise to signs in {-1, 0, +1}.
    pub fn inverse_sign_pattern(&self) -> Result<Vec<Vec<i8>>> {
        let inv = self.inverse()?;
        Ok(inv
            .iter()
            .map(|row| row.iter().map(sign_of).collect())
            .collect())
    }

    /// Sign pattern predicted by the theory, if the matrix falls in a covered
    /// case: all points positive gives the checkerboard `(-1)^{i+j}`; first
    /// point 0 with first exponent 0 gives the checkerboard with row 0
    /// replaced by `(+, 0, ..., 0)`. Returns `None` otherwise.
    pub fn predicted_sign_pattern(&self) -> Option<Vec<Vec<i8>>> {
        let n = self.size();
        let checker = |i: usize, j: usize| -> i8 {
            if (i + j) % 2 == 0 {
                1
            } else {
                -1
            }
        };
        if self.points[0].is_positive() {
            Some(
                (0..n)
                    .map(|i| (0..n).map(|j| checker(i, j)).collect())
                    .collect(),
            )
        } else if self.points[0].is_zero() && self.exponents[0] == 0 {
            Some(
                (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| {
                                if i == 0 {
                                    if j == 0 {
                                        1
                                    } else {
                                        0
                                    }
                                } else {
                                    checker(i, j)
                                }
                            })
                            .collect()
                    })
                    .collect(),
            )
        } else {
            None
        }
    }
}

/// Seeded random instances for the randomized suites.
pub mod random {
    use std::collections::BTreeSet;

    use num_traits::{One, Zero};
    use rand::Rng;
    use rand_chacha::ChaCha8Rng;

    use super::GeneralizedVandermonde;
    use crate::rational::{ratio, Rational};

    /// Strictly increasing positive rational points with increasing
    /// exponents up to 30, size at most 6.
    pub fn positive_instance(rng: &mut ChaCha8Rng) -> GeneralizedVandermonde {
        let k = rng.gen_range(1..=6usize);
        let mut points: BTreeSet<Rational> = BTreeSet::new();
        while points.len() < k {
            let numer = rng.gen_range(1..=60i64);
            let denom = rng.gen_range(1..=6i64);
            points.insert(ratio(numer, denom));
        }
        let mut exps: BTreeSet<u32> = BTreeSet::new();
        while exps.len() < k {
            exps.insert(rng.gen_range(0..=30u32));
        }
        GeneralizedVandermonde::build(points.into_iter().collect(), exps.into_iter().collect())
            .expect("sorted distinct inputs")
    }

    /// Instance with smallest point 0 and smallest exponent 0, the rest
    /// positive and increasing.
    pub fn zero_top_instance(rng: &mut ChaCha8Rng) -> GeneralizedVandermonde {
        let k = rng.gen_range(2..=6usize);
        let mut points: BTreeSet<Rational> = BTreeSet::new();
        while points.len() < k - 1 {
            let numer = rng.gen_range(1..=60i64);
            let denom = rng.gen_range(1..=6i64);
            points.insert(ratio(numer, denom));
        }
        let mut all_points = vec![Rational::zero()];
        all_points.extend(points);
        let mut exps: BTreeSet<u32> = BTreeSet::new();
        while exps.len() < k - 1 {
            exps.insert(rng.gen_range(1..=30u32));
        }
        let mut all_exps = vec![0u32];
        all_exps.extend(exps);
        GeneralizedVandermonde::build(all_points, all_exps).expect("sorted distinct inputs")
    }

    /// Exact check that `v * v^-1` is the identity.
    pub fn inverse_is_exact(v: &GeneralizedVandermonde) -> bool {
        let Ok(inv) = v.inverse() else { return false };
        let n = v.size();
        for i in 0..n {
            for j in 0..n {
                let sum: Rational = (0..n).map(|t| &v.entries()[i][t] * &inv[t][j]).sum();
                let expected = if i == j { Rational::one() } else { Rational::zero() };
                if sum != expected {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn gvd(points: &[i64], exps: &[u32]) -> GeneralizedVandermonde {
        GeneralizedVandermonde::build(points.iter().map(|&p| rat(p)).collect(), exps.to_vec())
            .unwrap()
    }

    #[test]
    fn build_examples() {
        let v = gvd(&[1, 2], &[0, 1]);
        assert_eq!(v.entries(), &[vec![rat(1), rat(1)], vec![rat(1), rat(2)]]);
        let w = gvd(&[0, 1, 2], &[0, 1, 2]);
        assert_eq!(w.entries()[0], vec![rat(1), rat(0), rat(0)]);
        assert_eq!(w.entries()[2], vec![rat(1), rat(2), rat(4)]);
        let u = gvd(&[1, 2], &[0, 3]);
        assert_eq!(u.entries(), &[vec![rat(1), rat(1)], vec![rat(1), rat(8)]]);
        assert!(GeneralizedVandermonde::build(vec![rat(2), rat(1)], vec![0, 1]).is_err());
        assert!(GeneralizedVandermonde::build(vec![rat(1), rat(2)], vec![1, 1]).is_err());
        assert!(GeneralizedVandermonde::build(vec![rat(1)], vec![0, 1]).is_err());
    }

    #[test]
    fn det_examples() {
        assert_eq!(gvd(&[1, 2], &[0, 1]).det(), rat(1));
        assert_eq!(gvd(&[0, 1, 2], &[0, 1, 2]).det(), rat(2));
        let v = gvd(&[1, 2, 3], &[0, 2, 5]);
        assert!(v.det().is_positive());
    }

    #[test]
    fn inverse_pattern_examples() {
        let w = gvd(&[0, 1, 2], &[0, 1, 2]);
        let inv = w.inverse().unwrap();
        assert_eq!(
            inv,
            vec![
                vec![rat(1), rat(0), rat(0)],
                vec![ratio(-3, 2), rat(2), ratio(-1, 2)],
                vec![ratio(1, 2), rat(-1), ratio(1, 2)],
            ]
        );
        let pattern = w.inverse_sign_pattern().unwrap();
        assert_eq!(
            pattern,
            vec![vec![1, 0, 0], vec![-1, 1, -1], vec![1, -1, 1]]
        );
        assert_eq!(pattern, w.predicted_sign_pattern().unwrap());

        let v = gvd(&[1, 2], &[0, 1]);
        assert_eq!(v.inverse_sign_pattern().unwrap(), vec![vec![1, -1], vec![-1, 1]]);

        let s = gvd(&[3], &[2]);
        assert_eq!(s.inverse_sign_pattern().unwrap(), vec![vec![1]]);
    }

    #[test]
    fn zero_point_with_positive_exponent_is_singular() {
        let v = gvd(&[0, 1], &[1, 2]);
        assert_eq!(v.det(), rat(0));
        assert!(matches!(v.inverse(), Err(Error::SingularMatrix)));
        assert!(v.predicted_sign_pattern().is_none());
    }
}
