//! Descartes'-rule utilities for univariate polynomials.
//!
//! The number of positive real roots of a univariate real polynomial,
//! counted with multiplicity, is at most the number of sign changes in its
//! coefficient sequence; in particular it is at most `spr(P) - 1`. These
//! helpers count sign variations, evaluate the bound, and count sign
//! structure along a list of grid points.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::SparsePoly;
use crate::rational::{sign_of, Rational};

/// Dense coefficient sequence `c_0, ..., c_d` of a univariate polynomial,
/// ascending by degree and including zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientSequence(pub Vec<Rational>);

impl CoefficientSequence {
    pub fn from_poly(p: &SparsePoly) -> Result<Self> {
        if p.dimension() != 1 {
            return Err(Error::NotUnivariate {
                dimension: p.dimension(),
            });
        }
        let deg = p.deg();
        if deg < 0 {
            return Ok(CoefficientSequence(Vec::new()));
        }
        let mut coeffs = vec![Rational::zero(); deg as usize + 1];
        for (ev, c) in p.terms() {
            coeffs[ev.exponents()[0] as usize] = c.clone();
        }
        Ok(CoefficientSequence(coeffs))
    }
}

/// Number of sign alternations in the subsequence of nonzero entries.
pub fn sign_variations(seq: &CoefficientSequence) -> usize {
    let mut count = 0;
    let mut last: i8 = 0;
    for c in &seq.0 {
        let s = sign_of(c);
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Descartes bound: sign variations of the coefficient sequence. This is an
/// upper bound on the number of positive real roots counted with
/// multiplicity, and is itself at most `spr(P) - 1`.
pub fn descartes_bound(p: &SparsePoly) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(sign_variations(&CoefficientSequence::from_poly(p)?))
}

/// Counts adjacent strict sign flips of `P` along ascending points. Each flip
/// witnesses a root between the two points. Fails if `P` vanishes at any
/// listed point.
pub fn grid_sign_alternations(p: &SparsePoly, points: &[i64]) -> Result<usize> {
    if p.dimension() != 1 {
        return Err(Error::NotUnivariate {
            dimension: p.dimension(),
        });
    }
    if points.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::NotStrictlyIncreasing("points"));
    }
    let mut count = 0;
    let mut last: i8 = 0;
    for &t in points {
        let s = sign_of(&p.evaluate(&[t])?);
        if s == 0 {
            return Err(Error::VanishesAt(t));
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    Ok(count)
}

/// Lower bound on the number of roots of `P` in the half-open interval
/// `(points[0], points[last]]`, derived from the sign data at the points
/// alone: every interior point where `P` vanishes is a root, and between
/// consecutive nonvanishing points the root count must match the observed
/// sign change in parity.
pub fn grid_root_lower_bound(p: &SparsePoly, points: &[i64]) -> Result<usize> {
    if p.dimension() != 1 {
        return Err(Error::NotUnivariate {
            dimension: p.dimension(),
        });
    }
    if points.len() < 2 || points.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::NotStrictlyIncreasing("points"));
    }
    let signs: Vec<i8> = points
        .iter()
        .map(|&t| p.evaluate(&[t]).map(|v| sign_of(&v)))
        .collect::<Result<_>>()?;
    let nonzero: Vec<usize> = (0..signs.len()).filter(|&i| signs[i] != 0).collect();
    if nonzero.is_empty() {
        // vanishes at every point; all but the left endpoint are roots inside
        return Ok(points.len() - 1);
    }
    let mut count = 0;
    // zeros outside the span of nonzero points (excluding the left endpoint)
    count += (1..nonzero[0]).len();
    count += signs.len() - 1 - nonzero[nonzero.len() - 1];
    for w in nonzero.windows(2) {
        let (i, j) = (w[0], w[1]);
        let zeros = j - i - 1;
        let flip = signs[i] != signs[j];
        // root count in (t_i, t_j) is >= zeros and has the parity of `flip`
        count += zeros + usize::from((zeros % 2 == 0) == flip);
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_poly;
    use crate::rational::rat;

    fn seq(vals: &[i64]) -> CoefficientSequence {
        CoefficientSequence(vals.iter().map(|&v| rat(v)).collect())
    }

    #[test]
    fn variation_examples() {
        assert_eq!(sign_variations(&seq(&[2, -3, 1])), 2);
        assert_eq!(sign_variations(&seq(&[1, 1, 1])), 0);
        assert_eq!(sign_variations(&seq(&[1, 0, -1, 0, 1])), 2);
        assert_eq!(sign_variations(&seq(&[])), 0);
    }

    #[test]
    fn descartes_examples() {
        let p = parse_poly("x1^2 - 3*x1 + 2", Some(1)).unwrap();
        assert_eq!(descartes_bound(&p).unwrap(), 2);
        let q = parse_poly("x1^2 + x1 + 1", Some(1)).unwrap();
        assert_eq!(descartes_bound(&q).unwrap(), 0);
        // (x - 1)^3
        let r = parse_poly("x1^3 - 3*x1^2 + 3*x1 - 1", Some(1)).unwrap();
        assert_eq!(descartes_bound(&r).unwrap(), 3);
        assert!(matches!(
            descartes_bound(&SparsePoly::zero(1)),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn alternation_examples() {
        let p = parse_poly("x1^2 - 2*x1 + 3/4", Some(1)).unwrap();
        assert_eq!(grid_sign_alternations(&p, &[0, 1, 2]).unwrap(), 2);
        let one = parse_poly("1", Some(1)).unwrap();
        assert_eq!(grid_sign_alternations(&one, &[0, 1, 2, 3, 4, 5]).unwrap(), 0);
        let q = parse_poly("2*x1 - 3", Some(1)).unwrap();
        assert_eq!(grid_sign_alternations(&q, &[1, 2]).unwrap(), 1);
        let v = parse_poly("x1 - 1", Some(1)).unwrap();
        assert!(matches!(
            grid_sign_alternations(&v, &[0, 1, 2]),
            Err(Error::VanishesAt(1))
        ));
        assert!(grid_sign_alternations(&q, &[2, 1]).is_err());
    }

    #[test]
    fn root_lower_bound_counts_zero_structure() {
        // strict alternation: + - + on (0,1,2) forces 2 roots in (0,2]
        let p = parse_poly("x1^2 - 2*x1 + 3/4", Some(1)).unwrap();
        assert_eq!(grid_root_lower_bound(&p, &[0, 1, 2]).unwrap(), 2);
        // 2x^2 - 3x vanishes at 0, signs -,+ at 1,2: one root in (0,2]
        let q = parse_poly("2*x1^2 - 3*x1", Some(1)).unwrap();
        assert_eq!(grid_root_lower_bound(&q, &[0, 1, 2]).unwrap(), 1);
        // x - 2 on (1,2,3): interior zero with equal signs impossible; the
        // flip across the zero is explained by the zero itself
        let r = parse_poly("x1 - 2", Some(1)).unwrap();
        assert_eq!(grid_root_lower_bound(&r, &[1, 2, 3]).unwrap(), 1);
        // (x-2)^2 keeps its sign across the interior zero: parity forces a
        // second root
        let s = parse_poly("x1^2 - 4*x1 + 4", Some(1)).unwrap();
        assert_eq!(grid_root_lower_bound(&s, &[1, 2, 3]).unwrap(), 2);
    }
}
