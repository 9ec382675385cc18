//! Exhaustive verification of exact, sign and weak-sign representations.
//!
//! A polynomial sign represents `f` when its sign at every grid point equals
//! `(-1)^{f(point)}` with no zeros allowed. A weak-sign representation may
//! vanish at points, provided its sign is correct wherever it is nonzero and
//! it is not identically zero on the grid. An exact representation takes the
//! value `f(point)` itself.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::SparsePoly;
use crate::rational::{sign_of, Rational};
use crate::target::TargetFunction;

/// Verification refuses grids with more points than this unless the caller
/// raises the cap explicitly.
pub const DEFAULT_GRID_CAP: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RepKind {
    #[serde(rename = "exact")]
    Exact,
    #[serde(rename = "sign")]
    Sign,
    #[serde(rename = "weak")]
    WeakSign,
}

impl fmt::Display for RepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RepKind::Exact => "exact",
            RepKind::Sign => "sign",
            RepKind::WeakSign => "weak",
        })
    }
}

impl FromStr for RepKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "exact" => Ok(RepKind::Exact),
            "sign" => Ok(RepKind::Sign),
            "weak" | "weaksign" | "weak-sign" => Ok(RepKind::WeakSign),
            other => Err(Error::Parse(format!("unknown representation kind {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub point: Vec<i64>,
    #[serde(with = "crate::rational::serde_str")]
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub kind: RepKind,
    pub pass: bool,
    /// First failing grid point in enumeration order, with the polynomial's
    /// value there. Present exactly when `pass` is false.
    pub counterexample: Option<Counterexample>,
    /// Number of grid points where the polynomial vanishes.
    pub zero_count: usize,
    pub points_checked: usize,
}

/// Checks a representation over the whole grid with the default point cap.
pub fn verify(
    poly: &SparsePoly,
    target: &TargetFunction,
    kind: RepKind,
) -> Result<VerificationReport> {
    verify_with_cap(poly, target, kind, DEFAULT_GRID_CAP)
}

/// Exhaustive check over all `m^n` grid points. Refuses grids larger than
/// `cap` rather than running unboundedly. The whole grid is always scanned,
/// so `zero_count` is total and the counterexample is the first failure in
/// grid enumeration order.
pub fn verify_with_cap(
    poly: &SparsePoly,
    target: &TargetFunction,
    kind: RepKind,
    cap: u64,
) -> Result<VerificationReport> {
    let grid = target.grid();
    if poly.dimension() != grid.dimension() {
        return Err(Error::DimensionMismatch {
            expected: grid.dimension(),
            found: poly.dimension(),
        });
    }
    let points = grid.point_count();
    if points > cap as u128 {
        return Err(Error::GridTooLarge { points, cap });
    }
    let mut zero_count = 0usize;
    let mut checked = 0usize;
    let mut counterexample: Option<Counterexample> = None;
    for point in grid.points() {
        let value = poly.evaluate(&point)?;
        let f = target.eval(&point)?;
        let s = sign_of(&value);
        if s == 0 {
            zero_count += 1;
        }
        let ok = match kind {
            RepKind::Exact => value == Rational::from_integer(i64::from(f).into()),
            RepKind::Sign => s == if f == 0 { 1 } else { -1 },
            RepKind::WeakSign => s == 0 || s == if f == 0 { 1 } else { -1 },
        };
        if !ok && counterexample.is_none() {
            counterexample = Some(Counterexample { point, value });
        }
        checked += 1;
    }
    // The weak kind additionally requires the polynomial not to vanish
    // identically on the grid; the witness for that failure is the first
    // point (every point has value zero).
    if kind == RepKind::WeakSign && zero_count == checked && counterexample.is_none() {
        let first = grid.points().next().expect("grid is nonempty");
        counterexample = Some(Counterexample {
            point: first,
            value: Rational::zero(),
        });
    }
    Ok(VerificationReport {
        kind,
        pass: counterexample.is_none(),
        counterexample,
        zero_count,
        points_checked: checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_poly;
    use crate::grid::Grid;
    use crate::rational::rat;

    #[test]
    fn hypercube_parity_product_passes() {
        // (1-2x1)(1-2x2)(1-2x3)
        let mut p = parse_poly("1", Some(3)).unwrap();
        for i in 1..=3 {
            p = p.mul(&parse_poly(&format!("1 - 2*x{i}"), Some(3)).unwrap());
        }
        let f = TargetFunction::parity(Grid::range(3, 0, 1).unwrap());
        let report = verify(&p, &f, RepKind::Sign).unwrap();
        assert!(report.pass);
        assert_eq!(report.zero_count, 0);
        assert_eq!(report.points_checked, 8);
    }

    #[test]
    fn weak_product_monomial_passes_with_zeros() {
        // (-1)^2 x1 x2 weakly represents parity on {0,1}^2
        let p = parse_poly("x1*x2", Some(2)).unwrap();
        let f = TargetFunction::parity(Grid::range(2, 0, 1).unwrap());
        let report = verify(&p, &f, RepKind::WeakSign).unwrap();
        assert!(report.pass);
        assert_eq!(report.zero_count, 3);
        // but it is not a strict sign representation
        assert!(!verify(&p, &f, RepKind::Sign).unwrap().pass);
    }

    #[test]
    fn wrong_sign_reports_counterexample() {
        let p = parse_poly("x1", Some(1)).unwrap();
        let f = TargetFunction::parity(Grid::range(1, 0, 1).unwrap());
        let report = verify(&p, &f, RepKind::Sign).unwrap();
        assert!(!report.pass);
        let ce = report.counterexample.unwrap();
        // x1 = 0 already fails the strict positivity required at parity 0
        assert_eq!(ce.point, vec![0]);
        assert_eq!(ce.value, rat(0));
    }

    #[test]
    fn weak_rejects_identically_zero() {
        let p = SparsePoly::zero(1);
        let f = TargetFunction::parity(Grid::range(1, 0, 1).unwrap());
        let report = verify(&p, &f, RepKind::WeakSign).unwrap();
        assert!(!report.pass);
        assert!(report.counterexample.is_some());
        assert_eq!(report.zero_count, 2);
    }

    #[test]
    fn exact_representation_checked_pointwise() {
        // x1 exactly represents parity on {0,1}
        let p = parse_poly("x1", Some(1)).unwrap();
        let f = TargetFunction::parity(Grid::range(1, 0, 1).unwrap());
        assert!(verify(&p, &f, RepKind::Exact).unwrap().pass);
        let q = parse_poly("2*x1", Some(1)).unwrap();
        assert!(!verify(&q, &f, RepKind::Exact).unwrap().pass);
    }

    #[test]
    fn refuses_oversized_grids() {
        let f = TargetFunction::parity(Grid::range(2, 0, 9).unwrap());
        let p = parse_poly("x1", Some(2)).unwrap();
        assert!(matches!(
            verify_with_cap(&p, &f, RepKind::Sign, 50),
            Err(Error::GridTooLarge { points: 100, cap: 50 })
        ));
    }
}
