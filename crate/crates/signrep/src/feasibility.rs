//! Deciding whether a monomial support admits a sign or weak-sign
//! representation of a target, with auditable certificates.
//!
//! The unknowns are the coefficients of `P = sum_M c_M M` over the given
//! support. A strict sign representation exists iff the normalized system
//! `(-1)^{f(a)} P(a) >= 1` over all grid points is feasible: the constraint
//! set is homogeneous in the coefficients, so any strictly feasible point
//! scales to clear 1. Weak representability is a disjunction: signs must be
//! consistent everywhere (`>= 0`) and at least one grid point must be
//! strictly nonzero, so one LP is solved per candidate witness point.
//!
//! Every verdict ships with a certificate: feasible problems return the
//! coefficients found, infeasible ones a Farkas ray per refuted system.
//! `audit_certificate` re-checks a certificate through independent code
//! paths (grid verification for coefficients, direct arithmetic for rays).

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lp::{check_farkas_ray, solve_feasibility, LpOutcome, LpRow, LpStats, SignSystem};
use crate::poly::{ExponentVector, SparsePoly};
use crate::rational::{int_pow, Rational};
use crate::target::TargetFunction;
use crate::verify::{verify_with_cap, RepKind, DEFAULT_GRID_CAP};

#[derive(Clone, Debug)]
pub struct FeasibilityProblem {
    /// Distinct monomials whose coefficients are the unknowns.
    pub support: Vec<ExponentVector>,
    pub target: TargetFunction,
    /// `Sign` or `WeakSign`; `Exact` is not a feasibility question.
    pub kind: RepKind,
    /// For `WeakSign`: restrict the nonvanishing witness to this grid point
    /// instead of trying all of them.
    pub witness_point: Option<Vec<i64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertStatus {
    Feasible,
    Infeasible,
}

/// Farkas refutation of one weak-representation witness choice: the ray runs
/// over the grid rows (in grid order) followed by the strict witness row.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WeakRefutation {
    pub witness_point: Vec<i64>,
    pub ray: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub status: CertStatus,
    /// Satisfying coefficients, aligned with the problem support.
    pub coefficients: Option<Vec<(ExponentVector, String)>>,
    /// For an infeasible strict-sign system: Farkas ray over the grid points
    /// in grid enumeration order.
    pub dual_ray: Option<Vec<String>>,
    /// For an infeasible weak system: one refutation per witness candidate.
    pub weak_refutations: Option<Vec<WeakRefutation>>,
    /// For a feasible weak system: the witness point that is strictly nonzero.
    pub witness_point: Option<Vec<i64>>,
}

impl Certificate {
    pub fn feasible(support: &[ExponentVector], coeffs: &[Rational]) -> Self {
        Certificate {
            status: CertStatus::Feasible,
            coefficients: Some(
                support
                    .iter()
                    .cloned()
                    .zip(coeffs.iter().map(|c| c.to_string()))
                    .collect(),
            ),
            dual_ray: None,
            weak_refutations: None,
            witness_point: None,
        }
    }

    /// Rebuilds the witness polynomial from the stored coefficients.
    pub fn witness_poly(&self, dimension: usize) -> Result<SparsePoly> {
        let coeffs = self
            .coefficients
            .as_ref()
            .ok_or_else(|| Error::Parse("certificate has no coefficients".into()))?;
        SparsePoly::from_terms(
            dimension,
            coeffs
                .iter()
                .map(|(ev, c)| Ok((ev.clone(), crate::rational::parse_rational(c)?)))
                .collect::<Result<Vec<_>>>()?,
        )
    }
}

fn rationals_to_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(|r| r.to_string()).collect()
}

fn strings_to_rationals(v: &[String]) -> Result<Vec<Rational>> {
    v.iter().map(|s| crate::rational::parse_rational(s)).collect()
}

/// Validates a problem and evaluates every support monomial at every grid
/// point, returning the value matrix (support-major) and per-point signs.
pub(crate) fn problem_matrix(
    problem: &FeasibilityProblem,
) -> Result<(Vec<Vec<BigInt>>, Vec<i8>, Vec<Vec<i64>>)> {
    let grid = problem.target.grid();
    let n = grid.dimension();
    for ev in &problem.support {
        if ev.dimension() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: ev.dimension(),
            });
        }
    }
    for (i, a) in problem.support.iter().enumerate() {
        for b in &problem.support[i + 1..] {
            if a == b {
                return Err(Error::Parse("support monomials must be distinct".into()));
            }
        }
    }
    let points = grid.point_count();
    if points > DEFAULT_GRID_CAP as u128 {
        return Err(Error::GridTooLarge {
            points,
            cap: DEFAULT_GRID_CAP,
        });
    }
    let points: Vec<Vec<i64>> = grid.points().collect();
    let values = monomial_values(&problem.support, &points);
    let signs: Vec<i8> = points
        .iter()
        .map(|p| problem.target.required_sign(p))
        .collect::<Result<_>>()?;
    Ok((values, signs, points))
}

/// Value matrix `values[monomial][point]` of a monomial pool over points.
pub(crate) fn monomial_values(pool: &[ExponentVector], points: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    pool.iter()
        .map(|ev| {
            points
                .iter()
                .map(|p| {
                    ev.exponents()
                        .iter()
                        .zip(p)
                        .map(|(&e, &v)| int_pow(v, e))
                        .product()
                })
                .collect()
        })
        .collect()
}

/// The normalized strict system: one row `(-1)^{f(a)} P(a) >= 1` per point.
pub(crate) fn strict_system(values: &[Vec<BigInt>], signs: &[i8]) -> SignSystem {
    let rows = signs
        .iter()
        .enumerate()
        .map(|(p, &s)| LpRow {
            coeffs: values
                .iter()
                .map(|col| {
                    let v = Rational::from_integer(col[p].clone());
                    if s > 0 {
                        v
                    } else {
                        -v
                    }
                })
                .collect(),
            rhs: Rational::one(),
        })
        .collect();
    SignSystem {
        cols: values.len(),
        rows,
    }
}

/// The weak system for a fixed witness: `(-1)^{f(a)} P(a) >= 0` for every
/// point, plus the strict row `(-1)^{f(w)} P(w) >= 1` appended last.
pub(crate) fn weak_system(values: &[Vec<BigInt>], signs: &[i8], witness: usize) -> SignSystem {
    let mut sys = strict_system(values, signs);
    for row in &mut sys.rows {
        row.rhs = Rational::zero();
    }
    let strict = LpRow {
        coeffs: values
            .iter()
            .map(|col| {
                let v = Rational::from_integer(col[witness].clone());
                if signs[witness] > 0 {
                    v
                } else {
                    -v
                }
            })
            .collect(),
        rhs: Rational::one(),
    };
    sys.rows.push(strict);
    sys
}

/// Decides strict sign representability of the support.
pub fn feasible_sign_rep(problem: &FeasibilityProblem) -> Result<(Certificate, LpStats)> {
    if problem.kind != RepKind::Sign {
        return Err(Error::Parse("feasible_sign_rep expects kind = sign".into()));
    }
    let (values, signs, _) = problem_matrix(problem)?;
    let sys = strict_system(&values, &signs);
    let (outcome, stats) = solve_feasibility(&sys);
    let cert = match outcome {
        LpOutcome::Feasible(x) => Certificate::feasible(&problem.support, &x),
        LpOutcome::Infeasible(ray) => Certificate {
            status: CertStatus::Infeasible,
            coefficients: None,
            dual_ray: Some(rationals_to_strings(&ray)),
            weak_refutations: None,
            witness_point: None,
        },
    };
    Ok((cert, stats))
}

/// Decides weak representability: feasible iff some witness point can be made
/// strictly nonzero while all signs stay consistent. Witness candidates are
/// tried in grid enumeration order (or just the supplied one).
pub fn feasible_weak_rep(problem: &FeasibilityProblem) -> Result<(Certificate, LpStats)> {
    if problem.kind != RepKind::WeakSign {
        return Err(Error::Parse("feasible_weak_rep expects kind = weak".into()));
    }
    let (values, signs, points) = problem_matrix(problem)?;
    let candidates: Vec<usize> = match &problem.witness_point {
        Some(w) => {
            let idx = points.iter().position(|p| p == w);
            vec![idx.ok_or_else(|| Error::PointOffGrid(w.clone()))?]
        }
        None => (0..points.len()).collect(),
    };
    let mut stats = LpStats::default();
    let mut refutations = Vec::new();
    for w in candidates {
        let sys = weak_system(&values, &signs, w);
        let (outcome, s) = solve_feasibility(&sys);
        stats.pivots += s.pivots;
        match outcome {
            LpOutcome::Feasible(x) => {
                let mut cert = Certificate::feasible(&problem.support, &x);
                cert.witness_point = Some(points[w].clone());
                return Ok((cert, stats));
            }
            LpOutcome::Infeasible(ray) => refutations.push(WeakRefutation {
                witness_point: points[w].clone(),
                ray: rationals_to_strings(&ray),
            }),
        }
    }
    Ok((
        Certificate {
            status: CertStatus::Infeasible,
            coefficients: None,
            dual_ray: None,
            weak_refutations: Some(refutations),
            witness_point: None,
        },
        stats,
    ))
}

/// Re-verifies a certificate through independent code paths. Feasible
/// certificates are checked by exhaustive grid verification of the rebuilt
/// polynomial; infeasible ones by exact re-checking of every Farkas ray.
pub fn audit_certificate(problem: &FeasibilityProblem, cert: &Certificate) -> Result<()> {
    let (values, signs, points) = problem_matrix(problem)?;
    match cert.status {
        CertStatus::Feasible => {
            let poly = cert.witness_poly(problem.target.grid().dimension())?;
            let report = verify_with_cap(&poly, &problem.target, problem.kind, DEFAULT_GRID_CAP)?;
            if !report.pass {
                return Err(Error::Parse(
                    "feasible certificate fails grid verification".into(),
                ));
            }
            if problem.kind == RepKind::WeakSign {
                let w = cert
                    .witness_point
                    .as_ref()
                    .ok_or_else(|| Error::Parse("weak certificate lacks witness point".into()))?;
                if poly.evaluate(w)?.is_zero() {
                    return Err(Error::Parse("weak witness point evaluates to zero".into()));
                }
            }
            Ok(())
        }
        CertStatus::Infeasible => match problem.kind {
            RepKind::Sign => {
                let ray = strings_to_rationals(
                    cert.dual_ray
                        .as_ref()
                        .ok_or_else(|| Error::Parse("missing dual ray".into()))?,
                )?;
                let sys = strict_system(&values, &signs);
                if !check_farkas_ray(&sys, &ray) {
                    return Err(Error::Parse("dual ray fails re-check".into()));
                }
                Ok(())
            }
            RepKind::WeakSign => {
                let refs = cert
                    .weak_refutations
                    .as_ref()
                    .ok_or_else(|| Error::Parse("missing weak refutations".into()))?;
                let expected: Vec<Vec<i64>> = match &problem.witness_point {
                    Some(w) => vec![w.clone()],
                    None => points.clone(),
                };
                if refs.len() != expected.len() {
                    return Err(Error::Parse(format!(
                        "expected {} refutations, found {}",
                        expected.len(),
                        refs.len()
                    )));
                }
                for (r, w) in refs.iter().zip(&expected) {
                    if &r.witness_point != w {
                        return Err(Error::Parse("refutation witness points out of order".into()));
                    }
                    let idx = points
                        .iter()
                        .position(|p| p == w)
                        .ok_or_else(|| Error::PointOffGrid(w.clone()))?;
                    let sys = weak_system(&values, &signs, idx);
                    let ray = strings_to_rationals(&r.ray)?;
                    if !check_farkas_ray(&sys, &ray) {
                        return Err(Error::Parse("weak refutation ray fails re-check".into()));
                    }
                }
                Ok(())
            }
            RepKind::Exact => Err(Error::Parse("exact kind has no feasibility form".into())),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;
    use crate::rational::sign_of;

    fn ev(exps: &[u32]) -> ExponentVector {
        ExponentVector::new(exps.to_vec())
    }

    fn parity_problem(support: Vec<ExponentVector>, grid: Grid, kind: RepKind) -> FeasibilityProblem {
        FeasibilityProblem {
            support,
            target: TargetFunction::parity(grid),
            kind,
            witness_point: None,
        }
    }

    #[test]
    fn line_support_is_sign_feasible() {
        let p = parity_problem(
            vec![ev(&[0]), ev(&[1])],
            Grid::range(1, 0, 1).unwrap(),
            RepKind::Sign,
        );
        let (cert, _) = feasible_sign_rep(&p).unwrap();
        assert_eq!(cert.status, CertStatus::Feasible);
        audit_certificate(&p, &cert).unwrap();
        // constant term positive, slope negative (b > 0, a < -b)
        let poly = cert.witness_poly(1).unwrap();
        assert_eq!(sign_of(&poly.evaluate(&[0]).unwrap()), 1);
        assert_eq!(sign_of(&poly.evaluate(&[1]).unwrap()), -1);
    }

    #[test]
    fn constant_alone_cannot_flip_sign() {
        let p = parity_problem(
            vec![ev(&[0])],
            Grid::range(1, 0, 1).unwrap(),
            RepKind::Sign,
        );
        let (cert, _) = feasible_sign_rep(&p).unwrap();
        assert_eq!(cert.status, CertStatus::Infeasible);
        audit_certificate(&p, &cert).unwrap();
    }

    #[test]
    fn multilinear_without_mixed_term_is_infeasible() {
        let p = parity_problem(
            vec![ev(&[0, 0]), ev(&[1, 0]), ev(&[0, 1])],
            Grid::range(2, 0, 1).unwrap(),
            RepKind::Sign,
        );
        let (cert, _) = feasible_sign_rep(&p).unwrap();
        assert_eq!(cert.status, CertStatus::Infeasible);
        audit_certificate(&p, &cert).unwrap();
    }

    #[test]
    fn weak_single_monomial_feasible() {
        let p = parity_problem(
            vec![ev(&[1])],
            Grid::range(1, 0, 1).unwrap(),
            RepKind::WeakSign,
        );
        let (cert, _) = feasible_weak_rep(&p).unwrap();
        assert_eq!(cert.status, CertStatus::Feasible);
        assert_eq!(cert.witness_point, Some(vec![1]));
        audit_certificate(&p, &cert).unwrap();
    }

    #[test]
    fn weak_constant_infeasible_with_refutations() {
        let p = parity_problem(
            vec![ev(&[0])],
            Grid::range(1, 0, 1).unwrap(),
            RepKind::WeakSign,
        );
        let (cert, _) = feasible_weak_rep(&p).unwrap();
        assert_eq!(cert.status, CertStatus::Infeasible);
        assert_eq!(cert.weak_refutations.as_ref().unwrap().len(), 2);
        audit_certificate(&p, &cert).unwrap();
    }

    #[test]
    fn weak_pair_on_three_points() {
        // x and x^2 admit 2x^2 - 3x over {0,1,2}
        let p = parity_problem(
            vec![ev(&[1]), ev(&[2])],
            Grid::range(1, 0, 2).unwrap(),
            RepKind::WeakSign,
        );
        let (cert, _) = feasible_weak_rep(&p).unwrap();
        assert_eq!(cert.status, CertStatus::Feasible);
        audit_certificate(&p, &cert).unwrap();
    }

    #[test]
    fn fixed_witness_point_restricts_the_search() {
        let grid = Grid::range(1, 0, 1).unwrap();
        let mut p = parity_problem(vec![ev(&[1])], grid, RepKind::WeakSign);
        p.witness_point = Some(vec![0]);
        // at x = 0 the monomial vanishes, so that witness is refutable
        let (cert, _) = feasible_weak_rep(&p).unwrap();
        assert_eq!(cert.status, CertStatus::Infeasible);
        audit_certificate(&p, &cert).unwrap();
        p.witness_point = Some(vec![2]);
        assert!(matches!(
            feasible_weak_rep(&p),
            Err(Error::PointOffGrid(_))
        ));
    }

    #[test]
    fn rejects_duplicate_support() {
        let p = parity_problem(
            vec![ev(&[1]), ev(&[1])],
            Grid::range(1, 0, 1).unwrap(),
            RepKind::Sign,
        );
        assert!(feasible_sign_rep(&p).is_err());
    }
}
