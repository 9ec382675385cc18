//! Exact phase-1 simplex for systems of linear inequalities
//! `sum_j a_{rj} x_j >= b_r` with free variables.
//!
//! All pivoting is done in arbitrary-precision rational arithmetic with
//! Bland's anti-cycling rule, so the verdict is exact and the method always
//! terminates. A feasible system yields a satisfying assignment; an
//! infeasible one yields a Farkas ray: a non-negative combination `y` of the
//! rows with `sum_r y_r a_r = 0` and `sum_r y_r b_r > 0`, which any reader
//! can re-check by direct arithmetic.
//!
//! Internally each free variable is split into a difference of two
//! non-negative ones, every row gets a surplus variable, and rows with a
//! positive right-hand side get an artificial variable whose total the
//! simplex minimizes. Rows with a non-positive right-hand side are negated so
//! their surplus column can serve as the initial basis.

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// One inequality `coeffs . x >= rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpRow {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
}

/// A conjunction of `>=` rows over `cols` free variables.
#[derive(Clone, Debug)]
pub struct SignSystem {
    pub cols: usize,
    pub rows: Vec<LpRow>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    /// A satisfying assignment of the free variables.
    Feasible(Vec<Rational>),
    /// A Farkas ray over the rows, in row order.
    Infeasible(Vec<Rational>),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LpStats {
    pub pivots: u64,
}

/// Decides feasibility of the system exactly.
pub fn solve_feasibility(sys: &SignSystem) -> (LpOutcome, LpStats) {
    let m = sys.rows.len();
    let n = sys.cols;
    if m == 0 {
        return (LpOutcome::Feasible(vec![Rational::zero(); n]), LpStats::default());
    }
    for row in &sys.rows {
        assert_eq!(row.coeffs.len(), n, "row width mismatch");
    }

    // Row r is stored as sigma_r * (original row); sigma_r = -1 exactly when
    // rhs_r <= 0, which makes the surplus column the initial basic column.
    let sigma: Vec<i8> = sys
        .rows
        .iter()
        .map(|r| if r.rhs.is_positive() { 1 } else { -1 })
        .collect();
    let artificial_rows: Vec<usize> = (0..m).filter(|&r| sigma[r] == 1).collect();

    // Column layout: u_0..u_{n-1} | v_0..v_{n-1} | s_0..s_{m-1} | artificials.
    let s_base = 2 * n;
    let t_base = 2 * n + m;
    let total = t_base + artificial_rows.len();

    let mut tableau: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut rhs: Vec<Rational> = Vec::with_capacity(m);
    let mut basis: Vec<usize> = Vec::with_capacity(m);
    let mut artificial_of_row = vec![usize::MAX; m];
    for (slot, &r) in artificial_rows.iter().enumerate() {
        artificial_of_row[r] = t_base + slot;
    }

    for (r, row) in sys.rows.iter().enumerate() {
        let mut t_row = vec![Rational::zero(); total];
        for (j, a) in row.coeffs.iter().enumerate() {
            let v = if sigma[r] == 1 { a.clone() } else { -a.clone() };
            t_row[n + j] = -v.clone();
            t_row[j] = v;
        }
        // surplus: -1 in the original orientation
        t_row[s_base + r] = if sigma[r] == 1 {
            -Rational::one()
        } else {
            Rational::one()
        };
        if sigma[r] == 1 {
            t_row[artificial_of_row[r]] = Rational::one();
            basis.push(artificial_of_row[r]);
        } else {
            basis.push(s_base + r);
        }
        rhs.push(if sigma[r] == 1 {
            row.rhs.clone()
        } else {
            -row.rhs.clone()
        });
        tableau.push(t_row);
    }

    // Phase-1 objective: minimize the sum of artificials. Reduced costs
    // start as c_j minus the sum of artificial rows' entries.
    let cost = |j: usize| -> Rational {
        if j >= t_base {
            Rational::one()
        } else {
            Rational::zero()
        }
    };
    let mut obj = vec![Rational::zero(); total];
    for (j, o) in obj.iter_mut().enumerate() {
        *o = cost(j);
    }
    let mut obj_value = Rational::zero();
    for &r in &artificial_rows {
        for j in 0..total {
            let v = tableau[r][j].clone();
            obj[j] -= v;
        }
        obj_value += &rhs[r];
    }

    let mut stats = LpStats::default();
    loop {
        // Bland: entering column is the lowest index with negative reduced cost.
        let Some(enter) = (0..total).find(|&j| obj[j].is_negative()) else {
            break;
        };
        // Ratio test; ties broken by the smallest basic variable index.
        let mut leave: Option<usize> = None;
        let mut best: Option<Rational> = None;
        for r in 0..m {
            if tableau[r][enter].is_positive() {
                let ratio = &rhs[r] / &tableau[r][enter];
                let better = match &best {
                    None => true,
                    Some(b) => {
                        ratio < *b
                            || (ratio == *b
                                && basis[r] < basis[leave.expect("best implies leave")])
                    }
                };
                if better {
                    best = Some(ratio);
                    leave = Some(r);
                }
            }
        }
        let leave = leave.expect("phase-1 objective is bounded below by zero");
        stats.pivots += 1;

        // Pivot on (leave, enter).
        let pivot = tableau[leave][enter].clone();
        for v in tableau[leave].iter_mut() {
            if !v.is_zero() {
                *v /= &pivot;
            }
        }
        rhs[leave] /= &pivot;
        for r in 0..m {
            if r != leave && !tableau[r][enter].is_zero() {
                let f = tableau[r][enter].clone();
                for j in 0..total {
                    if !tableau[leave][j].is_zero() {
                        let delta = &tableau[leave][j] * &f;
                        tableau[r][j] -= delta;
                    }
                }
                let delta = &rhs[leave] * &f;
                rhs[r] -= delta;
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for j in 0..total {
                if !tableau[leave][j].is_zero() {
                    let delta = &tableau[leave][j] * &f;
                    obj[j] -= delta;
                }
            }
            // entering by theta = rhs[leave] changes the objective by f * theta
            let delta = &rhs[leave] * &f;
            obj_value += delta;
        }
        basis[leave] = enter;
    }

    if obj_value.is_positive() {
        // Farkas ray from the optimal duals: for the unit column of row r
        // (its artificial, or its surplus when the row was negated),
        // y'_r = cost - reduced cost; undo the row negations.
        let ray: Vec<Rational> = (0..m)
            .map(|r| {
                let unit = if sigma[r] == 1 {
                    artificial_of_row[r]
                } else {
                    s_base + r
                };
                let y = cost(unit) - &obj[unit];
                if sigma[r] == 1 {
                    y
                } else {
                    -y
                }
            })
            .collect();
        debug_assert!(check_farkas_ray(sys, &ray));
        (LpOutcome::Infeasible(ray), stats)
    } else {
        let mut value = vec![Rational::zero(); total];
        for (r, &b) in basis.iter().enumerate() {
            value[b] = rhs[r].clone();
        }
        let solution: Vec<Rational> = (0..n).map(|j| &value[j] - &value[n + j]).collect();
        debug_assert!(check_solution(sys, &solution));
        (LpOutcome::Feasible(solution), stats)
    }
}

/// Re-checks a satisfying assignment by direct substitution.
pub fn check_solution(sys: &SignSystem, x: &[Rational]) -> bool {
    x.len() == sys.cols
        && sys.rows.iter().all(|row| {
            let lhs: Rational = row.coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
            lhs >= row.rhs
        })
}

/// Re-checks a Farkas ray: non-negative, combines the rows to zero, and has
/// positive combined right-hand side.
pub fn check_farkas_ray(sys: &SignSystem, ray: &[Rational]) -> bool {
    if ray.len() != sys.rows.len() || ray.iter().any(|y| y.is_negative()) {
        return false;
    }
    for j in 0..sys.cols {
        let combo: Rational = sys
            .rows
            .iter()
            .zip(ray)
            .map(|(row, y)| &row.coeffs[j] * y)
            .sum();
        if !combo.is_zero() {
            return false;
        }
    }
    let rhs: Rational = sys.rows.iter().zip(ray).map(|(row, y)| &row.rhs * y).sum();
    rhs.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn sys(cols: usize, rows: &[(&[i64], i64)]) -> SignSystem {
        SignSystem {
            cols,
            rows: rows
                .iter()
                .map(|(c, b)| LpRow {
                    coeffs: c.iter().map(|&v| rat(v)).collect(),
                    rhs: rat(*b),
                })
                .collect(),
        }
    }

    #[test]
    fn feasible_two_variable_system() {
        // b >= 1 and -(a + b) >= 1: a line sign-representing parity on {0,1}
        let s = sys(2, &[(&[1, 0], 1), (&[-1, -1], 1)]);
        let (outcome, _) = solve_feasibility(&s);
        match outcome {
            LpOutcome::Feasible(x) => assert!(check_solution(&s, &x)),
            LpOutcome::Infeasible(_) => panic!("system is feasible"),
        }
    }

    #[test]
    fn infeasible_yields_checkable_ray() {
        // c >= 1 and -c >= 1 cannot both hold
        let s = sys(1, &[(&[1], 1), (&[-1], 1)]);
        let (outcome, _) = solve_feasibility(&s);
        match outcome {
            LpOutcome::Infeasible(ray) => {
                assert!(check_farkas_ray(&s, &ray));
            }
            LpOutcome::Feasible(_) => panic!("system is infeasible"),
        }
    }

    #[test]
    fn homogeneous_rows_with_zero_rhs() {
        // x >= 0, -x >= 0, forces x = 0; adding x >= 1 flips to infeasible
        let s = sys(1, &[(&[1], 0), (&[-1], 0)]);
        let (outcome, _) = solve_feasibility(&s);
        assert!(matches!(outcome, LpOutcome::Feasible(_)));
        let s2 = sys(1, &[(&[1], 0), (&[-1], 0), (&[1], 1)]);
        let (outcome2, _) = solve_feasibility(&s2);
        match outcome2 {
            LpOutcome::Infeasible(ray) => assert!(check_farkas_ray(&s2, &ray)),
            LpOutcome::Feasible(_) => panic!("forced to zero yet asked for >= 1"),
        }
    }

    #[test]
    fn empty_system_is_feasible() {
        let s = sys(3, &[]);
        let (outcome, stats) = solve_feasibility(&s);
        assert_eq!(outcome, LpOutcome::Feasible(vec![rat(0), rat(0), rat(0)]));
        assert_eq!(stats.pivots, 0);
    }

    #[test]
    fn degenerate_rows_terminate() {
        // redundant and conflicting rows exercise Bland's rule
        let s = sys(
            2,
            &[
                (&[1, 1], 1),
                (&[2, 2], 2),
                (&[-1, -1], 0),
                (&[1, 0], 0),
                (&[0, 1], 0),
            ],
        );
        let (outcome, _) = solve_feasibility(&s);
        match outcome {
            LpOutcome::Infeasible(ray) => assert!(check_farkas_ray(&s, &ray)),
            LpOutcome::Feasible(x) => assert!(check_solution(&s, &x)),
        }
    }
}
