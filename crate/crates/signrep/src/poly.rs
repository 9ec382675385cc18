//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! A polynomial is a map from exponent vectors to nonzero coefficients; the
//! number of stored terms is its sparsity `spr(P)`. Terms are kept in a
//! `BTreeMap` under graded-lexicographic order, which fixes a canonical term
//! order for printing and serialization.
//!
//! Besides ring arithmetic and exact evaluation this module provides the
//! grid-specific operations: multilinear reduction (`X^k = X` on `{0,1}`),
//! reduction modulo the vanishing polynomials `M(X_i)` of a grid (which caps
//! the degree in each variable at `m - 1` without changing values on the
//! grid), conic combinations, and grouping by the powers of one variable.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::rational::Rational;

/// Exponent vector of a monomial: entry `i` is the power of `x_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exponents: Vec<u32>) -> Self {
        ExponentVector(exponents)
    }

    /// The all-zero vector (the constant monomial).
    pub fn constant(dimension: usize) -> Self {
        ExponentVector(vec![0; dimension])
    }

    /// `x_{var+1}` as an exponent vector.
    pub fn unit(dimension: usize, var: usize) -> Self {
        let mut e = vec![0; dimension];
        e[var] = 1;
        ExponentVector(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Product of monomials: entrywise sum.
    pub fn combine(&self, other: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.0.len(), other.0.len());
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn with_entry(&self, var: usize, value: u32) -> ExponentVector {
        let mut e = self.0.clone();
        e[var] = value;
        ExponentVector(e)
    }
}

/// Graded lexicographic order: total degree first, then lexicographic.
impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Complexity measures of a polynomial. For the zero polynomial the degree
/// fields use the sentinel -1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Measures {
    /// Number of monomials with nonzero coefficient.
    pub spr: usize,
    /// Maximum total degree, or -1 for the zero polynomial.
    pub deg: i64,
    /// Per-variable maximum exponent, or -1 for the zero polynomial.
    pub deg_by_var: Vec<i64>,
    /// Per-variable count of distinct exponents appearing in the support.
    pub spr_by_var: Vec<usize>,
}

/// A sparse polynomial: nonzero coefficients indexed by exponent vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePoly {
    dimension: usize,
    terms: BTreeMap<ExponentVector, Rational>,
}

impl SparsePoly {
    pub fn zero(dimension: usize) -> Self {
        SparsePoly {
            dimension,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dimension: usize, value: Rational) -> Self {
        let mut p = SparsePoly::zero(dimension);
        if !value.is_zero() {
            p.terms.insert(ExponentVector::constant(dimension), value);
        }
        p
    }

    /// The variable `x_{var+1}`.
    pub fn variable(dimension: usize, var: usize) -> Self {
        assert!(var < dimension, "variable index out of range");
        let mut p = SparsePoly::zero(dimension);
        p.terms
            .insert(ExponentVector::unit(dimension, var), Rational::one());
        p
    }

    pub fn monomial(exponents: ExponentVector, coeff: Rational) -> Self {
        let mut p = SparsePoly::zero(exponents.dimension());
        if !coeff.is_zero() {
            p.terms.insert(exponents, coeff);
        }
        p
    }

    /// Builds a polynomial from raw terms, merging duplicates and dropping
    /// zero coefficients. Fails if any exponent vector has the wrong length.
    pub fn from_terms<I>(dimension: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, Rational)>,
    {
        let mut p = SparsePoly::zero(dimension);
        for (ev, c) in terms {
            if ev.dimension() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    found: ev.dimension(),
                });
            }
            p.add_term(ev, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, ev: ExponentVector, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(ev) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Terms in ascending graded-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, ev: &ExponentVector) -> Option<&Rational> {
        self.terms.get(ev)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored monomials.
    pub fn spr(&self) -> usize {
        self.terms.len()
    }

    pub fn neg(&self) -> SparsePoly {
        SparsePoly {
            dimension: self.dimension,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, other: &SparsePoly) -> SparsePoly {
        assert_eq!(self.dimension, other.dimension, "dimension mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SparsePoly) -> SparsePoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> SparsePoly {
        if c.is_zero() {
            return SparsePoly::zero(self.dimension);
        }
        SparsePoly {
            dimension: self.dimension,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &SparsePoly) -> SparsePoly {
        assert_eq!(self.dimension, other.dimension, "dimension mismatch");
        let mut out = SparsePoly::zero(self.dimension);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.combine(eb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> SparsePoly {
        let mut out = SparsePoly::constant(self.dimension, Rational::one());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Exact evaluation at an integer point.
    pub fn evaluate(&self, point: &[i64]) -> Result<Rational> {
        if point.len() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                found: point.len(),
            });
        }
        // Power tables per variable keep repeated exponents cheap.
        let mut max_exp = vec![0u32; self.dimension];
        for ev in self.terms.keys() {
            for (m, &e) in max_exp.iter_mut().zip(ev.exponents()) {
                *m = (*m).max(e);
            }
        }
        let powers: Vec<Vec<BigInt>> = point
            .iter()
            .zip(&max_exp)
            .map(|(&v, &m)| {
                let mut row = Vec::with_capacity(m as usize + 1);
                row.push(BigInt::one());
                for e in 1..=m {
                    let prev = &row[(e - 1) as usize];
                    row.push(prev * BigInt::from(v));
                }
                row
            })
            .collect();
        let mut acc = Rational::zero();
        for (ev, c) in &self.terms {
            let mut prod = BigInt::one();
            for (i, &e) in ev.exponents().iter().enumerate() {
                prod *= &powers[i][e as usize];
            }
            acc += c * Rational::from_integer(prod);
        }
        Ok(acc)
    }

    /// Sparsity, total degree and the per-variable degree/sparsity profile.
    pub fn measures(&self) -> Measures {
        if self.terms.is_empty() {
            return Measures {
                spr: 0,
                deg: -1,
                deg_by_var: vec![-1; self.dimension],
                spr_by_var: vec![0; self.dimension],
            };
        }
        let mut deg: i64 = 0;
        let mut deg_by_var = vec![0i64; self.dimension];
        let mut seen: Vec<std::collections::BTreeSet<u32>> =
            vec![Default::default(); self.dimension];
        for ev in self.terms.keys() {
            deg = deg.max(ev.total_degree() as i64);
            for (i, &e) in ev.exponents().iter().enumerate() {
                deg_by_var[i] = deg_by_var[i].max(e as i64);
                seen[i].insert(e);
            }
        }
        Measures {
            spr: self.terms.len(),
            deg,
            deg_by_var,
            spr_by_var: seen.iter().map(|s| s.len()).collect(),
        }
    }

    pub fn deg(&self) -> i64 {
        self.measures().deg
    }

    /// Applies `X^k = X` for `k >= 2` in every variable and merges like
    /// terms. Values on `{0,1}^n` are unchanged; sparsity and degree never
    /// increase.
    pub fn multilinear_reduce(&self) -> SparsePoly {
        let mut out = SparsePoly::zero(self.dimension);
        for (ev, c) in &self.terms {
            let reduced =
                ExponentVector::new(ev.exponents().iter().map(|&e| e.min(1)).collect());
            out.add_term(reduced, c.clone());
        }
        out
    }
}

/// Monic univariate polynomial vanishing exactly on the given points:
/// `M(X) = prod (X - a)`.
pub fn vanishing_poly(points: &[i64]) -> Result<SparsePoly> {
    if points.is_empty() {
        return Err(Error::EmptyInput("point list"));
    }
    let mut sorted = points.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidGrid("vanishing points must be distinct".into()));
    }
    let x = SparsePoly::variable(1, 0);
    let mut out = SparsePoly::constant(1, Rational::one());
    for &a in points {
        let factor = x.sub(&SparsePoly::constant(1, Rational::from_integer(a.into())));
        out = out.mul(&factor);
    }
    Ok(out)
}

/// Dense ascending coefficients of `X^d mod M` for `d = 0..=max_deg`, where
/// `M` is the monic vanishing polynomial of `values`.
fn power_remainders(values: &[i64], max_deg: u32) -> Vec<Vec<Rational>> {
    let m = values.len();
    // M(X) = X^m + m_low(X), as dense ascending coefficients of m_low.
    let mpoly = vanishing_poly(values).expect("grid values are distinct");
    let mut m_low = vec![Rational::zero(); m];
    for (ev, c) in mpoly.terms() {
        let d = ev.exponents()[0] as usize;
        if d < m {
            m_low[d] = c.clone();
        }
    }
    let mut table: Vec<Vec<Rational>> = Vec::with_capacity(max_deg as usize + 1);
    for d in 0..=max_deg as usize {
        if d < m {
            let mut row = vec![Rational::zero(); m];
            row[d] = Rational::one();
            table.push(row);
        } else {
            // X * R_{d-1}, then reduce the overflow coefficient by X^m = -m_low.
            let prev = &table[d - 1];
            let mut row = vec![Rational::zero(); m];
            row[1..m].clone_from_slice(&prev[..m - 1]);
            let overflow = prev[m - 1].clone();
            if !overflow.is_zero() {
                for (r, ml) in row.iter_mut().zip(&m_low) {
                    *r -= &overflow * ml;
                }
            }
            table.push(row);
        }
    }
    table
}

/// Reduces a single variable modulo the vanishing polynomial of `values`,
/// replacing `X_var^d` by its remainder for every `d >= |values|`.
pub fn reduce_var(p: &SparsePoly, var: usize, values: &[i64]) -> SparsePoly {
    let m = values.len() as u32;
    let max_deg = p
        .terms()
        .map(|(ev, _)| ev.exponents()[var])
        .max()
        .unwrap_or(0);
    if max_deg < m {
        return p.clone();
    }
    let table = power_remainders(values, max_deg);
    let mut out = SparsePoly::zero(p.dimension());
    for (ev, c) in p.terms() {
        let d = ev.exponents()[var];
        if d < m {
            out.add_term(ev.clone(), c.clone());
        } else {
            for (j, rj) in table[d as usize].iter().enumerate() {
                if !rj.is_zero() {
                    out.add_term(ev.with_entry(var, j as u32), c * rj);
                }
            }
        }
    }
    out
}

/// Reduces `P` modulo the ideal `(M(X_1), ..., M(X_n))` of the grid,
/// variable by variable in ascending index order. The result agrees with `P`
/// at every grid point and has `deg_i <= m - 1` for all `i`; the outcome is
/// independent of the order in which variables are processed.
pub fn grid_reduce(p: &SparsePoly, grid: &Grid) -> SparsePoly {
    let mut out = p.clone();
    for var in 0..grid.dimension() {
        out = reduce_var(&out, var, grid.values());
    }
    out
}

/// Positive combination `sum c_i P_i`. Rejects non-positive weights; if every
/// `P_i` sign represents the same function on a grid, so does the result.
pub fn conic_combine(weights: &[Rational], polys: &[SparsePoly]) -> Result<SparsePoly> {
    if weights.len() != polys.len() {
        return Err(Error::DimensionMismatch {
            expected: weights.len(),
            found: polys.len(),
        });
    }
    if polys.is_empty() {
        return Err(Error::EmptyInput("conic combination"));
    }
    let dim = polys[0].dimension();
    let mut out = SparsePoly::zero(dim);
    for (w, p) in weights.iter().zip(polys) {
        if !w.is_positive() {
            return Err(Error::NonPositiveWeight);
        }
        if p.dimension() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.dimension(),
            });
        }
        out = out.add(&p.scale(w));
    }
    Ok(out)
}

/// Groups terms by the power of one variable: `P = sum_d X_var^d Q_d` with
/// `X_var` absent from every `Q_d`. The map partitions the support exactly.
pub fn decompose_by_var(p: &SparsePoly, var: usize) -> BTreeMap<u32, SparsePoly> {
    assert!(var < p.dimension(), "variable index out of range");
    let mut parts: BTreeMap<u32, SparsePoly> = BTreeMap::new();
    for (ev, c) in p.terms() {
        let d = ev.exponents()[var];
        let stripped = ev.with_entry(var, 0);
        parts
            .entry(d)
            .or_insert_with(|| SparsePoly::zero(p.dimension()))
            .add_term(stripped, c.clone());
    }
    parts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_poly;
    use crate::rational::{rat, ratio};

    fn p(text: &str, dim: usize) -> SparsePoly {
        parse_poly(text, Some(dim)).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let q = p("1 - 2*x1", 1);
        assert_eq!(q.evaluate(&[0]).unwrap(), rat(1));
        assert_eq!(q.evaluate(&[1]).unwrap(), rat(-1));
        // (x - 1/2)(x - 3/2) expanded
        let r = p("x1^2 - 2*x1 + 3/4", 1);
        assert_eq!(r.evaluate(&[1]).unwrap(), ratio(-1, 4));
        assert!(matches!(
            q.evaluate(&[1, 2]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn measures_examples() {
        let q = p("x1^2*x2 + x1", 2);
        let m = q.measures();
        assert_eq!(m.spr, 2);
        assert_eq!(m.deg, 3);
        assert_eq!(m.deg_by_var, vec![2, 1]);
        assert_eq!(m.spr_by_var[0], 2);

        let z = SparsePoly::zero(3);
        let mz = z.measures();
        assert_eq!(mz.spr, 0);
        assert_eq!(mz.deg, -1);
        assert_eq!(mz.deg_by_var, vec![-1, -1, -1]);

        // prod_{i=1..2} (1 - 2 x_i), expanded by polynomial multiplication
        let f1 = p("1 - 2*x1", 2);
        let f2 = p("1 - 2*x2", 2);
        let prod = f1.mul(&f2);
        assert_eq!(prod, p("1 - 2*x1 - 2*x2 + 4*x1*x2", 2));
        assert_eq!(prod.measures().spr, 4);
        assert_eq!(prod.measures().deg, 2);
    }

    #[test]
    fn multilinear_reduce_examples() {
        assert_eq!(p("x1^3", 1).multilinear_reduce(), p("x1", 1));
        assert_eq!(p("x1^2 + x1", 1).multilinear_reduce(), p("2*x1", 1));
        let q = p("x1^2*x2^3 - x1*x2", 2).multilinear_reduce();
        assert!(q.is_zero());
    }

    #[test]
    fn vanishing_poly_examples() {
        assert_eq!(vanishing_poly(&[0, 1]).unwrap(), p("x1^2 - x1", 1));
        assert_eq!(
            vanishing_poly(&[0, 1, 2]).unwrap(),
            p("x1^3 - 3*x1^2 + 2*x1", 1)
        );
        assert_eq!(vanishing_poly(&[1]).unwrap(), p("x1 - 1", 1));
        assert!(vanishing_poly(&[]).is_err());
        assert!(vanishing_poly(&[1, 1]).is_err());
    }

    #[test]
    fn grid_reduce_examples() {
        let g2 = Grid::range(1, 0, 1).unwrap();
        assert_eq!(grid_reduce(&p("x1^3", 1), &g2), p("x1", 1));

        let g3 = Grid::range(1, 0, 2).unwrap();
        let r = grid_reduce(&p("x1^3", 1), &g3);
        assert_eq!(r, p("3*x1^2 - 2*x1", 1));
        for a in 0..=2 {
            assert_eq!(
                r.evaluate(&[a]).unwrap(),
                p("x1^3", 1).evaluate(&[a]).unwrap()
            );
        }

        let g3b = Grid::range(2, 0, 2).unwrap();
        let q = p("x1*x2", 2);
        assert_eq!(grid_reduce(&q, &g3b), q);
    }

    #[test]
    fn conic_combine_examples() {
        let a = p("1 - 2*x1", 1);
        let b = p("2 - 4*x1", 1);
        assert_eq!(
            conic_combine(&[rat(1), rat(1)], &[a.clone(), b]).unwrap(),
            p("3 - 6*x1", 1)
        );
        assert_eq!(
            conic_combine(&[ratio(1, 2)], &[p("x1", 1)]).unwrap(),
            p("1/2*x1", 1)
        );
        let c = p("-1 + 2*x1", 1);
        let z = conic_combine(&[rat(1), rat(1)], &[a.clone(), c]).unwrap();
        assert!(z.is_zero());
        assert!(matches!(
            conic_combine(&[rat(0)], &[a.clone()]),
            Err(Error::NonPositiveWeight)
        ));
        assert!(matches!(
            conic_combine(&[rat(-1)], &[a]),
            Err(Error::NonPositiveWeight)
        ));
    }

    #[test]
    fn decompose_examples() {
        let q = p("x2 + x1*x2", 2);
        let parts = decompose_by_var(&q, 1);
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[&1], p("1 + x1", 2));

        let prod = p("1 - 2*x1 - 2*x2 + 4*x1*x2", 2);
        let parts = decompose_by_var(&prod, 1);
        assert_eq!(parts[&0], p("1 - 2*x1", 2));
        assert_eq!(parts[&1], p("-2 + 4*x1", 2));

        let c = p("5", 3);
        let parts = decompose_by_var(&c, 0);
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[&0], c);
    }

    #[test]
    fn decompose_reassembles() {
        let q = p("3*x1^2*x2 - x2^2 + 7*x1 - 1/3", 2);
        for var in 0..2 {
            let parts = decompose_by_var(&q, var);
            let mut sum = SparsePoly::zero(2);
            for (d, part) in &parts {
                let xd = SparsePoly::variable(2, var).pow(*d);
                sum = sum.add(&xd.mul(part));
            }
            assert_eq!(sum, q);
        }
    }
}
