//! Closed-form representations of parity, each verified family behind a
//! common trait so the CLI can select one by name.
//!
//! The families trade sparsity against degree:
//!
//! - `hypercube`: `prod (1 - 2 x_i)` sign represents parity on `{0,1}^n`
//!   with sparsity `2^n` and degree `n`.
//! - `mary`: a product of per-variable root chains sign represents parity on
//!   `{0..m-1}^n` with sparsity `m^n` and degree `m-1` in each variable.
//! - `geometric`: a univariate chain in `W = prod x_i` sign represents
//!   parity on `{1,2}^n` with sparsity `n+1` and degree `n^2`.
//! - `weak-sparse`: a weak representation on `{0..m-1}^n` of sparsity
//!   `(m-1)^n` with degree at most `m-1` per variable.
//! - `weak-product`: a weak representation on any grid, univariate in
//!   `W = prod x_i`, with one root per attained product value.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::poly::{ExponentVector, SparsePoly};
use crate::rational::{rat, ratio, Rational};
use crate::target::TargetFunction;
use crate::verify::RepKind;

/// `prod_{i=1..n} (1 - 2 x_i)`, expanded. The coefficient of the monomial
/// `prod_{i in S} x_i` is `(-2)^{|S|}`, so all `2^n` coefficients are nonzero
/// with sign `(-1)^{|S|}`.
pub fn construct_hypercube_parity(n: usize) -> Result<SparsePoly> {
    if n == 0 {
        return Err(Error::BadArity("need n >= 1".into()));
    }
    let mut p = SparsePoly::constant(n, Rational::one());
    for i in 0..n {
        let factor = SparsePoly::constant(n, rat(1)).sub(&SparsePoly::variable(n, i).scale(&rat(2)));
        p = p.mul(&factor);
    }
    Ok(p)
}

fn check_alpha_count(alphas: &[Rational], expected: usize) -> Result<()> {
    if alphas.len() != expected {
        return Err(Error::BadArity(format!(
            "expected {expected} alphas, got {}",
            alphas.len()
        )));
    }
    Ok(())
}

/// Sign representation of parity on `{0..m-1}^n` as a product over variables
/// of root chains through the gaps of the point set:
/// `prod_i prod_{j=0..m-2} (-1)^{m-1} (x_i - alpha_j)` with
/// `alpha_j in (j, j+1)`. Defaults to the half-integers `j + 1/2`. Sparsity
/// is `m^n` and the degree in each variable is `m - 1`.
pub fn construct_mary_parity(
    n: usize,
    m: usize,
    alphas: Option<&[Rational]>,
) -> Result<SparsePoly> {
    if n == 0 || m < 2 {
        return Err(Error::BadArity("need n >= 1 and m >= 2".into()));
    }
    let defaults: Vec<Rational> = (0..m - 1).map(|j| ratio(2 * j as i64 + 1, 2)).collect();
    let alphas = match alphas {
        Some(a) => {
            check_alpha_count(a, m - 1)?;
            for (j, alpha) in a.iter().enumerate() {
                let lo = rat(j as i64);
                let hi = rat(j as i64 + 1);
                if *alpha <= lo || *alpha >= hi {
                    return Err(Error::AlphaOutOfRange {
                        index: j,
                        detail: format!("{alpha} not strictly inside ({j}, {})", j + 1),
                    });
                }
            }
            a.to_vec()
        }
        None => defaults,
    };
    // Per-variable chain: (-1)^{m-1} prod_j (x - alpha_j). The sign factor
    // makes the value at x = 0 positive, as parity of the all-zero point
    // demands.
    let chain_sign = if (m - 1) % 2 == 0 { rat(1) } else { rat(-1) };
    let mut p = SparsePoly::constant(n, Rational::one());
    for i in 0..n {
        let mut chain = SparsePoly::constant(n, chain_sign.clone());
        for alpha in &alphas {
            let factor = SparsePoly::variable(n, i).sub(&SparsePoly::constant(n, alpha.clone()));
            chain = chain.mul(&factor);
        }
        p = p.mul(&chain);
    }
    Ok(p)
}

/// Turns a univariate polynomial in `W` (dense ascending coefficients) into
/// the n-variable polynomial obtained by substituting `W = prod x_i`; the
/// power `W^k` becomes the monomial with exponent vector `(k, ..., k)`.
fn univariate_in_product(n: usize, coeffs: &[Rational]) -> SparsePoly {
    let terms = coeffs.iter().enumerate().map(|(k, c)| {
        (
            ExponentVector::new(vec![k as u32; n]),
            c.clone(),
        )
    });
    SparsePoly::from_terms(n, terms).expect("exponent vectors built with dimension n")
}

/// Dense ascending coefficients of `prod (W - alpha)`.
fn root_chain(alphas: &[Rational]) -> Vec<Rational> {
    let mut coeffs = vec![Rational::one()];
    for alpha in alphas {
        let mut next = vec![Rational::zero(); coeffs.len() + 1];
        for (k, c) in coeffs.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= alpha * c;
        }
        coeffs = next;
    }
    coeffs
}

/// Sign representation of parity on `{1,2}^n`, univariate in the product
/// `W = prod x_i`: `prod_{j=1..n} (W - alpha_j)` with
/// `alpha_j in (2^{j-1}, 2^j)`, defaulting to the interval midpoints
/// `3 * 2^{j-2}`. Sparsity `n + 1`, degree `n^2`.
pub fn construct_geometric_parity(n: usize, alphas: Option<&[Rational]>) -> Result<SparsePoly> {
    if n == 0 {
        return Err(Error::BadArity("need n >= 1".into()));
    }
    let defaults: Vec<Rational> = (1..=n as u32).map(|j| ratio(3, 1) * ratio(1 << (j - 1), 2)).collect();
    let alphas = match alphas {
        Some(a) => {
            check_alpha_count(a, n)?;
            for (idx, alpha) in a.iter().enumerate() {
                let j = idx + 1;
                let lo = Rational::from_integer(BigInt::one() << (j - 1));
                let hi = Rational::from_integer(BigInt::one() << j);
                if *alpha <= lo || *alpha >= hi {
                    return Err(Error::AlphaOutOfRange {
                        index: idx,
                        detail: format!("{alpha} not strictly inside ({lo}, {hi})"),
                    });
                }
            }
            a.to_vec()
        }
        None => defaults,
    };
    Ok(univariate_in_product(n, &root_chain(&alphas)))
}

/// Univariate sign representation of parity on `{1..m-1}` with sparsity
/// `m - 1` and degree `m - 2`, scaled to integer coefficients:
/// `(-1)^{m-1} prod_{j=1..m-2} (2x - (2j+1))`.
fn weak_univariate_chain(m: usize) -> SparsePoly {
    let mut p = SparsePoly::constant(1, if (m - 1) % 2 == 0 { rat(1) } else { rat(-1) });
    for j in 1..=m.saturating_sub(2) {
        let factor = SparsePoly::variable(1, 0)
            .scale(&rat(2))
            .sub(&SparsePoly::constant(1, rat(2 * j as i64 + 1)));
        p = p.mul(&factor);
    }
    p
}

/// Weak representation of parity on `{0..m-1}^n` with sparsity `(m-1)^n`:
/// the product `Q = prod_i q(x_i)` of univariate sign representations of
/// parity on `{1..m-1}`, multiplied by `prod_i x_i` so that it vanishes
/// whenever a coordinate is 0. Degree per variable is at most `m - 1`.
pub fn construct_weak_low_sparsity(n: usize, m: usize) -> Result<SparsePoly> {
    if n == 0 || m < 2 {
        return Err(Error::BadArity("need n >= 1 and m >= 2".into()));
    }
    let q = weak_univariate_chain(m);
    let mut p = SparsePoly::constant(n, Rational::one());
    for i in 0..n {
        // substitute x_i into the univariate chain, then multiply by x_i
        let terms = q.terms().map(|(ev, c)| {
            let d = ev.exponents()[0] + 1;
            let mut exps = vec![0u32; n];
            exps[i] = d;
            (ExponentVector::new(exps), c.clone())
        });
        let qi = SparsePoly::from_terms(n, terms)?;
        p = p.mul(&qi);
    }
    Ok(p)
}

/// The set `S` of products attained by `w(a) = prod a_i` over the grid.
pub fn product_value_set(grid: &Grid) -> BTreeSet<BigInt> {
    let mut set = BTreeSet::new();
    // The value set of the product is generated coordinate by coordinate.
    let mut partial: BTreeSet<BigInt> = [BigInt::one()].into_iter().collect();
    for _ in 0..grid.dimension() {
        let mut next = BTreeSet::new();
        for v in &partial {
            for &a in grid.values() {
                next.insert(v * BigInt::from(a));
            }
        }
        partial = next;
    }
    set.extend(partial);
    set
}

/// Weak representation of parity on any grid of non-negative integers:
/// `(-1)^{n a} prod_{alpha in S, alpha != a^n} (W - alpha)` where `W` is the
/// product of the variables, `S` the attained product values, and `a` the
/// largest grid value. It vanishes everywhere except at `(a, ..., a)`.
/// Sparsity is `|S|` when `0` is not a grid value and `|S| - 1` otherwise
/// (a zero root removes the constant term).
pub fn construct_weak_product(grid: &Grid) -> Result<SparsePoly> {
    let a = grid.max_value();
    if a <= 0 {
        return Err(Error::InvalidGrid("largest grid value must be positive".into()));
    }
    let n = grid.dimension();
    let s = product_value_set(grid);
    let top = BigInt::from(a).pow(n as u32);
    let roots: Vec<Rational> = s
        .iter()
        .filter(|v| **v != top)
        .map(|v| Rational::from_integer(v.clone()))
        .collect();
    let mut coeffs = root_chain(&roots);
    if (n as i64 * a) % 2 != 0 {
        for c in &mut coeffs {
            *c = -c.clone();
        }
    }
    Ok(univariate_in_product(n, &coeffs))
}

/// Construction parameters accepted by every family; each family validates
/// the subset it needs.
#[derive(Clone, Debug, Default)]
pub struct ConstructParams {
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub grid: Option<Grid>,
    pub alphas: Option<Vec<Rational>>,
}

impl ConstructParams {
    fn need_n(&self) -> Result<usize> {
        self.n
            .ok_or_else(|| Error::BadArity("this family requires --n".into()))
    }

    fn need_m(&self) -> Result<usize> {
        self.m
            .ok_or_else(|| Error::BadArity("this family requires --m".into()))
    }
}

/// A built polynomial together with the target and representation kind it
/// advertises, so callers can verify it directly.
#[derive(Clone, Debug)]
pub struct Construction {
    pub poly: SparsePoly,
    pub target: TargetFunction,
    pub kind: RepKind,
}

/// One named construction family.
pub trait ConstructionFamily: Sync + Send {
    fn name(&self) -> &'static str;
    fn describe(&self) -> &'static str;
    fn build(&self, params: &ConstructParams) -> Result<Construction>;
}

struct Hypercube;

impl ConstructionFamily for Hypercube {
    fn name(&self) -> &'static str {
        "hypercube"
    }

    fn describe(&self) -> &'static str {
        "prod (1 - 2 x_i): sign representation of parity on {0,1}^n, sparsity 2^n, degree n"
    }

    fn build(&self, params: &ConstructParams) -> Result<Construction> {
        let n = params.need_n()?;
        Ok(Construction {
            poly: construct_hypercube_parity(n)?,
            target: TargetFunction::parity(Grid::range(n, 0, 1)?),
            kind: RepKind::Sign,
        })
    }
}

struct MAry;

impl ConstructionFamily for MAry {
    fn name(&self) -> &'static str {
        "mary"
    }

    fn describe(&self) -> &'static str {
        "per-variable root chains: sign representation of parity on {0..m-1}^n, sparsity m^n"
    }

    fn build(&self, params: &ConstructParams) -> Result<Construction> {
        let n = params.need_n()?;
        let m = params.need_m()?;
        Ok(Construction {
            poly: construct_mary_parity(n, m, params.alphas.as_deref())?,
            target: TargetFunction::parity(Grid::range(n, 0, m as i64 - 1)?),
            kind: RepKind::Sign,
        })
    }
}

struct Geometric;

impl ConstructionFamily for Geometric {
    fn name(&self) -> &'static str {
        "geometric"
    }

    fn describe(&self) -> &'static str {
        "chain in W = prod x_i: sign representation of parity on {1,2}^n, sparsity n+1, degree n^2"
    }

    fn build(&self, params: &ConstructParams) -> Result<Construction> {
        let n = params.need_n()?;
        Ok(Construction {
            poly: construct_geometric_parity(n, params.alphas.as_deref())?,
            target: TargetFunction::parity(Grid::range(n, 1, 2)?),
            kind: RepKind::Sign,
        })
    }
}

struct WeakSparse;

impl ConstructionFamily for WeakSparse {
    fn name(&self) -> &'static str {
        "weak-sparse"
    }

    fn describe(&self) -> &'static str {
        "weak representation of parity on {0..m-1}^n with sparsity (m-1)^n"
    }

    fn build(&self, params: &ConstructParams) -> Result<Construction> {
        let n = params.need_n()?;
        let m = params.need_m()?;
        Ok(Construction {
            poly: construct_weak_low_sparsity(n, m)?,
            target: TargetFunction::parity(Grid::range(n, 0, m as i64 - 1)?),
            kind: RepKind::WeakSign,
        })
    }
}

struct WeakProduct;

impl ConstructionFamily for WeakProduct {
    fn name(&self) -> &'static str {
        "weak-product"
    }

    fn describe(&self) -> &'static str {
        "one root per attained product value: weak representation of parity on any grid"
    }

    fn build(&self, params: &ConstructParams) -> Result<Construction> {
        let grid = params
            .grid
            .clone()
            .ok_or_else(|| Error::BadArity("this family requires --grid".into()))?;
        Ok(Construction {
            poly: construct_weak_product(&grid)?,
            target: TargetFunction::parity(grid),
            kind: RepKind::WeakSign,
        })
    }
}

/// Name-indexed registry of the construction families.
pub struct ConstructionRegistry {
    families: BTreeMap<&'static str, Box<dyn ConstructionFamily>>,
}

impl ConstructionRegistry {
    pub fn new() -> Self {
        let mut registry = ConstructionRegistry {
            families: BTreeMap::new(),
        };
        registry.register(Box::new(Hypercube));
        registry.register(Box::new(MAry));
        registry.register(Box::new(Geometric));
        registry.register(Box::new(WeakSparse));
        registry.register(Box::new(WeakProduct));
        registry
    }

    pub fn register(&mut self, family: Box<dyn ConstructionFamily>) {
        self.families.insert(family.name(), family);
    }

    pub fn get(&self, name: &str) -> Result<&dyn ConstructionFamily> {
        self.families
            .get(name)
            .map(|f| f.as_ref())
            .ok_or_else(|| Error::UnknownName {
                kind: "construction family",
                name: name.to_string(),
            })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.families.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn ConstructionFamily> {
        self.families.values().map(|f| f.as_ref())
    }
}

impl Default for ConstructionRegistry {
    fn default() -> Self {
        ConstructionRegistry::new()
    }
}
