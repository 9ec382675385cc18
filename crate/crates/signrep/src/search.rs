//! Exhaustive minimum-sparsity and minimum-degree searches, and the
//! coefficient sign census.
//!
//! `min_sparsity` enumerates candidate supports from the monomial pool
//! `{0..D}^n` in size order, lexicographically within a size, and decides
//! each by exact LP feasibility. The reported minimum is exact subject to the
//! per-variable degree cap `D`, which is always part of the result. Two exact
//! shortcuts avoid most simplex runs: a point where every chosen column
//! vanishes refutes a strict system outright, and two points of opposite
//! target value with identical column values refute it with the two-point
//! Farkas ray. Both shortcuts emit certificates that re-check like any other.
//!
//! Work is chunked so the search can run on a thread pool while staying
//! deterministic: the winning subset is the feasible one of least rank in
//! enumeration order, and reported statistics cover exactly the subsets a
//! sequential run would have examined.
//!
//! Optional symmetry pruning skips supports that are not the
//! lexicographically least member of their orbit under the target's variable
//! symmetries. The first feasible support in full enumeration order is
//! always canonical (its canonical form is feasible and not later), so
//! pruning never changes the result; tests assert this.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::feasibility::{
    monomial_values, strict_system, weak_system, Certificate, FeasibilityProblem,
};
use crate::grid::Grid;
use crate::lp::{solve_feasibility, LpOutcome};
use crate::poly::{ExponentVector, SparsePoly};
use crate::rational::Rational;
use crate::target::{TargetFunction, TargetKind};
use crate::verify::RepKind;

#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Per-variable degree cap `D`; the monomial pool is `{0..D}^n`.
    pub degree_cap: u32,
    /// Stop after this support size (defaults to the full pool).
    pub max_support: Option<usize>,
    /// Skip supports that are not canonical under the target's symmetries.
    pub symmetry: bool,
    pub grid_cap: u64,
    /// Refuse searches that would enumerate more subsets than this.
    pub subset_cap: u64,
    /// Worker threads; `None` means serial, `Some(0)` all available cores.
    pub threads: Option<usize>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            degree_cap: 1,
            max_support: None,
            symmetry: false,
            grid_cap: crate::verify::DEFAULT_GRID_CAP,
            subset_cap: 1 << 20,
            threads: None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Subsets decided (each yields a certificate).
    pub subsets_examined: u64,
    /// Subsets skipped as non-canonical under symmetry pruning.
    pub subsets_skipped: u64,
    /// Simplex runs (prefilter refutations avoid the LP entirely).
    pub lps_solved: u64,
    pub pivots: u64,
}

/// Result of a minimum-sparsity search.
#[derive(Clone, Debug)]
pub struct SparsitySearch {
    pub k: usize,
    pub support: Vec<ExponentVector>,
    pub witness: SparsePoly,
    pub certificate: Certificate,
    pub stats: SearchStats,
    /// The cap the minimum is relative to.
    pub degree_cap: u32,
}

/// Result of a minimum-degree search.
#[derive(Clone, Debug)]
pub struct DegreeSearch {
    pub degree: u32,
    pub witness: SparsePoly,
    pub certificate: Certificate,
    pub stats: SearchStats,
    pub degree_cap: u32,
}

/// All exponent vectors with every entry at most `per_var` and total degree
/// at most `total` (when given), in ascending graded-lexicographic order.
pub fn monomial_pool(n: usize, per_var: u32, total: Option<u32>) -> Result<Vec<ExponentVector>> {
    let count = (u128::from(per_var) + 1).pow(n as u32);
    if count > 1 << 20 {
        return Err(Error::CapExceeded(format!(
            "monomial pool would have {count} elements"
        )));
    }
    let mut pool = Vec::new();
    let mut current = vec![0u32; n];
    loop {
        let deg: u32 = current.iter().sum();
        if total.map_or(true, |t| deg <= t) {
            pool.push(ExponentVector::new(current.clone()));
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                pool.sort();
                return Ok(pool);
            }
            pos -= 1;
            current[pos] += 1;
            if current[pos] <= per_var {
                break;
            }
            current[pos] = 0;
        }
    }
}

/// All permutations of `0..n`.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    fn heap(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, items, out);
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut items, &mut out);
    out
}

/// Variable permutations under which the target is invariant: all of `S_n`
/// for parity, pair permutations plus the block swap for inner product, and
/// none for explicit tables.
pub fn target_symmetries(target: &TargetFunction) -> Vec<Vec<usize>> {
    let n = target.grid().dimension();
    match target.kind() {
        TargetKind::Parity => permutations(n),
        TargetKind::InnerProduct => {
            let pairs = n / 2;
            let mut out = Vec::new();
            for tau in permutations(pairs) {
                for swap in [false, true] {
                    let mut map = vec![0usize; n];
                    for (i, &ti) in tau.iter().enumerate() {
                        if swap {
                            map[i] = pairs + ti;
                            map[pairs + i] = ti;
                        } else {
                            map[i] = ti;
                            map[pairs + i] = pairs + ti;
                        }
                    }
                    out.push(map);
                }
            }
            out
        }
        TargetKind::TruthTable(_) => vec![(0..n).collect()],
    }
}

/// Lifts variable permutations to permutations of gate-basis indices.
pub(crate) fn pool_permutations_of_gates(
    basis: &[crate::circuits::AndGateTerm],
    var_perms: &[Vec<usize>],
) -> Result<Vec<Vec<usize>>> {
    let index: HashMap<&crate::circuits::AndGateTerm, usize> = basis.iter().zip(0..).collect();
    var_perms
        .iter()
        .filter(|perm| !perm.iter().enumerate().all(|(i, &p)| i == p))
        .map(|perm| {
            basis
                .iter()
                .map(|gate| {
                    let permuted = crate::circuits::AndGateTerm {
                        positive: gate.positive.iter().map(|&v| perm[v]).collect(),
                        negated: gate.negated.iter().map(|&v| perm[v]).collect(),
                    };
                    index.get(&permuted).copied().ok_or_else(|| {
                        Error::Parse("basis is not closed under target symmetries".into())
                    })
                })
                .collect()
        })
        .collect()
}

/// Lifts variable permutations to permutations of pool indices. Returns an
/// error if the pool is not closed under some permutation.
pub(crate) fn pool_permutations(
    pool: &[ExponentVector],
    var_perms: &[Vec<usize>],
) -> Result<Vec<Vec<usize>>> {
    let index: HashMap<&ExponentVector, usize> = pool.iter().zip(0..).collect();
    var_perms
        .iter()
        .filter(|perm| !perm.iter().enumerate().all(|(i, &p)| i == p))
        .map(|perm| {
            pool.iter()
                .map(|ev| {
                    let mut permuted = vec![0u32; ev.dimension()];
                    for (i, &e) in ev.exponents().iter().enumerate() {
                        permuted[perm[i]] = e;
                    }
                    let permuted = ExponentVector::new(permuted);
                    index.get(&permuted).copied().ok_or_else(|| {
                        Error::Parse("pool is not closed under target symmetries".into())
                    })
                })
                .collect()
        })
        .collect()
}

/// True when `subset` (sorted) is the lexicographically least member of its
/// orbit under the pool permutations.
fn is_canonical(subset: &[usize], perms: &[Vec<usize>]) -> bool {
    let mut image = vec![0usize; subset.len()];
    for perm in perms {
        for (slot, &i) in subset.iter().enumerate() {
            image[slot] = perm[i];
        }
        image.sort_unstable();
        if image.as_slice() < subset {
            return false;
        }
    }
    true
}

/// Lexicographic k-subset enumerator over `0..n`.
struct Combinations {
    n: usize,
    k: usize,
    next: Option<Vec<usize>>,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        let next = (k <= n).then(|| (0..k).collect());
        Combinations { n, k, next }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.clone()?;
        // advance
        let mut idx = current.clone();
        let mut pos = self.k;
        loop {
            if pos == 0 {
                self.next = None;
                break;
            }
            pos -= 1;
            if idx[pos] + 1 <= self.n - (self.k - pos) {
                idx[pos] += 1;
                for p in pos + 1..self.k {
                    idx[p] = idx[p - 1] + 1;
                }
                self.next = Some(idx);
                break;
            }
        }
        Some(current)
    }
}

/// Decision for one candidate subset.
enum SubsetOutcome {
    Feasible {
        coeffs: Vec<Rational>,
        /// Witness point index for weak problems.
        witness: Option<usize>,
        lps: u64,
        pivots: u64,
    },
    Infeasible {
        lps: u64,
        pivots: u64,
    },
}

/// Shared engine: pool columns evaluated at grid points, plus required signs.
pub(crate) struct PoolSearch<'a> {
    /// `values[element][point]`, exact integers.
    pub values: &'a [Vec<BigInt>],
    /// `(-1)^{f(point)}` per point, in grid order.
    pub signs: &'a [i8],
    pub kind: RepKind,
    pub perms: &'a [Vec<usize>],
    pub subset_cap: u64,
    pub threads: usize,
    pub max_k: usize,
}

pub(crate) struct PoolSearchHit {
    pub k: usize,
    pub subset: Vec<usize>,
    pub coeffs: Vec<Rational>,
    pub witness: Option<usize>,
    pub stats: SearchStats,
}

impl PoolSearch<'_> {
    fn decide(&self, subset: &[usize]) -> SubsetOutcome {
        let cols: Vec<&Vec<BigInt>> = subset.iter().map(|&i| &self.values[i]).collect();
        let n_points = self.signs.len();
        match self.kind {
            RepKind::Sign => {
                // zero row refutes the whole strict system
                if (0..n_points).any(|p| cols.iter().all(|c| c[p].is_zero())) {
                    return SubsetOutcome::Infeasible { lps: 0, pivots: 0 };
                }
                // identical rows of opposite required sign refute it too
                for a in 0..n_points {
                    for b in a + 1..n_points {
                        if self.signs[a] != self.signs[b]
                            && cols.iter().all(|c| c[a] == c[b])
                        {
                            return SubsetOutcome::Infeasible { lps: 0, pivots: 0 };
                        }
                    }
                }
                let subset_values: Vec<Vec<BigInt>> =
                    cols.iter().map(|c| (*c).clone()).collect();
                let sys = strict_system(&subset_values, self.signs);
                let (outcome, s) = solve_feasibility(&sys);
                match outcome {
                    LpOutcome::Feasible(coeffs) => SubsetOutcome::Feasible {
                        coeffs,
                        witness: None,
                        lps: 1,
                        pivots: s.pivots,
                    },
                    LpOutcome::Infeasible(_) => SubsetOutcome::Infeasible {
                        lps: 1,
                        pivots: s.pivots,
                    },
                }
            }
            RepKind::WeakSign => {
                let subset_values: Vec<Vec<BigInt>> =
                    cols.iter().map(|c| (*c).clone()).collect();
                let mut lps = 0;
                let mut pivots = 0;
                for w in 0..n_points {
                    // cheap refutations of this witness choice
                    if cols.iter().all(|c| c[w].is_zero()) {
                        continue;
                    }
                    if (0..n_points).any(|b| {
                        self.signs[b] != self.signs[w] && cols.iter().all(|c| c[b] == c[w])
                    }) {
                        continue;
                    }
                    let sys = weak_system(&subset_values, self.signs, w);
                    let (outcome, s) = solve_feasibility(&sys);
                    lps += 1;
                    pivots += s.pivots;
                    if let LpOutcome::Feasible(coeffs) = outcome {
                        return SubsetOutcome::Feasible {
                            coeffs,
                            witness: Some(w),
                            lps,
                            pivots,
                        };
                    }
                }
                SubsetOutcome::Infeasible { lps, pivots }
            }
            RepKind::Exact => unreachable!("searches are sign or weak only"),
        }
    }

    /// Finds the smallest k and the first feasible k-subset in enumeration
    /// order. Statistics cover exactly the subsets a sequential run examines.
    pub(crate) fn run(&self) -> Result<Option<PoolSearchHit>> {
        const CHUNK: usize = 256;
        let pool_len = self.values.len();
        let mut stats = SearchStats::default();
        let mut enumerated: u64 = 0;
        for k in 1..=self.max_k.min(pool_len) {
            let mut combos = Combinations::new(pool_len, k);
            loop {
                // gather one chunk of canonical subsets
                let mut chunk: Vec<Vec<usize>> = Vec::with_capacity(CHUNK);
                for subset in combos.by_ref() {
                    enumerated += 1;
                    if enumerated > self.subset_cap {
                        return Err(Error::CapExceeded(format!(
                            "subset enumeration exceeded {}",
                            self.subset_cap
                        )));
                    }
                    if !self.perms.is_empty() && !is_canonical(&subset, self.perms) {
                        stats.subsets_skipped += 1;
                        continue;
                    }
                    chunk.push(subset);
                    if chunk.len() == CHUNK {
                        break;
                    }
                }
                if chunk.is_empty() {
                    break;
                }
                let outcomes: Vec<SubsetOutcome> = if self.threads > 1 {
                    chunk.par_iter().map(|s| self.decide(s)).collect()
                } else {
                    chunk.iter().map(|s| self.decide(s)).collect()
                };
                // deterministic reduction: first feasible in enumeration order
                for (pos, outcome) in outcomes.into_iter().enumerate() {
                    stats.subsets_examined += 1;
                    match outcome {
                        SubsetOutcome::Infeasible { lps, pivots } => {
                            stats.lps_solved += lps;
                            stats.pivots += pivots;
                        }
                        SubsetOutcome::Feasible {
                            coeffs,
                            witness,
                            lps,
                            pivots,
                        } => {
                            stats.lps_solved += lps;
                            stats.pivots += pivots;
                            return Ok(Some(PoolSearchHit {
                                k,
                                subset: chunk[pos].clone(),
                                coeffs,
                                witness,
                                stats,
                            }));
                        }
                    }
                }
            }
        }
        Ok(None)
    }
}

pub(crate) fn thread_count(threads: Option<usize>) -> usize {
    match threads {
        None => 1,
        Some(0) => std::thread::available_parallelism().map_or(1, |n| n.get()),
        Some(t) => t.max(1),
    }
}

pub(crate) fn run_pool_search(search: &PoolSearch<'_>) -> Result<Option<PoolSearchHit>> {
    if search.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(search.threads)
            .build()
            .map_err(|e| Error::Parse(format!("thread pool: {e}")))?;
        pool.install(|| search.run())
    } else {
        search.run()
    }
}

fn validated_pool_inputs(
    target: &TargetFunction,
    cfg: &SearchConfig,
    total_cap: Option<u32>,
) -> Result<(Vec<ExponentVector>, Vec<Vec<BigInt>>, Vec<i8>, Vec<Vec<i64>>)> {
    let grid = target.grid();
    let points_count = grid.point_count();
    if points_count > cfg.grid_cap as u128 {
        return Err(Error::GridTooLarge {
            points: points_count,
            cap: cfg.grid_cap,
        });
    }
    let pool = monomial_pool(grid.dimension(), cfg.degree_cap, total_cap)?;
    let points: Vec<Vec<i64>> = grid.points().collect();
    let values = monomial_values(&pool, &points);
    let signs: Vec<i8> = points
        .iter()
        .map(|p| target.required_sign(p))
        .collect::<Result<_>>()?;
    Ok((pool, values, signs, points))
}

/// Smallest support size admitting a representation of the requested kind,
/// with the first witness in enumeration order. Exact subject to the
/// per-variable degree cap in `cfg`.
pub fn min_sparsity(
    target: &TargetFunction,
    kind: RepKind,
    cfg: &SearchConfig,
) -> Result<SparsitySearch> {
    if kind == RepKind::Exact {
        return Err(Error::Parse("min_sparsity expects kind sign or weak".into()));
    }
    let (pool, values, signs, points) = validated_pool_inputs(target, cfg, None)?;
    let perms = if cfg.symmetry {
        pool_permutations(&pool, &target_symmetries(target))?
    } else {
        Vec::new()
    };
    let max_k = cfg.max_support.unwrap_or(pool.len());
    let search = PoolSearch {
        values: &values,
        signs: &signs,
        kind,
        perms: &perms,
        subset_cap: cfg.subset_cap,
        threads: thread_count(cfg.threads),
        max_k,
    };
    let hit = run_pool_search(&search)?.ok_or(Error::SearchExhausted { max_support: max_k })?;
    let support: Vec<ExponentVector> = hit.subset.iter().map(|&i| pool[i].clone()).collect();
    let witness = SparsePoly::from_terms(
        target.grid().dimension(),
        support.iter().cloned().zip(hit.coeffs.iter().cloned()),
    )?;
    let mut certificate = Certificate::feasible(&support, &hit.coeffs);
    certificate.witness_point = hit.witness.map(|w| points[w].clone());
    Ok(SparsitySearch {
        k: hit.k,
        support,
        witness,
        certificate,
        stats: hit.stats,
        degree_cap: cfg.degree_cap,
    })
}

/// Smallest total degree `d` such that the full monomial pool of total degree
/// at most `d` (per-variable at most the cap) is feasible for the kind.
pub fn min_degree(
    target: &TargetFunction,
    kind: RepKind,
    cfg: &SearchConfig,
) -> Result<DegreeSearch> {
    if kind == RepKind::Exact {
        return Err(Error::Parse("min_degree expects kind sign or weak".into()));
    }
    let n = target.grid().dimension();
    let max_total = cfg.degree_cap * n as u32;
    let mut stats = SearchStats::default();
    for d in 0..=max_total {
        let (pool, values, signs, points) = validated_pool_inputs(target, cfg, Some(d))?;
        let outcome = match kind {
            RepKind::Sign => {
                let sys = strict_system(&values, &signs);
                let (outcome, s) = solve_feasibility(&sys);
                stats.lps_solved += 1;
                stats.pivots += s.pivots;
                match outcome {
                    LpOutcome::Feasible(coeffs) => Some((coeffs, None)),
                    LpOutcome::Infeasible(_) => None,
                }
            }
            RepKind::WeakSign => {
                let mut found = None;
                for w in 0..points.len() {
                    let sys = weak_system(&values, &signs, w);
                    let (outcome, s) = solve_feasibility(&sys);
                    stats.lps_solved += 1;
                    stats.pivots += s.pivots;
                    if let LpOutcome::Feasible(coeffs) = outcome {
                        found = Some((coeffs, Some(w)));
                        break;
                    }
                }
                found
            }
            RepKind::Exact => unreachable!(),
        };
        stats.subsets_examined += 1;
        if let Some((coeffs, witness)) = outcome {
            let witness_poly = SparsePoly::from_terms(
                n,
                pool.iter().cloned().zip(coeffs.iter().cloned()),
            )?;
            let mut certificate = Certificate::feasible(&pool, &coeffs);
            certificate.witness_point = witness.map(|w| points[w].clone());
            return Ok(DegreeSearch {
                degree: d,
                witness: witness_poly,
                certificate,
                stats,
                degree_cap: cfg.degree_cap,
            });
        }
    }
    Err(Error::SearchExhausted {
        max_support: max_total as usize,
    })
}

/// One monomial's verdict in the coefficient sign census.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CensusEntry {
    pub exponents: Vec<u32>,
    /// The sign every representation is forced to use: `(-1)^{|S|}`.
    pub required_sign: i8,
    /// True when the wrong-sign system is infeasible.
    pub forced: bool,
    /// Farkas ray over the grid rows followed by the appended wrong-sign row.
    pub ray: Option<Vec<String>>,
    pub ray_verified: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CensusReport {
    pub n: usize,
    pub entries: Vec<CensusEntry>,
    pub all_forced: bool,
    pub stats: SearchStats,
}

/// For parity on `{0,1}^n`: certifies per multilinear monomial that every
/// sign representation gives its coefficient the sign `(-1)^{|S|}`, by
/// showing the system with the opposite (or zero) sign appended is
/// infeasible, Farkas ray included.
pub fn coefficient_sign_census(n: usize, cfg: &SearchConfig) -> Result<CensusReport> {
    let grid = Grid::range(n, 0, 1)?;
    let target = TargetFunction::parity(grid);
    let mut pool_cfg = cfg.clone();
    pool_cfg.degree_cap = 1;
    let (pool, values, signs, _) = validated_pool_inputs(&target, &pool_cfg, None)?;
    let mut stats = SearchStats::default();
    let mut entries = Vec::with_capacity(pool.len());
    for (idx, ev) in pool.iter().enumerate() {
        let size = ev.total_degree();
        let required: i8 = if size % 2 == 0 { 1 } else { -1 };
        // Append the wrong-sign constraint (-1)^{|S|} c_S <= 0, written as
        // -(-1)^{|S|} c_S >= 0, to the strict representation system.
        let mut sys = strict_system(&values, &signs);
        let mut extra = vec![Rational::zero(); pool.len()];
        extra[idx] = if required > 0 {
            -Rational::from_integer(1.into())
        } else {
            Rational::from_integer(1.into())
        };
        sys.rows.push(crate::lp::LpRow {
            coeffs: extra,
            rhs: Rational::zero(),
        });
        let (outcome, s) = solve_feasibility(&sys);
        stats.lps_solved += 1;
        stats.pivots += s.pivots;
        stats.subsets_examined += 1;
        let (forced, ray, ray_verified) = match outcome {
            LpOutcome::Infeasible(ray) => {
                let ok = crate::lp::check_farkas_ray(&sys, &ray);
                (
                    true,
                    Some(ray.iter().map(|r| r.to_string()).collect()),
                    ok,
                )
            }
            LpOutcome::Feasible(_) => (false, None, false),
        };
        entries.push(CensusEntry {
            exponents: ev.exponents().to_vec(),
            required_sign: required,
            forced,
            ray,
            ray_verified,
        });
    }
    let all_forced = entries.iter().all(|e| e.forced && e.ray_verified);
    Ok(CensusReport {
        n,
        entries,
        all_forced,
        stats,
    })
}

/// Infeasibility certificates for every support of size `k` (the boundary
/// layer that, together with a feasible size-`k+1` witness, proves the
/// minimum). Serial, intended for export at desk scale.
pub fn boundary_certificates(
    target: &TargetFunction,
    kind: RepKind,
    cfg: &SearchConfig,
    k: usize,
) -> Result<Vec<(Vec<ExponentVector>, Certificate)>> {
    let (pool, _, _, _) = validated_pool_inputs(target, cfg, None)?;
    let combos = Combinations::new(pool.len(), k);
    let mut out = Vec::new();
    let mut enumerated = 0u64;
    for subset in combos {
        enumerated += 1;
        if enumerated > cfg.subset_cap {
            return Err(Error::CapExceeded(format!(
                "subset enumeration exceeded {}",
                cfg.subset_cap
            )));
        }
        let support: Vec<ExponentVector> = subset.iter().map(|&i| pool[i].clone()).collect();
        let problem = FeasibilityProblem {
            support: support.clone(),
            target: target.clone(),
            kind,
            witness_point: None,
        };
        let (cert, _) = match kind {
            RepKind::Sign => crate::feasibility::feasible_sign_rep(&problem)?,
            RepKind::WeakSign => crate::feasibility::feasible_weak_rep(&problem)?,
            RepKind::Exact => return Err(Error::Parse("exact kind not searchable".into())),
        };
        out.push((support, cert));
    }
    Ok(out)
}

/// Builds the infeasibility certificate for one subset outside the fast
/// engine path, so callers can audit cheap refutations too.
pub fn certify_subset(
    target: &TargetFunction,
    kind: RepKind,
    support: Vec<ExponentVector>,
) -> Result<Certificate> {
    let problem = FeasibilityProblem {
        support,
        target: target.clone(),
        kind,
        witness_point: None,
    };
    let (cert, _) = match kind {
        RepKind::Sign => crate::feasibility::feasible_sign_rep(&problem)?,
        RepKind::WeakSign => crate::feasibility::feasible_weak_rep(&problem)?,
        RepKind::Exact => return Err(Error::Parse("exact kind not searchable".into())),
    };
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::feasibility::audit_certificate;

    fn cfg(d: u32) -> SearchConfig {
        SearchConfig {
            degree_cap: d,
            ..Default::default()
        }
    }

    #[test]
    fn pool_is_graded_lex_sorted() {
        let pool = monomial_pool(2, 2, None).unwrap();
        assert_eq!(pool.len(), 9);
        assert_eq!(pool[0].exponents(), &[0, 0]);
        assert_eq!(pool[1].exponents(), &[0, 1]);
        assert_eq!(pool[2].exponents(), &[1, 0]);
        assert_eq!(pool[8].exponents(), &[2, 2]);
        let capped = monomial_pool(2, 2, Some(1)).unwrap();
        assert_eq!(capped.len(), 3);
    }

    #[test]
    fn combinations_are_lexicographic() {
        let all: Vec<Vec<usize>> = Combinations::new(4, 2).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(Combinations::new(3, 3).count(), 1);
        assert_eq!(Combinations::new(3, 4).count(), 0);
    }

    #[test]
    fn hypercube_minimum_is_full_pool() {
        let target = TargetFunction::parity(Grid::range(2, 0, 1).unwrap());
        let found = min_sparsity(&target, RepKind::Sign, &cfg(1)).unwrap();
        assert_eq!(found.k, 4);
        audit_certificate(
            &FeasibilityProblem {
                support: found.support.clone(),
                target: target.clone(),
                kind: RepKind::Sign,
                witness_point: None,
            },
            &found.certificate,
        )
        .unwrap();
    }

    #[test]
    fn weak_minimum_on_three_points() {
        let target = TargetFunction::parity(Grid::range(1, 0, 2).unwrap());
        let found = min_sparsity(&target, RepKind::WeakSign, &cfg(2)).unwrap();
        assert_eq!(found.k, 2);
        assert!(found.certificate.witness_point.is_some());
    }

    #[test]
    fn min_degree_examples() {
        let target = TargetFunction::parity(Grid::range(2, 0, 1).unwrap());
        let found = min_degree(&target, RepKind::Sign, &cfg(1)).unwrap();
        assert_eq!(found.degree, 2);
        let weak = min_degree(&target, RepKind::WeakSign, &cfg(1)).unwrap();
        assert_eq!(weak.degree, 2);
    }

    #[test]
    fn census_small_cases_all_forced() {
        for n in 1..=2 {
            let report = coefficient_sign_census(n, &SearchConfig::default()).unwrap();
            assert_eq!(report.entries.len(), 1 << n);
            assert!(report.all_forced);
        }
    }

    #[test]
    fn symmetry_pruning_keeps_the_result() {
        let target = TargetFunction::parity(Grid::range(2, 0, 2).unwrap());
        let plain = min_sparsity(&target, RepKind::Sign, &cfg(2)).unwrap();
        let mut sym_cfg = cfg(2);
        sym_cfg.symmetry = true;
        let pruned = min_sparsity(&target, RepKind::Sign, &sym_cfg).unwrap();
        assert_eq!(plain.k, pruned.k);
        assert_eq!(plain.support, pruned.support);
        assert_eq!(plain.witness, pruned.witness);
        assert!(pruned.stats.subsets_skipped > 0);
    }

    #[test]
    fn parallel_matches_serial() {
        let target = TargetFunction::parity(Grid::range(2, 0, 2).unwrap());
        let serial = min_sparsity(&target, RepKind::Sign, &cfg(2)).unwrap();
        let mut par_cfg = cfg(2);
        par_cfg.threads = Some(4);
        let parallel = min_sparsity(&target, RepKind::Sign, &par_cfg).unwrap();
        assert_eq!(serial.k, parallel.k);
        assert_eq!(serial.support, parallel.support);
        assert_eq!(serial.witness, parallel.witness);
        assert_eq!(serial.stats, parallel.stats);
    }

    #[test]
    fn caps_refuse_rather_than_run() {
        let target = TargetFunction::parity(Grid::range(2, 0, 1).unwrap());
        let mut small = cfg(1);
        small.subset_cap = 3;
        assert!(matches!(
            min_sparsity(&target, RepKind::Sign, &small),
            Err(Error::CapExceeded(_))
        ));
        let mut tiny_grid = cfg(1);
        tiny_grid.grid_cap = 2;
        assert!(matches!(
            min_sparsity(&target, RepKind::Sign, &tiny_grid),
            Err(Error::GridTooLarge { .. })
        ));
        let mut capped_support = cfg(1);
        capped_support.max_support = Some(2);
        assert!(matches!(
            min_sparsity(&target, RepKind::Sign, &capped_support),
            Err(Error::SearchExhausted { max_support: 2 })
        ));
    }
}
