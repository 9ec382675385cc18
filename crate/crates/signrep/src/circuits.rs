//! Threshold-of-AND circuits over Boolean inputs.
//!
//! A circuit is one threshold gate fed by AND gates; each AND gate reads a
//! disjoint pair of variable sets `(I, J)` and computes
//! `prod_{i in I} x_i prod_{j in J} (1 - x_j)`, so the circuit's value is the
//! sign of `w_0 + sum_k w_k B_k(x)`. Circuit size is the number of AND gates,
//! and computing `f` is the same as that linear combination sign-representing
//! `f` over the basis `B_n` of all `3^n` gate polynomials. The constant gate
//! `(I, J) = (empty, empty)` is a basis element like any other and counts
//! toward the size when used.
//!
//! `min_spr_b` computes the exact minimum number of basis elements by subset
//! feasibility over the basis, reusing the search engine; the builders
//! produce the block-product circuits for parity (5 gates per 3 variables)
//! and inner product (4 gates per 2 pairs).

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::SparsePoly;
use crate::rational::{parse_rational, rat, Rational};
use crate::search::{
    pool_permutations_of_gates, run_pool_search, thread_count, PoolSearch, SearchConfig,
    SearchStats,
};
use crate::target::TargetFunction;
use crate::verify::{verify_with_cap, RepKind, VerificationReport};

/// One AND gate: reads variables `I` positively and `J` negated. The sets
/// must be disjoint (otherwise the gate is constantly 0).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AndGateTerm {
    pub positive: BTreeSet<usize>,
    pub negated: BTreeSet<usize>,
}

impl AndGateTerm {
    pub fn new<I1, I2>(positive: I1, negated: I2) -> Result<Self>
    where
        I1: IntoIterator<Item = usize>,
        I2: IntoIterator<Item = usize>,
    {
        let positive: BTreeSet<usize> = positive.into_iter().collect();
        let negated: BTreeSet<usize> = negated.into_iter().collect();
        if !positive.is_disjoint(&negated) {
            return Err(Error::OverlappingGateSets);
        }
        Ok(AndGateTerm { positive, negated })
    }

    /// Gate value at a 0/1 point.
    pub fn eval(&self, point: &[i64]) -> u8 {
        let pos_ok = self.positive.iter().all(|&i| point[i] == 1);
        let neg_ok = self.negated.iter().all(|&j| point[j] == 0);
        u8::from(pos_ok && neg_ok)
    }
}

/// The gate's multilinear polynomial `prod_{i in I} x_i prod_{j in J} (1 - x_j)`,
/// expanded. Variables are 0-based; `n` is the ambient dimension.
pub fn gate_poly(term: &AndGateTerm, n: usize) -> Result<SparsePoly> {
    if let Some(&v) = term.positive.union(&term.negated).max() {
        if v >= n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v + 1,
            });
        }
    }
    if !term.positive.is_disjoint(&term.negated) {
        return Err(Error::OverlappingGateSets);
    }
    let mut p = SparsePoly::constant(n, rat(1));
    for &i in &term.positive {
        p = p.mul(&SparsePoly::variable(n, i));
    }
    for &j in &term.negated {
        let factor = SparsePoly::constant(n, rat(1)).sub(&SparsePoly::variable(n, j));
        p = p.mul(&factor);
    }
    Ok(p)
}

/// All `3^n` gates in deterministic order: by `|I| + |J|`, then by the
/// touched variable set, then all-positive before mixed assignments.
pub fn enumerate_basis(n: usize) -> Result<Vec<AndGateTerm>> {
    if n > 16 {
        return Err(Error::CapExceeded(format!("basis of 3^{n} gates")));
    }
    let mut out = Vec::with_capacity(3usize.pow(n as u32));
    for size in 0..=n {
        // variable subsets of this size, lexicographic
        let vars: Vec<usize> = (0..n).collect();
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            if size > 0 && combo[0] >= n {
                break;
            }
            // membership mask: bit t set sends combo[t] to J
            for mask in 0..(1u32 << size) {
                let mut positive = BTreeSet::new();
                let mut negated = BTreeSet::new();
                for (t, &c) in combo.iter().enumerate() {
                    if mask & (1 << t) == 0 {
                        positive.insert(vars[c]);
                    } else {
                        negated.insert(vars[c]);
                    }
                }
                out.push(AndGateTerm { positive, negated });
            }
            if size == 0 {
                break;
            }
            // next combination
            let mut pos = size;
            loop {
                if pos == 0 {
                    combo[0] = n; // sentinel: done
                    break;
                }
                pos -= 1;
                if combo[pos] + 1 <= n - (size - pos) {
                    combo[pos] += 1;
                    for p in pos + 1..size {
                        combo[p] = combo[p - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
    Ok(out)
}

/// A threshold-of-AND circuit: weighted AND gates plus a bias feeding one
/// threshold gate. The threshold value must never be exactly zero on the
/// hypercube; verification reports such points as failures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThrAndCircuit {
    pub dimension: usize,
    pub gates: Vec<AndGateTerm>,
    pub weights: Vec<Rational>,
    pub bias: Rational,
}

impl ThrAndCircuit {
    pub fn new(
        dimension: usize,
        gates: Vec<AndGateTerm>,
        weights: Vec<Rational>,
        bias: Rational,
    ) -> Result<Self> {
        if gates.len() != weights.len() {
            return Err(Error::BadArity(format!(
                "{} gates but {} weights",
                gates.len(),
                weights.len()
            )));
        }
        for (i, g) in gates.iter().enumerate() {
            if !g.positive.is_disjoint(&g.negated) {
                return Err(Error::OverlappingGateSets);
            }
            if gates[i + 1..].contains(g) {
                return Err(Error::Parse("duplicate gate".into()));
            }
        }
        Ok(ThrAndCircuit {
            dimension,
            gates,
            weights,
            bias,
        })
    }

    /// Number of AND gates (the circuit size).
    pub fn size(&self) -> usize {
        self.gates.len()
    }

    /// The circuit's polynomial `bias + sum w_k B_k`, expanded.
    pub fn poly(&self) -> Result<SparsePoly> {
        let mut p = SparsePoly::constant(self.dimension, self.bias.clone());
        for (gate, w) in self.gates.iter().zip(&self.weights) {
            p = p.add(&gate_poly(gate, self.dimension)?.scale(w));
        }
        Ok(p)
    }

    /// Threshold value at a point, before taking the sign.
    pub fn eval(&self, point: &[i64]) -> Result<Rational> {
        if point.len() != self.dimension {
            return Err(Error::DimensionMismatch {
                expected: self.dimension,
                found: point.len(),
            });
        }
        let mut acc = self.bias.clone();
        for (gate, w) in self.gates.iter().zip(&self.weights) {
            if gate.eval(point) == 1 {
                acc += w;
            }
        }
        Ok(acc)
    }
}

/// Checks that the circuit computes `f`: its expanded polynomial must sign
/// represent `f`, which in particular rejects any point where the threshold
/// value is exactly zero.
pub fn circuit_verify(
    circuit: &ThrAndCircuit,
    target: &TargetFunction,
) -> Result<VerificationReport> {
    if target.grid().values() != [0, 1] {
        return Err(Error::InvalidGrid(
            "threshold circuits are defined over {0,1} inputs".into(),
        ));
    }
    verify_with_cap(
        &circuit.poly()?,
        target,
        RepKind::Sign,
        crate::verify::DEFAULT_GRID_CAP,
    )
}

/// Result of an exact minimum-size circuit search.
#[derive(Clone, Debug)]
pub struct CircuitSearch {
    pub k: usize,
    pub circuit: ThrAndCircuit,
    pub stats: SearchStats,
}

/// Exact minimum number of basis gates in any sign-representing combination
/// for `f`, by exhaustive subset feasibility over the `3^n` gate basis.
/// The witness is the first feasible subset in enumeration order.
pub fn min_spr_b(target: &TargetFunction, cfg: &SearchConfig) -> Result<CircuitSearch> {
    let grid = target.grid();
    if grid.values() != [0, 1] {
        return Err(Error::InvalidGrid(
            "threshold circuits are defined over {0,1} inputs".into(),
        ));
    }
    let n = grid.dimension();
    let basis = enumerate_basis(n)?;
    let points: Vec<Vec<i64>> = grid.points().collect();
    let values: Vec<Vec<BigInt>> = basis
        .iter()
        .map(|g| points.iter().map(|p| BigInt::from(g.eval(p))).collect())
        .collect();
    let signs: Vec<i8> = points
        .iter()
        .map(|p| target.required_sign(p))
        .collect::<Result<_>>()?;
    let perms = if cfg.symmetry {
        pool_permutations_of_gates(&basis, &crate::search::target_symmetries(target))?
    } else {
        Vec::new()
    };
    let max_k = cfg.max_support.unwrap_or(basis.len());
    let search = PoolSearch {
        values: &values,
        signs: &signs,
        kind: RepKind::Sign,
        perms: &perms,
        subset_cap: cfg.subset_cap,
        threads: thread_count(cfg.threads),
        max_k,
    };
    let hit = run_pool_search(&search)?.ok_or(Error::SearchExhausted { max_support: max_k })?;
    let gates: Vec<AndGateTerm> = hit.subset.iter().map(|&i| basis[i].clone()).collect();
    let circuit = ThrAndCircuit::new(n, gates, hit.coeffs, Rational::zero())?;
    Ok(CircuitSearch {
        k: hit.k,
        circuit,
        stats: hit.stats,
    })
}

/// The 4-gate exact representation of parity on three bits.
fn parity_block_gates() -> Vec<(AndGateTerm, Rational)> {
    let mk = |i: &[usize], j: &[usize]| AndGateTerm {
        positive: i.iter().copied().collect(),
        negated: j.iter().copied().collect(),
    };
    vec![
        (mk(&[0, 1, 2], &[]), rat(1)),
        (mk(&[0], &[1, 2]), rat(1)),
        (mk(&[1], &[0, 2]), rat(1)),
        (mk(&[2], &[0, 1]), rat(1)),
    ]
}

/// Parity circuit with exactly `5^{n/3}` gates: the product over blocks of
/// three variables of `1 - 2 Q(block)`, where `Q` exactly represents parity
/// on the block. Requires `n` divisible by 3.
pub fn build_parity_circuit(n: usize) -> Result<ThrAndCircuit> {
    if n == 0 || n % 3 != 0 {
        return Err(Error::BadArity(format!("n = {n} is not a positive multiple of 3")));
    }
    let blocks = n / 3;
    // Each block contributes the 5 weighted gates of 1 - 2Q; the product of
    // block terms multiplies gate polynomials on disjoint variables, which is
    // again a gate polynomial with the product weight.
    let mut terms: Vec<(AndGateTerm, Rational)> =
        vec![(AndGateTerm::new([], [])?, rat(1))];
    for b in 0..blocks {
        let offset = 3 * b;
        let mut block_terms: Vec<(AndGateTerm, Rational)> =
            vec![(AndGateTerm::new([], [])?, rat(1))];
        for (gate, w) in parity_block_gates() {
            let shifted = AndGateTerm {
                positive: gate.positive.iter().map(|&v| v + offset).collect(),
                negated: gate.negated.iter().map(|&v| v + offset).collect(),
            };
            block_terms.push((shifted, w * rat(-2)));
        }
        let mut next = Vec::with_capacity(terms.len() * block_terms.len());
        for (t, wt) in &terms {
            for (u, wu) in &block_terms {
                let merged = AndGateTerm {
                    positive: t.positive.union(&u.positive).copied().collect(),
                    negated: t.negated.union(&u.negated).copied().collect(),
                };
                next.push((merged, wt * wu));
            }
        }
        terms = next;
    }
    let (gates, weights): (Vec<_>, Vec<_>) = terms.into_iter().unzip();
    ThrAndCircuit::new(n, gates, weights, Rational::zero())
}

/// Inner-product circuit with exactly `2^n` gates for `n` pairs (`n` even):
/// the product over blocks of two pairs of `1 - 2 Q(block)`, where
/// `Q = x_a y_a + x_b y_b - 2 x_a y_a x_b y_b` exactly represents the block's
/// inner product. Variables are laid out `(x_1..x_n, y_1..y_n)`.
pub fn build_ip_circuit(pairs: usize) -> Result<ThrAndCircuit> {
    if pairs == 0 || pairs % 2 != 0 {
        return Err(Error::BadArity(format!(
            "pair count {pairs} is not a positive even number"
        )));
    }
    let dim = 2 * pairs;
    let mut terms: Vec<(AndGateTerm, Rational)> =
        vec![(AndGateTerm::new([], [])?, rat(1))];
    for b in 0..pairs / 2 {
        let (pa, pb) = (2 * b, 2 * b + 1);
        let (xa, ya) = (pa, pairs + pa);
        let (xb, yb) = (pb, pairs + pb);
        let block_terms: Vec<(AndGateTerm, Rational)> = vec![
            (AndGateTerm::new([], [])?, rat(1)),
            (AndGateTerm::new([xa, ya], [])?, rat(-2)),
            (AndGateTerm::new([xb, yb], [])?, rat(-2)),
            (AndGateTerm::new([xa, ya, xb, yb], [])?, rat(4)),
        ];
        let mut next = Vec::with_capacity(terms.len() * block_terms.len());
        for (t, wt) in &terms {
            for (u, wu) in &block_terms {
                let merged = AndGateTerm {
                    positive: t.positive.union(&u.positive).copied().collect(),
                    negated: t.negated.union(&u.negated).copied().collect(),
                };
                next.push((merged, wt * wu));
            }
        }
        terms = next;
    }
    let (gates, weights): (Vec<_>, Vec<_>) = terms.into_iter().unzip();
    ThrAndCircuit::new(dim, gates, weights, Rational::zero())
}

#[derive(Serialize, Deserialize)]
struct GateRepr {
    #[serde(rename = "I")]
    i: Vec<usize>,
    #[serde(rename = "J")]
    j: Vec<usize>,
    w: String,
}

#[derive(Serialize, Deserialize)]
struct CircuitRepr {
    n: usize,
    gates: Vec<GateRepr>,
    bias: String,
}

impl Serialize for ThrAndCircuit {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        // 1-based variable indices in the file format
        let repr = CircuitRepr {
            n: self.dimension,
            gates: self
                .gates
                .iter()
                .zip(&self.weights)
                .map(|(g, w)| GateRepr {
                    i: g.positive.iter().map(|&v| v + 1).collect(),
                    j: g.negated.iter().map(|&v| v + 1).collect(),
                    w: w.to_string(),
                })
                .collect(),
            bias: self.bias.to_string(),
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ThrAndCircuit {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as DeError;
        let repr = CircuitRepr::deserialize(d)?;
        let mut gates = Vec::with_capacity(repr.gates.len());
        let mut weights = Vec::with_capacity(repr.gates.len());
        for g in repr.gates {
            if g.i.iter().chain(&g.j).any(|&v| v == 0 || v > repr.n) {
                return Err(D::Error::custom("gate variable out of range"));
            }
            gates.push(
                AndGateTerm::new(
                    g.i.iter().map(|&v| v - 1),
                    g.j.iter().map(|&v| v - 1),
                )
                .map_err(D::Error::custom)?,
            );
            weights.push(parse_rational(&g.w).map_err(D::Error::custom)?);
        }
        let bias = parse_rational(&repr.bias).map_err(D::Error::custom)?;
        ThrAndCircuit::new(repr.n, gates, weights, bias).map_err(D::Error::custom)
    }
}

/// Splits a circuit's polynomial by the role of one variable: gates reading
/// `var` positively contribute to `A`, gates reading it negated to `B`, and
/// the rest (bias included) to `C`, so that `P = x A + (1 - x) B + C` with
/// `A`, `B`, `C` free of `var`.
pub fn split_by_variable(
    circuit: &ThrAndCircuit,
    var: usize,
) -> Result<(SparsePoly, SparsePoly, SparsePoly)> {
    let n = circuit.dimension;
    let mut a = SparsePoly::zero(n);
    let mut b = SparsePoly::zero(n);
    let mut c = SparsePoly::constant(n, circuit.bias.clone());
    for (gate, w) in circuit.gates.iter().zip(&circuit.weights) {
        let mut stripped = gate.clone();
        let part = if stripped.positive.remove(&var) {
            &mut a
        } else if stripped.negated.remove(&var) {
            &mut b
        } else {
            &mut c
        };
        *part = part.add(&gate_poly(&stripped, n)?.scale(w));
    }
    Ok((a, b, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_poly;
    use crate::grid::Grid;

    #[test]
    fn gate_poly_examples() {
        let n = 2;
        let g1 = AndGateTerm::new([0], []).unwrap();
        assert_eq!(gate_poly(&g1, n).unwrap(), parse_poly("x1", Some(2)).unwrap());
        let g2 = AndGateTerm::new([], [0]).unwrap();
        assert_eq!(
            gate_poly(&g2, n).unwrap(),
            parse_poly("1 - x1", Some(2)).unwrap()
        );
        let g3 = AndGateTerm::new([0], [1]).unwrap();
        assert_eq!(
            gate_poly(&g3, n).unwrap(),
            parse_poly("x1 - x1*x2", Some(2)).unwrap()
        );
        assert!(AndGateTerm::new([0], [0]).is_err());
        assert!(gate_poly(&g3, 1).is_err());
    }

    #[test]
    fn basis_enumeration() {
        let b1 = enumerate_basis(1).unwrap();
        assert_eq!(b1.len(), 3);
        assert_eq!(b1[0], AndGateTerm::new([], []).unwrap());
        assert_eq!(b1[1], AndGateTerm::new([0], []).unwrap());
        assert_eq!(b1[2], AndGateTerm::new([], [0]).unwrap());
        assert_eq!(enumerate_basis(2).unwrap().len(), 9);
        let b0 = enumerate_basis(0).unwrap();
        assert_eq!(b0.len(), 1);
    }

    #[test]
    fn xor_circuit_verifies() {
        let gates = vec![
            AndGateTerm::new([0], [1]).unwrap(),
            AndGateTerm::new([1], [0]).unwrap(),
        ];
        let circuit =
            ThrAndCircuit::new(2, gates, vec![rat(-2), rat(-2)], rat(1)).unwrap();
        let target = TargetFunction::parity(Grid::range(2, 0, 1).unwrap());
        assert!(circuit_verify(&circuit, &target).unwrap().pass);
        assert_eq!(
            circuit.poly().unwrap(),
            parse_poly("1 - 2*x1 - 2*x2 + 4*x1*x2", Some(2)).unwrap()
        );
        // empty circuit with positive bias computes the constant 0 function
        let empty = ThrAndCircuit::new(1, vec![], vec![], rat(1)).unwrap();
        let parity1 = TargetFunction::parity(Grid::range(1, 0, 1).unwrap());
        assert!(!circuit_verify(&empty, &parity1).unwrap().pass);
    }

    #[test]
    fn parity_block_circuit() {
        let c = build_parity_circuit(3).unwrap();
        assert_eq!(c.size(), 5);
        let all_positive = AndGateTerm::new([0, 1, 2], []).unwrap();
        assert!(c.gates.contains(&all_positive));
        let target = TargetFunction::parity(Grid::range(3, 0, 1).unwrap());
        assert!(circuit_verify(&c, &target).unwrap().pass);
        assert!(build_parity_circuit(4).is_err());
        assert!(build_parity_circuit(0).is_err());
    }

    #[test]
    fn ip_block_circuit() {
        let c = build_ip_circuit(2).unwrap();
        assert_eq!(c.size(), 4);
        let target = TargetFunction::inner_product(Grid::range(4, 0, 1).unwrap()).unwrap();
        assert!(circuit_verify(&c, &target).unwrap().pass);
        // all gates are positive-only in this construction
        assert!(c.gates.iter().all(|g| g.negated.is_empty()));
        assert!(build_ip_circuit(1).is_err());
    }

    #[test]
    fn min_size_for_one_variable_parity() {
        let target = TargetFunction::parity(Grid::range(1, 0, 1).unwrap());
        let found = min_spr_b(&target, &SearchConfig::default()).unwrap();
        assert_eq!(found.k, 2);
        assert!(circuit_verify(&found.circuit, &target).unwrap().pass);
    }

    #[test]
    fn circuit_json_round_trip() {
        let c = build_ip_circuit(2).unwrap();
        let json = serde_json::to_string(&c).unwrap();
        let back: ThrAndCircuit = serde_json::from_str(&json).unwrap();
        assert_eq!(c, back);
        assert!(json.contains("\"I\""));
        assert!(serde_json::from_str::<ThrAndCircuit>("{\"n\":1,\"gates\":[{\"I\":[2],\"J\":[],\"w\":\"1\"}],\"bias\":\"0\"}").is_err());
    }

    #[test]
    fn split_by_variable_reassembles() {
        let c = build_parity_circuit(3).unwrap();
        let (a, b, cc) = split_by_variable(&c, 2).unwrap();
        let x = SparsePoly::variable(3, 2);
        let one_minus_x = SparsePoly::constant(3, rat(1)).sub(&x);
        let rebuilt = x.mul(&a).add(&one_minus_x.mul(&b)).add(&cc);
        assert_eq!(rebuilt, c.poly().unwrap());
    }
}
