//! Text and structured formats for polynomials.
//!
//! The text form is a signed sum of terms like `3/4*x1^2*x2`; printing uses
//! descending graded-lexicographic order and round-trips bit-exactly through
//! the parser. The structured form is a JSON object with the dimension and a
//! list of `{exponents, coeff}` records with coefficients as `p/q` strings.

use std::fmt;

use num_traits::{One, Signed};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::{ExponentVector, SparsePoly};
use crate::rational::{parse_rational, Rational};

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Leading (highest) term first.
        for (ev, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let vars: Vec<String> = ev
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, e)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Parses the text polynomial format. With `dimension = None` the dimension
/// is inferred as the largest variable index mentioned (so `"0"` or any
/// constant needs an explicit dimension).
pub fn parse_poly(text: &str, dimension: Option<usize>) -> Result<SparsePoly> {
    let raw_terms = split_terms(text)?;
    // (coefficient, exponents-by-1-based-var-index)
    let mut parsed: Vec<(Rational, Vec<(usize, u32)>)> = Vec::new();
    let mut max_var = 0usize;
    for (sign, body) in raw_terms {
        let (coeff, factors) = parse_term(&body)?;
        let coeff = if sign < 0 { -coeff } else { coeff };
        for &(var, _) in &factors {
            max_var = max_var.max(var);
        }
        parsed.push((coeff, factors));
    }
    let dim = match dimension {
        Some(d) => {
            if max_var > d {
                return Err(Error::Parse(format!(
                    "variable x{max_var} exceeds dimension {d}"
                )));
            }
            d
        }
        None => {
            if max_var == 0 {
                return Err(Error::Parse(
                    "cannot infer dimension from a constant polynomial".into(),
                ));
            }
            max_var
        }
    };
    let terms = parsed.into_iter().map(|(coeff, factors)| {
        let mut exps = vec![0u32; dim];
        for (var, e) in factors {
            exps[var - 1] += e;
        }
        (ExponentVector::new(exps), coeff)
    });
    SparsePoly::from_terms(dim, terms)
}

/// Splits `a - b + c` into signed term bodies.
fn split_terms(text: &str) -> Result<Vec<(i8, String)>> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Parse("empty polynomial text".into()));
    }
    let mut out: Vec<(i8, String)> = Vec::new();
    let mut sign: i8 = 1;
    let mut cur = String::new();
    let mut seen_any = false;
    for ch in text.chars() {
        match ch {
            '+' | '-' => {
                if cur.trim().is_empty() && !seen_any {
                    // leading sign
                    if ch == '-' {
                        sign = -sign;
                    }
                } else if cur.trim().is_empty() {
                    return Err(Error::Parse(format!("dangling operator in {text:?}")));
                } else {
                    out.push((sign, cur.trim().to_string()));
                    cur.clear();
                    sign = if ch == '-' { -1 } else { 1 };
                }
                seen_any = true;
            }
            _ => {
                cur.push(ch);
                if !ch.is_whitespace() {
                    seen_any = true;
                }
            }
        }
    }
    if cur.trim().is_empty() {
        return Err(Error::Parse(format!("trailing operator in {text:?}")));
    }
    out.push((sign, cur.trim().to_string()));
    Ok(out)
}

/// Parses one term body like `3/4*x1^2*x2` into its coefficient and factors.
fn parse_term(body: &str) -> Result<(Rational, Vec<(usize, u32)>)> {
    let mut coeff = Rational::one();
    let mut factors: Vec<(usize, u32)> = Vec::new();
    let mut saw_coeff = false;
    for piece in body.split('*') {
        let piece = piece.trim();
        if piece.is_empty() {
            return Err(Error::Parse(format!("empty factor in term {body:?}")));
        }
        if piece.starts_with('x') || piece.starts_with('X') {
            let rest = &piece[1..];
            let (var_s, exp_s) = match rest.split_once('^') {
                Some((v, e)) => (v, Some(e)),
                None => (rest, None),
            };
            let var: usize = var_s
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad variable in {piece:?}")))?;
            if var == 0 {
                return Err(Error::Parse("variable indices start at x1".into()));
            }
            let exp: u32 = match exp_s {
                Some(e) => e
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in {piece:?}")))?,
                None => 1,
            };
            factors.push((var, exp));
        } else {
            if saw_coeff {
                return Err(Error::Parse(format!(
                    "multiple coefficients in term {body:?}"
                )));
            }
            coeff = parse_rational(piece)?;
            saw_coeff = true;
        }
    }
    Ok((coeff, factors))
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exponents: Vec<u32>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    dimension: usize,
    terms: Vec<TermRepr>,
}

impl Serialize for SparsePoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = PolyRepr {
            dimension: self.dimension(),
            terms: self
                .terms()
                .map(|(ev, c)| TermRepr {
                    exponents: ev.exponents().to_vec(),
                    coeff: c.to_string(),
                })
                .collect(),
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SparsePoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(d)?;
        let terms: std::result::Result<Vec<_>, _> = repr
            .terms
            .into_iter()
            .map(|t| {
                parse_rational(&t.coeff).map(|c| (ExponentVector::new(t.exponents), c))
            })
            .collect();
        SparsePoly::from_terms(repr.dimension, terms.map_err(serde::de::Error::custom)?)
            .map_err(serde::de::Error::custom)
    }
}

impl Serialize for ExponentVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.exponents().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExponentVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(ExponentVector::new(Vec::<u32>::deserialize(d)?))
    }
}
