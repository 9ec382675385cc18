//! Finite evaluation grids `A^n` for a set `A` of distinct non-negative
//! integers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The grid `A^n`: every coordinate ranges over the same sorted point set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    dimension: usize,
    values: Vec<i64>,
}

impl Grid {
    /// Builds a grid, sorting `values`. Requires `dimension >= 1`, at least
    /// two distinct values, and all values non-negative.
    pub fn new(dimension: usize, mut values: Vec<i64>) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::InvalidGrid("dimension must be at least 1".into()));
        }
        values.sort_unstable();
        if values.len() < 2 {
            return Err(Error::InvalidGrid("need at least two points".into()));
        }
        if values.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidGrid("points must be distinct".into()));
        }
        if values[0] < 0 {
            return Err(Error::InvalidGrid("points must be non-negative".into()));
        }
        Ok(Grid { dimension, values })
    }

    /// The inclusive range `{lo, ..., hi}^dimension`.
    pub fn range(dimension: usize, lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidGrid(format!("empty range {lo}..{hi}")));
        }
        Grid::new(dimension, (lo..=hi).collect())
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// The sorted point set `A`.
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// `m = |A|`.
    pub fn m(&self) -> usize {
        self.values.len()
    }

    pub fn max_value(&self) -> i64 {
        *self.values.last().expect("grid has points")
    }

    /// Total number of points `m^n`.
    pub fn point_count(&self) -> u128 {
        (self.values.len() as u128).pow(self.dimension as u32)
    }

    pub fn contains(&self, point: &[i64]) -> bool {
        point.len() == self.dimension && point.iter().all(|v| self.values.binary_search(v).is_ok())
    }

    /// Iterates all grid points in odometer order: the last coordinate varies
    /// fastest. This order is the canonical one used for constraint rows,
    /// witness enumeration and counterexample reporting.
    pub fn points(&self) -> PointIter<'_> {
        PointIter {
            grid: self,
            index: vec![0; self.dimension],
            done: false,
        }
    }

    /// Parses `a..b` (inclusive) or a comma-separated list of values.
    pub fn parse_values(text: &str) -> Result<Vec<i64>> {
        let text = text.trim();
        if let Some((lo, hi)) = text.split_once("..") {
            let lo: i64 = lo
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad grid bound {lo:?}")))?;
            let hi: i64 = hi
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad grid bound {hi:?}")))?;
            if lo > hi {
                return Err(Error::Parse(format!("empty grid range {text:?}")));
            }
            Ok((lo..=hi).collect())
        } else {
            text.split(',')
                .map(|v| {
                    v.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad grid value {v:?}")))
                })
                .collect()
        }
    }
}

pub struct PointIter<'a> {
    grid: &'a Grid,
    index: Vec<usize>,
    done: bool,
}

impl Iterator for PointIter<'_> {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        if self.done {
            return None;
        }
        let point: Vec<i64> = self.index.iter().map(|&i| self.grid.values[i]).collect();
        // advance odometer, last coordinate fastest
        let mut pos = self.grid.dimension;
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.index[pos] += 1;
            if self.index[pos] < self.grid.values.len() {
                break;
            }
            self.index[pos] = 0;
        }
        Some(point)
    }
}
