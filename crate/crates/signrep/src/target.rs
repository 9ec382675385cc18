//! Target Boolean functions over a grid: parity, inner product mod 2, and
//! explicit truth tables.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::verify::DEFAULT_GRID_CAP;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TargetKind {
    /// `sum a_i mod 2`.
    Parity,
    /// `sum a_i b_i mod 2` over paired variables `(x_1..x_n, y_1..y_n)`;
    /// requires an even dimension and the point set {0,1}.
    InnerProduct,
    /// Explicit 0/1 value for every grid point.
    TruthTable(BTreeMap<Vec<i64>, u8>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetFunction {
    grid: Grid,
    kind: TargetKind,
}

impl TargetFunction {
    pub fn parity(grid: Grid) -> Self {
        TargetFunction {
            grid,
            kind: TargetKind::Parity,
        }
    }

    pub fn inner_product(grid: Grid) -> Result<Self> {
        if grid.dimension() % 2 != 0 {
            return Err(Error::BadArity(
                "inner product needs an even number of variables".into(),
            ));
        }
        if grid.values() != [0, 1] {
            return Err(Error::InvalidGrid(
                "inner product is defined over the point set {0,1}".into(),
            ));
        }
        Ok(TargetFunction {
            grid,
            kind: TargetKind::InnerProduct,
        })
    }

    /// Builds an explicit truth-table target. The table must assign a 0/1
    /// value to every grid point exactly once.
    pub fn truth_table(grid: Grid, table: BTreeMap<Vec<i64>, u8>) -> Result<Self> {
        let points = grid.point_count();
        if points > DEFAULT_GRID_CAP as u128 {
            return Err(Error::GridTooLarge {
                points,
                cap: DEFAULT_GRID_CAP,
            });
        }
        if table.len() as u128 != points {
            return Err(Error::InvalidGrid(format!(
                "truth table has {} entries for {} grid points",
                table.len(),
                points
            )));
        }
        for (point, value) in &table {
            if !grid.contains(point) {
                return Err(Error::PointOffGrid(point.clone()));
            }
            if *value > 1 {
                return Err(Error::Parse(format!(
                    "truth table value {value} at {point:?} is not 0/1"
                )));
            }
        }
        Ok(TargetFunction {
            grid,
            kind: TargetKind::TruthTable(table),
        })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn kind(&self) -> &TargetKind {
        &self.kind
    }

    /// Number of variable pairs for an inner-product target.
    pub fn pairs(&self) -> usize {
        self.grid.dimension() / 2
    }

    pub fn eval(&self, point: &[i64]) -> Result<u8> {
        if !self.grid.contains(point) {
            return Err(Error::PointOffGrid(point.to_vec()));
        }
        Ok(match &self.kind {
            TargetKind::Parity => (point.iter().sum::<i64>().rem_euclid(2)) as u8,
            TargetKind::InnerProduct => {
                let n = self.pairs();
                let dot: i64 = (0..n).map(|i| point[i] * point[n + i]).sum();
                (dot.rem_euclid(2)) as u8
            }
            TargetKind::TruthTable(table) => *table
                .get(point)
                .expect("truth table covers every grid point"),
        })
    }

    /// `(-1)^{f(point)}`: the sign a representation must take there.
    pub fn required_sign(&self, point: &[i64]) -> Result<i8> {
        Ok(if self.eval(point)? == 0 { 1 } else { -1 })
    }

    /// The pointwise complement `1 - f`, materialized as a truth table.
    pub fn complement(&self) -> Result<TargetFunction> {
        let mut table = BTreeMap::new();
        for point in self.grid.points() {
            let v = self.eval(&point)?;
            table.insert(point, 1 - v);
        }
        TargetFunction::truth_table(self.grid.clone(), table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_examples() {
        let f = TargetFunction::parity(Grid::range(2, 0, 1).unwrap());
        assert_eq!(f.eval(&[0, 0]).unwrap(), 0);
        let g = TargetFunction::parity(Grid::new(2, vec![1, 2]).unwrap());
        assert_eq!(g.eval(&[1, 2]).unwrap(), 1);
        assert!(matches!(
            g.eval(&[0, 1]),
            Err(Error::PointOffGrid(_))
        ));
    }

    #[test]
    fn inner_product_examples() {
        let f = TargetFunction::inner_product(Grid::range(4, 0, 1).unwrap()).unwrap();
        // layout (x1, x2, y1, y2); IP(1,1 ; 1,0) = 1*1 + 1*0 = 1
        assert_eq!(f.eval(&[1, 1, 1, 0]).unwrap(), 1);
        assert_eq!(f.eval(&[1, 0, 0, 1]).unwrap(), 0);
        assert!(TargetFunction::inner_product(Grid::range(3, 0, 1).unwrap()).is_err());
        assert!(TargetFunction::inner_product(Grid::range(2, 0, 2).unwrap()).is_err());
    }

    #[test]
    fn truth_table_must_cover_grid() {
        let grid = Grid::range(1, 0, 1).unwrap();
        let mut table = BTreeMap::new();
        table.insert(vec![0], 1u8);
        assert!(TargetFunction::truth_table(grid.clone(), table.clone()).is_err());
        table.insert(vec![1], 0u8);
        let f = TargetFunction::truth_table(grid, table).unwrap();
        assert_eq!(f.eval(&[0]).unwrap(), 1);
        assert_eq!(f.required_sign(&[0]).unwrap(), -1);
        let g = f.complement().unwrap();
        assert_eq!(g.eval(&[0]).unwrap(), 0);
        assert_eq!(g.eval(&[1]).unwrap(), 1);
    }
}
