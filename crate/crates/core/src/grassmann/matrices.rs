use std::collections::HashMap;

use itertools::Itertools;
use num_traits::Zero;
use serde::Serialize;

use super::{GrassmannError, PluckerLinearForm, PluckerSpace};
use crate::field::Rational;

/// Default cap on the number of columns of `L` before deduplication.
pub const DEFAULT_COLUMN_BUDGET: usize = 100_000;

/// Where a column came from: column `slot` of `K_b`, optionally pushed
/// through linear map number `map`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColumnSource {
    pub b: Vec<usize>,
    pub slot: usize,
    pub map: Option<usize>,
}

/// A matrix of linear forms in the Plücker variables, stored by columns.
#[derive(Clone, Debug)]
pub struct SymbolicMatrix {
    rows: usize,
    columns: Vec<Vec<PluckerLinearForm>>,
    /// For each column, every source that produced it (several after
    /// deduplication).
    sources: Vec<Vec<ColumnSource>>,
}

impl SymbolicMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> &PluckerLinearForm {
        &self.columns[col][row]
    }

    pub fn column(&self, col: usize) -> &[PluckerLinearForm] {
        &self.columns[col]
    }

    pub fn sources(&self, col: usize) -> &[ColumnSource] {
        &self.sources[col]
    }

    /// Numeric matrix (rows of values) at a point of `P(∧^n V)`.
    pub fn evaluate(&self, space: &PluckerSpace, point: &[Rational]) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.columns.iter().map(|c| c[i].eval(space, point)).collect()).collect()
    }

    /// Drop all-zero columns and merge exact duplicates, keeping the first
    /// occurrence's position and every source.
    pub fn dedup(&self) -> SymbolicMatrix {
        let mut index: HashMap<&Vec<PluckerLinearForm>, usize> = HashMap::new();
        let mut columns: Vec<Vec<PluckerLinearForm>> = Vec::new();
        let mut sources: Vec<Vec<ColumnSource>> = Vec::new();
        for (col, src) in self.columns.iter().zip(&self.sources) {
            if col.iter().all(PluckerLinearForm::is_zero) {
                continue;
            }
            match index.get(col) {
                Some(&k) => sources[k].extend(src.iter().cloned()),
                None => {
                    index.insert(col, columns.len());
                    columns.push(col.clone());
                    sources.push(src.clone());
                }
            }
        }
        SymbolicMatrix { rows: self.rows, columns, sources }
    }

    /// Horizontal concatenation.
    pub fn concat(blocks: Vec<SymbolicMatrix>) -> SymbolicMatrix {
        let rows = blocks.first().map(|b| b.rows).unwrap_or(0);
        let mut columns = Vec::new();
        let mut sources = Vec::new();
        for b in blocks {
            assert_eq!(b.rows, rows, "blocks must share a row count");
            columns.extend(b.columns);
            sources.extend(b.sources);
        }
        SymbolicMatrix { rows, columns, sources }
    }

    /// `u * self` for a `W x V` matrix `u`, tagging sources with `map`.
    pub fn apply(&self, u: &[Vec<Rational>], map: usize) -> SymbolicMatrix {
        let columns = self
            .columns
            .iter()
            .map(|col| {
                u.iter()
                    .map(|row| {
                        let mut f = PluckerLinearForm::zero();
                        for (c, entry) in row.iter().zip(col) {
                            if !c.is_zero() {
                                f.add_scaled(entry, c);
                            }
                        }
                        f
                    })
                    .collect()
            })
            .collect();
        let sources = self
            .sources
            .iter()
            .map(|s| s.iter().map(|c| ColumnSource { map: Some(map), ..c.clone() }).collect())
            .collect();
        SymbolicMatrix { rows: u.len(), columns, sources }
    }
}

/// `K_a`: the `dim V x n` matrix with entry `(i, j)` equal to `z_{a[j -> i]}`.
pub fn k_matrix(a: &[usize], dim_v: usize) -> Result<SymbolicMatrix, GrassmannError> {
    if let Some(&bad) = a.iter().find(|&&x| x >= dim_v) {
        return Err(GrassmannError::IndexOutOfRange { index: bad, dim_v });
    }
    let mut columns = Vec::with_capacity(a.len());
    let mut sources = Vec::with_capacity(a.len());
    for j in 0..a.len() {
        let mut tuple = a.to_vec();
        let col = (0..dim_v)
            .map(|i| {
                tuple[j] = i;
                PluckerLinearForm::of_tuple(&tuple)
            })
            .collect();
        columns.push(col);
        sources.push(vec![ColumnSource { b: a.to_vec(), slot: j, map: None }]);
    }
    Ok(SymbolicMatrix { rows: dim_v, columns, sources })
}

/// `L = (K_{b_0} | K_{b_1} | ...)` over every `n`-tuple `b` with entries
/// below `dim V`, in lexicographic order; optionally deduplicated.
pub fn l_matrix(n: usize, dim_v: usize, budget: usize, dedup: bool) -> Result<SymbolicMatrix, GrassmannError> {
    let columns = (dim_v as u128).checked_pow(n as u32).map(|c| c * n as u128);
    match columns {
        Some(c) if c <= budget as u128 => {}
        _ => return Err(GrassmannError::ColumnBudgetExceeded { columns: columns.map(|c| c.to_string()), budget }),
    }
    let blocks: Vec<SymbolicMatrix> = (0..n)
        .map(|_| 0..dim_v)
        .multi_cartesian_product()
        .map(|b| k_matrix(&b, dim_v))
        .collect::<Result<_, _>>()?;
    let l = SymbolicMatrix::concat(blocks);
    Ok(if dedup { l.dedup() } else { l })
}

/// `Λ = (u_0(L) | u_1(L) | ... )`.
pub fn lambda_matrix(l: &SymbolicMatrix, maps: &[Vec<Vec<Rational>>]) -> SymbolicMatrix {
    SymbolicMatrix::concat(maps.iter().enumerate().map(|(k, u)| l.apply(u, k)).collect())
}

/// Every `n`-tuple in lexicographic order, for callers that enumerate the
/// blocks of `L` themselves.
pub fn all_tuples(n: usize, dim_v: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n).map(move |_| 0..dim_v).multi_cartesian_product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn show(m: &SymbolicMatrix) -> Vec<Vec<String>> {
        (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.entry(i, j).to_string()).collect()).collect()
    }

    #[test]
    fn k_examples() {
        let k = k_matrix(&[0], 3).unwrap();
        assert_eq!(show(&k), vec![vec!["z_0"], vec!["z_1"], vec!["z_2"]]);
        let k = k_matrix(&[0, 1], 3).unwrap();
        assert_eq!(show(&k), vec![vec!["z_0_1", "0"], vec!["0", "z_0_1"], vec!["-z_1_2", "z_0_2"]]);
        let k = k_matrix(&[1, 1], 3).unwrap();
        assert_eq!(k.entry(1, 0).to_string(), "0");
        assert!(matches!(k_matrix(&[3], 3), Err(GrassmannError::IndexOutOfRange { index: 3, .. })));
    }

    #[test]
    fn l_examples() {
        let raw = l_matrix(1, 3, DEFAULT_COLUMN_BUDGET, false).unwrap();
        assert_eq!(raw.cols(), 3);
        let l = l_matrix(1, 3, DEFAULT_COLUMN_BUDGET, true).unwrap();
        assert_eq!(l.cols(), 1);
        assert_eq!(l.sources(0).len(), 3);

        let raw = l_matrix(2, 2, DEFAULT_COLUMN_BUDGET, false).unwrap();
        assert_eq!(raw.cols(), 2 * 2usize.pow(2));
        for j in 0..raw.cols() {
            for i in 0..raw.rows() {
                let e = raw.entry(i, j).to_string();
                assert!(["0", "z_0_1", "-z_0_1"].contains(&e.as_str()), "{e}");
            }
        }
        assert!(matches!(l_matrix(5, 12, DEFAULT_COLUMN_BUDGET, true), Err(GrassmannError::ColumnBudgetExceeded { .. })));
    }

    #[test]
    fn column_counts() {
        for (n, dv) in [(1, 2), (2, 3), (3, 3), (2, 4)] {
            assert_eq!(l_matrix(n, dv, DEFAULT_COLUMN_BUDGET, false).unwrap().cols(), n * dv.pow(n as u32));
        }
        // one pair of opposite columns for each (n-1)-subset
        assert_eq!(l_matrix(5, 6, DEFAULT_COLUMN_BUDGET, true).unwrap().cols(), 30);
    }
}
