//! Exact dense and sparse-row elimination over a [`Field`].

use std::collections::BTreeMap;

use crate::field::Field;

/// Rank of a dense matrix given as rows.
pub fn rank<F: Field>(rows: &[Vec<F>]) -> usize {
    let mut m: Vec<Vec<F>> = rows.to_vec();
    row_reduce(&mut m)
}

/// Determinant of a square matrix.
pub fn determinant<F: Field>(rows: &[Vec<F>]) -> F {
    let n = rows.len();
    let mut m: Vec<Vec<F>> = rows.to_vec();
    let mut det = F::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !m[i][col].is_zero()) else {
            return F::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let piv = m[col][col].clone();
        det = det * piv.clone();
        let inv = piv.inv().unwrap();
        for i in col + 1..n {
            if m[i][col].is_zero() {
                continue;
            }
            let f = m[i][col].clone() * inv.clone();
            for j in col..n {
                let v = m[col][j].clone() * f.clone();
                m[i][j] = m[i][j].clone() - v;
            }
        }
    }
    det
}

/// In-place reduced row echelon form; returns the rank.
pub fn row_reduce<F: Field>(m: &mut [Vec<F>]) -> usize {
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..nrows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(p, rank);
        let inv = m[rank][col].inv().unwrap();
        for j in col..ncols {
            m[rank][j] = m[rank][j].clone() * inv.clone();
        }
        for i in 0..nrows {
            if i == rank || m[i][col].is_zero() {
                continue;
            }
            let f = m[i][col].clone();
            for j in col..ncols {
                let v = m[rank][j].clone() * f.clone();
                m[i][j] = m[i][j].clone() - v;
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// Incremental sparse elimination: rows are inserted one at a time and
/// reduced against the pivots seen so far.
pub struct SparseEchelon<F: Field> {
    /// pivot column -> normalized row (pivot coefficient 1)
    pivots: BTreeMap<usize, BTreeMap<usize, F>>,
}

impl<F: Field> Default for SparseEchelon<F> {
    fn default() -> Self {
        SparseEchelon { pivots: BTreeMap::new() }
    }
}

impl<F: Field> SparseEchelon<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Insert a row; returns `true` if it increased the rank.
    pub fn insert(&mut self, row: BTreeMap<usize, F>) -> bool {
        let mut row: BTreeMap<usize, F> = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        loop {
            let Some((&lead, lc)) = row.iter().find(|(c, _)| self.pivots.contains_key(c)) else {
                break;
            };
            let lc = lc.clone();
            let piv = &self.pivots[&lead];
            for (c, v) in piv {
                let nv = row.get(c).cloned().unwrap_or_else(F::zero) - v.clone() * lc.clone();
                if nv.is_zero() {
                    row.remove(c);
                } else {
                    row.insert(*c, nv);
                }
            }
        }
        let Some((&lead, lc)) = row.iter().next() else {
            return false;
        };
        let inv = lc.inv().unwrap();
        let row: BTreeMap<usize, F> = row.into_iter().map(|(c, v)| (c, v * inv.clone())).collect();
        self.pivots.insert(lead, row);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rational};

    fn q(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| Rational::from_i64(v)).collect()).collect()
    }

    #[test]
    fn rank_and_det() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&m), 2);
        assert_eq!(determinant(&m), Rational::from_i64(0));
        let m = q(&[&[0, 1], &[1, 0]]);
        assert_eq!(determinant(&m), Rational::from_i64(-1));
        let m = q(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(determinant(&m), Rational::from_i64(18));
    }

    #[test]
    fn sparse_matches_dense() {
        let rows: Vec<Vec<i64>> = vec![vec![1, 2, 0, 4], vec![0, 0, 3, 1], vec![1, 2, 3, 5], vec![2, 4, 0, 8]];
        let mut se = SparseEchelon::<Fp>::new();
        for r in &rows {
            se.insert(r.iter().enumerate().map(|(i, &v)| (i, Fp::from_i64(v))).collect());
        }
        let dense: Vec<Vec<Fp>> =
            rows.iter().map(|r| r.iter().map(|&v| Fp::from_i64(v)).collect()).collect();
        assert_eq!(se.rank(), rank(&dense));
        assert_eq!(se.rank(), 2);
    }
}
