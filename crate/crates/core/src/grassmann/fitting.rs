use std::collections::HashMap;

use itertools::Itertools;
use num_bigint::BigUint;
use rand::seq::index::sample;
use rand::Rng;
use rayon::prelude::*;

use super::{GrassmannError, PluckerSpace, SymbolicMatrix};
use crate::bigint::binomial_u64;
use crate::field::Rational;
use crate::linalg;
use crate::poly::Polynomial;

/// Default cap on the number of minors expanded symbolically.
pub const DEFAULT_MINOR_BUDGET: u64 = 1_000_000;

/// The `m x m` minors of `Λ`, whose common vanishing on the Grassmannian
/// says that `u(M^q)` has rank below `m`.
///
/// Expansion is on demand: the system can always be tested at a point
/// through the rank of `Λ` there, which agrees with the vanishing of every
/// minor without enumerating them.
#[derive(Clone, Debug)]
pub struct FittingSystem {
    lambda: SymbolicMatrix,
    m: usize,
    space: PluckerSpace,
}

impl FittingSystem {
    pub fn new(lambda: SymbolicMatrix, m: usize, space: PluckerSpace) -> Result<Self, GrassmannError> {
        if m == 0 {
            return Err(GrassmannError::InvalidParameters("minor size must be at least 1".into()));
        }
        Ok(FittingSystem { lambda, m, space })
    }

    pub fn lambda(&self) -> &SymbolicMatrix {
        &self.lambda
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn space(&self) -> &PluckerSpace {
        &self.space
    }

    /// `C(rows, m) C(cols, m)`.
    pub fn minor_count(&self) -> BigUint {
        binomial_u64(self.lambda.rows() as u64, self.m as u64) * binomial_u64(self.lambda.cols() as u64, self.m as u64)
    }

    /// The symbolic minor on the given rows and columns, by cofactor
    /// expansion along rows with memoized sub-determinants.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Polynomial<Rational> {
        assert_eq!(rows.len(), cols.len());
        assert!(cols.len() <= 64, "minor too large for the subset memo");
        let nv = self.space.len();
        let entries: Vec<Vec<Polynomial<Rational>>> = rows
            .iter()
            .map(|&i| cols.iter().map(|&j| self.lambda.entry(i, j).to_polynomial(&self.space)).collect())
            .collect();
        let mut memo: HashMap<u64, Polynomial<Rational>> = HashMap::new();
        fn det(
            entries: &[Vec<Polynomial<Rational>>],
            mask: u64,
            nv: usize,
            memo: &mut HashMap<u64, Polynomial<Rational>>,
        ) -> Polynomial<Rational> {
            if mask == 0 {
                return Polynomial::one(nv);
            }
            if let Some(p) = memo.get(&mask) {
                return p.clone();
            }
            let row = entries.len() - mask.count_ones() as usize;
            let mut acc = Polynomial::zero(nv);
            let mut position = 0;
            for c in 0..entries.len() {
                if mask & (1 << c) == 0 {
                    continue;
                }
                let e = &entries[row][c];
                if !e.is_zero() {
                    let sub = det(entries, mask & !(1 << c), nv, memo);
                    if !sub.is_zero() {
                        let term = e.mul(&sub);
                        acc = if position % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
                    }
                }
                position += 1;
            }
            memo.insert(mask, acc.clone());
            acc
        }
        let full = if cols.len() == 64 { u64::MAX } else { (1u64 << cols.len()) - 1 };
        det(&entries, full, nv, &mut memo)
    }

    /// All nonzero minors, rows-then-columns lexicographic, if there are at
    /// most `budget` of them. An empty list when `m` exceeds either side.
    pub fn minors(&self, budget: u64) -> Result<Vec<Polynomial<Rational>>, GrassmannError> {
        let count = self.minor_count();
        if count > BigUint::from(budget) {
            return Err(GrassmannError::MinorBudgetExceeded { count: count.to_string(), budget });
        }
        let tasks: Vec<(Vec<usize>, Vec<usize>)> = (0..self.lambda.rows())
            .combinations(self.m)
            .flat_map(|r| (0..self.lambda.cols()).combinations(self.m).map(move |c| (r.clone(), c)))
            .collect();
        let results: Vec<Polynomial<Rational>> = tasks.par_iter().map(|(r, c)| self.minor(r, c)).collect();
        Ok(results.into_iter().filter(|p| !p.is_zero()).collect())
    }

    /// `Λ` evaluated at a point.
    pub fn evaluate(&self, point: &[Rational]) -> Vec<Vec<Rational>> {
        self.lambda.evaluate(&self.space, point)
    }

    pub fn rank_at(&self, point: &[Rational]) -> usize {
        linalg::rank(&self.evaluate(point))
    }

    /// Whether every `m x m` minor vanishes at the point.
    pub fn vanishes_at(&self, point: &[Rational]) -> bool {
        self.rank_at(point) < self.m
    }

    /// Up to `count` minors at uniformly drawn row and column subsets,
    /// with their indices.
    pub fn sample_minors<R: Rng>(&self, count: usize, rng: &mut R) -> Vec<(Vec<usize>, Vec<usize>, Polynomial<Rational>)> {
        if self.m > self.lambda.rows() || self.m > self.lambda.cols() {
            return Vec::new();
        }
        (0..count)
            .map(|_| {
                let mut r = sample(rng, self.lambda.rows(), self.m).into_vec();
                let mut c = sample(rng, self.lambda.cols(), self.m).into_vec();
                r.sort_unstable();
                c.sort_unstable();
                let p = self.minor(&r, &c);
                (r, c, p)
            })
            .collect()
    }

    /// A nonzero minor of `Λ` found through a point where `Λ` has rank at
    /// least `m`: the pivot rows and columns of the evaluated matrix give a
    /// minor that is nonzero there, hence nonzero as a polynomial.
    pub fn witness_minor(&self, point: &[Rational]) -> Option<(Vec<usize>, Vec<usize>, Polynomial<Rational>)> {
        let values = self.evaluate(point);
        let cols = pivot_columns(&values, self.m)?;
        let sub: Vec<Vec<Rational>> = values.iter().map(|row| cols.iter().map(|&j| row[j].clone()).collect()).collect();
        let rows = pivot_rows(&sub, self.m)?;
        let p = self.minor(&rows, &cols);
        debug_assert!(!p.is_zero());
        Some((rows, cols, p))
    }
}

/// Columns of the first `k` pivots found greedily left to right.
fn pivot_columns(values: &[Vec<Rational>], k: usize) -> Option<Vec<usize>> {
    let ncols = values.first().map_or(0, Vec::len);
    let mut chosen: Vec<usize> = Vec::new();
    let mut rank = 0;
    for j in 0..ncols {
        let mut trial = chosen.clone();
        trial.push(j);
        let cols: Vec<Vec<Rational>> = trial.iter().map(|&c| values.iter().map(|r| r[c].clone()).collect()).collect();
        let rk = linalg::rank(&cols);
        if rk > rank {
            rank = rk;
            chosen = trial;
            if rank == k {
                return Some(chosen);
            }
        }
    }
    None
}

/// Rows of the first `k` independent rows.
fn pivot_rows(values: &[Vec<Rational>], k: usize) -> Option<Vec<usize>> {
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..values.len() {
        let mut trial = chosen.clone();
        trial.push(i);
        let rows: Vec<Vec<Rational>> = trial.iter().map(|&r| values[r].clone()).collect();
        if linalg::rank(&rows) == trial.len() {
            chosen = trial;
            if chosen.len() == k {
                return Some(chosen);
            }
        }
    }
    None
}
