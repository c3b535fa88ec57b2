use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{mat_mul, IntMatrix};
use crate::error::{Error, Result};

/// Dense row-major matrix of exact rationals. `BigRational` keeps every
/// entry in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RatMatrix { rows, cols, data }
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        Self::from_fn(m.rows(), m.cols(), |i, j| BigRational::from_integer(m[(i, j)].clone()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// `M = num / denom` with `num` integral.
    pub fn from_scaled(num: &IntMatrix, denom: &BigInt) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        Self::from_fn(num.rows(), num.cols(), |i, j| {
            BigRational::new(num[(i, j)].clone(), denom.clone())
        })
    }

    /// `(ℓ · M, ℓ)` with `ℓ` the level: the smallest common-denominator
    /// form.
    pub fn common_denominator(&self) -> (IntMatrix, BigInt) {
        let level = self.level();
        let num = IntMatrix::from_fn(self.rows, self.cols, |i, j| {
            let x = &self[(i, j)];
            x.numer() * (&level / x.denom())
        });
        (num, level)
    }

    /// Product over a common denominator, so only the `rows · cols` result
    /// entries need reducing.
    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "rat_mul",
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let (a, da) = self.common_denominator();
        let (b, db) = other.common_denominator();
        Ok(Self::from_scaled(&mat_mul(&a, &b)?, &(da * db)))
    }

    pub fn mul_int(&self, other: &IntMatrix) -> Result<RatMatrix> {
        self.mul(&RatMatrix::from_int(other))
    }

    pub fn row_sums(&self) -> Vec<BigRational> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)]).sum())
            .collect()
    }

    /// Least positive integer `x` with `x · M` integral: the lcm of the
    /// lowest-terms denominators.
    pub fn level(&self) -> BigInt {
        self.data
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.denom().is_one())
    }

    /// `k · M` as an integer matrix, or `None` if it is not integral.
    pub fn scaled_to_int(&self, k: &BigInt) -> Option<IntMatrix> {
        let scaled: Vec<BigRational> = self
            .data
            .iter()
            .map(|x| x * BigRational::from_integer(k.clone()))
            .collect();
        if scaled.iter().any(|x| !x.denom().is_one()) {
            return None;
        }
        Some(IntMatrix::from_fn(self.rows, self.cols, |i, j| {
            scaled[i * self.cols + j].numer().clone()
        }))
    }

    pub fn to_int(&self) -> Option<IntMatrix> {
        self.scaled_to_int(&BigInt::one())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == RatMatrix::identity(self.rows)
    }

    /// Square 0/1 matrix with exactly one 1 per row and per column.
    pub fn is_permutation(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        let n = self.rows;
        let mut col_hits = vec![0usize; n];
        for i in 0..n {
            let mut hits = 0;
            for j in 0..n {
                let x = &self[(i, j)];
                if x.is_one() {
                    hits += 1;
                    col_hits[j] += 1;
                } else if !x.is_zero() {
                    return false;
                }
            }
            if hits != 1 {
                return false;
            }
        }
        col_hits.iter().all(|&c| c == 1)
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = BigRational;

    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(|x| x.to_string()).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|j| format!("{:>width$}", cells[i * self.cols + j]))
                .collect();
            writeln!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}

/// Exact inverse by fraction-free Gauss-Jordan elimination: every
/// division by the previous pivot is exact, and the left block ends as
/// `det · I`.
pub fn rat_inverse(m: &IntMatrix) -> Result<RatMatrix> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let w = 2 * n;
    let mut a = IntMatrix::from_fn(n, w, |i, j| {
        if j < n {
            m[(i, j)].clone()
        } else if j - n == i {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    });
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot_row = (k..n).find(|&r| !a[(r, k)].is_zero()).ok_or(Error::Singular)?;
        if pivot_row != k {
            a.swap_rows(pivot_row, k);
        }
        let pivot = a[(k, k)].clone();
        for i in (0..n).filter(|&i| i != k) {
            let factor = a[(i, k)].clone();
            for j in (0..w).filter(|&j| j != k) {
                let t = &pivot * &a[(i, j)] - &factor * &a[(k, j)];
                let (q, r) = t.div_rem(&prev);
                debug_assert!(r.is_zero(), "inexact fraction-free step");
                a[(i, j)] = q;
            }
            a[(i, k)] = BigInt::zero();
        }
        prev = pivot;
    }
    // every diagonal entry of the left block now equals the last pivot
    let det = prev;
    let right = IntMatrix::from_fn(n, n, |i, j| a[(i, n + j)].clone());
    Ok(RatMatrix::from_scaled(&right, &det))
}
