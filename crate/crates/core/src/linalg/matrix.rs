use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// All-ones matrix `J`.
    pub fn ones(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::one(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    /// Builds a matrix from nested rows of small integers.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let r = rows.len();
        if r == 0 {
            return Err(Error::Unsupported("empty matrix".into()));
        }
        let c = rows[0].as_ref().len();
        if c == 0 || rows.iter().any(|row| row.as_ref().len() != c) {
            return Err(Error::Unsupported("ragged or empty rows".into()));
        }
        Ok(Self::from_fn(r, c, |i, j| BigInt::from(rows[i].as_ref()[j])))
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<BigInt>]) -> Self {
        let cols = columns.len();
        let rows = columns[0].len();
        Self::from_fn(rows, cols, |i, j| columns[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn neg(&self) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    pub fn add(&self, other: &IntMatrix) -> Result<Self> {
        self.same_shape("add", other)?;
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &IntMatrix) -> Result<Self> {
        self.same_shape("sub", other)?;
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                op: "mul_vec",
                left: (self.rows, self.cols),
                right: (v.len(), 1),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    pub fn trace(&self) -> BigInt {
        (0..self.rows.min(self.cols)).map(|i| &self[(i, i)]).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    /// Every entry divisible by `k`.
    pub fn divisible_by(&self, k: &BigInt) -> bool {
        self.data.iter().all(|x| (x % k).is_zero())
    }

    pub fn max_abs(&self) -> BigInt {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_default()
    }

    fn same_shape(&self, op: &'static str, other: &IntMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                op,
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        Ok(())
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }
}

/// Exact product `a · b`.
pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> Result<IntMatrix> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch {
            op: "mat_mul",
            left: (a.rows, a.cols),
            right: (b.rows, b.cols),
        });
    }
    let mut out = IntMatrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = &a[(i, k)];
            if aik.is_zero() {
                continue;
            }
            for j in 0..b.cols {
                let bkj = &b[(k, j)];
                if !bkj.is_zero() {
                    out[(i, j)] += aik * bkj;
                }
            }
        }
    }
    Ok(out)
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
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
