use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{mat_mul, IntMatrix};
use crate::error::{Error, Result};

/// `M = U · diag(d) · V` with `U`, `V` unimodular and `d_i | d_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub n_diag: Vec<BigInt>,
    pub v: IntMatrix,
}

impl SnfDecomposition {
    pub fn diagonal(&self) -> IntMatrix {
        let n = self.n_diag.len();
        IntMatrix::from_fn(n, n, |i, j| {
            if i == j {
                self.n_diag[i].clone()
            } else {
                BigInt::zero()
            }
        })
    }

    /// `U · N · V`.
    pub fn reconstruct(&self) -> IntMatrix {
        let un = mat_mul(&self.u, &self.diagonal()).expect("square factors");
        mat_mul(&un, &self.v).expect("square factors")
    }

    /// Largest invariant factor `d_n`.
    pub fn last(&self) -> &BigInt {
        self.n_diag.last().expect("non-empty decomposition")
    }

    pub fn divisibility_chain_holds(&self) -> bool {
        self.n_diag
            .windows(2)
            .all(|w| !w[0].is_zero() && (&w[1] % &w[0]).is_zero())
    }
}

// Keeps M = U A V while A is reduced in place.
struct Reducer {
    a: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
    n: usize,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_rows(i, j);
    }

    // row[dst] -= q * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.n {
            let d = q * &self.a[(src, j)];
            self.a[(dst, j)] -= d;
        }
        for i in 0..self.n {
            let d = q * &self.u[(i, dst)];
            self.u[(i, src)] += d;
        }
    }

    // col[dst] -= q * col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.n {
            let d = q * &self.a[(i, src)];
            self.a[(i, dst)] -= d;
        }
        for j in 0..self.n {
            let d = q * &self.v[(dst, j)];
            self.v[(src, j)] += d;
        }
    }

    fn negate_row(&mut self, t: usize) {
        for j in 0..self.n {
            self.a[(t, j)] = -&self.a[(t, j)];
        }
        for i in 0..self.n {
            self.u[(i, t)] = -&self.u[(i, t)];
        }
    }

    // smallest |a_ij| > 0 with i, j >= t; ties go to the lexicographically
    // smallest (i, j)
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), BigInt)> = None;
        for i in t..self.n {
            for j in t..self.n {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                if best.as_ref().is_none_or(|(_, b)| ax < *b) {
                    best = Some(((i, j), ax));
                }
            }
        }
        best.map(|(ij, _)| ij)
    }

    fn reduce_block(&mut self, t: usize) -> Result<()> {
        loop {
            let (pi, pj) = self
                .pivot(t)
                .ok_or_else(|| Error::Unsupported("Smith normal form of a singular matrix".into()))?;
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            let p = self.a[(t, t)].clone();
            for i in t + 1..self.n {
                let q = self.a[(i, t)].div_floor(&p);
                self.row_axpy(i, t, &q);
            }
            for j in t + 1..self.n {
                let q = self.a[(t, j)].div_floor(&p);
                self.col_axpy(j, t, &q);
            }
            let residue = (t + 1..self.n)
                .any(|k| !self.a[(k, t)].is_zero() || !self.a[(t, k)].is_zero());
            if residue {
                continue;
            }
            let p = self.a[(t, t)].clone();
            let offender = (t + 1..self.n)
                .flat_map(|i| (t + 1..self.n).map(move |j| (i, j)))
                .find(|&(i, j)| !(&self.a[(i, j)] % &p).is_zero());
            match offender {
                // row t += row i, then reduce again
                Some((i, _)) => self.row_axpy(t, i, &BigInt::from(-1)),
                None => break,
            }
        }
        if self.a[(t, t)].is_negative() {
            self.negate_row(t);
        }
        Ok(())
    }
}

/// Smith normal form of a square nonsingular integer matrix.
///
/// Pivot rule: the nonzero entry of least absolute value in the working
/// block, ties broken by smallest (row, col). Invariant factors are
/// returned non-negative.
pub fn smith_normal_form(m: &IntMatrix) -> Result<SnfDecomposition> {
    if !m.is_square() {
        return Err(Error::Unsupported(format!(
            "Smith normal form of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    let mut r = Reducer {
        a: m.clone(),
        u: IntMatrix::identity(n),
        v: IntMatrix::identity(n),
        n,
    };
    for t in 0..n {
        r.reduce_block(t)?;
    }
    let n_diag = (0..n).map(|i| r.a[(i, i)].clone()).collect();
    Ok(SnfDecomposition {
        u: r.u,
        n_diag,
        v: r.v,
    })
}
