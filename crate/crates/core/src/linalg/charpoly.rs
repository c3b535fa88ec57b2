use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{mat_mul, IntMatrix};
use crate::error::{Error, Result};

/// Integer polynomial, coefficients in ascending degree order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// Leading zero coefficients are trimmed; the zero polynomial has no
    /// coefficients.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeffs.first().cloned().unwrap_or_default()
    }

    /// Evaluates the polynomial at a square matrix by Horner's rule.
    pub fn eval_matrix(&self, m: &IntMatrix) -> Result<IntMatrix> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        let n = m.rows();
        let mut acc = IntMatrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = mat_mul(&acc, m)?;
            for i in 0..n {
                acc[(i, i)] += c;
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let a = c.abs();
            match (deg, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{a}x")?,
                (_, true) => write!(f, "x^{deg}")?,
                (_, false) => write!(f, "{a}x^{deg}")?,
            }
        }
        Ok(())
    }
}

/// Coefficient-wise equality after trimming leading zeros.
pub fn poly_equal(a: &IntPolynomial, b: &IntPolynomial) -> bool {
    let trim = |c: &[BigInt]| {
        let mut end = c.len();
        while end > 0 && c[end - 1].is_zero() {
            end -= 1;
        }
        end
    };
    let (ea, eb) = (trim(&a.coeffs), trim(&b.coeffs));
    a.coeffs[..ea] == b.coeffs[..eb]
}

/// Characteristic polynomial `det(xI - M)` by the division-free Berkowitz
/// algorithm.
pub fn char_poly(m: &IntMatrix) -> Result<IntPolynomial> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    // descending coefficients of the leading r x r block
    let mut p: Vec<BigInt> = vec![BigInt::one()];
    for r in 0..n {
        // t = (1, -a_rr, -R C, -R A C, ..., -R A^{r-1} C)
        let mut t = Vec::with_capacity(r + 2);
        t.push(BigInt::one());
        t.push(-&m[(r, r)]);
        let mut v: Vec<BigInt> = (0..r).map(|i| m[(i, r)].clone()).collect();
        for k in 0..r {
            let rc: BigInt = (0..r).map(|j| &m[(r, j)] * &v[j]).sum();
            t.push(-rc);
            if k + 1 < r {
                v = (0..r)
                    .map(|i| (0..r).map(|j| &m[(i, j)] * &v[j]).sum())
                    .collect();
            }
        }
        let mut next = vec![BigInt::zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, pj) in p.iter().enumerate().take(i + 1) {
                if !pj.is_zero() {
                    *slot += &t[i - j] * pj;
                }
            }
        }
        p = next;
    }
    p.reverse();
    Ok(IntPolynomial::new(p))
}

/// Berkowitz over `i64` with overflow checks, for the small dense matrices
/// the enumeration loops feed it. `entries` is row-major `n x n`; returns
/// ascending coefficients, or `None` on overflow.
pub(crate) fn char_poly_i64(entries: &[i64], n: usize) -> Option<Vec<i64>> {
    debug_assert_eq!(entries.len(), n * n);
    let at = |i: usize, j: usize| entries[i * n + j];
    let mut p: Vec<i64> = vec![1];
    let mut v = vec![0i64; n];
    let mut w = vec![0i64; n];
    let mut t = vec![0i64; n + 1];
    for r in 0..n {
        t[0] = 1;
        t[1] = at(r, r).checked_neg()?;
        for (i, vi) in v.iter_mut().enumerate().take(r) {
            *vi = at(i, r);
        }
        for k in 0..r {
            let mut rc = 0i64;
            for (j, vj) in v.iter().enumerate().take(r) {
                rc = rc.checked_add(at(r, j).checked_mul(*vj)?)?;
            }
            t[k + 2] = rc.checked_neg()?;
            if k + 1 < r {
                for (i, wi) in w.iter_mut().enumerate().take(r) {
                    let mut s = 0i64;
                    for (j, vj) in v.iter().enumerate().take(r) {
                        s = s.checked_add(at(i, j).checked_mul(*vj)?)?;
                    }
                    *wi = s;
                }
                std::mem::swap(&mut v, &mut w);
            }
        }
        let mut next = vec![0i64; r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, pj) in p.iter().enumerate().take(i + 1) {
                *slot = slot.checked_add(t[i - j].checked_mul(*pj)?)?;
            }
        }
        p = next;
    }
    p.reverse();
    Some(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_matrix_is_pure_power() {
        let p = char_poly(&IntMatrix::zeros(3, 3)).unwrap();
        assert_eq!(p, IntPolynomial::from_i64(&[0, 0, 0, 1]));
    }

    #[test]
    fn directed_triangle() {
        // 0->1, 1->2, 2->0; direct 3x3 expansion gives x^3 + 3x
        let s = IntMatrix::from_rows(&[[0, 1, -1], [-1, 0, 1], [1, -1, 0]]).unwrap();
        let p = char_poly(&s).unwrap();
        assert_eq!(p, IntPolynomial::from_i64(&[0, 3, 0, 1]));
        assert_eq!(p.to_string(), "x^3 + 3x");
    }

    #[test]
    fn two_by_two_expansion() {
        // x^2 - (a+d)x + (ad - bc)
        let m = IntMatrix::from_rows(&[[3, -2], [5, 7]]).unwrap();
        assert_eq!(
            char_poly(&m).unwrap(),
            IntPolynomial::from_i64(&[31, -10, 1])
        );
    }

    #[test]
    fn fast_path_agrees() {
        let rows = [[1, 2, 0, -1], [3, 0, 1, 1], [0, -2, 2, 1], [1, 1, 1, 0]];
        let m = IntMatrix::from_rows(&rows).unwrap();
        let flat: Vec<i64> = rows.iter().flatten().copied().collect();
        let fast = char_poly_i64(&flat, 4).unwrap();
        assert_eq!(IntPolynomial::from_i64(&fast), char_poly(&m).unwrap());
    }

    #[test]
    fn fast_path_reports_overflow() {
        let flat = vec![i64::MAX, 1, 1, i64::MAX];
        assert!(char_poly_i64(&flat, 2).is_none());
    }

    #[test]
    fn equality_ignores_leading_zeros() {
        let a = IntPolynomial::from_i64(&[0, 3, 0, 1]);
        let b = IntPolynomial::from_i64(&[0, 2, 0, 1]);
        assert!(poly_equal(&a, &a.clone()));
        assert!(!poly_equal(&a, &b));
        let padded = IntPolynomial {
            coeffs: vec![0, 3, 0, 1, 0, 0].into_iter().map(BigInt::from).collect(),
        };
        assert!(poly_equal(&a, &padded));
    }
}
