use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::IntMatrix;
use crate::error::{Error, Result};

/// Exact determinant by Bareiss fraction-free elimination.
///
/// Every division performed is exact; a nonzero remainder would mean the
/// elimination invariant broke and is treated as a bug.
pub fn det_bareiss(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut sign = 1i8;
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                Some(i) => {
                    a.swap_rows(k, i);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        let pivot = a[(k, k)].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &pivot * &a[(i, j)] - &a[(i, k)] * &a[(k, j)];
                let (q, r) = num.div_rem(&prev);
                assert!(r.is_zero(), "inexact Bareiss division");
                a[(i, j)] = q;
            }
            a[(i, k)] = BigInt::zero();
        }
        prev = pivot;
    }
    let d = a[(n - 1, n - 1)].clone();
    Ok(if sign < 0 { -d } else { d })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_det() {
        assert_eq!(det_bareiss(&IntMatrix::identity(7)).unwrap(), BigInt::one());
    }

    #[test]
    fn needs_pivot_swap() {
        let m = IntMatrix::from_rows(&[[0, 1], [1, 0]]).unwrap();
        assert_eq!(det_bareiss(&m).unwrap(), BigInt::from(-1));
        let m = IntMatrix::from_rows(&[[0, 2, 1], [0, 1, 1], [3, 1, 4]]).unwrap();
        // 3 * (2*1 - 1*1)
        assert_eq!(det_bareiss(&m).unwrap(), BigInt::from(3));
    }

    #[test]
    fn singular_and_nonsquare() {
        let m = IntMatrix::from_rows(&[[1, 2], [2, 4]]).unwrap();
        assert!(det_bareiss(&m).unwrap().is_zero());
        assert!(matches!(
            det_bareiss(&IntMatrix::zeros(2, 3)),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn one_by_one() {
        let m = IntMatrix::from_rows(&[[-5]]).unwrap();
        assert_eq!(det_bareiss(&m).unwrap(), BigInt::from(-5));
    }
}
