use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::IntMatrix;
use crate::characterization::is_prime_u64;
use crate::error::{Error, Result};

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Rank of `m` over the field with `p` elements.
pub fn rank_mod_p(m: &IntMatrix, p: u64) -> Result<usize> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    let modulus = BigInt::from(p);
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<u64>> = (0..rows)
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| x.mod_floor(&modulus).to_u64().expect("reduced below p"))
                .collect()
        })
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pr) = (rank..rows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, pr);
        let inv = pow_mod(a[rank][col], p - 2, p);
        let pivot = a[rank].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let f = mul_mod(row[col], inv, p);
            for (x, &y) in row[col..].iter_mut().zip(&pivot[col..]) {
                *x = (*x + p - mul_mod(f, y, p)) % p;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    Ok(rank)
}
