#![allow(dead_code)]

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use skewmate::linalg::IntMatrix;
use skewmate::OrientedGraph;

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    match n {
        0 => BigInt::from(1),
        1 => BigInt::from(m[0][0]),
        _ => {
            let mut total = BigInt::from(0);
            for j in 0..n {
                if m[0][j] == 0 {
                    continue;
                }
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let term = BigInt::from(m[0][j]) * cofactor_det(&minor);
                if j % 2 == 0 {
                    total += term;
                } else {
                    total -= term;
                }
            }
            total
        }
    }
}

pub fn random_rows(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Vec<Vec<i64>> {
    (0..n)
        .map(|_| (0..n).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect()
}

pub fn to_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(rows).expect("rectangular")
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> OrientedGraph {
    let pairs = n * (n - 1) / 2;
    let code = rng.gen_range(0..3u128.pow(pairs as u32));
    OrientedGraph::from_code(n, code).expect("code in range")
}

/// Frozen per-class values for one order, one JSON object per line.
pub fn frozen_classes(n: usize) -> Vec<serde_json::Value> {
    let path = format!("{}/tests/data/classes_n{n}.jsonl", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path)
        .expect("frozen data present")
        .lines()
        .map(|l| serde_json::from_str(l).expect("valid json"))
        .collect()
}
