//! Skew-adjacency matrices of the two reference graphs: a 7-vertex graph
//! with three mates (tight for the bound) and a 6-vertex graph whose only
//! mate is its transpose. Both are 0-indexed transcriptions.

use crate::graph::OrientedGraph;
use crate::linalg::IntMatrix;

pub const TIGHT_SEVEN_D: [[i64; 7]; 7] = [
    [0, 1, 1, -1, 0, 0, 0],
    [-1, 0, 0, 0, 0, 0, 0],
    [-1, 0, 0, 1, 1, 1, 0],
    [1, 0, -1, 0, 1, 0, 1],
    [0, 0, -1, -1, 0, 1, -1],
    [0, 0, -1, 0, -1, 0, 0],
    [0, 0, 0, -1, 1, 0, 0],
];

pub const TIGHT_SEVEN_C: [[i64; 7]; 7] = [
    [0, 1, 1, -1, 0, 0, 0],
    [-1, 0, 1, 0, 0, 0, -1],
    [-1, -1, 0, 0, 0, 0, 0],
    [1, 0, 0, 0, -1, -1, 0],
    [0, 0, 0, 1, 0, 1, 1],
    [0, 0, 0, 1, -1, 0, -1],
    [0, 1, 0, 0, -1, 1, 0],
];

pub const WDGSS_SIX_D: [[i64; 6]; 6] = [
    [0, 1, -1, -1, 0, 0],
    [-1, 0, 0, 0, 0, 0],
    [1, 0, 0, -1, -1, 0],
    [1, 0, 1, 0, -1, -1],
    [0, 0, 1, 1, 0, 0],
    [0, 0, 0, 1, 0, 0],
];

fn graph<const N: usize>(rows: &[[i64; N]; N]) -> OrientedGraph {
    let m = IntMatrix::from_rows(rows).expect("fixture matrix");
    OrientedGraph::from_skew_matrix(&m).expect("fixture is an oriented graph")
}

pub fn tight_seven_d() -> OrientedGraph {
    graph(&TIGHT_SEVEN_D)
}

pub fn tight_seven_c() -> OrientedGraph {
    graph(&TIGHT_SEVEN_C)
}

pub fn wdgss_six_d() -> OrientedGraph {
    graph(&WDGSS_SIX_D)
}
