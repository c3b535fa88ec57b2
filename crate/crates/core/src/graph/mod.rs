//! Oriented graphs: construction, encodings, relabeling, isomorphism and
//! exhaustive enumeration.
//!
//! Vertices are 0-indexed. A graph on `n` vertices is stored as one
//! out-neighbour bitmask per vertex, so values are `Copy` and cheap to
//! produce in the enumeration loops.

mod encoding;
mod enumerate;
mod iso;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use encoding::{parse_compact, parse_graph, parse_text, to_compact, to_text};
pub use enumerate::{enumerate_all, graph_count, pair_count, GraphStream, ShardRange, MAX_ENUMERATION_N};
pub(crate) use iso::is_canonical;
pub use iso::{automorphism_count, canonical_code, canonical_form, is_isomorphic, MAX_CANONICAL_N};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// Largest supported vertex count.
pub const MAX_N: usize = 10;

/// An oriented graph: no loops and no digons.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrientedGraph {
    n: u8,
    out: [u16; MAX_N],
}

impl OrientedGraph {
    /// Arc-free graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::Unsupported(format!(
                "vertex count {n} outside 1..={MAX_N}"
            )));
        }
        Ok(OrientedGraph {
            n: n as u8,
            out: [0; MAX_N],
        })
    }

    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in arcs {
            g.add_arc(u, v)?;
        }
        Ok(g)
    }

    /// Ingests a skew-symmetric {-1, 0, 1} matrix with zero diagonal.
    pub fn from_skew_matrix(s: &IntMatrix) -> Result<Self> {
        if !s.is_square() {
            return Err(Error::NotSquare {
                rows: s.rows(),
                cols: s.cols(),
            });
        }
        let n = s.rows();
        let mut g = Self::empty(n)?;
        let one = BigInt::one();
        let minus_one = -BigInt::one();
        for i in 0..n {
            for j in 0..n {
                let x = &s[(i, j)];
                let y = &s[(j, i)];
                if x + y != BigInt::zero() {
                    return Err(Error::InvalidGraph(format!(
                        "entries ({i},{j}) and ({j},{i}) are not negatives"
                    )));
                }
                if *x == one {
                    g.add_arc(i, j)?;
                } else if !x.is_zero() && *x != minus_one {
                    return Err(Error::InvalidGraph(format!("entry ({i},{j}) = {x}")));
                }
            }
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::InvalidGraph(format!(
                "arc ({u},{v}) out of range for {n} vertices"
            )));
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop at {u}")));
        }
        if self.has_arc(v, u) {
            return Err(Error::InvalidGraph(format!("digon between {u} and {v}")));
        }
        self.out[u] |= 1 << v;
        Ok(())
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u] >> v & 1 == 1
    }

    /// Arcs in (tail, head) lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n();
        (0..n).flat_map(move |u| (0..n).filter(move |&v| self.has_arc(u, v)).map(move |v| (u, v)))
    }

    pub fn arc_count(&self) -> usize {
        self.out[..self.n()].iter().map(|m| m.count_ones() as usize).sum()
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out[u].count_ones() as usize
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.out[..self.n()].iter().filter(|m| *m >> v & 1 == 1).count()
    }

    /// Skew value `s_uv`: 1 for an arc u->v, -1 for v->u, 0 otherwise.
    pub fn skew(&self, u: usize, v: usize) -> i64 {
        if self.has_arc(u, v) {
            1
        } else if self.has_arc(v, u) {
            -1
        } else {
            0
        }
    }

    /// Row-major `n x n` skew-adjacency entries as machine integers.
    pub fn skew_entries(&self) -> Vec<i64> {
        let n = self.n();
        let mut s = Vec::with_capacity(n * n);
        for u in 0..n {
            for v in 0..n {
                s.push(self.skew(u, v));
            }
        }
        s
    }

    /// Ternary digit of the pair `(i, j)`, `i < j`: 0 none, 1 i->j, 2 j->i.
    pub fn pair_digit(&self, i: usize, j: usize) -> u8 {
        if self.has_arc(i, j) {
            1
        } else if self.has_arc(j, i) {
            2
        } else {
            0
        }
    }

    /// The base-3 counter value of this labeled graph; the first pair
    /// `(0, 1)` is the most significant digit.
    pub fn code(&self) -> u128 {
        let n = self.n();
        let mut c = 0u128;
        for i in 0..n {
            for j in i + 1..n {
                c = c * 3 + self.pair_digit(i, j) as u128;
            }
        }
        c
    }

    /// Inverse of [`OrientedGraph::code`].
    pub fn from_code(n: usize, code: u128) -> Result<Self> {
        let mut g = Self::empty(n)?;
        if code >= graph_count(n)? {
            return Err(Error::InvalidGraph(format!(
                "code {code} out of range for {n} vertices"
            )));
        }
        g.fill_from_code(code);
        Ok(g)
    }

    // caller guarantees code < 3^(n(n-1)/2)
    pub(crate) fn fill_from_code(&mut self, mut code: u128) {
        let n = self.n();
        self.out = [0; MAX_N];
        for i in (0..n).rev() {
            for j in (i + 1..n).rev() {
                match code % 3 {
                    1 => self.out[i] |= 1 << j,
                    2 => self.out[j] |= 1 << i,
                    _ => {}
                }
                code /= 3;
            }
        }
    }
}

impl fmt::Debug for OrientedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", to_compact(self))
    }
}

impl fmt::Display for OrientedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", to_compact(self))
    }
}

/// Skew-adjacency matrix `S(D)`.
pub fn skew_adjacency(d: &OrientedGraph) -> IntMatrix {
    IntMatrix::from_fn(d.n(), d.n(), |u, v| BigInt::from(d.skew(u, v)))
}

/// Reverses every arc.
pub fn transpose(d: &OrientedGraph) -> OrientedGraph {
    let mut t = *d;
    t.out = [0; MAX_N];
    for (u, v) in d.arcs() {
        t.out[v] |= 1 << u;
    }
    t
}

/// A bijection on `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidGraph(format!(
                    "{images:?} is not a permutation"
                )));
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Permutation matrix `P` with `P[i][σ(i)] = 1`, so that relabeling a
    /// graph by `σ` conjugates its skew matrix to `Pᵀ S P`.
    pub fn matrix(&self) -> IntMatrix {
        let n = self.len();
        IntMatrix::from_fn(n, n, |i, j| {
            if self.images[i] == j {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .images
            .iter()
            .enumerate()
            .map(|(i, x)| format!("{i}->{x}"))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Relabels vertex `u` as `σ(u)`.
pub fn apply_permutation(d: &OrientedGraph, sigma: &Permutation) -> Result<OrientedGraph> {
    if sigma.len() != d.n() {
        return Err(Error::InvalidGraph(format!(
            "permutation of {} points applied to a graph on {} vertices",
            sigma.len(),
            d.n()
        )));
    }
    let mut g = *d;
    g.out = [0; MAX_N];
    for (u, v) in d.arcs() {
        g.out[sigma.apply(u)] |= 1 << sigma.apply(v);
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::mat_mul;

    fn triangle() -> OrientedGraph {
        OrientedGraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn rejects_loops_and_digons() {
        let mut g = OrientedGraph::empty(3).unwrap();
        assert!(g.add_arc(1, 1).is_err());
        g.add_arc(0, 1).unwrap();
        assert!(g.add_arc(1, 0).is_err());
        assert!(g.add_arc(0, 3).is_err());
        assert!(OrientedGraph::empty(0).is_err());
        assert!(OrientedGraph::empty(MAX_N + 1).is_err());
    }

    #[test]
    fn skew_matrices() {
        let empty = OrientedGraph::empty(3).unwrap();
        assert!(skew_adjacency(&empty).is_zero());
        let arc = OrientedGraph::from_arcs(2, &[(0, 1)]).unwrap();
        assert_eq!(
            skew_adjacency(&arc),
            IntMatrix::from_rows(&[[0, 1], [-1, 0]]).unwrap()
        );
    }

    #[test]
    fn skew_matrix_round_trip() {
        let g = triangle();
        assert_eq!(OrientedGraph::from_skew_matrix(&skew_adjacency(&g)).unwrap(), g);
        let bad = IntMatrix::from_rows(&[[0, 1], [1, 0]]).unwrap();
        assert!(OrientedGraph::from_skew_matrix(&bad).is_err());
        let bad = IntMatrix::from_rows(&[[0, 2], [-2, 0]]).unwrap();
        assert!(OrientedGraph::from_skew_matrix(&bad).is_err());
    }

    #[test]
    fn transpose_basics() {
        let empty = OrientedGraph::empty(4).unwrap();
        assert_eq!(transpose(&empty), empty);
        let arc = OrientedGraph::from_arcs(2, &[(0, 1)]).unwrap();
        assert_eq!(transpose(&arc), OrientedGraph::from_arcs(2, &[(1, 0)]).unwrap());
        let g = triangle();
        assert_eq!(skew_adjacency(&transpose(&g)), skew_adjacency(&g).neg());
        assert_eq!(transpose(&transpose(&g)), g);
    }

    #[test]
    fn code_round_trip() {
        let arc = OrientedGraph::from_arcs(2, &[(0, 1)]).unwrap();
        assert_eq!(arc.code(), 1);
        for code in 0..729 {
            let g = OrientedGraph::from_code(4, code).unwrap();
            assert_eq!(g.code(), code);
        }
        assert!(OrientedGraph::from_code(2, 3).is_err());
    }

    #[test]
    fn permutation_action() {
        let arc = OrientedGraph::from_arcs(2, &[(0, 1)]).unwrap();
        let swap = Permutation::new(vec![1, 0]).unwrap();
        assert_eq!(
            apply_permutation(&arc, &swap).unwrap(),
            OrientedGraph::from_arcs(2, &[(1, 0)]).unwrap()
        );
        let g = triangle();
        assert_eq!(apply_permutation(&g, &Permutation::identity(3)).unwrap(), g);
        assert!(apply_permutation(&g, &Permutation::identity(2)).is_err());
        assert!(Permutation::new(vec![0, 0]).is_err());
    }

    #[test]
    fn relabel_conjugates_skew_matrix() {
        let g = OrientedGraph::from_arcs(4, &[(0, 1), (2, 1), (3, 0), (2, 3)]).unwrap();
        let sigma = Permutation::new(vec![2, 0, 3, 1]).unwrap();
        let p = sigma.matrix();
        let conj = mat_mul(&mat_mul(&p.transpose(), &skew_adjacency(&g)).unwrap(), &p).unwrap();
        assert_eq!(skew_adjacency(&apply_permutation(&g, &sigma).unwrap()), conj);
        let back = apply_permutation(&apply_permutation(&g, &sigma).unwrap(), &sigma.inverse()).unwrap();
        assert_eq!(back, g);
    }
}
