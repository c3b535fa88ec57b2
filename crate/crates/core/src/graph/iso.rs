use std::sync::OnceLock;

use super::{to_compact, OrientedGraph, Permutation, MAX_N};
use crate::error::{Error, Result};

/// Canonical forms search all `n!` relabelings; bounded accordingly.
pub const MAX_CANONICAL_N: usize = 9;

const MAX_PAIRS: usize = MAX_CANONICAL_N * (MAX_CANONICAL_N - 1) / 2;

static PERMUTATIONS: [OnceLock<Vec<u8>>; MAX_CANONICAL_N + 1] = [const { OnceLock::new() }; MAX_CANONICAL_N + 1];

// All permutations of 0..n, flattened, in lexicographic order.
fn permutations(n: usize) -> &'static [u8] {
    PERMUTATIONS[n].get_or_init(|| {
        let mut cur: Vec<u8> = (0..n as u8).collect();
        let mut out = Vec::new();
        loop {
            out.extend_from_slice(&cur);
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    })
}

fn relation_table(d: &OrientedGraph) -> [[u8; MAX_N]; MAX_N] {
    let n = d.n();
    let mut rel = [[0u8; MAX_N]; MAX_N];
    for (a, row) in rel.iter_mut().enumerate().take(n) {
        for (b, cell) in row.iter_mut().enumerate().take(n) {
            *cell = if d.has_arc(a, b) {
                1
            } else if d.has_arc(b, a) {
                2
            } else {
                0
            };
        }
    }
    rel
}

fn identity_digits(d: &OrientedGraph) -> [u8; MAX_PAIRS] {
    let n = d.n();
    let mut digits = [0u8; MAX_PAIRS];
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            digits[k] = d.pair_digit(i, j);
            k += 1;
        }
    }
    digits
}

fn check_n(n: usize) -> Result<()> {
    if n > MAX_CANONICAL_N {
        return Err(Error::Unsupported(format!(
            "canonical form needs n <= {MAX_CANONICAL_N}, got {n}"
        )));
    }
    Ok(())
}

// Walks every relabeling and keeps the lexicographically smallest digit
// string. With `stop_if_smaller`, returns as soon as anything beats the
// input labeling.
fn minimize(d: &OrientedGraph, stop_if_smaller: bool) -> (bool, [u8; MAX_PAIRS]) {
    let n = d.n();
    let rel = relation_table(d);
    let mut best = identity_digits(d);
    let mut cur = [0u8; MAX_PAIRS];
    let mut improved = false;
    for tau in permutations(n).chunks_exact(n) {
        let mut k = 0;
        let mut less = false;
        let mut worse = false;
        'pairs: for i in 0..n {
            let ti = tau[i] as usize;
            for &tj in &tau[i + 1..n] {
                let digit = rel[ti][tj as usize];
                if !less {
                    if digit > best[k] {
                        worse = true;
                        break 'pairs;
                    }
                    less = digit < best[k];
                }
                cur[k] = digit;
                k += 1;
            }
        }
        if !worse && less {
            if stop_if_smaller {
                return (true, cur);
            }
            best = cur;
            improved = true;
        }
    }
    (improved, best)
}

fn digits_to_code(digits: &[u8]) -> u128 {
    digits.iter().fold(0u128, |c, &d| c * 3 + d as u128)
}

/// Counter value of the canonical relabeling: the lexicographically least
/// ternary encoding over all `n!` relabelings.
pub fn canonical_code(d: &OrientedGraph) -> Result<u128> {
    check_n(d.n())?;
    let (_, best) = minimize(d, false);
    let pairs = d.n() * (d.n() - 1) / 2;
    Ok(digits_to_code(&best[..pairs]))
}

/// True if `d`'s own labeling is the canonical one.
pub(crate) fn is_canonical(d: &OrientedGraph) -> bool {
    debug_assert!(d.n() <= MAX_CANONICAL_N);
    !minimize(d, true).0
}

/// Size of the automorphism group, by checking every relabeling.
pub fn automorphism_count(d: &OrientedGraph) -> Result<usize> {
    let n = d.n();
    check_n(n)?;
    let rel = relation_table(d);
    let own = identity_digits(d);
    let count = permutations(n)
        .chunks_exact(n)
        .filter(|tau| {
            let mut k = 0;
            for i in 0..n {
                for &tj in &tau[i + 1..n] {
                    if rel[tau[i] as usize][tj as usize] != own[k] {
                        return false;
                    }
                    k += 1;
                }
            }
            true
        })
        .count();
    Ok(count)
}

/// Compact encoding of the canonical relabeling. Equal strings exactly
/// when the graphs are isomorphic.
pub fn canonical_form(d: &OrientedGraph) -> Result<String> {
    let code = canonical_code(d)?;
    Ok(to_compact(&OrientedGraph::from_code(d.n(), code)?))
}

/// Finds `σ` with `apply_permutation(a, σ) == b`, by backtracking over
/// vertex images that agree on (out-degree, in-degree).
pub fn is_isomorphic(a: &OrientedGraph, b: &OrientedGraph) -> Option<Permutation> {
    let n = a.n();
    if n != b.n() || a.arc_count() != b.arc_count() {
        return None;
    }
    let deg = |g: &OrientedGraph| -> Vec<(usize, usize)> {
        (0..n).map(|v| (g.out_degree(v), g.in_degree(v))).collect()
    };
    let (da, db) = (deg(a), deg(b));
    let mut sa = da.clone();
    let mut sb = db.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }

    struct Search<'a> {
        a: &'a OrientedGraph,
        b: &'a OrientedGraph,
        da: Vec<(usize, usize)>,
        db: Vec<(usize, usize)>,
        map: Vec<usize>,
        used: Vec<bool>,
    }

    impl Search<'_> {
        fn extend(&mut self, u: usize) -> bool {
            let n = self.a.n();
            if u == n {
                return true;
            }
            for x in 0..n {
                if self.used[x] || self.da[u] != self.db[x] {
                    continue;
                }
                let consistent = (0..u).all(|w| self.a.skew(u, w) == self.b.skew(x, self.map[w]));
                if !consistent {
                    continue;
                }
                self.map[u] = x;
                self.used[x] = true;
                if self.extend(u + 1) {
                    return true;
                }
                self.used[x] = false;
            }
            false
        }
    }

    let mut s = Search {
        a,
        b,
        da,
        db,
        map: vec![0; n],
        used: vec![false; n],
    };
    if s.extend(0) {
        Some(Permutation { images: s.map })
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{apply_permutation, transpose};

    #[test]
    fn permutation_table_sizes() {
        assert_eq!(permutations(1).len(), 1);
        assert_eq!(permutations(4).len(), 24 * 4);
        assert_eq!(&permutations(3)[..6], &[0, 1, 2, 0, 2, 1]);
    }

    #[test]
    fn empty_graph_canon() {
        let g = OrientedGraph::empty(3).unwrap();
        assert_eq!(canonical_form(&g).unwrap(), "o3:000");
    }

    #[test]
    fn single_arc_orientations_agree() {
        let a = OrientedGraph::from_arcs(2, &[(0, 1)]).unwrap();
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&transpose(&a)).unwrap());
        assert_eq!(canonical_form(&a).unwrap(), "o2:1");
    }

    #[test]
    fn witness_is_valid() {
        let a = OrientedGraph::from_arcs(5, &[(0, 1), (1, 2), (3, 1), (4, 0), (2, 4)]).unwrap();
        let sigma = Permutation::new(vec![3, 0, 4, 1, 2]).unwrap();
        let b = apply_permutation(&a, &sigma).unwrap();
        let w = is_isomorphic(&a, &b).expect("constructed isomorphism");
        assert_eq!(apply_permutation(&a, &w).unwrap(), b);
        assert_eq!(is_isomorphic(&a, &a), Some(Permutation::identity(5)));
    }

    #[test]
    fn different_arc_counts() {
        let a = OrientedGraph::from_arcs(3, &[(0, 1)]).unwrap();
        let b = OrientedGraph::from_arcs(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(is_isomorphic(&a, &b).is_none());
    }

    #[test]
    fn transitive_vs_cyclic_triangle() {
        let cyc = OrientedGraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let tr = OrientedGraph::from_arcs(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(is_isomorphic(&cyc, &tr).is_none());
        assert_ne!(canonical_form(&cyc).unwrap(), canonical_form(&tr).unwrap());
    }

    #[test]
    fn automorphisms() {
        let cyc = OrientedGraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let tr = OrientedGraph::from_arcs(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(automorphism_count(&cyc).unwrap(), 3);
        assert_eq!(automorphism_count(&tr).unwrap(), 1);
        assert_eq!(automorphism_count(&OrientedGraph::empty(4).unwrap()).unwrap(), 24);
    }

    #[test]
    fn canonical_rejects_large_n() {
        let g = OrientedGraph::empty(10).unwrap();
        assert!(canonical_form(&g).is_err());
    }
}
