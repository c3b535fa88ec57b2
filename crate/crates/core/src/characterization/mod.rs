//! Arithmetic of the walk-matrix determinant and the mate bound built on it.
//!
//! For an oriented graph `D` of order `n`, `2^-⌊n/2⌋ · det W(D)` is always an
//! integer. When it is odd and square-free, `D` belongs to the family `F_n`,
//! and `D` has at most `2^k - 1` non-isomorphic generalized cospectral mates,
//! `k` being the number of distinct odd primes dividing `det W(D)`.

mod audit;
mod factor;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use audit::{certificate_lemma_audit, pairwise_level_audit, AuditCheck, AuditResult};
pub use factor::{
    factorize, is_prime, is_prime_u64, FactoredInteger, MILLER_RABIN_ROUNDS, RHO_CONSTANTS,
    TRIAL_DIVISION_LIMIT,
};

use crate::error::{Error, Result};
use crate::graph::{is_isomorphic, transpose, OrientedGraph};
use crate::linalg::{rank_mod_p, smith_normal_form, SnfDecomposition};
use crate::spectral::{walk_det, walk_matrix};

/// Membership of a graph in `F_n`, with the quantities the bound needs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FnReport {
    pub n: usize,
    pub det_walk: BigInt,
    pub factorization: FactoredInteger,
    /// `det W · 2^-⌊n/2⌋` when that is an integer.
    pub reduced: Option<BigInt>,
    pub is_member: bool,
    /// Distinct odd primes of `det W`, ascending.
    pub odd_primes: Vec<BigUint>,
    /// `|reduced|` for members: the odd square-free part of the last
    /// invariant factor of `W(D)ᵀ`.
    pub b: Option<BigInt>,
    pub k: usize,
    pub bound: u64,
}

fn two_power(n: usize) -> BigInt {
    BigInt::one() << (n / 2)
}

fn bound_for(k: usize) -> u64 {
    1u64.checked_shl(k as u32).map_or(u64::MAX, |p| p - 1)
}

/// `det W`, its factorization and the `F_n` verdict.
pub fn fn_membership(d: &OrientedGraph) -> FnReport {
    let n = d.n();
    let det_walk = walk_det(d);
    let factorization = factorize(&det_walk);
    let scale = two_power(n);
    let reduced = if det_walk.is_zero() {
        None
    } else {
        let (q, r) = det_walk.div_rem(&scale);
        r.is_zero().then_some(q)
    };
    let is_member = match &reduced {
        Some(r) => r.is_odd() && factorize(r).is_square_free(),
        None => false,
    };
    let odd_primes = factorization.odd_primes();
    if let Some(r) = &reduced {
        // 2^⌊n/2⌋ contributes no odd primes
        debug_assert_eq!(factorize(r).odd_primes(), odd_primes);
    }
    let k = odd_primes.len();
    FnReport {
        n,
        b: if is_member {
            reduced.as_ref().map(|r| r.abs())
        } else {
            None
        },
        det_walk,
        factorization,
        reduced,
        is_member,
        odd_primes,
        k,
        bound: bound_for(k),
    }
}

/// `2^k - 1`, the most non-isomorphic generalized cospectral mates a member
/// of `F_n` can have.
pub fn mate_bound(report: &FnReport) -> Result<u64> {
    if !report.is_member {
        return Err(Error::Inapplicable(format!(
            "graph is not in F_{} (det W = {})",
            report.n, report.det_walk
        )));
    }
    Ok(report.bound)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    WdgssByCriterion,
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::WdgssByCriterion => "wdgss_by_criterion",
            Verdict::NotApplicable => "not_applicable",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WdgssVerdict {
    pub applicable: bool,
    pub self_transpose: bool,
    pub reduced_is_odd_prime: bool,
    pub verdict: Verdict,
}

pub fn is_self_transpose(d: &OrientedGraph) -> bool {
    is_isomorphic(d, &transpose(d)).is_some()
}

/// A graph that is not self-transpose and whose reduced walk determinant is
/// (in absolute value) an odd prime is weakly determined by its generalized
/// skew spectrum: its transpose is its only mate.
pub fn wdgss_criterion(d: &OrientedGraph) -> WdgssVerdict {
    let report = fn_membership(d);
    let self_transpose = is_self_transpose(d);
    let reduced_is_odd_prime = report
        .reduced
        .as_ref()
        .is_some_and(|r| r.is_odd() && is_prime(r.magnitude()));
    let applicable = !self_transpose && reduced_is_odd_prime;
    WdgssVerdict {
        applicable,
        self_transpose,
        reduced_is_odd_prime,
        verdict: if applicable {
            Verdict::WdgssByCriterion
        } else {
            Verdict::NotApplicable
        },
    }
}

/// Smith normal form of `W(D)ᵀ`.
pub fn walk_snf(d: &OrientedGraph) -> Result<SnfDecomposition> {
    smith_normal_form(&walk_matrix(d).transpose())
}

/// Last invariant factor `d_n` of the walk matrix.
pub fn walk_dn(d: &OrientedGraph) -> Result<BigInt> {
    Ok(walk_snf(d)?.last().clone())
}

/// Invariant-factor shape expected of an `F_n` member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfStructure {
    pub invariant_factors: Vec<BigInt>,
    pub rank_mod_2: usize,
    /// `d_n` of `W(D)` itself, for comparison with that of `W(D)ᵀ`.
    pub dn_untransposed: BigInt,
    pub factors_match: bool,
    pub rank_matches: bool,
}

impl SnfStructure {
    pub fn holds(&self) -> bool {
        self.factors_match
            && self.rank_matches
            && self.invariant_factors.last() == Some(&self.dn_untransposed)
    }
}

/// Checks that `W(D)ᵀ` has invariant factors `⌈n/2⌉` ones, then `⌊n/2⌋ - 1`
/// twos, then `2b` with `b` odd and square-free, and that
/// `rank_2(W(D)) = ⌈n/2⌉`.
pub fn snf_structure(d: &OrientedGraph) -> Result<SnfStructure> {
    let report = fn_membership(d);
    if !report.is_member {
        return Err(Error::Inapplicable(format!(
            "SNF structure is only claimed for F_n members (det W = {})",
            report.det_walk
        )));
    }
    let n = d.n();
    let w = walk_matrix(d);
    let snf = smith_normal_form(&w.transpose())?;
    let dn_untransposed = smith_normal_form(&w)?.last().clone();
    let ones = n.div_ceil(2);
    let rest = n / 2;
    let f = &snf.n_diag;
    let two = BigInt::from(2);
    let mut factors_match = f[..ones].iter().all(One::is_one);
    if rest > 0 {
        factors_match &= f[ones..n - 1].iter().all(|x| *x == two);
        let last = &f[n - 1];
        let (b, r) = last.div_rem(&two);
        factors_match &= r.is_zero() && b.is_odd() && factorize(&b).is_square_free();
    }
    let rank_mod_2 = rank_mod_p(&w, 2)?;
    Ok(SnfStructure {
        invariant_factors: snf.n_diag,
        rank_mod_2,
        dn_untransposed,
        factors_match,
        rank_matches: rank_mod_2 == ones,
    })
}

pub fn snf_structure_check(d: &OrientedGraph) -> Result<bool> {
    Ok(snf_structure(d)?.holds())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_values() {
        assert_eq!(bound_for(0), 0);
        assert_eq!(bound_for(1), 1);
        assert_eq!(bound_for(2), 3);
        assert_eq!(bound_for(64), u64::MAX);
    }

    #[test]
    fn triangle_is_not_a_member() {
        let t = OrientedGraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let r = fn_membership(&t);
        assert!(r.det_walk.is_zero());
        assert!(!r.is_member);
        assert!(r.reduced.is_none());
        assert!(matches!(mate_bound(&r), Err(Error::Inapplicable(_))));
        assert!(snf_structure_check(&t).is_err());
        assert_eq!(wdgss_criterion(&t).verdict, Verdict::NotApplicable);
    }

    #[test]
    fn single_arc() {
        let g = OrientedGraph::from_arcs(2, &[(0, 1)]).unwrap();
        let r = fn_membership(&g);
        assert_eq!(r.det_walk, BigInt::from(-2));
        assert_eq!(r.reduced, Some(BigInt::from(-1)));
        assert!(r.is_member);
        assert_eq!(r.k, 0);
        assert_eq!(mate_bound(&r).unwrap(), 0);
        let v = wdgss_criterion(&g);
        assert!(v.self_transpose);
        assert_eq!(v.verdict, Verdict::NotApplicable);
        // W^T = [[1, 1], [1, -1]] -> diag(1, 2), b = 1
        let s = snf_structure(&g).unwrap();
        assert_eq!(s.invariant_factors, vec![BigInt::one(), BigInt::from(2)]);
        assert!(s.holds());
    }

    #[test]
    fn single_vertex() {
        let g = OrientedGraph::empty(1).unwrap();
        let r = fn_membership(&g);
        assert!(r.is_member);
        assert_eq!(r.bound, 0);
        assert!(snf_structure_check(&g).unwrap());
    }
}
