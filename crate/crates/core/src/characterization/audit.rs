//! Exact checks of the level constraints every certificate from an `F_n`
//! source must satisfy. A failing check is a finding, not an error.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{factorize, walk_dn, FnReport};
use crate::graph::is_isomorphic;
use crate::linalg::{mat_mul, rank_mod_p};
use crate::spectral::{verify_gamma_membership, walk_det, QCertificate};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AuditResult {
    pub checks: Vec<AuditCheck>,
}

impl AuditResult {
    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(AuditCheck {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AuditCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for AuditResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "  [{}] {}: {}",
                if c.passed { "pass" } else { "FAIL" },
                c.name,
                c.detail
            )?;
        }
        Ok(())
    }
}

fn odd_prime_divisors(x: &BigInt) -> Vec<BigInt> {
    factorize(x)
        .odd_primes()
        .into_iter()
        .map(BigInt::from)
        .collect()
}

/// Per-certificate checks for a certificate whose source lies in `F_n`:
///
/// * the level is odd;
/// * the level divides `d_n` of both walk matrices, and the two walk
///   determinants agree up to sign;
/// * for every odd prime `p` dividing the level, `Q̄ = d_n · Q` has rank 1
///   over `F_p` and `Q̄ᵀQ̄ ≡ 0 (mod p²)`.
pub fn certificate_lemma_audit(cert: &QCertificate, report: &FnReport) -> AuditResult {
    let mut out = AuditResult::default();
    out.push(
        "source in F_n",
        report.is_member,
        format!("det W(source) = {}", report.det_walk),
    );
    if !report.is_member {
        return out;
    }
    out.push(
        "certificate verifies",
        verify_gamma_membership(cert),
        "QᵀQ = I, Qe = e, QᵀS(D)Q = S(C)",
    );
    let level = &cert.level;
    out.push("level odd", level.is_odd(), format!("level = {level}"));

    let (dn_source, dn_target) = match (walk_dn(&cert.source), walk_dn(&cert.target)) {
        (Ok(a), Ok(b)) => (a, b),
        _ => {
            out.push("walk matrices nonsingular", false, "SNF failed");
            return out;
        }
    };
    out.push(
        "level divides d_n(W(source))",
        (&dn_source % level).is_zero(),
        format!("{level} | {dn_source}"),
    );
    out.push(
        "level divides d_n(W(target))",
        (&dn_target % level).is_zero(),
        format!("{level} | {dn_target}"),
    );
    let det_target = walk_det(&cert.target);
    out.push(
        "det W(target) = ±det W(source)",
        det_target == report.det_walk || det_target == -&report.det_walk,
        format!("{det_target} vs {}", report.det_walk),
    );

    let Some(q_bar) = cert.q.scaled_to_int(&dn_source) else {
        out.push("d_n·Q integral", false, format!("d_n = {dn_source}"));
        return out;
    };
    for p in odd_prime_divisors(level) {
        let Some(p_small) = p.to_u64() else {
            out.push(format!("rank_{p}(d_n·Q) = 1"), false, "prime exceeds 64 bits");
            continue;
        };
        let rank = rank_mod_p(&q_bar, p_small).unwrap_or(usize::MAX);
        out.push(
            format!("rank_{p}(d_n·Q) = 1"),
            rank == 1,
            format!("rank = {rank}, d_n = {dn_source}"),
        );
        let gram = mat_mul(&q_bar.transpose(), &q_bar).expect("square");
        let p2 = &p * &p;
        out.push(
            format!("(d_n·Q)ᵀ(d_n·Q) ≡ 0 mod {p}²"),
            gram.divisible_by(&p2),
            format!("modulus {p2}"),
        );
    }
    out
}

/// Checks between two certificates from the same `F_n` source: for every
/// odd prime `p` shared by their levels, `p ∤ ℓ(Q₁ᵀQ₂)`; and equal levels
/// force `Q₁ᵀQ₂` to be a permutation matrix with isomorphic targets.
pub fn pairwise_level_audit(c1: &QCertificate, c2: &QCertificate) -> AuditResult {
    let mut out = AuditResult::default();
    let same = c1.source == c2.source;
    out.push("same source", same, format!("{} / {}", c1.source, c2.source));
    if !same {
        return out;
    }
    let composite = c1.q.transpose().mul(&c2.q).expect("square");
    let composite_level = composite.level();
    let p1 = odd_prime_divisors(&c1.level);
    let p2 = odd_prime_divisors(&c2.level);
    for p in p1.iter().filter(|p| p2.contains(p)) {
        out.push(
            format!("{p} ∤ ℓ(Q₁ᵀQ₂)"),
            !(&composite_level % p).is_zero(),
            format!("ℓ(Q₁ᵀQ₂) = {composite_level}"),
        );
    }
    if c1.level == c2.level {
        out.push(
            "equal levels give a permutation composite",
            composite.is_permutation(),
            format!("levels {} and {}", c1.level, c2.level),
        );
        out.push(
            "equal levels give isomorphic targets",
            is_isomorphic(&c1.target, &c2.target).is_some(),
            format!("{} vs {}", c1.target, c2.target),
        );
    }
    out
}
