use std::collections::BTreeSet;
use std::ops::Range;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::characterization::{
    certificate_lemma_audit, fn_membership, pairwise_level_audit, wdgss_criterion, AuditResult,
    Verdict,
};
use super::CensusRecord;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::graph::{
    canonical_form, graph_count, is_canonical, is_isomorphic, parse_compact, transpose,
    GraphStream, OrientedGraph, MAX_ENUMERATION_N,
};
use crate::spectral::{fingerprint, generalized_cospectral, recover_q, QCertificate};

/// The isomorphism classes sharing one generalized skew spectrum, with
/// certificates from the representative to every other class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MateClassReport {
    pub representative: String,
    /// Canonical forms of every class in the bucket, the representative
    /// included, ascending.
    pub members: Vec<String>,
    /// Empty when the representative is not controllable.
    pub certificates: Vec<QCertificate>,
    /// Per-certificate audits, same order as `certificates`. Only run when
    /// the source is in `F_n`.
    pub audits: Vec<AuditResult>,
    pub pairwise_audits: Vec<AuditResult>,
}

impl MateClassReport {
    pub fn mate_classes(&self) -> impl Iterator<Item = &String> {
        self.members.iter().filter(move |m| **m != self.representative)
    }

    pub fn mate_count(&self) -> usize {
        self.members.len() - 1
    }

    /// Certificate levels, ascending.
    pub fn levels(&self) -> Vec<BigInt> {
        let mut l: Vec<BigInt> = self.certificates.iter().map(|c| c.level.clone()).collect();
        l.sort();
        l
    }

    pub fn audits_passed(&self) -> bool {
        self.audits.iter().chain(&self.pairwise_audits).all(AuditResult::all_passed)
    }
}

fn certify(
    source: &OrientedGraph,
    representative: String,
    members: Vec<String>,
    targets: &[OrientedGraph],
) -> Result<MateClassReport> {
    let report = fn_membership(source);
    let mut certificates = Vec::new();
    if !report.det_walk.is_zero() {
        for t in targets {
            certificates.push(recover_q(source, t)?);
        }
    }
    let (mut audits, mut pairwise_audits) = (Vec::new(), Vec::new());
    if report.is_member {
        audits = certificates
            .iter()
            .map(|c| certificate_lemma_audit(c, &report))
            .collect();
        for (i, a) in certificates.iter().enumerate() {
            for b in &certificates[i + 1..] {
                pairwise_audits.push(pairwise_level_audit(a, b));
            }
        }
    }
    Ok(MateClassReport {
        representative,
        members,
        certificates,
        audits,
        pairwise_audits,
    })
}

fn scan(d: &OrientedGraph, codes: Range<u128>) -> Vec<OrientedGraph> {
    let arcs = d.arc_count();
    let target = fingerprint(d);
    GraphStream::over(d.n(), codes)
        .filter(|g| g.arc_count() == arcs && is_canonical(g) && fingerprint(g) == target)
        .collect()
}

/// Every class generalized cospectral with `d`, by exhaustive search over
/// all labeled graphs of its order. Certificates start at `d`'s canonical
/// relabeling and end at each mate's canonical relabeling.
pub fn find_mates(d: &OrientedGraph, exec: Execution) -> Result<MateClassReport> {
    let n = d.n();
    if n > MAX_ENUMERATION_N {
        return Err(Error::Unsupported(format!(
            "exhaustive mate search needs n <= {MAX_ENUMERATION_N}, got {n}; use candidate verification"
        )));
    }
    let total = graph_count(n)?;
    let chunk = 1u128 << 14;
    let chunks: Vec<Range<u128>> = (0..total.div_ceil(chunk))
        .map(|i| i * chunk..((i + 1) * chunk).min(total))
        .collect();
    let found: Vec<OrientedGraph> = exec.map(chunks, |r| scan(d, r)).into_iter().flatten().collect();

    let representative = canonical_form(d)?;
    let source = parse_compact(&representative)?;
    let members: Vec<String> = found.iter().map(|g| g.to_string()).collect();
    let targets: Vec<OrientedGraph> = found.into_iter().filter(|g| *g != source).collect();
    certify(&source, representative, members, &targets)
}

/// The census record of `d`'s class, with mates found by [`find_mates`].
pub fn single_record(d: &OrientedGraph, exec: Execution) -> Result<CensusRecord> {
    let mates = find_mates(d, exec)?;
    let source = parse_compact(&mates.representative)?;
    let report = fn_membership(&source);
    let self_transpose = canonical_form(&transpose(&source))? == mates.representative;
    let wdgss = wdgss_criterion(&source);
    Ok(CensusRecord {
        canon: mates.representative.clone(),
        n: source.n(),
        controllable: !report.det_walk.is_zero(),
        det_walk: report.det_walk.to_string(),
        in_fn: report.is_member,
        odd_primes: report.odd_primes.iter().map(|p| p.to_string()).collect(),
        k: report.k,
        bound: report.bound,
        fingerprint_digest: fingerprint(&source).digest(),
        mate_class_count: mates.mate_count(),
        mate_levels: mates.levels().iter().map(BigInt::to_string).collect(),
        self_transpose,
        wdgss_by_criterion: wdgss.verdict == Verdict::WdgssByCriterion,
    })
}

/// Checks a candidate mate `c` of `d` and reports the classes of `c`, `Dᵀ`
/// and `Cᵀ` that differ from `d`'s. Certificates start at `d` as given.
pub fn verify_candidate_mate(d: &OrientedGraph, c: &OrientedGraph) -> Result<MateClassReport> {
    if !generalized_cospectral(d, c)? {
        return Err(Error::NotCospectral);
    }
    if is_isomorphic(d, c).is_some() {
        return Err(Error::Isomorphic);
    }
    let representative = canonical_form(d)?;
    let mut seen = BTreeSet::from([representative.clone()]);
    let mut targets = Vec::new();
    for g in [*c, transpose(d), transpose(c)] {
        if seen.insert(canonical_form(&g)?) {
            targets.push(g);
        }
    }
    let members = seen.into_iter().collect();
    certify(d, representative, members, &targets)
}
