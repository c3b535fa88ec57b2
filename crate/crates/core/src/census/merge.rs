use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{check_census_n, CensusRecord, ShardEntry};
use crate::characterization::{
    certificate_lemma_audit, fn_membership, pairwise_level_audit, snf_structure, walk_dn,
    wdgss_criterion, FnReport, Verdict,
};
use crate::error::{Error, Result};
use crate::graph::{
    automorphism_count, canonical_form, graph_count, parse_compact, transpose, OrientedGraph,
};
use crate::spectral::{fingerprint, recover_q, QCertificate, SpectralFingerprint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FindingKind {
    /// An `F_n` class with more than `2^k - 1` mate classes.
    BoundViolation,
    /// A per-certificate or pairwise level check failed.
    LemmaAudit,
    /// Mate levels not distinct, odd, above 1 and dividing `d_n`.
    LevelInvariant,
    /// Invariant factors of an `F_n` member have the wrong shape.
    SnfStructure,
    /// A WDGSS verdict disagrees with the census mates.
    Wdgss,
    /// A mate relation is not symmetric.
    MateSymmetry,
    /// No verified certificate between two cospectral controllable classes.
    Certificate,
    /// The classes do not account for every labeled graph.
    Coverage,
}

impl fmt::Display for FindingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FindingKind::BoundViolation => "bound_violation",
            FindingKind::LemmaAudit => "lemma_audit",
            FindingKind::LevelInvariant => "level_invariant",
            FindingKind::SnfStructure => "snf_structure",
            FindingKind::Wdgss => "wdgss",
            FindingKind::MateSymmetry => "mate_symmetry",
            FindingKind::Certificate => "certificate",
            FindingKind::Coverage => "coverage",
        })
    }
}

/// A property that failed during the merge.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Finding {
    pub canon: String,
    pub kind: FindingKind,
    pub detail: String,
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {}", self.kind, self.canon, self.detail)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CensusStats {
    pub n: usize,
    /// Labeled graphs accounted for by the classes, by orbit counting.
    pub labeled_graphs: u128,
    pub classes: usize,
    pub controllable_classes: usize,
    pub fn_classes: usize,
    /// Distinct generalized spectra.
    pub buckets: usize,
    /// Digest buckets holding more than one spectrum.
    pub digest_collisions: usize,
    pub certificates: usize,
    pub audit_checks: usize,
    pub bound_violations: usize,
}

impl fmt::Display for CensusStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n                     {}", self.n)?;
        writeln!(f, "labeled graphs        {}", self.labeled_graphs)?;
        writeln!(f, "isomorphism classes   {}", self.classes)?;
        writeln!(f, "controllable classes  {}", self.controllable_classes)?;
        writeln!(f, "F_n classes           {}", self.fn_classes)?;
        writeln!(f, "spectral buckets      {}", self.buckets)?;
        writeln!(f, "digest collisions     {}", self.digest_collisions)?;
        writeln!(f, "certificates          {}", self.certificates)?;
        writeln!(f, "audit checks          {}", self.audit_checks)?;
        write!(f, "bound violations      {}", self.bound_violations)
    }
}

/// Merged census: one record per isomorphism class, sorted by canon.
#[derive(Clone, Debug, Default)]
pub struct CensusOutcome {
    pub records: Vec<CensusRecord>,
    pub stats: CensusStats,
    pub findings: Vec<Finding>,
}

impl CensusOutcome {
    pub fn is_clean(&self) -> bool {
        self.findings.is_empty()
    }

    pub fn record(&self, canon: &str) -> Option<&CensusRecord> {
        self.records
            .binary_search_by(|r| r.canon.as_str().cmp(canon))
            .ok()
            .map(|i| &self.records[i])
    }

    pub fn bound_violations(&self) -> impl Iterator<Item = &CensusRecord> {
        self.records.iter().filter(|r| r.violates_bound())
    }
}

struct Class {
    canon: String,
    graph: OrientedGraph,
    digest: String,
    fingerprint: SpectralFingerprint,
}

struct Merger {
    stats: CensusStats,
    findings: Vec<Finding>,
    mates: BTreeMap<String, BTreeSet<String>>,
}

impl Merger {
    fn finding(&mut self, canon: &str, kind: FindingKind, detail: impl Into<String>) {
        self.findings.push(Finding {
            canon: canon.to_string(),
            kind,
            detail: detail.into(),
        });
    }

    fn audit_certificates(&mut self, canon: &str, report: &FnReport, certs: &[QCertificate]) {
        for c in certs {
            let audit = certificate_lemma_audit(c, report);
            self.stats.audit_checks += audit.checks.len();
            for f in audit.failures() {
                let detail = format!("-> {}: {} ({})", c.target, f.name, f.detail);
                self.finding(canon, FindingKind::LemmaAudit, detail);
            }
        }
        for (i, a) in certs.iter().enumerate() {
            for b in &certs[i + 1..] {
                let audit = pairwise_level_audit(a, b);
                self.stats.audit_checks += audit.checks.len();
                for f in audit.failures() {
                    let detail = format!("{} / {}: {} ({})", a.target, b.target, f.name, f.detail);
                    self.finding(canon, FindingKind::LemmaAudit, detail);
                }
            }
        }
    }

    fn check_levels(&mut self, canon: &str, levels: &[BigInt], dn: &BigInt) {
        let distinct: BTreeSet<&BigInt> = levels.iter().collect();
        if distinct.len() != levels.len() {
            self.finding(canon, FindingKind::LevelInvariant, format!("repeated level in {levels:?}"));
        }
        for l in levels {
            if l.is_even() || l <= &BigInt::one() || !(dn % l).is_zero() {
                let detail = format!("level {l} (d_n = {dn})");
                self.finding(canon, FindingKind::LevelInvariant, detail);
            }
        }
    }

    fn check_snf(&mut self, g: &OrientedGraph, canon: &str, report: &FnReport, dn: &BigInt) {
        match snf_structure(g) {
            Ok(s) if s.holds() => {}
            Ok(s) => {
                let detail = format!("invariant factors {:?}", s.invariant_factors);
                self.finding(canon, FindingKind::SnfStructure, detail)
            }
            Err(e) => self.finding(canon, FindingKind::SnfStructure, e.to_string()),
        }
        let reduced = report.reduced.as_ref().expect("members have a reduced value");
        if g.n() >= 2 && *dn != reduced.abs() * 2 {
            let detail = format!("d_n = {dn}, reduced = {reduced}");
            self.finding(canon, FindingKind::SnfStructure, detail);
        }
    }

    fn record(&mut self, class: &Class, group: &[&Class]) -> CensusRecord {
        let g = &class.graph;
        let canon = class.canon.as_str();
        let report = fn_membership(g);
        let controllable = !report.det_walk.is_zero();
        let transpose_canon = canonical_form(&transpose(g)).expect("census order");
        let self_transpose = transpose_canon == class.canon;
        let wdgss = wdgss_criterion(g);
        if wdgss.self_transpose != self_transpose {
            self.finding(canon, FindingKind::Wdgss, "isomorphism search and canonical forms disagree");
        }
        let mates: Vec<&Class> = group.iter().copied().filter(|m| m.canon != class.canon).collect();

        let mut certs = Vec::new();
        if controllable {
            for m in &mates {
                match recover_q(g, &m.graph) {
                    Ok(c) => certs.push(c),
                    Err(e) => self.finding(canon, FindingKind::Certificate, format!("-> {}: {e}", m.canon)),
                }
            }
        }
        self.stats.certificates += certs.len();
        let mut levels: Vec<BigInt> = certs.iter().map(|c| c.level.clone()).collect();
        levels.sort();

        if report.is_member {
            self.stats.fn_classes += 1;
            match walk_dn(g) {
                Ok(dn) => {
                    self.check_levels(canon, &levels, &dn);
                    self.check_snf(g, canon, &report, &dn);
                }
                Err(e) => self.finding(canon, FindingKind::SnfStructure, e.to_string()),
            }
            self.audit_certificates(canon, &report, &certs);
        }
        if controllable {
            self.stats.controllable_classes += 1;
        }
        if wdgss.verdict == Verdict::WdgssByCriterion
            && !(mates.len() == 1 && mates[0].canon == transpose_canon)
        {
            let names: Vec<&str> = mates.iter().map(|m| m.canon.as_str()).collect();
            let detail = format!("mates {names:?}, transpose {transpose_canon}");
            self.finding(canon, FindingKind::Wdgss, detail);
        }
        if self_transpose && mates.iter().any(|m| m.canon == transpose_canon) {
            self.finding(canon, FindingKind::Wdgss, "self-transpose class lists its transpose");
        }
        self.mates.insert(
            class.canon.clone(),
            mates.iter().map(|m| m.canon.clone()).collect(),
        );

        let record = CensusRecord {
            canon: class.canon.clone(),
            n: g.n(),
            controllable,
            det_walk: report.det_walk.to_string(),
            in_fn: report.is_member,
            odd_primes: report.odd_primes.iter().map(|p| p.to_string()).collect(),
            k: report.k,
            bound: report.bound,
            fingerprint_digest: class.digest.clone(),
            mate_class_count: mates.len(),
            mate_levels: levels.iter().map(BigInt::to_string).collect(),
            self_transpose,
            wdgss_by_criterion: wdgss.verdict == Verdict::WdgssByCriterion,
        };
        if record.violates_bound() {
            self.stats.bound_violations += 1;
            let detail = format!("{} mate classes, bound {}", record.mate_class_count, record.bound);
            self.finding(canon, FindingKind::BoundViolation, detail);
        }
        record
    }

    fn check_symmetry(&mut self) {
        let mut broken = Vec::new();
        for (a, bs) in &self.mates {
            for b in bs {
                if !self.mates.get(b).is_some_and(|back| back.contains(a)) {
                    broken.push((a.clone(), format!("lists {b}, which does not list it back")));
                }
            }
        }
        for (a, detail) in broken {
            self.finding(&a, FindingKind::MateSymmetry, detail);
        }
    }
}

fn load_class(n: usize, entry: ShardEntry) -> Result<Class> {
    let graph = parse_compact(&entry.canon)?;
    if graph.n() != n {
        return Err(Error::InvalidGraph(format!(
            "{} has order {}, census is for n = {n}",
            entry.canon,
            graph.n()
        )));
    }
    if canonical_form(&graph)? != entry.canon {
        return Err(Error::InvalidGraph(format!("{} is not in canonical form", entry.canon)));
    }
    Ok(Class {
        canon: entry.canon,
        graph,
        digest: entry.digest,
        fingerprint: fingerprint(&graph),
    })
}

/// Phase 2: groups the phase-1 entries of every shard by spectrum, resolves
/// certificates and audits, and emits one record per class. Single-threaded
/// and independent of entry order, duplicates and shard count.
pub fn merge(n: usize, entries: impl IntoIterator<Item = ShardEntry>) -> Result<CensusOutcome> {
    check_census_n(n)?;
    let unique: BTreeMap<String, ShardEntry> = entries
        .into_iter()
        .map(|e| (e.canon.clone(), e))
        .collect();
    let mut by_digest: BTreeMap<String, Vec<Class>> = BTreeMap::new();
    for (_, e) in unique {
        let class = load_class(n, e)?;
        by_digest.entry(class.digest.clone()).or_default().push(class);
    }

    let mut m = Merger {
        stats: CensusStats {
            n,
            ..CensusStats::default()
        },
        findings: Vec::new(),
        mates: BTreeMap::new(),
    };
    let mut records = Vec::new();
    for (digest, bucket) in &by_digest {
        let mut groups: BTreeMap<&SpectralFingerprint, Vec<&Class>> = BTreeMap::new();
        for c in bucket {
            groups.entry(&c.fingerprint).or_default().push(c);
        }
        for (fp, group) in &groups {
            if fp.digest() != *digest {
                return Err(Error::InvalidGraph(format!(
                    "{} carries digest {digest}, its fingerprint hashes to {}",
                    group[0].canon,
                    fp.digest()
                )));
            }
        }
        m.stats.digest_collisions += groups.len() - 1;
        m.stats.buckets += groups.len();
        for group in groups.values() {
            for class in group {
                records.push(m.record(class, group));
            }
        }
    }
    m.check_symmetry();

    let factorial: u128 = (1..=n as u128).product();
    for class in by_digest.values().flatten() {
        m.stats.labeled_graphs += factorial / automorphism_count(&class.graph)? as u128;
    }
    m.stats.classes = records.len();
    let expected = graph_count(n)?;
    if m.stats.labeled_graphs != expected {
        let detail = format!("classes cover {} of {expected} labeled graphs", m.stats.labeled_graphs);
        m.finding("*", FindingKind::Coverage, detail);
    }

    records.sort_by(|a, b| a.canon.cmp(&b.canon));
    m.findings.sort();
    Ok(CensusOutcome {
        records,
        stats: m.stats,
        findings: m.findings,
    })
}
