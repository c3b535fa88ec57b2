use std::fmt::Write as _;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde_json::json;
use skewmate::census::{
    export_records, find_mates, merge, read_shard_entries, run_census, run_shard_to_dir,
    shard_complete, single_record, CensusOutcome, PersistOptions, ShardFiles,
};
use skewmate::characterization::{
    certificate_lemma_audit, fn_membership, mate_bound, snf_structure, walk_snf, wdgss_criterion,
    AuditResult, Verdict,
};
use skewmate::exec::configure_threads;
use skewmate::graph::{canonical_form, is_isomorphic, MAX_ENUMERATION_N};
use skewmate::reference::{verify_reference, ReferenceFixtures};
use skewmate::spectral::{generalized_cospectral, is_controllable, recover_q};
use skewmate::{Error, Execution, OrientedGraph};

use crate::input::load_graph;
use crate::{CensusArgs, Command, GlobalOpts};

pub const OK: u8 = 0;
pub const FINDING: u8 = 1;
pub const INPUT: u8 = 2;

/// A command's result: text for stdout (or `--out`) and an exit code.
struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: OK }
    }
}

/// Failure before any output: message for stderr plus exit code.
struct Failure {
    msg: String,
    code: u8,
}

impl Failure {
    fn input(msg: impl Into<String>) -> Self {
        Failure {
            msg: msg.into(),
            code: INPUT,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotCospectralMate(_) => FINDING,
            _ => INPUT,
        };
        Failure {
            msg: e.to_string(),
            code,
        }
    }
}

type CmdResult = Result<Output, Failure>;

fn graph(arg: &str) -> Result<OrientedGraph, Failure> {
    load_graph(arg).map_err(Failure::input)
}

fn json_line(v: serde_json::Value) -> String {
    format!("{v}\n")
}

pub fn run(global: GlobalOpts, command: Command) -> u8 {
    if let Some(k) = global.threads {
        configure_threads(k as usize);
    }
    let result = match &command {
        Command::Analyze { graph } => analyze(graph, &global),
        Command::Mates { graph } => mates(graph, &global),
        Command::Qmat { d, c } => qmat(d, c, &global),
        Command::Iso { a, b } => iso(a, b, &global),
        Command::Canon { graph } => canon(graph, &global),
        Command::Census(args) => census(args, &global),
        Command::VerifyReference => verify_reference_cmd(&global),
    };
    match result {
        Ok(out) => {
            // census writes its records to --out itself
            let target = match command {
                Command::Census(_) => None,
                _ => global.out.as_deref(),
            };
            if let Err(e) = emit(&out.text, target) {
                eprintln!("error: {e}");
                return INPUT;
            }
            out.code
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            f.code
        }
    }
}

fn emit(text: &str, target: Option<&Path>) -> std::io::Result<()> {
    match target {
        Some(path) => fs::write(path, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}

fn analyze(arg: &str, global: &GlobalOpts) -> CmdResult {
    let d = graph(arg)?;
    if global.structured {
        if d.n() > MAX_ENUMERATION_N {
            return Err(Failure::input(format!(
                "structured records need an exhaustive mate search, available for n <= {MAX_ENUMERATION_N}"
            )));
        }
        let record = single_record(&d, Execution::default())?;
        let mut buf = Vec::new();
        export_records([&record], &mut buf)?;
        return Ok(Output::ok(String::from_utf8(buf).expect("utf-8")));
    }

    let report = fn_membership(&d);
    let mut s = String::new();
    let row = |s: &mut String, k: &str, v: &dyn std::fmt::Display| {
        let _ = writeln!(s, "{k:<22}{v}");
    };
    row(&mut s, "graph", &d);
    row(&mut s, "n", &d.n());
    row(&mut s, "canonical form", &canonical_form(&d)?);
    let controllable = is_controllable(&d);
    row(&mut s, "controllable", &controllable);
    row(&mut s, "det W", &report.det_walk);
    row(&mut s, "factorization", &report.factorization);
    if !controllable {
        s.push_str("not controllable; criteria inapplicable\n");
        return Ok(Output::ok(s));
    }
    let reduced = report.reduced.as_ref().map_or("-".to_string(), |r| r.to_string());
    row(&mut s, "reduced det", &reduced);
    row(&mut s, "in F_n", &report.is_member);
    row(&mut s, "k", &report.k);
    match mate_bound(&report) {
        Ok(b) => row(&mut s, "mate bound", &b),
        Err(_) => row(&mut s, "mate bound", &"inapplicable (not in F_n)"),
    }
    let snf = walk_snf(&d)?;
    let factors: Vec<String> = snf.n_diag.iter().map(|x| x.to_string()).collect();
    row(&mut s, "SNF of Wᵀ", &format!("({})", factors.join(", ")));
    if report.is_member {
        let structure = snf_structure(&d)?;
        row(&mut s, "SNF structure", &if structure.holds() { "as expected" } else { "UNEXPECTED" });
    }
    let w = wdgss_criterion(&d);
    row(&mut s, "self-transpose", &w.self_transpose);
    row(&mut s, "reduced is odd prime", &w.reduced_is_odd_prime);
    let verdict = match w.verdict {
        Verdict::WdgssByCriterion => "WDGSS by criterion",
        Verdict::NotApplicable => "criterion not applicable",
    };
    row(&mut s, "WDGSS", &verdict);
    Ok(Output::ok(s))
}

fn audit_json(a: &AuditResult) -> serde_json::Value {
    let checks: Vec<_> = a
        .checks
        .iter()
        .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
        .collect();
    json!({"passed": a.all_passed(), "checks": checks})
}

fn mates(arg: &str, global: &GlobalOpts) -> CmdResult {
    let d = graph(arg)?;
    if d.n() > MAX_ENUMERATION_N {
        return Err(Failure::input(format!(
            "exhaustive search needs n <= {MAX_ENUMERATION_N}; use `qmat D C` to verify a candidate"
        )));
    }
    let r = find_mates(&d, Execution::default())?;
    let report = fn_membership(&d);
    let over_bound = report.is_member && r.mate_count() as u64 > report.bound;
    let code = if over_bound || !r.audits_passed() { FINDING } else { OK };
    if global.structured {
        let certs: Vec<_> = r
            .certificates
            .iter()
            .map(|c| json!({"target": c.target.to_string(), "level": c.level.to_string()}))
            .collect();
        let v = json!({
            "representative": r.representative,
            "members": r.members,
            "mate_class_count": r.mate_count(),
            "bound": report.is_member.then_some(report.bound),
            "certificates": certs,
            "audits_passed": r.audits_passed(),
        });
        return Ok(Output { text: json_line(v), code });
    }
    let mut s = String::new();
    let _ = writeln!(s, "class of {d}: {}", r.representative);
    let _ = writeln!(s, "mate classes: {}", r.mate_count());
    if report.is_member {
        let _ = writeln!(s, "bound: {}{}", report.bound, if over_bound { "  EXCEEDED" } else { "" });
    }
    for m in r.mate_classes() {
        let level = r
            .certificates
            .iter()
            .find(|c| c.target.to_string() == *m)
            .map_or("-".to_string(), |c| c.level.to_string());
        let _ = writeln!(s, "  {m}  level {level}");
    }
    if !r.audits.is_empty() {
        let verdict = if r.audits_passed() { "all passed" } else { "FAILED" };
        let _ = writeln!(s, "lemma audits: {verdict}");
        for a in r.audits.iter().chain(&r.pairwise_audits).filter(|a| !a.all_passed()) {
            s.push_str(&a.to_string());
        }
    }
    Ok(Output { text: s, code })
}

fn qmat(d_arg: &str, c_arg: &str, global: &GlobalOpts) -> CmdResult {
    let d = graph(d_arg)?;
    let c = graph(c_arg)?;
    if !generalized_cospectral(&d, &c)? {
        return Err(Error::NotCospectral.into());
    }
    if !is_controllable(&d) {
        return Err(Error::NotControllable("source").into());
    }
    let cert = recover_q(&d, &c)?;
    let report = fn_membership(&d);
    let audit = report.is_member.then(|| certificate_lemma_audit(&cert, &report));
    let code = if audit.as_ref().is_some_and(|a| !a.all_passed()) { FINDING } else { OK };
    if global.structured {
        let n = cert.q.rows();
        let rows: Vec<Vec<String>> = (0..n)
            .map(|i| (0..n).map(|j| cert.q[(i, j)].to_string()).collect())
            .collect();
        let v = json!({
            "source": d.to_string(),
            "target": c.to_string(),
            "level": cert.level.to_string(),
            "q": rows,
            "audit": audit.as_ref().map(audit_json),
        });
        return Ok(Output { text: json_line(v), code });
    }
    let mut s = String::new();
    let _ = writeln!(s, "Q = W(D) W(C)^-1 for D = {d}, C = {c}");
    s.push_str(&cert.q.to_string());
    let _ = writeln!(s, "level {}", cert.level);
    match &audit {
        Some(a) => {
            let _ = writeln!(s, "lemma audit ({}):", if a.all_passed() { "passed" } else { "FAILED" });
            s.push_str(&a.to_string());
        }
        None => s.push_str("source not in F_n; lemma audit skipped\n"),
    }
    Ok(Output { text: s, code })
}

fn iso(a_arg: &str, b_arg: &str, global: &GlobalOpts) -> CmdResult {
    let a = graph(a_arg)?;
    let b = graph(b_arg)?;
    let witness = is_isomorphic(&a, &b);
    let text = if global.structured {
        json_line(json!({
            "isomorphic": witness.is_some(),
            "witness": witness.as_ref().map(|w| w.images().to_vec()),
        }))
    } else {
        match witness {
            Some(w) => format!("isomorphic\nwitness {w}\n"),
            None => "not isomorphic\n".to_string(),
        }
    };
    Ok(Output::ok(text))
}

fn canon(arg: &str, global: &GlobalOpts) -> CmdResult {
    let d = graph(arg)?;
    let c = canonical_form(&d)?;
    let text = if global.structured {
        json_line(json!({"graph": d.to_string(), "canon": c}))
    } else {
        format!("{c}\n")
    };
    Ok(Output::ok(text))
}

fn parts_dir(out: &Path) -> PathBuf {
    let mut name = out.file_name().unwrap_or_default().to_os_string();
    name.push(".parts");
    out.with_file_name(name)
}

fn census(args: &CensusArgs, global: &GlobalOpts) -> CmdResult {
    let exec = Execution::default();
    if args.shards == 0 {
        return Err(Failure::input("--shards must be positive"));
    }
    if let Some(i) = args.shard {
        if i >= args.shards {
            return Err(Failure::input(format!("--shard {i} is not below --shards {}", args.shards)));
        }
    }
    let Some(out) = global.out.as_deref() else {
        if args.shard.is_some() || args.resume {
            return Err(Failure::input("--shard and --resume need --out"));
        }
        let outcome = run_census(args.n, args.shards, exec)?;
        return census_output(&outcome, None, global.structured);
    };

    let dir = parts_dir(out);
    let opts = PersistOptions {
        resume: args.resume,
        ..PersistOptions::default()
    };
    let mut progress = String::new();
    let todo: Vec<usize> = match args.shard {
        Some(i) => vec![i],
        None => (0..args.shards).collect(),
    };
    for i in todo {
        if args.resume && shard_complete(args.n, i, args.shards, &dir)? {
            let _ = writeln!(progress, "shard {i}/{}: already complete", args.shards);
            continue;
        }
        let p = run_shard_to_dir(args.n, i, args.shards, &dir, opts, exec)?;
        let _ = writeln!(
            progress,
            "shard {i}/{}: scanned {} graphs, {} classes",
            args.shards, p.scanned, p.emitted
        );
    }
    eprint!("{progress}");

    for i in 0..args.shards {
        if !shard_complete(args.n, i, args.shards, &dir)? {
            let msg = format!("phase 1 written to {}; merge waits for all shards\n", dir.display());
            return Ok(Output::ok(if global.structured { String::new() } else { msg }));
        }
    }
    let mut entries = Vec::new();
    for i in 0..args.shards {
        entries.extend(read_shard_entries(&ShardFiles::new(&dir, i, args.shards).entries)?);
    }
    let outcome = merge(args.n, entries)?;
    census_output(&outcome, Some(out), global.structured)
}

fn census_output(outcome: &CensusOutcome, out: Option<&Path>, structured: bool) -> CmdResult {
    let code = if outcome.is_clean() { OK } else { FINDING };
    let mut text = String::new();
    match out {
        Some(path) => {
            let file = File::create(path).map_err(Error::from)?;
            export_records(&outcome.records, BufWriter::new(file))?;
        }
        None if structured => {
            let mut buf = Vec::new();
            export_records(&outcome.records, &mut buf)?;
            text = String::from_utf8(buf).expect("utf-8");
        }
        None => {}
    }
    if !structured || out.is_some() {
        if structured {
            let s = &outcome.stats;
            text = json_line(json!({
                "n": s.n,
                "labeled_graphs": s.labeled_graphs.to_string(),
                "classes": s.classes,
                "controllable_classes": s.controllable_classes,
                "fn_classes": s.fn_classes,
                "buckets": s.buckets,
                "digest_collisions": s.digest_collisions,
                "certificates": s.certificates,
                "audit_checks": s.audit_checks,
                "bound_violations": s.bound_violations,
                "findings": outcome.findings.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            }));
        } else {
            let _ = writeln!(text, "{}", outcome.stats);
            let _ = writeln!(text, "findings              {}", outcome.findings.len());
            for f in &outcome.findings {
                let _ = writeln!(text, "  {f}");
            }
        }
    }
    Ok(Output { text, code })
}

fn verify_reference_cmd(global: &GlobalOpts) -> CmdResult {
    let report = verify_reference(&ReferenceFixtures::default());
    let code = if report.all_passed() { OK } else { FINDING };
    let text = if global.structured {
        let rows: Vec<_> = report
            .rows
            .iter()
            .map(|r| {
                json!({
                    "example": r.group,
                    "check": r.name,
                    "expected": r.expected,
                    "computed": r.computed,
                    "passed": r.passed,
                })
            })
            .collect();
        json_line(json!({"passed": report.all_passed(), "checks": rows}))
    } else {
        let mut s = report.to_string();
        let failed = report.failures().count();
        let _ = writeln!(s, "{} checks, {failed} failed", report.rows.len());
        s
    };
    Ok(Output { text, code })
}
