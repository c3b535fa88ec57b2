use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One isomorphism class in a census. Field names are the on-disk schema.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CensusRecord {
    pub canon: String,
    pub n: usize,
    pub controllable: bool,
    pub det_walk: String,
    pub in_fn: bool,
    pub odd_primes: Vec<String>,
    pub k: usize,
    pub bound: u64,
    pub fingerprint_digest: String,
    /// Non-isomorphic mates, excluding the class itself.
    pub mate_class_count: usize,
    /// Levels of the certificates to each mate class, ascending.
    pub mate_levels: Vec<String>,
    pub self_transpose: bool,
    pub wdgss_by_criterion: bool,
}

impl CensusRecord {
    /// An `F_n` class with more mates than `2^k - 1`.
    pub fn violates_bound(&self) -> bool {
        self.in_fn && self.mate_class_count as u64 > self.bound
    }
}

/// Writes one JSON object per line.
pub fn export_records<'a, W: Write>(
    records: impl IntoIterator<Item = &'a CensusRecord>,
    mut out: W,
) -> Result<()> {
    for r in records {
        let line = serde_json::to_string(r).expect("records serialize");
        out.write_all(line.as_bytes())?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

/// Reads records written by [`export_records`]. Blank lines are skipped;
/// anything else malformed is an error naming its 1-based line.
pub fn import_records<R: BufRead>(input: R) -> Result<Vec<CensusRecord>> {
    let mut out = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record = serde_json::from_str(&line).map_err(|e| Error::Record {
            line: i + 1,
            msg: e.to_string(),
        })?;
        out.push(record);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> CensusRecord {
        CensusRecord {
            canon: "o2:1".into(),
            n: 2,
            controllable: true,
            det_walk: "-2".into(),
            in_fn: true,
            odd_primes: vec![],
            k: 0,
            bound: 0,
            fingerprint_digest: "ab".into(),
            mate_class_count: 0,
            mate_levels: vec![],
            self_transpose: true,
            wdgss_by_criterion: false,
        }
    }

    #[test]
    fn round_trip() {
        let recs = vec![sample(), sample()];
        let mut buf = Vec::new();
        export_records(&recs, &mut buf).unwrap();
        assert_eq!(buf.iter().filter(|&&b| b == b'\n').count(), 2);
        assert_eq!(import_records(buf.as_slice()).unwrap(), recs);
    }

    #[test]
    fn empty() {
        let mut buf = Vec::new();
        export_records(&[], &mut buf).unwrap();
        assert!(buf.is_empty());
        assert!(import_records(&b""[..]).unwrap().is_empty());
    }

    #[test]
    fn bad_line_is_numbered() {
        let mut buf = Vec::new();
        export_records(&[sample()], &mut buf).unwrap();
        buf.extend_from_slice(b"{\"canon\": 3}\n");
        match import_records(buf.as_slice()) {
            Err(Error::Record { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_field_rejected() {
        let mut v = serde_json::to_value(sample()).unwrap();
        v["extra"] = serde_json::json!(1);
        let line = v.to_string();
        assert!(import_records(line.as_bytes()).is_err());
    }

    #[test]
    fn violation_flag() {
        let mut r = sample();
        assert!(!r.violates_bound());
        r.mate_class_count = 1;
        assert!(r.violates_bound());
        r.in_fn = false;
        assert!(!r.violates_bound());
    }
}
