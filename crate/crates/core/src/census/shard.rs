use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::ops::Range;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::check_census_n;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::graph::{is_canonical, to_compact, GraphStream, ShardRange};
use crate::spectral::fingerprint;

/// Phase-1 output: one canonical class and its fingerprint digest.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShardEntry {
    pub digest: String,
    pub canon: String,
}

/// Counter values handed to one worker at a time.
const CHUNK: u128 = 4096;

/// Counter values processed between checkpoints by default.
pub const DEFAULT_CHECKPOINT_INTERVAL: u128 = 1 << 20;

// Every labeled graph whose own labeling is canonical yields one entry, so
// each isomorphism class is emitted by exactly one counter value.
fn scan(n: usize, codes: Range<u128>) -> Vec<ShardEntry> {
    GraphStream::over(n, codes)
        .filter(is_canonical)
        .map(|g| ShardEntry {
            digest: fingerprint(&g).digest(),
            canon: to_compact(&g),
        })
        .collect()
}

fn scan_range(n: usize, codes: Range<u128>, exec: Execution) -> Vec<ShardEntry> {
    let mut chunks = Vec::new();
    let mut start = codes.start;
    while start < codes.end {
        let end = (start + CHUNK).min(codes.end);
        chunks.push(start..end);
        start = end;
    }
    exec.map(chunks, |r| scan(n, r)).into_iter().flatten().collect()
}

/// Phase 1 for one shard, in memory. Entries come out in counter order.
pub fn run_shard(n: usize, index: usize, shards: usize, exec: Execution) -> Result<Vec<ShardEntry>> {
    check_census_n(n)?;
    let range = ShardRange::new(n, index, shards)?;
    Ok(scan_range(n, range.codes, exec))
}

/// Where a persisted shard keeps its entries and checkpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShardFiles {
    pub entries: PathBuf,
    pub checkpoint: PathBuf,
}

impl ShardFiles {
    pub fn new(dir: &Path, index: usize, shards: usize) -> Self {
        let stem = format!("shard-{index}-of-{shards}");
        ShardFiles {
            entries: dir.join(format!("{stem}.jsonl")),
            checkpoint: dir.join(format!("{stem}.ckpt")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PersistOptions {
    /// Continue after the last checkpoint instead of starting over.
    pub resume: bool,
    /// Counter values between checkpoints.
    pub checkpoint_interval: u128,
}

impl Default for PersistOptions {
    fn default() -> Self {
        PersistOptions {
            resume: false,
            checkpoint_interval: DEFAULT_CHECKPOINT_INTERVAL,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShardProgress {
    pub range: ShardRange,
    /// Last completed counter found on disk when resuming.
    pub resumed_after: Option<u128>,
    /// Counter values processed in this call.
    pub scanned: u128,
    /// Entries appended in this call.
    pub emitted: usize,
}

/// Last completed counter value, if a checkpoint exists.
pub fn read_checkpoint(path: &Path) -> Result<Option<u128>> {
    match fs::read_to_string(path) {
        Ok(s) => s.trim().parse::<u128>().map(Some).map_err(|e| Error::Parse {
            line: 1,
            msg: format!("checkpoint {}: {e}", path.display()),
        }),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn write_checkpoint(path: &Path, last: u128) -> Result<()> {
    let tmp = path.with_extension("ckpt.tmp");
    fs::write(&tmp, format!("{last}\n"))?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Reads a shard's entry file; errors name the 1-based line.
pub fn read_shard_entries(path: &Path) -> Result<Vec<ShardEntry>> {
    let file = BufReader::new(File::open(path)?);
    let mut out = Vec::new();
    for (i, line) in file.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).map_err(|e| Error::Record {
            line: i + 1,
            msg: format!("{}: {e}", path.display()),
        })?);
    }
    Ok(out)
}

// Drops a partially written trailing line left by an interrupted run.
fn trim_partial_line(path: &Path) -> Result<()> {
    let bytes = match fs::read(path) {
        Ok(b) => b,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(()),
        Err(e) => return Err(e.into()),
    };
    let keep = bytes.iter().rposition(|&b| b == b'\n').map_or(0, |i| i + 1);
    if keep != bytes.len() {
        OpenOptions::new().write(true).open(path)?.set_len(keep as u64)?;
    }
    Ok(())
}

/// Phase 1 for one shard, appending entries to `dir` and checkpointing
/// after every batch. Re-running with `resume` after an interruption
/// produces the same entry set as an uninterrupted run.
pub fn run_shard_to_dir(
    n: usize,
    index: usize,
    shards: usize,
    dir: &Path,
    opts: PersistOptions,
    exec: Execution,
) -> Result<ShardProgress> {
    check_census_n(n)?;
    let range = ShardRange::new(n, index, shards)?;
    if opts.checkpoint_interval == 0 {
        return Err(Error::Unsupported("checkpoint interval must be positive".into()));
    }
    fs::create_dir_all(dir)?;
    let files = ShardFiles::new(dir, index, shards);

    let resumed_after = if opts.resume {
        read_checkpoint(&files.checkpoint)?
    } else {
        None
    };
    let mut start = match resumed_after {
        Some(last) if range.codes.contains(&last) => last + 1,
        Some(last) => {
            return Err(Error::Unsupported(format!(
                "checkpoint {last} lies outside shard {index} of {shards} ({:?})",
                range.codes
            )))
        }
        None => range.codes.start,
    };
    if opts.resume {
        trim_partial_line(&files.entries)?;
    } else {
        let _ = fs::remove_file(&files.checkpoint);
        File::create(&files.entries)?;
    }
    let mut out = BufWriter::new(OpenOptions::new().create(true).append(true).open(&files.entries)?);

    let mut progress = ShardProgress {
        range: range.clone(),
        resumed_after,
        scanned: 0,
        emitted: 0,
    };
    while start < range.codes.end {
        let end = start.saturating_add(opts.checkpoint_interval).min(range.codes.end);
        let entries = scan_range(n, start..end, exec);
        for e in &entries {
            serde_json::to_writer(&mut out, e).expect("entries serialize");
            out.write_all(b"\n")?;
        }
        out.flush()?;
        out.get_ref().sync_data()?;
        write_checkpoint(&files.checkpoint, end - 1)?;
        progress.scanned += end - start;
        progress.emitted += entries.len();
        start = end;
    }
    Ok(progress)
}

/// True if the shard's checkpoint says it has been scanned to the end.
pub fn shard_complete(n: usize, index: usize, shards: usize, dir: &Path) -> Result<bool> {
    let range = ShardRange::new(n, index, shards)?;
    let files = ShardFiles::new(dir, index, shards);
    Ok(read_checkpoint(&files.checkpoint)? == Some(range.codes.end - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_entry_per_class() {
        // 1, 2, 7, 42 isomorphism classes of oriented graphs
        for (n, classes) in [(1, 1), (2, 2), (3, 7), (4, 42)] {
            assert_eq!(run_shard(n, 0, 1, Execution::Sequential).unwrap().len(), classes);
        }
    }

    #[test]
    fn modes_agree() {
        let a = run_shard(4, 1, 3, Execution::Sequential).unwrap();
        let b = run_shard(4, 1, 3, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn persisted_matches_memory() {
        let dir = tempfile::tempdir().unwrap();
        let opts = PersistOptions {
            resume: false,
            checkpoint_interval: 100,
        };
        let p = run_shard_to_dir(4, 0, 2, dir.path(), opts, Execution::Parallel).unwrap();
        assert_eq!(p.scanned, p.range.len());
        assert!(shard_complete(4, 0, 2, dir.path()).unwrap());
        assert!(!shard_complete(4, 1, 2, dir.path()).unwrap());
        let files = ShardFiles::new(dir.path(), 0, 2);
        assert_eq!(
            read_shard_entries(&files.entries).unwrap(),
            run_shard(4, 0, 2, Execution::Sequential).unwrap()
        );
    }
}
