//! Exhaustive census of all oriented graphs of a given order.
//!
//! Phase 1 walks the labeled graphs of each shard and emits a
//! (fingerprint digest, canonical form) pair for every labeling that is
//! its class's canonical one. Phase 2 merges all shards: it buckets classes
//! by generalized skew spectrum, recovers certificates between the
//! controllable classes of each bucket, audits them, checks the mate bound
//! and writes one [`CensusRecord`] per class in canonical order.

mod mates;
mod merge;
mod record;
mod shard;

pub use mates::{find_mates, single_record, verify_candidate_mate, MateClassReport};
pub use merge::{merge, CensusOutcome, CensusStats, Finding, FindingKind};
pub use record::{export_records, import_records, CensusRecord};
pub use shard::{
    read_checkpoint, read_shard_entries, run_shard, run_shard_to_dir, shard_complete,
    PersistOptions, ShardEntry, ShardFiles, ShardProgress, DEFAULT_CHECKPOINT_INTERVAL,
};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::graph::MAX_ENUMERATION_N;

fn check_census_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_ENUMERATION_N {
        return Err(Error::Unsupported(format!(
            "census needs 1 <= n <= {MAX_ENUMERATION_N}, got {n}"
        )));
    }
    Ok(())
}

/// Both phases in memory: every shard of `0..shards`, then the merge.
pub fn run_census(n: usize, shards: usize, exec: Execution) -> Result<CensusOutcome> {
    check_census_n(n)?;
    let mut entries = Vec::new();
    if shards == 0 {
        return Err(Error::Unsupported("shard count must be positive".into()));
    }
    for index in 0..shards {
        entries.extend(run_shard(n, index, shards, exec)?);
    }
    merge(n, entries)
}
