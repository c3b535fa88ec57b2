use std::ops::Range;

use super::{OrientedGraph, MAX_N};
use crate::error::{Error, Result};

/// Full labeled enumeration is supported up to this order (3^15 graphs).
pub const MAX_ENUMERATION_N: usize = 6;

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Number of labeled oriented graphs on `n` vertices, `3^(n(n-1)/2)`.
pub fn graph_count(n: usize) -> Result<u128> {
    if n == 0 || n > MAX_N {
        return Err(Error::Unsupported(format!(
            "vertex count {n} outside 1..={MAX_N}"
        )));
    }
    Ok(3u128.pow(pair_count(n) as u32))
}

/// A contiguous slice of the ternary counter space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShardRange {
    pub n: usize,
    pub index: usize,
    pub shards: usize,
    pub codes: Range<u128>,
}

impl ShardRange {
    /// The `index`-th of `shards` near-equal slices; slice boundaries are
    /// `floor(k · total / shards)`.
    pub fn new(n: usize, index: usize, shards: usize) -> Result<Self> {
        let total = graph_count(n)?;
        if shards == 0 || index >= shards {
            return Err(Error::Unsupported(format!(
                "shard {index} of {shards} does not exist"
            )));
        }
        if shards as u128 > total {
            return Err(Error::Unsupported(format!(
                "{shards} shards for only {total} graphs"
            )));
        }
        let bound = |k: usize| total * k as u128 / shards as u128;
        Ok(ShardRange {
            n,
            index,
            shards,
            codes: bound(index)..bound(index + 1),
        })
    }

    pub fn len(&self) -> u128 {
        self.codes.end - self.codes.start
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn graphs(&self) -> GraphStream {
        GraphStream::over(self.n, self.codes.clone())
    }
}

/// Labeled oriented graphs in ternary-counter order.
#[derive(Clone, Debug)]
pub struct GraphStream {
    scratch: OrientedGraph,
    codes: Range<u128>,
}

impl GraphStream {
    pub(crate) fn over(n: usize, codes: Range<u128>) -> Self {
        GraphStream {
            scratch: OrientedGraph::empty(n).expect("validated order"),
            codes,
        }
    }

    /// Restricts the stream to the `index`-th of `shards` slices.
    pub fn shard(n: usize, index: usize, shards: usize) -> Result<Self> {
        check_enumerable(n)?;
        Ok(ShardRange::new(n, index, shards)?.graphs())
    }
}

impl Iterator for GraphStream {
    type Item = OrientedGraph;

    fn next(&mut self) -> Option<OrientedGraph> {
        let code = self.codes.next()?;
        self.scratch.fill_from_code(code);
        Some(self.scratch)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.codes.end - self.codes.start) as usize;
        (left, Some(left))
    }
}

fn check_enumerable(n: usize) -> Result<()> {
    if n == 0 || n > MAX_ENUMERATION_N {
        return Err(Error::Unsupported(format!(
            "full enumeration needs 1 <= n <= {MAX_ENUMERATION_N}, got {n}"
        )));
    }
    Ok(())
}

/// Every labeled oriented graph on `n` vertices, exactly once.
pub fn enumerate_all(n: usize) -> Result<GraphStream> {
    check_enumerable(n)?;
    Ok(GraphStream::over(n, 0..graph_count(n)?))
}
