use std::fs;
use std::path::Path;

use skewmate::graph::{parse_compact, parse_graph};
use skewmate::{Error, OrientedGraph};

/// A path to a text or compact graph file, or a literal compact code.
pub fn load_graph(arg: &str) -> Result<OrientedGraph, String> {
    let path = Path::new(arg);
    if !path.exists() && arg.trim_start().starts_with('o') && arg.contains(':') {
        return parse_compact(arg).map_err(|e| describe(arg, e));
    }
    let text = fs::read_to_string(path).map_err(|e| format!("{arg}: {e}"))?;
    parse_graph(&text).map_err(|e| describe(arg, e))
}

fn describe(source: &str, e: Error) -> String {
    match e {
        Error::Parse { line, msg } => format!("{source}:{line}: {msg}"),
        other => format!("{source}: {other}"),
    }
}
