//! Persistence of the Littlewood-Richardson coefficient memo.
//!
//! One record per line: the three partitions as comma-separated integer
//! arrays (`-` for the empty partition) and the coefficient as a decimal
//! string, whitespace-separated. Append-only; corrupt lines are skipped
//! with a warning so merged or truncated files stay usable.

use std::collections::HashSet;
use std::io::Write;
use std::path::Path;

use gedlab::combinat::{lr_cache_preload, lr_cache_snapshot, Partition};

type Entry = (Partition, Partition, Partition, u64);

fn render_partition(p: &Partition) -> String {
    if p.is_empty() {
        "-".to_string()
    } else {
        p.parts()
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn parse_partition(s: &str) -> Option<Partition> {
    if s == "-" {
        return Some(Partition::empty());
    }
    let parts: Option<Vec<u32>> = s.split(',').map(|t| t.parse::<u32>().ok()).collect();
    Partition::new(parts?).ok()
}

pub fn parse_line(line: &str) -> Option<Entry> {
    let line = line.trim();
    if line.is_empty() || line.starts_with('#') {
        return None;
    }
    let mut fields = line.split_whitespace();
    let lam = parse_partition(fields.next()?)?;
    let mu = parse_partition(fields.next()?)?;
    let nu = parse_partition(fields.next()?)?;
    let coeff = fields.next()?.parse::<u64>().ok()?;
    if fields.next().is_some() {
        return None;
    }
    Some((lam, mu, nu, coeff))
}

pub fn render_line(e: &Entry) -> String {
    format!(
        "{} {} {} {}",
        render_partition(&e.0),
        render_partition(&e.1),
        render_partition(&e.2),
        e.3
    )
}

/// Loads a cache file into the in-memory memo. Returns the set of loaded
/// lines (for append bookkeeping) or `None` when the file does not exist.
pub fn load(path: &Path) -> Option<HashSet<String>> {
    let text = std::fs::read_to_string(path).ok()?;
    let mut loaded = HashSet::new();
    let mut entries = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        match parse_line(line) {
            Some(e) => {
                loaded.insert(render_line(&e));
                entries.push(e);
            }
            None => {
                eprintln!(
                    "warning: skipping corrupt LR cache line {} in {}",
                    idx + 1,
                    path.display()
                );
            }
        }
    }
    lr_cache_preload(entries);
    Some(loaded)
}

/// Appends every memoized coefficient that was not already in the file.
pub fn append_new(path: &Path, already: &HashSet<String>) -> std::io::Result<usize> {
    let snapshot = lr_cache_snapshot();
    let fresh: Vec<String> = snapshot
        .iter()
        .map(render_line)
        .filter(|l| !already.contains(l))
        .collect();
    if fresh.is_empty() && path.exists() {
        return Ok(0);
    }
    let mut file = std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)?;
    if already.is_empty() && !fresh.is_empty() && file.metadata()?.len() == 0 {
        writeln!(file, "# gedlab LR coefficient cache: lam mu nu coeff")?;
    }
    for line in &fresh {
        writeln!(file, "{line}")?;
    }
    Ok(fresh.len())
}
