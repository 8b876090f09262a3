//! Graph sources: graph6 files and the seeded cubic generator.

use anyhow::{bail, Context, Result};
use cubicdom::graph::{graph6_decode, random_cubic, MarkedGraph};
use rayon::prelude::*;
use serde::Serialize;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

/// Pairing attempts per generated graph unless `attempts=` says otherwise.
pub const DEFAULT_ATTEMPTS: u64 = 10_000;

/// One input graph, or the reason it could not be produced.
#[derive(Debug, Clone)]
pub struct Item {
    pub id: String,
    pub graph: Result<MarkedGraph, String>,
}

/// Reads one graph6 string per line, optionally followed by
/// `marked=1,4` naming marked vertices. Blank lines and lines starting
/// with `#` are skipped; ids are `<file stem>:<line number>`.
pub fn read_graph6_file(path: &Path) -> Result<Vec<Item>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let g = parse_line(line).with_context(|| format!("{}:{}", path.display(), i + 1))?;
        out.push(Item {
            id: format!("{stem}:{}", i + 1),
            graph: Ok(g),
        });
    }
    if out.is_empty() {
        bail!("{} holds no graphs", path.display());
    }
    Ok(out)
}

fn parse_line(line: &str) -> Result<MarkedGraph> {
    let mut parts = line.split_whitespace();
    let code = parts.next().unwrap_or_default();
    let mut g = graph6_decode(code).context("bad graph6")?;
    for extra in parts {
        let Some(list) = extra.strip_prefix("marked=") else {
            bail!("unexpected token {extra:?}");
        };
        for v in parse_lengths(list)? {
            if v >= g.n() {
                bail!("marked vertex {v} out of range");
            }
            g.set_marked(v, true);
        }
    }
    Ok(g)
}

/// `n=N,count=C,seed=S[,attempts=A]`: `C` connected cubic graphs on `N`
/// vertices, graph `i` drawn from seed `S + i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GenSpec {
    pub n: usize,
    pub count: usize,
    pub seed: u64,
    pub attempts: u64,
}

impl FromStr for GenSpec {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let (mut n, mut count, mut seed, mut attempts) = (None, None, None, DEFAULT_ATTEMPTS);
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let Some((key, value)) = part.split_once('=') else {
                bail!("expected key=value, got {part:?}");
            };
            let value = value.trim();
            match key.trim() {
                "n" => n = Some(value.parse().with_context(|| format!("n={value}"))?),
                "count" => count = Some(value.parse().with_context(|| format!("count={value}"))?),
                "seed" => seed = Some(value.parse().with_context(|| format!("seed={value}"))?),
                "attempts" => attempts = value.parse().with_context(|| format!("attempts={value}"))?,
                other => bail!("unknown generator key {other:?}"),
            }
        }
        match (n, count, seed) {
            (Some(n), Some(count), Some(seed)) => Ok(GenSpec {
                n,
                count,
                seed,
                attempts,
            }),
            _ => bail!("generator spec needs n, count and seed"),
        }
    }
}

impl fmt::Display for GenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={},count={},seed={},attempts={}",
            self.n, self.count, self.seed, self.attempts
        )
    }
}

/// Draws the graphs of `spec` that satisfy the girth and cycle filters.
/// Graphs the generator cannot find within its attempts come back as
/// errors in their slot.
pub fn generate(spec: &GenSpec, min_girth: usize, forbidden: &[usize]) -> Vec<Item> {
    (0..spec.count)
        .into_par_iter()
        .map(|i| {
            let seed = spec.seed.wrapping_add(i as u64);
            Item {
                id: format!("n{}-s{seed}", spec.n),
                graph: random_cubic(spec.n, seed, min_girth, forbidden, spec.attempts).map_err(|e| e.to_string()),
            }
        })
        .collect()
}

/// Parses `7,8` into a sorted list without repeats.
pub fn parse_lengths(s: &str) -> Result<Vec<usize>> {
    let mut out: Vec<usize> = s
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse().with_context(|| format!("cycle length {p:?}")))
        .collect::<Result<_>>()?;
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gen_spec_parsing() {
        let s: GenSpec = "n=14, count=3,seed=9".parse().unwrap();
        assert_eq!(
            s,
            GenSpec {
                n: 14,
                count: 3,
                seed: 9,
                attempts: DEFAULT_ATTEMPTS
            }
        );
        assert_eq!(s.to_string().parse::<GenSpec>().unwrap(), s);
        assert!("n=14,count=3".parse::<GenSpec>().is_err());
        assert!("n=14,count=3,seed=1,x=2".parse::<GenSpec>().is_err());
    }

    #[test]
    fn generated_ids_follow_seeds() {
        let items = generate(&"n=10,count=3,seed=5".parse().unwrap(), 3, &[]);
        let ids: Vec<_> = items.iter().map(|i| i.id.as_str()).collect();
        assert_eq!(ids, ["n10-s5", "n10-s6", "n10-s7"]);
        assert!(items.iter().all(|i| i.graph.as_ref().is_ok_and(|g| g.is_cubic())));
    }

    #[test]
    fn marks_after_the_code() {
        let g = parse_line("Bw marked=0,2").unwrap();
        assert_eq!(g.marked_vertices(), vec![0, 2]);
        assert!(parse_line("Bw marked=7").is_err());
        assert!(parse_line("Bw junk").is_err());
    }

    #[test]
    fn lengths() {
        assert_eq!(parse_lengths("8, 7,8").unwrap(), vec![7, 8]);
        assert!(parse_lengths("7,x").is_err());
    }
}
