//! Corpus benchmarking: minimal budgets and tree sizes per instance.

use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::io::read_instance;
use crate::report::BoundCheck;
use crate::search::{minimize, Problem, SearchOptions};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub instance: String,
    pub problem: Problem,
    pub n: usize,
    pub m: usize,
    pub min_k: usize,
    pub nodes: u64,
    pub leaves: u64,
    pub branching_nodes: u64,
    pub bound: BoundCheck,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub baseline_nodes: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub baseline_leaves: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProblemSummary {
    pub problem: Problem,
    pub instances: usize,
    pub all_within_bound: bool,
    pub max_ratio: f64,
    pub median_nodes: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub median_baseline_nodes: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub schema_version: u32,
    pub rows: Vec<BenchRow>,
    pub summary: Vec<ProblemSummary>,
}

/// Instance files (`*.g`) in `dir`, sorted by name.
pub fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let entries = std::fs::read_dir(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "g"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(Error::Io(format!("{}: no .g instance files", dir.display())));
    }
    Ok(files)
}

pub fn median(xs: &mut [f64]) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    xs.sort_by(f64::total_cmp);
    let h = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[h]
    } else {
        (xs[h - 1] + xs[h]) / 2.0
    }
}

/// Minimizes every problem on every instance. Edge problems are also run
/// with their naive baseline for comparison.
pub fn bench_corpus(dir: &Path, problems: &[Problem], opts: SearchOptions) -> Result<BenchReport> {
    let mut rows = Vec::new();
    for path in corpus_files(dir)? {
        let (inst, _) = read_instance(&path)?;
        let g = &inst.graph;
        let name = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        for &p in problems {
            let m = minimize(g, p, opts)?;
            let baseline = match p.baseline() {
                Some(b) => Some(minimize(g, b, opts)?.stats),
                None => None,
            };
            rows.push(BenchRow {
                instance: name.clone(),
                problem: p,
                n: g.n(),
                m: g.m(),
                min_k: m.k,
                nodes: m.stats.nodes,
                leaves: m.stats.leaves,
                branching_nodes: m.stats.branch_histogram.values().sum(),
                bound: BoundCheck::new(p, m.k, m.stats.leaves),
                baseline_nodes: baseline.as_ref().map(|s| s.nodes),
                baseline_leaves: baseline.as_ref().map(|s| s.leaves),
            });
        }
    }
    let summary = problems
        .iter()
        .map(|&p| {
            let mine: Vec<&BenchRow> = rows.iter().filter(|r| r.problem == p).collect();
            let mut nodes: Vec<f64> = mine.iter().map(|r| r.nodes as f64).collect();
            let mut base: Vec<f64> = mine.iter().filter_map(|r| r.baseline_nodes.map(|x| x as f64)).collect();
            ProblemSummary {
                problem: p,
                instances: mine.len(),
                all_within_bound: mine.iter().all(|r| r.bound.within),
                max_ratio: mine.iter().map(|r| r.bound.ratio).fold(0.0, f64::max),
                median_nodes: median(&mut nodes),
                median_baseline_nodes: (!base.is_empty()).then(|| median(&mut base)),
            }
        })
        .collect();
    Ok(BenchReport {
        schema_version: crate::report::SCHEMA_VERSION,
        rows,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{random_spider, rng_from_seed};
    use crate::graph::Graph;
    use crate::io::write_instance;

    #[test]
    fn medians() {
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&mut [4.0, 1.0]), 2.5);
        assert_eq!(median(&mut []), 0.0);
    }

    #[test]
    fn small_corpus() {
        let dir = std::env::temp_dir().join(format!("p4tract-bench-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(dir.join("c5.g"), write_instance(&Graph::cycle(5), &[])).unwrap();
        let sp = random_spider(9, false, &mut rng_from_seed(2)).unwrap();
        std::fs::write(dir.join("spider.g"), write_instance(&sp, &[])).unwrap();
        std::fs::write(dir.join("notes.txt"), "ignored").unwrap();
        let r = bench_corpus(&dir, &[Problem::CographEdge], SearchOptions::default()).unwrap();
        std::fs::remove_dir_all(&dir).unwrap();
        assert_eq!(r.rows.len(), 2);
        assert_eq!(r.rows[0].min_k, 2);
        assert!(r.rows[0].leaves <= 7);
        assert_eq!(r.rows[1].branching_nodes, 0);
        assert!(r.summary[0].all_within_bound);
        assert!(r.summary[0].median_baseline_nodes.is_some());
        assert!(bench_corpus(Path::new("/nonexistent/corpus"), &[Problem::CographEdge], SearchOptions::default()).is_err());
    }
}
