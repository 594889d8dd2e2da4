use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use p4tract::bench::bench_corpus;
use p4tract::decomposition::{is_cograph, p4_sparse_decompose, CographCheck, DecompTree, SpiderKind};
use p4tract::generate::{gnp, planted_edge, planted_vertex, random_cograph, random_spider, rng_from_seed};
use p4tract::io::{read_instance, write_instance};
use p4tract::obstructions::{all_rule_sets, find_c4, find_extended_obstruction, find_p4, find_p4_sparse_obstruction};
use p4tract::oracle::{oracle_minimum, OracleLimits};
use p4tract::report::{run, Budget};
use p4tract::{Deletions, Error, Graph, Problem, SearchOptions};

#[derive(Parser)]
#[command(name = "p4tract", version, about = "Cograph and trivially perfect deletion solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide or minimize a deletion problem.
    Solve(SolveArgs),
    /// Report membership in the cograph, trivially perfect, P4-sparse and
    /// extended P4-sparse classes.
    Recognize {
        #[arg(long)]
        input: PathBuf,
    },
    /// Write a seeded random instance.
    Gen(GenArgs),
    /// Minimize every problem on every instance of a corpus directory.
    Bench {
        #[arg(long)]
        corpus: PathBuf,
        /// Comma-separated problem names.
        #[arg(long, value_delimiter = ',', default_value = "cograph-edge,tp-edge,cograph-vertex,cograph-vertex-hs,tp-vertex")]
        problems: Vec<String>,
        #[arg(long)]
        report: PathBuf,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Brute-force minimum, for small instances.
    Oracle {
        #[arg(long)]
        problem: String,
        #[arg(long)]
        input: PathBuf,
    },
    /// Print the synthesized branching rule families.
    Rules {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    problem: String,
    #[arg(long)]
    input: PathBuf,
    #[arg(long, allow_negative_numbers = true, conflicts_with = "minimize", required_unless_present = "minimize")]
    k: Option<i64>,
    #[arg(long)]
    minimize: bool,
    /// Write the report here instead of standard output.
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Include wall-clock time in the report (makes it non-reproducible).
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenType {
    Cograph,
    Spider,
    Gnp,
    PlantedEdge,
    PlantedVertex,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long = "type", value_enum)]
    kind: GenType,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, conflicts_with = "thick")]
    thin: bool,
    #[arg(long)]
    thick: bool,
    #[arg(long)]
    seed: u64,
    /// Write the instance here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn solve_cmd(a: &SolveArgs) -> Result<ExitCode, Error> {
    let problem: Problem = a.problem.parse()?;
    let (inst, bytes) = read_instance(&a.input)?;
    let budget = match a.k {
        Some(k) => Budget::Fixed(k),
        None => Budget::min(),
    };
    let opts = SearchOptions {
        threads: a.threads.max(1),
    };
    let start = Instant::now();
    let mut report = run(&inst.graph, &bytes, problem, budget, opts, inst.seed())?;
    if a.timing {
        report.elapsed_ms = Some(start.elapsed().as_secs_f64() * 1000.0);
    }
    write_out(a.report.as_deref(), &report.to_json())?;
    Ok(if report.feasible { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn tree_summary(t: &DecompTree) -> String {
    fn count(t: &DecompTree, c: &mut [usize; 3]) {
        match t {
            DecompTree::Leaf(_) => {}
            DecompTree::Union(cs) => {
                c[0] += 1;
                cs.iter().for_each(|x| count(x, c));
            }
            DecompTree::Join(cs) => {
                c[1] += 1;
                cs.iter().for_each(|x| count(x, c));
            }
            DecompTree::Spider { head, .. } => {
                c[2] += 1;
                if let Some(h) = head {
                    count(h, c);
                }
            }
        }
    }
    let mut c = [0; 3];
    count(t, &mut c);
    let spiders: Vec<String> = t
        .spiders()
        .iter()
        .map(|s| {
            let kind = match s.kind {
                SpiderKind::Thin => "thin",
                SpiderKind::Thick => "thick",
            };
            format!("{kind} |K|={} |R|={}", s.size(), s.head.len())
        })
        .collect();
    let mut out = format!("{} union, {} join, {} spider nodes", c[0], c[1], c[2]);
    if !spiders.is_empty() {
        out.push_str(&format!("; spiders: {}", spiders.join(", ")));
    }
    out
}

fn recognize_cmd(input: &Path) -> Result<ExitCode, Error> {
    let (inst, _) = read_instance(input)?;
    let g = &inst.graph;
    match is_cograph(g) {
        CographCheck::Cograph(_) => println!("cograph: yes"),
        CographCheck::P4Witness(w) => println!("cograph: no (P4 {w:?})"),
    }
    match (find_p4(g), find_c4(g)) {
        (None, None) => println!("trivially perfect: yes"),
        (Some(p), _) => println!("trivially perfect: no (P4 {:?})", p.embedding),
        (None, Some(c)) => println!("trivially perfect: no (C4 {:?})", c.embedding),
    }
    match p4_sparse_decompose(g) {
        Ok(t) => println!("P4-sparse: yes ({})", tree_summary(&t)),
        Err(w) => println!("P4-sparse: no ({} {:?})", w.kind, w.embedding),
    }
    match find_extended_obstruction(g) {
        None => println!("extended P4-sparse: {}", yes_no(true)),
        Some(w) => println!("extended P4-sparse: no ({} {:?})", w.kind, w.embedding),
    }
    debug_assert_eq!(find_p4_sparse_obstruction(g).is_none(), p4_sparse_decompose(g).is_ok());
    Ok(ExitCode::SUCCESS)
}

fn gen_cmd(a: &GenArgs) -> Result<ExitCode, Error> {
    let mut rng = rng_from_seed(a.seed);
    let mut comments = Vec::new();
    let g: Graph = match a.kind {
        GenType::Cograph => {
            comments.push("generator: cograph".to_string());
            random_cograph(a.n, &mut rng)
        }
        GenType::Spider => {
            let thin = !a.thick;
            comments.push(format!("generator: spider {}", if thin { "thin" } else { "thick" }));
            random_spider(a.n, thin, &mut rng)?
        }
        GenType::Gnp => {
            comments.push(format!("generator: gnp p={}", a.p));
            gnp(a.n, a.p, &mut rng)?
        }
        GenType::PlantedEdge => {
            comments.push("generator: planted-edge".to_string());
            comments.push(format!("planted: {}", a.k));
            planted_edge(a.n, a.k, &mut rng)?
        }
        GenType::PlantedVertex => {
            comments.push("generator: planted-vertex".to_string());
            comments.push(format!("planted: {}", a.k));
            planted_vertex(a.n, a.k, &mut rng)?
        }
    };
    comments.push(format!("seed: {}", a.seed));
    write_out(a.output.as_deref(), &write_instance(&g, &comments))?;
    Ok(ExitCode::SUCCESS)
}

fn bench_cmd(corpus: &Path, problems: &[String], report: &Path, threads: usize) -> Result<ExitCode, Error> {
    let problems = problems.iter().map(|p| p.parse()).collect::<Result<Vec<Problem>, _>>()?;
    let r = bench_corpus(corpus, &problems, SearchOptions { threads: threads.max(1) })?;
    println!("{:<24} {:<18} {:>5} {:>8} {:>8} {:>10} {:>10}", "instance", "problem", "k", "nodes", "leaves", "bound", "baseline");
    for row in &r.rows {
        println!(
            "{:<24} {:<18} {:>5} {:>8} {:>8} {:>10} {:>10}",
            row.instance,
            row.problem.name(),
            row.min_k,
            row.nodes,
            row.leaves,
            row.bound.bound,
            row.baseline_nodes.map(|n| n.to_string()).unwrap_or_else(|| "-".into())
        );
    }
    for s in &r.summary {
        println!(
            "{}: {} instances, within bound: {}, max leaves/bound {:.3}, median nodes {}{}",
            s.problem,
            s.instances,
            yes_no(s.all_within_bound),
            s.max_ratio,
            s.median_nodes,
            s.median_baseline_nodes.map(|m| format!(", baseline median {m}")).unwrap_or_default()
        );
    }
    let json = serde_json::to_string_pretty(&r).expect("bench report serializes") + "\n";
    write_out(Some(report), &json)?;
    Ok(ExitCode::SUCCESS)
}

fn oracle_cmd(problem: &str, input: &Path) -> Result<ExitCode, Error> {
    let problem: Problem = problem.parse()?;
    let (inst, _) = read_instance(input)?;
    let r = oracle_minimum(&inst.graph, problem.mode(), problem.target(), &OracleLimits::from_env())?;
    println!("{}", serde_json::to_string_pretty(&r).expect("oracle result serializes"));
    Ok(ExitCode::SUCCESS)
}

fn rules_cmd(json: bool) -> ExitCode {
    let sets = all_rule_sets();
    let mut out = String::new();
    if json {
        out = serde_json::to_string_pretty(&sets).expect("rules serialize") + "\n";
    }
    for rs in sets.iter().filter(|_| !json) {
        let rules: Vec<String> = rs
            .rules
            .iter()
            .map(|r| match r {
                Deletions::Edges(es) => {
                    let es: Vec<String> = es.iter().map(|e| format!("{}-{}", e.u, e.v)).collect();
                    format!("{{{}}}", es.join(","))
                }
                Deletions::Vertices(vs) => {
                    let vs: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
                    format!("{{{}}}", vs.join(","))
                }
            })
            .collect();
        out.push_str(&format!(
            "{:<9} {:<6} {:<11} {:?} {}\n",
            rs.kind.name(),
            rs.mode.to_string(),
            rs.target.to_string(),
            rs.sizes(),
            rules.join(" ")
        ));
    }
    // A closed pipe (e.g. `| head`) is not an error here.
    let _ = std::io::stdout().write_all(out.as_bytes());
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Solve(a) => solve_cmd(a),
        Command::Recognize { input } => recognize_cmd(input),
        Command::Gen(a) => gen_cmd(a),
        Command::Bench {
            corpus,
            problems,
            report,
            threads,
        } => bench_cmd(corpus, problems, report, *threads),
        Command::Oracle { problem, input } => oracle_cmd(problem, input),
        Command::Rules { json } => Ok(rules_cmd(*json)),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    })
}
