//! `lgk`: line-graph recognition, kernelization, exact solving, instance
//! generation, and benchmark sweeps over the shared edge-list format.
//!
//! Every run prints one JSON report object to stdout and a human summary to
//! stderr. Exit codes: 0 completed, 1 verdict NO (solve only), 2 input
//! error.

mod bench;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lgk_core::{
    find_forbidden_subgraph, kernelize, parse_edge_list, planted_instance, recognize, root_graph,
    solve_branching, solve_bruteforce, to_edge_list_text, GenSpec, Graph, KernelVerdict, Solution,
};

#[derive(Parser)]
#[command(name = "lgk", version, about = "Line-graph edge-deletion toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide line-graph-ness; optionally emit the witness and root graph.
    Recognize {
        #[arg(long)]
        input: PathBuf,
        /// Write the witness JSON here on success.
        #[arg(long)]
        emit_witness: Option<PathBuf>,
        /// Write the root graph edge list here on success.
        #[arg(long)]
        emit_root: Option<PathBuf>,
    },
    /// Reduce an instance to its polynomial kernel.
    Kernelize {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        /// Write the kernel edge list here (verdicts materialize as an
        /// empty graph for YES, a claw with k=0 for NO).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide the instance exactly.
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Oracle::Branch)]
        oracle: Oracle,
    },
    /// Generate a planted instance: edge list plus a GenSpec sidecar JSON.
    Gen {
        /// Root-graph vertex count.
        #[arg(long)]
        n: usize,
        /// Root edge probability.
        #[arg(long)]
        p: f64,
        /// Number of planted noise edges.
        #[arg(long)]
        r: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Kernelize a sweep of planted instances and write one CSV row each.
    Bench {
        /// Sweep spec, e.g. "n=20..60:20,p=0.1|0.3,r=0..2,k=1..3".
        #[arg(long)]
        suite: String,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        csv: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Oracle {
    Brute,
    Branch,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Cmd) -> Result<ExitCode> {
    match cmd {
        Cmd::Recognize {
            input,
            emit_witness,
            emit_root,
        } => cmd_recognize(&input, emit_witness.as_deref(), emit_root.as_deref()),
        Cmd::Kernelize { input, k, out } => cmd_kernelize(&input, k, out.as_deref()),
        Cmd::Solve { input, k, oracle } => cmd_solve(&input, k, oracle),
        Cmd::Gen { n, p, r, seed, out } => cmd_gen(GenSpec { n, p, r, seed }, &out),
        Cmd::Bench { suite, seed, csv } => cmd_bench(&suite, seed, &csv),
    }
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_edge_list(&text).with_context(|| format!("parsing {}", path.display()))
}

fn report(subcommand: &str, input: Value, timings_ms: Value, result: Value) {
    let report = json!({
        "subcommand": subcommand,
        "input": input,
        "timings_ms": timings_ms,
        "result": result,
    });
    println!("{report}");
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn cmd_recognize(
    input: &Path,
    emit_witness: Option<&Path>,
    emit_root: Option<&Path>,
) -> Result<ExitCode> {
    let t_parse = Instant::now();
    let g = read_graph(input)?;
    let parse_ms = ms(t_parse);

    let t_rec = Instant::now();
    let witness = recognize(&g);
    let recognize_ms = ms(t_rec);

    let result = match &witness {
        Some(w) => {
            if let Some(path) = emit_witness {
                fs::write(path, w.to_json())
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            if let Some(path) = emit_root {
                let root = root_graph(&g, w)?;
                fs::write(path, to_edge_list_text(&root.h))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            eprintln!("line graph: {} witness cliques", w.cliques().len());
            json!({ "verdict": "line", "witness_cliques": w.cliques().len() })
        }
        None => {
            let forbidden =
                find_forbidden_subgraph(&g).expect("rejected graphs contain a forbidden subgraph");
            eprintln!(
                "not a line graph; forbidden induced subgraph on {:?}",
                forbidden.as_slice()
            );
            json!({ "verdict": "not-line", "forbidden": forbidden.as_slice() })
        }
    };
    report(
        "recognize",
        json!(input.display().to_string()),
        json!({ "parse": parse_ms, "recognize": recognize_ms }),
        result,
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_kernelize(input: &Path, k: usize, out: Option<&Path>) -> Result<ExitCode> {
    let t_parse = Instant::now();
    let g = read_graph(input)?;
    let parse_ms = ms(t_parse);

    let outcome = kernelize(&g, k)?;
    let (kernel_text, summary) = match &outcome.verdict {
        KernelVerdict::Reduced { graph, k } => (
            format!("# k = {k}\n{}", to_edge_list_text(graph)),
            format!(
                "reduced to {} vertices / {} edges (bound {})",
                graph.n(),
                graph.m(),
                outcome.stats.bound
            ),
        ),
        KernelVerdict::TrivialYes => (
            format!("# k = {k}\n0 0\n"),
            "already a line graph (YES)".to_string(),
        ),
        KernelVerdict::TrivialNo => (
            "# k = 0\n4 3\n0 1\n0 2\n0 3\n".to_string(),
            "packing exceeds the budget (NO)".to_string(),
        ),
    };
    if let Some(path) = out {
        fs::write(path, kernel_text).with_context(|| format!("writing {}", path.display()))?;
    }
    eprintln!("{summary}");

    let t = &outcome.timings;
    report(
        "kernelize",
        json!(input.display().to_string()),
        json!({
            "parse": parse_ms,
            "modulator": t.modulator_ms,
            "witness": t.witness_ms,
            "levels": t.levels_ms,
            "rr1": t.rr1_ms,
            "rr2": t.rr2_ms,
            "rr3": t.rr3_ms,
        }),
        serde_json::to_value(&outcome.stats)?,
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_solve(input: &Path, k: usize, oracle: Oracle) -> Result<ExitCode> {
    let t_parse = Instant::now();
    let g = read_graph(input)?;
    let parse_ms = ms(t_parse);

    let t_solve = Instant::now();
    let solution: Option<Solution> = match oracle {
        Oracle::Branch => solve_branching(&g, k),
        Oracle::Brute => solve_bruteforce(&g, k)?,
    };
    let solve_ms = ms(t_solve);

    let (result, code) = match &solution {
        Some(sol) => {
            let deleted: Vec<[usize; 2]> = sol.deleted.iter().map(|e| [e.u(), e.v()]).collect();
            eprintln!("YES: delete {} edge(s)", deleted.len());
            (
                json!({
                    "verdict": "yes",
                    "deleted": deleted,
                    "certificate": serde_json::from_str::<Value>(&sol.certificate.to_json())?,
                }),
                ExitCode::SUCCESS,
            )
        }
        None => {
            eprintln!("NO: not solvable with {k} deletions");
            (json!({ "verdict": "no" }), ExitCode::from(1))
        }
    };
    report(
        "solve",
        json!(input.display().to_string()),
        json!({ "parse": parse_ms, "solve": solve_ms }),
        result,
    );
    Ok(code)
}

fn cmd_gen(spec: GenSpec, out: &Path) -> Result<ExitCode> {
    let t = Instant::now();
    let (g, upper_bound) = planted_instance(&spec)?;
    let gen_ms = ms(t);

    fs::write(out, to_edge_list_text(&g)).with_context(|| format!("writing {}", out.display()))?;
    let sidecar = sidecar_path(out);
    fs::write(&sidecar, serde_json::to_string_pretty(&spec)?)
        .with_context(|| format!("writing {}", sidecar.display()))?;
    eprintln!(
        "planted instance: {} vertices, {} edges, upper bound {upper_bound}",
        g.n(),
        g.m()
    );
    report(
        "gen",
        serde_json::to_value(&spec)?,
        json!({ "gen": gen_ms }),
        json!({
            "path": out.display().to_string(),
            "sidecar": sidecar.display().to_string(),
            "n": g.n(),
            "m": g.m(),
            "upper_bound": upper_bound,
        }),
    );
    Ok(ExitCode::SUCCESS)
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".json");
    PathBuf::from(name)
}

fn cmd_bench(suite: &str, seed: u64, csv: &Path) -> Result<ExitCode> {
    let t = Instant::now();
    let sweep = bench::parse_suite(suite)?;
    let rows = bench::run_sweep(&sweep, seed)?;
    let total_ms = ms(t);

    fs::write(csv, bench::to_csv(&rows)).with_context(|| format!("writing {}", csv.display()))?;
    eprintln!("bench: {} instances -> {}", rows.len(), csv.display());
    report(
        "bench",
        json!({ "suite": suite, "seed": seed }),
        json!({ "total": total_ms }),
        json!({ "rows": rows.len(), "csv": csv.display().to_string() }),
    );
    Ok(ExitCode::SUCCESS)
}
