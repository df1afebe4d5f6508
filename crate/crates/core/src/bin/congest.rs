//! Command-line front end over the harness: generate instances, run
//! algorithms under the simulator, verify against oracles, benchmark round
//! scaling, and exercise failure routing. Exit codes: 0 success, 1
//! verification failure, 2 usage/config error, 3 round budget exhausted.

use clap::{Args, Parser, Subcommand};
use congest_graphs::graph::{graph_to_string, save_path};
use congest_graphs::harness::{
    self, cmd_bench, cmd_gadget, cmd_run, cmd_suite, AlgoId, Eps, ExperimentConfig, GraphSource,
};
use congest_graphs::reconstruct::{
    build_rpath_tables, construct_cycle, onfly_construct_undirected, route_failover,
    undirected_onfly_inputs, OnFlyOutcome, RpAlgo,
};
use congest_graphs::rpaths::AlgoError;
use congest_graphs::sim::SimConfig;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "congest",
    about = "Round-synchronous distributed graph algorithms with bandwidth accounting"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct RunArgs {
    /// Algorithm id (rp-dirw-apsp, rp-iter-sssp, rp-dirunw-sample,
    /// rp-dirw-approx, rp-undir, mwc-dir, mwc-undir, ansc, girth-approx,
    /// mwc-wapprox).
    #[arg(long)]
    algo: String,
    /// Graph source: file:PATH | random:n=..,p=..[,weighted][,directed][,w=..][,seed=..]
    /// | layered:n=..,hst=..[,seed=..] | gadget:family=..,k=..[,seed=..][,disjoint]
    #[arg(long)]
    graph: String,
    /// Input path for replacement-path algorithms: `auto` or file:PATH.
    #[arg(long, default_value = "auto")]
    path: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Approximation parameter, e.g. 0.25 (required by approx algorithms).
    #[arg(long)]
    eps: Option<String>,
    /// Round budget override (also honors the CONGEST_BUDGET env var).
    #[arg(long)]
    budget: Option<u64>,
    /// Report charged rounds alongside measured ones.
    #[arg(long)]
    charge: bool,
    /// Compare against the sequential oracle; verification failure exits 1.
    #[arg(long)]
    verify: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Run one algorithm on one instance.
    Run(RunArgs),
    /// Median rounds over ascending sizes plus the log-log slope.
    Bench {
        #[arg(long)]
        algo: String,
        /// Comma-separated ascending sizes, e.g. 256,512,1024,2048.
        #[arg(long)]
        sizes: String,
        /// Input-path hop length for replacement-path benches.
        #[arg(long, default_value_t = 8)]
        hst: usize,
        #[arg(long, default_value_t = 5)]
        seeds: u64,
        #[arg(long)]
        eps: Option<String>,
    },
    /// Run a registered corpus with verification.
    Suite {
        /// exact-corpus | approx-corpus | gadget-corpus | recon-corpus
        #[arg(long)]
        corpus: String,
    },
    /// Emit a lower-bound fixture graph and its expected dichotomy side.
    Gadget {
        #[arg(long)]
        family: String,
        #[arg(long)]
        k: usize,
        /// Cycle length for the qcycle family.
        #[arg(long)]
        q: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Force a common bit (default).
        #[arg(long, conflicts_with = "disjoint")]
        intersect: bool,
        /// Force disjoint strings.
        #[arg(long)]
        disjoint: bool,
        /// Write the graph file here (summary still on stdout).
        #[arg(long)]
        out: Option<String>,
    },
    /// Generate an instance file (and optionally its input path).
    Gen {
        /// Graph source spec (same grammar as --graph).
        #[arg(long)]
        source: String,
        #[arg(long)]
        out: String,
        /// Also write the instance's input path (layered/gadget sources).
        #[arg(long)]
        path_out: Option<String>,
    },
    /// Build routing tables, fail one edge, and trace the replacement.
    Route {
        #[arg(long)]
        algo: String,
        #[arg(long)]
        graph: String,
        #[arg(long, default_value = "auto")]
        path: String,
        /// Failed edge as `u,v`.
        #[arg(long)]
        fail: String,
        /// table | onfly (onfly is undirected-only).
        #[arg(long, default_value = "table")]
        mode: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compute ANSC and materialize the minimum cycle through a vertex.
    Cycle {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        through: usize,
        /// table | onfly.
        #[arg(long, default_value = "table")]
        mode: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_eps(s: &Option<String>) -> Result<Option<Eps>, String> {
    s.as_deref().map(Eps::parse).transpose()
}

fn fail_usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(harness::EXIT_CONFIG as u8)
}

fn fail_algo(err: AlgoError) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(harness::exit_code_for(&err) as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let code = match cli.command {
        Command::Run(args) => {
            let eps = match parse_eps(&args.eps) {
                Ok(e) => e,
                Err(m) => return fail_usage(m),
            };
            let cfg = ExperimentConfig {
                algo: args.algo,
                graph: args.graph,
                path: args.path,
                seed: args.seed,
                eps,
                budget: args.budget,
                charge: args.charge,
                verify: args.verify,
            };
            match cmd_run(&cfg) {
                Ok(report) => {
                    let text = report.text();
                    if let Some(out) = args.out {
                        if let Err(e) = std::fs::write(&out, &text) {
                            return fail_usage(e);
                        }
                    } else {
                        print!("{text}");
                    }
                    match &report.verdict {
                        Some(v) if !v.pass => ExitCode::from(harness::EXIT_VERIFY_FAILED as u8),
                        _ => ExitCode::SUCCESS,
                    }
                }
                Err(e) => return fail_algo(e),
            }
        }
        Command::Bench {
            algo,
            sizes,
            hst,
            seeds,
            eps,
        } => {
            let Some(algo) = AlgoId::parse(&algo) else {
                return fail_usage(format!("unknown algorithm `{algo}`"));
            };
            let eps = match parse_eps(&eps) {
                Ok(e) => e,
                Err(m) => return fail_usage(m),
            };
            let sizes: Result<Vec<usize>, _> = sizes.split(',').map(|t| t.parse()).collect();
            let Ok(sizes) = sizes else {
                return fail_usage("bad --sizes list");
            };
            match cmd_bench(algo, &sizes, hst, seeds, eps) {
                Ok(result) => {
                    print!("{}", result.text());
                    ExitCode::SUCCESS
                }
                Err(e) => return fail_algo(e),
            }
        }
        Command::Suite { corpus } => match cmd_suite(&corpus) {
            Ok(outcome) => {
                print!("{}", outcome.text());
                println!("{}", outcome.canonical_json());
                if outcome.pass {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(harness::EXIT_VERIFY_FAILED as u8)
                }
            }
            Err(e) => return fail_algo(e),
        },
        Command::Gadget {
            family,
            k,
            q,
            seed,
            intersect,
            disjoint,
            out,
        } => {
            let intersecting = intersect || !disjoint;
            match cmd_gadget(&family, k, q, intersecting, seed) {
                Ok((graph_text, summary)) => {
                    match out {
                        Some(path) => {
                            if let Err(e) = std::fs::write(&path, &graph_text) {
                                return fail_usage(e);
                            }
                        }
                        None => print!("{graph_text}"),
                    }
                    println!("{summary}");
                    ExitCode::SUCCESS
                }
                Err(e) => return fail_algo(e),
            }
        }
        Command::Gen {
            source,
            out,
            path_out,
        } => {
            let src = match GraphSource::parse(&source) {
                Ok(s) => s,
                Err(m) => return fail_usage(m),
            };
            match src.build() {
                Ok((g, p)) => {
                    if let Err(e) = std::fs::write(&out, graph_to_string(&g)) {
                        return fail_usage(e);
                    }
                    if let Some(path_out) = path_out {
                        let Some(p) = p else {
                            return fail_usage("this source defines no input path");
                        };
                        if let Err(e) = save_path(&p.vertices, path_out) {
                            return fail_usage(e);
                        }
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => return fail_algo(e),
            }
        }
        Command::Route {
            algo,
            graph,
            path,
            fail,
            mode,
            seed,
        } => match run_route(&algo, &graph, &path, &fail, &mode, seed) {
            Ok(code) => code,
            Err(e) => return fail_algo(e),
        },
        Command::Cycle {
            graph,
            through,
            mode,
            seed,
        } => match run_cycle(&graph, through, &mode, seed) {
            Ok(code) => code,
            Err(e) => return fail_algo(e),
        },
    };
    eprintln!("wall_ms: {}", started.elapsed().as_millis());
    code
}

fn load_instance(
    graph: &str,
    path: &str,
) -> Result<(congest_graphs::Graph, congest_graphs::PathSpec), AlgoError> {
    let source = GraphSource::parse(graph).map_err(AlgoError::InvalidInput)?;
    let (g, gp) = source.build()?;
    let p = match path {
        "auto" => match gp {
            Some(p) => p,
            None => harness::auto_path(&g)?,
        },
        spec => {
            let file = spec
                .strip_prefix("file:")
                .ok_or_else(|| AlgoError::InvalidInput(format!("bad path spec `{spec}`")))?;
            congest_graphs::PathSpec::new(&g, congest_graphs::graph::load_path(file)?)?
        }
    };
    Ok((g, p))
}

fn run_route(
    algo: &str,
    graph: &str,
    path: &str,
    fail: &str,
    mode: &str,
    seed: u64,
) -> Result<ExitCode, AlgoError> {
    let (g, p) = load_instance(graph, path)?;
    let (u, v) = fail
        .split_once(',')
        .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
        .ok_or_else(|| AlgoError::InvalidInput("--fail expects `u,v`".into()))?;
    let cfg = SimConfig::new(seed);
    let outcome = match mode {
        "onfly" => {
            if g.directed() {
                return Err(AlgoError::InvalidInput(
                    "on-the-fly construction is undirected-only; directed graphs keep tables"
                        .into(),
                ));
            }
            let (_, witnesses, sp, tp, mut log) = undirected_onfly_inputs(&g, &p, &cfg)?;
            onfly_construct_undirected(&g, &p, &witnesses, sp, tp, (u, v), &cfg, &mut log)?
        }
        "table" => {
            let rp_algo = match algo {
                "rp-dirw-apsp" => RpAlgo::DirwApsp,
                "rp-iter-sssp" => RpAlgo::IterSssp,
                "rp-dirunw-sample" => RpAlgo::DirunwSample,
                "rp-undir" => RpAlgo::Undirected,
                other => {
                    return Err(AlgoError::InvalidInput(format!(
                        "`{other}` does not support routing tables"
                    )))
                }
            };
            let (_, routes, mut log) = build_rpath_tables(&g, &p, rp_algo, &cfg)?;
            route_failover(&g, &p, routes.next, (u, v), &cfg, &mut log)?
        }
        other => {
            return Err(AlgoError::InvalidInput(format!(
                "unknown mode `{other}` (table | onfly)"
            )))
        }
    };
    match outcome {
        OnFlyOutcome::NoReplacement => {
            println!("outcome: no-replacement");
            Ok(ExitCode::SUCCESS)
        }
        OnFlyOutcome::Routed(trace) => {
            println!("outcome: routed");
            println!("trace: {:?}", trace.vertices);
            println!("rounds: {}", trace.rounds);
            println!("weight: {}", trace.weight);
            if let Some(audit) = trace.storage_audit {
                println!("storage_audit: {audit}");
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_cycle(graph: &str, through: usize, mode: &str, seed: u64) -> Result<ExitCode, AlgoError> {
    let source = GraphSource::parse(graph).map_err(AlgoError::InvalidInput)?;
    let (g, _) = source.build()?;
    let cfg = SimConfig::new(seed);
    let run = congest_graphs::mwc::ansc(&g, &cfg)?;
    let onfly = match mode {
        "table" => false,
        "onfly" => true,
        other => {
            return Err(AlgoError::InvalidInput(format!(
                "unknown mode `{other}` (table | onfly)"
            )))
        }
    };
    let out = construct_cycle(&g, &run.result, through, onfly, &cfg)?;
    match out.result {
        None => println!("outcome: no-cycle-through-{through}"),
        Some(trace) => {
            println!("outcome: cycle");
            println!("trace: {:?}", trace.vertices);
            println!("rounds: {}", trace.rounds);
            println!("weight: {}", trace.weight);
        }
    }
    Ok(ExitCode::SUCCESS)
}
