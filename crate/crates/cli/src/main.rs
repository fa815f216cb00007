use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use kronface::{cycles::format_cycles, enumerate_order_matrices, KroneckerOracle};
use kronface_cli::{
    check_grid_size, parse_partition, run_pipeline, Checker, CliError, RunParams, RunReport, DEFAULT_CAP,
};

#[derive(Parser)]
#[command(name = "kronface", version, about = "Faces of the Kronecker cone from additive order matrices")]
struct Cli {
    /// Worker threads, or `auto`.
    #[arg(long, global = true, default_value = "auto")]
    threads: String,
    /// Largest n1·n2 accepted.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the order matrices of an n1×n2 grid with minimal witnesses.
    Enumerate {
        n1: usize,
        n2: usize,
        /// Print JSON instead of a table.
        #[arg(long, conflicts_with = "table")]
        json: bool,
        #[arg(long)]
        table: bool,
    },
    /// Run the full pipeline and write a report.
    Faces {
        n1: usize,
        n2: usize,
        #[arg(long)]
        nmax: Option<u32>,
        #[arg(long)]
        depth: Option<u32>,
        /// Markdown report path; printed to stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// JSON report path.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Print g(dα, dβ, dγ) for comma-separated partitions.
    Kron {
        alpha: String,
        beta: String,
        gamma: String,
        #[arg(long, default_value_t = 1)]
        scale: u32,
    },
    /// Compare a grid against the shipped reference tables.
    Check {
        n1: usize,
        n2: usize,
        /// Seed of the randomized oracle probes.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn configure_threads(spec: &str) -> Result<(), CliError> {
    if spec == "auto" {
        return Ok(());
    }
    let n: usize = spec
        .parse()
        .map_err(|_| CliError::Usage(format!("--threads expects an integer or auto, got {spec:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn enumerate(n1: usize, n2: usize, json: bool) -> Result<(), CliError> {
    let matrices = enumerate_order_matrices(n1, n2);
    if json {
        println!("{}", serde_json::to_string_pretty(&matrices)?);
        return Ok(());
    }
    println!("{} order matrices of size {n1}×{n2}", matrices.len());
    for (i, r) in matrices.iter().enumerate() {
        println!(
            "{:>3}  {}  x={:?} y={:?}  ŵ={}",
            i + 1,
            r.ranks_text(),
            r.witness.x,
            r.witness.y,
            format_cycles(&r.hat_w())
        );
    }
    Ok(())
}

fn faces(params: RunParams, out: Option<PathBuf>, json: Option<PathBuf>) -> Result<(), CliError> {
    let start = Instant::now();
    let oracle = KroneckerOracle::new();
    let output = run_pipeline(params, &oracle)?;
    let report = RunReport::from_output(&output);
    let md = report.to_markdown();
    match out {
        Some(path) => std::fs::write(path, &md)?,
        None => print!("{md}"),
    }
    if let Some(path) = json {
        std::fs::write(path, serde_json::to_string_pretty(&report)?)?;
    }
    eprintln!("{}; {}", report.pair_counts(), report.headline());
    eprintln!("finished in {:.2} s", start.elapsed().as_secs_f64());
    if report.summary.stability_failures > 0 {
        return Err(CliError::Core(kronface::Error::InternalConsistency(format!(
            "{} probed triples break their face's stability expectation",
            report.summary.stability_failures
        ))));
    }
    Ok(())
}

fn check(n1: usize, n2: usize, seed: u64) -> Result<(), CliError> {
    let mut checker = Checker::new(seed);
    let checks = checker.check_grid(n1, n2)?;
    let failed = checks.iter().filter(|c| !c.passed).count();
    for c in &checks {
        println!(
            "[{}] criterion {:>2} {}: {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.criterion,
            c.name,
            c.detail
        );
    }
    if failed > 0 {
        return Err(CliError::Mismatch(format!("{failed} of {} checks failed", checks.len())));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads(&cli.threads)?;
    match cli.command {
        Command::Enumerate { n1, n2, json, .. } => {
            check_grid_size(n1, n2, cli.cap)?;
            enumerate(n1, n2, json)
        }
        Command::Faces {
            n1,
            n2,
            nmax,
            depth,
            out,
            json,
        } => {
            check_grid_size(n1, n2, cli.cap)?;
            let mut params = RunParams::with_defaults(n1, n2);
            params.n_max = nmax.unwrap_or(params.n_max);
            params.depth = depth.unwrap_or(params.depth);
            if params.depth == 0 {
                return Err(CliError::Usage("--depth must be at least 1".into()));
            }
            faces(params, out, json)
        }
        Command::Kron {
            alpha,
            beta,
            gamma,
            scale,
        } => {
            let (a, b, c) = (parse_partition(&alpha)?, parse_partition(&beta)?, parse_partition(&gamma)?);
            let oracle = KroneckerOracle::new();
            println!("{}", oracle.kronecker_scaled(&a, &b, &c, scale)?);
            Ok(())
        }
        Command::Check { n1, n2, seed } => check(n1, n2, seed),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
