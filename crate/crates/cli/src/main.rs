use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use linkbench_core::experiment::{cmd_bench, cmd_report, cmd_split, cmd_stats, ExperimentConfig, Overrides};
use linkbench_core::Error;

/// Link prediction benchmark: similarity heuristics against WLNM and SEAL-lite.
#[derive(Debug, Parser)]
#[command(name = "linkbench", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// TOML experiment config; flags below override its values.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,

    /// Dataset name(s), comma separated (e.g. USAir,NS).
    #[arg(long, global = true, value_name = "NAME")]
    graph: Option<String>,

    /// Approaches, comma separated; ALL selects every heuristic plus WLNM and SEAL-lite.
    #[arg(long, global = true, value_name = "LIST")]
    approach: Option<String>,

    /// Output directory.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Topological statistics of each graph.
    Stats,
    /// Generate and persist train/test folds.
    Split,
    /// Score every approach on every fold and write results.csv.
    Bench,
    /// Render results.csv as a Markdown summary.
    Report,
}

const EXIT_USAGE: u8 = 1;
const EXIT_DATA: u8 = 2;
const EXIT_RUNTIME: u8 = 3;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Config(_) => EXIT_USAGE,
        e if e.is_data_error() => EXIT_DATA,
        _ => EXIT_RUNTIME,
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    let mut cfg = match &cli.config {
        Some(p) => ExperimentConfig::load(p)?,
        None => ExperimentConfig::default(),
    };
    cfg.apply(&Overrides {
        seed: cli.seed,
        graphs: cli
            .graph
            .as_ref()
            .map(|g| g.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()),
        approaches: cli.approach.clone(),
        out: cli.out.clone(),
    });
    match cli.command {
        Command::Stats => {
            let stats = cmd_stats(&cfg)?;
            println!("graph\tnodes\tlinks\tavg_degree\ttriangles\tavg_clustering\tapl\tdiameter");
            for (name, s) in stats {
                let apl = s.apl.map_or("-".into(), |x| format!("{x:.3}"));
                let diam = s.diameter.map_or("-".into(), |x| x.to_string());
                println!(
                    "{name}\t{}\t{}\t{:.3}\t{}\t{:.3}\t{apl}\t{diam}",
                    s.nodes, s.links, s.avg_degree, s.triangles, s.avg_clustering
                );
            }
        }
        Command::Split => {
            for (name, folds) in cmd_split(&cfg)? {
                for f in &folds {
                    println!(
                        "{name} fold {}: {} train / {} test positives, {} train / {} test negatives",
                        f.fold_index,
                        f.train_pos.len(),
                        f.test_pos.len(),
                        f.train_neg.len(),
                        f.test_neg.len()
                    );
                }
            }
            println!("folds written under {}", cfg.out.join("splits").display());
        }
        Command::Bench => {
            let report = cmd_bench(&cfg)?;
            for r in report.rows.iter().filter(|r| r.fold.is_none()) {
                println!("{}\t{}\tauc {:.3}\tprecision {:.3}", r.graph, r.approach, r.auc, r.precision);
            }
            println!("results written to {}", cfg.results_path().display());
        }
        Command::Report => print!("{}", cmd_report(&cfg)?),
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("linkbench: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
