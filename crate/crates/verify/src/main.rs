use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pgl3_lattices::building::quotient_graph;
use verify::suites::graph_search;
use verify::{run_suite, Options, Suite, VerifyError};

/// Run verification suites for the Hermitian lattices L, M and their
/// groups acting on the building of PGL3(Q2).
#[derive(Parser)]
#[command(name = "verify", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    LatticeCounts(RunArgs),
    IsometryGroups(RunArgs),
    Superlattices(RunArgs),
    IndexEight(RunArgs),
    BuildingGm(RunArgs),
    BuildingGl(RunArgs),
    Covolume(RunArgs),
    Elimination(RunArgs),
    All(RunArgs),
    /// Write the orbit quotient graph of the trusted ball.
    Graph(GraphArgs),
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value_t = 3)]
    radius: u32,
    #[arg(long, default_value_t = 64)]
    precision: u32,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Record wall time in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
}

#[derive(Args)]
struct GraphArgs {
    #[arg(long, value_parser = ["gl", "gm"])]
    group: String,
    #[arg(long, value_enum, default_value = "dot")]
    format: Format,
    #[arg(long, default_value_t = 3)]
    radius: u32,
    #[arg(long, default_value_t = 64)]
    precision: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), VerifyError> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cmd: Cmd) -> Result<bool, VerifyError> {
    let (suite, args) = match cmd {
        Cmd::Graph(g) => {
            let opts = Options { radius: g.radius, precision: g.precision };
            let (name, search) = graph_search(&g.group, &opts)?;
            let q = quotient_graph(&search)?;
            let text = match g.format {
                Format::Dot => q.to_dot(&name),
                Format::Json => serde_json::to_string_pretty(&q)? + "\n",
            };
            emit(&text, &g.out)?;
            return Ok(true);
        }
        Cmd::LatticeCounts(a) => (Suite::LatticeCounts, a),
        Cmd::IsometryGroups(a) => (Suite::IsometryGroups, a),
        Cmd::Superlattices(a) => (Suite::Superlattices, a),
        Cmd::IndexEight(a) => (Suite::IndexEight, a),
        Cmd::BuildingGm(a) => (Suite::BuildingGm, a),
        Cmd::BuildingGl(a) => (Suite::BuildingGl, a),
        Cmd::Covolume(a) => (Suite::Covolume, a),
        Cmd::Elimination(a) => (Suite::Elimination, a),
        Cmd::All(a) => (Suite::All, a),
    };
    let t0 = Instant::now();
    let mut report = run_suite(suite, &Options { radius: args.radius, precision: args.precision })?;
    if args.timing {
        report.wall_time = Some(t0.elapsed().as_secs_f64());
    }
    let text = if args.json { serde_json::to_string_pretty(&report)? + "\n" } else { report.to_string() };
    emit(&text, &args.out)?;
    Ok(report.all_pass())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("verify: {e}");
            ExitCode::from(2)
        }
    }
}
