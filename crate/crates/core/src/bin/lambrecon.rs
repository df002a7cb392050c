use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lambrecon::cli::{run, Command, ExitStatus, Family, Format, RunConfig};
use lambrecon::Geometry;

#[derive(Parser)]
#[command(name = "lambrecon", version, about = "Reconstruct potentials from nodeless amplitudes")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Reconstruct one state and write its curve file
    Reconstruct(Flags),
    /// Reconstruct, run the residual/current checks, write the report
    Verify(Flags),
    /// Evolve the reconstructed ψ under its own potential
    Propagate(Flags),
    /// Prepare R under V₁, kick with e^{iS}, evolve under V
    Protocol(Flags),
    /// Reconstruct and verify for every C in --C-list
    Sweep(Flags),
    /// List the built-in prefactor families
    Families(Flags),
}

#[derive(clap::Args)]
struct Flags {
    /// JSON file with RunConfig keys; flags override it
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    family: Option<Family>,
    /// Expression for R(x) in the variable x (with --family expr)
    #[arg(long = "expr")]
    expr: Option<String>,
    #[arg(long = "C", allow_hyphen_values = true)]
    c: Option<f64>,
    #[arg(long = "C-list", value_delimiter = ',', allow_hyphen_values = true)]
    c_list: Option<Vec<f64>>,
    #[arg(long = "E", allow_hyphen_values = true)]
    e: Option<f64>,
    #[arg(long = "x-lo", allow_hyphen_values = true)]
    x_lo: Option<f64>,
    #[arg(long = "x-hi", allow_hyphen_values = true)]
    x_hi: Option<f64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    x0: Option<f64>,
    #[arg(long)]
    clip: Option<f64>,
    #[arg(long = "quad-tol")]
    quad_tol: Option<f64>,
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long = "out-dir")]
    out_dir: Option<PathBuf>,
    #[arg(long)]
    format: Option<Format>,
    /// line-1d or radial-3d (with --family expr)
    #[arg(long)]
    geometry: Option<Geometry>,
    #[arg(long = "min-fidelity")]
    min_fidelity: Option<f64>,
    /// Interior window for fidelity, as lo,hi
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    window: Option<Vec<f64>>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { ExitStatus::Invalid.code() as u8 } else { 0 });
        }
    };
    let (command, flags) = match cli.command {
        Cmd::Reconstruct(f) => (Command::Reconstruct, f),
        Cmd::Verify(f) => (Command::Verify, f),
        Cmd::Propagate(f) => (Command::Propagate, f),
        Cmd::Protocol(f) => (Command::Protocol, f),
        Cmd::Sweep(f) => (Command::Sweep, f),
        Cmd::Families(f) => (Command::Families, f),
    };

    let file = match &flags.config {
        Some(path) => match RunConfig::from_json_file(path) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(ExitStatus::Invalid.code() as u8);
            }
        },
        None => RunConfig::default(),
    };
    let window = match flags.window.as_deref() {
        None => None,
        Some(&[lo, hi]) => Some([lo, hi]),
        Some(_) => {
            eprintln!("error: --window takes exactly two values, lo,hi");
            return ExitCode::from(ExitStatus::Invalid.code() as u8);
        }
    };
    let over = RunConfig {
        command: Some(command),
        family: flags.family,
        expr_text: flags.expr,
        c: flags.c,
        c_list: flags.c_list,
        e: flags.e,
        x_lo: flags.x_lo,
        x_hi: flags.x_hi,
        n: flags.n,
        x0: flags.x0,
        clip: flags.clip,
        quad_tol: flags.quad_tol,
        dt: flags.dt,
        steps: flags.steps,
        out_dir: flags.out_dir,
        format: flags.format,
        geometry: flags.geometry,
        min_fidelity: flags.min_fidelity,
        window,
    };

    let outcome = run(&file.merged_with(over));
    if outcome.status == ExitStatus::Success || outcome.status == ExitStatus::CheckFailed {
        // a closed pipe (e.g. `| head`) is not an error worth reporting
        let _ = writeln!(std::io::stdout(), "{}", outcome.message);
    } else {
        eprintln!("{}", outcome.message);
    }
    for f in &outcome.files {
        log::info!("wrote {}", f.display());
    }
    ExitCode::from(outcome.status.code() as u8)
}
