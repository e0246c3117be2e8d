use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use nearfield::experiments::{run, Command, ScenarioConfig};
use nearfield::Error;

#[derive(Parser)]
#[command(name = "nearfield", version, about = "Near-field beamforming gain experiments")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Characteristic distances of the configured array
    Distances(RunArgs),
    /// Single-antenna gain versus distance
    Fig3(RunArgs),
    /// Array gain, its upper bound and the scalar-field variant
    Fig5(RunArgs),
    /// Gain along the axis for several focal points
    Focus(RunArgs),
    /// Transverse RIS gain in the focal plane
    Bw(RunArgs),
    /// RIS gain over an (x, z) grid
    Heatmap(RunArgs),
}

#[derive(clap::Args)]
struct RunArgs {
    /// INI-style scenario file
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output CSV path (overrides output.path)
    #[arg(long)]
    out: Option<PathBuf>,
    /// section.key=value, may be repeated
    #[arg(long = "override", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    /// Exit with status 3 when any quadrature fails to converge
    #[arg(long)]
    strict: bool,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Config(_) | Error::Domain(_) | Error::Index { .. } => 2,
        Error::NonConvergent { .. } => 3,
        Error::Io(_) | Error::Csv(_) => 1,
    }
}

fn execute(cmd: Command, args: RunArgs) -> Result<u8, Error> {
    let mut cfg = ScenarioConfig::load(cmd, args.config.as_deref(), &args.overrides)?;
    if let Some(out) = args.out {
        cfg = cfg.with_output(out);
    }
    let outcome = run(cmd, &cfg)?;
    print!("{}", outcome.summary);
    for f in &outcome.files {
        println!("wrote {}", f.display());
    }
    if args.strict && outcome.nonconvergent > 0 {
        eprintln!("error: {} points did not converge", outcome.nonconvergent);
        return Ok(3);
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (cmd, args) = match cli.command {
        Cmd::Distances(a) => (Command::Distances, a),
        Cmd::Fig3(a) => (Command::Fig3, a),
        Cmd::Fig5(a) => (Command::Fig5, a),
        Cmd::Focus(a) => (Command::Focus, a),
        Cmd::Bw(a) => (Command::Bw, a),
        Cmd::Heatmap(a) => (Command::Heatmap, a),
    };
    match execute(cmd, args) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
