use std::path::PathBuf;
use std::process::ExitCode;

use chiral_tmm::Engine;
use chiral_tmm_cli::run::load_config;
use chiral_tmm_cli::{presets, run, CliError, ConfigError, ScenarioConfig};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "chiral-tmm",
    version,
    about = "Reflected and transmitted powers of chiral multilayer stacks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a sweep and write CSV plus a manifest.
    Run(RunArgs),
    /// List the built-in presets.
    ListPresets,
    /// Print a preset as a config file.
    ShowPreset { name: String },
    /// Check a config file without running it.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, conflicts_with = "config", required_unless_present = "config")]
    preset: Option<String>,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    engine: Option<EngineArg>,
    /// Output CSV path; defaults to `<scenario>.csv`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override the number of sweep points.
    #[arg(long)]
    points: Option<usize>,
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Cascade,
    Direct,
}

fn scenario(args: &RunArgs) -> Result<ScenarioConfig, ConfigError> {
    let mut cfg = match (&args.preset, &args.config) {
        (Some(name), _) => presets::find(name)?.config(),
        (None, Some(path)) => load_config(path)?,
        (None, None) => unreachable!("clap requires one of --preset/--config"),
    };
    if let Some(n) = args.points {
        cfg = cfg.with_points(n)?;
    }
    if let Some(e) = args.engine {
        cfg = cfg.with_engine(match e {
            EngineArg::Cascade => Engine::Cascade,
            EngineArg::Direct => Engine::Direct,
        });
    }
    Ok(cfg)
}

fn run_command(args: RunArgs) -> Result<(), CliError> {
    let cfg = scenario(&args)?;
    let out = args
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("{}.csv", cfg.name)));
    let report = match args.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| ConfigError::Invalid(format!("--threads: {e}")))?
            .install(|| run(&cfg, &out))?,
        None => run(&cfg, &out)?,
    };
    let o = &report.outcome;
    eprintln!(
        "{}: {} of {} points written to {} ({} failed)",
        cfg.name,
        o.rows.len(),
        o.points,
        report.csv.display(),
        o.failures.len()
    );
    for f in o.failures.iter().take(5) {
        eprintln!(
            "  point {} (f={:e} Hz, theta={} deg): {}",
            f.index, f.frequency_hz, f.theta_deg, f.error
        );
    }
    Ok(())
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Run(args) => run_command(args),
        Command::ListPresets => {
            print!("{}", presets::table());
            Ok(())
        }
        Command::ShowPreset { name } => {
            print!("{}", presets::find(&name)?.source());
            Ok(())
        }
        Command::Validate { config } => {
            let cfg = load_config(&config)?;
            let points = cfg.grid()?.points().len();
            println!(
                "ok: {} ({} layers, {} points, sha256 {})",
                cfg.name,
                cfg.layers.len(),
                points,
                cfg.hash()
            );
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
