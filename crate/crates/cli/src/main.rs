use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use halo_approx_cli::config::Kind;
use halo_approx_cli::{catalog, load_config, run_scenario, RunError, ScenarioConfig};

#[derive(Parser)]
#[command(name = "halo-approx", version, about = "Run verification scenarios and write reports")]
struct Cli {
    /// Seed for sampled checks; overrides the scenario's.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Largest carrier or enumeration a run may build.
    #[arg(long, global = true)]
    cap: Option<u64>,
    /// Where to write the JSON report.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// What to print on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Metric axioms, bi-invariance and metric identities.
    VerifyMetric(ConfigArg),
    /// Product and wreath maps between metric families.
    VerifyCompat(ConfigArg),
    /// Orbit and automorphic approximations of actions.
    VerifyAction(ConfigArg),
    /// The semidirect-product pipeline.
    Amalgamate(ConfigArg),
    /// Graph-product normal forms.
    NormalForm(ConfigArg),
    /// Local embeddings into finite groups.
    LefEmbed(ConfigArg),
    /// Run a bundled scenario by name.
    Run { name: String },
    /// List the bundled scenarios.
    ListScenarios {
        #[arg(long)]
        json: bool,
    },
}

#[derive(clap::Args)]
struct ConfigArg {
    #[arg(long)]
    config: PathBuf,
}

fn fail(e: &RunError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code() as u8)
}

fn load(kind: Kind, path: &PathBuf) -> Result<ScenarioConfig, RunError> {
    let cfg = load_config(path)?;
    if cfg.task.kind() != kind {
        return Err(RunError::Schema {
            path: "task.kind".into(),
            message: format!("expected {} but the scenario is {}", kind.name(), cfg.task.kind().name()),
        });
    }
    Ok(cfg)
}

fn execute(cli: &Cli, mut cfg: ScenarioConfig) -> Result<ExitCode, RunError> {
    if cli.seed.is_some() {
        cfg.seed = cli.seed;
    }
    if cli.cap.is_some() {
        cfg.cap = cli.cap;
    }
    if cli.out.is_some() {
        cfg.out = cli.out.clone();
    }
    let report = run_scenario(&cfg)?;
    if let Some(out) = &cfg.out {
        std::fs::write(out, report.to_json()).map_err(|e| RunError::Io(format!("cannot write {}: {e}", out.display())))?;
    }
    match cli.format {
        Format::Json => print!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match &cli.command {
        Command::ListScenarios { json } => {
            let all = catalog();
            if *json {
                println!("{}", serde_json::to_string_pretty(&all).expect("catalog serializes"));
            } else {
                let width = all.iter().map(|e| e.name.len()).max().unwrap_or(0);
                for e in &all {
                    println!("{:width$}  {:13}  {}  [{}]", e.name, e.kind, e.description, e.anchor);
                }
            }
            return ExitCode::SUCCESS;
        }
        Command::Run { name } => match catalog::find(name) {
            Some(e) => Ok(e.config()),
            None => Err(RunError::Invalid(format!("no bundled scenario named {name:?}; see list-scenarios"))),
        },
        Command::VerifyMetric(a) => load(Kind::VerifyMetric, &a.config),
        Command::VerifyCompat(a) => load(Kind::VerifyCompat, &a.config),
        Command::VerifyAction(a) => load(Kind::VerifyAction, &a.config),
        Command::Amalgamate(a) => load(Kind::Amalgamate, &a.config),
        Command::NormalForm(a) => load(Kind::NormalForm, &a.config),
        Command::LefEmbed(a) => load(Kind::LefEmbed, &a.config),
    };
    match cfg.and_then(|c| execute(&cli, c)) {
        Ok(code) => code,
        Err(e) => fail(&e),
    }
}
