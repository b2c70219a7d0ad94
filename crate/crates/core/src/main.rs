use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use relident::cli::{run_file, Command, OutputFormat, RunConfig};

/// Relative identifiability analysis of rational ODE models.
#[derive(Parser)]
#[command(name = "relident", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Input-output polynomials, one per output.
    IoPolys(Common),
    /// Exhaustive summary: coefficients deduplicated up to scalars.
    Summary(Common),
    /// Checks that the monomials of each input-output polynomial are independent.
    CheckWronskian(Common),
    /// Identifiability tree.
    Tree(Common),
    /// Two parameter vectors showing that a parameter is not identifiable.
    Witness {
        #[command(flatten)]
        common: Common,
        /// Parameters assumed known.
        #[arg(long, value_delimiter = ',')]
        known: Vec<String>,
        #[arg(long)]
        target: String,
    },
}

#[derive(Args)]
struct Common {
    /// Model file (JSON).
    model: PathBuf,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Ignore the parameter constraints of the model.
    #[arg(long)]
    no_constraints: bool,
    /// Treat initial states and slopes as unknown parameters.
    #[arg(long)]
    with_initial_conditions: bool,
    /// Keep only these outputs.
    #[arg(long, value_delimiter = ',')]
    outputs: Option<Vec<String>>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Time budget of each emptiness test, in seconds.
    #[arg(long, env = "RELIDENT_BUDGET_SECS", default_value_t = 60.0, value_parser = positive)]
    budget_secs: f64,
    /// Highest number of prolongations tried during elimination.
    #[arg(long)]
    max_prolong: Option<usize>,
    #[arg(long, default_value_t = 8)]
    witness_height: u32,
    #[arg(long, default_value_t = 5)]
    wronskian_trials: usize,
    /// Skip the Wronskian check; outputs are marked "hypothesis unverified".
    #[arg(long)]
    skip_wronskian_check: bool,
    /// Report test counts and per-test verdicts.
    #[arg(long)]
    stats: bool,
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(format!("'{s}' is not a positive number of seconds")),
    }
}

impl Common {
    fn config(&self) -> RunConfig {
        RunConfig {
            seed: self.seed,
            budget: Duration::from_secs_f64(self.budget_secs),
            max_prolong: self.max_prolong,
            witness_height: self.witness_height,
            wronskian_trials: self.wronskian_trials,
            format: self.format,
            no_constraints: self.no_constraints,
            with_initial_conditions: self.with_initial_conditions,
            skip_wronskian_check: self.skip_wronskian_check,
            stats: self.stats,
            outputs: self.outputs.clone(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (common, command) = match cli.command {
        Cmd::IoPolys(c) => (c, Command::IoPolys),
        Cmd::Summary(c) => (c, Command::Summary),
        Cmd::CheckWronskian(c) => (c, Command::CheckWronskian),
        Cmd::Tree(c) => (c, Command::Tree),
        Cmd::Witness { common, known, target } => (common, Command::Witness { known, target }),
    };
    match run_file(&common.model, &common.config(), &command) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
