use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use segcalc::commands::{cmd_approx_table, cmd_euler, cmd_lines, cmd_verify, Format};
use segcalc::scenario::run_file;
use segcalc::{CliError, Output, EXIT_CONFIG};
use segcalc_core::{Exec, YMode};

#[derive(Parser)]
#[command(name = "segcalc", version, about = "Segre and CSM classes of unions in projective space")]
struct Cli {
    /// Truncation degree for formal-series identities.
    #[arg(long, global = true)]
    truncation: Option<u32>,
    /// Run on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Successive approximations for the quadric surface in P^n.
    ApproxTable {
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Lines through a point of P^3.
    Lines {
        #[arg(long)]
        count: usize,
        #[arg(long, value_enum, default_value_t = YArg::Point)]
        y: YArg,
    },
    /// Run a verification suite: identities, incexc, relsm, recursion or all.
    Verify { suite: String },
    /// Scenario files.
    Scenario {
        #[command(subcommand)]
        action: ScenarioAction,
    },
    /// Euler characteristics of sections of O(d)^r, with the recursion check.
    Euler {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        d: i64,
        #[arg(long)]
        rmax: usize,
    },
}

#[derive(Subcommand)]
enum ScenarioAction {
    Run {
        file: std::path::PathBuf,
        #[arg(long, value_enum, default_value_t = ScenarioFormat::Text)]
        format: ScenarioFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScenarioFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum YArg {
    Point,
    Empty,
}

fn run(cli: Cli) -> Result<Output, CliError> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
    match cli.command {
        Command::ApproxTable { n, format } => {
            let format = match format {
                FormatArg::Text => Format::Text,
                FormatArg::Json => Format::Json,
                FormatArg::Csv => Format::Csv,
            };
            cmd_approx_table(n, format, exec)
        }
        Command::Lines { count, y } => cmd_lines(count, if matches!(y, YArg::Point) { YMode::Point } else { YMode::Empty }),
        Command::Verify { suite } => Ok(cmd_verify(&suite, exec, cli.truncation)),
        Command::Scenario { action: ScenarioAction::Run { file, format } } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| CliError::Config(format!("cannot read {}: {e}", file.display())))?;
            Ok(run_file(&text, matches!(format, ScenarioFormat::Json), exec, cli.truncation))
        }
        Command::Euler { n, d, rmax } => cmd_euler(n, d, rmax),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = run(cli).unwrap_or_else(|e| Output { stdout: String::new(), stderr: format!("error: {e}\n"), code: EXIT_CONFIG });
    print!("{}", output.stdout);
    eprint!("{}", output.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(output.code as u8)
}
