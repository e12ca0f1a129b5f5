use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dynprod_sim::{run_verify, simulate, Level, DEFAULT_SEED};

#[derive(Parser)]
#[command(name = "dynprod", version, about = "Quantum dynamics with a dynamical scalar product")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate a configuration and write the trajectory as CSV.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        output: PathBuf,
        /// Seed for fields given as "random"; overrides the config's seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run the oracle and conservation suites.
    Verify {
        #[arg(long, value_enum, default_value_t = LevelArg::Quick)]
        level: LevelArg,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Simulate { config, output, seed } => match simulate(&config, &output, seed) {
            Ok(summary) => {
                println!("wrote {}", output.display());
                println!("{summary}");
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(e.exit_code())
            }
        },
        Command::Verify { level, seed } => {
            let level = match level {
                LevelArg::Quick => Level::Quick,
                LevelArg::Full => Level::Full,
            };
            let reports = run_verify(level, seed);
            for r in &reports {
                println!("{r}");
            }
            let failed = reports.iter().filter(|r| !r.passed).count();
            if failed == 0 {
                println!("all {} criteria passed", reports.len());
                ExitCode::SUCCESS
            } else {
                println!("{failed} of {} criteria failed", reports.len());
                ExitCode::from(1)
            }
        }
    }
}
