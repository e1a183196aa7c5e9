use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod design_cmd;
mod eliminate_cmd;
mod group_cmd;
mod output;
mod sieve_cmd;

use ftpi_core::elimination::EngineConfig;

#[derive(Parser, Debug)]
#[command(name = "ftpi", version, about = "Flag-transitive point-imprimitive 2-designs: sieve, groups, designs, elimination")]
struct Cli {
    #[command(flatten)]
    config: ConfigArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct ConfigArgs {
    /// Largest group order for element-level enumeration.
    #[arg(long, global = true, env = "FTPI_MAX_ENUM_ORDER", default_value_t = 25_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_enum_order: u64,
    /// Largest degree of an induced (coset or set) action.
    #[arg(long, global = true, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_action_degree: u64,
    /// Largest number of subsets scanned for subset-orbit arguments.
    #[arg(long, global = true, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_subsets: u64,
    /// Worker threads for tuple- and fixture-level work (0: all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
}

impl ConfigArgs {
    pub fn engine(&self) -> EngineConfig {
        EngineConfig {
            max_enum_order: self.max_enum_order,
            max_action_degree: self.max_action_degree,
            max_subsets: self.max_subsets,
        }
    }

    /// Header line naming the effective configuration.
    pub fn header(&self) -> String {
        format!("# config: {} threads={}", self.engine(), self.threads)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate parameter tuples passing every arithmetic constraint.
    Sieve(sieve_cmd::SieveArgs),
    /// Inspect a permutation group.
    #[command(subcommand)]
    Group(group_cmd::GroupCommand),
    /// Verify designs and their automorphism groups.
    #[command(subcommand)]
    Design(design_cmd::DesignCommand),
    /// Run the elimination pipeline over a tuple CSV.
    Eliminate(eliminate_cmd::EliminateArgs),
    /// Re-derive the eliminated rows of a report.
    Replay(eliminate_cmd::ReplayArgs),
    /// Write the fixture catalog.
    #[command(subcommand)]
    Fixtures(FixturesCommand),
}

#[derive(Subcommand, Debug)]
enum FixturesCommand {
    /// Regenerate every group, matrix and design fixture.
    Generate {
        #[arg(long, default_value = "fixtures")]
        dir: PathBuf,
    },
}

/// Outcome of a command that ran to completion.
pub enum Outcome {
    Ok,
    /// A verification failed or output differs from a golden file.
    Mismatch,
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    if cli.config.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.config.threads)
            .build_global()?;
    }
    let cfg = &cli.config;
    match cli.command {
        Command::Sieve(a) => sieve_cmd::run(&a, cfg),
        Command::Group(c) => group_cmd::run(&c, cfg),
        Command::Design(c) => design_cmd::run(&c, cfg),
        Command::Eliminate(a) => eliminate_cmd::run(&a, cfg),
        Command::Replay(a) => eliminate_cmd::replay(&a, cfg),
        Command::Fixtures(FixturesCommand::Generate { dir }) => {
            let written = ftpi_core::fixtures::generate(&dir)?;
            println!("{}", cfg.header());
            for p in written {
                println!("{}", p.display());
            }
            Ok(Outcome::Ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
