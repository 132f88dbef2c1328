use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use ltsgen_cli::{run, Command, Format, Range, RunConfig, EXIT_SPEC};
use ltsgen_core::exec::Exec;

/// Symbolic labelled transition systems from event-style B machines.
#[derive(Parser)]
#[command(name = "ltsgen", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Build the symbolic LTS of a machine.
    Generate {
        input: PathBuf,
        #[command(flatten)]
        build: BuildArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Build the hierarchical LTS of a refinement.
    Refine {
        input: PathBuf,
        /// The refined machine.
        #[arg(long = "abstract", value_name = "FILE")]
        abstract_path: PathBuf,
        #[command(flatten)]
        build: BuildArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check a symbolic LTS against explicit exploration of instances.
    Conform {
        input: PathBuf,
        #[arg(long = "abstract", value_name = "FILE")]
        abstract_path: Option<PathBuf>,
        /// Constant values to explore, NAME=v or NAME=lo..hi.
        #[arg(long = "instantiate", value_name = "NAME=RANGE", required = true)]
        instantiations: Vec<Range>,
        /// Check this intermediate file instead of building the LTS.
        #[arg(long = "lts", value_name = "FILE")]
        lts_path: Option<PathBuf>,
        #[arg(long, default_value_t = 100_000)]
        max_states: usize,
        #[command(flatten)]
        build: BuildArgs,
    },
    /// Write every proof obligation as an SMT-LIB file.
    ExportPo {
        input: PathBuf,
        #[arg(long = "abstract", value_name = "FILE")]
        abstract_path: Option<PathBuf>,
        #[arg(long = "out", default_value = ".")]
        out_dir: PathBuf,
    },
}

#[derive(Args)]
struct BuildArgs {
    /// Bound for enumeration, NAME=v or NAME=lo..hi (constant or variable).
    #[arg(long = "bound", value_name = "NAME=RANGE")]
    bounds: Vec<Range>,
    #[arg(long)]
    allow_uncovered: bool,
    /// Discharge obligations on one thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(
        long = "format",
        value_delimiter = ',',
        default_value = "inter,dot,aut"
    )]
    formats: Vec<Format>,
    #[arg(long = "out", default_value = ".")]
    out_dir: PathBuf,
    /// Exit 1 when a transition is kept by default.
    #[arg(long)]
    strict: bool,
    #[arg(long)]
    allow_multiple_initial: bool,
}

impl BuildArgs {
    fn apply(self, cfg: &mut RunConfig) {
        cfg.bounds = self.bounds;
        cfg.allow_uncovered = self.allow_uncovered;
        if self.sequential {
            cfg.exec = Exec::Sequential;
        }
    }
}

impl OutputArgs {
    fn apply(self, cfg: &mut RunConfig) {
        cfg.formats = self.formats.into_iter().collect();
        cfg.out_dir = self.out_dir;
        cfg.strict = self.strict;
        cfg.allow_multiple_initial = self.allow_multiple_initial;
    }
}

fn config(cli: Cli) -> RunConfig {
    match cli.command {
        Sub::Generate {
            input,
            build,
            output,
        } => {
            let mut cfg = RunConfig::new(Command::Generate, input);
            build.apply(&mut cfg);
            output.apply(&mut cfg);
            cfg
        }
        Sub::Refine {
            input,
            abstract_path,
            build,
            output,
        } => {
            let mut cfg = RunConfig::new(Command::Refine, input);
            cfg.abstract_path = Some(abstract_path);
            build.apply(&mut cfg);
            output.apply(&mut cfg);
            cfg
        }
        Sub::Conform {
            input,
            abstract_path,
            instantiations,
            lts_path,
            max_states,
            build,
        } => {
            let mut cfg = RunConfig::new(Command::Conform, input);
            cfg.abstract_path = abstract_path;
            cfg.instantiations = instantiations;
            cfg.lts_path = lts_path;
            cfg.max_states = max_states;
            build.apply(&mut cfg);
            cfg
        }
        Sub::ExportPo {
            input,
            abstract_path,
            out_dir,
        } => {
            let mut cfg = RunConfig::new(Command::ExportPo, input);
            cfg.abstract_path = abstract_path;
            cfg.out_dir = out_dir;
            cfg
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_SPEC as u8 } else { 0 });
        }
    };
    let mut cfg = config(cli);
    if let Ok(ms) = std::env::var("GENESYS_TIME_BUDGET_MS") {
        match ms.parse::<u64>() {
            Ok(ms) => cfg.time_budget = Some(Duration::from_millis(ms)),
            Err(_) => {
                eprintln!("error: GENESYS_TIME_BUDGET_MS must be a number of milliseconds");
                return ExitCode::from(EXIT_SPEC as u8);
            }
        }
    }
    ExitCode::from(run(&cfg) as u8)
}
