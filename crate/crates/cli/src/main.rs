//! Command-line front end for via-layout patterning decomposition.
//!
//! Subcommands cover the whole pipeline: `generate` makes synthetic layouts,
//! `stats` inspects their conflict graphs, `export-lp` writes integer
//! programs for external solvers, `solve` runs the native solver, `verify`
//! checks a foreign solution against a model, and `render` draws results.
//!
//! Exit codes: 0 success, 1 usage, 2 bad input, 3 budget exhausted without an
//! optimality proof, 4 size-cap refusal.

mod export;
mod render;
mod report;
mod solve;
mod stats;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dsamp::formulations::ModelError;
use dsamp::groups::{GroupError, GroupMode};
use dsamp::layout::{generate_random_layout, InducedWrt, LayoutError, Tech, TechRules};
use dsamp::solver::SolveError;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = u8::from(e.use_stderr());
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Stats(args) => stats::run(args),
        Command::Generate(args) => generate(args),
        Command::ExportLp(args) => export::run(args),
        Command::Solve(args) => solve::run(args),
        Command::Verify(args) => verify::run(args),
        Command::Render(args) => render::run(args),
    }
}

/// Read a layout file, naming the file in any failure.
fn load_layout(path: &std::path::Path) -> Result<dsamp::layout::Layout, Failure> {
    dsamp::layout::Layout::from_file(path)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn generate(args: GenerateArgs) -> Result<(), Failure> {
    let layout = generate_random_layout(args.n, args.density, args.seed)?;
    layout.write_to(&args.out)?;
    println!(
        "wrote {} vias (seed {}) to {}",
        layout.len(),
        args.seed,
        args.out.display()
    );
    Ok(())
}

#[derive(Parser)]
#[command(name = "dsamp", version, about = "Via layout patterning decomposition")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Conflict-graph statistics for a layout
    Stats(stats::StatsArgs),
    /// Generate a random via layout
    Generate(GenerateArgs),
    /// Write integer-programming models as LP files, one per component
    ExportLp(export::ExportArgs),
    /// Solve a layout with the native branch-and-bound solver
    Solve(solve::SolveArgs),
    /// Check an LP-variable assignment file against a model
    Verify(verify::VerifyArgs),
    /// Draw a layout, optionally colored by a solution, as SVG
    Render(render::RenderArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// Output layout file
    out: PathBuf,
    /// Number of vias
    #[arg(long)]
    n: usize,
    /// Target conflict edges per via
    #[arg(long, default_value_t = 1.3)]
    density: f64,
    /// Random seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Process and enumeration parameters shared by the analyzing subcommands.
#[derive(Args)]
struct RuleArgs {
    /// Conflict distance between via borders, nm
    #[arg(long, default_value_t = 31.0)]
    litho: f64,
    /// Lower end of the DSA window between via centers, nm
    #[arg(long, default_value_t = 20.0)]
    l0: f64,
    /// Upper end of the DSA window between via centers, nm
    #[arg(long, default_value_t = 40.0)]
    u0: f64,
    /// Geometric restriction on DSA chains
    #[arg(long, value_enum, default_value = "axis193i")]
    tech: TechArg,
    /// Lower end of the direction-change window at chain bends, degrees
    #[arg(long, default_value_t = 135.0)]
    angle_lo: f64,
    /// Upper end of the direction-change window at chain bends, degrees
    #[arg(long, default_value_t = 225.0)]
    angle_hi: f64,
    /// Largest number of vias in one group
    #[arg(long, default_value_t = 3)]
    k: usize,
    /// Number of patterning steps made available
    #[arg(long, default_value_t = 5)]
    colors: usize,
    /// Treat border distance exactly at the conflict distance as a conflict
    #[arg(long)]
    inclusive_conflict: bool,
    /// Drop right-angle chains under the unrestricted technology
    #[arg(long)]
    remove_l_shapes: bool,
    /// Edge set the chord check of induced groups runs against
    #[arg(long, value_enum, default_value = "conflict")]
    induced_wrt: InducedWrtArg,
}

impl RuleArgs {
    fn to_rules(&self) -> Result<TechRules, Failure> {
        let rules = TechRules {
            litho_dist: self.litho,
            l0: self.l0,
            u0: self.u0,
            tech: match self.tech {
                TechArg::Axis193i => Tech::Axis193i,
                TechArg::Euv => Tech::EuvAngle,
                TechArg::Unrestricted => Tech::Unrestricted,
            },
            angle_window_deg: (self.angle_lo, self.angle_hi),
            k_max: self.k,
            color_bound: self.colors,
            inclusive_conflict: self.inclusive_conflict,
            remove_l_shapes: self.remove_l_shapes,
            induced_wrt: match self.induced_wrt {
                InducedWrtArg::Conflict => InducedWrt::Conflict,
                InducedWrtArg::Dsa => InducedWrt::Dsa,
            },
        };
        rules
            .validate()
            .map_err(|e| Failure::usage(e.to_string()))?;
        Ok(rules)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TechArg {
    #[value(name = "axis193i")]
    Axis193i,
    #[value(name = "euv")]
    Euv,
    #[value(name = "unrestricted")]
    Unrestricted,
}

#[derive(Clone, Copy, ValueEnum)]
enum InducedWrtArg {
    Conflict,
    Dsa,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Induced,
    General,
}

impl ModeArg {
    fn to_mode(self) -> GroupMode {
        match self {
            ModeArg::Induced => GroupMode::Induced,
            ModeArg::General => GroupMode::General,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    Pairing,
    Naive,
    NaiveStrengthened,
    Induced,
    General,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Csv,
}

/// Error carrying the process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    fn input(message: impl Into<String>) -> Failure {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn budget(message: impl Into<String>) -> Failure {
        Failure {
            code: 3,
            message: message.into(),
        }
    }

    fn too_large(message: impl Into<String>) -> Failure {
        Failure {
            code: 4,
            message: message.into(),
        }
    }
}

impl From<LayoutError> for Failure {
    fn from(e: LayoutError) -> Failure {
        Failure::input(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::input(e.to_string())
    }
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Failure {
        Failure::too_large(e.to_string())
    }
}

impl From<ModelError> for Failure {
    fn from(e: ModelError) -> Failure {
        match e {
            ModelError::TooLarge { .. } => Failure::too_large(e.to_string()),
            _ => Failure::input(e.to_string()),
        }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Failure {
        match e {
            SolveError::NoSolutionWithin { proven: false, .. } => Failure::budget(e.to_string()),
            SolveError::Catalog(inner) => inner.into(),
            _ => Failure::input(e.to_string()),
        }
    }
}
