mod commands;
mod report;

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::{Failure, Inputs, Outcome, Parameters, Report, TOOL_VERSION};

#[derive(Parser)]
#[command(name = "qcoh", version, about = "Quillen cohomology of finite categories and algebras")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct Global {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Compute a single degree.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub degree: Option<i64>,
    /// Degree cap.
    #[arg(long, global = true, default_value_t = 4)]
    pub max_degree: i64,
    /// Ring for default coefficients: Z, Q or F<p>.
    #[arg(long, global = true, default_value = "Z")]
    pub ring: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

#[derive(Subcommand)]
enum Command {
    /// Finite categories.
    #[command(subcommand)]
    Cat(CatCommand),
    /// Cohomology of categories and groups.
    #[command(subcommand)]
    Coh(CohCommand),
    /// Hochschild and Quillen cohomology of algebras.
    #[command(subcommand)]
    Hh(HhCommand),
    /// Bundled worked examples.
    Examples { name: String },
}

#[derive(Subcommand)]
pub enum CatCommand {
    Validate { category: String },
    /// Twisted arrow category with its projection to `C^op × C`.
    Tw { category: String },
    /// Nerve chain counts and reduced homology.
    Nerve { category: String },
    Op { category: String },
    Product { left: String, right: String },
}

#[derive(Subcommand)]
pub enum CohCommand {
    /// Derived limits; constant coefficients by default.
    Lim { category: String, coefficients: Option<String> },
    /// Cohomology with coefficients in a natural system.
    Bw { category: String, coefficients: Option<String> },
    /// Quillen cohomology as derived limits over the twisted arrow category.
    Quillen { category: String, coefficients: Option<String> },
    /// Relative Quillen cohomology of a functor `source -> target`.
    Relative {
        source: String,
        target: String,
        functor: String,
        coefficients: Option<String>,
    },
    /// Homological coinitiality of `gamma: source -> target`.
    Coinitial { source: String, target: String, gamma: String },
    /// Group cohomology via the bar complex; trivial coefficients by default.
    Group { group: String, module: Option<String> },
    /// Reduced cohomology of the classifying space.
    Reduced { group: String, module: Option<String> },
}

#[derive(Subcommand)]
pub enum HhCommand {
    /// Hochschild cohomology; the regular bimodule by default.
    Hh { algebra: String, bimodule: Option<String> },
    Der { algebra: String, bimodule: Option<String> },
    Inner { algebra: String, bimodule: Option<String> },
    /// The bimodule of noncommutative differentials.
    Omega { algebra: String },
    Leibniz { algebra: String },
    Quillen { algebra: String, bimodule: Option<String> },
}

impl Command {
    fn name(&self) -> String {
        match self {
            Command::Cat(c) => format!(
                "cat {}",
                match c {
                    CatCommand::Validate { .. } => "validate",
                    CatCommand::Tw { .. } => "tw",
                    CatCommand::Nerve { .. } => "nerve",
                    CatCommand::Op { .. } => "op",
                    CatCommand::Product { .. } => "product",
                }
            ),
            Command::Coh(c) => format!(
                "coh {}",
                match c {
                    CohCommand::Lim { .. } => "lim",
                    CohCommand::Bw { .. } => "bw",
                    CohCommand::Quillen { .. } => "quillen",
                    CohCommand::Relative { .. } => "relative",
                    CohCommand::Coinitial { .. } => "coinitial",
                    CohCommand::Group { .. } => "group",
                    CohCommand::Reduced { .. } => "reduced",
                }
            ),
            Command::Hh(c) => format!(
                "hh {}",
                match c {
                    HhCommand::Hh { .. } => "hh",
                    HhCommand::Der { .. } => "der",
                    HhCommand::Inner { .. } => "inner",
                    HhCommand::Omega { .. } => "omega",
                    HhCommand::Leibniz { .. } => "leibniz",
                    HhCommand::Quillen { .. } => "quillen",
                }
            ),
            Command::Examples { name } => format!("examples {name}"),
        }
    }
}

fn run(cli: &Cli, inputs: &mut Inputs) -> Result<Outcome, Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::Cat(c) => commands::cat(c, g, inputs),
        Command::Coh(c) => commands::coh(c, g, inputs),
        Command::Hh(c) => commands::hh(c, g, inputs),
        Command::Examples { name } => commands::examples(name, g),
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.global.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Io(format!("{path}: {e}"))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(e.to_string())),
    }
}

fn fail(f: &Failure) -> ExitCode {
    eprintln!("{}", f.diagnostic());
    ExitCode::from(f.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut inputs = Inputs::default();
    let outcome = match run(&cli, &mut inputs) {
        Ok(o) => o,
        Err(f) => return fail(&f),
    };
    let report = Report {
        command: cli.command.name(),
        inputs: inputs.into_digests(),
        parameters: Parameters {
            max_degree: cli.global.max_degree,
            degree: cli.global.degree,
            ring: cli.global.ring.clone(),
            seed: cli.global.seed,
        },
        results: outcome.results.clone(),
        tool_version: TOOL_VERSION,
    };
    let text = match cli.global.format {
        Format::Json => report.to_json(),
        Format::Markdown => report.to_markdown(&outcome),
    };
    if let Err(f) = emit(&cli, &text) {
        return fail(&f);
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        fail(&Failure::ExampleFailed)
    }
}
