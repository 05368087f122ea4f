use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ppcat::textio::report::error_report;
use ppcat::Error;

mod commands;

#[derive(Parser, Debug)]
#[command(name = "ppcat", version, about = "Exact computations with pp formulas and quiver representations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Input `.ppc` file.
    #[arg(long)]
    pub file: PathBuf,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Seed for randomized searches.
    #[arg(long, env = "PPCAT_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for commands that run over several modules.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeArg {
    Exact,
    Testset,
}

#[derive(Args, Debug, Clone)]
pub struct ModeOpts {
    /// Exact free-realization reasoning, or containment on a test set.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Fixture used as the test set; implies `--mode testset`.
    #[arg(long)]
    pub testset: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate a pp formula on modules.
    Eval {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        formula: String,
        /// A module or a fixture.
        #[arg(long, alias = "module")]
        modules: String,
    },
    /// Dimension of a pp-pair quotient on modules.
    PairEval {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        pair: String,
        #[arg(long, alias = "module")]
        modules: String,
    },
    /// Decide whether one formula implies another.
    Implies {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        mode: ModeOpts,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Print the elementary dual of a formula.
    Dual {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        formula: String,
    },
    /// Free realization of a formula.
    Freereal {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        formula: String,
    },
    /// Check that a formula defines a map between two pairs.
    CheckMap {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        mode: ModeOpts,
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
        #[arg(long)]
        rho: String,
    },
    /// Membership of modules in the subcategory cut out by pairs.
    Member {
        #[command(flatten)]
        common: Common,
        /// Comma-separated pair names.
        #[arg(long, value_delimiter = ',')]
        pairs: Vec<String>,
        #[arg(long, alias = "module")]
        modules: String,
    },
    /// Re-run the validation of an interpretation functor.
    InterpValidate {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        mode: ModeOpts,
        #[arg(long)]
        interp: String,
    },
    /// Apply an interpretation functor to modules.
    InterpApply {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        interp: String,
        #[arg(long, alias = "module")]
        modules: String,
    },
    /// Check that a second functor undoes a first one on modules.
    Roundtrip {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        forward: String,
        #[arg(long)]
        back: String,
        #[arg(long, alias = "module")]
        modules: String,
    },
    /// Whether a functor preserves indecomposability and reflects isomorphism.
    Repembed {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        interp: String,
        #[arg(long, alias = "module")]
        modules: String,
    },
    /// Tensor product of a right module with a left module.
    Tensor {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        right: String,
        #[arg(long)]
        left: String,
    },
    /// Purity of a monomorphism, decided two ways.
    Purity {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
        /// Coordinates of the map in the basis of the hom space.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        coeffs: Option<Vec<String>>,
        /// Fixture of right modules to tensor with.
        #[arg(long)]
        right: String,
        /// The right modules do not cover every indecomposable.
        #[arg(long)]
        incomplete: bool,
    },
    /// Shape of an Auslander algebra, optionally matched against a presentation.
    FuncatAuslander {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        auslander: String,
        /// Algebra expected to be isomorphic.
        #[arg(long)]
        presented: Option<String>,
    },
    /// Evaluate a functor given as a module over the Auslander algebra.
    FuncatEval {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        smodule: String,
        #[arg(long, alias = "module")]
        modules: String,
        /// Pair expected to define the same functor.
        #[arg(long)]
        pair: Option<String>,
    },
    /// Skeleton of the quotient by the functors vanishing on a module.
    FuncatQuotient {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        auslander: String,
        #[arg(long)]
        generator: String,
        /// Comma-separated functors; all declared ones by default.
        #[arg(long, value_delimiter = ',')]
        functors: Option<Vec<String>>,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Eval { common, .. }
            | Command::PairEval { common, .. }
            | Command::Implies { common, .. }
            | Command::Dual { common, .. }
            | Command::Freereal { common, .. }
            | Command::CheckMap { common, .. }
            | Command::Member { common, .. }
            | Command::InterpValidate { common, .. }
            | Command::InterpApply { common, .. }
            | Command::Roundtrip { common, .. }
            | Command::Repembed { common, .. }
            | Command::Tensor { common, .. }
            | Command::Purity { common, .. }
            | Command::FuncatAuslander { common, .. }
            | Command::FuncatEval { common, .. }
            | Command::FuncatQuotient { common, .. } => common,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::Eval { .. } => "eval",
            Command::PairEval { .. } => "pair-eval",
            Command::Implies { .. } => "implies",
            Command::Dual { .. } => "dual",
            Command::Freereal { .. } => "freereal",
            Command::CheckMap { .. } => "check-map",
            Command::Member { .. } => "member",
            Command::InterpValidate { .. } => "interp-validate",
            Command::InterpApply { .. } => "interp-apply",
            Command::Roundtrip { .. } => "roundtrip",
            Command::Repembed { .. } => "repembed",
            Command::Tensor { .. } => "tensor",
            Command::Purity { .. } => "purity",
            Command::FuncatAuslander { .. } => "funcat-auslander",
            Command::FuncatEval { .. } => "funcat-eval",
            Command::FuncatQuotient { .. } => "funcat-quotient",
        }
    }
}

fn emit(common: &Common, text: &str) -> Result<(), String> {
    match &common.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    if e.is_precondition() {
        3
    } else {
        2
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = cli.command.common().clone();
    let op = cli.command.name();
    let (text, code) = match commands::run(&cli.command) {
        Ok(report) => (report.render(), 0),
        Err(e) => {
            eprintln!("ppcat {op}: {e}");
            (error_report(op, common.seed, &e), exit_code(&e))
        }
    };
    if let Err(msg) = emit(&common, &text) {
        eprintln!("ppcat {op}: {msg}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
