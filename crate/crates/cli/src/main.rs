mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use input::CliError;

/// Restricted Lie algebras over finite fields: varieties of elementary
/// abelian planes, U_0-modules and endotrivial modules.
#[derive(Parser)]
#[command(name = "rlie", version)]
struct Cli {
    /// Seed for every randomized subroutine.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Skip axiom and module-relation checks on input files.
    #[arg(long, global = true)]
    no_verify: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check or describe an algebra file.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Enumerate the nullcone V(g) over F_q.
    Nullcone {
        file: PathBuf,
        #[command(flatten)]
        ext: FieldExt,
        /// Print every point.
        #[arg(long)]
        points: bool,
    },
    /// Enumerate E(2, g) and its incidence graph.
    E2(E2Args),
    /// List Max_p of a unipotent algebra with the pairwise checks.
    Maxp {
        file: PathBuf,
        #[command(flatten)]
        ext: FieldExt,
    },
    /// Module operations.
    #[command(subcommand)]
    Module(ModuleCmd),
    /// Endotriviality analysis.
    Endo(EndoArgs),
    /// Built-in algebras and modules.
    #[command(subcommand)]
    Catalog(CatalogCmd),
}

#[derive(Args, Clone, Copy)]
struct FieldExt {
    /// Work over the degree-k extension of the file's field.
    #[arg(long = "field-ext", default_value_t = 1)]
    k: u32,
}

#[derive(Subcommand)]
enum AlgebraCmd {
    /// Report the restricted Lie algebra axioms; exit 3 on failure.
    Verify { file: PathBuf },
    /// Dimension, center, series and structural predicates.
    Info { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum PredicateArg {
    Pencil,
    Meet,
}

#[derive(Args)]
struct E2Args {
    file: PathBuf,
    #[command(flatten)]
    ext: FieldExt,
    /// Only planes through this vector, written `i:c,j:d` with basis
    /// indices or names.
    #[arg(long)]
    through: Option<String>,
    /// Write the incidence graph in DOT format.
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = PredicateArg::Pencil)]
    predicate: PredicateArg,
    /// Report connected components.
    #[arg(long)]
    components: bool,
}

#[derive(Subcommand)]
enum ModuleCmd {
    /// Check the module relations; exit 3 on failure.
    Verify { file: PathBuf },
    Tensor { a: PathBuf, b: PathBuf, #[command(flatten)] out: Output },
    Dual { file: PathBuf, #[command(flatten)] out: Output },
    /// Restrict to the p-subalgebra spanned by `--sub` vectors (`;`-separated).
    Restrict {
        file: PathBuf,
        #[arg(long)]
        sub: String,
        #[command(flatten)]
        out: Output,
    },
    /// Induce a module over the subalgebra spanned by `--sub` up to the algebra.
    Induce {
        algebra: PathBuf,
        file: PathBuf,
        #[arg(long)]
        sub: String,
        #[command(flatten)]
        out: Output,
    },
    Radical { file: PathBuf, #[command(flatten)] out: Output },
    Socle { file: PathBuf, #[command(flatten)] out: Output },
    /// Dimensions of indecomposable summands.
    Decompose { file: PathBuf },
    /// Split off projective summands; writes the core, or a report with `--report`.
    Strip {
        file: PathBuf,
        #[arg(long)]
        report: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Heller shift Omega^n.
    Heller {
        file: PathBuf,
        #[arg(short = 'n', long, allow_hyphen_values = true)]
        n: i32,
        #[command(flatten)]
        out: Output,
    },
    /// Isomorphism test.
    Isiso { a: PathBuf, b: PathBuf },
}

#[derive(Args, Clone)]
struct Output {
    /// Write the result here instead of stdout.
    #[arg(short = 'o', long = "output")]
    path: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum EndoOp {
    Check,
    Rank,
    Kernel,
    Degree,
    Syzygy,
    Syz3,
    Duality,
    Classify,
}

#[derive(Args)]
struct EndoArgs {
    #[arg(value_enum)]
    op: EndoOp,
    #[arg(long)]
    module: PathBuf,
    #[command(flatten)]
    ext: FieldExt,
    /// A single plane, as two `;`-separated vectors; default is all of E(2).
    #[arg(long)]
    plane: Option<String>,
    /// Heller walk depth for `classify`.
    #[arg(long, default_value_t = 8)]
    depth: usize,
    /// Classify without the supersolvability requirement.
    #[arg(long)]
    force: bool,
}

#[derive(Subcommand)]
enum CatalogCmd {
    List,
    /// Write a catalogue entry as an algebra or module file.
    Emit {
        name: String,
        #[arg(long, default_value_t = 3)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        omega: i64,
        #[arg(long, default_value_t = 1)]
        chain: usize,
        #[arg(long)]
        toral_center: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code())
        }
    }
}

pub(crate) type CliResult<T> = Result<T, CliError>;
