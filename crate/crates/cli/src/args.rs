use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::Format;

/// Tensor-triangular invariants of finite EI categories.
#[derive(Parser, Debug)]
#[command(name = "ttgeo", version)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Inspect a category file.
    #[command(subcommand)]
    Category(CategoryCmd),
    /// Build transporter categories from G-posets.
    #[command(subcommand)]
    Transporter(TransporterCmd),
    /// Operations on module files.
    #[command(subcommand)]
    Module(ModuleCmd),
    /// Operations on complex files.
    #[command(subcommand)]
    Complex(ComplexCmd),
    /// Balmer spectrum of a poset or EI category, or the CM spectrum.
    Spectrum(SpectrumArgs),
    /// Tensor ideals of a poset.
    #[command(subcommand)]
    Ideals(IdealsCmd),
    /// Gorenstein verification for a transporter category algebra.
    Gorenstein(GorensteinArgs),
    /// CM spectrum of a transporter category algebra.
    CmSpectrum(CmSpectrumArgs),
    /// Cohomology ring of a poset.
    Cohomology(CohomologyArgs),
    /// Re-run a worked example and diff against its committed output.
    Reproduce(ReproduceArgs),
    /// Write deterministic fixture files.
    #[command(subcommand)]
    Generate(GenerateCmd),
}

#[derive(Args, Debug, Clone)]
pub struct FieldArg {
    /// A prime, or `Q` (also `0`) for the rationals.
    #[arg(long, default_value = "2")]
    pub field: String,
}

#[derive(Subcommand, Debug)]
pub enum CategoryCmd {
    /// Validate a category and report EI data, classes and their order.
    Check { input: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum TransporterCmd {
    /// Build `G ∝ P` from a poset and an action file.
    Build {
        #[arg(long)]
        poset: Option<PathBuf>,
        #[arg(long)]
        action: PathBuf,
        /// Write the transporter category to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ModuleCmd {
    /// Validate a module and list simples over its category.
    Check {
        input: PathBuf,
        #[arg(long)]
        category: Option<PathBuf>,
    },
    /// Pointwise tensor product.
    Tensor {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        category: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// `Hom(M, N)` and the internal hom.
    Hom {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        category: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The filtration by iso-classes along a linear extension.
    Filtrate {
        input: PathBuf,
        #[arg(long)]
        category: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ComplexCmd {
    /// Cohomology dimensions per degree and object.
    Cohomology {
        input: PathBuf,
        #[arg(long)]
        category: Option<PathBuf>,
    },
    /// Tensor product, with the Künneth check.
    Tensor {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        category: Option<PathBuf>,
        /// Directory receiving the complex and its term files.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Support and coarse support.
    Support {
        input: PathBuf,
        #[arg(long)]
        category: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    /// A category file.
    #[arg(long, conflicts_with = "transporter", required_unless_present = "transporter")]
    pub input: Option<PathBuf>,
    /// An action file; the spectrum is taken over its transporter category.
    #[arg(long)]
    pub transporter: Option<PathBuf>,
    /// Report the CM spectrum instead. A plain poset is read with the trivial group.
    #[arg(long)]
    pub cm: bool,
    /// Characteristic of the field; `0` for the rationals.
    #[arg(long = "char", default_value_t = 2)]
    pub characteristic: u64,
}

#[derive(Subcommand, Debug)]
pub enum IdealsCmd {
    /// All subsets, their ideals, supports and vanishing loci.
    Classify {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        field: FieldArg,
    },
    /// Sampled closure checks of every ideal.
    Census {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        field: FieldArg,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        /// Chain maps sampled per ideal for cone closure.
        #[arg(long, default_value_t = 200)]
        cones: usize,
        #[arg(long, default_value_t = 24)]
        pool: usize,
        #[arg(long, default_value_t = 3)]
        max_objects: usize,
    },
}

#[derive(Args, Debug)]
pub struct GorensteinArgs {
    /// An action file.
    #[arg(long)]
    pub transporter: PathBuf,
    #[arg(long)]
    pub poset: Option<PathBuf>,
    /// Upper bound for the injective dimensions; at least the object count.
    #[arg(long)]
    pub bound: Option<usize>,
    #[command(flatten)]
    pub field: FieldArg,
}

#[derive(Args, Debug)]
pub struct CmSpectrumArgs {
    /// An action file.
    #[arg(long)]
    pub transporter: PathBuf,
    #[arg(long)]
    pub poset: Option<PathBuf>,
    #[arg(long = "char", default_value_t = 2)]
    pub characteristic: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Simplicial,
    Ext,
    Both,
}

#[derive(Args, Debug)]
pub struct CohomologyArgs {
    #[arg(long)]
    pub poset: PathBuf,
    #[arg(long, default_value_t = ttgeo_core::cohom::DEFAULT_CUTOFF)]
    pub cutoff: usize,
    #[arg(long, value_enum, default_value_t = Engine::Both)]
    pub engine: Engine,
    #[command(flatten)]
    pub field: FieldArg,
    /// Sections over the complement of the primes at these objects.
    #[arg(long, value_delimiter = ',')]
    pub remove: Vec<String>,
}

#[derive(Args, Debug)]
pub struct ReproduceArgs {
    /// Example id; `list` shows the available ids.
    pub id: String,
}

#[derive(Subcommand, Debug)]
pub enum GenerateCmd {
    /// `x0 < x1 < … < x{n-1}`.
    Chain {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// The four-element crown `w, x < y, z`.
    Crown {
        #[arg(long)]
        out: PathBuf,
    },
    /// A random poset.
    RandomPoset {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// `Z/m` rotating `m` copies of a random poset, plus `fixed` points it fixes.
    GroupAction {
        #[arg(long, default_value_t = 2)]
        order: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        fixed: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory receiving `poset.cat` and `action.act`.
        #[arg(long)]
        out: PathBuf,
    },
    /// A random complex over a category file.
    RandomComplex {
        #[arg(long)]
        category: PathBuf,
        #[arg(long, default_value_t = 0)]
        low: i32,
        #[arg(long, default_value_t = 3)]
        len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        field: FieldArg,
        /// Directory receiving `complex.cpx` and its term files.
        #[arg(long)]
        out: PathBuf,
    },
}
