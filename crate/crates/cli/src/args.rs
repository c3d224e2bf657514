//! Command-line surface. Every flag is a long flag; any of them may also be
//! given as a `key=value` line in a `--config` file.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "qcalab", version, about = "Quantum cellular automata: simulation and verification studies")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evolve the Dirac walk and emit amplitudes per step.
    Walk(WalkArgs),
    /// Plane-wave continuum-limit study over a list of ε.
    Converge(ConvergeArgs),
    /// Even/odd splitting error of a nearest-neighbour Hamiltonian.
    Trotter(TrotterArgs),
    /// Build the doubled-alphabet localization of a causal unitary.
    Localize(LocalizeArgs),
    /// Check a unitary against a claimed neighbourhood.
    Causality(CausalityArgs),
    /// One-step signalling through the quantized XOR automaton.
    Signal(SignalArgs),
    /// Unitarity and quiescence of a scattering unitary.
    Quiescence(QuiescenceArgs),
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Walk(a) => &a.common,
            Command::Converge(a) => &a.common,
            Command::Trotter(a) => &a.common,
            Command::Localize(a) => &a.common,
            Command::Causality(a) => &a.common,
            Command::Signal(a) => &a.common,
            Command::Quiescence(a) => &a.common,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Command::Walk(_) => "walk",
            Command::Converge(_) => "converge",
            Command::Trotter(_) => "trotter",
            Command::Localize(_) => "localize",
            Command::Causality(_) => "causality",
            Command::Signal(_) => "signal",
            Command::Quiescence(_) => "quiescence",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Precision {
    F32,
    F64,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// File of `key=value` lines; flags on the command line take precedence.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Seed for every random choice.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the table or report here instead of stdout.
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Precision::F64)]
    pub precision: Precision,
    /// Run the module's invariant suite instead of a study.
    #[arg(long)]
    pub selftest: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    /// Direct two-component recurrence.
    Walk,
    /// Sparse PQCA stepping of the one-particle sector.
    Pqca,
}

#[derive(Debug, Clone, Args)]
pub struct WalkArgs {
    #[arg(long, default_value_t = 0.5)]
    pub mass: f64,
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 10)]
    pub steps: usize,
    #[arg(long, default_value_t = 64)]
    pub grid: usize,
    /// `delta:SITE`, `gaussian:CENTER:SIGMA[:K0]` or `plane:MODE`.
    #[arg(long, default_value = "delta:0", allow_hyphen_values = true)]
    pub init: String,
    #[arg(long, value_enum, default_value_t = Engine::Walk)]
    pub engine: Engine,
    /// Write the final one-particle state in the sparse dump format.
    #[arg(long, value_name = "FILE")]
    pub dump_state: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct ConvergeArgs {
    #[arg(long, default_value_t = 0.5)]
    pub mass: f64,
    /// Plane-wave mode number j, k = 2πj/(Mε).
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub mode: i64,
    #[arg(long, default_value_t = 1.0)]
    pub time: f64,
    /// Strictly decreasing ε values.
    #[arg(long, value_delimiter = ',', default_value = "0.1,0.05,0.025,0.0125")]
    pub eps: Vec<f64>,
    #[arg(long, default_value_t = 256)]
    pub grid: usize,
    /// `LO,HI`: exit 1 unless the fitted order lies in the interval.
    #[arg(long, value_delimiter = ',')]
    pub expect_order: Option<Vec<f64>>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HamiltonianKind {
    /// Seeded complex Gaussian h with the |00⟩ row and column zeroed.
    Random,
    /// Seeded real diagonal h; the splitting is exact.
    Diagonal,
    /// Fixed qubit hopping with an on-pair interaction.
    Exchange,
}

#[derive(Debug, Clone, Args)]
pub struct TrotterArgs {
    #[arg(long, default_value_t = 4)]
    pub cells: usize,
    #[arg(long, default_value_t = 2)]
    pub local_dim: usize,
    #[arg(long, value_enum, default_value_t = HamiltonianKind::Random)]
    pub hamiltonian: HamiltonianKind,
    /// Time steps, largest first.
    #[arg(long, value_delimiter = ',', default_value = "0.1,0.05,0.025")]
    pub dt: Vec<f64>,
    /// `LO,HI`: exit 1 unless every order estimate lies in the interval.
    #[arg(long, value_delimiter = ',')]
    pub expect_order: Option<Vec<f64>>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Corpus {
    Identity,
    /// The same seeded single-cell unitary fixing |0⟩ on every cell.
    Product,
    /// One even phase of the Dirac PQCA.
    DiracEven,
}

#[derive(Debug, Clone, Args)]
pub struct LocalizeArgs {
    #[arg(long, value_enum, default_value_t = Corpus::DiracEven)]
    pub corpus: Corpus,
    #[arg(long, default_value_t = 4)]
    pub cells: usize,
    #[arg(long, default_value_t = 2)]
    pub local_dim: usize,
    #[arg(long, default_value_t = 0.6)]
    pub mass: f64,
    #[arg(long, default_value_t = 0.4)]
    pub epsilon: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Identity,
    /// One even phase of the Dirac PQCA.
    DiracEven,
    /// Even then odd phase of the Dirac PQCA.
    DiracStep,
    /// The quantized XOR automaton on an open window.
    Xor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Expectation {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Args)]
pub struct CausalityArgs {
    #[arg(long, value_enum, default_value_t = Target::DiracStep)]
    pub target: Target,
    #[arg(long, default_value_t = 8)]
    pub cells: usize,
    /// Comma-separated offsets, or `blocks` for the even block partition.
    #[arg(long, default_value = "-1,0,1", allow_hyphen_values = true)]
    pub neighbourhood: String,
    /// Group this many adjacent cells into one before checking.
    #[arg(long, default_value_t = 2)]
    pub supercell: usize,
    #[arg(long, default_value_t = 0.6)]
    pub mass: f64,
    #[arg(long, default_value_t = 0.4)]
    pub epsilon: f64,
    #[arg(long, value_enum, default_value_t = Expectation::Pass)]
    pub expect: Expectation,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct SignalArgs {
    /// Word length L ≥ 3; Alice holds cell 0 and Bob cell L − 1.
    #[arg(long, default_value_t = 6)]
    pub length: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct QuiescenceArgs {
    /// Scattering unitary text file (header `d n`, then rows of `re im` pairs).
    /// Without it the Dirac unitary for `--mass`, `--epsilon` is checked.
    #[arg(long, value_name = "FILE")]
    pub unitary_file: Option<PathBuf>,
    #[arg(long, default_value_t = 0.5)]
    pub mass: f64,
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    #[command(flatten)]
    pub common: Common,
}
