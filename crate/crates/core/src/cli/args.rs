use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::autgroup::DEFAULT_CAP;

#[derive(Parser, Debug)]
#[command(name = "ballmap", version, about = "Exact invariance groups of proper maps between balls")]
pub struct Cli {
    /// Scalar backend.
    #[arg(long, value_enum, default_value_t = BackendKind::Exact, global = true)]
    pub backend: BackendKind,
    /// Omit the timestamp field from the report.
    #[arg(long, global = true)]
    pub no_timestamp: bool,
    /// Element cap for group closure.
    #[arg(long, default_value_t = DEFAULT_CAP, global = true)]
    pub cap: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum BackendKind {
    Exact,
    Float,
}

#[derive(Args, Debug, Clone)]
pub struct MapArg {
    /// Map file (JSON).
    #[arg(long)]
    pub map: PathBuf,
}

#[derive(Args, Debug, Clone)]
pub struct GroupArg {
    /// Group file (JSON generators).
    #[arg(long)]
    pub group: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Certify that a map sends the sphere into the sphere.
    Proper(MapArg),
    /// Compare ‖f‖² and ‖g‖².
    NormEqual {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        other: PathBuf,
    },
    /// Rank of the coefficient span.
    Span(MapArg),
    /// Diagonal part of the Hermitian invariant group.
    Torus(MapArg),
    /// Diagonal part of the fixing group.
    FixGroup(MapArg),
    /// Left fixing group H_f ≅ U(k).
    Hf(MapArg),
    /// Decide γ ∈ Γ_f and compute Φ(γ).
    Member {
        #[arg(long)]
        map: PathBuf,
        /// Automorphism file (JSON).
        #[arg(long)]
        gamma: PathBuf,
    },
    /// Elements of a finite group fixing the map.
    PhiKernel {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        group: PathBuf,
    },
    /// Degree bound along a one-parameter diagonal subgroup.
    Graded {
        #[arg(long)]
        map: PathBuf,
        /// Comma-separated integer eigenvalues, e.g. `1,-1`.
        #[arg(long, allow_hyphen_values = true)]
        m: String,
    },
    /// Nonnegative monomial weights for a proper map.
    SolveMonomial(SolveArgs),
    /// Build a map and print or write it.
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
        /// Also write the map to this file.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Classify a cyclic group against the kernel list.
    ClassifyKernel(GroupArg),
    /// Close a set of unitary generators under multiplication.
    Closure(GroupArg),
    /// Test whether a finite group acts fixed-point freely.
    Fpf(GroupArg),
}

#[derive(Args, Debug, Clone)]
pub struct SolveArgs {
    #[arg(long)]
    pub n: usize,
    /// Semicolon-separated exponents, e.g. `2,0;1,1;0,2`.
    #[arg(long, conflicts_with = "max_degree")]
    pub exponents: Option<String>,
    /// Use all exponents with `1 ≤ |α| ≤ D`.
    #[arg(long)]
    pub max_degree: Option<u32>,
    /// Cyclic constraint weights `a`, e.g. `1,1`.
    #[arg(long, allow_hyphen_values = true, requires = "order")]
    pub weights: Option<String>,
    /// Cyclic constraint order `m`.
    #[arg(long, requires = "weights")]
    pub order: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum ConstructKind {
    /// `z ↦ z^{⊗m}` on `ℂⁿ`.
    Tensor {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u32,
    },
    /// `(z₁, z₁z₂, z₂²)`.
    Whitney,
    /// Prepend `k` zero components.
    Pad {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// `√t·f ⊕ √(1−t)·g`.
    DirectSum {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        other: PathBuf,
        /// Rational weight in `(0, 1)`, e.g. `1/2`.
        #[arg(long)]
        t: String,
    },
    /// Replace the listed components `g_i` by `(g_i z₁, …, g_i z_n)`.
    PartialTensor {
        #[arg(long)]
        map: PathBuf,
        /// Comma-separated 1-based component indices.
        #[arg(long)]
        split: String,
    },
    /// The map found by `solve-monomial`.
    MonomialFromSolver(SolveArgs),
}
