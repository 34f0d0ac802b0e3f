use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub const DEFAULT_CONFLUENCE_DEG: usize = 6;
pub const DEFAULT_HOPF_DEG: usize = 3;
pub const DEFAULT_BIGCELL_DEG: usize = 4;
pub const DEFAULT_CUTOFF: usize = 4;

#[derive(Debug, Parser)]
#[command(name = "hopf-cell", version, about = "Exact computations with finitely presented Hopf algebras")]
pub struct Cli {
    /// Spaces of JSON indentation; 0 prints one line.
    #[arg(long, global = true, default_value_t = 2)]
    pub json_indent: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check confluence and the Hopf axioms of a preset or presentation file.
    CheckHopf(CheckHopfArgs),
    /// Check that a big-cell datum is verified up to a degree.
    CheckBigcell(DatumArgs),
    /// Compute the induced comodule Ind(λ) up to a word-length cutoff.
    Induce(WeightArgs),
    /// Decide whether a weight is dominant.
    Dominant(WeightArgs),
    /// Build the simple comodule L(λ) of a dominant weight.
    Simple(WeightArgs),
    /// Dominance and simple dimensions for all weights up to a length.
    Classify(ClassifyArgs),
    /// Evaluate an expression in a Grothendieck ring.
    Fuse(FuseArgs),
    /// Translate a dominant word in alpha, beta to a weight of F(t, z).
    Translate(TranslateArgs),
    /// Products and checks for cocycle deformations.
    Deform(DeformArgs),
}

#[derive(Debug, Args)]
pub struct CheckHopfArgs {
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    pub preset: Option<String>,
    /// JSON presentation file.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Word length for the Hopf axiom checks.
    #[arg(long)]
    pub max_deg: Option<usize>,
    /// Word length for the local confluence check.
    #[arg(long)]
    pub confluence_deg: Option<usize>,
}

#[derive(Debug, Args)]
pub struct DatumArgs {
    /// Big-cell datum: slq2, slq2*kz, hq, slq2(x)slq2, kf2.
    #[arg(long)]
    pub preset: String,
    #[arg(long, default_value_t = DEFAULT_BIGCELL_DEG)]
    pub max_deg: usize,
}

#[derive(Debug, Args)]
pub struct WeightArgs {
    #[arg(long)]
    pub preset: String,
    /// Weight word, e.g. "t^-1" or "alpha*beta".
    #[arg(long, allow_hyphen_values = true)]
    pub weight: String,
    #[arg(long, default_value_t = DEFAULT_CUTOFF)]
    pub cutoff: usize,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub preset: String,
    /// Longest weight word (in syllable powers) to classify.
    #[arg(long, default_value_t = 2)]
    pub max_deg: u64,
    #[arg(long, default_value_t = DEFAULT_CUTOFF)]
    pub cutoff: usize,
}

#[derive(Debug, Args)]
pub struct FuseArgs {
    /// sl2, sl2-root, sl2*z, tz, free or khq. sl2-root takes its order as the
    /// first positional argument or as sl2-root=N.
    #[arg(long, default_value = "sl2")]
    pub ring: String,
    /// [ORDER] EXPRESSION, e.g. `3 "L(2)*L(1)"` or `"dim(L(3)*L(1))"`.
    #[arg(required = true, num_args = 1..=2)]
    pub args: Vec<String>,
}

#[derive(Debug, Args)]
pub struct TranslateArgs {
    /// Word in alpha and beta, e.g. "beta*alpha".
    pub word: String,
}

#[derive(Debug, Args)]
pub struct DeformArgs {
    /// Host: a big-cell datum name, or kz / kz2.
    #[arg(long, default_value = "slq2(x)slq2")]
    pub host: String,
    /// Exponent matrix, rows separated by ';', e.g. "0 1; 0 0".
    #[arg(long)]
    pub matrix: String,
    /// Base scalar of the bicharacter.
    #[arg(long, default_value = "q")]
    pub p: String,
    #[command(subcommand)]
    pub action: DeformAction,
}

#[derive(Debug, Subcommand)]
pub enum DeformAction {
    /// Deformed product [x][y].
    Mul { x: String, y: String },
    /// Associativity of the deformed product on words up to a length.
    AssocCheck {
        #[arg(long, default_value_t = 2)]
        max_deg: usize,
        /// Check this many random triples instead of all of them.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Big-cell check for the deformed host.
    BigcellCheck {
        #[arg(long, default_value_t = 3)]
        max_deg: usize,
    },
}
