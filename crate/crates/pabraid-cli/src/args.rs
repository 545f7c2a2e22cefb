use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pabraid::dynnikov::{DEFAULT_MAX_ITER, DEFAULT_TOL};
use pabraid::FamilyName;
use serde::Serialize;

use crate::range::ParamRange;

/// Pseudo-Anosov braid constructions and entropy estimates.
#[derive(Debug, Clone, Parser, Serialize)]
#[command(name = "pabraid", version, about)]
pub struct Cli {
    /// Estimator tolerance on log λ.
    #[arg(long, global = true, env = "PABRAID_TOL", default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// Estimator iteration cap.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ITER)]
    pub max_iter: usize,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Also write the result table as CSV to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub csv: Option<PathBuf>,
    /// Write a run manifest (arguments, settings, output digests) here.
    #[arg(long, global = true, value_name = "PATH")]
    pub manifest: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Inspect and build braid words.
    #[command(subcommand)]
    Braid(BraidCommand),
    /// Generate a named family, optionally with entropies.
    Family(FamilyArgs),
    /// Classes in the fibered cone of a seed.
    #[command(subcommand)]
    Cone(ConeCommand),
    /// Prong counts along the twisted-pair pipeline.
    Prongs(ProngsArgs),
    /// Exact dilatation of a 3-braid pA word.
    Tribraid(TribraidArgs),
    /// Entropy estimate of a braid word.
    Entropy(EntropyArgs),
    /// Spin membership of hyperelliptic lifts.
    #[command(subcommand)]
    Spin(SpinCommand),
    /// End-to-end convergence experiments.
    #[command(subcommand)]
    Reproduce(ReproduceCommand),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct WordArgs {
    /// Letters such as "1 1 -2", optionally headed by B<n> or SB<n>.
    #[arg(long, allow_hyphen_values = true)]
    pub word: String,
    /// Strand count (inferred from the letters when omitted).
    #[arg(long)]
    pub degree: Option<usize>,
    /// Read the word in the spherical braid group.
    #[arg(long)]
    pub spherical: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SeedArgs {
    /// Degree of the seed standard form.
    #[arg(long, default_value_t = 3)]
    pub degree: usize,
    /// Seed blocks separated by "|", with "e" for an empty block.
    #[arg(long, allow_hyphen_values = true)]
    pub blocks: String,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BraidCommand {
    /// Permutation, fixed points, symmetries and linking profiles.
    Info(WordArgs),
    /// Decide whether two words are the same braid.
    Equal {
        #[command(flatten)]
        left: WordArgs,
        /// The other word.
        #[arg(long, allow_hyphen_values = true)]
        other: String,
    },
    /// A standard form, optionally after a twist program.
    Standard {
        #[command(flatten)]
        seed: SeedArgs,
        /// Twist program such as "0,2,1".
        #[arg(long)]
        program: Option<String>,
    },
    /// The braid whose fiber is the companion disk of a standard form.
    Gamma {
        #[command(flatten)]
        seed: SeedArgs,
        /// Also estimate its entropy.
        #[arg(long)]
        with_entropy: bool,
    },
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FamilyArgs {
    /// One of xi, eta, o, v, z, beta, b_p.
    #[arg(value_parser = parse_family)]
    pub name: FamilyName,
    /// Parameters: "3", "1..8" or "1,2,5".
    #[arg(long, default_value = "1..8")]
    pub p: ParamRange,
    /// Seed degree for z, beta and b_p.
    #[arg(long, default_value_t = 3)]
    pub seed_degree: usize,
    /// Seed blocks for z, beta and b_p (z defaults to "-1").
    #[arg(long, allow_hyphen_values = true)]
    pub seed_blocks: Option<String>,
    /// Pre-twist for z.
    #[arg(long, default_value_t = 0)]
    pub k: u64,
    /// Estimate log λ and the normalized entropy of each member.
    #[arg(long)]
    pub with_entropy: bool,
}

fn parse_family(s: &str) -> Result<FamilyName, String> {
    s.parse().map_err(|e: pabraid::FamilyError| e.to_string())
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConeCommand {
    /// Thurston norm (n − 1)x + uy.
    Norm {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        u: usize,
        #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
        epsilon: i32,
        #[arg(long)]
        x: i64,
        #[arg(long)]
        y: i64,
    },
    /// Odd continued fraction of y/x, the twist program of class (x, y).
    Fraction {
        #[arg(long)]
        x: i64,
        #[arg(long)]
        y: i64,
    },
    /// The class built by a twist program.
    Class {
        /// Program such as "2,1,4".
        #[arg(long)]
        program: String,
    },
    /// Normalized entropy of every primitive class with coordinates up to a bound.
    Table {
        #[command(flatten)]
        seed: SeedArgs,
        /// Largest coordinate.
        #[arg(long, default_value_t = 6)]
        max: i64,
    },
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ProngsArgs {
    /// Classes (p, 1) to evaluate.
    #[arg(long, default_value = "1..10")]
    pub p: ParamRange,
    /// Axis orbit class "p,q" (default: the twisted-pair preset).
    #[arg(long, allow_hyphen_values = true)]
    pub axis: Option<String>,
    /// Strand orbit class "p,q" (default: the twisted-pair preset).
    #[arg(long, allow_hyphen_values = true)]
    pub strand: Option<String>,
    /// Full twists composed onto the orbit data (0 for none).
    #[arg(long, default_value_t = 1)]
    pub twists: i64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
    pub epsilon: i32,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TribraidArgs {
    /// Word in σ₁⁻¹ and σ₂, such as "-1 2 2".
    #[arg(long, allow_hyphen_values = true)]
    pub word: String,
    /// Cross-check against the estimator.
    #[arg(long)]
    pub with_entropy: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct EntropyArgs {
    #[command(flatten)]
    pub word: WordArgs,
    /// Seed curve around punctures "first,last" (default 1,2).
    #[arg(long)]
    pub seed_pill: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormKind {
    /// q₁, Arf invariant 1.
    Odd,
    /// q₀, Arf invariant 0.
    Even,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpinFamily {
    O,
    V,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpinCommand {
    /// Whether lifted words preserve a quadratic form.
    Check {
        /// Check the spherical companions of a spin family.
        #[arg(long, conflicts_with = "word")]
        family: Option<SpinFamily>,
        #[arg(long, default_value = "1..4")]
        p: ParamRange,
        /// Check a single braid word instead.
        #[arg(long, allow_hyphen_values = true)]
        word: Option<String>,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long)]
        spherical: bool,
        /// Form to test (defaults: odd for o, even for v).
        #[arg(long)]
        form: Option<FormKind>,
        /// Lift into this genus instead of the one fixed by the degree.
        #[arg(long)]
        genus: Option<usize>,
    },
    /// Membership of the generating sets of both spin groups.
    Generators {
        #[arg(long, default_value = "3..6")]
        genus: ParamRange,
    },
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReproduceCommand {
    /// Ent(z_p) approaching 2 log(2 + √3).
    #[command(name = "z-limit", alias = "thm1.1")]
    ZLimit(ReproduceArgs),
    /// Ent(β_p) approaching the entropy of the class (1, 1).
    #[command(name = "beta-limit", alias = "thm5.2")]
    BetaLimit(ReproduceArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ReproduceArgs {
    #[arg(long, default_value = "1..8")]
    pub p: ParamRange,
    /// Directory for the CSV table and its manifest.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
