use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "punctual", version, about = "Euler characteristics and motives of punctual nested Hilbert and Quot schemes")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,

    /// Worker threads; results do not depend on this.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Extra coefficients checked beyond the numerator degree bound.
    #[arg(long, global = true, env = "PUNCTUAL_GUARD", default_value_t = punctual::series::DEFAULT_GUARD)]
    pub guard: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Rational form of FZ_D / Z or FZ_k / Z.
    Fz(FzArgs),
    /// Rational form of FQ_{r,D} / Z^r.
    Fq(FqArgs),
    /// Count (coloured) nested partitions directly.
    Oracle(OracleArgs),
    /// Motives of punctual nested Hilbert schemes.
    Motive(MotiveArgs),
    /// Raise a punctual table to the Euler characteristic of a surface.
    Globalize(GlobalizeArgs),
    /// Run the identity suite.
    Verify(VerifyArgs),
    /// Write every reference table under a directory.
    Tables(TablesArgs),
}

#[derive(Args, Debug)]
pub struct FzArgs {
    /// Size gap D of a two-step nesting.
    #[arg(long = "D", conflicts_with = "k", required_unless_present = "k")]
    pub d: Option<usize>,

    /// Gap vector, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub k: Option<Vec<usize>>,

    /// Flag-series strategy.
    #[arg(long, default_value = punctual::flag::DEFAULT_STRATEGY)]
    pub method: String,

    /// Also print this many series coefficients.
    #[arg(long)]
    pub series: Option<usize>,
}

#[derive(Args, Debug)]
pub struct FqArgs {
    #[arg(long, short = 'r')]
    pub rank: usize,

    #[arg(long = "D")]
    pub d: usize,

    #[arg(long, default_value = punctual::flag::DEFAULT_STRATEGY)]
    pub method: String,

    #[arg(long)]
    pub series: Option<usize>,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    /// Weakly increasing sizes, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub nesting: Vec<usize>,

    #[arg(long, short = 'r', default_value_t = 1)]
    pub rank: usize,
}

#[derive(Args, Debug)]
pub struct MotiveArgs {
    /// A nesting 2,n or 3,n.
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["strata", "series"])]
    pub nesting: Option<Vec<usize>>,

    /// Stratification of the punctual Hilbert scheme of n points.
    #[arg(long, conflicts_with = "series")]
    pub strata: Option<usize>,

    /// Generating series of [i,n] (i = 2 or 3) up to t^N.
    #[arg(long)]
    pub series: Option<usize>,

    /// Which nesting the series is for.
    #[arg(long, default_value_t = 2)]
    pub step: usize,
}

#[derive(Args, Debug)]
pub struct GlobalizeArgs {
    #[arg(long, short = 'r', default_value_t = 1)]
    pub rank: usize,

    #[arg(long)]
    pub n1: Option<usize>,

    #[arg(long)]
    pub n2: Option<usize>,

    /// Euler characteristic of the surface.
    #[arg(long, required_unless_present = "resolve_dp6")]
    pub chi: Option<i64>,

    /// Find the exponent that reproduces the dP6 coefficient instead.
    #[arg(long, conflicts_with_all = ["chi", "n1", "n2"])]
    pub resolve_dp6: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Run only these identities (repeatable).
    #[arg(long)]
    pub only: Vec<String>,

    #[arg(long, default_value_t = 12)]
    pub q: usize,

    #[arg(long, default_value_t = 4)]
    pub s: usize,

    #[arg(long, default_value_t = 4)]
    pub v: usize,

    /// List the registered identities and exit.
    #[arg(long)]
    pub list: bool,
}

#[derive(Args, Debug)]
pub struct TablesArgs {
    #[arg(long)]
    pub out: std::path::PathBuf,

    /// Largest D for the P_D table.
    #[arg(long, default_value_t = 10)]
    pub max_d: usize,
}
