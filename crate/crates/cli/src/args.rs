use clap::{Args, Parser, Subcommand, ValueEnum};

use pitgf::Method;

#[derive(Debug, Parser)]
#[command(name = "pitgf", version, about = "Generating functions of plane partitions with a pit")]
pub struct Cli {
    /// Worker threads; defaults to all cores.
    #[arg(long, global = true, env = "PITGF_JOBS")]
    pub jobs: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Include wall-clock timings in reports (makes output run-dependent).
    #[arg(long, global = true)]
    pub timing: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the coefficients of chi by one method.
    Chi(ChiArgs),
    /// Compare methods on every configuration in a box.
    Crosscheck(CrosscheckArgs),
    /// Compare lattice-point enumeration with Brion vertex sums.
    BrionCheck(BrionArgs),
}

#[derive(Debug, Args)]
pub struct ConfigArgs {
    #[arg(long = "n", default_value_t = 0)]
    pub n: usize,
    #[arg(long = "m", default_value_t = 0)]
    pub m: usize,
    /// Row limits, comma separated; empty for the empty partition.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub nu: String,
    /// Column limits.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub mu: String,
    /// Cells holding infinite entries.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub lambda: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Det,
    Bos,
    Explicit,
    Oracle,
    Wall,
    Lgv,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Det => Method::Det,
            MethodArg::Bos => Method::Bos,
            MethodArg::Explicit => Method::Explicit,
            MethodArg::Oracle => Method::Oracle,
            MethodArg::Wall => Method::Wall,
            MethodArg::Lgv => Method::Lgv,
        }
    }
}

#[derive(Debug, Args)]
pub struct ChiArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    #[arg(long, default_value_t = 8)]
    pub order: i64,
    #[arg(long, value_enum, default_value_t = MethodArg::Det)]
    pub method: MethodArg,
}

#[derive(Debug, Args)]
pub struct CrosscheckArgs {
    #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
    pub max_n: i64,
    #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
    pub max_m: i64,
    #[arg(long, default_value_t = 3)]
    pub max_part: u32,
    #[arg(long, default_value_t = 8)]
    pub order: i64,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "det,bos,explicit,oracle")]
    pub methods: Vec<MethodArg>,
    /// Allow batteries beyond the desk-scale limits.
    #[arg(long)]
    pub force: bool,
    /// Print one line per configuration, not only the summary.
    #[arg(long)]
    pub verbose: bool,
}

#[derive(Debug, Args)]
pub struct BrionArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    /// Window width.
    #[arg(long = "H")]
    pub cols: i64,
    /// Window height; defaults to `n + 1` when `m = 0` and to `H` otherwise.
    #[arg(long = "Hp")]
    pub rows: Option<i64>,
    /// Exponents checked beyond the pointwise-minimal point.
    #[arg(long, default_value_t = 8)]
    pub order: i64,
}
