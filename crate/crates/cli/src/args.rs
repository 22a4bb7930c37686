use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "cyflat",
    version,
    about = "Matroids as lattices of cyclic flats"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Matroid JSON file used when a command takes no positional matroid
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Catalog matroid (fig1_M, fig1_N, fig2_M, fig2_N, fig3_M, fig3_N, U2,4, ...)
    #[arg(long, global = true)]
    pub catalog: Option<String>,
    /// Pretty-print the JSON output
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Seed for randomized instances
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (defaults to all cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// `exact:<n>` for exact branch-width up to n elements, or `certify`
    #[arg(long, global = true)]
    pub budget: Option<String>,
    /// Number of random instances in randomized suites
    #[arg(long, global = true, default_value_t = 200)]
    pub trials: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the cyclic-flat axioms
    Validate(Source),
    /// Rank and closure of a set
    Rank {
        #[command(flatten)]
        source: Source,
        /// Comma-separated labels
        #[arg(long, default_value = "")]
        set: String,
    },
    /// Tutte polynomial
    Tutte(Source),
    /// Configuration, or comparison of two configurations
    #[command(args_conflicts_with_subcommands = true)]
    Config {
        #[command(subcommand)]
        action: Option<ConfigAction>,
        #[command(flatten)]
        source: Source,
    },
    /// The t-expansion and its element map
    Expand {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        t: usize,
    },
    /// Undo a t-expansion
    Deflate {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        t: usize,
    },
    /// Union of matroids on a common ground set
    Union {
        /// Catalog names or JSON files
        #[arg(required = true, num_args = 1..)]
        parts: Vec<String>,
    },
    /// Tutte connectivity
    Tau(Source),
    /// Vertical connectivity
    Kappa(Source),
    /// Proper flats covering all but a few elements
    FlatsCover {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 2)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        slack: usize,
    },
    /// Branch-width, exact or certified
    Bw {
        #[command(flatten)]
        source: Source,
        #[arg(long, conflicts_with = "certify")]
        exact: bool,
        #[arg(long, requires_all = ["upper", "lower"])]
        certify: bool,
        /// Branch-decomposition JSON file
        #[arg(long)]
        upper: Option<PathBuf>,
        /// Tangle descriptor `rank-lt:<c>:<k>` or `size-le:<s>:<k>`
        #[arg(long)]
        lower: Option<String>,
    },
    /// Tangle operations
    Tangle {
        #[command(subcommand)]
        action: TangleAction,
    },
    /// Check a linear order for the cyclic-interval property
    PositroidCheck {
        #[command(flatten)]
        source: Source,
        /// Comma-separated labels
        #[arg(long)]
        order: String,
    },
    /// Search for a positroid order
    PositroidSearch(Source),
    /// Compare a matroid with the union of rank-1 matroids on the given sets
    PresentationVerify {
        #[command(flatten)]
        source: Source,
        /// Sets separated by `|`, e.g. `1,2,3|4,5,6`
        #[arg(long)]
        sets: String,
    },
    /// Run a verification suite or a single theorem check
    Verify {
        #[arg(long, conflicts_with = "theorem", required_unless_present = "theorem")]
        suite: Option<String>,
        /// tau-scaling, kappa-scaling, bw-scaling, rank-scaling, positroid-closure
        #[arg(long)]
        theorem: Option<String>,
        /// Catalog name or JSON file for --theorem
        #[arg(long)]
        matroid: Option<String>,
        #[arg(long, default_value_t = 2)]
        t: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum ConfigAction {
    /// Whether two matroids have isomorphic configurations
    Compare { a: String, b: String },
}

#[derive(Debug, Subcommand)]
pub enum TangleAction {
    /// Check the four tangle axioms
    Verify {
        #[command(flatten)]
        source: Source,
        /// `rank-lt:<c>:<k>` or `size-le:<s>:<k>`
        #[arg(long)]
        tangle: String,
    },
}

#[derive(Debug, Args, Clone, Default)]
pub struct Source {
    /// Catalog name or JSON file (defaults to --input / --catalog)
    pub matroid: Option<String>,
}
