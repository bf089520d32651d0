//! Command-line grammar. Quivers come from built-in names or description
//! files; all rationals are written `p` or `p/q`.

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "quivercount",
    version,
    about = "Exact combinatorics of quiver varieties: representation counts, multiplicities, walls, slices, flatness, and partition wall-crossing",
    after_help = "Quiver names: vertex (= a1), a2, a3, d4, jordan, cyclic:N. \
                  A file path is also accepted; see docs/quiver-format.md."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Built-in quiver name or path to a description file
    #[arg(long)]
    pub quiver: String,
    /// Output format
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Predicted number of finite-dimensional irreducible representations
    Count {
        #[command(flatten)]
        common: Common,
        /// Dimension vector, comma-separated
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        v: Vec<i64>,
        /// Framing vector, comma-separated
        #[arg(long, value_delimiter = ',')]
        w: Vec<i64>,
        /// Quantization parameter, comma-separated rationals
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Vec<String>,
    },
    /// Weight multiplicity dim L_ω[ν]
    Mult {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',')]
        v: Vec<i64>,
        #[arg(long, value_delimiter = ',')]
        w: Vec<i64>,
    },
    /// Classical walls in θ-space (and quantum walls when λ is given)
    Walls {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',')]
        v: Vec<i64>,
        #[arg(long, value_delimiter = ',')]
        w: Vec<i64>,
        /// Also list quantum walls for this parameter
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Option<Vec<String>>,
        /// Enumerate chamber sign vectors (rank ≤ 4 only)
        #[arg(long)]
        chambers: bool,
    },
    /// Slice quiver and quantized restriction map of a decomposition
    Slice {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',')]
        v: Vec<i64>,
        #[arg(long, value_delimiter = ',')]
        w: Vec<i64>,
        /// The non-root part v^0, comma-separated
        #[arg(long, value_delimiter = ',')]
        v0: Vec<i64>,
        /// Root summand "v1,...,vkxN" (multiplicity N); repeatable
        #[arg(long = "summand")]
        summands: Vec<String>,
    },
    /// Crawley-Boevey flatness of the moment map
    Flat {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',')]
        v: Vec<i64>,
        #[arg(long, value_delimiter = ',')]
        w: Vec<i64>,
    },
    /// Combinatorial wall-crossing image of a partition
    Wallcross {
        /// Partition, comma-separated weakly decreasing parts (empty for ∅)
        #[arg(long, value_delimiter = ',', num_args = 0.., default_value = "")]
        partition: Vec<String>,
        /// Denominator of the wall parameter
        #[arg(long)]
        m: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Heisenberg filtration dimensions on the level-1 Fock space
    #[command(name = "fock-filtration")]
    FockFiltration {
        #[arg(long)]
        m: u64,
        #[arg(long, default_value = "1")]
        r: usize,
        /// Degree n
        #[arg(long)]
        degree: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Conjectural singular hyperplanes in λ-space
    Singular {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',')]
        v: Vec<i64>,
        #[arg(long, value_delimiter = ',')]
        w: Vec<i64>,
    },
    /// Grid sweep of the count engine (rows computed independently)
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',')]
        w: Vec<i64>,
        /// Semicolon-separated dimension vectors, e.g. "0;1;2" or "1,1;2,2"
        #[arg(long, allow_hyphen_values = true)]
        v_set: String,
        /// Semicolon-separated λ vectors, e.g. "-1;0;1/2"
        #[arg(long, allow_hyphen_values = true)]
        lambda_set: String,
    },
}
