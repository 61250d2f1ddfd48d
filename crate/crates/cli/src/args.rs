use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "clustercrypt", version, about = "Cluster-mutation cipher over GF(p^r) and exchange-graph analysis")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a public-parameter file.
    Params(ParamsArgs),
    /// Generate a secret key for a parameter file.
    Keygen(KeygenArgs),
    /// Encrypt a message: letters (one record each) or a decimal integer.
    Encrypt(EncryptArgs),
    /// Decrypt a ciphertext file.
    Decrypt(DecryptArgs),
    /// Enumerate an exchange graph and optionally count paths.
    Graph(GraphArgs),
    /// Key-recovery probability report.
    Probe(ProbeArgs),
    /// Replay the worked examples and reduced property suites.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
pub struct ParamsArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub r: usize,
    /// Ascending modulus coefficients including the leading 1, e.g. `1,0,1,0,0,1`.
    /// Defaults to the first irreducible polynomial found.
    #[arg(long, value_delimiter = ',')]
    pub modulus: Option<Vec<u64>>,
    /// Dynkin type such as `A5` or `D7`; its rank must equal `r`.
    #[arg(long)]
    pub diagram: String,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct KeygenArgs {
    #[arg(long)]
    pub params: PathBuf,
    /// Number of mutations after `k0`.
    #[arg(long, default_value_t = 5)]
    pub length: usize,
    #[arg(long)]
    pub rng_seed: Option<u64>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct EncryptArgs {
    #[arg(long)]
    pub params: PathBuf,
    #[arg(long)]
    pub key: PathBuf,
    /// Letters, or a decimal integer when all digits.
    #[arg(long)]
    pub message: String,
    #[arg(long)]
    pub out: PathBuf,
    /// Use the symbolic mutate-substitute-evaluate path.
    #[arg(long)]
    pub reference_path: bool,
}

#[derive(Debug, Args)]
pub struct DecryptArgs {
    /// Optional; when given it must equal the parameters in the ciphertext.
    #[arg(long)]
    pub params: Option<PathBuf>,
    #[arg(long)]
    pub key: PathBuf,
    #[arg(long = "in")]
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    #[arg(long)]
    pub diagram: String,
    /// Maximum number of vertices.
    #[arg(long)]
    pub budget: Option<usize>,
    /// Track symbolic seeds and certify fingerprints.
    #[arg(long)]
    pub certify: bool,
    /// Check the A3 graph against the reference seed list.
    #[arg(long)]
    pub seed_list: bool,
    /// Walk count `(M^t)_{uv}`: `--path-count U V T`.
    #[arg(long, num_args = 3, value_names = ["U", "V", "T"])]
    pub path_count: Option<Vec<u64>>,
    /// Simple paths: `--dfs U V`.
    #[arg(long, num_args = 2, value_names = ["U", "V"])]
    pub dfs: Option<Vec<usize>>,
    #[arg(long, default_value_t = clustercrypt::analysis::DEFAULT_DFS_MAX_LEN)]
    pub max_len: usize,
    #[arg(long, default_value_t = clustercrypt::analysis::DEFAULT_DFS_MAX_PATHS)]
    pub max_paths: usize,
}

#[derive(Debug, Args)]
pub struct ProbeArgs {
    /// Types to report; defaults to a fixed set across all families.
    #[arg(long = "diagram")]
    pub diagrams: Vec<String>,
    /// Report closed forms and tabulated values only.
    #[arg(long)]
    pub no_enumerate: bool,
    #[arg(long)]
    pub budget: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    #[arg(long, default_value_t = 0x5e1f_7e57)]
    pub rng_seed: u64,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
}
