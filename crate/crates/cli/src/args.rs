use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "ore-kex",
    version,
    about = "Key exchange, encryption, signatures and identification over Ore polynomial rings"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Ring and public-parameter shape for commands that generate parameters.
#[derive(Debug, Clone, Args)]
pub struct ShapeArgs {
    /// Ring alias (`f125-skew2`, `weyl3-f71`, `weyl<n>-f<p>`) or a full `ring ...` line.
    #[arg(long, default_value = "f125-skew2")]
    pub ring: String,
    /// Total degree of L.
    #[arg(long = "dL", default_value_t = 50)]
    pub d_l: u32,
    /// Total degree of P and Q.
    #[arg(long = "dPQ", default_value_t = 5)]
    pub d_pq: u32,
    /// Degree of the private polynomials f, g.
    #[arg(long, default_value_t = 10)]
    pub nu: usize,
    /// Number of terms of L (default: dense when small, otherwise 32).
    #[arg(long)]
    pub l_terms: Option<usize>,
    /// Number of terms of P and Q.
    #[arg(long)]
    pub pq_terms: Option<usize>,
}

/// Either an existing parameter file or a shape to generate one from.
#[derive(Debug, Clone, Args)]
pub struct ParamsSource {
    /// Read public parameters from this file instead of generating them.
    #[arg(long)]
    pub params: Option<PathBuf>,
    #[command(flatten)]
    pub shape: ShapeArgs,
}

#[derive(Debug, Clone, Args)]
pub struct MessageArgs {
    /// Message given on the command line.
    #[arg(long, conflicts_with = "message_file")]
    pub message: Option<String>,
    /// Read the message bytes from a file.
    #[arg(long)]
    pub message_file: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Digest {
    Sha256,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProverKind {
    Honest,
    /// Commits to p1' p1'' L p2 and prepares for one challenge only.
    Split,
    /// Answers the split challenge with (p1, L p2).
    Trivial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChallengeKind {
    Exchange,
    ThreePass,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate public parameters and/or a key pair.
    Keygen {
        #[command(flatten)]
        source: ParamsSource,
        #[arg(long)]
        seed: u64,
        /// Where to write freshly generated parameters.
        #[arg(long, conflicts_with = "params")]
        params_out: Option<PathBuf>,
        /// Private key file (also holds the public key).
        #[arg(long)]
        key_out: Option<PathBuf>,
        /// Public key file.
        #[arg(long)]
        public_out: Option<PathBuf>,
    },
    /// Run both sides of the two-message key agreement.
    Exchange {
        #[command(flatten)]
        source: ParamsSource,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Transport a random (or given) secret with the three-pass protocol.
    ThreePass {
        #[command(flatten)]
        source: ParamsSource,
        #[arg(long)]
        seed: u64,
        /// Secret polynomial to send; random of degree dL when omitted.
        #[arg(long, allow_hyphen_values = true)]
        secret: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Encrypt a byte message to the holder of a public key.
    Encrypt {
        #[arg(long)]
        params: PathBuf,
        /// Recipient's public key file.
        #[arg(long)]
        public: PathBuf,
        #[command(flatten)]
        message: MessageArgs,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decrypt a ciphertext file with a private key.
    Decrypt {
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        key: PathBuf,
        #[arg(long)]
        ciphertext: PathBuf,
        /// Write the plaintext bytes here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sign a byte message (or its digest).
    Sign {
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        key: PathBuf,
        #[command(flatten)]
        message: MessageArgs,
        /// Sign the digest of the message rather than the message itself.
        #[arg(long, value_enum)]
        digest: Option<Digest>,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a signature file against a public key.
    Verify {
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        public: PathBuf,
        #[arg(long)]
        signature: PathBuf,
        /// Also require the signed polynomial to encode this message.
        #[command(flatten)]
        message: MessageArgs,
        #[arg(long, value_enum)]
        digest: Option<Digest>,
    },
    /// Run the factor-knowledge identification protocol.
    Zkp {
        #[arg(long, default_value = "f125-skew2")]
        ring: String,
        /// Total degree of each secret factor of L.
        #[arg(long, default_value_t = 3)]
        factor_degree: u32,
        /// Total degree of the blinding factors p1, p2.
        #[arg(long, default_value_t = 2)]
        blinder_degree: u32,
        /// Maximum number of rounds; the run stops at the first rejection.
        #[arg(long, default_value_t = 40)]
        rounds: usize,
        #[arg(long, value_enum, default_value_t = ProverKind::Honest)]
        prover: ProverKind,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Test a Weyl-algebra element for a grading (and, with --l, screen it as a key).
    CheckWeak {
        #[arg(long, default_value = "weyl3-f71")]
        ring: String,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// Public L to screen against.
        #[arg(long, allow_hyphen_values = true)]
        l: Option<String>,
    },
    /// Evaluate the step-count model, or reproduce the published table.
    Estimate {
        #[arg(long = "dL", required_unless_present = "table")]
        d_l: Option<u32>,
        #[arg(long = "dPQ", required_unless_present = "table")]
        d_pq: Option<u32>,
        #[arg(long, required_unless_present = "table")]
        nu: Option<u32>,
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long, default_value_t = ore_kex::cost::OMEGA)]
        omega: f64,
        /// Print all published rows next to the computed values.
        #[arg(long, conflicts_with_all = ["d_l", "d_pq", "nu"])]
        table: bool,
    },
    /// Produce a public challenge file and its answer file, or check a pair.
    Challenge {
        #[arg(long, value_enum, required_unless_present = "replay")]
        protocol: Option<ChallengeKind>,
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long, required_unless_present = "replay")]
        seed: Option<u64>,
        /// Directory for the two files.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        /// Regenerate from ANSWER and compare with PUBLIC.
        #[arg(long, num_args = 2, value_names = ["PUBLIC", "ANSWER"], conflicts_with_all = ["protocol", "seed"])]
        replay: Option<Vec<PathBuf>>,
    },
}
