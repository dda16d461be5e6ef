use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "somos", version, about = "Somos and Gale-Robinson sequence laboratory")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate sequence terms.
    #[command(args_override_self = true)]
    Gen(GenArgs),
    /// Probe the (half-)diamond rank of s x s over a window.
    #[command(args_override_self = true)]
    Rank(RankArgs),
    /// Invariant spaces and bundled invariants.
    #[command(args_override_self = true)]
    Invariants(InvariantArgs),
    /// Verify certificate identities and finite-field witnesses.
    #[command(args_override_self = true)]
    Certify(CertifyArgs),
    /// Laurentness audit of the master sequence and denominator sets.
    #[command(args_override_self = true)]
    Laurent(LaurentArgs),
    /// Randomised Gale-Robinson rank experiment.
    #[command(args_override_self = true)]
    Experiment(ExperimentArgs),
    /// Nonstrict-order fits of decimated sequences.
    #[command(args_override_self = true)]
    Decimate(DecimateArgs),
}

/// Which recurrence: `--order n` for Somos, `--gr n1,n2,n3` for Gale-Robinson.
#[derive(Args, Debug, Clone)]
pub struct Source {
    #[arg(long, conflicts_with = "gr")]
    pub order: Option<usize>,
    #[arg(long, value_name = "N1,N2,N3")]
    pub gr: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct Values {
    /// Coefficients, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: Option<String>,
    /// Initial terms s_0..s_{n-1}, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub seed: Option<String>,
    /// All coefficients and seed terms 1.
    #[arg(long)]
    pub unit: bool,
    /// All seed terms 1.
    #[arg(long)]
    pub unit_seed: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    Rational,
    Int,
    Fp,
    Laurent,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Diamond,
    Half,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[command(flatten)]
    pub source: Source,
    #[command(flatten)]
    pub values: Values,
    /// Index range `lo..hi` (half open) or `lo..=hi`.
    #[arg(long, default_value = "0..20", allow_hyphen_values = true)]
    pub range: String,
    #[arg(long, value_enum)]
    pub domain: Option<Domain>,
    /// Prime modulus; implies `--domain fp`.
    #[arg(long)]
    pub p: Option<u64>,
}

#[derive(Args, Debug)]
pub struct RankArgs {
    #[command(flatten)]
    pub source: Source,
    #[command(flatten)]
    pub values: Values,
    #[arg(long, default_value_t = 40)]
    pub probe: usize,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub centre: i64,
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    /// Prime modulus; drawn from `--rng-seed` when absent.
    #[arg(long)]
    pub p: Option<u64>,
    /// Rank over the rationals instead of a prime field.
    #[arg(long)]
    pub rational: bool,
    #[arg(long, default_value_t = somos_core::experiments::DEFAULT_SEED)]
    pub rng_seed: u64,
    /// Exit 1 unless the measured rank is this and the window certificate holds.
    #[arg(long)]
    pub expect: Option<usize>,
}

#[derive(Args, Debug)]
pub struct InvariantArgs {
    #[command(flatten)]
    pub source: Source,
    /// Print `dim basis / dim kernel` only.
    #[arg(long)]
    pub dims: bool,
    /// Check the bundled invariants of the order.
    #[arg(long)]
    pub check: bool,
    /// Print one bundled invariant (F4, F5, F6, G6, F7, G7).
    #[arg(long)]
    pub show: Option<String>,
    /// Sample points for the shift check of orders 6 and up.
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    /// Use the exact shift check at every order.
    #[arg(long)]
    pub symbolic: bool,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    #[arg(long)]
    pub order: usize,
    /// Also rebuild the finite-field witness.
    #[arg(long)]
    pub witness: bool,
}

#[derive(Args, Debug)]
pub struct LaurentArgs {
    #[arg(long)]
    pub order: usize,
    /// Audited master indices; default `n..=K_max`.
    #[arg(long, allow_hyphen_values = true)]
    pub range: Option<String>,
    /// Print Lambda, Theta and the containment check.
    #[arg(long)]
    pub sets: bool,
    /// Largest recentred index for `--sets`.
    #[arg(long)]
    pub k_max: Option<i64>,
    /// Run the coprimality probe of the designated minors.
    #[arg(long)]
    pub xi: bool,
    #[arg(long, default_value_t = 5)]
    pub trials: usize,
    #[arg(long, default_value_t = somos_core::experiments::DEFAULT_SEED)]
    pub rng_seed: u64,
}

#[derive(Args, Debug)]
pub struct ExperimentArgs {
    #[arg(long, value_name = "N1,N2,N3")]
    pub gr: String,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub probe: Option<usize>,
    /// Sampling box `lo..=hi` for coefficients and seeds.
    #[arg(long, value_name = "RANGE")]
    pub sample_box: Option<String>,
    /// Prime interval `lo..=hi`.
    #[arg(long, value_name = "RANGE")]
    pub primes: Option<String>,
    #[arg(long)]
    pub rng_seed: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    pub centre: Option<i64>,
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    #[arg(long)]
    pub no_certify: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct DecimateArgs {
    #[command(flatten)]
    pub source: Source,
    #[command(flatten)]
    pub values: Values,
    /// Decimation factors.
    #[arg(long, default_value = "1..=3")]
    pub d: String,
    /// Orders to fit.
    #[arg(long, default_value = "2..=9")]
    pub n: String,
    /// Work modulo this prime instead of over the rationals.
    #[arg(long)]
    pub p: Option<u64>,
}
