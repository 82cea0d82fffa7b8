use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use trace_moments::curves::AbelianSpec;
use trace_moments::numtheory::is_prime;

#[derive(Debug, Parser)]
#[command(
    name = "trace-moments",
    version,
    about = "Hecke traces, class-number sums and elliptic-curve moments over small finite fields"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hurwitz class number H(delta).
    Hurwitz {
        #[arg(long, allow_hyphen_values = true)]
        delta: i64,
    },
    /// Per-trace curve masses over F_q, for all curves and for those containing A.
    Census {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long = "A", default_value = "1,1")]
        group: String,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Census moment of U_{k-2} against its closed form.
    Moment {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long = "A")]
        group: String,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Trace of T_q <d> on S_k(Gamma(p^r N, M)) and its four terms.
    Trace {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long = "N", default_value_t = 1)]
        level_n: u64,
        #[arg(long = "M", default_value_t = 1)]
        level_m: u64,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        d: i64,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 0)]
        r: u32,
    },
    /// Compare census moments with the closed form over the acceptance grid.
    VerifyMain {
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long = "A")]
        group: Option<String>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Run the congruence and class-sum identity suite.
    VerifyLemmas {
        /// Run only this family (lift_independence, h_factorization, w,
        /// c_factorization, c_vs_h, dirichlet_collapse).
        #[arg(long)]
        only: Option<String>,
    },
}

/// `--q`, or `--p` together with `--n`.
#[derive(Debug, Args)]
pub struct FieldArgs {
    #[arg(long, conflicts_with_all = ["p", "n"])]
    pub q: Option<u64>,
    #[arg(long, requires = "n")]
    pub p: Option<u64>,
    #[arg(long, requires = "p")]
    pub n: Option<u32>,
}

impl FieldArgs {
    pub fn order(&self) -> Result<u64, String> {
        match (self.q, self.p, self.n) {
            (Some(q), _, _) => Ok(q),
            (None, Some(p), Some(n)) => {
                if !is_prime(p) {
                    return Err(format!("--p {p} is not prime"));
                }
                if n == 0 {
                    return Err("--n must be at least 1".into());
                }
                p.checked_pow(n).ok_or_else(|| format!("{p}^{n} overflows"))
            }
            _ => Err("give --q or both --p and --n".into()),
        }
    }
}

/// Parses `"m1,m2"`.
pub fn parse_group(s: &str) -> Result<AbelianSpec, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [m1, m2] = parts.as_slice() else {
        return Err(format!("--A expects m1,m2 but got {s:?}"));
    };
    let m1: u64 = m1.parse().map_err(|_| format!("bad m1 in {s:?}"))?;
    let m2: u64 = m2.parse().map_err(|_| format!("bad m2 in {s:?}"))?;
    AbelianSpec::new(m1, m2).map_err(|e| format!("--A {s}: {e}"))
}
