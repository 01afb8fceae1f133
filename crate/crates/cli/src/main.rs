// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.


//! `locolour`: LO hypergraph colouring, exact search, generators, the scaling
//! harness and the polymorphism lab.
//!
//! Exit codes: 0 success, 1 negative result, 2 usage or I/O error, 3 search
//! budget exhausted. Data goes to standard output or `--out`, diagnostics to
//! standard error.

mod bench;
mod commands;
mod io;
mod minion;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "locolour", version, about = "LO colourings of 3-uniform hypergraphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Node budget for exhaustive searches.
    #[arg(long, global = true, env = "LOCOLOUR_BUDGET", default_value_t = 100_000_000)]
    pub budget: u64,

    /// Write the primary output here (atomically) instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Colour an LO-2-colourable instance with few colours.
    Solve {
        input: PathBuf,
        /// Clique removal only sees this many lowest-degree vertices.
        #[arg(long, default_value_t = 512)]
        clique_limit: usize,
    },
    /// Exact LO k-colouring search.
    Exact {
        input: PathBuf,
        #[arg(long)]
        k: u32,
    },
    /// Check a colouring against an instance.
    Verify { input: PathBuf, colouring: PathBuf },
    /// Generate a planted instance.
    Gen(GenArgs),
    /// Scaling harness over doubling sizes.
    Bench(BenchArgs),
    /// Parity system of an instance and its approximate Max-Ones solution.
    Gf2 { input: PathBuf },
    /// Independent sets of the primal graph.
    Is { input: PathBuf },
    /// Polymorphism and minion experiments.
    #[command(subcommand)]
    Minion(MinionCommand),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// `m = ⌊n·Δ(n)/4⌋`, colour-2 fraction from `--frac2`.
    Sparse,
    /// Linear, `m = ⌈4·n·Δ(n)⌉`.
    Dense,
    /// Linear, `m = ⌊n·Δ(n)/4⌋`, a third coloured 2 (the bench family).
    Balanced,
    /// Edge count from `--m` or `--density`.
    Custom,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = Family::Custom)]
    pub family: Family,
    #[arg(long, conflicts_with = "density")]
    pub m: Option<usize>,
    /// Edges per vertex; `m = ⌈n·density⌉`.
    #[arg(long)]
    pub density: Option<f64>,
    #[arg(long, default_value_t = 0.5)]
    pub frac2: f64,
    /// No two edges share two slots.
    #[arg(long)]
    pub linear: bool,
    /// Allow edges with a repeated colour-1 vertex.
    #[arg(long)]
    pub allow_repeat: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also write the planted LO 2-colouring here.
    #[arg(long)]
    pub witness: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Doubling range `lo..hi`, both ends included.
    #[arg(long, default_value = "1024..131072")]
    pub sizes: String,
    /// Seeds per size, counted from `--seed`.
    #[arg(long, default_value_t = 5)]
    pub seeds: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write `n mean_K max_K ratio` rows for gnuplot here.
    #[arg(long)]
    pub plot: Option<PathBuf>,
    /// Write the summary object here (csv format prints it to stderr otherwise).
    #[arg(long)]
    pub summary: Option<PathBuf>,
    #[arg(long, default_value_t = 512)]
    pub clique_limit: usize,
}

#[derive(Subcommand, Debug)]
pub enum MinionCommand {
    /// All set-representation polymorphisms of arity n from LO_2^r to LO_k^r.
    Enum {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        /// Print only the count.
        #[arg(long)]
        count: bool,
    },
    /// Size of the free structure over the binary polymorphisms.
    Free {
        #[arg(long)]
        r_src: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r_rel: usize,
    },
    /// Decide a minion homomorphism between LO polymorphism minions by both routes.
    Homcheck {
        #[arg(long)]
        r_src: usize,
        #[arg(long)]
        r_dst: usize,
        #[arg(long)]
        k: usize,
    },
    /// Edge co-colouring of the complete graph on m vertices.
    Cocolour {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        p: usize,
    },
    /// Check one of the explicit witness families.
    Witness {
        #[arg(long)]
        k: usize,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        variant: u8,
    },
    /// Check that restricting the colour domain is a minion homomorphism.
    Restriction {
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 2)]
        max_arity: usize,
    },
    /// Check the selector property on small ground sets.
    Selector {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        max_n: usize,
    },
}

/// A run that ends with a nonzero exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub const NEGATIVE: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const BUDGET: u8 = 3;

    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: Self::USAGE,
            message: message.into(),
        }
    }

    pub fn negative(message: impl Into<String>) -> Self {
        Failure {
            code: Self::NEGATIVE,
            message: message.into(),
        }
    }

    pub fn budget(budget: u64) -> Self {
        Failure {
            code: Self::BUDGET,
            message: format!("search budget of {budget} nodes exhausted"),
        }
    }
}

impl From<lo_colour::Error> for Failure {
    fn from(e: lo_colour::Error) -> Self {
        use lo_colour::Error;
        let code = match e {
            Error::BudgetExceeded { .. } => Self::BUDGET,
            Error::PromiseViolation(_) | Error::Infeasible(_) => Self::NEGATIVE,
            Error::InvalidInput(_) | Error::Parse { .. } | Error::Io(_) => Self::USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(Failure::USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("locolour: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
