use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Environment variable holding the default step budget.
pub const BUDGET_ENV: &str = "FLOPCALC_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "flopcalc", version, about = "Noncommutative Groebner bases and flopping algebras")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Reduction-step budget per completion; overrides $FLOPCALC_BUDGET.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Allow the expensive pipelines for lengths 4 to 6.
    #[arg(long, global = true)]
    pub heavy: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    /// One JSON object per line, after a `schema` header line.
    Json,
}

/// Where to read an algebra from.
#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Presentation file.
    #[arg(long = "in", value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Built-in presentation (see `flopcalc catalog`).
    #[arg(long, value_name = "NAME")]
    pub builtin: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List built-in presentations, or print one.
    Catalog {
        name: Option<String>,
    },
    /// Truncated Groebner basis.
    Gb {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 12)]
        degree: u32,
    },
    /// Normal form of an element.
    Nf {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        element: String,
        #[arg(long, default_value_t = 12)]
        degree: u32,
    },
    /// Hypersurface equation of a universal flop.
    Hypersurface {
        #[arg(long)]
        length: u8,
        /// Write the equation in the raw generator x′ instead of the completed square.
        #[arg(long, conflicts_with = "nice_basis")]
        raw: bool,
        /// Apply the catalog's change of parameters (length 2).
        #[arg(long)]
        nice_basis: bool,
        /// Specialize the parameters first.
        #[arg(long, value_name = "FILE")]
        map: Option<PathBuf>,
        /// Truncation degree; defaults to the catalog value.
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Matrix factorization of a universal flop.
    Mf {
        #[arg(long)]
        length: u8,
        /// Only report whether C² = g·I.
        #[arg(long)]
        check_only: bool,
        #[arg(long, value_name = "FILE")]
        map: Option<PathBuf>,
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Push a presentation through a parameter map.
    Specialize {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_name = "FILE")]
        map: PathBuf,
    },
    /// Check that the cyclic derivatives of a potential cut out the relations.
    Superpotential {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_name = "FILE")]
        phi: PathBuf,
        /// Arrow rescaling `arrow=rational`, repeatable.
        #[arg(long = "scale", value_name = "ARROW=Q")]
        scale: Vec<String>,
        /// Truncation degree, or nil length for inhomogeneous relations.
        #[arg(long, default_value_t = 10)]
        degree: u32,
    },
    /// Evaluate the relations on a matrix representation.
    VerifyRep {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_name = "FILE")]
        rep: PathBuf,
    },
    /// Contraction algebra at a vertex.
    Contraction {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "0")]
        vertex: String,
        #[arg(long)]
        length: Option<u8>,
    },
    /// Gopakumar–Vafa tuples from dim and dim_ab.
    Gv {
        #[arg(long)]
        dim: u64,
        #[arg(long)]
        dim_ab: u64,
        #[arg(long)]
        length: Option<u8>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Catalog { .. } => "catalog",
            Command::Gb { .. } => "gb",
            Command::Nf { .. } => "nf",
            Command::Hypersurface { .. } => "hypersurface",
            Command::Mf { .. } => "mf",
            Command::Specialize { .. } => "specialize",
            Command::Superpotential { .. } => "superpotential",
            Command::VerifyRep { .. } => "verify-rep",
            Command::Contraction { .. } => "contraction",
            Command::Gv { .. } => "gv",
        }
    }
}
