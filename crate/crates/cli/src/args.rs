use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use veronese_rank3::{Error, MonomialOrder, Result};

#[derive(Parser, Debug)]
#[command(name = "vr3", version, about = "Rank-3 quadrics of Veronese varieties: certificates and worked examples")]
pub struct Cli {
    /// Output format on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Also write the JSON artifact to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Time limit in seconds for Gröbner computations.
    #[arg(long, global = true)]
    pub timeout: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    D4,
    D5,
}

#[derive(Args, Debug)]
pub struct IdealArgs {
    /// Ideal as JSON (`{"vars", "order"?, "generators"}`).
    #[arg(long, conflicts_with_all = ["vars", "gens"])]
    pub ideal: Option<PathBuf>,
    /// Comma-separated variable names, e.g. `x,y,z`.
    #[arg(long)]
    pub vars: Option<String>,
    /// Semicolon-separated generators, e.g. `x^2 - y; x^3`.
    #[arg(long, requires = "vars")]
    pub gens: Option<String>,
    /// `lex`, `degrevlex` or `block:K` (eliminates the first K variables).
    #[arg(long)]
    pub order: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// The binomial quadrics Q_{i,j} of the rational normal curve.
    Generators {
        #[arg(long)]
        d: u32,
    },
    /// Symbolic α coefficients over the Σ basis.
    AlphaTable {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        ell: u32,
    },
    /// Checks the β/α recurrences and partial-sum formulas.
    Recurrences {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        ell: u32,
    },
    /// The witness quadric of W_ℓ with its α_{0,k} pattern.
    Witness {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        ell: u32,
    },
    /// Pairwise non-containment of the components W_ℓ.
    Minimality {
        #[arg(long)]
        d: u32,
    },
    /// Rank of the α coefficients over Σ.
    Nondegeneracy {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        ell: u32,
    },
    /// Injectivity of Q̃_ℓ at a point (binary forms in x, y).
    Fiber {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        f: Option<String>,
        #[arg(long)]
        g: Option<String>,
        #[arg(long)]
        h: Option<String>,
    },
    /// Lower bound on the dimension of the singular locus of W_ℓ.
    Theta {
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        ell: u32,
    },
    /// Random two-point fibers from the family with deg C = deg D = m.
    SingFamily {
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        ell: u32,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 5)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The ℓ = 1 coefficients as C(d,2) independent quadrics.
    W1Check {
        #[arg(long)]
        d: u32,
    },
    /// Reduced Gröbner basis.
    Gb {
        #[command(flatten)]
        ideal: IdealArgs,
    },
    /// Elimination ideal after dropping variables.
    Eliminate {
        #[command(flatten)]
        ideal: IdealArgs,
        /// Comma-separated variables to eliminate.
        #[arg(long)]
        drop: String,
    },
    /// Ideal membership with normal form.
    Member {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        f: Option<String>,
    },
    /// Radical membership.
    RadicalMember {
        #[command(flatten)]
        ideal: IdealArgs,
        #[arg(long)]
        f: Option<String>,
    },
    /// Hilbert polynomial of a homogeneous ideal.
    Hilbert {
        #[command(flatten)]
        ideal: IdealArgs,
    },
    /// Replays a worked example and diffs against embedded expectations.
    Example {
        #[arg(value_enum)]
        which: Which,
        /// Include the long-running elimination (d5).
        #[arg(long)]
        long: bool,
    },
}

pub fn parse_order(s: &str) -> Result<MonomialOrder> {
    match s {
        "lex" => Ok(MonomialOrder::Lex),
        "degrevlex" | "grevlex" => Ok(MonomialOrder::DegRevLex),
        _ => s
            .strip_prefix("block:")
            .and_then(|k| k.parse().ok())
            .map(|split| MonomialOrder::BlockElim { split })
            .ok_or_else(|| Error::Unsupported(format!("unknown order {s:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(parse_order("lex").unwrap(), MonomialOrder::Lex);
        assert_eq!(parse_order("block:3").unwrap(), MonomialOrder::BlockElim { split: 3 });
        assert!(parse_order("block:x").is_err());
        assert!(parse_order("revlex").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
