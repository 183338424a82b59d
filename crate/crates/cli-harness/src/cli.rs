use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "gcs", about = "Exact checks for generalized cluster structures on periodic staircase matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate an identity on random or symbolic instances
    Verify {
        #[arg(value_enum)]
        what: VerifyWhat,
        #[command(flatten)]
        cfg: RunConfig,
    },
    /// Build, mutate or inspect seed files
    Seed {
        #[command(subcommand)]
        action: SeedAction,
    },
    /// Mutation dynamics
    Explore {
        #[arg(value_enum)]
        what: ExploreWhat,
        #[command(flatten)]
        cfg: RunConfig,
    },
}

#[derive(Subcommand, Debug)]
pub enum SeedAction {
    Build {
        #[arg(value_enum)]
        kind: SeedKind,
        #[command(flatten)]
        cfg: RunConfig,
    },
    Mutate {
        /// seed file; same as --in
        file: Option<PathBuf>,
        /// vertex id or label; repeat for a sequence
        #[arg(long = "at", required = true)]
        at: Vec<String>,
        #[command(flatten)]
        cfg: RunConfig,
    },
    Show {
        file: Option<PathBuf>,
        #[command(flatten)]
        cfg: RunConfig,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyWhat {
    Jacobi,
    Plucker,
    Pluckpluck,
    Longid,
    MainIdentity,
    Detphi,
    Gamma6,
    Theta,
    Gencop,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExploreWhat {
    Yz,
    Orbit,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeedKind {
    Double,
    Band,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingSel {
    Rational,
    PrimeField,
    Symbolic,
}

impl RingSel {
    pub fn name(self) -> &'static str {
        match self {
            RingSel::Rational => "rational",
            RingSel::PrimeField => "prime-field",
            RingSel::Symbolic => "symbolic",
        }
    }
}

/// Everything a run needs besides the verb.
#[derive(Args, Clone, Debug)]
pub struct RunConfig {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub a: Option<usize>,
    #[arg(long)]
    pub b: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    /// number of random instances (default depends on the check)
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "prime-field")]
    pub ring: RingSel,
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    #[arg(long, short = 'o')]
    pub out: Option<PathBuf>,
    /// write the quiver as Graphviz
    #[arg(long)]
    pub dot: Option<PathBuf>,
    /// orbit exploration depth
    #[arg(long, default_value_t = 3)]
    pub depth: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_lines_parse() {
        let c = Cli::try_parse_from(["gcs", "verify", "main-identity", "--n", "9", "--a", "5", "--b", "2", "--trials", "20", "--seed", "7"]).unwrap();
        let Command::Verify { what, cfg } = c.command else { panic!() };
        assert_eq!(what, VerifyWhat::MainIdentity);
        assert_eq!((cfg.n, cfg.a, cfg.b, cfg.trials, cfg.seed), (Some(9), Some(5), Some(2), Some(20), 7));
        assert_eq!(cfg.ring, RingSel::PrimeField);

        let c = Cli::try_parse_from(["gcs", "seed", "mutate", "s.json", "--at", "20", "--at", "phi2"]).unwrap();
        let Command::Seed { action: SeedAction::Mutate { file, at, .. } } = c.command else { panic!() };
        assert_eq!(file, Some(PathBuf::from("s.json")));
        assert_eq!(at, vec!["20", "phi2"]);
    }

    #[test]
    fn unknown_verbs_are_rejected() {
        assert!(Cli::try_parse_from(["gcs", "verify", "nonsense"]).is_err());
        assert!(Cli::try_parse_from(["gcs", "explore", "yz", "--ring", "complex"]).is_err());
        assert!(Cli::try_parse_from(["gcs", "seed", "mutate", "s.json"]).is_err());
    }
}
