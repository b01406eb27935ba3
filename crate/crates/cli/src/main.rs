//! `biracah` command-line front end.
//!
//! Exit codes: 0 all checks pass, 1 a verification failed, 2 usage or
//! parameter error, 3 numeric-domain error.

mod output;

use std::process::ExitCode;

use biracah::numcore::rational::{self, Rational};
use biracah::verify::{self, Suite, VerifyOptions};
use biracah::{BiParams, Error, Precision, RacahContext};
use clap::{Args, Parser, Subcommand, ValueEnum};

use output::Format;

#[derive(Parser)]
#[command(name = "biracah", version, about = "Bannai-Ito polynomials and osp(1|2) Racah coefficients")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Grid, weights, recurrence coefficients and polynomial values.
    BiTable(Common),
    /// The Racah coefficient matrix and its orthogonality residual.
    Racah(Common),
    /// Run an invariant suite and print its report.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    mu1: Option<Rational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    mu2: Option<Rational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    mu3: Option<Rational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    rho1: Option<Rational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    rho2: Option<Rational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    r1: Option<Rational>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    r2: Option<Rational>,
    /// Truncation degree.
    #[arg(long = "N")]
    n: usize,
    /// Decimal digits of working precision.
    #[arg(long, env = "BIRACAH_PREC", default_value_t = Precision::DEFAULT_DIGITS, value_parser = clap::value_parser!(u32).range(4..=2000))]
    prec: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for sampled points and angles.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Flip the phase of odd rows of the Racah matrix (mutation test hook).
    #[arg(long)]
    corrupt_phase: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Orthogonality,
    Eigen,
    Unitarity,
    Decomposition,
    Genfun,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Orthogonality => Suite::Orthogonality,
            SuiteArg::Eigen => Suite::Eigen,
            SuiteArg::Unitarity => Suite::Unitarity,
            SuiteArg::Decomposition => Suite::Decomposition,
            SuiteArg::Genfun => Suite::Genfun,
            SuiteArg::All => Suite::All,
        }
    }
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    rational::parse_rational(s)
        .or_else(|_| rational::parse_decimal(s))
        .map_err(|e| e.to_string())
}

enum Failure {
    Usage(String),
    Domain(String),
    /// stdout was closed early; not an error
    Closed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_numeric_domain() {
            Failure::Domain(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<biracah::BiError> for Failure {
    fn from(e: biracah::BiError) -> Self {
        Failure::Usage(e.to_string())
    }
}

#[allow(clippy::large_enum_variant)]
enum Params {
    Mu(RacahContext),
    Bi(BiParams),
}

impl Common {
    fn params(&self) -> Result<Params, Failure> {
        let mu = [&self.mu1, &self.mu2, &self.mu3];
        let bi = [&self.rho1, &self.rho2, &self.r1, &self.r2];
        let any_mu = mu.iter().any(|m| m.is_some());
        let any_bi = bi.iter().any(|b| b.is_some());
        match (any_mu, any_bi) {
            (true, false) => match mu {
                [Some(a), Some(b), Some(c)] => Ok(Params::Mu(RacahContext::new(a.clone(), b.clone(), c.clone(), self.n)?)),
                _ => Err(Failure::Usage("--mu1, --mu2 and --mu3 must be given together".into())),
            },
            (false, true) => match bi {
                [Some(a), Some(b), Some(c), Some(d)] => {
                    Ok(Params::Bi(BiParams::new(a.clone(), b.clone(), c.clone(), d.clone(), self.n)?))
                }
                _ => Err(Failure::Usage("--rho1, --rho2, --r1 and --r2 must be given together".into())),
            },
            (true, true) => Err(Failure::Usage("give either --mu1/--mu2/--mu3 or --rho1/--rho2/--r1/--r2, not both".into())),
            (false, false) => Err(Failure::Usage("missing parameters: --mu1/--mu2/--mu3 or --rho1/--rho2/--r1/--r2".into())),
        }
    }

    fn context(&self) -> Result<RacahContext, Failure> {
        match self.params()? {
            Params::Mu(ctx) => Ok(ctx),
            Params::Bi(p) => Ok(RacahContext::from_bi(&p)?),
        }
    }

    fn precision(&self) -> Precision {
        Precision::digits(self.prec)
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let mut out = std::io::stdout().lock();
    match cli.command {
        Command::BiTable(common) => {
            let p = match common.params()? {
                Params::Mu(ctx) => ctx.bi().clone(),
                Params::Bi(p) => p,
            };
            output::bi_table(&p, common.format, &mut out)?;
            Ok(true)
        }
        Command::Racah(common) => {
            let ctx = common.context()?;
            let opts = biracah::racah::RacahOptions {
                corrupt_phase: common.corrupt_phase,
                ..Default::default()
            };
            let m = biracah::racah::racah_matrix_with(&ctx, common.precision(), opts)?;
            output::racah(&m, common.corrupt_phase, common.format, &mut out)?;
            Ok(true)
        }
        Command::Verify { suite, common } => {
            let ctx = common.context()?;
            let opts = VerifyOptions {
                prec: common.precision(),
                seed: common.seed,
                ..Default::default()
            }
            .with_corrupt_phase(common.corrupt_phase);
            let report = verify::run(&ctx, suite.into(), &opts)?;
            let bad = report.sign_mismatches();
            if !bad.is_empty() {
                let cells: Vec<String> = bad.iter().map(|(s, k)| format!("({s},{k})")).collect();
                eprintln!("sign mismatches at (S,K): {}", cells.join(" "));
            }
            output::report(&report, common.format, &mut out)?;
            Ok(report.pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) | Err(Failure::Closed) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn domain_errors_map_to_exit_three() {
        let e = Error::NegativeRadicand {
            what: "R".into(),
            value: "-1".into(),
        };
        assert!(matches!(Failure::from(e), Failure::Domain(_)));
        let e = Error::Params(biracah::BiError::ZeroDenominator(2));
        assert!(matches!(Failure::from(e), Failure::Usage(_)));
    }

    #[test]
    fn rationals_and_decimals_parse() {
        assert_eq!(parse_rational("3/4").unwrap(), rational::ratio(3, 4));
        assert_eq!(parse_rational("0.25").unwrap(), rational::ratio(1, 4));
        assert!(parse_rational("1//2").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
