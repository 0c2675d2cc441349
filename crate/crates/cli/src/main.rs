//! `svalue`: P-values, S-values and their calibrations from the command line.

mod commands;
mod error;
mod input;
mod render;

use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use svalue::simulate::{NullGenerator, RngSpec};
use svalue::InfoUnit;

use commands::{ConvertInput, CurveArgs, Method};
use error::{CliError, CliResult};
use render::{Format, Output};

#[derive(Parser)]
#[command(
    name = "svalue",
    version,
    about = "Surprisal (S-value) toolkit for P-values"
)]
struct Cli {
    /// Output format. Defaults to csv for `curve`, json for `simulate`
    /// and table otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Information unit for reported S-values.
    #[arg(long, global = true, value_enum, default_value_t = UnitArg::Bits)]
    unit: UnitArg,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum UnitArg {
    Bits,
    Nats,
    Dits,
}

impl From<UnitArg> for InfoUnit {
    fn from(u: UnitArg) -> Self {
        match u {
            UnitArg::Bits => InfoUnit::Bits,
            UnitArg::Nats => InfoUnit::Nats,
            UnitArg::Dits => InfoUnit::Dits,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    /// Fisher's S-summation test (`id,p` input).
    SSum,
    /// Z²-summation test (`id,estimate,std_error` input).
    Z2,
    /// Inverse-variance pooled test of a common effect.
    Pooled,
    /// S-summation and pooled tests side by side.
    Compare,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GeneratorArg {
    Uniform,
    Binomial,
}

#[derive(Subcommand)]
enum Command {
    /// Express a P-value as an S-value in bits, nats and dits.
    #[command(group(ArgGroup::new("input").required(true).args(["p", "s"])))]
    Convert {
        #[arg(long, allow_negative_numbers = true)]
        p: Option<f64>,
        /// An S-value to turn back into a P-value.
        #[arg(long, requires = "from_unit", allow_negative_numbers = true)]
        s: Option<f64>,
        /// Unit of `--s`.
        #[arg(long, value_enum, requires = "s")]
        from_unit: Option<UnitArg>,
    },
    /// Combine evidence from independent studies in a CSV file.
    Combine {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::SSum)]
        method: MethodArg,
        /// Null value of the effect, for effect-form input.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        null: f64,
    },
    /// Likelihood-ratio and Bayes-factor benchmarks for a P-value.
    Calibrate {
        #[arg(long, allow_negative_numbers = true)]
        p: f64,
        /// Dimension of the test hypothesis.
        #[arg(long, default_value_t = 1)]
        d: u32,
    },
    /// Tabulate P- and S-value functions over a range of parameter values.
    Curve {
        #[arg(long, allow_negative_numbers = true)]
        estimate: f64,
        #[arg(long, allow_negative_numbers = true)]
        se: f64,
        #[arg(long, allow_negative_numbers = true)]
        from: f64,
        #[arg(long, allow_negative_numbers = true)]
        to: f64,
        #[arg(long, default_value_t = 101)]
        steps: usize,
    },
    /// Check uniformity or conservativeness of null P-values by simulation.
    Simulate {
        #[arg(long, default_value_t = 100_000)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        stream: u64,
        #[arg(long, value_delimiter = ',', num_args = 1.., default_value = "0.01,0.05,0.1")]
        alphas: Vec<f64>,
        #[arg(long, value_enum, default_value_t = GeneratorArg::Uniform)]
        generator: GeneratorArg,
        /// Number of trials for the binomial generator.
        #[arg(long)]
        trials: Option<u32>,
        /// Null success probability for the binomial generator.
        #[arg(long)]
        theta0: Option<f64>,
    },
}

fn run(cli: Cli) -> CliResult<(Output, Format)> {
    let unit = InfoUnit::from(cli.unit);
    let output = match &cli.command {
        Command::Convert { p, s, from_unit } => {
            let input = match (p, s, from_unit) {
                (Some(p), None, None) => ConvertInput::P(*p),
                (None, Some(s), Some(u)) => ConvertInput::S(*s, InfoUnit::from(*u)),
                _ => return Err(CliError::usage("give either --p or --s with --from-unit")),
            };
            commands::convert(input)?
        }
        Command::Combine {
            input,
            method,
            null,
        } => {
            let method = match method {
                MethodArg::SSum => Method::SSum,
                MethodArg::Z2 => Method::Z2,
                MethodArg::Pooled => Method::Pooled,
                MethodArg::Compare => Method::Compare,
            };
            commands::combine(input, method, *null, unit)?
        }
        Command::Calibrate { p, d } => commands::calibrate(*p, *d)?,
        Command::Curve {
            estimate,
            se,
            from,
            to,
            steps,
        } => {
            let args = CurveArgs {
                estimate: *estimate,
                se: *se,
                from: *from,
                to: *to,
                steps: *steps,
            };
            commands::curve_cmd(&args, unit)?
        }
        Command::Simulate {
            n,
            seed,
            stream,
            alphas,
            generator,
            trials,
            theta0,
        } => {
            let generator = match (generator, trials, theta0) {
                (GeneratorArg::Uniform, None, None) => NullGenerator::Uniform,
                (GeneratorArg::Uniform, _, _) => {
                    return Err(CliError::usage(
                        "--trials and --theta0 only apply to --generator binomial",
                    ))
                }
                (GeneratorArg::Binomial, Some(trials), Some(theta0)) => {
                    NullGenerator::ExactBinomial {
                        trials: *trials,
                        theta0: *theta0,
                    }
                }
                (GeneratorArg::Binomial, _, _) => {
                    return Err(CliError::usage(
                        "--generator binomial needs both --trials and --theta0",
                    ))
                }
            };
            commands::simulate_cmd(*n, RngSpec::new(*seed, *stream), alphas, generator)?
        }
    };
    let default_format = match cli.command {
        Command::Curve { .. } => Format::Csv,
        Command::Simulate { .. } => Format::Json,
        _ => Format::Table,
    };
    Ok((output, cli.format.unwrap_or(default_format)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(cli).and_then(|(output, format)| {
        output
            .write(format, &mut io::stdout().lock(), &mut io::stderr().lock())
            .map_err(|e| CliError::Io(format!("cannot write output: {e}")))
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
