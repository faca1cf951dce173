use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use arctic::commands::{cmd_curve, cmd_probs, cmd_sample, CurveDocument};
use arctic::config::{parse_alpha, Format, Geometry, RunConfig};
use arctic::verify::{check_curve_document, run_suite, Check, Report, Suite, VerifyOptions};
use arctic::{CliError, Result};
use arctic_core::geometry::r_from_beta;
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "arctic", version, about = "Arctic curves of the free-fermion six-vertex model on L-shaped domains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sampled arctic curve branches with their special points.
    Curve {
        #[command(flatten)]
        common: Common,
        /// Points per branch.
        #[arg(long, default_value_t = 2000)]
        points: usize,
    },
    /// Exact edge-inclusion probabilities and order parameters.
    Probs {
        #[command(flatten)]
        common: Common,
    },
    /// Exact random samples by domino shuffling.
    Sample {
        #[command(flatten)]
        common: Common,
    },
    /// Run a verification suite and print a report.
    Verify {
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Samples for the sampling-frequency check.
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        /// Order of the figure comparison lattice.
        #[arg(long = "N", default_value_t = 300)]
        n: usize,
        /// `json` (default) or `csv`.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a curve written with `curve --format json`.
    CheckCurve { input: PathBuf },
}

#[derive(Args)]
struct Common {
    /// Weight parameter, as a decimal or a ratio such as 1/3.
    #[arg(long, value_parser = parse_alpha, default_value = "0.5")]
    alpha: f64,
    #[arg(long = "N")]
    n: Option<usize>,
    #[arg(long = "r")]
    r: Option<usize>,
    #[arg(long = "s")]
    s: Option<usize>,
    #[arg(long = "R")]
    big_r: Option<f64>,
    #[arg(long = "Q")]
    big_q: Option<f64>,
    /// Alternative to --R at Q = 0.
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    samples: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Constant c in the fluid threshold c N^(-2/3).
    #[arg(long = "eps-const", default_value_t = 1.0)]
    eps_const: f64,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Largest lattice order accepted by probs and sample.
    #[arg(long = "max-n", default_value_t = 1024)]
    max_n: usize,
}

impl Common {
    fn config(&self, command: &str) -> Result<RunConfig> {
        let big_r = match (self.beta, self.big_r) {
            (Some(_), Some(_)) => return Err(CliError::Config("give either --beta or --R, not both".into())),
            (Some(b), None) => {
                if self.big_q.is_some_and(|q| q != 0.0) {
                    return Err(CliError::Config("--beta implies Q = 0".into()));
                }
                Some(r_from_beta(b, self.alpha))
            }
            (None, r) => r,
        };
        let cfg = RunConfig {
            command: command.into(),
            alpha: self.alpha,
            geometry: Geometry::from_flags(self.n, self.r, self.s, big_r, self.big_q)?,
            samples: self.samples,
            seed: self.seed,
            format: self.format,
            eps_const: self.eps_const,
            max_n: self.max_n,
        };
        cfg.check()?;
        Ok(cfg)
    }
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn line(c: &Check) -> String {
    format!("{} {} {}: {} ({:.2} s)", if c.passed { "PASS" } else { "FAIL" }, c.id, c.name, c.detail, c.seconds)
}

fn write_report(report: &Report, format: Format, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, report)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for c in &report.checks {
                w.serialize(c)?;
            }
            w.flush()?;
        }
        Format::Svg => return Err(CliError::Config("verify reports are json or csv".into())),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Curve { common, points } => {
            let cfg = common.config("curve")?;
            let mut out = output(&common.out)?;
            cmd_curve(&cfg, points, &mut out)?;
            out.flush()?;
        }
        Command::Probs { common } => {
            let cfg = common.config("probs")?;
            let mut out = output(&common.out)?;
            cmd_probs(&cfg, &mut out)?;
            out.flush()?;
        }
        Command::Sample { common } => {
            let cfg = common.config("sample")?;
            let mut out = output(&common.out)?;
            cmd_sample(&cfg, &mut out)?;
            out.flush()?;
        }
        Command::Verify { suite, seed, samples, n, format, out } => {
            if format == Format::Svg {
                return Err(CliError::Config("verify reports are json or csv".into()));
            }
            if n < 2 {
                return Err(CliError::Config("--N must be at least 2".into()));
            }
            let opts = VerifyOptions { seed, samples, figure_n: n };
            let report = run_suite(suite, &opts, |c| eprintln!("{}", line(c)));
            let mut w = output(&out)?;
            write_report(&report, format, &mut w)?;
            w.flush()?;
            if !report.passed {
                return Err(CliError::Verification(format!("suite {suite:?} has failing checks")));
            }
        }
        Command::CheckCurve { input } => {
            let doc: CurveDocument = serde_json::from_reader(io::BufReader::new(File::open(input)?))?;
            let c = check_curve_document(&doc);
            eprintln!("{}", line(&c));
            if !c.passed {
                return Err(CliError::Verification(c.detail));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
