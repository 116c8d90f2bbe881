//! `qpdeg`: spectra and level degeneracies of deformed oscillators as CSV
//! or JSON.
//!
//! Exit status is 0 on success, 2 for invalid arguments or parameters
//! outside their domain, and 3 when a root search fails.

mod output;

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qpdeg::bm::{degeneracy_angle, AngleFamily};
use qpdeg::qp::{intersect_constraint, trace_curve};
use qpdeg::spectrum::{energy_bm, spectrum_table};
use qpdeg::td::{solve_degeneracy, table_e0_em};
use qpdeg::{CurveSpec, DegeneracyPair, Error, Oscillator, PhaseDeformation, RootResult};
use serde::Serialize;

use output::{write_rows, BmRow, CurveRow, Format, Real, RootRow, SpectrumRow};

#[derive(Parser)]
#[command(
    name = "qpdeg",
    version,
    about = "Accidental degeneracies of deformed oscillators"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,
    /// Residual tolerance for root searches.
    #[arg(long, default_value_t = 1e-12, global = true)]
    tol: f64,
    /// Number of curve samples.
    #[arg(long, default_value_t = 256, global = true)]
    samples: usize,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Bm,
    Td,
    Qp,
}

#[derive(Subcommand)]
enum Command {
    /// Energies E_0..E_{n_max} of one oscillator.
    Spectrum {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, allow_negative_numbers = true)]
        q: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        p: Option<f64>,
        /// BM angle is π·theta_num/theta_den.
        #[arg(long, allow_negative_numbers = true)]
        theta_num: Option<i64>,
        #[arg(long)]
        theta_den: Option<i64>,
        #[arg(long)]
        n_max: u32,
    },
    /// TD deformation q making E_m = E_{m+k}.
    TdSolve {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        k: u32,
    },
    /// Sampled curve E_l = E_h in the (q, p) square.
    Curve {
        #[arg(long, value_parser = parse_pair)]
        pair: (u32, u32),
    },
    /// Crossing of the E_l = E_h curve with p = q^exponent.
    Intersect {
        #[arg(long, value_parser = parse_pair)]
        pair: (u32, u32),
        #[arg(long)]
        exponent: f64,
    },
    /// BM angle making E_n = E_{n+r} on branch k.
    Bm {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        #[arg(long, allow_negative_numbers = true, value_parser = clap::value_parser!(i64).range(-10..=10))]
        k: i64,
    },
    /// TD roots q_m of E_0 = E_m.
    Table {
        #[arg(long, value_delimiter = ',', required = true)]
        m: Vec<u32>,
    },
}

fn parse_pair(s: &str) -> Result<(u32, u32), String> {
    let (l, h) = s.split_once(',').ok_or("expected l,h")?;
    let parse = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("{t:?}: {e}"));
    Ok((parse(l)?, parse(h)?))
}

enum Failure {
    Invalid(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            Failure::Numerical(e.to_string())
        } else {
            Failure::Invalid(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Invalid(format!("output: {e}"))
    }
}

fn required<T>(value: Option<T>, flag: &str, kind: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::Invalid(format!("--kind {kind} requires --{flag}")))
}

fn root_row(m: u32, k: u32, r: &RootResult) -> RootRow {
    RootRow {
        m,
        k,
        q: Real(r.value),
        residual: Real(r.residual),
        iterations: r.iterations,
    }
}

fn curve_spec(pair: (u32, u32)) -> Result<CurveSpec, Failure> {
    let spec = CurveSpec::new(pair.0, pair.1)?;
    if !spec.is_established_family() {
        eprintln!(
            "note: ({}, {}) is neither E_0 = E_m nor E_m = E_m+1; the curve is traced numerically \
             without a guarantee that it is single-valued",
            pair.0, pair.1
        );
    }
    Ok(spec)
}

fn emit<R: Serialize>(common: &Common, rows: &[R]) -> Result<(), Failure> {
    let sink: Box<dyn Write> = match &common.out {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout().lock()),
    };
    Ok(write_rows(sink, common.format, rows)?)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let common = &cli.common;
    let tol = common.tol;
    match cli.command {
        Command::Spectrum {
            kind,
            q,
            p,
            theta_num,
            theta_den,
            n_max,
        } => {
            let osc = match kind {
                Kind::Td => Oscillator::td(required(q, "q", "td")?)?,
                Kind::Qp => Oscillator::qp(required(q, "q", "qp")?, required(p, "p", "qp")?)?,
                Kind::Bm => {
                    let num = required(theta_num, "theta-num", "bm")?;
                    let den = required(theta_den, "theta-den", "bm")?;
                    Oscillator::Bm(PhaseDeformation::from_pi_fraction(num, den)?)
                }
            };
            let rows: Vec<_> = spectrum_table(n_max, &osc)?
                .into_iter()
                .map(|l| SpectrumRow {
                    n: l.n,
                    energy: Real(l.energy),
                })
                .collect();
            emit(common, &rows)
        }
        Command::TdSolve { m, k } => {
            let root = solve_degeneracy(DegeneracyPair::new(m, k)?, tol)?;
            emit(common, &[root_row(m, k, &root.root)])
        }
        Command::Curve { pair } => {
            let spec = curve_spec(pair)?;
            let rows: Vec<_> = trace_curve(spec, common.samples, tol)?
                .into_iter()
                .map(|s| CurveRow {
                    q: Real(s.q),
                    p: Real(s.p),
                    residual: Real(s.residual),
                    dpdq: Real(s.dpdq),
                })
                .collect();
            emit(common, &rows)
        }
        Command::Intersect { pair, exponent } => {
            let spec = curve_spec(pair)?;
            let root = intersect_constraint(spec, exponent, tol)?;
            emit(common, &[root_row(pair.0, pair.1 - pair.0, &root)])
        }
        Command::Bm { n, r, k } => {
            let fam = AngleFamily::new(n, r, k)?;
            let d = degeneracy_angle(fam);
            let (e_low, e_high) = (energy_bm(n, d), energy_bm(n + r, d));
            emit(
                common,
                &[BmRow {
                    theta: Real(d.theta()),
                    n,
                    r,
                    e_low: Real(e_low),
                    e_high: Real(e_high),
                    diff: Real(e_high - e_low),
                }],
            )
        }
        Command::Table { m } => {
            let rows: Vec<_> = table_e0_em(&m, tol)?
                .iter()
                .map(|(m, root)| root_row(0, *m, &root.root))
                .collect();
            emit(common, &rows)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
