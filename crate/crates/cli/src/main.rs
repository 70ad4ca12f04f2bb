//! `casimir`: Casimir energy tables, arbitrary cavities and the self-check
//! suite.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use casimir::arbitrary::{energy_bc_arbitrary, ArbitraryCavity};
use casimir::cutoff::{energy_density, MAX_DIMENSION};
use casimir::epstein::{casimir_density_from_zeta, MAX_EPSTEIN_DIMENSION};
use casimir::verify::{self, Level};
use casimir::{BoundaryCondition, CavitySpec, EnergyBreakdown, TruncationPolicy};

use output::{render, to_json, Cell, Format};

const TABLE_HEADER: [&str; 7] = ["d", "q", "bc", "analytic", "remainder", "total", "remainder_pct"];
const EPSTEIN_HEADER: [&str; 6] = [
    "d",
    "analytic",
    "remainder",
    "total",
    "remainder_pct",
    "cutoff_remainder_pct",
];
const ARBITRARY_HEADER: [&str; 7] = [
    "lengths",
    "bc",
    "analytic",
    "remainder",
    "total",
    "remainder_pct",
    "extreme_aspect_ratio",
];

#[derive(Parser)]
#[command(name = "casimir", version, about = "Casimir energies of scalar fields in rectangular cavities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Energy densities for d−q small sides of length 1 and q large sides.
    Density {
        /// Dimensions: `3`, `1-10` or `2,4,6`.
        #[arg(long, default_value = "1-10")]
        d: String,
        /// Large dimensions; all q < d when omitted.
        #[arg(long)]
        q: Option<String>,
        #[arg(long, default_value = "all")]
        bc: BcChoice,
        #[command(flatten)]
        common: Common,
    },
    /// Remainder share of the hypercube (q = 0) densities.
    RemainderShare {
        #[arg(long, default_value = "1-10")]
        d: String,
        #[arg(long, default_value = "all")]
        bc: BcChoice,
        #[command(flatten)]
        common: Common,
    },
    /// Periodic hypercube densities from Epstein zeta functions.
    Epstein {
        #[arg(long, default_value = "2-8")]
        d: String,
        #[command(flatten)]
        common: Common,
    },
    /// Energy of a box with arbitrary side lengths.
    Arbitrary {
        /// Comma-separated positive side lengths.
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        lengths: Vec<f64>,
        #[arg(long, default_value = "periodic")]
        bc: BcChoice,
        #[arg(long, default_value_t = 1.0)]
        speed: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Run the self-check suite and print a JSON report.
    Verify {
        #[arg(long, default_value = "quick")]
        level: Level,
        #[arg(long, env = "CASIMIR_TOL", default_value_t = TruncationPolicy::DEFAULT_TOL)]
        tol: f64,
    },
}

#[derive(Args)]
struct Common {
    /// Term floor for the Bessel remainder sums.
    #[arg(long, env = "CASIMIR_TOL", default_value_t = TruncationPolicy::DEFAULT_TOL)]
    tol: f64,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Significant digits in the output.
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u8).range(1..=17))]
    digits: u8,
    /// Worker threads; rows are always printed in the same order.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: u16,
}

#[derive(Debug, Clone, Copy)]
enum BcChoice {
    One(BoundaryCondition),
    All,
}

impl std::str::FromStr for BcChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(BcChoice::All);
        }
        s.parse::<BoundaryCondition>().map(BcChoice::One).map_err(|e| e.to_string())
    }
}

impl BcChoice {
    fn conditions(self) -> Vec<BoundaryCondition> {
        match self {
            BcChoice::One(bc) => vec![bc],
            BcChoice::All => BoundaryCondition::ALL.to_vec(),
        }
    }
}

struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

/// Parses `3`, `1-10` or `2,4,6`, each value within `lo..=hi`.
fn parse_range(text: &str, lo: u32, hi: u32, what: &str) -> Result<Vec<u32>, UsageError> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        let (a, b) = match part.split_once('-') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (part, part),
        };
        let a: u32 = a.parse().map_err(|_| UsageError(format!("bad {what} value `{part}`")))?;
        let b: u32 = b.parse().map_err(|_| UsageError(format!("bad {what} value `{part}`")))?;
        if a > b || a < lo || b > hi {
            return Err(UsageError(format!("{what} range `{part}` must lie within {lo}..={hi}")));
        }
        out.extend(a..=b);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn policy(tol: f64) -> Result<TruncationPolicy, UsageError> {
    Ok(TruncationPolicy::with_tol(tol)?)
}

/// Evaluates cells on `jobs` threads and returns results in input order.
fn evaluate<T, R, F>(items: &[T], jobs: u16, f: F) -> Result<Vec<R>, UsageError>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Result<R, casimir::Error> + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(usize::from(jobs))
        .build()
        .map_err(|e| UsageError(format!("cannot start worker threads: {e}")))?;
    let results: Vec<_> = pool.install(|| items.par_iter().map(&f).collect());
    results.into_iter().map(|r| r.map_err(UsageError::from)).collect()
}

fn table_row(d: u32, q: u32, bc: BoundaryCondition, e: &EnergyBreakdown) -> Vec<Cell> {
    vec![
        Cell::Int(d.into()),
        Cell::Int(q.into()),
        Cell::Text(bc.as_str().to_string()),
        Cell::Num(e.analytic),
        Cell::Num(e.remainder),
        Cell::Num(e.total),
        Cell::Maybe(e.remainder_percent()),
    ]
}

fn density_table(
    cells: Vec<(u32, u32, BoundaryCondition)>,
    common: &Common,
) -> Result<String, UsageError> {
    if cells.is_empty() {
        return Err(UsageError("no valid (d, q) combination in the requested ranges".into()));
    }
    let p = policy(common.tol)?;
    let energies = evaluate(&cells, common.jobs, |&(d, q, bc)| {
        energy_density(&CavitySpec::unit(d, q)?, bc, &p)
    })?;
    let rows: Vec<_> = cells
        .iter()
        .zip(&energies)
        .map(|(&(d, q, bc), e)| table_row(d, q, bc, e))
        .collect();
    Ok(render(&TABLE_HEADER, &rows, common.format, common.digits.into()))
}

fn cmd_density(d: &str, q: Option<&str>, bc: BcChoice, common: &Common) -> Result<String, UsageError> {
    let ds = parse_range(d, 1, MAX_DIMENSION, "d")?;
    let qs = q
        .map(|q| parse_range(q, 0, MAX_DIMENSION - 1, "q"))
        .transpose()?;
    let mut cells = Vec::new();
    for &d in &ds {
        let q_values: Vec<u32> = match &qs {
            Some(list) => list.iter().copied().filter(|&q| q < d).collect(),
            None => (0..d).collect(),
        };
        for q in q_values {
            for bc in bc.conditions() {
                cells.push((d, q, bc));
            }
        }
    }
    density_table(cells, common)
}

fn cmd_remainder_share(d: &str, bc: BcChoice, common: &Common) -> Result<String, UsageError> {
    let ds = parse_range(d, 1, MAX_DIMENSION, "d")?;
    let cells = ds
        .iter()
        .flat_map(|&d| bc.conditions().into_iter().map(move |bc| (d, 0, bc)))
        .collect();
    density_table(cells, common)
}

fn cmd_epstein(d: &str, common: &Common) -> Result<String, UsageError> {
    let ds = parse_range(d, 2, MAX_EPSTEIN_DIMENSION, "d")?;
    let p = policy(common.tol)?;
    let results = evaluate(&ds, common.jobs, |&d| {
        let zeta = casimir_density_from_zeta(d, 1.0, 1.0, &p)?;
        let cut = energy_density(&CavitySpec::unit(d, 0)?, BoundaryCondition::Periodic, &p)?;
        Ok((zeta, cut.remainder_percent()))
    })?;
    let rows: Vec<_> = ds
        .iter()
        .zip(&results)
        .map(|(&d, (z, cut_pct))| {
            vec![
                Cell::Int(d.into()),
                Cell::Num(z.analytic),
                Cell::Num(z.remainder),
                Cell::Num(z.total),
                Cell::Maybe(z.remainder_percent()),
                Cell::Maybe(*cut_pct),
            ]
        })
        .collect();
    Ok(render(&EPSTEIN_HEADER, &rows, common.format, common.digits.into()))
}

fn cmd_arbitrary(lengths: &[f64], bc: BcChoice, speed: f64, common: &Common) -> Result<String, UsageError> {
    let p = policy(common.tol)?;
    let cavity = ArbitraryCavity::new(lengths, speed)?;
    let conditions = bc.conditions();
    let results = evaluate(&conditions, common.jobs, |&bc| energy_bc_arbitrary(&cavity, bc, &p))?;
    let rows: Vec<_> = conditions
        .iter()
        .zip(&results)
        .map(|(bc, r)| {
            let canonical: Vec<String> = r
                .lengths
                .iter()
                .map(|l| output::format_number(*l, common.digits.into()))
                .collect();
            vec![
                Cell::Text(canonical.join(";")),
                Cell::Text(bc.as_str().to_string()),
                Cell::Num(r.energy.analytic),
                Cell::Num(r.energy.remainder),
                Cell::Num(r.energy.total),
                Cell::Maybe(r.energy.remainder_percent()),
                Cell::Flag(r.extreme_aspect_ratio),
            ]
        })
        .collect();
    Ok(render(&ARBITRARY_HEADER, &rows, common.format, common.digits.into()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Density { d, q, bc, common } => cmd_density(d, q.as_deref(), *bc, common),
        Command::RemainderShare { d, bc, common } => cmd_remainder_share(d, *bc, common),
        Command::Epstein { d, common } => cmd_epstein(d, common),
        Command::Arbitrary {
            lengths,
            bc,
            speed,
            common,
        } => cmd_arbitrary(lengths, *bc, *speed, common),
        Command::Verify { level, tol } => {
            let p = match policy(*tol) {
                Ok(p) => p,
                Err(UsageError(msg)) => {
                    eprintln!("error: {msg}");
                    return ExitCode::from(2);
                }
            };
            let report = verify::run(*level, &p);
            print!("{}", to_json(&report));
            return if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
