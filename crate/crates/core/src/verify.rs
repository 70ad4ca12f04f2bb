//! Self-check suite run by `casimir verify`.
//!
//! Every check compares two independently computed quantities and records
//! the observed discrepancy next to the tolerance it was held to.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arbitrary::{energy_bc_arbitrary, ArbitraryCavity};
use crate::cutoff::{energy_density, energy_per_large_volume, parallel_plate_pressure, remainder_rjq};
use crate::epstein::{casimir_density_from_zeta, z, EpsteinEval};
use crate::oracle::{r_dn_enumerate, r_dn_formula, z_direct};
use crate::{BoundaryCondition, CavitySpec, Result, TruncationPolicy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Quick,
    Full,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Quick => "quick",
            Level::Full => "full",
        })
    }
}

impl FromStr for Level {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "quick" => Ok(Level::Quick),
            "full" => Ok(Level::Full),
            other => Err(format!("unknown level `{other}` (expected quick or full)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Largest discrepancy seen, in the units named by `detail`.
    pub observed: f64,
    pub tolerance: f64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub level: Level,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

/// Evaluator for Z_d(s), swappable so tests can feed in a corrupted one.
pub type ZetaFn<'a> = dyn Fn(u32, f64) -> Result<EpsteinEval> + 'a;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn check(name: &str, observed: f64, tolerance: f64, detail: &str) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        passed: observed.is_finite() && observed <= tolerance,
        observed,
        tolerance,
        detail: detail.to_string(),
    }
}

fn failed(name: &str, err: crate::Error) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        passed: false,
        observed: f64::NAN,
        tolerance: 0.0,
        detail: format!("error: {err}"),
    }
}

fn guarded(name: &str, f: impl FnOnce() -> Result<CheckResult>) -> CheckResult {
    f().unwrap_or_else(|e| failed(name, e))
}

/// Runs the suite with the library's own Epstein evaluator.
pub fn run(level: Level, policy: &TruncationPolicy) -> VerifyReport {
    run_with(level, policy, &|d, s| z(d, s, policy))
}

/// Runs the suite with a caller-supplied Z_d(s).
pub fn run_with(level: Level, policy: &TruncationPolicy, zeta: &ZetaFn<'_>) -> VerifyReport {
    let radius = match level {
        Level::Quick => 100,
        Level::Full => 400,
    };
    let mut checks = vec![
        guarded("r_d(n) divisor formulas", check_counts),
        guarded("Epstein closed forms vs lattice sums", || check_oracle(radius, zeta)),
        guarded("zeta route vs cut-off route", || check_cross_method(policy, zeta)),
        guarded("hypercube densities d = 3, 4, 5", || check_known_densities(policy)),
        guarded("parallel-plate pressure", check_plate_pressure),
    ];
    if level == Level::Full {
        checks.push(guarded("remainder cap stability", check_cap_stability));
        checks.push(guarded("equal-length arbitrary cavity", || {
            check_equal_lengths(policy)
        }));
    }
    VerifyReport {
        level,
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

fn check_counts() -> Result<CheckResult> {
    let mut mismatches = 0u32;
    for d in [2, 4, 6, 8] {
        for n in 1..=200 {
            if r_dn_formula(d, n)? != r_dn_enumerate(d, n)? {
                mismatches += 1;
            }
        }
    }
    Ok(check(
        "r_d(n) divisor formulas",
        f64::from(mismatches),
        0.0,
        "mismatched counts, d ∈ {2,4,6,8}, n ≤ 200",
    ))
}

const ORACLE_POINTS: [(u32, f64); 7] = [
    (2, 3.0),
    (4, 3.0),
    (6, 4.0),
    (8, 5.0),
    (3, 2.0),
    (5, 3.0),
    (7, 4.0),
];

fn check_oracle(radius: u32, zeta: &ZetaFn<'_>) -> Result<CheckResult> {
    // Discrepancy in units of the rigorous tail bound, floored at 1e-12
    // relative for rounding.
    let mut worst: f64 = 0.0;
    for (d, s) in ORACLE_POINTS {
        let direct = z_direct(d, s, radius)?;
        let got = zeta(d, s)?.total;
        let allowed = direct.tail_bound + 1e-12 * direct.value.abs();
        worst = worst.max((got - direct.value).abs() / allowed);
    }
    Ok(check(
        "Epstein closed forms vs lattice sums",
        worst,
        1.0,
        &format!("discrepancy / tail bound at radius {radius}"),
    ))
}

fn check_cross_method(policy: &TruncationPolicy, zeta: &ZetaFn<'_>) -> Result<CheckResult> {
    let mut worst: f64 = 0.0;
    for d in 2..=8u32 {
        let s = (f64::from(d) + 1.0) / 2.0;
        let prefactor =
            -PI / 2.0 * crate::specfun::gamma(s)? * PI.powf(-(f64::from(d) + 3.0) / 2.0);
        let from_zeta = prefactor * zeta(d, s)?.total;
        let cut = energy_density(&CavitySpec::unit(d, 0)?, BoundaryCondition::Periodic, policy)?;
        worst = worst.max(rel(from_zeta, cut.total));
    }
    Ok(check(
        "zeta route vs cut-off route",
        worst,
        1e-6,
        "relative difference of periodic hypercube densities, d = 2..8",
    ))
}

fn check_known_densities(policy: &TruncationPolicy) -> Result<CheckResult> {
    let mut worst: f64 = 0.0;
    for (d, want) in [(3, -0.837537), (4, -0.932077), (5, -1.02283)] {
        let got = casimir_density_from_zeta(d, 1.0, 1.0, policy)?.total;
        worst = worst.max((got - want).abs());
    }
    Ok(check(
        "hypercube densities d = 3, 4, 5",
        worst,
        1e-4,
        "absolute difference from the published values",
    ))
}

fn check_plate_pressure() -> Result<CheckResult> {
    let got = parallel_plate_pressure(3, 1.0, 1.0)?;
    Ok(check(
        "parallel-plate pressure",
        (got + PI * PI / 480.0).abs(),
        1e-12,
        "absolute difference from −π²/480",
    ))
}

fn check_cap_stability() -> Result<CheckResult> {
    let small = TruncationPolicy::new(1e-20, 9, 9)?;
    let large = TruncationPolicy::new(1e-20, 20, 20)?;
    let mut worst: f64 = 0.0;
    for j in 1..=10 {
        for q in 0..j {
            let a = remainder_rjq(j, q, &small)?;
            let b = remainder_rjq(j, q, &large)?;
            worst = worst.max((a - b).abs() / b.abs());
        }
    }
    Ok(check(
        "remainder cap stability",
        worst,
        1e-8,
        "relative change of R_j(q), j ≤ 10, caps 9 → 20",
    ))
}

fn check_equal_lengths(policy: &TruncationPolicy) -> Result<CheckResult> {
    let mut worst: f64 = 0.0;
    for d in 1..=5u32 {
        let cavity = ArbitraryCavity::new(&vec![1.0; d as usize], 1.0)?;
        let spec = CavitySpec::unit(d, 0)?;
        for bc in BoundaryCondition::ALL {
            let a = energy_bc_arbitrary(&cavity, bc, policy)?.energy.total;
            let b = energy_per_large_volume(&spec, bc, policy)?.total;
            worst = worst.max(rel(a, b));
        }
    }
    Ok(check(
        "equal-length arbitrary cavity",
        worst,
        1e-10,
        "relative difference from the equal-side results, d ≤ 5",
    ))
}
