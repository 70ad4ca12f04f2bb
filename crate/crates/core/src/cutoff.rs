//! Casimir energies in a d-dimensional box with q large sides and d−q
//! sides of equal length L.
//!
//! Each result is split into an analytic part (a sum of parallel-plate
//! terms built from Γ and ζ) and a remainder given by exponentially
//! convergent sums of K_ν. Units: ħ = 1; `speed` and `length` only enter
//! through the overall prefactor.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::lattice::{binomial, sum_positive_tuples};
use crate::specfun::{bessel_k, gamma, riemann_zeta};
use crate::truncation::TruncationPolicy;

/// Largest supported spatial dimension.
pub const MAX_DIMENSION: u32 = 16;

/// Number of photon polarizations; the electromagnetic parallel-plate
/// result is this multiple of the scalar Dirichlet one.
pub const ELECTROMAGNETIC_POLARIZATIONS: f64 = 2.0;

/// Boundary condition imposed on the small sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryCondition {
    Periodic,
    Neumann,
    Dirichlet,
}

impl BoundaryCondition {
    pub const ALL: [BoundaryCondition; 3] = [
        BoundaryCondition::Periodic,
        BoundaryCondition::Neumann,
        BoundaryCondition::Dirichlet,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            BoundaryCondition::Periodic => "periodic",
            BoundaryCondition::Neumann => "neumann",
            BoundaryCondition::Dirichlet => "dirichlet",
        }
    }
}

impl fmt::Display for BoundaryCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundaryCondition {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "periodic" | "p" => Ok(BoundaryCondition::Periodic),
            "neumann" | "n" => Ok(BoundaryCondition::Neumann),
            "dirichlet" | "d" => Ok(BoundaryCondition::Dirichlet),
            other => Err(format!("unknown boundary condition '{other}'")),
        }
    }
}

/// Box with `d − q` sides of length `length` and `q` much larger sides.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CavitySpec {
    d: u32,
    q: u32,
    length: f64,
    speed: f64,
}

impl CavitySpec {
    pub fn new(d: u32, q: u32, length: f64, speed: f64) -> Result<Self> {
        if d == 0 || d > MAX_DIMENSION {
            return Err(Error::InvalidCavity(format!(
                "dimension must lie in 1..={MAX_DIMENSION}, got {d}"
            )));
        }
        if q >= d {
            return Err(Error::InvalidCavity(format!(
                "need q ≤ d − 1 (at least one small side), got d = {d}, q = {q}"
            )));
        }
        if !(length > 0.0) || !length.is_finite() {
            return Err(Error::InvalidCavity(format!("length must be positive, got {length}")));
        }
        if !(speed > 0.0) || !speed.is_finite() {
            return Err(Error::InvalidCavity(format!("speed must be positive, got {speed}")));
        }
        Ok(CavitySpec { d, q, length, speed })
    }

    /// Unit length and unit speed.
    pub fn unit(d: u32, q: u32) -> Result<Self> {
        Self::new(d, q, 1.0, 1.0)
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn speed(&self) -> f64 {
        self.speed
    }
}

/// An energy split into its analytic part and remainder.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyBreakdown {
    pub analytic: f64,
    pub remainder: f64,
    pub total: f64,
}

impl EnergyBreakdown {
    pub fn new(analytic: f64, remainder: f64) -> Self {
        EnergyBreakdown {
            analytic,
            remainder,
            total: analytic + remainder,
        }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self::new(self.analytic * factor, self.remainder * factor)
    }

    /// 100·|remainder / total|, or `None` when the total vanishes.
    pub fn remainder_percent(&self) -> Option<f64> {
        (self.total != 0.0).then(|| 100.0 * (self.remainder / self.total).abs())
    }
}

impl std::ops::Add for EnergyBreakdown {
    type Output = EnergyBreakdown;

    fn add(self, rhs: Self) -> Self {
        EnergyBreakdown::new(self.analytic + rhs.analytic, self.remainder + rhs.remainder)
    }
}

/// Γ((j+2)/2) π^{−(j+4)/2} ζ(j+2): the dimensionless parallel-plate term.
pub fn plate_coefficient(j: u32) -> Result<f64> {
    let j = f64::from(j);
    Ok(gamma((j + 2.0) / 2.0)? * PI.powf(-(j + 4.0) / 2.0) * riemann_zeta(j + 2.0)?)
}

/// The dimensionless remainder R_j(q).
///
/// (1/π) Σ_{m=1}^{j−q} 2^{m+1} C(j−q, m) Σ_{n≥1} Σ_{ℓ∈N^m}
/// (n/|ℓ|)^{(j+1)/2} K_{(j+1)/2}(2πn|ℓ|). Zero when j = q.
pub fn remainder_rjq(j: u32, q: u32, policy: &TruncationPolicy) -> Result<f64> {
    if j < q {
        return Err(domain("remainder_rjq", f64::from(j), "requires j ≥ q"));
    }
    let free = j - q;
    let nu = (f64::from(j) + 1.0) / 2.0;
    let mut total = 0.0;
    for m in 1..=free {
        let prefactor = 2f64.powi(m as i32 + 1) * binomial(free, m) as f64 / PI;
        for n in 1..=policy.n_max() {
            let n = f64::from(n);
            let term = |norm2: f64| {
                let norm = norm2.sqrt();
                // bessel_k only fails for z ≤ 0 or bad orders, neither possible here.
                let k = bessel_k(nu, 2.0 * PI * n * norm).unwrap_or(0.0);
                prefactor * (n / norm).powf(nu) * k
            };
            if term(f64::from(m)).abs() < policy.tol() {
                break;
            }
            total += sum_positive_tuples(m as usize, policy.l_max(), policy.tol(), term);
        }
    }
    Ok(total)
}

/// Per-j weights multiplying (A_j + R_j(q)) in the energy density, with the
/// overall prefactor folded in.
fn density_weights(spec: &CavitySpec, bc: BoundaryCondition) -> Vec<(u32, f64)> {
    let (d, q) = (spec.d, spec.q);
    let v = spec.speed;
    let l = spec.length;
    (q..d)
        .map(|j| {
            let w = match bc {
                BoundaryCondition::Periodic => -PI * v / l.powi(d as i32 + 1),
                BoundaryCondition::Neumann => {
                    let multiplicity: u64 = (j - q + 1..=d - q).map(|m| binomial(d - q, m)).sum();
                    -PI * v / (2.0 * l).powi(d as i32 + 1) * multiplicity as f64
                }
                BoundaryCondition::Dirichlet => {
                    let sign = if (d + j) % 2 == 0 { 1.0 } else { -1.0 };
                    sign * PI * v / (2.0 * l).powi(d as i32 + 1)
                        * binomial(d - q - 1, j - q) as f64
                }
            };
            (j, w)
        })
        .collect()
}

/// Casimir energy density (energy per unit d-volume).
pub fn energy_density(
    spec: &CavitySpec,
    bc: BoundaryCondition,
    policy: &TruncationPolicy,
) -> Result<EnergyBreakdown> {
    let mut analytic = 0.0;
    let mut remainder = 0.0;
    for (j, w) in density_weights(spec, bc) {
        analytic += w * plate_coefficient(j)?;
        if j > spec.q {
            remainder += w * remainder_rjq(j, spec.q, policy)?;
        }
    }
    Ok(EnergyBreakdown::new(analytic, remainder))
}

/// Casimir energy divided by the product of the q large lengths.
pub fn energy_per_large_volume(
    spec: &CavitySpec,
    bc: BoundaryCondition,
    policy: &TruncationPolicy,
) -> Result<EnergyBreakdown> {
    let density = energy_density(spec, bc, policy)?;
    Ok(density.scaled(spec.length.powi((spec.d - spec.q) as i32)))
}

fn check_plate_dimension(function: &'static str, d: u32) -> Result<()> {
    if d == 0 || d > MAX_DIMENSION {
        return Err(Error::UnsupportedDimension {
            function,
            d,
            reason: "dimension must lie in 1..=16",
        });
    }
    Ok(())
}

fn check_positive(function: &'static str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(domain(function, x, "length and speed must be positive"))
    }
}

/// Dirichlet parallel-plate energy per unit plate area, separation `length`.
///
/// −2^{−d−1} (πv/L^d) Γ((d+1)/2) π^{−(d+3)/2} ζ(d+1). There is no remainder.
pub fn parallel_plate_energy_coefficient(d: u32, length: f64, speed: f64) -> Result<f64> {
    check_plate_dimension("parallel_plate_energy_coefficient", d)?;
    check_positive("parallel_plate_energy_coefficient", length)?;
    check_positive("parallel_plate_energy_coefficient", speed)?;
    Ok(-2f64.powi(-(d as i32) - 1) * PI * speed / length.powi(d as i32) * plate_coefficient(d - 1)?)
}

/// Dirichlet parallel-plate pressure −∂E/∂V (ħ = 1).
pub fn parallel_plate_pressure(d: u32, length: f64, speed: f64) -> Result<f64> {
    check_plate_dimension("parallel_plate_pressure", d)?;
    check_positive("parallel_plate_pressure", length)?;
    check_positive("parallel_plate_pressure", speed)?;
    let df = f64::from(d);
    Ok(-speed * df / (2.0 * length).powi(d as i32 + 1)
        * gamma((df + 1.0) / 2.0)?
        * PI.powf(-(df + 1.0) / 2.0)
        * riemann_zeta(df + 1.0)?)
}

/// One set of parallel plates in the periodic decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlateTerm {
    /// Number of dimensions the plates extend in besides the q large ones.
    pub j: u32,
    /// Isolated plate energy (per unit large volume).
    pub plate_energy: f64,
    /// Interaction energy with the plates already present.
    pub remainder: f64,
}

/// Periodic energy per unit large volume written as a sum over plates
/// immersed in successively more dimensions, j = q..d−1.
pub fn parallel_plate_decomposition(
    spec: &CavitySpec,
    policy: &TruncationPolicy,
) -> Result<Vec<PlateTerm>> {
    let scale = -PI * spec.speed / spec.length.powi(spec.q as i32 + 1);
    (spec.q..spec.d)
        .map(|j| {
            Ok(PlateTerm {
                j,
                plate_energy: scale * plate_coefficient(j)?,
                remainder: scale * remainder_rjq(j, spec.q, policy)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const ZETA3: f64 = 1.202_056_903_159_594_3;

    fn unit(d: u32, q: u32) -> CavitySpec {
        CavitySpec::unit(d, q).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(CavitySpec::new(0, 0, 1.0, 1.0).is_err());
        assert!(CavitySpec::new(3, 3, 1.0, 1.0).is_err());
        assert!(CavitySpec::new(17, 0, 1.0, 1.0).is_err());
        assert!(CavitySpec::new(3, 0, 0.0, 1.0).is_err());
        assert!(CavitySpec::new(3, 0, 1.0, -1.0).is_err());
        assert!(CavitySpec::new(16, 15, 2.0, 3.0).is_ok());
    }

    #[test]
    fn remainder_vanishes_for_j_equal_q() {
        let p = TruncationPolicy::default();
        for q in 0..8 {
            assert_eq!(remainder_rjq(q, q, &p).unwrap(), 0.0);
        }
        assert!(remainder_rjq(1, 2, &p).is_err());
    }

    /// Plain nested loops over n, ℓ₁, ℓ₂ without early exit or symmetry.
    fn brute_r2_0(cap: u32) -> f64 {
        let nu = 1.5;
        let mut m1 = 0.0;
        let mut m2 = 0.0;
        for n in 1..=cap {
            let n = f64::from(n);
            for a in 1..=cap {
                let a = f64::from(a);
                m1 += (n / a).powf(nu) * bessel_k(nu, 2.0 * PI * n * a).unwrap();
                for b in 1..=cap {
                    let r = (a * a + f64::from(b * b)).sqrt();
                    m2 += (n / r).powf(nu) * bessel_k(nu, 2.0 * PI * n * r).unwrap();
                }
            }
        }
        (4.0 * 2.0 * m1 + 8.0 * m2) / PI
    }

    #[test]
    fn remainder_r2_matches_brute_force() {
        let p = TruncationPolicy::default();
        let fast = remainder_rjq(2, 0, &p).unwrap();
        let brute = brute_r2_0(4 * 12);
        // Terms below the 1e-14 floor are dropped by the fast path.
        assert!((fast - brute).abs() < 1e-13, "{fast} vs {brute}");
        // Frozen from the brute-force sum above.
        assert_relative_eq!(brute, 2.865_383_301_287_9e-3, max_relative = 1e-12);
    }

    #[test]
    fn remainder_r2_truncation_stable() {
        let p = TruncationPolicy::default();
        let a = remainder_rjq(2, 0, &p).unwrap();
        let b = remainder_rjq(2, 0, &p.doubled()).unwrap();
        assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn cube_density_analytic_part() {
        let p = TruncationPolicy::default();
        let e = energy_density(&unit(3, 0), BoundaryCondition::Periodic, &p).unwrap();
        let expected = -PI / 6.0 - ZETA3 / (2.0 * PI) - PI * PI / 90.0;
        assert_relative_eq!(e.analytic, expected, max_relative = 1e-13);
        assert!((e.total + 0.8375).abs() < 1e-3, "total {}", e.total);
        assert_eq!(e.total, e.analytic + e.remainder);
    }

    #[test]
    fn one_dimensional_ring() {
        let p = TruncationPolicy::default();
        let e = energy_density(&unit(1, 0), BoundaryCondition::Periodic, &p).unwrap();
        assert_relative_eq!(e.total, -PI / 6.0, max_relative = 1e-14);
        assert_eq!(e.remainder, 0.0);
    }

    #[test]
    fn density_scales_with_length_and_speed() {
        let p = TruncationPolicy::default();
        for bc in BoundaryCondition::ALL {
            let base = energy_density(&unit(4, 1), bc, &p).unwrap();
            let spec = CavitySpec::new(4, 1, 2.0, 3.0).unwrap();
            let e = energy_density(&spec, bc, &p).unwrap();
            assert_relative_eq!(e.total, base.total * 3.0 / 2f64.powi(5), max_relative = 1e-13);
        }
    }

    #[test]
    fn per_large_volume_relation() {
        let p = TruncationPolicy::default();
        let spec = unit(2, 0);
        let dens = energy_density(&spec, BoundaryCondition::Periodic, &p).unwrap();
        let per = energy_per_large_volume(&spec, BoundaryCondition::Periodic, &p).unwrap();
        assert_eq!(per.total, dens.total);
        let spec = CavitySpec::new(3, 1, 2.0, 1.0).unwrap();
        let dens = energy_density(&spec, BoundaryCondition::Neumann, &p).unwrap();
        let per = energy_per_large_volume(&spec, BoundaryCondition::Neumann, &p).unwrap();
        assert_relative_eq!(per.total, dens.total * 4.0, max_relative = 1e-14);
    }

    #[test]
    fn plate_limit_is_parallel_plate_energy() {
        let p = TruncationPolicy::default();
        for d in 1..=8 {
            let e = energy_per_large_volume(&unit(d, d - 1), BoundaryCondition::Dirichlet, &p)
                .unwrap();
            let plate = parallel_plate_energy_coefficient(d, 1.0, 1.0).unwrap();
            assert_relative_eq!(e.total, plate, max_relative = 1e-14);
            assert_eq!(e.remainder, 0.0);
        }
    }

    #[test]
    fn parallel_plate_closed_forms() {
        assert_relative_eq!(
            parallel_plate_energy_coefficient(3, 1.0, 1.0).unwrap(),
            -PI * PI / 1440.0,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            parallel_plate_energy_coefficient(1, 1.0, 1.0).unwrap(),
            -PI / 24.0,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            parallel_plate_pressure(3, 1.0, 1.0).unwrap(),
            -PI * PI / 480.0,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            ELECTROMAGNETIC_POLARIZATIONS * parallel_plate_pressure(3, 1.0, 1.0).unwrap(),
            -PI * PI / 240.0,
            max_relative = 1e-13
        );
        // E = −π/(24L) in one dimension, so P = −dE/dL = −π/(24L²).
        assert_relative_eq!(
            parallel_plate_pressure(1, 1.0, 1.0).unwrap(),
            -PI / 24.0,
            max_relative = 1e-13
        );
        assert!(parallel_plate_pressure(0, 1.0, 1.0).is_err());
    }

    #[test]
    fn pressure_is_minus_volume_derivative() {
        // P = −(1/A) ∂E/∂L with E = c·A/L^d, checked by central differences.
        for d in 1..=6 {
            let h = 1e-5;
            let e = |l: f64| parallel_plate_energy_coefficient(d, l, 1.0).unwrap();
            let fd = -(e(1.0 + h) - e(1.0 - h)) / (2.0 * h);
            let p = parallel_plate_pressure(d, 1.0, 1.0).unwrap();
            assert_relative_eq!(p, fd, max_relative = 1e-8);
        }
    }

    #[test]
    fn decomposition_sums_to_periodic_energy() {
        let p = TruncationPolicy::default();
        let spec = unit(3, 0);
        let terms = parallel_plate_decomposition(&spec, &p).unwrap();
        assert_eq!(terms.len(), 3);
        assert_eq!(terms[0].j, 0);
        assert_eq!(terms[0].remainder, 0.0);
        let sum: f64 = terms.iter().map(|t| t.plate_energy + t.remainder).sum();
        let e = energy_per_large_volume(&spec, BoundaryCondition::Periodic, &p).unwrap();
        assert_relative_eq!(sum, e.total, max_relative = 1e-14);
    }

    #[test]
    fn boundary_condition_parsing() {
        assert_eq!("Periodic".parse::<BoundaryCondition>(), Ok(BoundaryCondition::Periodic));
        assert_eq!("dirichlet".parse::<BoundaryCondition>(), Ok(BoundaryCondition::Dirichlet));
        assert!("robin".parse::<BoundaryCondition>().is_err());
    }
}
