//! Casimir energy of a box with d arbitrary side lengths.
//!
//! The periodic energy is a sum over j = 0..d−1 of parallel-plate terms
//! weighted by L₁⋯L_j / L_{j+1}^{j+1}, each with its own Bessel remainder.
//! The split depends on the labelling of the sides; only the total is
//! symmetric. With the lengths sorted in descending order every Bessel
//! argument is at least 2π, which keeps the remainder small.
//!
//! Neumann and Dirichlet energies are signed sums of periodic energies over
//! all non-empty subsets of the sides.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::cutoff::{plate_coefficient, BoundaryCondition, EnergyBreakdown, MAX_DIMENSION};
use crate::error::{domain, Error, Result};
use crate::lattice::sum_signed_lattice;
use crate::specfun::bessel_k;
use crate::truncation::TruncationPolicy;

/// Above this ratio of longest to shortest side the remainder underflows.
pub const ASPECT_RATIO_LIMIT: f64 = 1e4;

/// Box with arbitrary positive side lengths, stored longest first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArbitraryCavity {
    lengths: Vec<f64>,
    speed: f64,
}

impl ArbitraryCavity {
    pub fn new(lengths: &[f64], speed: f64) -> Result<Self> {
        validate_lengths(lengths)?;
        if !(speed > 0.0) || !speed.is_finite() {
            return Err(Error::InvalidCavity(format!("speed must be positive, got {speed}")));
        }
        let mut lengths = lengths.to_vec();
        lengths.sort_by(|a, b| b.total_cmp(a));
        Ok(ArbitraryCavity { lengths, speed })
    }

    /// Canonical (descending) side lengths.
    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    pub fn speed(&self) -> f64 {
        self.speed
    }

    pub fn dimension(&self) -> usize {
        self.lengths.len()
    }

    pub fn aspect_ratio(&self) -> f64 {
        self.lengths[0] / self.lengths[self.lengths.len() - 1]
    }

    pub fn extreme_aspect_ratio(&self) -> bool {
        self.aspect_ratio() > ASPECT_RATIO_LIMIT
    }
}

fn validate_lengths(lengths: &[f64]) -> Result<()> {
    if lengths.is_empty() || lengths.len() > MAX_DIMENSION as usize {
        return Err(Error::InvalidCavity(format!(
            "need between 1 and {MAX_DIMENSION} side lengths, got {}",
            lengths.len()
        )));
    }
    if let Some(bad) = lengths.iter().find(|l| !(**l > 0.0) || !l.is_finite()) {
        return Err(Error::InvalidCavity(format!("side lengths must be positive, got {bad}")));
    }
    Ok(())
}

/// Energy of an arbitrary cavity together with the ordering that was used.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArbitraryEnergy {
    pub energy: EnergyBreakdown,
    pub lengths: Vec<f64>,
    /// Set when the longest/shortest ratio exceeds [`ASPECT_RATIO_LIMIT`].
    pub extreme_aspect_ratio: bool,
}

/// R_j for the first j+1 lengths, in the order given.
///
/// Σ_{n≥1} Σ'_{ℓ∈Z^j} (2/π) (n L_{j+1})^ν K_ν((2πn/L_{j+1})ρ) / ρ^ν with
/// ρ = √Σ(ℓ_i L_i)² and ν = (j+1)/2. Zero for j = 0.
pub fn remainder_rj_arbitrary(j: usize, lengths: &[f64], policy: &TruncationPolicy) -> Result<f64> {
    if lengths.len() != j + 1 {
        return Err(domain(
            "remainder_rj_arbitrary",
            lengths.len() as f64,
            "exactly j + 1 lengths are required",
        ));
    }
    validate_lengths(lengths)?;
    if j == 0 {
        return Ok(0.0);
    }
    let nu = (j as f64 + 1.0) / 2.0;
    let last = lengths[j];
    let scales = &lengths[..j];
    let mut total = 0.0;
    for n in 1..=policy.n_max() {
        let n = f64::from(n);
        let term = |rho2: f64| {
            let rho = rho2.sqrt();
            let z = 2.0 * PI * n * rho / last;
            let k = bessel_k(nu, z).unwrap_or(0.0);
            2.0 / PI * (n * last / rho).powf(nu) * k
        };
        // The smallest ρ reachable is the shortest non-zero step.
        let rho_min = scales.iter().cloned().fold(f64::INFINITY, f64::min);
        if term(rho_min * rho_min).abs() < policy.tol() {
            break;
        }
        total += sum_signed_lattice(scales, policy.l_max(), policy.tol(), term);
    }
    Ok(total)
}

/// Periodic energy using the lengths exactly in the order given.
///
/// The total is independent of the order (up to truncation); the analytic
/// and remainder parts are not.
pub fn energy_periodic_ordered(
    lengths: &[f64],
    speed: f64,
    policy: &TruncationPolicy,
) -> Result<EnergyBreakdown> {
    validate_lengths(lengths)?;
    let mut analytic = 0.0;
    let mut remainder = 0.0;
    let mut product = 1.0;
    for (j, &next) in lengths.iter().enumerate() {
        let weight = -PI * speed * product / next.powi(j as i32 + 1);
        analytic += weight * plate_coefficient(j as u32)?;
        remainder += weight * remainder_rj_arbitrary(j, &lengths[..=j], policy)?;
        product *= next;
    }
    Ok(EnergyBreakdown::new(analytic, remainder))
}

/// Periodic energy with the lengths in canonical descending order.
pub fn energy_periodic_arbitrary(
    cavity: &ArbitraryCavity,
    policy: &TruncationPolicy,
) -> Result<ArbitraryEnergy> {
    let energy = energy_periodic_ordered(&cavity.lengths, cavity.speed, policy)?;
    Ok(ArbitraryEnergy {
        energy,
        lengths: cavity.lengths.clone(),
        extreme_aspect_ratio: cavity.extreme_aspect_ratio(),
    })
}

/// Energy for any boundary condition.
///
/// Neumann and Dirichlet use 2^{−d−1} Σ_{S≠∅} (±1)^{d+|S|} E_p(S), with the
/// subsets S enumerated in bitmask order over the original labels and each
/// subset evaluated in its own descending order.
pub fn energy_bc_arbitrary(
    cavity: &ArbitraryCavity,
    bc: BoundaryCondition,
    policy: &TruncationPolicy,
) -> Result<ArbitraryEnergy> {
    if bc == BoundaryCondition::Periodic {
        return energy_periodic_arbitrary(cavity, policy);
    }
    let d = cavity.dimension();
    let mut sum = EnergyBreakdown::new(0.0, 0.0);
    for mask in 1u32..(1u32 << d) {
        let subset: Vec<f64> = (0..d)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| cavity.lengths[i])
            .collect();
        let m = subset.len();
        let sign = match bc {
            BoundaryCondition::Dirichlet if (d + m) % 2 == 1 => -1.0,
            _ => 1.0,
        };
        // Subsets of a descending list stay descending.
        let e = energy_periodic_ordered(&subset, cavity.speed, policy)?;
        sum = sum + e.scaled(sign);
    }
    Ok(ArbitraryEnergy {
        energy: sum.scaled(2f64.powi(-(d as i32) - 1)),
        lengths: cavity.lengths.clone(),
        extreme_aspect_ratio: cavity.extreme_aspect_ratio(),
    })
}

/// Number of subsets entering the Neumann/Dirichlet sums.
pub fn subset_count(d: usize) -> usize {
    (1usize << d) - 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn construction_sorts_and_validates() {
        let c = ArbitraryCavity::new(&[1.0, 3.0, 2.0], 1.0).unwrap();
        assert_eq!(c.lengths(), &[3.0, 2.0, 1.0]);
        assert!(ArbitraryCavity::new(&[], 1.0).is_err());
        assert!(ArbitraryCavity::new(&[1.0, 0.0], 1.0).is_err());
        assert!(ArbitraryCavity::new(&[1.0, -2.0], 1.0).is_err());
        assert!(ArbitraryCavity::new(&[1.0; 17], 1.0).is_err());
        assert!(ArbitraryCavity::new(&[1.0], 0.0).is_err());
    }

    #[test]
    fn r0_is_zero() {
        let p = TruncationPolicy::default();
        assert_eq!(remainder_rj_arbitrary(0, &[2.5], &p).unwrap(), 0.0);
        assert!(remainder_rj_arbitrary(1, &[1.0], &p).is_err());
    }

    /// Direct double sum over n and ℓ ∈ Z \ {0} for lengths (1, 1).
    #[test]
    fn r1_unit_square_matches_brute_force() {
        let p = TruncationPolicy::default();
        let fast = remainder_rj_arbitrary(1, &[1.0, 1.0], &p).unwrap();
        let cap = 4 * 40i32;
        let mut brute = 0.0;
        for n in 1..=cap {
            for l in -cap..=cap {
                if l == 0 {
                    continue;
                }
                let (n, l) = (f64::from(n), f64::from(l.abs()));
                brute += 2.0 / PI * (n / l) * bessel_k(1.0, 2.0 * PI * n * l).unwrap();
            }
        }
        assert!((fast - brute).abs() < 1e-13, "{fast} vs {brute}");
        // Equal sides reduce to R_1(0).
        let rjq = crate::cutoff::remainder_rjq(1, 0, &p).unwrap();
        assert_relative_eq!(fast, rjq, max_relative = 1e-10);
    }

    #[test]
    fn single_side() {
        let p = TruncationPolicy::default();
        let c = ArbitraryCavity::new(&[2.0], 1.5).unwrap();
        let e = energy_periodic_arbitrary(&c, &p).unwrap();
        assert_relative_eq!(e.energy.total, -PI * 1.5 / (6.0 * 2.0), max_relative = 1e-14);
        let e = energy_bc_arbitrary(&c, BoundaryCondition::Dirichlet, &p).unwrap();
        assert_relative_eq!(e.energy.total, -PI * 1.5 / (24.0 * 2.0), max_relative = 1e-14);
        let plate = crate::cutoff::parallel_plate_energy_coefficient(1, 2.0, 1.5).unwrap();
        assert_relative_eq!(e.energy.total, plate, max_relative = 1e-14);
    }

    #[test]
    fn subset_counts() {
        assert_eq!(subset_count(1), 1);
        assert_eq!(subset_count(3), 7);
        assert_eq!(subset_count(10), 1023);
    }

    #[test]
    fn aspect_ratio_flag() {
        let p = TruncationPolicy::default();
        let c = ArbitraryCavity::new(&[1e5, 1.0], 1.0).unwrap();
        let e = energy_periodic_arbitrary(&c, &p).unwrap();
        assert!(e.extreme_aspect_ratio);
        assert!(e.energy.remainder.abs() < 1e-300 || e.energy.remainder == 0.0);
        assert!(e.energy.total.is_finite());
        let c = ArbitraryCavity::new(&[3.0, 1.0], 1.0).unwrap();
        assert!(!c.extreme_aspect_ratio());
    }
}
