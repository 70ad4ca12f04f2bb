//! Brute-force ground truth for the Epstein zeta closed forms.
//!
//! Lattice sums are taken over the Euclidean ball |n| ≤ R using exact
//! representation counts r_d(n) for n ≤ R², built by convolving the
//! one-dimensional theta series. The tail beyond the ball is estimated by
//! Abel summation with the exact count N(R), and enclosed rigorously using
//! V(r − h)^d ≤ N(r) ≤ V(r + h)^d, h = √d/2 (unit cubes around lattice
//! points lie inside the ball of radius r + h and cover the ball of radius
//! r − h).

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::lattice::binomial;
use crate::specfun::gamma;

/// Largest dimension handled by the oracle.
pub const MAX_ORACLE_DIMENSION: u32 = 8;
/// Largest n accepted by [`r_dn_enumerate`].
pub const MAX_ENUMERATED_N: u64 = 10_000;
const MIN_RADIUS: u32 = 10;
const MAX_RADIUS: u32 = 1000;

/// A truncated lattice sum with a rigorous bound on the truncation error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatticeSumResult {
    pub value: f64,
    /// |exact − value| ≤ tail_bound.
    pub tail_bound: f64,
    pub radius: u32,
}

impl LatticeSumResult {
    /// Whether `x` lies within `tail_bound` of `value`, allowing `slack`
    /// relative for floating-point rounding.
    pub fn contains(&self, x: f64, slack: f64) -> bool {
        (x - self.value).abs() <= self.tail_bound + slack * self.value.abs()
    }
}

fn check_dimension(function: &'static str, d: u32) -> Result<()> {
    if d == 0 || d > MAX_ORACLE_DIMENSION {
        return Err(Error::UnsupportedDimension {
            function,
            d,
            reason: "dimensions 1 to 8 are supported",
        });
    }
    Ok(())
}

fn check_radius(function: &'static str, radius: u32) -> Result<()> {
    if !(MIN_RADIUS..=MAX_RADIUS).contains(&radius) {
        return Err(domain(function, f64::from(radius), "radius must lie in 10..=1000"));
    }
    Ok(())
}

/// counts[n] = #{x ∈ Z^d : |x|² = n} for 0 ≤ n ≤ n_max.
///
/// With `positive` set only vectors with every coordinate ≥ 1 are counted.
pub fn representation_counts(d: u32, n_max: usize, positive: bool) -> Vec<u64> {
    let mut squares = Vec::new();
    let mut k = if positive { 1usize } else { 0 };
    while k * k <= n_max {
        squares.push((k * k, if k == 0 || positive { 1u64 } else { 2 }));
        k += 1;
    }
    let mut counts = vec![0u64; n_max + 1];
    counts[0] = 1;
    for _ in 0..d {
        let mut next = vec![0u64; n_max + 1];
        for (n, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for &(sq, w) in &squares {
                if n + sq > n_max {
                    break;
                }
                next[n + sq] += w * c;
            }
        }
        counts = next;
    }
    counts
}

/// r_d(n) by exhaustive counting.
pub fn r_dn_enumerate(d: u32, n: u64) -> Result<u64> {
    check_dimension("r_dn_enumerate", d)?;
    if n == 0 || n > MAX_ENUMERATED_N {
        return Err(domain("r_dn_enumerate", n as f64, "requires 0 < n ≤ 10⁴"));
    }
    Ok(representation_counts(d, n as usize, false)[n as usize])
}

/// Non-principal character mod 4.
fn chi(k: u64) -> i64 {
    match k % 4 {
        1 => 1,
        3 => -1,
        _ => 0,
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut k = 1;
    while k * k <= n {
        if n.is_multiple_of(k) {
            small.push(k);
            if k * k != n {
                large.push(n / k);
            }
        }
        k += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// r_d(n) from the divisor-sum formulas for d ∈ {2, 4, 6, 8}.
pub fn r_dn_formula(d: u32, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(domain("r_dn_formula", 0.0, "requires n ≥ 1"));
    }
    let divs = divisors(n);
    let value: i128 = match d {
        2 => 4 * divs.iter().map(|&k| i128::from(chi(k))).sum::<i128>(),
        4 => 8 * divs.iter().filter(|&&k| k % 4 != 0).map(|&k| k as i128).sum::<i128>(),
        6 => divs
            .iter()
            .map(|&k| {
                let k2 = (k as i128) * (k as i128);
                16 * i128::from(chi(n / k)) * k2 - 4 * i128::from(chi(k)) * k2
            })
            .sum(),
        8 => {
            16 * divs
                .iter()
                .map(|&k| {
                    let sign = if (n + k).is_multiple_of(2) { 1 } else { -1 };
                    sign * (k as i128).pow(3)
                })
                .sum::<i128>()
        }
        _ => {
            return Err(Error::UnsupportedDimension {
                function: "r_dn_formula",
                d,
                reason: "formulas exist for d = 2, 4, 6, 8",
            })
        }
    };
    u64::try_from(value).map_err(|_| domain("r_dn_formula", n as f64, "negative count"))
}

/// Volume of the unit d-ball.
fn unit_ball_volume(d: u32) -> Result<f64> {
    let half = f64::from(d) / 2.0;
    Ok(std::f64::consts::PI.powf(half) / gamma(half + 1.0)?)
}

/// ∫_R^∞ (r + shift)^d r^{−2s−1} dr, expanded binomially.
fn shifted_moment(d: u32, s: f64, radius: f64, shift: f64) -> f64 {
    (0..=d)
        .map(|k| {
            binomial(d, k) as f64 * shift.powi((d - k) as i32) * radius.powf(f64::from(k) - 2.0 * s)
                / (2.0 * s - f64::from(k))
        })
        .sum()
}

/// Bounds on Σ_{|n|>R} |n|^{−2s} over Z^d given N(R) = #{|n| ≤ R}, origin
/// included. Returns (estimate, lower, upper).
fn tail_enclosure(d: u32, s: f64, radius: f64, count: f64) -> Result<(f64, f64, f64)> {
    let v = unit_ball_volume(d)?;
    let h = f64::from(d).sqrt() / 2.0;
    let boundary = -radius.powf(-2.0 * s) * count;
    let estimate = boundary + 2.0 * s * v * radius.powf(f64::from(d) - 2.0 * s) / (2.0 * s - f64::from(d));
    let lower = boundary + 2.0 * s * v * shifted_moment(d, s, radius, -h);
    let upper = boundary + 2.0 * s * v * shifted_moment(d, s, radius, h);
    Ok((estimate, lower, upper))
}

fn partial_sum(counts: &[u64], s: f64) -> f64 {
    counts
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, &c)| c != 0)
        .map(|(n, &c)| c as f64 * (n as f64).powf(-s))
        .sum()
}

/// Z_d(s) from counts r_d(n), n ≤ R², plus the Abel tail estimate.
///
/// `counts[0]` must be 1 (the origin) and `counts.len()` must be R² + 1.
pub fn z_from_representation_counts(d: u32, s: f64, counts: &[u64]) -> Result<LatticeSumResult> {
    check_dimension("z_from_representation_counts", d)?;
    if !(s > f64::from(d) / 2.0) {
        return Err(domain("z_from_representation_counts", s, "requires s > d/2"));
    }
    let n_max = counts.len().saturating_sub(1);
    let radius = (n_max as f64).sqrt().round() as u32;
    if (radius as usize) * (radius as usize) != n_max || counts.first() != Some(&1) {
        return Err(domain(
            "z_from_representation_counts",
            n_max as f64,
            "counts must cover 0..=R² with counts[0] = 1",
        ));
    }
    check_radius("z_from_representation_counts", radius)?;
    let total: u128 = counts.iter().map(|&c| u128::from(c)).sum();
    let (estimate, lower, upper) = tail_enclosure(d, s, f64::from(radius), total as f64)?;
    let tail_bound = (upper - estimate).max(estimate - lower).max(0.0);
    Ok(LatticeSumResult {
        value: partial_sum(counts, s) + estimate,
        tail_bound,
        radius,
    })
}

/// Direct lattice sum Σ'_{n∈Z^d} |n|^{−2s} over |n| ≤ radius with a
/// rigorous tail bound.
pub fn z_direct(d: u32, s: f64, radius: u32) -> Result<LatticeSumResult> {
    check_dimension("z_direct", d)?;
    if !(s > f64::from(d) / 2.0) {
        return Err(domain("z_direct", s, "requires s > d/2"));
    }
    check_radius("z_direct", radius)?;
    let n_max = (radius as usize) * (radius as usize);
    z_from_representation_counts(d, s, &representation_counts(d, n_max, false))
}

/// Σ over the positive orthant N^k of |n|^{−2s}.
///
/// The positive-orthant tail lies in [0, 2^{−k} T⁺] where T⁺ bounds the
/// full-lattice tail; the midpoint is reported.
pub fn p_k_direct(k: u32, s: f64, radius: u32) -> Result<LatticeSumResult> {
    check_dimension("p_k_direct", k)?;
    if !(s > f64::from(k) / 2.0) {
        return Err(domain("p_k_direct", s, "requires s > k/2"));
    }
    check_radius("p_k_direct", radius)?;
    let n_max = (radius as usize) * (radius as usize);
    let full: u128 = representation_counts(k, n_max, false)
        .iter()
        .map(|&c| u128::from(c))
        .sum();
    let (_, _, upper) = tail_enclosure(k, s, f64::from(radius), full as f64)?;
    let bound = 2f64.powi(-(k as i32)) * upper.max(0.0);
    let partial = partial_sum(&representation_counts(k, n_max, true), s);
    Ok(LatticeSumResult {
        value: partial + bound / 2.0,
        tail_bound: bound / 2.0,
        radius,
    })
}

/// P_k = 2^{−k} Σ_{m=1}^{k} (−1)^{k+m} C(k, m) Z_m, with `z[m−1]` = Z_m.
pub fn p_from_z(k: u32, z: &[f64]) -> Result<f64> {
    if k == 0 || z.len() < k as usize {
        return Err(domain("p_from_z", f64::from(k), "needs Z_1..Z_k"));
    }
    let sum: f64 = (1..=k)
        .map(|m| {
            let sign = if (k + m).is_multiple_of(2) { 1.0 } else { -1.0 };
            sign * binomial(k, m) as f64 * z[(m - 1) as usize]
        })
        .sum();
    Ok(sum * 2f64.powi(-(k as i32)))
}

/// Z_d = Σ_{k=1}^{d} C(d, k) 2^k P_k, with `p[k−1]` = P_k.
pub fn z_from_p(d: u32, p: &[f64]) -> Result<f64> {
    if d == 0 || p.len() < d as usize {
        return Err(domain("z_from_p", f64::from(d), "needs P_1..P_d"));
    }
    Ok((1..=d)
        .map(|k| binomial(d, k) as f64 * 2f64.powi(k as i32) * p[(k - 1) as usize])
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn small_counts() {
        assert_eq!(r_dn_enumerate(2, 1).unwrap(), 4);
        assert_eq!(r_dn_enumerate(2, 5).unwrap(), 8);
        assert_eq!(r_dn_enumerate(8, 1).unwrap(), 16);
        assert_eq!(r_dn_enumerate(3, 3).unwrap(), 8);
        assert_eq!(r_dn_enumerate(4, 2).unwrap(), 24);
        assert!(r_dn_enumerate(9, 1).is_err());
        assert!(r_dn_enumerate(2, 0).is_err());
        assert!(r_dn_enumerate(2, 10_001).is_err());
    }

    #[test]
    fn counts_match_nested_loops() {
        let n_max = 60usize;
        let counts = representation_counts(3, n_max, false);
        let positive = representation_counts(3, n_max, true);
        let mut brute = vec![0u64; n_max + 1];
        let mut brute_pos = vec![0u64; n_max + 1];
        for a in -8i64..=8 {
            for b in -8i64..=8 {
                for c in -8i64..=8 {
                    let n = (a * a + b * b + c * c) as usize;
                    if n <= n_max {
                        brute[n] += 1;
                        if a > 0 && b > 0 && c > 0 {
                            brute_pos[n] += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(counts, brute);
        assert_eq!(positive, brute_pos);
    }

    #[test]
    fn formula_examples() {
        assert_eq!(r_dn_formula(2, 1).unwrap(), 4);
        assert_eq!(r_dn_formula(4, 2).unwrap(), 24);
        assert_eq!(r_dn_formula(2, 3).unwrap(), 0);
        assert_eq!(r_dn_formula(8, 1).unwrap(), 16);
        assert!(r_dn_formula(3, 5).is_err());
        assert!(r_dn_formula(2, 0).is_err());
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }

    #[test]
    fn one_dimensional_sum() {
        let r = z_direct(1, 2.0, 100).unwrap();
        let want = 2.0 * PI.powi(4) / 90.0;
        assert!(r.contains(want, 1e-14));
        assert!(r.tail_bound < 1e-8);
        let p = p_k_direct(1, 2.0, 100).unwrap();
        assert!(p.contains(want / 2.0, 1e-14));
    }

    #[test]
    fn enclosure_brackets_estimate() {
        for d in 1..=8 {
            let s = f64::from(d) / 2.0 + 0.5;
            let count = representation_counts(d, 400, false).iter().sum::<u64>() as f64;
            let (e, lo, hi) = tail_enclosure(d, s, 20.0, count).unwrap();
            assert!(lo <= e && e <= hi, "d={d}: {lo} {e} {hi}");
        }
    }

    #[test]
    fn domain_checks() {
        assert!(z_direct(3, 1.5, 50).is_err());
        assert!(z_direct(3, 2.0, 5).is_err());
        assert!(p_k_direct(2, 1.0, 50).is_err());
        assert!(z_from_representation_counts(2, 3.0, &[1, 4, 4]).is_err());
    }

    #[test]
    fn binomial_relations_invert() {
        let z = [1.3, 2.9, 4.4, 7.1];
        let p: Vec<f64> = (1..=4).map(|k| p_from_z(k, &z).unwrap()).collect();
        for d in 1..=4 {
            let back = z_from_p(d, &p).unwrap();
            assert!((back - z[(d - 1) as usize]).abs() < 1e-12);
        }
    }
}
