//! Homogeneous Epstein zeta functions Z_d(s) = Σ'_{n∈Z^d} |n|^{−2s}.
//!
//! The exponent is −s, not the −s/2 used in some references, so Z_1(s) is
//! 2ζ(2s). Even dimensions up to 8 have closed forms in ζ and β. Odd
//! dimensions 3, 5 and 7 come from the Euler–Maclaurin recursion, which
//! writes Z_d in terms of Z_1..Z_{d−1} plus a Bessel remainder.
//!
//! All evaluations require the convergent region s > d/2.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::lattice::{binomial, sum_positive_tuples};
use crate::specfun::{bessel_k, dirichlet_beta, gamma, gamma_sin_product, riemann_zeta};
use crate::truncation::TruncationPolicy;

/// Highest dimension with an implemented expression.
pub const MAX_EPSTEIN_DIMENSION: u32 = 8;

/// Z_d(s) split into its closed-form part and its Bessel remainder.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EpsteinEval {
    pub analytic: f64,
    pub remainder: f64,
    pub total: f64,
}

impl EpsteinEval {
    pub fn new(analytic: f64, remainder: f64) -> Self {
        EpsteinEval {
            analytic,
            remainder,
            total: analytic + remainder,
        }
    }

    pub fn exact(value: f64) -> Self {
        Self::new(value, 0.0)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self::new(self.analytic * factor, self.remainder * factor)
    }

    /// 100·|remainder / total|, or `None` when the total vanishes.
    pub fn remainder_percent(&self) -> Option<f64> {
        (self.total != 0.0).then(|| 100.0 * (self.remainder / self.total).abs())
    }
}

impl std::ops::Add for EpsteinEval {
    type Output = EpsteinEval;

    fn add(self, rhs: Self) -> Self {
        EpsteinEval::new(self.analytic + rhs.analytic, self.remainder + rhs.remainder)
    }
}

/// α(s) = √π Γ(s − ½) / Γ(s).
pub fn alpha(s: f64) -> Result<f64> {
    if !(s > 0.5) {
        return Err(domain("alpha", s, "requires s > 1/2"));
    }
    Ok(PI.sqrt() * gamma(s - 0.5)? / gamma(s)?)
}

fn check_convergent(function: &'static str, d: u32, s: f64) -> Result<()> {
    if !(s > f64::from(d) / 2.0) || !s.is_finite() {
        return Err(domain(function, s, "requires s > d/2"));
    }
    Ok(())
}

/// Closed forms for d ∈ {1, 2, 4, 6, 8}.
pub fn z_closed_even(d: u32, s: f64) -> Result<f64> {
    check_convergent("z_closed_even", d, s)?;
    let zeta = riemann_zeta;
    let beta = dirichlet_beta;
    match d {
        1 => Ok(2.0 * zeta(2.0 * s)?),
        2 => Ok(4.0 * zeta(s)? * beta(s)?),
        4 => Ok(8.0 * zeta(s)? * zeta(s - 1.0)? * (1.0 - 4f64.powf(1.0 - s))),
        6 => Ok(16.0 * beta(s)? * zeta(s - 2.0)? - 4.0 * beta(s - 2.0)? * zeta(s)?),
        8 => Ok(16.0
            * zeta(s)?
            * zeta(s - 3.0)?
            * (1.0 - 2f64.powf(1.0 - s) + 4f64.powf(2.0 - s))),
        _ => Err(Error::UnsupportedDimension {
            function: "z_closed_even",
            d,
            reason: "closed forms exist for d = 1, 2, 4, 6, 8",
        }),
    }
}

/// The Bessel remainder R_d(s).
///
/// Σ_{n∈N^{d−1}} Σ_{ℓ≥1} (2/√π)(π/Γ(s)) K_{s−½}(2πℓ|n|) (πℓ/|n|)^{s−½}.
/// The factor Γ(1−s) sin(πs) is evaluated as π/Γ(s), which stays finite at
/// the integer s where the literal product is 0·∞.
pub fn remainder_rd(d: u32, s: f64, policy: &TruncationPolicy) -> Result<f64> {
    if d < 2 {
        return Err(domain("remainder_rd", f64::from(d), "requires d ≥ 2"));
    }
    if !(s > 0.5) {
        return Err(domain("remainder_rd", s, "requires s > 1/2"));
    }
    let nu = s - 0.5;
    if (2.0 * nu).fract() != 0.0 {
        return Err(domain("remainder_rd", s, "s must be a multiple of 1/2"));
    }
    let prefactor = 2.0 / PI.sqrt() * gamma_sin_product(s)?;
    let term = |norm2: f64| {
        let n = norm2.sqrt();
        let mut acc = 0.0;
        for l in 1..=policy.n_max() {
            let l = f64::from(l);
            let k = bessel_k(nu, 2.0 * PI * l * n).unwrap_or(0.0);
            let t = prefactor * (PI * l / n).powf(nu) * k;
            acc += t;
            if t.abs() < policy.tol() {
                break;
            }
        }
        acc
    };
    Ok(sum_positive_tuples(
        (d - 1) as usize,
        policy.l_max(),
        policy.tol(),
        term,
    ))
}

/// Z_3, Z_5 or Z_7 with the analytic/remainder split.
///
/// Z_3 and Z_5 use their expanded forms. Z_7 is assembled from the main
/// recursion; its remainder collects every term carrying an R_3, R_5 or R_7.
pub fn z_odd(d: u32, s: f64, policy: &TruncationPolicy) -> Result<EpsteinEval> {
    check_convergent("z_odd", d, s)?;
    match d {
        3 => z3(s, policy),
        5 => z5(s, policy),
        7 => z_main_recursion(7, s, &|m, t| z(m, t, policy), policy),
        _ => Err(Error::UnsupportedDimension {
            function: "z_odd",
            d,
            reason: "odd dimensions 3, 5 and 7 are implemented",
        }),
    }
}

fn z3(s: f64, policy: &TruncationPolicy) -> Result<EpsteinEval> {
    let a = alpha(s)?;
    let h = s - 0.5;
    let analytic = 4.0 * a * riemann_zeta(h)? * dirichlet_beta(h)?
        - 4.0 * a * riemann_zeta(2.0 * s - 1.0)?
        + 8.0 * riemann_zeta(s)? * dirichlet_beta(s)?
        - 2.0 * riemann_zeta(2.0 * s)?;
    Ok(EpsteinEval::new(analytic, 8.0 * remainder_rd(3, s, policy)?))
}

fn z5(s: f64, policy: &TruncationPolicy) -> Result<EpsteinEval> {
    let zeta = riemann_zeta;
    let beta = dirichlet_beta;
    let a = alpha(s)?;
    let a_half = alpha(s - 0.5)?;
    let analytic = 10.0 * zeta(2.0 * s)? - 32.0 * zeta(s)? * beta(s)?
        + 32.0 * zeta(s)? * zeta(s - 1.0)? * (1.0 - 4f64.powf(1.0 - s))
        + 8.0
            * a
            * (3.0 * zeta(2.0 * s - 1.0)? - 4.0 * zeta(s - 0.5)? * beta(s - 0.5)?
                + zeta(s - 0.5)? * zeta(s - 1.5)? * (1.0 - 2f64.powf(3.0 - 2.0 * s)))
        - 16.0 * a * a_half * (zeta(s - 1.0)? * beta(s - 1.0)? - zeta(2.0 * s - 2.0)?);
    let remainder = -32.0 * a * remainder_rd(3, s - 0.5, policy)?
        - 48.0 * remainder_rd(3, s, policy)?
        + 32.0 * remainder_rd(5, s, policy)?;
    Ok(EpsteinEval::new(analytic, remainder))
}

/// One step of the Euler–Maclaurin recursion.
///
/// Z_d(s) = Σ_{m=1}^{d−1} (−1)^{d+m−1} [α(s) C(d−1,m) Z_m(s−½) + C(d−1,m−1) Z_m(s)]
/// + 2^d R_d(s), with the lower Z_m supplied by `lower`.
pub fn z_main_recursion(
    d: u32,
    s: f64,
    lower: &dyn Fn(u32, f64) -> Result<EpsteinEval>,
    policy: &TruncationPolicy,
) -> Result<EpsteinEval> {
    if d < 2 {
        return Err(domain("z_main_recursion", f64::from(d), "requires d ≥ 2"));
    }
    check_convergent("z_main_recursion", d, s)?;
    let a = alpha(s)?;
    let mut acc = EpsteinEval::exact(0.0);
    for m in 1..d {
        let sign = if (d + m - 1).is_multiple_of(2) { 1.0 } else { -1.0 };
        let shifted = lower(m, s - 0.5)?.scaled(sign * a * binomial(d - 1, m) as f64);
        let same = lower(m, s)?.scaled(sign * binomial(d - 1, m - 1) as f64);
        acc = acc + shifted + same;
    }
    let rd = 2f64.powi(d as i32) * remainder_rd(d, s, policy)?;
    Ok(acc + EpsteinEval::new(0.0, rd))
}

/// Z_d(s) for 1 ≤ d ≤ 8 by the preferred route for each dimension.
pub fn z(d: u32, s: f64, policy: &TruncationPolicy) -> Result<EpsteinEval> {
    match d {
        1 | 2 | 4 | 6 | 8 => Ok(EpsteinEval::exact(z_closed_even(d, s)?)),
        3 | 5 | 7 => z_odd(d, s, policy),
        _ => Err(Error::UnsupportedDimension {
            function: "z",
            d,
            reason: "dimensions 1 to 8 are implemented",
        }),
    }
}

/// Maps Z_d(s) to Z_d(d/2 − s) through
/// π^{−s} Γ(s) Z_d(s) = π^{s−d/2} Γ(d/2 − s) Z_d(d/2 − s).
pub fn reflect(d: u32, s: f64, z_at_s: f64) -> Result<f64> {
    let half_d = f64::from(d) / 2.0;
    let lhs = PI.powf(-s) * gamma(s)? * z_at_s;
    Ok(lhs / (PI.powf(s - half_d) * gamma(half_d - s)?))
}

fn check_casimir_dimension(d: u32) -> Result<()> {
    if !(2..=MAX_EPSTEIN_DIMENSION).contains(&d) {
        return Err(Error::UnsupportedDimension {
            function: "casimir_from_zeta",
            d,
            reason: "dimensions 2 to 8 are implemented",
        });
    }
    Ok(())
}

/// Periodic hypercube Casimir energy from Z_d((d+1)/2).
///
/// E = −(πv/2L) Z_d((d+1)/2) Γ((d+1)/2) π^{−(d+3)/2}, which is (πv/L) Z_d(−½)
/// after reflection.
pub fn casimir_from_zeta(
    d: u32,
    speed: f64,
    length: f64,
    policy: &TruncationPolicy,
) -> Result<EpsteinEval> {
    check_casimir_dimension(d)?;
    if !(speed > 0.0 && length > 0.0) || !speed.is_finite() || !length.is_finite() {
        return Err(Error::InvalidCavity(format!(
            "length and speed must be positive, got L = {length}, v = {speed}"
        )));
    }
    let s = (f64::from(d) + 1.0) / 2.0;
    let zd = z(d, s, policy)?;
    let factor = -PI * speed / (2.0 * length) * gamma(s)? * PI.powf(-(f64::from(d) + 3.0) / 2.0);
    Ok(zd.scaled(factor))
}

/// [`casimir_from_zeta`] divided by the cavity volume L^d.
pub fn casimir_density_from_zeta(
    d: u32,
    speed: f64,
    length: f64,
    policy: &TruncationPolicy,
) -> Result<EpsteinEval> {
    let e = casimir_from_zeta(d, speed, length, policy)?;
    Ok(e.scaled(length.powi(-(d as i32))))
}
