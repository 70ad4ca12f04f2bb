//! Scalar special functions used throughout the crate.
//!
//! Every routine here targets a relative accuracy of at least
//! [`AccuracyContract::default`] (`1e-10`) on the arguments the energy
//! formulas actually need: Γ at integers and half-integers, ζ and β at
//! arguments above 1 (β also down to 1/2), and K_ν at orders that are
//! multiples of 1/2.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};

/// Relative error bound shared by the library.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccuracyContract {
    rel_tol: f64,
}

impl AccuracyContract {
    pub fn new(rel_tol: f64) -> Result<Self> {
        if rel_tol > 0.0 && rel_tol < 1e-6 {
            Ok(AccuracyContract { rel_tol })
        } else {
            Err(Error::InvalidContract(format!(
                "rel_tol must lie in (0, 1e-6), got {rel_tol}"
            )))
        }
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    /// True when `got` matches `want` to the contract's relative tolerance.
    pub fn agrees(&self, got: f64, want: f64) -> bool {
        let scale = want.abs().max(f64::MIN_POSITIVE);
        (got - want).abs() <= self.rel_tol * scale
    }
}

impl Default for AccuracyContract {
    fn default() -> Self {
        AccuracyContract { rel_tol: 1e-10 }
    }
}

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// B_2, B_4, ..., B_26.
const BERNOULLI_EVEN: [f64; 13] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
];

/// Number of terms summed explicitly before the Euler-Maclaurin tail.
const EM_TERMS: usize = 20;

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// Γ(x) for any real x that is not a non-positive integer.
pub fn gamma(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(domain("gamma", x, "argument must be finite"));
    }
    if is_nonpositive_integer(x) {
        return Err(domain("gamma", x, "pole at non-positive integers"));
    }
    Ok(statrs::function::gamma::gamma(x))
}

/// Γ(1−s)·sin(πs), evaluated as π/Γ(s).
///
/// The literal product is 0·∞ at positive integer `s`; the reflection
/// identity gives the finite limit directly.
pub fn gamma_sin_product(s: f64) -> Result<f64> {
    if is_nonpositive_integer(s) {
        return Err(domain("gamma_sin_product", s, "Γ(s) has a pole here"));
    }
    Ok(PI / gamma(s)?)
}

/// Euler-Maclaurin corrections at the cut point `x` for Σ (n+a)^{-s}:
/// x^{-s}/2 + Σ_k B_{2k}/(2k)! · (s)_{2k-1} · x^{-s-2k+1}.
fn em_corrections(s: f64, x: f64) -> f64 {
    let x_pow = x.powf(-s);
    let inv_x2 = 1.0 / (x * x);
    let mut total = 0.5 * x_pow;
    // (s)_{2k-1} / (2k)! · x^{-s-2k+1}, built incrementally.
    let mut factor = s / 2.0 * x_pow / x;
    for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
        let k = k as f64 + 1.0;
        if k > 1.0 {
            let m = 2.0 * k;
            factor *= (s + m - 3.0) * (s + m - 2.0) / ((m - 1.0) * m) * inv_x2;
        }
        let term = b * factor;
        total += term;
        if term.abs() < 1e-18 * total.abs() {
            break;
        }
    }
    total
}

/// Riemann ζ(s) for s > 1.
pub fn riemann_zeta(s: f64) -> Result<f64> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(domain("riemann_zeta", s, "requires s > 1"));
    }
    let mut partial = 0.0;
    for n in (1..=EM_TERMS).rev() {
        partial += (n as f64).powf(-s);
    }
    let x = EM_TERMS as f64 + 1.0;
    Ok(partial + x.powf(1.0 - s) / (s - 1.0) + em_corrections(s, x))
}

/// Dirichlet β(s) = Σ (−1)^n / (2n+1)^s for s > 0.
///
/// Computed as 4^{-s} [ζ(s, 1/4) − ζ(s, 3/4)] with both Hurwitz sums cut
/// at the same point, so the pole at s = 1 cancels analytically.
pub fn dirichlet_beta(s: f64) -> Result<f64> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(domain("dirichlet_beta", s, "requires s > 0"));
    }
    let mut partial = 0.0;
    for n in (0..EM_TERMS).rev() {
        let n = n as f64;
        partial += (n + 0.25).powf(-s) - (n + 0.75).powf(-s);
    }
    let x1 = EM_TERMS as f64 + 0.25;
    let x2 = EM_TERMS as f64 + 0.75;
    // (x1^{1-s} - x2^{1-s}) / (s - 1) without cancellation near s = 1.
    let t = 1.0 - s;
    let log_ratio = (x1 / x2).ln();
    let integral = if t == 0.0 {
        -log_ratio
    } else {
        -x2.powf(t) * (t * log_ratio).exp_m1() / t
    };
    let tail = em_corrections(s, x1) - em_corrections(s, x2);
    Ok(4f64.powf(-s) * (partial + integral + tail))
}

/// Modified Bessel function of the second kind K_ν(z).
///
/// `nu` must be a non-negative multiple of 1/2. Half-integer orders use the
/// terminating elementary expansion; integer orders use Temme's series for
/// z < 2 and Steed's continued fraction otherwise, followed by upward
/// recurrence.
pub fn bessel_k(nu: f64, z: f64) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(domain("bessel_k", z, "requires z > 0"));
    }
    let twice = 2.0 * nu;
    if nu < 0.0 || (twice - twice.round()).abs() > 1e-12 {
        return Err(domain(
            "bessel_k",
            nu,
            "order must be a non-negative multiple of 1/2",
        ));
    }
    let twice = twice.round() as u32;
    if twice % 2 == 1 {
        Ok(bessel_k_half_integer((twice / 2) as usize, z))
    } else {
        Ok(bessel_k_recurrence(nu, z))
    }
}

/// K_{n+1/2}(z) = √(π/2z) e^{-z} Σ_{k=0}^{n} (n+k)! / (k! (n−k)!) (2z)^{-k}.
pub(crate) fn bessel_k_half_integer(n: usize, z: f64) -> f64 {
    let mut coeff = 1.0;
    let mut poly = 1.0;
    for k in 0..n {
        coeff *= ((n + k + 1) * (n - k)) as f64 / ((k + 1) as f64 * 2.0 * z);
        poly += coeff;
    }
    (PI / (2.0 * z)).sqrt() * (-z).exp() * poly
}

/// K_ν(z) by Temme / Steed for the fractional order μ ∈ [−1/2, 1/2), then
/// forward recurrence. Only μ ∈ {0, −1/2} occur for multiples of 1/2.
pub(crate) fn bessel_k_recurrence(nu: f64, z: f64) -> f64 {
    let steps = (nu + 0.5).floor() as usize;
    let mu = nu - steps as f64;
    let (mut k_mu, mut k_mu1) = bessel_k_pair(mu, z);
    let two_over_z = 2.0 / z;
    for i in 1..=steps {
        let next = (mu + i as f64) * two_over_z * k_mu1 + k_mu;
        k_mu = k_mu1;
        k_mu1 = next;
    }
    k_mu
}

/// (1/Γ(1−μ) − 1/Γ(1+μ)) / 2μ and (1/Γ(1−μ) + 1/Γ(1+μ)) / 2, plus the
/// reciprocals 1/Γ(1+μ) and 1/Γ(1−μ).
fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    if mu.abs() < 1e-12 {
        return (-EULER_GAMMA, 1.0, 1.0, 1.0);
    }
    let gampl = 1.0 / statrs::function::gamma::gamma(1.0 + mu);
    let gammi = 1.0 / statrs::function::gamma::gamma(1.0 - mu);
    ((gammi - gampl) / (2.0 * mu), 0.5 * (gammi + gampl), gampl, gammi)
}

fn bessel_k_pair(mu: f64, x: f64) -> (f64, f64) {
    const EPS: f64 = 1e-17;
    const MAX_ITER: usize = 10_000;
    if x < 2.0 {
        let x2 = 0.5 * x;
        let pimu = PI * mu;
        let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = mu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(mu);
        let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let mut sum = ff;
        let e = e.exp();
        let mut p = 0.5 * e / gampl;
        let mut q = 0.5 / (e * gammi);
        let mut c = 1.0;
        let dd = x2 * x2;
        let mut sum1 = p;
        for i in 1..MAX_ITER {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - mu * mu);
            c *= dd / fi;
            p /= fi - mu;
            q /= fi + mu;
            let del = c * ff;
            sum += del;
            sum1 += c * (p - fi * ff);
            if del.abs() < sum.abs() * EPS {
                break;
            }
        }
        (sum, sum1 * 2.0 / x)
    } else {
        let mut b = 2.0 * (1.0 + x);
        let mut d = 1.0 / b;
        let mut h = d;
        let mut delh = d;
        let mut q1 = 0.0;
        let mut q2 = 1.0;
        let a1 = 0.25 - mu * mu;
        let mut q = a1;
        let mut c = a1;
        let mut a = -a1;
        let mut s = 1.0 + q * delh;
        for i in 2..MAX_ITER {
            let fi = i as f64;
            a -= 2.0 * (fi - 1.0);
            c = -a * c / fi;
            let qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh *= b * d - 1.0;
            h += delh;
            let dels = q * delh;
            s += dels;
            if (dels / s).abs() < EPS {
                break;
            }
        }
        h *= a1;
        let k_mu = (PI / (2.0 * x)).sqrt() * (-x).exp() / s;
        let k_mu1 = k_mu * (mu + x + 0.5 - h) / x;
        (k_mu, k_mu1)
    }
}
