//! Enumeration helpers for the multi-index Bessel sums.
//!
//! Both helpers assume the summand is a non-increasing function of the
//! squared norm, which lets every loop level stop as soon as the smallest
//! reachable norm already gives a term below the floor.

/// Σ over ℓ ∈ {1..=cap}^m of `term(|ℓ|²)`.
///
/// Tuples are visited in non-decreasing order and weighted by the number of
/// distinct permutations. Returns 0 for m = 0.
pub(crate) fn sum_positive_tuples<F>(m: usize, cap: u32, tol: f64, term: F) -> f64
where
    F: Fn(f64) -> f64,
{
    if m == 0 {
        return 0.0;
    }
    let mut tuple = vec![0u32; m];
    let mut total = 0.0;
    positive_level(0, 1, 0.0, cap, tol, &term, &mut tuple, &mut total);
    total
}

#[allow(clippy::too_many_arguments)]
fn positive_level<F>(
    level: usize,
    start: u32,
    prefix: f64,
    cap: u32,
    tol: f64,
    term: &F,
    tuple: &mut [u32],
    total: &mut f64,
) where
    F: Fn(f64) -> f64,
{
    let m = tuple.len();
    let remaining = (m - level) as f64;
    for v in start..=cap {
        let v2 = f64::from(v) * f64::from(v);
        // Every later coordinate is at least v.
        if term(prefix + remaining * v2).abs() < tol {
            break;
        }
        tuple[level] = v;
        let norm2 = prefix + v2;
        if level + 1 == m {
            *total += permutation_count(tuple) * term(norm2);
        } else {
            positive_level(level + 1, v, norm2, cap, tol, term, tuple, total);
        }
    }
}

/// m! / Π (run length)! for a sorted tuple.
fn permutation_count(sorted: &[u32]) -> f64 {
    let mut count = factorial(sorted.len());
    let mut run = 1;
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            run += 1;
        } else {
            count /= factorial(run);
            run = 1;
        }
    }
    count / factorial(run)
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Σ over ℓ ∈ Z^j \ {0}, |ℓ_i| ≤ cap, of `term(Σ (ℓ_i·scale_i)²)`.
///
/// Coordinates run over magnitudes 0..=cap with weight 2 for each non-zero
/// entry.
pub(crate) fn sum_signed_lattice<F>(scales: &[f64], cap: u32, tol: f64, term: F) -> f64
where
    F: Fn(f64) -> f64,
{
    if scales.is_empty() {
        return 0.0;
    }
    let mut total = 0.0;
    signed_level(0, 0.0, 1.0, scales, cap, tol, &term, &mut total);
    total
}

#[allow(clippy::too_many_arguments)]
fn signed_level<F>(
    level: usize,
    prefix: f64,
    weight: f64,
    scales: &[f64],
    cap: u32,
    tol: f64,
    term: &F,
    total: &mut f64,
) where
    F: Fn(f64) -> f64,
{
    let last = level + 1 == scales.len();
    for v in 0..=cap {
        let step = f64::from(v) * scales[level];
        let norm2 = prefix + step * step;
        let w = if v == 0 { weight } else { 2.0 * weight };
        if norm2 > 0.0 && term(norm2).abs() < tol {
            break;
        }
        if last {
            if norm2 > 0.0 {
                *total += w * term(norm2);
            }
        } else {
            signed_level(level + 1, norm2, w, scales, cap, tol, term, total);
        }
    }
}

/// Binomial coefficient in exact integer arithmetic (n ≤ 60).
pub(crate) fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * u64::from(n - i) / u64::from(i + 1);
    }
    acc
}
