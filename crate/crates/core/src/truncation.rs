//! Truncation of the exponentially convergent Bessel sums.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Controls where the infinite remainder sums stop.
///
/// A sum stops at the first term whose magnitude falls below `tol`, or at
/// the hard caps `n_max` (outer index) and `l_max` (each inner index),
/// whichever comes first.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationPolicy {
    tol: f64,
    n_max: u32,
    l_max: u32,
}

impl TruncationPolicy {
    pub const DEFAULT_TOL: f64 = 1e-14;
    pub const DEFAULT_N_MAX: u32 = 40;
    pub const DEFAULT_L_MAX: u32 = 12;

    pub fn new(tol: f64, n_max: u32, l_max: u32) -> Result<Self> {
        if !(tol > 0.0) || !tol.is_finite() {
            return Err(Error::InvalidPolicy(format!("tol must be positive, got {tol}")));
        }
        if n_max < 9 {
            return Err(Error::InvalidPolicy(format!("n_max must be at least 9, got {n_max}")));
        }
        if l_max < 3 {
            return Err(Error::InvalidPolicy(format!("l_max must be at least 3, got {l_max}")));
        }
        Ok(TruncationPolicy { tol, n_max, l_max })
    }

    /// Default caps with a different term floor.
    pub fn with_tol(tol: f64) -> Result<Self> {
        Self::new(tol, Self::DEFAULT_N_MAX, Self::DEFAULT_L_MAX)
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    pub fn l_max(&self) -> u32 {
        self.l_max
    }

    /// Same floor, both caps doubled.
    pub fn doubled(&self) -> Self {
        TruncationPolicy {
            tol: self.tol,
            n_max: self.n_max * 2,
            l_max: self.l_max * 2,
        }
    }
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy {
            tol: Self::DEFAULT_TOL,
            n_max: Self::DEFAULT_N_MAX,
            l_max: Self::DEFAULT_L_MAX,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_out_of_range() {
        assert!(TruncationPolicy::new(0.0, 40, 12).is_err());
        assert!(TruncationPolicy::new(-1.0, 40, 12).is_err());
        assert!(TruncationPolicy::new(1e-14, 8, 12).is_err());
        assert!(TruncationPolicy::new(1e-14, 9, 2).is_err());
        assert!(TruncationPolicy::new(1e-14, 9, 3).is_ok());
    }

    #[test]
    fn doubling_keeps_tol() {
        let p = TruncationPolicy::default().doubled();
        assert_eq!(p.n_max(), 80);
        assert_eq!(p.l_max(), 24);
        assert_eq!(p.tol(), 1e-14);
    }
}
