use crate::error::{Error, Result};

/// Tolerances and caps shared by every infinite series and improper integral.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TruncationPolicy {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Term cap for a single series (per length in trace sums).
    pub max_terms: usize,
    /// Integrand evaluation cap for one adaptive quadrature.
    pub max_quad_evals: usize,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            max_terms: 100_000_000,
            max_quad_evals: 2_000_000,
        }
    }
}

impl TruncationPolicy {
    pub fn validate(&self) -> Result<()> {
        let in_unit = |v: f64| v > 0.0 && v < 1.0;
        if !in_unit(self.rel_tol) {
            return Err(Error::Domain("rel_tol must lie in (0, 1)"));
        }
        if !in_unit(self.abs_tol) {
            return Err(Error::Domain("abs_tol must lie in (0, 1)"));
        }
        if self.max_terms == 0 || self.max_quad_evals == 0 {
            return Err(Error::Domain("policy caps must be at least 1"));
        }
        Ok(())
    }

    /// Convergence target for a quantity of size `scale`.
    #[inline]
    pub fn target(&self, scale: f64) -> f64 {
        (self.rel_tol * scale.abs()).max(self.abs_tol)
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }
}
