//! Degeneration sweeps over schedules of pinching lengths, and power-law
//! fits of trace magnitudes along vertical lines in complex time.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent methods win when std is linked
use num_traits::Float;

use crate::counting::{c_weight, g_bessel, Threshold, Weight};
use crate::error::{Error, Result};
use crate::policy::TruncationPolicy;
use crate::trace::{degenerating_trace, hyperbolic_trace, LengthSpectrum, PinchingSet};
use crate::xform::{weighted_inverse, ContourSpec};

/// Sequence of pinching sets along which `ℓ → 0`.
#[derive(Debug, Clone, PartialEq)]
pub enum Schedule {
    /// Single lengths `start · ratio^i`, `i = 0..count`.
    Geometric { start: f64, ratio: f64, count: usize },
    /// Arbitrary sets with strictly decreasing sup-norms.
    Explicit(Vec<PinchingSet>),
}

impl Schedule {
    pub fn validate(&self) -> Result<()> {
        match self {
            Schedule::Geometric { start, ratio, count } => {
                if !(*start > 0.0 && *start < 1.0) {
                    return Err(Error::Domain("geometric schedule start must lie in (0, 1)"));
                }
                if !(*ratio > 0.0 && *ratio < 1.0) {
                    return Err(Error::Domain("geometric schedule ratio must lie in (0, 1)"));
                }
                if *count < 2 {
                    return Err(Error::Domain("geometric schedule needs count >= 2"));
                }
            }
            Schedule::Explicit(sets) => {
                if sets.is_empty() {
                    return Err(Error::Domain("explicit schedule must not be empty"));
                }
                if sets.windows(2).any(|w| !(w[1].sup_norm() < w[0].sup_norm())) {
                    return Err(Error::Domain("explicit schedule sup-norms must strictly decrease"));
                }
            }
        }
        Ok(())
    }

    /// The pinching sets in schedule order.
    pub fn points(&self) -> Result<Vec<PinchingSet>> {
        self.validate()?;
        match self {
            Schedule::Geometric { start, ratio, count } => (0..*count)
                .map(|i| PinchingSet::new(alloc::vec![start * ratio.powi(i as i32)]))
                .collect(),
            Schedule::Explicit(sets) => Ok(sets.clone()),
        }
    }
}

/// One schedule point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub ell_sup: f64,
    pub log_sum: f64,
    pub g_value: f64,
    pub residual: f64,
    /// `g_value / log_sum`, which tends to `c_w(T)`.
    pub normalized: f64,
    /// Set when the row could not be computed; numeric fields are then NaN.
    pub error: Option<Error>,
}

/// Parameters a sweep ran with.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepMeta {
    pub w: f64,
    pub t: f64,
    pub policy: TruncationPolicy,
    pub contour: ContourSpec,
    pub use_bromwich: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub meta: SweepMeta,
}

/// Evaluates a single schedule point; failures are recorded on the row.
pub fn sweep_row(
    ps: &PinchingSet,
    w: Weight,
    t: Threshold,
    policy: &TruncationPolicy,
    contour: &ContourSpec,
    use_bromwich: bool,
) -> SweepRow {
    let ell_sup = ps.sup_norm();
    let log_sum = ps.log_sum();
    let computed = (|| -> Result<(f64, f64)> {
        if !(log_sum > 0.0) {
            return Err(Error::Domain("sweep rows need a positive log-sum"));
        }
        let g = if use_bromwich {
            weighted_inverse(|z| degenerating_trace(ps, z, policy), w.value(), t.value(), contour)?.value
        } else {
            g_bessel(ps, w, t, policy)?
        };
        // Below 1/4, G vanishes identically and the leading term is taken as zero.
        let c = if t.value() < Threshold::QUARTER { 0.0 } else { c_weight(w, t)? };
        Ok((g, g - c * log_sum))
    })();
    match computed {
        Ok((g_value, residual)) => SweepRow { ell_sup, log_sum, g_value, residual, normalized: g_value / log_sum, error: None },
        Err(e) => SweepRow {
            ell_sup,
            log_sum,
            g_value: f64::NAN,
            residual: f64::NAN,
            normalized: f64::NAN,
            error: Some(e),
        },
    }
}

/// Runs every schedule point in order.
pub fn run_sweep(
    schedule: &Schedule,
    w: Weight,
    t: Threshold,
    policy: &TruncationPolicy,
    contour: &ContourSpec,
    use_bromwich: bool,
) -> Result<SweepResult> {
    let rows = schedule
        .points()?
        .iter()
        .map(|ps| sweep_row(ps, w, t, policy, contour, use_bromwich))
        .collect();
    Ok(SweepResult {
        rows,
        meta: SweepMeta { w: w.value(), t: t.value(), policy: *policy, contour: *contour, use_bromwich },
    })
}

/// `magnitude ≈ C (1 + s)^β`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthFit {
    pub c: f64,
    pub beta: f64,
}

/// Least-squares fit of `log m` against `log(1 + s)`.
pub fn fit_growth_exponent(samples: &[(f64, f64)]) -> Result<GrowthFit> {
    if samples.len() < 8 {
        return Err(Error::Domain("growth fit needs at least 8 samples"));
    }
    if samples.iter().any(|&(s, m)| !(s > 0.0) || !(m > 0.0) || !s.is_finite() || !m.is_finite()) {
        return Err(Error::Domain("growth samples need finite s > 0 and magnitude > 0"));
    }
    let (lo, hi) = samples.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &(s, _)| (lo.min(s), hi.max(s)));
    if lo == hi {
        return Err(Error::DegenerateDesign("all s values are equal"));
    }
    if hi < 10.0 * lo {
        return Err(Error::Domain("growth samples must span at least one decade in s"));
    }
    let n = samples.len() as f64;
    let xs = samples.iter().map(|&(s, _)| (1.0 + s).ln());
    let ys = samples.iter().map(|&(_, m)| m.ln());
    let mean_x = xs.clone().sum::<f64>() / n;
    let mean_y = ys.clone().sum::<f64>() / n;
    let (sxy, sxx) = xs.zip(ys).fold((0.0, 0.0), |(sxy, sxx), (x, y)| {
        (sxy + (x - mean_x) * (y - mean_y), sxx + (x - mean_x) * (x - mean_x))
    });
    let beta = sxy / sxx;
    Ok(GrowthFit { c: (mean_y - beta * mean_x).exp(), beta })
}

/// Fits `|HTr(t + is)|` over the given heights.
pub fn trace_growth(ls: &LengthSpectrum, t: f64, heights: &[f64], policy: &TruncationPolicy) -> Result<GrowthFit> {
    let samples = heights
        .iter()
        .map(|&s| Ok((s, hyperbolic_trace(ls, Complex64::new(t, s), policy)?.norm())))
        .collect::<Result<Vec<_>>>()?;
    fit_growth_exponent(&samples)
}
