//! Heat-trace series in complex time `z`, `Re z > 0`.
//!
//! * hyperbolic trace: `e^{-z/4} (16πz)^{-1/2} Σ_γ Σ_{n≥1} ℓ/sinh(nℓ/2) e^{-(nℓ)²/4z}`
//! * degenerating trace: the same series over the pinching lengths only
//! * spectral trace: `Σ e^{-λz}` over a supplied eigenvalue list
//! * regularised trace: hyperbolic trace plus `vol · K_h(t, 0)` (real time only)
//!
//! Supplied spectra are taken as exact and complete; nothing is added for
//! a truncated tail. Summation runs over ascending `n` within a length and
//! then over ascending lengths, so results are bit-stable for a fixed policy.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent methods win when std is linked
use num_traits::Float;

use crate::error::{Error, Result};
use crate::hyperbolic::heat_kernel_origin;
use crate::policy::TruncationPolicy;

/// Primitive closed-geodesic lengths with multiplicities, sorted by length.
#[derive(Debug, Clone, PartialEq)]
pub struct LengthSpectrum {
    entries: Vec<(f64, u32)>,
}

impl LengthSpectrum {
    pub fn new(mut entries: Vec<(f64, u32)>) -> Result<Self> {
        for &(len, mult) in &entries {
            if !(len > 0.0) || !len.is_finite() {
                return Err(Error::Domain("geodesic lengths must be finite and > 0"));
            }
            if mult == 0 {
                return Err(Error::Domain("multiplicities must be >= 1"));
            }
        }
        entries.sort_by(|a, b| a.0.total_cmp(&b.0));
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[(f64, u32)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Lengths `(ℓ_1, …, ℓ_p)` of the pinching geodesics.
#[derive(Debug, Clone, PartialEq)]
pub struct PinchingSet {
    ells: Vec<f64>,
}

impl PinchingSet {
    pub fn new(ells: Vec<f64>) -> Result<Self> {
        if ells.is_empty() {
            return Err(Error::Domain("pinching set must not be empty"));
        }
        if ells.iter().any(|&l| !(l > 0.0) || !l.is_finite()) {
            return Err(Error::Domain("pinching lengths must be finite and > 0"));
        }
        Ok(Self { ells })
    }

    pub fn ells(&self) -> &[f64] {
        &self.ells
    }

    /// `|ℓ| = max_k ℓ_k`.
    pub fn sup_norm(&self) -> f64 {
        self.ells.iter().copied().fold(0.0, f64::max)
    }

    /// `Σ_k log(1/ℓ_k)` in natural log.
    pub fn log_sum(&self) -> f64 {
        self.ells.iter().map(|l| -l.ln()).sum()
    }

    /// One class per pinching length.
    pub fn to_length_spectrum(&self) -> LengthSpectrum {
        // Lengths are already validated.
        LengthSpectrum::new(self.ells.iter().map(|&l| (l, 1)).collect()).expect("validated lengths")
    }
}

/// Eigenvalues with multiplicities plus the area of the surface.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralData {
    eigenvalues: Vec<(f64, u32)>,
    volume: f64,
}

impl SpectralData {
    pub fn new(mut eigenvalues: Vec<(f64, u32)>, volume: f64) -> Result<Self> {
        for &(lambda, mult) in &eigenvalues {
            if !(lambda >= 0.0) || !lambda.is_finite() {
                return Err(Error::Domain("eigenvalues must be finite and >= 0"));
            }
            if mult == 0 {
                return Err(Error::Domain("multiplicities must be >= 1"));
            }
        }
        if !(volume > 0.0) || !volume.is_finite() {
            return Err(Error::Domain("volume must be finite and > 0"));
        }
        eigenvalues.sort_by(|a, b| a.0.total_cmp(&b.0));
        Ok(Self { eigenvalues, volume })
    }

    pub fn eigenvalues(&self) -> &[(f64, u32)] {
        &self.eigenvalues
    }

    pub fn volume(&self) -> f64 {
        self.volume
    }
}

fn check_time(z: Complex64) -> Result<()> {
    if !(z.re > 0.0) || !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain("trace time must satisfy Re(z) > 0"));
    }
    Ok(())
}

/// Term budget for one length at complex time `z = t + is`.
fn term_budget(z: Complex64, policy: &TruncationPolicy) -> usize {
    let stretch = (1.0 + (z.im / z.re).powi(2)).sqrt();
    let budget = policy.max_terms as f64 * stretch;
    if budget >= usize::MAX as f64 {
        usize::MAX
    } else {
        budget as usize
    }
}

/// `Σ_{n≥1} ℓ/sinh(nℓ/2) e^{-(nℓ)²/4z}` for a single length.
///
/// The remainder after `N` terms is bounded by
/// `2ℓ e^{-(N+1)ℓ/2} e^{-((N+1)ℓ)² Re(1/z)/4} / ((1 - e^{-(N+1)ℓ})(1 - e^{-ℓ/2}))`.
pub fn geodesic_series(ell: f64, z: Complex64, policy: &TruncationPolicy) -> Result<Complex64> {
    check_time(z)?;
    let quarter_inv = (4.0 * z).inv();
    let re_inv = quarter_inv.re;
    let geometric = -(-0.5 * ell).exp_m1();
    let budget = term_budget(z, policy);

    let mut sum = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    let mut n: usize = 0;
    loop {
        n += 1;
        let x = n as f64 * ell;
        let weight = ell / (0.5 * x).sinh();
        let term = (-(x * x) * quarter_inv).exp() * weight;
        sum += term;
        scale += term.norm();

        let xn = x + ell;
        let tail = 2.0 * ell * (-0.5 * xn - xn * xn * re_inv).exp() / (-(-xn).exp_m1() * geometric);
        if tail <= policy.target(scale) {
            return Ok(sum);
        }
        if n >= budget {
            return Err(Error::TruncationBudget { budget });
        }
    }
}

fn trace_prefactor(z: Complex64) -> Complex64 {
    (-0.25 * z).exp() / (16.0 * PI * z).sqrt()
}

/// Hyperbolic heat trace of a length spectrum.
pub fn hyperbolic_trace(ls: &LengthSpectrum, z: Complex64, policy: &TruncationPolicy) -> Result<Complex64> {
    check_time(z)?;
    if ls.is_empty() {
        return Err(Error::Domain("length spectrum must not be empty"));
    }
    let mut sum = Complex64::new(0.0, 0.0);
    for &(ell, mult) in ls.entries() {
        sum += geodesic_series(ell, z, policy)? * mult as f64;
    }
    Ok(trace_prefactor(z) * sum)
}

/// Degenerating heat trace: the hyperbolic series restricted to the pinching lengths.
pub fn degenerating_trace(ps: &PinchingSet, z: Complex64, policy: &TruncationPolicy) -> Result<Complex64> {
    hyperbolic_trace(&ps.to_length_spectrum(), z, policy)
}

/// `Σ_n m_n e^{-λ_n z}` over the supplied eigenvalues.
pub fn spectral_trace(sd: &SpectralData, z: Complex64) -> Result<Complex64> {
    check_time(z)?;
    Ok(sd
        .eigenvalues()
        .iter()
        .fold(Complex64::new(0.0, 0.0), |acc, &(lambda, mult)| acc + (-lambda * z).exp() * mult as f64))
}

/// `HTr(t) + vol · K_h(t, 0)`; only real positive time is supported.
pub fn regularized_trace(
    ls: &LengthSpectrum,
    volume: f64,
    z: Complex64,
    policy: &TruncationPolicy,
) -> Result<Complex64> {
    if z.im != 0.0 {
        return Err(Error::Domain("regularized trace is only available for real time"));
    }
    check_time(z)?;
    if !(volume > 0.0) || !volume.is_finite() {
        return Err(Error::Domain("volume must be finite and > 0"));
    }
    let htr = hyperbolic_trace(ls, z, policy)?;
    Ok(htr + volume * heat_kernel_origin(z.re, policy)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn pol() -> TruncationPolicy {
        TruncationPolicy::default()
    }

    fn re(t: f64) -> Complex64 {
        Complex64::new(t, 0.0)
    }

    fn ls(entries: Vec<(f64, u32)>) -> LengthSpectrum {
        LengthSpectrum::new(entries).unwrap()
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm()
    }

    #[test]
    fn types_validate() {
        assert!(LengthSpectrum::new(vec![(0.0, 1)]).is_err());
        assert!(LengthSpectrum::new(vec![(1.0, 0)]).is_err());
        assert!(PinchingSet::new(vec![]).is_err());
        assert!(PinchingSet::new(vec![0.1, -0.2]).is_err());
        assert!(SpectralData::new(vec![(-0.1, 1)], 1.0).is_err());
        assert!(SpectralData::new(vec![(0.1, 1)], 0.0).is_err());

        let s = ls(vec![(2.0, 1), (0.5, 3)]);
        assert_eq!(s.entries(), &[(0.5, 3), (2.0, 1)]);
        let ps = PinchingSet::new(vec![0.1, 0.3]).unwrap();
        assert_eq!(ps.sup_norm(), 0.3);
        assert!((ps.log_sum() - (10.0f64.ln() + (1.0f64 / 0.3).ln())).abs() < 1e-15);
    }

    #[test]
    fn one_geodesic_matches_direct_sum() {
        let direct: f64 = (1..=50).map(|n| (-(n * n) as f64 / 4.0).exp() / (0.5 * n as f64).sinh()).sum();
        let expect = (-0.25f64).exp() / (16.0 * PI).sqrt() * direct;
        let v = hyperbolic_trace(&ls(vec![(1.0, 1)]), re(1.0), &pol()).unwrap();
        assert!(close(v, re(expect), 1e-10));
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn multiplicity_and_tuple_additivity() {
        let one = hyperbolic_trace(&ls(vec![(1.0, 1)]), re(1.0), &pol()).unwrap();
        let two = hyperbolic_trace(&ls(vec![(1.0, 2)]), re(1.0), &pol()).unwrap();
        assert!(close(two, one * 2.0, 1e-15));

        let d = degenerating_trace(&PinchingSet::new(vec![1.0]).unwrap(), re(1.0), &pol()).unwrap();
        assert_eq!(d, one);

        let half = degenerating_trace(&PinchingSet::new(vec![0.5]).unwrap(), re(0.5), &pol()).unwrap();
        let pair = degenerating_trace(&PinchingSet::new(vec![0.5, 0.5]).unwrap(), re(0.5), &pol()).unwrap();
        assert!(close(pair, half * 2.0, 1e-15));
    }

    #[test]
    fn small_length_direct_oracle() {
        let ell = 0.01;
        let direct: f64 = (1..=5000)
            .map(|n| {
                let x = n as f64 * ell;
                ell / (0.5 * x).sinh() * (-x * x / 4.0).exp()
            })
            .sum();
        let expect = (-0.25f64).exp() / (16.0 * PI).sqrt() * direct;
        let v = degenerating_trace(&PinchingSet::new(vec![ell]).unwrap(), re(1.0), &pol()).unwrap();
        assert!(close(v, re(expect), 1e-10));
        // harmonic-sum growth in 1/ℓ
        let harmonic: f64 = (1..=200).map(|n| 1.0 / n as f64).sum();
        let rough = (-0.25f64).exp() / (16.0 * PI).sqrt() * 2.0 * harmonic;
        assert!((v.re / rough - 1.0).abs() < 0.3);
    }

    #[test]
    fn complex_time_modulus_bound() {
        let s = ls(vec![(1.0, 1)]);
        let on_axis = hyperbolic_trace(&s, re(1.0), &pol()).unwrap().re;
        let off = hyperbolic_trace(&s, Complex64::new(1.0, 5.0), &pol()).unwrap();
        assert!(off.norm() <= on_axis);
        assert!(hyperbolic_trace(&s, Complex64::new(0.0, 1.0), &pol()).is_err());
    }

    #[test]
    fn series_budget_is_reported() {
        let tight = TruncationPolicy { max_terms: 3, ..pol() };
        assert!(matches!(
            geodesic_series(0.01, re(1.0), &tight),
            Err(Error::TruncationBudget { .. })
        ));
    }

    #[test]
    fn spectral_examples() {
        let sd = SpectralData::new(vec![(0.0, 1)], 1.0).unwrap();
        assert_eq!(spectral_trace(&sd, re(1.0)).unwrap(), re(1.0));
        let sd = SpectralData::new(vec![(0.25, 2), (0.0, 1)], 1.0).unwrap();
        assert!(close(spectral_trace(&sd, re(2.0)).unwrap(), re(1.0 + 2.0 * (-0.5f64).exp()), 1e-15));
        let sd = SpectralData::new(vec![(0.1, 1)], 1.0).unwrap();
        let expect = Complex64::new(0.1f64.cos(), -0.1f64.sin()) * (-0.1f64).exp();
        assert!(close(spectral_trace(&sd, Complex64::new(1.0, 1.0)).unwrap(), expect, 1e-15));
    }

    #[test]
    fn regularized_is_linear_in_volume() {
        let s = ls(vec![(1.0, 1)]);
        let k0 = heat_kernel_origin(1.0, &pol()).unwrap();
        let htr = hyperbolic_trace(&s, re(1.0), &pol()).unwrap();
        let r4 = regularized_trace(&s, 4.0 * PI, re(1.0), &pol()).unwrap();
        let r2 = regularized_trace(&s, 2.0 * PI, re(1.0), &pol()).unwrap();
        assert!(close(r4, htr + 4.0 * PI * k0, 1e-14));
        assert!(close(r4 - r2, re(2.0 * PI * k0), 1e-12));
        // extrapolating to zero volume recovers HTr
        assert!(close(r2 * 2.0 - r4, htr, 1e-12));
        assert!(regularized_trace(&s, 1.0, Complex64::new(1.0, 0.5), &pol()).is_err());
    }

    #[test]
    fn positive_and_decreasing_in_length() {
        for t in [0.1, 1.0, 10.0] {
            let mut prev = f64::INFINITY;
            for i in 1..40 {
                let v = hyperbolic_trace(&ls(vec![(0.1 * i as f64, 1)]), re(t), &pol()).unwrap().re;
                assert!(v > 0.0 && v < prev);
                prev = v;
            }
        }
    }

    #[test]
    fn subset_bound() {
        let full = ls(vec![(0.2, 1), (0.7, 2), (1.5, 1), (3.0, 4)]);
        let ps = PinchingSet::new(vec![0.2, 0.7]).unwrap();
        for t in [0.2, 1.0, 5.0] {
            let d = degenerating_trace(&ps, re(t), &pol()).unwrap().re;
            let h = hyperbolic_trace(&full, re(t), &pol()).unwrap().re;
            assert!(d <= h);
        }
    }
}
