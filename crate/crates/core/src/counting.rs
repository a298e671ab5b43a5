//! Weighted counting functions `N_w(T) = Σ_{λ ≤ T} (T - λ)^w`, the Bessel
//! series `G_{ℓ,w}(T)` of the pinching geodesics and its logarithmic
//! asymptotics.
//!
//! For `T >= 1/4`, with `q = sqrt(T - 1/4)` and `p = w + 1/2`,
//!
//! ```text
//! G_{ℓ,w}(T) = Γ(w+1)/(16π)^{1/2} · q^{2p} · Σ_k Σ_{n≥1} ℓ_k/sinh(nℓ_k/2) · Λ_p(nℓ_k q)
//! ```
//!
//! where `Λ_p(y) = (2/y)^p J_p(y)`. Writing the Bessel factor through `Λ_p`
//! keeps every term finite at small `nℓ` and makes `G` vanish identically
//! at `T = 1/4`. Below `1/4` the function is zero by definition.

use core::f64::consts::PI;

#[allow(unused_imports)] // inherent methods win when std is linked
use num_traits::Float;

use crate::error::{Error, Result};
use crate::policy::TruncationPolicy;
use crate::quad;
use crate::specfun::{gamma, BesselOrder};
use crate::trace::{PinchingSet, SpectralData};

/// Weight `w >= 0` of a counting function.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Weight(f64);

impl Weight {
    pub fn new(w: f64) -> Result<Self> {
        if !(w >= 0.0) || !w.is_finite() {
            return Err(Error::Domain("weight w must be finite and >= 0"));
        }
        Ok(Self(w))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Spectral threshold `T >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Threshold(f64);

impl Threshold {
    /// Bottom of the continuous spectrum.
    pub const QUARTER: f64 = 0.25;

    pub fn new(t: f64) -> Result<Self> {
        if !(t >= 0.0) || !t.is_finite() {
            return Err(Error::Domain("threshold T must be finite and >= 0"));
        }
        Ok(Self(t))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// `Σ_{λ_n ≤ T} m_n (T - λ_n)^w`. For `w = 0` an eigenvalue at `T` is counted.
pub fn counting_direct(sd: &SpectralData, w: Weight, t: Threshold) -> f64 {
    let (w, t) = (w.0, t.0);
    sd.eigenvalues()
        .iter()
        .take_while(|&&(lambda, _)| lambda <= t)
        .map(|&(lambda, mult)| {
            let base = if w == 0.0 { 1.0 } else { (t - lambda).powf(w) };
            mult as f64 * base
        })
        .sum()
}

/// `c_w(T) = Γ(w+1)(T - 1/4)^{w+1/2} / ((4π)^{1/2} Γ(w+3/2))`.
pub fn c_weight(w: Weight, t: Threshold) -> Result<f64> {
    let (w, t) = (w.0, t.0);
    if t < Threshold::QUARTER {
        return Err(Error::Domain("c_w(T) is defined for T >= 1/4"));
    }
    Ok(gamma(w + 1.0)? * (t - 0.25).powf(w + 0.5) / ((4.0 * PI).sqrt() * gamma(w + 1.5)?))
}

/// Lengths below this use a direct head sum plus an Euler–Maclaurin tail.
pub const EULER_MACLAURIN_ELL: f64 = 1.0 / 128.0;

/// Summation strategy for the per-length series `Σ_n ℓ g(nℓ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesMethod {
    /// Term-by-term with the exponential tail bound.
    Direct,
    /// Direct for `ℓ >= 1/128`, Euler–Maclaurin tail below.
    Auto,
}

/// `Σ_{n≥1} ℓ g(nℓ)` where `|g(x) sinh(x/2)| <= bound` for all `x > 0`.
fn length_series<G>(ell: f64, g: G, bound: f64, method: SeriesMethod, policy: &TruncationPolicy) -> Result<f64>
where
    G: Fn(f64) -> f64,
{
    if method == SeriesMethod::Auto && ell < EULER_MACLAURIN_ELL {
        return euler_maclaurin(ell, g, policy);
    }
    let geometric = -(-0.5 * ell).exp_m1();
    let mut sum = 0.0;
    let mut scale = 0.0;
    let mut n = 0usize;
    loop {
        n += 1;
        let term = ell * g(n as f64 * ell);
        sum += term;
        scale += term.abs();
        // Σ_{m>n} ℓ/sinh(mℓ/2) <= 2ℓ e^{-(n+1)ℓ/2} / ((1 - e^{-(n+1)ℓ})(1 - e^{-ℓ/2}))
        let xn = (n + 1) as f64 * ell;
        let tail = bound * 2.0 * ell * (-0.5 * xn).exp() / (-(-xn).exp_m1() * geometric);
        if tail <= policy.target(scale) {
            return Ok(sum);
        }
        if n >= policy.max_terms {
            return Err(Error::TruncationBudget { budget: policy.max_terms });
        }
    }
}

// Head n < n0 summed directly, n >= n0 by Euler–Maclaurin with two
// derivative corrections; the remainder is O(ℓ⁴).
fn euler_maclaurin<G>(ell: f64, g: G, policy: &TruncationPolicy) -> Result<f64>
where
    G: Fn(f64) -> f64,
{
    let n0 = (1.0 / ell).ceil() as usize;
    if n0 > policy.max_terms {
        return Err(Error::TruncationBudget { budget: policy.max_terms });
    }
    let head: f64 = (1..n0).map(|n| ell * g(n as f64 * ell)).sum();

    let x0 = n0 as f64 * ell;
    let x_end = x0 + 2.0 * (-policy.rel_tol.ln() + 8.0);
    let mut breaks = [0.0; 9];
    for (i, b) in breaks.iter_mut().enumerate() {
        *b = x0 + (x_end - x0) * (i as f64 / 8.0).powi(2);
    }
    let integral = quad::integrate_with_breaks(&g, &breaks, policy)?.value;

    let h1 = 1e-2;
    let d1 = (-g(x0 + 2.0 * h1) + 8.0 * g(x0 + h1) - 8.0 * g(x0 - h1) + g(x0 - 2.0 * h1)) / (12.0 * h1);
    let h3 = 5e-2;
    let d3 = (g(x0 + 2.0 * h3) - 2.0 * g(x0 + h3) + 2.0 * g(x0 - h3) - g(x0 - 2.0 * h3)) / (2.0 * h3 * h3 * h3);
    let ell2 = ell * ell;
    let tail = integral + 0.5 * ell * g(x0) - ell2 * d1 / 12.0 + ell2 * ell2 * d3 / 720.0;
    Ok(head + tail)
}

fn g_bessel_with(ps: &PinchingSet, w: Weight, t: Threshold, method: SeriesMethod, policy: &TruncationPolicy) -> Result<f64> {
    let t = t.0;
    if t <= Threshold::QUARTER {
        return Ok(0.0);
    }
    let w = w.0;
    let p = w + 0.5;
    let order = BesselOrder::new(p)?;
    let q = (t - 0.25).sqrt();
    let bound = 1.0 / gamma(p + 1.0)?;
    let kernel = |x: f64| order.scaled(x * q) / (0.5 * x).sinh();
    let mut sum = 0.0;
    for &ell in ps.ells() {
        sum += length_series(ell, kernel, bound, method, policy)?;
    }
    Ok(gamma(w + 1.0)? / (16.0 * PI).sqrt() * (t - 0.25).powf(p) * sum)
}

/// `G_{ℓ,w}(T)` from the Bessel series; exactly zero for `T <= 1/4`.
pub fn g_bessel(ps: &PinchingSet, w: Weight, t: Threshold, policy: &TruncationPolicy) -> Result<f64> {
    g_bessel_with(ps, w, t, SeriesMethod::Auto, policy)
}

/// [`g_bessel`] summed term by term for every length.
pub fn g_bessel_direct(ps: &PinchingSet, w: Weight, t: Threshold, policy: &TruncationPolicy) -> Result<f64> {
    g_bessel_with(ps, w, t, SeriesMethod::Direct, policy)
}

/// `G_{ℓ,0}(T) = (1/2π) Σ_k Σ_n sin(nℓ_k q) / (n sinh(nℓ_k/2))`, from `J_{1/2}(x) = sqrt(2/(πx)) sin x`.
pub fn g_sine_form(ps: &PinchingSet, t: Threshold, policy: &TruncationPolicy) -> Result<f64> {
    let t = t.0;
    if t < Threshold::QUARTER {
        return Err(Error::Domain("sine form is defined for T >= 1/4"));
    }
    let q = (t - 0.25).sqrt();
    if q == 0.0 {
        return Ok(0.0);
    }
    // sin(nℓq)/(n sinh(nℓ/2)) = ℓ · sin(xq)/(x sinh(x/2)) at x = nℓ
    let kernel = |x: f64| (x * q).sin() / (x * (0.5 * x).sinh());
    let mut sum = 0.0;
    for &ell in ps.ells() {
        sum += length_series(ell, kernel, q, SeriesMethod::Auto, policy)?;
    }
    Ok(sum / (2.0 * PI))
}

/// `G_{ℓ,w}(T) - c_w(T) Σ_k log(1/ℓ_k)`, which stays bounded as `ℓ → 0`.
pub fn g_residual(ps: &PinchingSet, w: Weight, t: Threshold, policy: &TruncationPolicy) -> Result<f64> {
    if ps.ells().iter().any(|&l| l >= 1.0) {
        return Err(Error::Domain("residual requires every pinching length < 1"));
    }
    let c = c_weight(w, t)?;
    Ok(g_bessel(ps, w, t, policy)? - c * ps.log_sum())
}

/// `N_w(T) <= [N_{w+1}(T+ε) - N_{w+1}(T)] / (ε(w+1)) <= N_w(T+ε)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sandwich {
    pub lower: f64,
    pub middle: f64,
    pub upper: f64,
}

impl Sandwich {
    /// Ordering check with a few ulps of slack for the difference quotient.
    pub fn is_ordered(&self) -> bool {
        let slack = 1e-12 * self.lower.abs().max(self.middle.abs()).max(self.upper.abs()).max(1.0);
        self.lower <= self.middle + slack && self.middle <= self.upper + slack
    }
}

pub fn lemma43_check(sd: &SpectralData, w: Weight, t: Threshold, eps: f64) -> Result<Sandwich> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::Domain("eps must be finite and > 0"));
    }
    let w1 = Weight(w.0 + 1.0);
    let t_eps = Threshold(t.0 + eps);
    let lower = counting_direct(sd, w, t);
    let middle = (counting_direct(sd, w1, t_eps) - counting_direct(sd, w1, t)) / (eps * (w.0 + 1.0));
    let upper = counting_direct(sd, w, t_eps);
    Ok(Sandwich { lower, middle, upper })
}

/// `ε* = sqrt(f / Σ log(1/ℓ_k))`, the minimiser of `max(ε·log_sum, f/ε)`.
pub fn balance_epsilon(f_ell: f64, log_sum: f64) -> Result<f64> {
    if !(f_ell > 0.0) || !(log_sum > 0.0) || !f_ell.is_finite() || !log_sum.is_finite() {
        return Err(Error::Domain("balance_epsilon needs positive finite inputs"));
    }
    Ok((f_ell / log_sum).sqrt())
}

/// Common size `sqrt(f · log_sum)` of both error terms at `ε*`.
pub fn balanced_error(f_ell: f64, log_sum: f64) -> Result<f64> {
    balance_epsilon(f_ell, log_sum)?;
    Ok((f_ell * log_sum).sqrt())
}
