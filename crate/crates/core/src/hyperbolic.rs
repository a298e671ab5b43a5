//! Heat kernel of the hyperbolic plane and its periodisation over a
//! hyperbolic cylinder `<γ>\h`.

use core::f64::consts::PI;

#[allow(unused_imports)] // inherent methods win when std is linked
use num_traits::Float;

use crate::error::{Error, Result};
use crate::policy::TruncationPolicy;
use crate::quad;

/// Point of evaluation `(t, ρ)` for the plane heat kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatKernelQuery {
    t: f64,
    rho: f64,
}

impl HeatKernelQuery {
    pub fn new(t: f64, rho: f64) -> Result<Self> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::Domain("heat kernel time must be finite and > 0"));
        }
        if !(rho >= 0.0) || !rho.is_finite() {
            return Err(Error::Domain("hyperbolic distance must be finite and >= 0"));
        }
        Ok(Self { t, rho })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }
}

/// Quotient of the plane by a single hyperbolic translation of length `ell`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cylinder {
    ell: f64,
}

impl Cylinder {
    pub fn new(ell: f64) -> Result<Self> {
        if !(ell > 0.0) || !ell.is_finite() {
            return Err(Error::Domain("cylinder length must be finite and > 0"));
        }
        Ok(Self { ell })
    }

    pub fn ell(&self) -> f64 {
        self.ell
    }
}

/// Smallest cylinder length accepted by [`cylinder_trace`].
pub const MIN_CYLINDER_ELL: f64 = 0.05;

// ln(1/tol) plus a margin, used to place Gaussian cut-offs.
fn gaussian_budget(policy: &TruncationPolicy) -> f64 {
    -policy.rel_tol.ln() + 12.0
}

/// `K_h(t, ρ)` from the ρ-integral representation.
///
/// The endpoint singularity at `u = ρ` is removed with `u = ρ + v²`, and
/// `cosh u - cosh ρ = 2 sinh(ρ + v²/2) sinh(v²/2)` is evaluated in a
/// factored form that neither cancels nor overflows.
pub fn heat_kernel(q: HeatKernelQuery, policy: &TruncationPolicy) -> Result<f64> {
    let (t, rho) = (q.t, q.rho);
    let u_max = (rho * rho + 4.0 * t * gaussian_budget(policy)).sqrt();
    let v_max = (u_max - rho).sqrt();

    let integrand = |v: f64| -> f64 {
        let h = 0.5 * v * v;
        let u = rho + v * v;
        let s = rho + h;
        if s <= 0.0 {
            return 0.0;
        }
        // 1/sqrt(sinh s) = e^{-s/2} sqrt(2 / (1 - e^{-2s}))
        let inv_sqrt_sinh_s = (2.0 / -(-2.0 * s).exp_m1()).sqrt();
        // sinh(h)/h = e^h (1 - e^{-2h}) / (2h)
        let sinhc_scaled = if h < 1e-8 { 1.0 } else { -(-2.0 * h).exp_m1() / (2.0 * h) };
        2.0 * u * (-u * u / (4.0 * t) - 0.5 * s - 0.5 * h).exp() * inv_sqrt_sinh_s / sinhc_scaled.sqrt()
    };

    let mut breaks = [0.0, 0.0, 0.0, v_max];
    let knee = (2.0 * rho).sqrt().min(0.25 * v_max);
    breaks[1] = knee;
    breaks[2] = (t.sqrt().sqrt()).clamp(knee, v_max);
    let est = quad::integrate_with_breaks(integrand, &breaks, policy)?;

    let prefactor = core::f64::consts::SQRT_2 * (-t / 4.0).exp() / (4.0 * PI * t).powf(1.5);
    Ok(prefactor * est.value)
}

/// `K_h(t, 0)` from its spectral representation.
pub fn heat_kernel_origin(t: f64, policy: &TruncationPolicy) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain("heat kernel time must be finite and > 0"));
    }
    let r_max = (gaussian_budget(policy) / t).sqrt();
    let peak = (0.5 / t).sqrt().min(0.5 * r_max);
    let integrand = |r: f64| (-r * r * t).exp() * (PI * r).tanh() * r;
    let est = quad::integrate_with_breaks(integrand, &[0.0, peak, r_max], policy)?;
    Ok((-t / 4.0).exp() * est.value / (2.0 * PI))
}

/// Displacement `d(x, γⁿx)` on the cylinder for the cross-section coordinate `v = cot θ`.
///
/// Satisfies `cosh d = 1 + 2 sinh²(nℓ/2)(1 + v²)`.
pub fn cylinder_displacement(c: Cylinder, n: i64, v: f64) -> f64 {
    let half = 0.5 * (n.unsigned_abs() as f64) * c.ell;
    2.0 * (half.sinh() * 1.0f64.hypot(v)).asinh()
}

/// `(1/2) ∫_{C_γ} [K_{C_γ}(t,x,x) - K_h(t,0)] dμ(x)` by direct unfolding.
///
/// After integrating out the radial coordinate (contributing `ℓ`) the
/// remaining cross-section integral runs over `v ∈ ℝ`; it is evaluated in
/// `v = sinh y`, which turns the logarithmic growth of the displacement into
/// linear growth so that the integrand decays like a Gaussian in `y`.
pub fn cylinder_trace(c: Cylinder, t: f64, policy: &TruncationPolicy) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain("heat kernel time must be finite and > 0"));
    }
    if c.ell < MIN_CYLINDER_ELL {
        return Err(Error::Guard("cylinder_trace requires ell >= 0.05"));
    }
    const MAX_IMAGES: i64 = 100_000;
    let inner = TruncationPolicy { rel_tol: (policy.rel_tol * 1e-2).max(1e-13), ..*policy };
    let cut = 1e-3 * policy.rel_tol;
    let y_max = 2.0 * t + (4.0 * t * gaussian_budget(policy)).sqrt() + 1.0;

    let mut failure: Option<Error> = None;
    let integrand = |y: f64| -> f64 {
        if failure.is_some() {
            return 0.0;
        }
        let cosh_y = y.cosh();
        let mut sum = 0.0;
        for n in 1..=MAX_IMAGES {
            let d = 2.0 * ((0.5 * n as f64 * c.ell).sinh() * cosh_y).asinh();
            let q = match HeatKernelQuery::new(t, d) {
                Ok(q) => q,
                Err(e) => {
                    failure = Some(e);
                    return 0.0;
                }
            };
            let k = match heat_kernel(q, &inner) {
                Ok(k) => k,
                Err(e) => {
                    failure = Some(e);
                    return 0.0;
                }
            };
            sum += k;
            if k <= cut * sum || k == 0.0 {
                return sum * cosh_y;
            }
        }
        failure = Some(Error::TruncationBudget { budget: MAX_IMAGES as usize });
        0.0
    };
    let est = quad::integrate_with_breaks(integrand, &[0.0, 0.5 * y_max, y_max], policy);
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(2.0 * c.ell * est?.value)
}
