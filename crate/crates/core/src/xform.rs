//! Laplace transform and its inversion along a vertical Bromwich line.
//!
//! The inverse is evaluated as
//! `f(T) = (e^{aT}/π) ∫_0^∞ Re[e^{isT} F(a + is)] ds`,
//! which relies on `F(conj z) = conj F(z)` for real-valued `f`. The range is
//! covered by Gauss–Kronrod panels of width at most `π/(4T)` and is doubled
//! until two successive extensions change the result by less than the
//! contour tolerance.

use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // inherent methods win when std is linked
use num_traits::Float;

use crate::error::{Error, Result};
use crate::policy::TruncationPolicy;
use crate::quad::{self, gk15};
use crate::specfun::gamma;

/// Vertical contour `Re z = a` and the discretisation used on it.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ContourSpec {
    /// Abscissa of the line.
    pub a: f64,
    /// Initial truncation height; grown by doubling as needed.
    pub s_max: f64,
    /// Nodes on `[-s_max, s_max]`; fixes the initial panel width.
    pub n_nodes: usize,
    /// Relative tolerance for truncation and panel error, against the L1 size of the integrand.
    pub tol: f64,
    /// Evaluation budget for one inversion.
    pub max_evals: usize,
}

impl ContourSpec {
    /// Defaults for inverting at threshold `t`: `a = 1/t`.
    pub fn for_threshold(t: f64) -> Self {
        Self { a: 1.0 / t, s_max: 16.0, n_nodes: 256, tol: 1e-7, max_evals: 4_000_000 }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a > 0.0) || !self.a.is_finite() {
            return Err(Error::Domain("contour abscissa a must be finite and > 0"));
        }
        if !(self.s_max > 0.0) || !self.s_max.is_finite() {
            return Err(Error::Domain("contour height s_max must be finite and > 0"));
        }
        if self.n_nodes < 64 || !self.n_nodes.is_multiple_of(2) {
            return Err(Error::Domain("contour n_nodes must be even and >= 64"));
        }
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return Err(Error::Domain("contour tol must lie in (0, 1)"));
        }
        if self.max_evals == 0 {
            return Err(Error::Domain("contour max_evals must be >= 1"));
        }
        Ok(())
    }
}

/// Outcome of a Bromwich inversion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inversion {
    pub value: f64,
    /// Change contributed by the last extension of the contour.
    pub tail_estimate: f64,
    /// Sum of panel error estimates.
    pub quad_error: f64,
    /// Imaginary part of the unfolded integral over the initial range, relative to its L1 size.
    pub imag_residue: f64,
    /// Truncation height actually used.
    pub s_max: f64,
    pub evals: usize,
    /// Absolute tolerance the tail and panel errors were held to.
    pub target: f64,
    /// Whether the tail and panel errors met `target`.
    pub certified: bool,
}

/// Inverse Laplace transform of `f` at time `t`.
///
/// Fails with [`Error::TailNotCertified`] when the tolerance is not met
/// within the budget and with [`Error::ImaginaryResidue`] when the
/// integrand is visibly not conjugate-symmetric.
pub fn bromwich<F>(f: F, t: f64, contour: &ContourSpec) -> Result<Inversion>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    let inv = bromwich_raw(f, t, contour)?;
    if !inv.certified {
        return Err(Error::TailNotCertified {
            value: inv.value,
            tail: inv.tail_estimate.max(inv.quad_error),
            tol: inv.target,
        });
    }
    Ok(inv)
}

/// [`bromwich`] without turning an uncertified tail into an error.
pub fn bromwich_raw<F>(mut f: F, t: f64, contour: &ContourSpec) -> Result<Inversion>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    contour.validate()?;
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain("inversion time must be finite and > 0"));
    }
    let a = contour.a;
    let scale = (a * t).exp() / PI;
    let mut line = Line { f: &mut f, a, t, failure: None };

    let half_nodes = contour.n_nodes / 2;
    let mut panels = half_nodes.div_ceil(15).max(1);
    let max_width = PI / (4.0 * t);
    if contour.s_max / panels as f64 > max_width {
        panels = (contour.s_max / max_width).ceil() as usize;
    }
    let mut width = contour.s_max / panels as f64;

    // Unfolded integral over the initial range, F evaluated on both halves of the line.
    let (raw, raw_l1) = {
        let mut raw = Complex64::new(0.0, 0.0);
        let mut l1 = 0.0;
        let mut lo = 0.0;
        for _ in 0..panels {
            let mut abs_sum = 0.0;
            let (v, _) = gk15(
                &mut |s: f64| {
                    let both = line.eval(s) + line.eval(-s);
                    abs_sum += both.re.abs();
                    both
                },
                lo,
                lo + width,
            );
            raw += v;
            l1 += abs_sum * width / 15.0;
            lo += width;
        }
        (raw, l1)
    };
    if let Some(e) = line.failure.take() {
        return Err(e);
    }
    let residue_limit = 10.0 * contour.tol * raw_l1;
    if raw.im.abs() > residue_limit.max(1e-300) && raw.im.abs() > 1e-12 * raw_l1 {
        return Err(Error::ImaginaryResidue { residue: raw.im.abs(), limit: residue_limit });
    }
    let imag_residue = raw.im.abs() / raw.re.abs().max(1e-300);

    let mut refinements = 0;
    'refine: loop {
        let mut evals = 0usize;
        let mut lo = 0.0;
        let mut hi = contour.s_max;
        let mut total = 0.0;
        let mut l1 = 0.0;
        let mut qerr = 0.0;
        let mut previous_chunk = f64::INFINITY;
        loop {
            let (chunk, chunk_err, chunk_l1, n) = chunk_integral(&mut |s: f64| line.eval(s).re, lo, hi, width);
            if let Some(e) = line.failure.take() {
                return Err(e);
            }
            evals += n;
            total += chunk;
            qerr += chunk_err;
            l1 += chunk_l1;

            let target = contour.tol * l1;
            if qerr > target && refinements < 6 {
                refinements += 1;
                width *= 0.5;
                continue 'refine;
            }
            let tail = chunk.abs();
            let converged = lo > 0.0 && tail <= target && previous_chunk <= target;
            if converged || evals >= contour.max_evals {
                return Ok(Inversion {
                    value: scale * total,
                    tail_estimate: scale * tail,
                    quad_error: scale * qerr,
                    imag_residue,
                    s_max: hi,
                    evals,
                    target: scale * target,
                    certified: converged && qerr <= target,
                });
            }
            previous_chunk = if lo > 0.0 { tail } else { f64::INFINITY };
            lo = hi;
            hi *= 2.0;
        }
    }
}

// Integral, summed |K-G| error, L1 size and evaluation count over [lo, hi].
fn chunk_integral<G: FnMut(f64) -> f64>(g: &mut G, lo: f64, hi: f64, width: f64) -> (f64, f64, f64, usize) {
    let n = ((hi - lo) / width).ceil().max(1.0) as usize;
    let h = (hi - lo) / n as f64;
    let mut value = 0.0;
    let mut err = 0.0;
    let mut l1 = 0.0;
    for i in 0..n {
        let a = lo + i as f64 * h;
        let b = if i + 1 == n { hi } else { a + h };
        let mut abs_sum = 0.0;
        let (v, e) = gk15(
            &mut |s| {
                let y = g(s);
                abs_sum += y.abs();
                y
            },
            a,
            b,
        );
        value += v;
        err += e;
        l1 += abs_sum * (b - a) / 15.0;
    }
    (value, err, l1, 15 * n)
}

struct Line<'a, F> {
    f: &'a mut F,
    a: f64,
    t: f64,
    failure: Option<Error>,
}

impl<F> Line<'_, F>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    /// `e^{isT} F(a + is)`; the first error is parked and zeros returned after it.
    fn eval(&mut self, s: f64) -> Complex64 {
        if self.failure.is_some() {
            return Complex64::new(0.0, 0.0);
        }
        match (self.f)(Complex64::new(self.a, s)) {
            Ok(v) => Complex64::new(0.0, s * self.t).exp() * v,
            Err(e) => {
                self.failure = Some(e);
                Complex64::new(0.0, 0.0)
            }
        }
    }
}

/// `Σ (T - λ)^w`-type inversion: the Bromwich integral of `Γ(w+1) trace(z) z^{-w-1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedInverse {
    pub value: f64,
    pub inversion: Inversion,
    /// Set when `w <= 3/2` and the tail could not be certified; the value is then best effort.
    pub uncertified: bool,
}

pub fn weighted_inverse<F>(mut trace: F, w: f64, t: f64, contour: &ContourSpec) -> Result<WeightedInverse>
where
    F: FnMut(Complex64) -> Result<Complex64>,
{
    if !(w >= 0.0) || !w.is_finite() {
        return Err(Error::Domain("weight w must be finite and >= 0"));
    }
    let g = gamma(w + 1.0)?;
    let inv = bromwich_raw(|z| Ok(trace(z)? * g * z.powf(-(w + 1.0))), t, contour)?;
    if !inv.certified && w > 1.5 {
        return Err(Error::TailNotCertified {
            value: inv.value,
            tail: inv.tail_estimate.max(inv.quad_error),
            tol: inv.target,
        });
    }
    Ok(WeightedInverse { value: inv.value, inversion: inv, uncertified: !inv.certified })
}

/// `∫_0^∞ e^{-zt} f(t) dt` for `|f(t)| <= M e^{ct}` with `c < Re z`.
pub fn laplace<F>(mut f: F, z: Complex64, c: f64, policy: &TruncationPolicy) -> Result<Complex64>
where
    F: FnMut(f64) -> f64,
{
    if !(z.re > 0.0) {
        return Err(Error::Domain("Laplace transform needs Re(z) > 0"));
    }
    if !(c < z.re) {
        return Err(Error::GrowthBound { c, re: z.re });
    }
    let rate = z.re - c;
    let t_max = (-policy.rel_tol.ln() + 25.0) / rate;
    let mut breaks = alloc::vec::Vec::new();
    breaks.push(0.0);
    let mut b = 1.0 / rate;
    while b < t_max {
        breaks.push(b);
        b *= 2.0;
    }
    breaks.push(t_max);
    let est = quad::integrate_with_breaks(|t: f64| (-z * t).exp() * f(t), &breaks, policy)?;
    Ok(est.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{bessel_j_oracle, BesselOrder};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn laplace_examples() {
        let p = TruncationPolicy::default();
        let v = laplace(|t| t, c(2.0, 0.0), 0.0, &p).unwrap();
        assert!((v - c(0.25, 0.0)).norm() < 1e-12, "{v}");
        let v = laplace(|_| 1.0, c(3.0, 0.0), 0.0, &p).unwrap();
        assert!((v - c(1.0 / 3.0, 0.0)).norm() < 1e-12);
        let v = laplace(|t| (-0.5 * t).exp(), c(1.0, 0.0), -0.5, &p).unwrap();
        assert!((v - c(1.0 / 1.5, 0.0)).norm() < 1e-12);
        let v = laplace(|t| t * t, c(1.0, 2.0), 0.0, &p).unwrap();
        assert!((v - 2.0 / c(1.0, 2.0).powi(3)).norm() < 1e-11);
        assert!(matches!(laplace(|t| t, c(1.0, 0.0), 1.0, &p), Err(Error::GrowthBound { .. })));
    }

    #[test]
    fn inverse_of_ramp() {
        let inv = bromwich(|z| Ok(z.powi(-2)), 1.0, &ContourSpec::for_threshold(1.0)).unwrap();
        assert!((inv.value - 1.0).abs() < 1e-6, "{inv:?}");
        assert!(inv.imag_residue <= 1e-8);
    }

    #[test]
    fn inverse_of_powers_round_trip() {
        for &w in &[1.0, 2.0] {
            for &t in &[0.5, 1.0, 2.0] {
                let g = gamma(w + 1.0).unwrap();
                let inv = bromwich(|z| Ok(g * z.powf(-(w + 1.0))), t, &ContourSpec::for_threshold(t)).unwrap();
                let want = t.powf(w);
                assert!((inv.value - want).abs() <= 1e-4 * want, "w={w} T={t}: {}", inv.value);
            }
        }
    }

    #[test]
    fn shift_identity() {
        for &b in &[0.1, 0.4] {
            for &t in &[0.05, 0.3, 0.5, 1.0, 2.0] {
                let inv = bromwich(|z| Ok((-b * z).exp() * z.powi(-2)), t, &ContourSpec::for_threshold(t)).unwrap();
                let want = (t - b).max(0.0);
                assert!((inv.value - want).abs() <= 1e-4 * want.max(1.0), "b={b} T={t}: {}", inv.value);
            }
        }
    }

    #[test]
    fn bessel_identity() {
        for &mu in &[1.5, 2.0, 3.0] {
            for &k in &[0.5, 1.0] {
                for &t in &[0.5, 1.0, 2.0] {
                    let inv =
                        bromwich(|z| Ok(z.powf(-mu) * (-k / z).exp()), t, &ContourSpec::for_threshold(t)).unwrap();
                    let order = BesselOrder::new(mu - 1.0).unwrap();
                    let want = (t / k).powf(0.5 * (mu - 1.0)) * bessel_j_oracle(order, 2.0 * (k * t).sqrt(), 80).unwrap();
                    assert!((inv.value - want).abs() <= 1e-4 * want.abs(), "mu={mu} k={k} T={t}: {} vs {want}", inv.value);
                    assert!(inv.imag_residue <= 1e-8);
                }
            }
        }
    }

    #[test]
    fn bad_contour_is_rejected() {
        let mut spec = ContourSpec::for_threshold(1.0);
        spec.n_nodes = 63;
        assert!(bromwich(|z| Ok(z.inv()), 1.0, &spec).is_err());
        spec.n_nodes = 64;
        spec.a = 0.0;
        assert!(bromwich(|z| Ok(z.inv()), 1.0, &spec).is_err());
    }

    #[test]
    fn non_real_inverse_is_flagged() {
        // F(z) = i/z² has no real-valued inverse.
        let r = bromwich(|z| Ok(c(0.0, 1.0) * z.powi(-2)), 1.0, &ContourSpec::for_threshold(1.0));
        assert!(matches!(r, Err(Error::ImaginaryResidue { .. })), "{r:?}");
    }

    #[test]
    fn slowly_decaying_transform_reports_uncertified_tail() {
        let spec = ContourSpec { max_evals: 2_000, ..ContourSpec::for_threshold(1.0) };
        let r = bromwich(|z| Ok(z.powf(-1.0)), 1.0, &spec);
        assert!(matches!(r, Err(Error::TailNotCertified { .. })), "{r:?}");
    }
}
