//! Adaptive Gauss–Kronrod (7/15) quadrature over finite intervals.
//!
//! Integrands may be real or complex; anything implementing [`QuadValue`]
//! works. The embedded Gauss estimate `|K15 - G7|` is used as the error
//! bound of each segment, which is pessimistic for smooth integrands.

use alloc::vec::Vec;
use core::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::policy::TruncationPolicy;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

// Gauss weights for XGK[1], XGK[3], XGK[5] and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Values an integrand may return.
pub trait QuadValue: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

/// An integral together with its error bound.
#[derive(Debug, Clone, Copy)]
pub struct Estimate<V> {
    pub value: V,
    pub error: f64,
    pub evals: usize,
}

/// One 15-point Kronrod panel on `[a, b]`; returns the Kronrod value and `|K15 - G7|`.
pub fn gk15<V, F>(f: &mut F, a: f64, b: f64) -> (V, f64)
where
    V: QuadValue,
    F: FnMut(f64) -> V,
{
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, (&x, &wk)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * x;
        let pair = f(centre - dx) + f(centre + dx);
        kronrod = kronrod + pair * wk;
        if j % 2 == 1 {
            gauss = gauss + pair * WG[j / 2];
        }
    }
    let value = kronrod * half;
    let err = ((kronrod - gauss) * half).magnitude();
    (value, err)
}

struct Segment<V> {
    a: f64,
    b: f64,
    value: V,
    error: f64,
}

/// Integrates `f` over `[a, b]` to `policy` tolerance.
pub fn integrate<V, F>(f: F, a: f64, b: f64, policy: &TruncationPolicy) -> Result<Estimate<V>>
where
    V: QuadValue,
    F: FnMut(f64) -> V,
{
    integrate_with_breaks(f, &[a, b], policy)
}

/// Like [`integrate`], starting from the initial partition `breaks` (ascending).
pub fn integrate_with_breaks<V, F>(
    mut f: F,
    breaks: &[f64],
    policy: &TruncationPolicy,
) -> Result<Estimate<V>>
where
    V: QuadValue,
    F: FnMut(f64) -> V,
{
    if breaks.len() < 2 {
        return Err(Error::Domain("quadrature needs at least one interval"));
    }
    let mut segments: Vec<Segment<V>> = Vec::with_capacity(64);
    let mut evals = 0usize;
    for w in breaks.windows(2) {
        if !(w[1] > w[0]) {
            if w[1] == w[0] {
                continue;
            }
            return Err(Error::Domain("quadrature breakpoints must ascend"));
        }
        let (value, error) = gk15(&mut f, w[0], w[1]);
        evals += 15;
        segments.push(Segment { a: w[0], b: w[1], value, error });
    }
    if segments.is_empty() {
        return Ok(Estimate { value: V::zero(), error: 0.0, evals });
    }

    loop {
        let (total, err) = segments.iter().fold((V::zero(), 0.0), |(v, e), s| (v + s.value, e + s.error));
        if err <= policy.target(total.magnitude()) {
            return Ok(Estimate { value: total, error: err, evals });
        }
        if evals + 30 > policy.max_quad_evals {
            return Err(Error::NonConvergence { estimate: err, evals });
        }
        let (worst, _) = segments
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |acc, (i, s)| if s.error > acc.1 { (i, s.error) } else { acc });
        let seg = segments.swap_remove(worst);
        let mid = 0.5 * (seg.a + seg.b);
        if !(mid > seg.a && mid < seg.b) {
            // Interval exhausted at machine resolution; accept what remains.
            return Ok(Estimate { value: total, error: err, evals });
        }
        let (lv, le) = gk15(&mut f, seg.a, mid);
        let (rv, re) = gk15(&mut f, mid, seg.b);
        evals += 30;
        segments.push(Segment { a: seg.a, b: mid, value: lv, error: le });
        segments.push(Segment { a: mid, b: seg.b, value: rv, error: re });
    }
}
