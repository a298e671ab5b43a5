//! Gamma and real-order J-Bessel functions.
//!
//! `bessel_j` switches between three regimes:
//!
//! * ascending power series for `x <= max(8, p)`,
//! * Hankel's asymptotic expansion for `x >= 25` when it converges to
//!   machine precision,
//! * Miller's backward recurrence normalised with Neumann's identity
//!   `(x/2)^q / Γ(q+1) = Σ_j d_j J_{q+2j}(x)` everywhere in between.
//!
//! `bessel_j_oracle` re-evaluates the ascending series in double-double
//! arithmetic and is trusted only for `x <= 30`.

use core::f64::consts::PI;

#[allow(unused_imports)] // inherent methods win when std is linked
use num_traits::Float;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(x) for x > 0.
pub fn gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain("gamma requires a finite x > 0"));
    }
    if x < 0.5 {
        return Ok(lanczos(x + 1.0) / x);
    }
    Ok(lanczos(x))
}

// Valid for x >= 0.5.
fn lanczos(x: f64) -> f64 {
    let x = x - 1.0;
    let mut a = LANCZOS[0];
    let t = x + LANCZOS_G + 0.5;
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    // Split the power so that t^(x+1/2) does not overflow before e^{-t} is applied.
    let half = t.powf(0.5 * (x + 0.5));
    (2.0 * PI).sqrt() * half * (half * (-t).exp()) * a
}

/// Order `p >= -1/2` of a J-Bessel function, with `1/Γ(p+1)` cached.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselOrder {
    p: f64,
    inv_gamma_p1: f64,
}

impl BesselOrder {
    pub fn new(p: f64) -> Result<Self> {
        if !(p >= -0.5) || !p.is_finite() {
            return Err(Error::Domain("Bessel order must be finite and >= -1/2"));
        }
        Ok(Self { p, inv_gamma_p1: 1.0 / gamma(p + 1.0)? })
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.p
    }

    /// Scaled function `(2/x)^p J_p(x)`, which is entire and equals `1/Γ(p+1)` at 0.
    pub fn scaled(&self, x: f64) -> f64 {
        let p = self.p;
        if x <= series_cutoff(p) {
            return self.inv_gamma_p1 * series_unit(p, x);
        }
        let j = if x >= HANKEL_MIN {
            hankel(p, x).unwrap_or_else(|| self.miller(x))
        } else {
            self.miller(x)
        };
        j * (2.0 / x).powf(p)
    }

    /// J_p(x) for x > 0.
    fn eval_positive(&self, x: f64) -> f64 {
        let p = self.p;
        if x <= series_cutoff(p) {
            return (0.5 * x).powf(p) * self.inv_gamma_p1 * series_unit(p, x);
        }
        if x >= HANKEL_MIN {
            if let Some(j) = hankel(p, x) {
                return j;
            }
        }
        self.miller(x)
    }

    fn miller(&self, x: f64) -> f64 {
        let p = self.p;
        // Normalise on orders q + 2j with q > 0 (or q = 0 exactly).
        let (q, offset, inv_gamma_q1) = if p >= 0.0 {
            (p, 0usize, self.inv_gamma_p1)
        } else {
            (p + 1.0, 1usize, self.inv_gamma_p1 / (p + 1.0))
        };
        let top = {
            let m = (x + 30.0 + 4.0 * x.sqrt()).ceil() as usize;
            m + (m + offset) % 2
        };
        // Neumann coefficients, d_0 = 1, d_1 = q + 2,
        // d_j / d_{j-1} = (q + 2j)/(q + 2j - 2) * (q + j - 1)/j.
        let j_top = (top - offset) / 2;
        let mut d = 1.0;
        for j in 1..=j_top {
            let jf = j as f64;
            d *= if j == 1 { q + 2.0 } else { (q + 2.0 * jf) / (q + 2.0 * jf - 2.0) * (q + jf - 1.0) / jf };
        }

        let mut next = 0.0; // f_{k+1}
        let mut cur = 1e-300; // f_k at k = top
        let mut sum = 0.0;
        let mut j = j_top;
        let mut k = top;
        loop {
            if k >= offset && (k - offset) % 2 == 0 {
                sum += d * cur;
                if j > 0 {
                    let jf = j as f64;
                    d /= if j == 1 { q + 2.0 } else { (q + 2.0 * jf) / (q + 2.0 * jf - 2.0) * (q + jf - 1.0) / jf };
                    j -= 1;
                }
            }
            if k == 0 {
                break;
            }
            let nu = p + k as f64;
            let prev = 2.0 * nu / x * cur - next;
            next = cur;
            cur = prev;
            k -= 1;
            if cur.abs() > 1e250 {
                cur *= 1e-250;
                next *= 1e-250;
                sum *= 1e-250;
            }
        }
        cur * (0.5 * x).powf(q) * inv_gamma_q1 / sum
    }
}

const HANKEL_MIN: f64 = 25.0;

#[inline]
fn series_cutoff(p: f64) -> f64 {
    if p > 8.0 {
        p
    } else {
        8.0
    }
}

/// Σ_m (-x²/4)^m / (m! (p+1)_m).
fn series_unit(p: f64, x: f64) -> f64 {
    let y = -0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut m = 0.0;
    loop {
        m += 1.0;
        term *= y / (m * (m + p));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() || m > 500.0 {
            return sum;
        }
    }
}

/// Hankel expansion; `None` when it fails to reach machine precision.
fn hankel(p: f64, x: f64) -> Option<f64> {
    let mu = 4.0 * p * p;
    let mut pp = 1.0;
    let mut qq = 0.0;
    let mut term = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..200u32 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        term *= (mu - odd * odd) / (kf * 8.0 * x);
        if term == 0.0 {
            break;
        }
        // a_k / x^k enters with sign (-1)^{floor(k/2)}
        let signed = if (k / 2) % 2 == 0 { term } else { -term };
        if k % 2 == 0 {
            pp += signed;
        } else {
            qq += signed;
        }
        let mag = term.abs();
        if mag < 1e-17 {
            break;
        }
        if mag > prev {
            return None;
        }
        prev = mag;
        if k == 199 {
            return None;
        }
    }
    let chi = x - (0.5 * p + 0.25) * PI;
    Some((2.0 / (PI * x)).sqrt() * (pp * chi.cos() - qq * chi.sin()))
}

/// J_p(x) for real order `p >= -1/2` and `x >= 0`.
pub fn bessel_j(p: BesselOrder, x: f64) -> Result<f64> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain("bessel_j requires finite x >= 0"));
    }
    if x == 0.0 {
        return if p.p == 0.0 {
            Ok(1.0)
        } else if p.p > 0.0 {
            Ok(0.0)
        } else {
            Err(Error::Domain("J_p(0) diverges for p < 0"))
        };
    }
    Ok(p.eval_positive(x))
}

/// Partial sum of the ascending series with `terms` terms, in double-double arithmetic.
pub fn bessel_j_oracle(p: BesselOrder, x: f64, terms: usize) -> Result<f64> {
    if !(x >= 0.0) || x > 30.0 {
        return Err(Error::Domain("series oracle is only trusted for 0 <= x <= 30"));
    }
    if terms == 0 {
        return Err(Error::Domain("series oracle needs at least one term"));
    }
    let prefactor = if x == 0.0 {
        if p.p == 0.0 {
            1.0
        } else if p.p > 0.0 {
            0.0
        } else {
            return Err(Error::Domain("J_p(0) diverges for p < 0"));
        }
    } else {
        (0.5 * x).powf(p.p)
    };
    let y = dd::two_prod(x, x).scale(-0.25);
    let mut term = dd::Dd::from(1.0);
    let mut sum = term;
    for m in 1..terms {
        let m = m as f64;
        let denom = dd::two_prod(m, m + p.p);
        term = term.mul(y).div(denom);
        sum = sum.add(term);
    }
    Ok(prefactor * p.inv_gamma_p1 * sum.to_f64())
}

mod dd {
    //! Minimal double-double arithmetic (Dekker/Knuth error-free transforms).

    #[derive(Debug, Clone, Copy)]
    pub struct Dd {
        hi: f64,
        lo: f64,
    }

    impl From<f64> for Dd {
        fn from(v: f64) -> Self {
            Dd { hi: v, lo: 0.0 }
        }
    }

    #[inline]
    fn two_sum(a: f64, b: f64) -> (f64, f64) {
        let s = a + b;
        let bb = s - a;
        (s, (a - (s - bb)) + (b - bb))
    }

    #[inline]
    fn split(a: f64) -> (f64, f64) {
        let c = 134_217_729.0 * a;
        let hi = c - (c - a);
        (hi, a - hi)
    }

    pub fn two_prod(a: f64, b: f64) -> Dd {
        let p = a * b;
        let (ah, al) = split(a);
        let (bh, bl) = split(b);
        let e = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
        Dd { hi: p, lo: e }
    }

    impl Dd {
        pub fn to_f64(self) -> f64 {
            self.hi + self.lo
        }

        pub fn scale(self, s: f64) -> Dd {
            // Exact for powers of two.
            Dd { hi: self.hi * s, lo: self.lo * s }
        }

        pub fn add(self, o: Dd) -> Dd {
            let (s, e) = two_sum(self.hi, o.hi);
            let e = e + self.lo + o.lo;
            let (hi, lo) = two_sum(s, e);
            Dd { hi, lo }
        }

        fn sub(self, o: Dd) -> Dd {
            self.add(Dd { hi: -o.hi, lo: -o.lo })
        }

        pub fn mul(self, o: Dd) -> Dd {
            let p = two_prod(self.hi, o.hi);
            let e = p.lo + (self.hi * o.lo + self.lo * o.hi);
            let (hi, lo) = two_sum(p.hi, e);
            Dd { hi, lo }
        }

        pub fn div(self, o: Dd) -> Dd {
            let q1 = self.hi / o.hi;
            let r = self.sub(o.mul(Dd::from(q1)));
            let q2 = r.hi / o.hi;
            let r = r.sub(o.mul(Dd::from(q2)));
            let q3 = r.hi / o.hi;
            let (hi, lo) = two_sum(q1, q2);
            Dd { hi, lo }.add(Dd::from(q3))
        }
    }
}
