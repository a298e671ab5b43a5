//! Exit criteria. Each test prints one `PASS`/`FAIL` line, then asserts.

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spectra_core::counting::{c_weight, counting_direct, g_bessel, g_residual, lemma43_check};
use spectra_core::hyperbolic::{cylinder_trace, heat_kernel, heat_kernel_origin};
use spectra_core::specfun::{bessel_j, bessel_j_oracle, BesselOrder};
use spectra_core::sweep::{run_sweep, trace_growth};
use spectra_core::trace::{degenerating_trace, hyperbolic_trace, spectral_trace};
use spectra_core::xform::{bromwich, weighted_inverse};
use spectra_core::*;

fn pol() -> TruncationPolicy {
    TruncationPolicy::default()
}

fn wt(w: f64, t: f64) -> (Weight, Threshold) {
    (Weight::new(w).unwrap(), Threshold::new(t).unwrap())
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn verdict(id: u32, name: &str, ok: bool, detail: String, elapsed: Duration, budget_s: f64) {
    let in_time = elapsed.as_secs_f64() < budget_s;
    let pass = ok && in_time;
    println!(
        "criterion {id:>2} {} {name}: {detail}; {:.2}s of {budget_s}s",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    assert!(ok, "criterion {id} ({name}) failed: {detail}");
    assert!(in_time, "criterion {id} ({name}) exceeded {budget_s}s");
}

#[test]
fn criterion_01_bessel_half_order_collapse() {
    let start = Instant::now();
    let order = BesselOrder::new(-0.5).unwrap();
    let xs = [0.1, 0.5].into_iter().chain((1..=50).map(f64::from));
    let worst = xs
        .map(|x| (bessel_j(order, x).unwrap() - (2.0 / (PI * x)).sqrt() * x.cos()).abs())
        .fold(0.0, f64::max);
    verdict(1, "Bessel collapse", worst <= 1e-10, format!("max abs error {worst:.3e} (limit 1e-10)"), start.elapsed(), 1.0);
}

#[test]
fn criterion_02_heat_kernel_formulas_agree() {
    let start = Instant::now();
    let worst = [0.1, 1.0, 10.0]
        .iter()
        .map(|&t| {
            let near = heat_kernel(HeatKernelQuery::new(t, 1e-3).unwrap(), &pol()).unwrap();
            rel(near, heat_kernel_origin(t, &pol()).unwrap())
        })
        .fold(0.0, f64::max);
    verdict(2, "heat-kernel consistency", worst <= 1e-4, format!("max rel gap {worst:.3e} (limit 1e-4)"), start.elapsed(), 5.0);
}

#[test]
fn criterion_03_cylinder_unfolding() {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for ell in [0.5, 1.0, 2.0] {
        for t in [0.5, 1.0, 2.0] {
            let unfolded = cylinder_trace(Cylinder::new(ell).unwrap(), t, &pol()).unwrap();
            let ls = LengthSpectrum::new(vec![(ell, 1)]).unwrap();
            let closed = hyperbolic_trace(&ls, Complex64::new(t, 0.0), &pol()).unwrap().re;
            worst = worst.max(rel(unfolded, closed));
        }
    }
    verdict(3, "cylinder unfolding", worst <= 1e-4, format!("max rel gap {worst:.3e} (limit 1e-4)"), start.elapsed(), 30.0);
}

#[test]
fn criterion_04_inverse_laplace_identities() {
    let start = Instant::now();
    let mut failures = Vec::new();

    // e^{-bz}/z² inverts to (T - b)₊
    for b in [0.1, 0.4] {
        for t in [0.05, 0.3, 0.5, 1.0, 2.0] {
            let v = bromwich(|z| Ok((-b * z).exp() * z.powi(-2)), t, &ContourSpec::for_threshold(t)).unwrap().value;
            let ok = if t > b { rel(v, t - b) <= 1e-4 } else { v.abs() <= 1e-4 };
            if !ok {
                failures.push(format!("shift b={b} T={t}: {v}"));
            }
        }
    }
    // z^{-μ} e^{-k/z} inverts to (T/k)^{(μ-1)/2} J_{μ-1}(2 sqrt(kT))
    for mu in [1.5, 2.0, 3.0] {
        for k in [0.5, 1.0] {
            for t in [0.5, 1.0, 2.0] {
                let v = bromwich(|z| Ok(z.powf(-mu) * (-k / z).exp()), t, &ContourSpec::for_threshold(t)).unwrap().value;
                let order = BesselOrder::new(mu - 1.0).unwrap();
                let want = (t / k).powf(0.5 * (mu - 1.0)) * bessel_j_oracle(order, 2.0 * (k * t).sqrt(), 80).unwrap();
                if rel(v, want) > 1e-4 {
                    failures.push(format!("bessel mu={mu} k={k} T={t}: {v} vs {want}"));
                }
            }
        }
    }
    verdict(
        4,
        "inverse-Laplace identities",
        failures.is_empty(),
        if failures.is_empty() { "28 grid points within 1e-4".into() } else { failures.join("; ") },
        start.elapsed(),
        20.0,
    );
}

#[test]
fn criterion_05_counting_by_inversion() {
    let start = Instant::now();
    let sd = SpectralData::new(vec![(0.0, 1), (0.2, 1), (0.7, 2)], 1.0).unwrap();
    let mut worst: f64 = 0.0;
    for w in [2.0, 3.0] {
        for t in [0.5, 1.0] {
            let inv = weighted_inverse(|z| spectral_trace(&sd, z), w, t, &ContourSpec::for_threshold(t)).unwrap();
            let (ww, tt) = wt(w, t);
            worst = worst.max(rel(inv.value, counting_direct(&sd, ww, tt)));
        }
    }
    verdict(5, "counting oracle equivalence", worst <= 1e-3, format!("max rel gap {worst:.3e} (limit 1e-3)"), start.elapsed(), 20.0);
}

#[test]
fn criterion_06_g_dual_path() {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for (ells, w, t) in [(vec![0.1], 2.0, 1.0), (vec![0.2, 0.3], 2.0, 1.5)] {
        let ps = PinchingSet::new(ells).unwrap();
        let (ww, tt) = wt(w, t);
        let g = g_bessel(&ps, ww, tt, &pol()).unwrap();
        let inv = weighted_inverse(|z| degenerating_trace(&ps, z, &pol()), w, t, &ContourSpec::for_threshold(t)).unwrap();
        worst = worst.max(rel(inv.value, g));
    }
    verdict(6, "G dual-path equivalence", worst <= 1e-3, format!("max rel gap {worst:.3e} (limit 1e-3)"), start.elapsed(), 30.0);
}

#[test]
fn criterion_07_vanishing_below_quarter() {
    let start = Instant::now();
    let ps = PinchingSet::new(vec![0.1]).unwrap();
    let inv = weighted_inverse(|z| degenerating_trace(&ps, z, &pol()), 2.0, 0.2, &ContourSpec::for_threshold(0.2)).unwrap();
    let (w, t) = wt(2.0, 0.2);
    let g = g_bessel(&ps, w, t, &pol()).unwrap();
    let ok = inv.value.abs() <= 1e-3 && g == 0.0;
    verdict(7, "vanishing below 1/4", ok, format!("|inverse| = {:.3e} (limit 1e-3), series = {g}", inv.value.abs()), start.elapsed(), 10.0);
}

/// Residuals over `ℓ = 2^-j`, `j = 2..=20`.
fn residuals(w: f64, t: f64) -> Vec<(u32, f64)> {
    let (ww, tt) = wt(w, t);
    (2..=20)
        .map(|j| {
            let ps = PinchingSet::new(vec![2f64.powi(-(j as i32))]).unwrap();
            (j, g_residual(&ps, ww, tt, &pol()).unwrap())
        })
        .collect()
}

fn slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

#[test]
fn criterion_08_residual_stays_bounded() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut worst_ratio: f64 = 0.0;
    let mut worst_slope: f64 = 0.0;
    for w in [0.0, 2.0] {
        for t in [0.5, 1.0] {
            let res = residuals(w, t);
            let first = res[0].1.abs();
            let ratio = res.iter().map(|r| r.1.abs()).fold(0.0, f64::max) / first;
            let tail: Vec<(f64, f64)> =
                res.iter().filter(|r| r.0 >= 10).map(|&(j, r)| (j as f64 * 2f64.ln(), r)).collect();
            let c = c_weight(Weight::new(w).unwrap(), Threshold::new(t).unwrap()).unwrap();
            let s = slope(&tail) / c;
            worst_ratio = worst_ratio.max(ratio);
            worst_slope = worst_slope.max(s.abs());
            if ratio > 3.0 || s.abs() > 0.02 {
                failures.push(format!("w={w} T={t}: ratio {ratio:.3}, slope/c {s:.3e}"));
            }
        }
    }
    verdict(
        8,
        "residual boundedness",
        failures.is_empty(),
        format!("max |res|/|res_2| {worst_ratio:.3} (limit 3), max |slope|/c {worst_slope:.2e} (limit 0.02) {}", failures.join("; ")),
        start.elapsed(),
        30.0,
    );
}

#[test]
fn criterion_09_normalized_convergence() {
    let start = Instant::now();
    let mut gaps = Vec::new();
    for w in [0.0, 2.0] {
        for t in [0.5, 1.0] {
            let (ww, tt) = wt(w, t);
            let sch = Schedule::Geometric { start: 0.25, ratio: 0.5, count: 17 };
            let res = run_sweep(&sch, ww, tt, &pol(), &ContourSpec::for_threshold(t), false).unwrap();
            let last = res.rows.last().unwrap();
            assert_eq!(last.ell_sup, 2f64.powi(-18));
            let c = c_weight(ww, tt).unwrap();
            gaps.push((w, t, last.normalized / c - 1.0));
        }
    }
    let worst = gaps.iter().map(|g| g.2.abs()).fold(0.0, f64::max);
    let detail = gaps.iter().map(|(w, t, g)| format!("w={w} T={t}: {:+.2}%", 100.0 * g)).collect::<Vec<_>>().join(", ");
    verdict(9, "normalized convergence at 2^-18", worst <= 0.05, format!("{detail} (limit 5%)"), start.elapsed(), 30.0);
}

fn central<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

#[test]
fn criterion_10_derivative_recursions() {
    let start = Instant::now();
    let mut failures = Vec::new();

    let sd = SpectralData::new(vec![(0.0, 1), (0.2, 1), (0.7, 2)], 1.0).unwrap();
    let n = |w: f64, t: f64| counting_direct(&sd, Weight::new(w).unwrap(), Threshold::new(t).unwrap());
    for w in [1.0, 2.0] {
        for t in [0.5, 1.0, 1.5] {
            let gap = rel(central(|t| n(w + 1.0, t), t, 1e-4), (w + 1.0) * n(w, t));
            if gap > 1e-5 {
                failures.push(format!("counting w={w} T={t}: {gap:.2e}"));
            }
        }
    }

    let c = |w: f64, t: f64| c_weight(Weight::new(w).unwrap(), Threshold::new(t).unwrap()).unwrap();
    for w in [0.0, 1.0, 2.0] {
        for t in [0.5, 1.0, 2.0] {
            let gap = rel(central(|t| c(w + 1.0, t), t, 1e-4), (w + 1.0) * c(w, t));
            if gap > 1e-6 {
                failures.push(format!("c w={w} T={t}: {gap:.2e}"));
            }
        }
    }

    let ps = PinchingSet::new(vec![0.1]).unwrap();
    let g = |w: f64, t: f64| g_bessel(&ps, Weight::new(w).unwrap(), Threshold::new(t).unwrap(), &pol()).unwrap();
    for w in [0.0, 1.0] {
        for t in [0.5, 1.0] {
            let gap = rel(central(|t| g(w + 1.0, t), t, 1e-4), (w + 1.0) * g(w, t));
            if gap > 1e-4 {
                failures.push(format!("G w={w} T={t}: {gap:.2e}"));
            }
        }
    }
    verdict(
        10,
        "derivative recursions",
        failures.is_empty(),
        if failures.is_empty() { "counting 1e-5, c 1e-6, G 1e-4 all met".into() } else { failures.join("; ") },
        start.elapsed(),
        10.0,
    );
}

#[test]
fn criterion_11_sandwich_on_random_spectra() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_1143);
    let mut checks = 0;
    let mut failures = Vec::new();
    for case in 0..100 {
        let size = rng.gen_range(1..=20);
        let eigs: Vec<(f64, u32)> = (0..size).map(|_| (rng.gen_range(0.0..=2.0), 1)).collect();
        let sd = SpectralData::new(eigs, 1.0).unwrap();
        let thresholds = [0.1, 0.5, 1.0, 1.7, rng.gen_range(0.0..2.5)];
        for w in [0.0, 1.0] {
            for eps in [0.1, 0.01] {
                for &t in &thresholds {
                    let s = lemma43_check(&sd, Weight::new(w).unwrap(), Threshold::new(t).unwrap(), eps).unwrap();
                    checks += 1;
                    if !s.is_ordered() {
                        failures.push(format!("case {case} w={w} eps={eps} T={t}: {s:?}"));
                    }
                }
            }
        }
    }
    verdict(
        11,
        "sandwich ordering",
        failures.is_empty(),
        format!("{checks} checks on 100 spectra, {} violations {}", failures.len(), failures.join("; ")),
        start.elapsed(),
        5.0,
    );
}

#[test]
fn criterion_12_imaginary_time_growth() {
    let start = Instant::now();
    let ls = LengthSpectrum::new(vec![(1.0, 1)]).unwrap();
    let heights: Vec<f64> = (0..8).map(|k| 2f64.powi(k)).collect();
    let fit = trace_growth(&ls, 1.0, &heights, &pol()).unwrap();
    verdict(12, "imaginary-time growth", fit.beta <= 1.6, format!("beta {:.4} (ceiling 1.6)", fit.beta), start.elapsed(), 10.0);
}

#[test]
fn criterion_13_cli_determinism() {
    let start = Instant::now();
    let dir = tempfile::TempDir::new().unwrap();
    let input = dir.path().join("schedule.json");
    std::fs::write(&input, r#"{"version":1,"schedule":{"kind":"geometric","start":0.5,"ratio":0.5,"count":12}}"#).unwrap();
    let invoke = || {
        Command::new(env!("CARGO_BIN_EXE_spectra"))
            .args(["sweep", "--input", input.to_str().unwrap(), "--w", "2", "--T", "1"])
            .output()
            .unwrap()
    };
    let (a, b) = (invoke(), invoke());
    let ok = a.status.success() && b.status.success() && a.stdout == b.stdout && !a.stdout.is_empty();
    verdict(13, "CLI determinism", ok, format!("{} bytes, identical = {}", a.stdout.len(), a.stdout == b.stdout), start.elapsed(), 10.0);
}
