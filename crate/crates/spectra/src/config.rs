//! Effective configuration: flags over document overrides over defaults.

use serde::Serialize;
use spectra_core::{ContourSpec, TruncationPolicy};

use crate::input::{ContourOverrides, PolicyOverrides};
use crate::output::Format;

pub const THREADS_ENV: &str = "SPECTRA_THREADS";

pub fn merge_policy(doc: &PolicyOverrides, flags: &PolicyOverrides) -> TruncationPolicy {
    let d = TruncationPolicy::default();
    TruncationPolicy {
        rel_tol: flags.rel_tol.or(doc.rel_tol).unwrap_or(d.rel_tol),
        abs_tol: flags.abs_tol.or(doc.abs_tol).unwrap_or(d.abs_tol),
        max_terms: flags.max_terms.or(doc.max_terms).unwrap_or(d.max_terms),
        max_quad_evals: flags.max_quad_evals.or(doc.max_quad_evals).unwrap_or(d.max_quad_evals),
    }
}

/// Contour for inverting at threshold `t`.
pub fn merge_contour(t: f64, doc: &ContourOverrides, flags: &ContourOverrides) -> ContourSpec {
    let d = ContourSpec::for_threshold(t);
    ContourSpec {
        a: flags.a.or(doc.a).unwrap_or(d.a),
        s_max: flags.s_max.or(doc.s_max).unwrap_or(d.s_max),
        n_nodes: flags.n_nodes.or(doc.n_nodes).unwrap_or(d.n_nodes),
        tol: flags.tol.or(doc.tol).unwrap_or(d.tol),
        max_evals: flags.max_evals.or(doc.max_evals).unwrap_or(d.max_evals),
    }
}

/// Worker count from `SPECTRA_THREADS`; `None` leaves the choice to rayon.
pub fn threads_from_env() -> Result<Option<usize>, String> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(s) if s.trim().is_empty() => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(format!("{THREADS_ENV} must be a positive integer, got {s:?}")),
        },
    }
}

/// Dumped by `--print-config`.
#[derive(Debug, Clone, Serialize)]
pub struct EffectiveConfig {
    pub command: &'static str,
    pub format: Format,
    pub threads: Option<usize>,
    pub policy: TruncationPolicy,
    pub contour: Option<ContourSpec>,
    pub w: Option<f64>,
    #[serde(rename = "T")]
    pub t: Option<f64>,
}
