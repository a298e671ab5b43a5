//! `spectra` subcommands and the exit-code contract.
//!
//! Exit codes: 0 success, 1 validation or domain error, 2 numerical
//! non-convergence, 64 usage error.

use std::ffi::OsString;
use std::fmt;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use spectra_core::counting::{self, c_weight, counting_direct, g_bessel, g_bessel_direct, g_sine_form, lemma43_check};
use spectra_core::hyperbolic::{cylinder_trace, heat_kernel, heat_kernel_origin};
use spectra_core::specfun::{bessel_j, bessel_j_oracle, BesselOrder};
use spectra_core::sweep::fit_growth_exponent;
use spectra_core::trace::{degenerating_trace, hyperbolic_trace, regularized_trace, spectral_trace};
use spectra_core::xform::weighted_inverse;
use spectra_core::{
    ContourSpec, Cylinder, HeatKernelQuery, LengthSpectrum, PinchingSet, Threshold, TruncationPolicy, Weight,
};

use crate::config::{merge_contour, merge_policy, threads_from_env, EffectiveConfig};
use crate::input::{parse_input, ContourOverrides, InputDocument, Payload, PolicyOverrides};
use crate::output::{Cell, Format, Table};
use crate::parallel::run_sweep_parallel;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "spectra", version, about = "Heat traces and spectral counting on hyperbolic surfaces")]
struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,
    /// Print the effective configuration as JSON and exit
    #[arg(long, global = true)]
    print_config: bool,
    #[command(flatten)]
    policy: PolicyOverrides,
    #[command(flatten)]
    contour: ContourOverrides,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct InputArg {
    /// JSON input document ("-" reads standard input)
    #[arg(long)]
    input: PathBuf,
}

#[derive(Args, Debug, Clone, Copy)]
struct WeightThreshold {
    /// Weight w >= 0
    #[arg(long, allow_negative_numbers = true)]
    w: f64,
    /// Spectral threshold T
    #[arg(long = "T", visible_alias = "threshold", allow_negative_numbers = true)]
    t: f64,
}

#[derive(Args, Debug, Clone)]
struct TimeArgs {
    /// Real part(s) of the time, comma separated
    #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
    t: Vec<f64>,
    /// Imaginary part of the time; switches to complex output columns
    #[arg(long, allow_negative_numbers = true)]
    s: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GMethod {
    /// Bessel series, Euler-Maclaurin tail for small lengths
    Auto,
    /// Bessel series summed term by term
    Direct,
    /// Sine form (w = 0 only)
    Sine,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bessel function J_p(x)
    Bessel {
        #[arg(long, allow_negative_numbers = true)]
        p: f64,
        /// Argument(s), comma separated
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        x: Vec<f64>,
        /// Also evaluate the extended-precision series with this many terms
        #[arg(long)]
        oracle_terms: Option<usize>,
    },
    /// Plane heat kernel K_h(t, rho); K_h(t, 0) from its spectral form when --rho is omitted
    Heatkernel {
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        #[arg(long, allow_negative_numbers = true)]
        rho: Option<f64>,
    },
    /// Cylinder trace by unfolding, against the closed form
    Cylinder {
        #[arg(long, allow_negative_numbers = true)]
        ell: f64,
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
    },
    /// Hyperbolic heat trace of a length spectrum
    Trace {
        #[command(flatten)]
        input: InputArg,
        #[command(flatten)]
        time: TimeArgs,
        /// Add the regularized trace HTr + volume * K_h(t, 0) (real time only)
        #[arg(long, allow_negative_numbers = true)]
        volume: Option<f64>,
    },
    /// Degenerating heat trace of a pinching set
    Dtrace {
        #[command(flatten)]
        input: InputArg,
        #[command(flatten)]
        time: TimeArgs,
    },
    /// Spectral trace of an eigenvalue list
    Strace {
        #[command(flatten)]
        input: InputArg,
        #[command(flatten)]
        time: TimeArgs,
    },
    /// Weighted counting function by Bromwich inversion of the document's trace
    Invert {
        #[command(flatten)]
        input: InputArg,
        #[command(flatten)]
        wt: WeightThreshold,
    },
    /// Direct weighted counting sum of an eigenvalue list
    Count {
        #[command(flatten)]
        input: InputArg,
        #[command(flatten)]
        wt: WeightThreshold,
        /// Also report the difference-quotient sandwich with this step
        #[arg(long, allow_negative_numbers = true)]
        eps: Option<f64>,
    },
    /// Lead constant c_w(T)
    Cweight {
        #[command(flatten)]
        wt: WeightThreshold,
    },
    /// G_{l,w}(T) from the Bessel series
    Gfunc {
        #[command(flatten)]
        input: InputArg,
        #[command(flatten)]
        wt: WeightThreshold,
        /// Cross-check against Bromwich inversion of the degenerating trace
        #[arg(long)]
        check_bromwich: bool,
        #[arg(long, value_enum, default_value_t = GMethod::Auto)]
        method: GMethod,
    },
    /// G_{l,w}(T) - c_w(T) * sum log(1/l_k)
    Residual {
        #[command(flatten)]
        input: InputArg,
        #[command(flatten)]
        wt: WeightThreshold,
    },
    /// Degeneration sweep over a schedule of pinching sets
    Sweep {
        #[command(flatten)]
        input: InputArg,
        #[command(flatten)]
        wt: WeightThreshold,
        /// Compute G by Bromwich inversion instead of the Bessel series
        #[arg(long)]
        bromwich: bool,
    },
    /// Balanced step eps* = sqrt(f / log_sum) and the common error size
    Balance {
        #[arg(long = "f-ell", allow_negative_numbers = true)]
        f_ell: f64,
        /// Sum of log(1/l_k); alternatively taken from a pinching document
        #[arg(long, conflicts_with = "input", allow_negative_numbers = true)]
        log_sum: Option<f64>,
        #[arg(long, required_unless_present = "log_sum")]
        input: Option<PathBuf>,
    },
    /// Power-law fit of |trace(t + is)| over heights s
    Growth {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        t: f64,
        /// Heights, comma separated
        #[arg(long, value_delimiter = ',', default_value = "1,2,4,8,16,32,64,128", allow_negative_numbers = true)]
        s: Vec<f64>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Bessel { .. } => "bessel",
            Command::Heatkernel { .. } => "heatkernel",
            Command::Cylinder { .. } => "cylinder",
            Command::Trace { .. } => "trace",
            Command::Dtrace { .. } => "dtrace",
            Command::Strace { .. } => "strace",
            Command::Invert { .. } => "invert",
            Command::Count { .. } => "count",
            Command::Cweight { .. } => "cweight",
            Command::Gfunc { .. } => "gfunc",
            Command::Residual { .. } => "residual",
            Command::Sweep { .. } => "sweep",
            Command::Balance { .. } => "balance",
            Command::Growth { .. } => "growth",
        }
    }

    fn input(&self) -> Option<&Path> {
        match self {
            Command::Trace { input, .. }
            | Command::Dtrace { input, .. }
            | Command::Strace { input, .. }
            | Command::Invert { input, .. }
            | Command::Count { input, .. }
            | Command::Gfunc { input, .. }
            | Command::Residual { input, .. }
            | Command::Sweep { input, .. }
            | Command::Growth { input, .. } => Some(&input.input),
            Command::Balance { input, .. } => input.as_deref(),
            _ => None,
        }
    }

    fn weight_threshold(&self) -> Option<WeightThreshold> {
        match self {
            Command::Invert { wt, .. }
            | Command::Count { wt, .. }
            | Command::Cweight { wt }
            | Command::Gfunc { wt, .. }
            | Command::Residual { wt, .. }
            | Command::Sweep { wt, .. } => Some(*wt),
            _ => None,
        }
    }

    /// Whether the command inverts along a Bromwich contour.
    fn uses_contour(&self) -> bool {
        matches!(
            self,
            Command::Invert { .. } | Command::Gfunc { check_bromwich: true, .. } | Command::Sweep { bromwich: true, .. }
        )
    }
}

#[derive(Debug)]
enum Failure {
    Validation(String),
    Numerical(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Validation(_) => EXIT_VALIDATION,
            Failure::Numerical(_) => EXIT_NUMERICAL,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Validation(m) | Failure::Numerical(m) => f.write_str(m),
        }
    }
}

impl From<spectra_core::Error> for Failure {
    fn from(e: spectra_core::Error) -> Self {
        if e.is_numerical() {
            Failure::Numerical(e.to_string())
        } else {
            Failure::Validation(e.to_string())
        }
    }
}

impl From<crate::input::InputError> for Failure {
    fn from(e: crate::input::InputError) -> Self {
        Failure::Validation(e.to_string())
    }
}

/// Parses `argv` (program name first), runs the subcommand, writes results
/// to `out` and diagnostics to `err`, and returns the exit code.
pub fn dispatch<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    EXIT_USAGE
                }
            };
        }
    };
    match run(&cli, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "spectra {}: {f}", cli.command.name());
            f.code()
        }
    }
}

struct Context {
    doc: Option<InputDocument>,
    policy: TruncationPolicy,
    contour: Option<ContourSpec>,
    threads: Option<usize>,
}

fn read_document(path: &Path) -> Result<InputDocument, Failure> {
    let mut bytes = Vec::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_end(&mut bytes).map(|_| ())
    } else {
        std::fs::File::open(path).and_then(|mut f| f.read_to_end(&mut bytes)).map(|_| ())
    };
    res.map_err(|e| Failure::Validation(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_input(&bytes)?)
}

fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let threads = threads_from_env().map_err(Failure::Validation)?;
    let doc = cli.command.input().map(read_document).transpose()?;
    let (doc_policy, doc_contour) = doc.as_ref().map(|d| (d.policy, d.contour)).unwrap_or_default();
    let policy = merge_policy(&doc_policy, &cli.policy);
    let wt = cli.command.weight_threshold();
    let contour = match wt {
        Some(wt) if cli.command.uses_contour() => Some(merge_contour(wt.t, &doc_contour, &cli.contour)),
        _ => None,
    };

    if cli.print_config {
        let cfg = EffectiveConfig {
            command: cli.command.name(),
            format: cli.format,
            threads,
            policy,
            contour,
            w: wt.map(|x| x.w),
            t: wt.map(|x| x.t),
        };
        serde_json::to_writer_pretty(&mut *out, &cfg).map_err(|e| Failure::Validation(e.to_string()))?;
        writeln!(out).map_err(io_failure)?;
        return Ok(EXIT_OK);
    }

    policy.validate()?;
    if let Some(c) = &contour {
        c.validate()?;
    }
    let ctx = Context { doc, policy, contour, threads };
    let (table, code) = execute(&cli.command, &ctx, err)?;
    table.write(cli.format, out).map_err(io_failure)?;
    Ok(code)
}

fn io_failure(e: std::io::Error) -> Failure {
    Failure::Validation(format!("cannot write output: {e}"))
}

fn wrong_payload(doc: &InputDocument, expected: &str) -> Failure {
    Failure::Validation(format!("expected a {expected} document, got {}", doc.payload.kind()))
}

fn length_spectrum(ctx: &Context) -> Result<&LengthSpectrum, Failure> {
    let doc = ctx.doc.as_ref().expect("input loaded");
    match &doc.payload {
        Payload::LengthSpectrum(ls) => Ok(ls),
        _ => Err(wrong_payload(doc, "length_spectrum")),
    }
}

fn pinching(ctx: &Context) -> Result<&PinchingSet, Failure> {
    let doc = ctx.doc.as_ref().expect("input loaded");
    match &doc.payload {
        Payload::Pinching(ps) => Ok(ps),
        _ => Err(wrong_payload(doc, "pinching")),
    }
}

fn weight_threshold(wt: WeightThreshold) -> Result<(Weight, Threshold), Failure> {
    Ok((Weight::new(wt.w)?, Threshold::new(wt.t)?))
}

fn contour(ctx: &Context) -> &ContourSpec {
    ctx.contour.as_ref().expect("contour merged for inverting commands")
}

/// Rows of a trace evaluated at each requested time.
fn trace_table<F>(time: &TimeArgs, mut f: F) -> Result<Table, Failure>
where
    F: FnMut(Complex64) -> spectra_core::Result<Complex64>,
{
    match time.s {
        None => {
            let mut table = Table::new(&["t", "value"]);
            for &t in &time.t {
                table.push(vec![t.into(), f(Complex64::new(t, 0.0))?.re.into()]);
            }
            Ok(table)
        }
        Some(s) => {
            let mut table = Table::new(&["t", "s", "re", "im", "abs"]);
            for &t in &time.t {
                let v = f(Complex64::new(t, s))?;
                table.push(vec![t.into(), s.into(), v.re.into(), v.im.into(), v.norm().into()]);
            }
            Ok(table)
        }
    }
}

fn execute(cmd: &Command, ctx: &Context, err: &mut dyn Write) -> Result<(Table, i32), Failure> {
    let policy = &ctx.policy;
    let table = match cmd {
        Command::Bessel { p, x, oracle_terms } => {
            let order = BesselOrder::new(*p)?;
            let mut columns = vec!["p", "x", "value"];
            if oracle_terms.is_some() {
                columns.extend(["oracle", "abs_gap"]);
            }
            let mut table = Table::new(&columns);
            for &x in x {
                let v = bessel_j(order, x)?;
                let mut row: Vec<Cell> = vec![(*p).into(), x.into(), v.into()];
                if let Some(terms) = oracle_terms {
                    let o = bessel_j_oracle(order, x, *terms)?;
                    row.extend([o.into(), (v - o).abs().into()]);
                }
                table.push(row);
            }
            table
        }
        Command::Heatkernel { t, rho } => {
            let v = match rho {
                Some(rho) => heat_kernel(HeatKernelQuery::new(*t, *rho)?, policy)?,
                None => heat_kernel_origin(*t, policy)?,
            };
            let mut table = Table::new(&["t", "rho", "value"]);
            table.push(vec![(*t).into(), rho.unwrap_or(0.0).into(), v.into()]);
            table
        }
        Command::Cylinder { ell, t } => {
            let c = Cylinder::new(*ell)?;
            let unfolded = cylinder_trace(c, *t, policy)?;
            let ls = LengthSpectrum::new(vec![(*ell, 1)])?;
            let closed = hyperbolic_trace(&ls, Complex64::new(*t, 0.0), policy)?.re;
            let mut table = Table::new(&["ell", "t", "cylinder_trace", "closed_form", "rel_gap"]);
            table.push(vec![
                (*ell).into(),
                (*t).into(),
                unfolded.into(),
                closed.into(),
                ((unfolded - closed) / closed).abs().into(),
            ]);
            table
        }
        Command::Trace { time, volume, .. } => {
            let ls = length_spectrum(ctx)?;
            match volume {
                None => trace_table(time, |z| hyperbolic_trace(ls, z, policy))?,
                Some(vol) => {
                    if time.s.is_some_and(|s| s != 0.0) {
                        return Err(Failure::Validation("--volume requires real time".into()));
                    }
                    let mut table = Table::new(&["t", "value", "regularized"]);
                    for &t in &time.t {
                        let z = Complex64::new(t, 0.0);
                        let htr = hyperbolic_trace(ls, z, policy)?.re;
                        let reg = regularized_trace(ls, *vol, z, policy)?.re;
                        table.push(vec![t.into(), htr.into(), reg.into()]);
                    }
                    table
                }
            }
        }
        Command::Dtrace { time, .. } => {
            let ps = pinching(ctx)?;
            trace_table(time, |z| degenerating_trace(ps, z, policy))?
        }
        Command::Strace { time, .. } => {
            let doc = ctx.doc.as_ref().expect("input loaded");
            let Payload::Spectral(sd) = &doc.payload else {
                return Err(wrong_payload(doc, "eigenvalues"));
            };
            trace_table(time, |z| spectral_trace(sd, z))?
        }
        Command::Invert { wt, .. } => {
            weight_threshold(*wt)?;
            let doc = ctx.doc.as_ref().expect("input loaded");
            let c = contour(ctx);
            let inv = match &doc.payload {
                Payload::LengthSpectrum(ls) => weighted_inverse(|z| hyperbolic_trace(ls, z, policy), wt.w, wt.t, c)?,
                Payload::Pinching(ps) => weighted_inverse(|z| degenerating_trace(ps, z, policy), wt.w, wt.t, c)?,
                Payload::Spectral(sd) => weighted_inverse(|z| spectral_trace(sd, z), wt.w, wt.t, c)?,
                Payload::Schedule(_) => return Err(wrong_payload(doc, "trace")),
            };
            if inv.uncertified {
                let _ = writeln!(err, "spectra invert: warning: contour tail not certified for w = {}", wt.w);
            }
            let i = inv.inversion;
            let mut table =
                Table::new(&["w", "T", "value", "tail_estimate", "quad_error", "s_max", "evals", "certified"]);
            table.push(vec![
                wt.w.into(),
                wt.t.into(),
                inv.value.into(),
                i.tail_estimate.into(),
                i.quad_error.into(),
                i.s_max.into(),
                i.evals.into(),
                i.certified.into(),
            ]);
            table
        }
        Command::Count { wt, eps, .. } => {
            let doc = ctx.doc.as_ref().expect("input loaded");
            let Payload::Spectral(sd) = &doc.payload else {
                return Err(wrong_payload(doc, "eigenvalues"));
            };
            let (w, t) = weight_threshold(*wt)?;
            let n = counting_direct(sd, w, t);
            match eps {
                None => {
                    let mut table = Table::new(&["w", "T", "count"]);
                    table.push(vec![wt.w.into(), wt.t.into(), n.into()]);
                    table
                }
                Some(eps) => {
                    let s = lemma43_check(sd, w, t, *eps)?;
                    let mut table = Table::new(&["w", "T", "count", "eps", "lower", "middle", "upper", "ordered"]);
                    table.push(vec![
                        wt.w.into(),
                        wt.t.into(),
                        n.into(),
                        (*eps).into(),
                        s.lower.into(),
                        s.middle.into(),
                        s.upper.into(),
                        s.is_ordered().into(),
                    ]);
                    table
                }
            }
        }
        Command::Cweight { wt } => {
            let (w, t) = weight_threshold(*wt)?;
            let mut table = Table::new(&["w", "T", "c_w"]);
            table.push(vec![wt.w.into(), wt.t.into(), c_weight(w, t)?.into()]);
            table
        }
        Command::Gfunc { wt, check_bromwich, method, .. } => {
            let ps = pinching(ctx)?;
            let (w, t) = weight_threshold(*wt)?;
            let g = match method {
                GMethod::Auto => g_bessel(ps, w, t, policy)?,
                GMethod::Direct => g_bessel_direct(ps, w, t, policy)?,
                GMethod::Sine => {
                    if wt.w != 0.0 {
                        return Err(Failure::Validation("--method sine requires w = 0".into()));
                    }
                    g_sine_form(ps, t, policy)?
                }
            };
            if *check_bromwich {
                let b = weighted_inverse(|z| degenerating_trace(ps, z, policy), wt.w, wt.t, contour(ctx))?.value;
                let gap = if g == 0.0 { (b - g).abs() } else { ((b - g) / g).abs() };
                let mut table = Table::new(&["w", "T", "g_bessel", "bromwich", "rel_gap"]);
                table.push(vec![wt.w.into(), wt.t.into(), g.into(), b.into(), gap.into()]);
                table
            } else {
                let mut table = Table::new(&["w", "T", "g_bessel"]);
                table.push(vec![wt.w.into(), wt.t.into(), g.into()]);
                table
            }
        }
        Command::Residual { wt, .. } => {
            let ps = pinching(ctx)?;
            let (w, t) = weight_threshold(*wt)?;
            let residual = counting::g_residual(ps, w, t, policy)?;
            let c = c_weight(w, t)?;
            let g = g_bessel(ps, w, t, policy)?;
            let mut table = Table::new(&["w", "T", "log_sum", "g_value", "c_w", "residual"]);
            table.push(vec![wt.w.into(), wt.t.into(), ps.log_sum().into(), g.into(), c.into(), residual.into()]);
            table
        }
        Command::Sweep { wt, bromwich, .. } => {
            let doc = ctx.doc.as_ref().expect("input loaded");
            let Payload::Schedule(schedule) = &doc.payload else {
                return Err(wrong_payload(doc, "schedule"));
            };
            let (w, t) = weight_threshold(*wt)?;
            let c = ctx.contour.unwrap_or_else(|| ContourSpec::for_threshold(wt.t));
            let result = run_sweep_parallel(schedule, w, t, policy, &c, *bromwich, ctx.threads)?;
            let mut table = Table::new(&["ell_sup", "log_sum", "g_value", "residual", "normalized"]);
            let mut code = EXIT_OK;
            for (i, row) in result.rows.iter().enumerate() {
                if let Some(e) = &row.error {
                    let _ = writeln!(err, "spectra sweep: row {i} (ell_sup = {}): {e}", row.ell_sup);
                    code = code.max(Failure::from(e.clone()).code());
                }
                table.push(vec![
                    row.ell_sup.into(),
                    row.log_sum.into(),
                    row.g_value.into(),
                    row.residual.into(),
                    row.normalized.into(),
                ]);
            }
            return Ok((table, code));
        }
        Command::Balance { f_ell, log_sum, .. } => {
            let log_sum = match log_sum {
                Some(v) => *v,
                None => pinching(ctx)?.log_sum(),
            };
            let eps = counting::balance_epsilon(*f_ell, log_sum)?;
            let e = counting::balanced_error(*f_ell, log_sum)?;
            let mut table = Table::new(&["f_ell", "log_sum", "epsilon", "balanced_error"]);
            table.push(vec![(*f_ell).into(), log_sum.into(), eps.into(), e.into()]);
            table
        }
        Command::Growth { t, s, .. } => {
            let doc = ctx.doc.as_ref().expect("input loaded");
            let samples = s
                .iter()
                .map(|&s| {
                    let z = Complex64::new(*t, s);
                    let v = match &doc.payload {
                        Payload::LengthSpectrum(ls) => hyperbolic_trace(ls, z, policy)?,
                        Payload::Pinching(ps) => degenerating_trace(ps, z, policy)?,
                        _ => return Err(wrong_payload(doc, "length_spectrum or pinching")),
                    };
                    Ok((s, v.norm()))
                })
                .collect::<Result<Vec<_>, Failure>>()?;
            let fit = fit_growth_exponent(&samples)?;
            let (lo, hi) = samples.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &(s, _)| (lo.min(s), hi.max(s)));
            let mut table = Table::new(&["t", "samples", "s_min", "s_max", "c", "beta"]);
            table.push(vec![(*t).into(), samples.len().into(), lo.into(), hi.into(), fit.c.into(), fit.beta.into()]);
            table
        }
    };
    Ok((table, EXIT_OK))
}
