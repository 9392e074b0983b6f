//! One function per subcommand. Each returns the rendered output and a
//! one-line summary; nothing here touches the file system.

use std::fmt::Write as _;

use chain_core::{build_kernel, orbit_labels, run_chain, Kernel, RngStream, StateCap, State};
use exact_core::{Rational, Sign};
use mixing::{avg_chi2_curve, chi2_from_one_one, cutoff_scan, distance_curve, CutoffVariant, Metric, Start, Value};
use serde::Serialize;
use serde_json::json;
use spectral::{build_basis, multiplicity_table};
use statistics::{
    alternation_distribution, alternation_histogram, alternation_variance_after, expected_alternations_after,
    ones_moments, stationary_alternation_mean, stationary_alternation_variance, MomentReport,
};
use verifier::ck::{best_rational, cluster, symmetrized_spectrum, CLUSTER_TOL, MAX_DENOMINATOR};
use verifier::{blocking_failures, run_suite, Suite};

use crate::args::{
    AvgArgs, BasisArgs, Command, CurveArgs, Format, HistArgs, KernelArgs, Mode, OutArgs, SampleArgs, ScanArgs,
    StartSpec, StatsArgs, Variant, VerifyArgs,
};
use crate::error::{usage, CliError};
use crate::output::{csv_header, emit_report, rational, schema, to_json};

/// Largest `n` for a dense basis export: `4^n` rationals.
pub const BASIS_MAX_N: usize = 10;
/// Exact averaged chi-square above this `n` is left to log mode.
pub const AVG_EXACT_MAX_N: u64 = 2000;
/// Closed-form multiplicities overflow `u64` beyond this.
pub const SPECTRUM_MAX_N_BINARY: usize = 63;

/// Builds a gnuplot script from the data file name.
pub type PlotScript = Box<dyn Fn(&str) -> String>;

pub struct Outcome {
    pub content: String,
    pub summary: String,
    pub plot: Option<PlotScript>,
    /// Set when a verification failed; the run still writes its output.
    pub failure: Option<String>,
}

impl Outcome {
    fn new(content: String, summary: String) -> Self {
        Self { content, summary, plot: None, failure: None }
    }

    fn plotted(mut self, plot: impl Fn(&str) -> String + 'static) -> Self {
        self.plot = Some(Box::new(plot));
        self
    }
}

fn format_of(out: &OutArgs, default: Format, allowed: &[Format], command: &str) -> Result<Format, CliError> {
    let f = out.format.unwrap_or(default);
    if !allowed.contains(&f) {
        return Err(usage(format!("{command} does not write {f:?} output").to_lowercase()));
    }
    if out.gnuplot.is_some() && f != Format::Csv {
        return Err(usage("--gnuplot needs CSV output"));
    }
    Ok(f)
}

pub fn run(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Kernel(a) => kernel(a),
        Command::Spectrum(a) => spectrum(a),
        Command::Basis(a) => basis(a),
        Command::Chi2(a) => curve(a, Metric::ChiSquare),
        Command::Tv(a) => curve(a, Metric::TotalVariation),
        Command::AvgChi2(a) => avg_chi2(a),
        Command::CutoffScan(a) => scan(a),
        Command::Sample(a) => sample(a),
        Command::Stats(a) => stats(a),
        Command::Hist(a) => hist(a),
        Command::Verify(a) => verify(a),
    }
}

fn resolve_state(spec: &StartSpec, n: usize, k: u8) -> Result<State, CliError> {
    let binary = |what: &str| {
        if k == 2 {
            Ok(())
        } else {
            Err(usage(format!("start {what} needs k = 2")))
        }
    };
    let x = match spec {
        StartSpec::Literal(s) => State::parse(s, k)?,
        StartSpec::Zeros => State::zeros(n, k),
        StartSpec::OneOne => {
            binary("one-one")?;
            State::unit(n, n)
        }
        StartSpec::Half => {
            binary("half")?;
            State::half(n)
        }
        StartSpec::Orbit(i) => {
            let labels = orbit_labels(n, k);
            let label = labels.get(*i).ok_or_else(|| usage(format!("orbit index {i}, only {} orbits", labels.len())))?;
            State::from_counts(label)?
        }
        StartSpec::Average => return Err(usage("start avg is not a single state here")),
    };
    if x.n() != n {
        return Err(usage(format!("start {spec} has {} coordinates, expected n = {n}", x.n())));
    }
    Ok(x)
}

fn check_n(n: usize) -> Result<(), CliError> {
    if n == 0 {
        return Err(usage("n must be at least 1"));
    }
    Ok(())
}

#[derive(Serialize)]
struct KernelDoc {
    schema: String,
    n: usize,
    k: u8,
    size: usize,
    orbits: u64,
    states: Vec<String>,
    stationary: Vec<String>,
    /// Row-major: `rows[x][y] = K(x, y)`.
    rows: Vec<Vec<String>>,
}

fn kernel(a: &KernelArgs) -> Result<Outcome, CliError> {
    check_n(a.n)?;
    let f = format_of(&a.output, Format::Json, &[Format::Json, Format::Csv], "kernel")?;
    let kernel = build_kernel(a.n, a.k)?;
    let size = kernel.size();
    let content = match f {
        Format::Json => to_json(&KernelDoc {
            schema: schema("kernel"),
            n: a.n,
            k: a.k,
            size,
            orbits: kernel.orbit_count(),
            states: (0..size).map(|i| kernel.state(i).to_string()).collect(),
            stationary: kernel.stationary().iter().map(rational).collect(),
            rows: (0..size).map(|x| kernel.row(x).iter().map(rational).collect()).collect(),
        }),
        _ => {
            let mut out = csv_header("kernel", "from,to,value");
            for x in 0..size {
                let sx = kernel.state(x);
                for (y, v) in kernel.row(x).iter().enumerate() {
                    let _ = writeln!(out, "{sx},{},{}", kernel.state(y), rational(v));
                }
            }
            out
        }
    };
    Ok(Outcome::new(content, format!("kernel n={} k={}: {size} states, {} orbits", a.n, a.k, kernel.orbit_count())))
}

#[derive(Serialize)]
struct SpectrumEntry {
    /// Exact value when known, else the best small-denominator fit.
    value: Option<String>,
    approx: f64,
    multiplicity: u64,
    source: &'static str,
}

fn survey(kernel: &Kernel) -> Vec<SpectrumEntry> {
    let spectrum = symmetrized_spectrum(kernel);
    let mut out: Vec<SpectrumEntry> = cluster(&spectrum, CLUSTER_TOL)
        .into_iter()
        .map(|g| {
            let approx = g.iter().sum::<f64>() / g.len() as f64;
            let (p, q) = best_rational(approx, MAX_DENOMINATOR);
            let fits = (p as f64 / q as f64 - approx).abs() <= CLUSTER_TOL;
            SpectrumEntry {
                value: fits.then(|| rational(&Rational::new(p.into(), q.into()))),
                approx,
                multiplicity: g.len() as u64,
                source: "numeric",
            }
        })
        .collect();
    out.reverse();
    out
}

fn spectrum(a: &KernelArgs) -> Result<Outcome, CliError> {
    check_n(a.n)?;
    let f = format_of(&a.output, Format::Json, &[Format::Json, Format::Csv], "spectrum")?;
    let entries = if a.k == 2 {
        if a.n > SPECTRUM_MAX_N_BINARY {
            return Err(CliError::Cap(format!("spectrum needs n <= {SPECTRUM_MAX_N_BINARY} for k = 2, got {}", a.n)));
        }
        multiplicity_table(a.n)
            .into_iter()
            .map(|(e, m)| {
                let v = e.value();
                SpectrumEntry { approx: exact_core::Scalar::to_f64(&v), value: Some(rational(&v)), multiplicity: m, source: "closed-form" }
            })
            .collect()
    } else {
        survey(&build_kernel(a.n, a.k)?)
    };
    let total: u64 = entries.iter().map(|e| e.multiplicity).sum();
    let summary = format!("spectrum n={} k={}: {} distinct eigenvalues, {total} in all", a.n, a.k, entries.len());
    let content = match f {
        Format::Json => to_json(&json!({ "schema": schema("spectrum"), "n": a.n, "k": a.k, "eigenvalues": entries })),
        _ => {
            let mut out = csv_header("spectrum", "value,approx,multiplicity,source");
            for e in &entries {
                let _ = writeln!(out, "{},{},{},{}", e.value.as_deref().unwrap_or(""), e.approx, e.multiplicity, e.source);
            }
            out
        }
    };
    Ok(Outcome::new(content, summary))
}

fn basis(a: &BasisArgs) -> Result<Outcome, CliError> {
    check_n(a.n)?;
    format_of(&a.output, Format::Json, &[Format::Json], "basis")?;
    StateCap::from_env().check(a.n, 2)?;
    if a.n > BASIS_MAX_N {
        return Err(CliError::Cap(format!("basis export needs n <= {BASIS_MAX_N}, got {}", a.n)));
    }
    let b = build_basis(a.n)?;
    let vectors: Vec<_> = b
        .vectors
        .iter()
        .map(|v| {
            json!({
                "m": v.m,
                "l": v.l,
                "tableau_second_row": v.tableau.second_row(),
                "eigenvalue": v.eigenvalue.to_string(),
                "norm": rational(&v.norm),
                "coords": v.coords.iter().map(rational).collect::<Vec<_>>(),
            })
        })
        .collect();
    let content = to_json(&json!({ "schema": schema("basis"), "n": a.n, "vectors": vectors }));
    Ok(Outcome::new(content, format!("basis n={}: {} vectors", a.n, b.len())))
}

fn curve_csv(kind: &str, n: usize, k: u8, start: &str, metric: Metric, points: &[(u64, Value)]) -> String {
    let log = points.iter().any(|(_, v)| matches!(v, Value::Log(_)));
    let mut out = csv_header(kind, if log { "n,k,start,metric,step,log_value,sign" } else { "n,k,start,metric,step,value" });
    for (step, v) in points {
        let _ = write!(out, "{n},{k},{start},{metric},{step},");
        match v {
            Value::Exact(r) => {
                let _ = writeln!(out, "{}", rational(r));
            }
            Value::Log(l) => {
                let _ = writeln!(out, "{},{}", l.log_magnitude(), sign_number(l.sign()));
            }
        }
    }
    out
}

fn sign_number(s: Sign) -> i8 {
    match s {
        Sign::Negative => -1,
        Sign::Zero => 0,
        Sign::Positive => 1,
    }
}

fn point_json(step: u64, v: &Value) -> serde_json::Value {
    match v {
        Value::Exact(r) => json!({ "step": step, "value": rational(r) }),
        Value::Log(l) => json!({ "step": step, "log_value": l.log_magnitude(), "sign": sign_number(l.sign()) }),
    }
}

fn in_mode(points: Vec<(u64, Value)>, mode: Mode) -> Vec<(u64, Value)> {
    match mode {
        Mode::Exact => points,
        Mode::Log => points.into_iter().map(|(s, v)| (s, Value::Log(v.to_log()))).collect(),
    }
}

fn plot_script(title: String, log: bool) -> impl Fn(&str) -> String {
    move |data: &str| {
        // Exact values are "p/q" strings; gnuplot splits them itself.
        let (value, axis) = if log {
            ("6", "set ylabel 'log value'\n")
        } else {
            ("(s=strcol(6), p=strstrt(s,'/'), p ? real(s[1:p-1])/real(s[p+1:]) : real(s))", "set logscale y\n")
        };
        format!(
            "set datafile separator ','\nset datafile commentschars '#'\nset key off\nset title '{title}'\nset xlabel 'steps'\n{axis}plot '{data}' skip 2 using 5:{value} with linespoints\n"
        )
    }
}

fn curve(a: &CurveArgs, metric: Metric) -> Result<Outcome, CliError> {
    check_n(a.n)?;
    let f = format_of(&a.output, Format::Csv, &[Format::Json, Format::Csv], &metric.to_string())?;
    let steps = a.steps.0.clone();
    let points = match (&a.start, metric) {
        (StartSpec::Average, Metric::ChiSquare) if a.k == 2 => avg_chi2_curve(a.n, steps, false)?.points,
        (StartSpec::OneOne, Metric::ChiSquare) if a.k == 2 => steps
            .map(|s| Ok((s, Value::Exact(chi2_from_one_one(a.n, s)?))))
            .collect::<Result<_, CliError>>()?,
        (spec, _) => {
            let start = match spec {
                StartSpec::Average => Start::Average,
                StartSpec::Orbit(i) => Start::Orbit(*i),
                other => Start::State(resolve_state(other, a.n, a.k)?),
            };
            distance_curve(&build_kernel(a.n, a.k)?, start, metric, steps)?.points
        }
    };
    let points = in_mode(points, a.mode);
    let start = a.start.to_string();
    let last = points.last().map(|(s, v)| format!("{v} at {s} steps")).unwrap_or_default();
    let summary = format!("{metric} n={} k={} from {start}: {} points, {last}", a.n, a.k, points.len());
    let content = match f {
        Format::Json => to_json(&json!({
            "schema": schema("curve"),
            "n": a.n,
            "k": a.k,
            "start": start,
            "metric": metric.to_string(),
            "mode": a.mode,
            "points": points.iter().map(|(s, v)| point_json(*s, v)).collect::<Vec<_>>(),
        })),
        _ => curve_csv("curve", a.n, a.k, &start, metric, &points),
    };
    let title = format!("{metric}, n = {}, start {start}", a.n);
    Ok(Outcome::new(content, summary).plotted(plot_script(title, a.mode == Mode::Log)))
}

fn avg_chi2(a: &AvgArgs) -> Result<Outcome, CliError> {
    if a.n == 0 {
        return Err(usage("n must be at least 1"));
    }
    let f = format_of(&a.output, Format::Csv, &[Format::Json, Format::Csv], "avg-chi2")?;
    if a.mode == Mode::Exact && a.n > AVG_EXACT_MAX_N {
        return Err(CliError::Cap(format!("exact mode needs n <= {AVG_EXACT_MAX_N}, got {}; use --mode log", a.n)));
    }
    let n = usize::try_from(a.n).map_err(|_| usage("n does not fit in memory indices"))?;
    let points = avg_chi2_curve(n, a.steps.0.clone(), a.mode == Mode::Log)?.points;
    let last = points.last().map(|(s, v)| format!("{v} at {s} steps")).unwrap_or_default();
    let summary = format!("averaged chi-square n={}: {} points, {last}", a.n, points.len());
    let content = match f {
        Format::Json => to_json(&json!({
            "schema": schema("curve"),
            "n": a.n,
            "k": 2,
            "start": "avg",
            "metric": Metric::ChiSquare.to_string(),
            "mode": a.mode,
            "points": points.iter().map(|(s, v)| point_json(*s, v)).collect::<Vec<_>>(),
        })),
        _ => curve_csv("curve", n, 2, "avg", Metric::ChiSquare, &points),
    };
    let title = format!("averaged chi-square, n = {}", a.n);
    Ok(Outcome::new(content, summary).plotted(plot_script(title, a.mode == Mode::Log)))
}

fn scan(a: &ScanArgs) -> Result<Outcome, CliError> {
    let f = format_of(&a.output, Format::Csv, &[Format::Json, Format::Csv], "cutoff-scan")?;
    let variant = match a.variant {
        Variant::Refined => CutoffVariant::Refined,
        Variant::Plain => CutoffVariant::PlainLog,
    };
    let rows = cutoff_scan(&a.n, &a.factors, variant)?;
    let content = match f {
        Format::Json => to_json(&json!({
            "schema": schema("scan"),
            "variant": a.variant,
            "rows": rows.iter().map(|r| json!({
                "n": r.n,
                "factor": r.factor,
                "steps": r.steps,
                "log_value": r.value.log_magnitude(),
                "sign": sign_number(r.value.sign()),
            })).collect::<Vec<_>>(),
        })),
        _ => {
            let mut out = csv_header("scan", "n,factor,steps,log_value,sign");
            for r in &rows {
                let _ = writeln!(out, "{},{},{},{},{}", r.n, r.factor, r.steps, r.value.log_magnitude(), sign_number(r.value.sign()));
            }
            out
        }
    };
    let summary = format!("cutoff scan: {} rows over {} values of n", rows.len(), a.n.len());
    Ok(Outcome::new(content, summary).plotted(|data: &str| {
        format!(
            "set datafile separator ','\nset datafile commentschars '#'\nset xlabel 'multiple of cutoff time'\nset ylabel 'log averaged chi-square'\nplot '{data}' skip 2 using 2:4 with points\n"
        )
    }))
}

fn sample(a: &SampleArgs) -> Result<Outcome, CliError> {
    check_n(a.n)?;
    let f = format_of(&a.output, Format::Csv, &[Format::Json, Format::Csv], "sample")?;
    let steps = a.steps.single().ok_or_else(|| usage("sample takes a single step count"))?;
    let x0 = resolve_state(&a.start, a.n, a.k)?;
    let path = run_chain(&x0, steps as usize, &mut RngStream::new(a.seed, 0));
    let end = path.last().expect("nonempty").to_string();
    let content = match f {
        Format::Json => to_json(&json!({
            "schema": schema("trajectory"),
            "n": a.n,
            "k": a.k,
            "seed": a.seed,
            "start": x0.to_string(),
            "path": path.iter().map(ToString::to_string).collect::<Vec<_>>(),
        })),
        _ => {
            let mut out = csv_header("trajectory", "step,state");
            for (i, x) in path.iter().enumerate() {
                let _ = writeln!(out, "{i},{x}");
            }
            out
        }
    };
    Ok(Outcome::new(content, format!("sample n={} k={} seed={}: {steps} steps from {x0} to {end}", a.n, a.k, a.seed)))
}

fn moment_json(m: &MomentReport) -> serde_json::Value {
    json!({
        "quantity": m.quantity,
        "steps": m.l,
        "mean": rational(&m.mean),
        "variance": rational(&m.variance),
        "provenance": m.provenance.to_string(),
    })
}

fn stats(a: &StatsArgs) -> Result<Outcome, CliError> {
    check_n(a.n)?;
    let f = format_of(&a.output, Format::Json, &[Format::Json, Format::Text], "stats")?;
    let (moments, distribution) = match &a.start {
        None => {
            let m = MomentReport {
                quantity: "alternations",
                l: None,
                mean: stationary_alternation_mean(a.n)?,
                variance: stationary_alternation_variance(a.n)?,
                provenance: statistics::Provenance::ClosedForm,
            };
            (vec![m], Some(alternation_distribution(a.n)?))
        }
        Some(spec) => {
            let x = resolve_state(spec, a.n, 2)?;
            let l = a.steps.as_ref().map_or(Some(1), |s| s.single()).ok_or_else(|| usage("stats takes a single step count"))?;
            let mut out = vec![ones_moments(&x, l)?];
            if a.n >= 2 {
                out.push(MomentReport {
                    quantity: "alternations",
                    l: Some(l),
                    mean: expected_alternations_after(&x, l)?,
                    variance: alternation_variance_after(&x, l)?,
                    provenance: statistics::Provenance::ClosedForm,
                });
            }
            (out, None)
        }
    };
    let summary = moments.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ");
    let content = match f {
        Format::Json => {
            let mut doc = json!({
                "schema": schema("stats"),
                "n": a.n,
                "start": a.start.as_ref().map(ToString::to_string),
                "moments": moments.iter().map(moment_json).collect::<Vec<_>>(),
            });
            if let Some(d) = &distribution {
                doc["alternation_law"] = d.iter().map(rational).collect();
            }
            to_json(&doc)
        }
        _ => {
            let mut out = format!("# schema: {}\n", schema("stats"));
            for m in &moments {
                let _ = writeln!(out, "{m}");
            }
            if let Some(d) = &distribution {
                let _ = writeln!(out, "alternation law: {}", d.iter().map(rational).collect::<Vec<_>>().join(" "));
            }
            out
        }
    };
    Ok(Outcome::new(content, format!("stats n={}: {summary}", a.n)))
}

fn hist(a: &HistArgs) -> Result<Outcome, CliError> {
    let f = format_of(&a.output, Format::Csv, &[Format::Json, Format::Csv], "hist")?;
    let (h, fit) = alternation_histogram(a.n, a.samples, a.bins, a.seed)?;
    let content = match f {
        Format::Json => to_json(&json!({
            "schema": schema("histogram"),
            "n": h.n,
            "samples": h.samples,
            "seed": h.seed,
            "edges": h.edges,
            "counts": h.counts,
            "fit": {
                "mean": fit.mean,
                "variance": fit.variance,
                "std_error": fit.std_error,
                "mean_z": fit.mean_z,
                "variance_rel_error": fit.variance_rel_error,
                "sup_cdf_half": fit.sup_cdf_half,
                "sup_cdf_all": fit.sup_cdf_all,
                "exact_sup_cdf_half": fit.exact_sup_cdf_half,
                "exact_sup_cdf_all": fit.exact_sup_cdf_all,
            },
        })),
        _ => format!("# schema: {}\n{}", schema("histogram"), h.to_csv()),
    };
    let summary = format!(
        "hist n={} samples={} seed={}: mean {:.5}, variance {:.5}, sup CDF gap {:.4}",
        a.n, a.samples, a.seed, fit.mean, fit.variance, fit.sup_cdf_all
    );
    let title = format!("alternations / (n - 1), n = {}", a.n);
    Ok(Outcome::new(content, summary).plotted(move |data: &str| {
        format!(
            "set datafile separator ','\nset datafile commentschars '#'\nset key off\nset title '{title}'\nset style fill solid 0.5\nplot '{data}' skip 2 using (($1+$2)/2):3:($2-$1) with boxes\n"
        )
    }))
}

fn verify(a: &VerifyArgs) -> Result<Outcome, CliError> {
    let f = format_of(&a.output, Format::Json, &[Format::Json, Format::Text], "verify")?;
    let suite: Suite = a.suite.parse()?;
    let results = run_suite(suite, a.max_n);
    let failed = results.iter().filter(|r| !r.passed()).count();
    let mut out = Outcome::new(
        emit_report(&results, f),
        format!("verify {suite}: {} checks, {} passed, {failed} failed", results.len(), results.len() - failed),
    );
    let blocking: Vec<_> = blocking_failures(&results).collect();
    if let Some(first) = blocking.first() {
        out.failure = Some(format!("{} blocking failures; first: {first}", blocking.len()));
    }
    Ok(out)
}
