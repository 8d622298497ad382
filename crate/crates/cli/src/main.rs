mod texpr;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qwalk::acceptance;
use qwalk::format::round_sig;
use qwalk::graphs::Family;
use qwalk::spectra::Spectrum;
use qwalk::statetransfer::{Analysis, Certificate};
use qwalk::walk::{verify_periodicity, Walk, PGST_EVIDENCE_THRESHOLD};
use rayon::prelude::*;
use serde_json::{json, Value};

const EXIT_USAGE: u8 = 2;
const EXIT_DISAGREEMENT: u8 = 3;
const JOBS_ENV: &str = "QWALK_JOBS";

/// Quantum walks on unitary (X) and quadratic unitary (G) Cayley graphs.
#[derive(Debug, Parser)]
#[command(name = "qwalk", version)]
struct Cli {
    /// Numeric tolerance for simulation and periodicity checks.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,
    /// Grid points for sweeps.
    #[arg(long, global = true, default_value_t = 100_000)]
    steps: usize,
    /// Upper end of the sweep interval (0, tmax].
    #[arg(long, global = true, default_value_t = 100.0)]
    tmax: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads (overridden by QWALK_JOBS).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact and floating-point spectrum.
    Spectrum { family: Family, n: u64 },
    /// Closed-form classification next to the decisions computed from the spectrum.
    Classify { family: Family, n: u64 },
    /// Classify every n in a range.
    Enumerate {
        family: Family,
        n_min: u64,
        n_max: u64,
        /// Refuse ranges beyond this n.
        #[arg(long, default_value_t = 500)]
        max_n: u64,
    },
    /// Coefficients of H(t)e_a on e_a and e_b; T is e.g. 2pi/7.
    Simulate {
        family: Family,
        n: u64,
        a: usize,
        b: usize,
        #[arg(allow_hyphen_values = true)]
        t: String,
    },
    /// Grid search for the largest |H(t)_ab| on (0, tmax].
    Sweep {
        family: Family,
        n: u64,
        a: usize,
        b: usize,
        /// Fidelity counted as evidence of pretty good state transfer.
        #[arg(long, default_value_t = PGST_EVIDENCE_THRESHOLD)]
        threshold: f64,
    },
    /// Run the acceptance suite.
    Selftest,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Disagreement(String),
}

impl From<qwalk::Error> for Failure {
    fn from(e: qwalk::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_pool(cli.jobs).and_then(|()| run(&cli));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Disagreement(msg)) => {
            eprintln!("disagreement: {msg}");
            ExitCode::from(EXIT_DISAGREEMENT)
        }
    }
}

fn configure_pool(flag: Option<usize>) -> Outcome {
    let jobs = match std::env::var(JOBS_ENV) {
        Ok(v) => Some(
            v.trim()
                .parse::<usize>()
                .map_err(|_| Failure::Usage(format!("{JOBS_ENV}={v:?} is not a thread count")))?,
        ),
        Err(_) => flag,
    };
    if let Some(jobs) = jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Outcome {
    if !(cli.tolerance > 0.0) {
        return Err(Failure::Usage("--tolerance must be positive".into()));
    }
    if cli.steps < 2 {
        return Err(Failure::Usage("--steps must be at least 2".into()));
    }
    match &cli.command {
        Command::Spectrum { family, n } => spectrum(cli, *family, *n),
        Command::Classify { family, n } => classify(cli, *family, *n),
        Command::Enumerate { family, n_min, n_max, max_n } => {
            enumerate(cli, *family, *n_min, *n_max, *max_n)
        }
        Command::Simulate { family, n, a, b, t } => simulate(cli, *family, *n, *a, *b, t),
        Command::Sweep { family, n, a, b, threshold } => sweep(cli, *family, *n, *a, *b, *threshold),
        Command::Selftest => selftest(cli),
    }
}

fn emit_json(value: &Value) -> Outcome {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value).map_err(|e| Failure::Usage(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

fn csv_writer() -> csv::Writer<io::StdoutLock<'static>> {
    csv::Writer::from_writer(io::stdout().lock())
}

fn num(x: f64) -> String {
    round_sig(x).to_string()
}

fn spectrum(cli: &Cli, family: Family, n: u64) -> Outcome {
    let spec = Spectrum::of(family, n)?;
    match cli.format {
        Format::Json => {
            let mut v = spec.to_json();
            v["family"] = json!(family.symbol());
            emit_json(&v)
        }
        Format::Csv => {
            let mut w = csv_writer();
            w.write_record(["j", "exact", "float"])?;
            for (j, (exact, x)) in spec.values().iter().zip(spec.floats()).enumerate() {
                w.write_record([j.to_string(), exact.to_string(), num(x)])?;
            }
            w.flush()?;
            Ok(())
        }
    }
}

fn certificate_text(c: &Certificate) -> String {
    c.iter().map(|(r, v)| format!("{r}:{v}")).collect::<Vec<_>>().join(" ")
}

const ROW_HEADER: [&str; 13] = [
    "n",
    "family",
    "periodic",
    "pst",
    "pgst",
    "fr",
    "pgfr",
    "decided_periodic",
    "decided_fr",
    "decided_pgfr",
    "fr_witness_t_over_2pi",
    "pgfr_certificate",
    "agreement",
];

fn csv_row(a: &Analysis) -> Vec<String> {
    let r = &a.record;
    vec![
        r.n.to_string(),
        r.family.symbol().to_string(),
        r.periodic.to_string(),
        r.pst.to_string(),
        r.pgst.to_string(),
        r.fr.to_string(),
        r.pgfr.to_string(),
        a.periodic.to_string(),
        a.fr.holds.to_string(),
        a.pgfr.holds.to_string(),
        a.fr.witness_t_over_2pi.as_ref().map(ToString::to_string).unwrap_or_default(),
        a.pgfr.certificate.as_ref().map(certificate_text).unwrap_or_default(),
        a.disagreements().is_empty().to_string(),
    ]
}

fn compact_json(a: &Analysis) -> Value {
    let r = &a.record;
    json!({
        "n": r.n,
        "closed_form": {
            "periodic": r.periodic,
            "pst": r.pst,
            "pgst": r.pgst,
            "fr": r.fr,
            "pgfr": r.pgfr,
        },
        "decided": {
            "periodic": a.periodic,
            "fr": a.fr.holds,
            "fr_witness_t_over_2pi": a.fr.witness_t_over_2pi.as_ref().map(ToString::to_string),
            "pgfr": a.pgfr.holds,
            "pgfr_certificate": a.pgfr.certificate.as_ref().map(certificate_text),
        },
        "agreement": a.disagreements().is_empty(),
    })
}

fn disagreement_check(analyses: &[Analysis]) -> Outcome {
    let bad: Vec<String> = analyses
        .iter()
        .filter(|a| !a.disagreements().is_empty())
        .map(|a| format!("{}_{} ({})", a.record.family, a.record.n, a.disagreements().join(", ")))
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Failure::Disagreement(bad.join("; ")))
    }
}

fn classify(cli: &Cli, family: Family, n: u64) -> Outcome {
    let analysis = Analysis::run(family, n)?;
    match cli.format {
        Format::Json => {
            let mut v = analysis.to_json();
            v["periodicity_check"] = match verify_periodicity(&analysis.spectrum, cli.tolerance) {
                Some(p) => json!({
                    "t": round_sig(p.t),
                    "g": p.g,
                    "diagonal": round_sig(p.diagonal),
                    "off_diagonal": round_sig(p.off_diagonal),
                    "passes": p.passes,
                }),
                None => Value::Null,
            };
            emit_json(&v)?;
        }
        Format::Csv => {
            let mut w = csv_writer();
            w.write_record(ROW_HEADER)?;
            w.write_record(csv_row(&analysis))?;
            w.flush()?;
        }
    }
    disagreement_check(std::slice::from_ref(&analysis))
}

fn enumerate(cli: &Cli, family: Family, n_min: u64, n_max: u64, max_n: u64) -> Outcome {
    if n_min < 2 || n_min > n_max {
        return Err(Failure::Usage(format!("need 2 <= n_min <= n_max, got {n_min}..{n_max}")));
    }
    if n_max > max_n {
        return Err(Failure::Usage(format!("n_max {n_max} exceeds --max-n {max_n}")));
    }
    let analyses: Vec<Analysis> = (n_min..=n_max)
        .into_par_iter()
        .map(|n| Analysis::run(family, n))
        .collect::<Result<_, _>>()?;
    match cli.format {
        Format::Json => {
            let disagreements: Vec<u64> = analyses
                .iter()
                .filter(|a| !a.disagreements().is_empty())
                .map(|a| a.record.n)
                .collect();
            emit_json(&json!({
                "family": family.symbol(),
                "n_min": n_min,
                "n_max": n_max,
                "rows": analyses.iter().map(compact_json).collect::<Vec<_>>(),
                "disagreements": disagreements,
            }))?;
        }
        Format::Csv => {
            let mut w = csv_writer();
            w.write_record(ROW_HEADER)?;
            for a in &analyses {
                w.write_record(csv_row(a))?;
            }
            w.flush()?;
        }
    }
    disagreement_check(&analyses)
}

fn check_vertices(n: u64, a: usize, b: usize) -> Outcome {
    if a as u64 >= n || b as u64 >= n {
        return Err(Failure::Usage(format!("vertices {a}, {b} out of range for n = {n}")));
    }
    Ok(())
}

fn simulate(cli: &Cli, family: Family, n: u64, a: usize, b: usize, t_expr: &str) -> Outcome {
    let t = texpr::parse(t_expr).map_err(Failure::Usage)?;
    let spec = Spectrum::of(family, n)?;
    check_vertices(n, a, b)?;
    let report = Walk::new(&spec).fr_report(a, b, t)?;
    let fr_numeric = report.residual <= cli.tolerance && report.beta.norm() > cli.tolerance;
    match cli.format {
        Format::Json => {
            let mut v = report.to_json();
            v["family"] = json!(family.symbol());
            v["n"] = json!(n);
            v["t_expr"] = json!(t_expr);
            v["fr_within_tolerance"] = json!(fr_numeric);
            emit_json(&v)
        }
        Format::Csv => {
            let mut w = csv_writer();
            w.write_record([
                "family", "n", "a", "b", "t", "alpha_re", "alpha_im", "beta_re", "beta_im", "abs_beta",
                "residual", "fr_within_tolerance",
            ])?;
            w.write_record([
                family.symbol().to_string(),
                n.to_string(),
                a.to_string(),
                b.to_string(),
                num(t),
                num(report.alpha.re),
                num(report.alpha.im),
                num(report.beta.re),
                num(report.beta.im),
                num(report.beta.norm()),
                num(report.residual),
                fr_numeric.to_string(),
            ])?;
            w.flush()?;
            Ok(())
        }
    }
}

fn sweep(cli: &Cli, family: Family, n: u64, a: usize, b: usize, threshold: f64) -> Outcome {
    let spec = Spectrum::of(family, n)?;
    check_vertices(n, a, b)?;
    let walk = Walk::new(&spec);
    let result = walk.sweep_max_fidelity(a, b, cli.tmax, cli.steps)?;
    let mut summary = result.to_json(threshold);
    summary["family"] = json!(family.symbol());
    summary["n"] = json!(n);
    summary["a"] = json!(a);
    summary["b"] = json!(b);
    summary["t_max"] = json!(round_sig(cli.tmax));
    summary["steps"] = json!(cli.steps);
    match cli.format {
        Format::Json => emit_json(&summary),
        Format::Csv => {
            let mut w = csv_writer();
            w.write_record(["t", "fidelity"])?;
            for (t, f) in walk.fidelity_grid(a, b, cli.tmax, cli.steps)? {
                w.write_record([num(t), num(f)])?;
            }
            w.flush()?;
            eprintln!("{summary}");
            Ok(())
        }
    }
}

fn selftest(cli: &Cli) -> Outcome {
    let outcomes = acceptance::run_all();
    for o in &outcomes {
        eprintln!("{o}");
    }
    match cli.format {
        Format::Json => emit_json(&json!({
            "criteria": outcomes
                .iter()
                .map(|o| json!({ "id": o.id, "title": o.title, "passed": o.passed, "detail": o.detail }))
                .collect::<Vec<_>>(),
            "passed": outcomes.iter().all(|o| o.passed),
        }))?,
        Format::Csv => {
            let mut w = csv_writer();
            w.write_record(["id", "title", "passed", "detail"])?;
            for o in &outcomes {
                w.write_record([o.id.to_string(), o.title.to_string(), o.passed.to_string(), o.detail.clone()])?;
            }
            w.flush()?;
        }
    }
    let failed: Vec<String> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id.to_string()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Disagreement(format!("criteria {} failed", failed.join(", "))))
    }
}
