mod args;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use rayon::prelude::*;

use args::{Cli, Command, PolyArgs, SimulateArgs, TableArgs, VerifyArgs};
use cnqual::bisect::DEFAULT_WIDTH;
use cnqual::bounds::{bound_with, limit_bound, write_table_csv, QualBound};
use cnqual::format::{csv_line, g15, g_format};
use cnqual::matrix::GridConfig;
use cnqual::oracle::{cross_check, write_report_csv, CrossReport};
use cnqual::polynomials::{eval_recurrence, PolyKind};
use cnqual::simulator::{run, write_trace_csv, InitialCondition, SimConfig};
use cnqual::Property;

const TOL_ENV: &str = "CNQUAL_BISECT_TOL";

/// Failure classes with their exit codes.
enum Failure {
    /// Exit 1.
    Compute(String),
    /// Exit 2.
    Usage(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Compute(_) => 1,
            Failure::Usage(_) => 2,
        }
    }
}

impl From<cnqual::Error> for Failure {
    fn from(e: cnqual::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Compute(format!("i/o error: {e}"))
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(2),
            };
        }
    };
    let outcome = match cli.command {
        Command::Table(a) => cmd_table(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Poly(a) => cmd_poly(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Compute(msg) => eprintln!("error: {msg}"),
                Failure::Usage(msg) => eprintln!("invalid argument: {msg}"),
            }
            ExitCode::from(f.code())
        }
    }
}

fn bisect_width() -> Result<f64, Failure> {
    match std::env::var(TOL_ENV) {
        Err(_) => Ok(DEFAULT_WIDTH),
        Ok(raw) => match raw.trim().parse::<f64>() {
            Ok(w) if w > 0.0 && w.is_finite() => Ok(w),
            _ => Err(Failure::Usage(format!("{TOL_ENV} must be a positive number, got {raw:?}"))),
        },
    }
}

fn open_output(path: &Path) -> Result<Box<dyn Write>, Failure> {
    if path.as_os_str() == "-" {
        Ok(Box::new(BufWriter::new(io::stdout().lock())))
    } else {
        let file = File::create(path).map_err(|e| Failure::Usage(format!("cannot create {}: {e}", path.display())))?;
        Ok(Box::new(BufWriter::new(file)))
    }
}

fn cmd_table(a: TableArgs) -> Outcome {
    let width = bisect_width()?;
    let property: Property = a.property.into();
    let mut rows = a
        .m
        .0
        .par_iter()
        .map(|&m| bound_with::<f64>(property, m, width))
        .collect::<cnqual::Result<Vec<QualBound<f64>>>>()?;
    if a.limit {
        rows.push(limit_bound(property));
    }
    let mut out = open_output(&a.output)?;
    write_table_csv(&mut out, &rows)?;
    out.flush()?;
    Ok(())
}

fn cmd_verify(a: VerifyArgs) -> Outcome {
    if a.m_max == 0 {
        return Err(Failure::Usage("--m-max must be >= 1".into()));
    }
    if !(a.tol > 0.0) {
        return Err(Failure::Usage("--tol must be > 0".into()));
    }
    let width = bisect_width()?;
    let property: Property = a.property.into();
    let rows = (1..=a.m_max)
        .into_par_iter()
        .map(|m| cross_check(property, m, a.tol, width))
        .collect::<cnqual::Result<Vec<_>>>()?;
    let report = CrossReport { property, tol: a.tol, rows };

    let mut out = open_output(&a.output)?;
    write_report_csv(&mut out, &report.rows)?;
    out.flush()?;

    match report.max_deviation() {
        Some(d) => eprintln!("max deviation {} (tol {})", g15(d), g15(a.tol)),
        None => eprintln!("closed form and brute force disagree on boundedness"),
    }
    let failed: Vec<String> = report.failures().map(|r| r.m.to_string()).collect();
    if failed.is_empty() {
        eprintln!("all {} mesh sizes within tolerance", report.rows.len());
        Ok(())
    } else {
        Err(Failure::Compute(format!("tolerance exceeded for m = {}", failed.join(","))))
    }
}

fn cmd_simulate(a: SimulateArgs) -> Outcome {
    if a.m == 0 {
        return Err(Failure::Usage("--m must be >= 1".into()));
    }
    let grid = GridConfig::new(a.m, a.d).map_err(|e| Failure::Usage(e.to_string()))?;
    let initial = match (a.step_profile, a.initial) {
        (Some(p), _) => InitialCondition::StepProfile(p),
        (None, Some(v)) => InitialCondition::Custom(v),
        (None, None) => return Err(Failure::Usage("need --step-profile or --initial".into())),
    };
    let config = SimConfig { grid, theta: a.theta, tau: a.tau, steps: a.steps, initial };
    config.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    let trace = run(&config)?;

    let mut out = open_output(&a.output)?;
    write_trace_csv(&mut out, &trace)?;
    out.flush()?;

    let last = trace.states.len() - 1;
    let shown: Vec<String> = trace.last_state().iter().map(|v| format!("{v:.4}")).collect();
    eprintln!("s = {}", g15(config.s()));
    eprintln!("w_{last} = ({})", shown.join(", "));
    eprintln!("||w_{last}||_inf = {:.4}", trace.norms[last]);
    match trace.positivity_violation {
        Some(n) => eprintln!("positivity violated at step {n}"),
        None => eprintln!("no positivity violation"),
    }
    match trace.norm_violation {
        Some(n) => eprintln!("contractivity violated at step {n}"),
        None => eprintln!("no contractivity violation"),
    }
    Ok(())
}

fn cmd_poly(a: PolyArgs) -> Outcome {
    let args::Interval(lo, hi) = a.range;
    let degenerate = lo == hi;
    if a.samples == 0 || (a.samples == 1 && !degenerate) {
        return Err(Failure::Usage("--samples must be >= 2 (1 only when the range is a single point)".into()));
    }
    let kind: PolyKind = a.kind.into();
    let step = if a.samples > 1 { (hi - lo) / (a.samples - 1) as f64 } else { 0.0 };
    let mut out = open_output(&a.output)?;
    writeln!(out, "x,value")?;
    for k in 0..a.samples {
        let x = if k + 1 == a.samples { hi } else { lo + step * k as f64 };
        let v = eval_recurrence(kind, a.n, &x)?;
        writeln!(out, "{}", csv_line([g15(x), g15(v)]))?;
    }
    out.flush()?;
    eprintln!("{kind}_{} on [{}, {}], {} samples", a.n, g_format(lo, 6), g_format(hi, 6), a.samples);
    Ok(())
}
