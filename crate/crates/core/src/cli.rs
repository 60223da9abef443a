//! Command-line front end. Every command writes CSV preceded by `#` lines
//! that record the full configuration.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use crate::assembly::Method;
use crate::benchmarks::{
    condition_of, fill_rates, run_case, sample_on_grid, uniform_points, BenchmarkCase, BenchmarkReport,
    ConditionEntry, DiscreteSolution, TestId,
};
use crate::error::{Error, Result};
use crate::infsup::compute_infsup;

/// Largest system whose condition number `run` reports.
pub const RUN_CONDITION_LIMIT: usize = 3000;

#[derive(Debug, Parser)]
#[command(name = "mqstab", version, about = "Multilevel stabilized B-spline transport solver")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Discrete inf-sup constants of the fine/coarse L2 pairing.
    Infsup(InfsupArgs),
    /// Solve one benchmark and write report.csv and solution.csv.
    Run(RunArgs),
    /// Solve one benchmark on a list of meshes and report rates.
    Convergence(SweepArgs),
    /// Spectral condition numbers of the constrained systems.
    Condition(ConditionArgs),
}

#[derive(Debug, Args)]
pub struct InfsupArgs {
    #[arg(long = "degree", value_delimiter = ',', default_values_t = [2, 3])]
    pub degrees: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_values_t = [1, 2, 3])]
    pub levels: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_values_t = [8, 16, 32, 64, 128, 256, 512])]
    pub elements: Vec<usize>,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: u16,
}

#[derive(Debug, Args, Clone)]
pub struct CaseArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=6))]
    pub test: u8,
    #[arg(long, default_value = "mq", value_parser = parse_method)]
    pub method: Method,
    /// One degree per direction; a single value is repeated in 2D.
    #[arg(long = "degree", value_delimiter = ',')]
    pub degrees: Vec<usize>,
    #[arg(long)]
    pub levels: Option<usize>,
    #[arg(long)]
    pub cb: Option<f64>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub case: CaseArgs,
    #[arg(long, value_delimiter = ',')]
    pub elements: Vec<usize>,
    /// Samples per direction in solution.csv.
    #[arg(long, default_value_t = 101, value_parser = clap::value_parser!(u32).range(2..))]
    pub grid: u32,
    /// Output directory; the report goes to stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub case: CaseArgs,
    /// Mesh list; each value is expanded per direction like `run --elements`.
    #[arg(long, value_delimiter = ',', required = true)]
    pub elements: Vec<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: u16,
}

#[derive(Debug, Args)]
pub struct ConditionArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=6))]
    pub test: u8,
    #[arg(long, value_delimiter = ',', default_values_t = [Method::Galerkin, Method::Mq], value_parser = parse_method)]
    pub method: Vec<Method>,
    #[arg(long = "degree", value_delimiter = ',')]
    pub degrees: Vec<usize>,
    #[arg(long)]
    pub levels: Option<usize>,
    #[arg(long)]
    pub cb: Option<f64>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub elements: Vec<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: u16,
}

fn parse_method(s: &str) -> std::result::Result<Method, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code: 0 success, 1 argument error, 2 numerical failure.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Singular(_) | Error::NotPositiveDefinite | Error::NoConvergence | Error::NonFiniteCoefficient(_) => 2,
        _ => 1,
    }
}

pub fn execute(cmd: Command) -> Result<()> {
    match cmd {
        Command::Infsup(a) => cmd_infsup(&a),
        Command::Run(a) => cmd_run(&a),
        Command::Convergence(a) => cmd_convergence(&a),
        Command::Condition(a) => cmd_condition(&a),
    }
}

fn pool(threads: u16) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads as usize)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Error::InvalidArgument(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(String::new, |x| format!("{x:.6e}"))
}

pub fn cmd_infsup(a: &InfsupArgs) -> Result<()> {
    let mut cases = Vec::new();
    for &p in &a.degrees {
        for &l in &a.levels {
            for &n in &a.elements {
                cases.push((p, l, n));
            }
        }
    }
    if cases.is_empty() {
        return Err(Error::InvalidArgument("no inf-sup cases".into()));
    }
    let results: Vec<Result<f64>> =
        pool(a.threads)?.install(|| cases.par_iter().map(|&(p, l, n)| compute_infsup(p, l, n)).collect());
    let mut text = format!(
        "# mqstab infsup degree={} levels={} elements={}\np,L,n,beta\n",
        join(&a.degrees),
        join(&a.levels),
        join(&a.elements)
    );
    let mut failures = 0;
    let mut last_err = None;
    for (&(p, l, n), r) in cases.iter().zip(results) {
        match r {
            Ok(beta) => writeln!(text, "{p},{l},{n},{beta:.4}").unwrap(),
            Err(e) => {
                eprintln!("skipping p={p} L={l} n={n}: {e}");
                failures += 1;
                last_err = Some(e);
            }
        }
    }
    if failures == cases.len() {
        return Err(last_err.unwrap());
    }
    emit(a.out.as_deref(), &text)
}

fn build_case(c: &CaseArgs, elements: &[usize]) -> Result<BenchmarkCase> {
    let test = TestId::from_number(c.test as usize)?;
    let degrees = test.expand_degrees(&c.degrees)?;
    let elements = test.expand_elements(elements)?;
    if degrees.iter().chain(&elements).any(|&v| v == 0) {
        return Err(Error::InvalidArgument("degrees and element counts must be positive".into()));
    }
    let mut config = test.default_config(c.method, &degrees);
    if let Some(l) = c.levels {
        config.levels = l;
    }
    if let Some(cb) = c.cb {
        config.cb = cb;
    }
    config.validate()?;
    Ok(BenchmarkCase {
        test,
        degrees,
        elements,
        config,
    })
}

fn case_meta(cmd: &str, case: &BenchmarkCase) -> String {
    format!(
        "# mqstab {cmd} test={} method={} degree={} elements={} levels={} cb={}",
        case.test.number(),
        case.config.method,
        join(&case.degrees),
        join(&case.elements),
        case.config.levels,
        case.config.cb
    )
}

const REPORT_HEADER: &str = "test,method,p1,p2,ne1,ne2,L,cb,rel_l2,rel_h1,min,diff,cond,dofs,seconds";

fn report_row(r: &BenchmarkReport) -> String {
    let second = |v: &[usize]| v.get(1).map_or_else(String::new, ToString::to_string);
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{:.3}",
        r.test.number(),
        r.method,
        r.degrees[0],
        second(&r.degrees),
        r.elements[0],
        second(&r.elements),
        r.levels,
        r.cb,
        opt(r.rel_l2),
        opt(r.rel_h1),
        opt(r.min),
        opt(r.diff),
        opt(r.cond),
        r.dofs,
        r.seconds
    )
}

/// `x[,y],u` on a uniform grid with `m` points per direction.
pub fn solution_csv(sol: &DiscreteSolution, m: usize) -> Result<String> {
    let axes: Vec<Vec<f64>> = sol.space.domain().iter().map(|&(a, b)| uniform_points(a, b, m)).collect();
    let u = sample_on_grid(&sol.space, &sol.coefficients, &axes)?;
    let mut text = String::new();
    if axes.len() == 1 {
        text.push_str("x,u\n");
        for (x, v) in axes[0].iter().zip(&u) {
            writeln!(text, "{x:.6},{v:.10e}").unwrap();
        }
    } else {
        text.push_str("x,y,u\n");
        for (i, x) in axes[0].iter().enumerate() {
            for (j, y) in axes[1].iter().enumerate() {
                writeln!(text, "{x:.6},{y:.6},{:.10e}", u[i * m + j]).unwrap();
            }
        }
    }
    Ok(text)
}

pub fn cmd_run(a: &RunArgs) -> Result<()> {
    let case = build_case(&a.case, &a.elements)?;
    let (report, sol) = run_case(&case, RUN_CONDITION_LIMIT)?;
    let meta = format!("{} grid={}\n", case_meta("run", &case), a.grid);
    let report_text = format!("{meta}{REPORT_HEADER}\n{}\n", report_row(&report));
    match &a.out {
        None => emit(None, &report_text),
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| Error::InvalidArgument(format!("{}: {e}", dir.display())))?;
            emit(Some(&dir.join("report.csv")), &report_text)?;
            let sol_text = format!("{meta}{}", solution_csv(&sol, a.grid as usize)?);
            emit(Some(&dir.join("solution.csv")), &sol_text)
        }
    }
}

pub fn cmd_convergence(a: &SweepArgs) -> Result<()> {
    let cases = a
        .elements
        .iter()
        .map(|&n| build_case(&a.case, &[n]))
        .collect::<Result<Vec<_>>>()?;
    let results: Vec<Result<BenchmarkReport>> =
        pool(a.threads)?.install(|| cases.par_iter().map(|c| run_case(c, 0).map(|r| r.0)).collect());
    let mut reports = results.into_iter().collect::<Result<Vec<_>>>()?;
    fill_rates(&mut reports);
    let mut text = format!(
        "{} meshes={}\n{REPORT_HEADER},rate_l2,rate_h1\n",
        case_meta("convergence", &cases[0]),
        join(&a.elements)
    );
    for r in &reports {
        let rate = |v: Option<f64>| v.map_or_else(String::new, |x| format!("{x:.2}"));
        writeln!(text, "{},{},{}", report_row(r), rate(r.rate_l2), rate(r.rate_h1)).unwrap();
    }
    emit(a.out.as_deref(), &text)
}

pub fn cmd_condition(a: &ConditionArgs) -> Result<()> {
    let mut cases = Vec::new();
    for &n in &a.elements {
        for &m in &a.method {
            let c = CaseArgs {
                test: a.test,
                method: m,
                degrees: a.degrees.clone(),
                levels: a.levels,
                cb: a.cb,
            };
            cases.push(build_case(&c, &[n])?);
        }
    }
    let results: Vec<Result<ConditionEntry>> =
        pool(a.threads)?.install(|| cases.par_iter().map(condition_of).collect());
    let first = &cases[0];
    let mut text = format!(
        "# mqstab condition test={} method={} degree={} elements={} levels={} cb={}\nmethod,ne1,ne2,dofs,cond\n",
        first.test.number(),
        join(&a.method),
        join(&first.degrees),
        join(&a.elements),
        first.config.levels,
        first.config.cb
    );
    for r in results {
        let e = r?;
        if let Some(note) = &e.note {
            eprintln!("{} at {}: {note}", e.method, join(&e.elements));
        }
        let ne2 = e.elements.get(1).map_or_else(String::new, ToString::to_string);
        writeln!(text, "{},{},{ne2},{},{}", e.method, e.elements[0], e.dofs, opt(e.cond)).unwrap();
    }
    emit(a.out.as_deref(), &text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bad_test_id_is_argument_error() {
        assert_eq!(run(["mqstab", "run", "--test", "9"]), 1);
        assert_eq!(run(["mqstab", "run", "--test", "1", "--method", "foo"]), 1);
        assert_eq!(run(["mqstab", "frobnicate"]), 1);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Singular("x".into())), 2);
        assert_eq!(exit_code(&Error::InvalidArgument("x".into())), 1);
    }

    #[test]
    fn run_small_case_to_stdout() {
        assert_eq!(run(["mqstab", "run", "--test", "2", "--degree", "2", "--elements", "16", "--levels", "2"]), 0);
    }

    #[test]
    fn case_expansion() {
        let c = CaseArgs {
            test: 6,
            method: Method::Galerkin,
            degrees: vec![],
            levels: None,
            cb: None,
        };
        let case = build_case(&c, &[128]).unwrap();
        assert_eq!(case.elements, vec![8, 128]);
        assert_eq!(case.degrees, vec![2, 3]);
        let c = CaseArgs { test: 4, degrees: vec![2], ..c };
        let case = build_case(&c, &[32]).unwrap();
        assert_eq!(case.elements, vec![32, 32]);
        assert_eq!(case.degrees, vec![2, 2]);
        assert_eq!(case.config.levels, 5);
    }
}
