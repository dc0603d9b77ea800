//! `fucik`: compute Fučík spectra from the command line.
//!
//! Exit codes: 0 success, 1 bad input (arguments, problem file, tolerances),
//! 2 an eigenvalue bracket was not found, 3 a requested curve is empty at
//! the working resolution, 4 numerical failure.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fucik::analysis::{asymptote_consistency, build_report, count_quadrant, Total};
use fucik::config::ProblemSource;
use fucik::eigen::{eigenvalue, EigenRequest};
use fucik::shooting::{write_trace_csv, zero_function, zero_function_inverse, zero_function_traced};
use fucik::spectrum::{trace_curve, write_curves_csv};
use fucik::weights::presets::CATALOG;
use fucik::{Branch, Error, Preset, Problem, Quadrant, SpectrumOptions, Tolerances, WeightSelector};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "fucik",
    version,
    about = "Fučík spectra of Dirichlet Sturm–Liouville problems with indefinite weights"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// JSON problem file
    #[arg(long, global = true, value_name = "FILE", conflicts_with = "preset")]
    problem: Option<PathBuf>,
    /// Built-in problem, NAME[:ARG] (see `fucik presets`)
    #[arg(long, global = true, value_name = "NAME[:ARG]")]
    preset: Option<String>,
    /// Relative integration tolerance, in ]0, 1e-2]
    #[arg(long, global = true)]
    tol_rel: Option<f64>,
    /// Absolute integration tolerance, in ]0, 1e-2]
    #[arg(long, global = true)]
    tol_abs: Option<f64>,
    /// Zero-location tolerance, in ]0, 1e-2]
    #[arg(long, global = true)]
    tol_event: Option<f64>,
    /// Largest |a| and |b| explored
    #[arg(long, global = true)]
    a_max: Option<f64>,
    /// Curve samples per decade of |a|
    #[arg(long, global = true)]
    grid_per_decade: Option<usize>,
    /// Write output here instead of stdout
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues lambda_k of one weight
    Eigen {
        /// Indices: `1..4`, `-2`, `1,3,-1`
        #[arg(long, default_value = "1..4", allow_hyphen_values = true)]
        k: String,
        #[arg(long, default_value = "m")]
        weight: WeightSelector,
        /// Subinterval `T1,T2` (default: whole interval)
        #[arg(long, value_name = "T1,T2", allow_hyphen_values = true)]
        sub: Option<String>,
    },
    /// One evaluation of the zero-function
    Zerofn {
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, allow_hyphen_values = true)]
        s: f64,
        #[arg(long, default_value = "m")]
        weight: WeightSelector,
        /// Shoot backwards: the last zero before `s`
        #[arg(long, conflicts_with = "trace")]
        inverse: bool,
        /// Also write the shot's integrator states (t,u,v) as CSV
        #[arg(long, value_name = "FILE")]
        trace: Option<PathBuf>,
    },
    /// Sample Fučík curves C_k as (a, b) points
    Trace {
        /// Orders: `2`, `2..5`, `2,4`
        #[arg(long, default_value = "2")]
        k: String,
        #[arg(long, default_value = "both")]
        branch: BranchArg,
        #[arg(long, default_value = "pp")]
        quadrant: QuadrantArg,
    },
    /// Counts, trivial lines and asymptotes for each quadrant
    Report {
        #[arg(long, default_value = "all")]
        quadrant: QuadrantArg,
        /// Highest k examined
        #[arg(long, default_value_t = 8)]
        k_stop: usize,
    },
    /// Nonempty sets C_k per level in one quadrant
    Count {
        #[arg(long, default_value = "pp")]
        quadrant: QuadrantArg,
        #[arg(long, default_value_t = 8)]
        k_stop: usize,
    },
    /// Compare f_2 along a doubling schedule with its predicted horizontal asymptote
    Asymptote {
        #[arg(long, default_value = "pp")]
        quadrant: Quadrant,
        #[arg(long, default_value = "gt")]
        branch: Branch,
        /// First probe abscissa |a| (default: 100 times the domain edge)
        #[arg(long)]
        a_probe: Option<f64>,
        #[arg(long, default_value_t = 6)]
        probes: usize,
    },
    /// List the built-in problems
    Presets,
}

#[derive(Clone, Copy, Debug)]
enum BranchArg {
    One(Branch),
    Both,
}

impl std::str::FromStr for BranchArg {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        if s == "both" {
            Ok(Self::Both)
        } else {
            s.parse().map(Self::One)
        }
    }
}

impl BranchArg {
    fn list(self) -> Vec<Branch> {
        match self {
            Self::One(b) => vec![b],
            Self::Both => Branch::BOTH.to_vec(),
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum QuadrantArg {
    One(Quadrant),
    All,
}

impl std::str::FromStr for QuadrantArg {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        if s == "all" {
            Ok(Self::All)
        } else {
            s.parse().map(Self::One)
        }
    }
}

impl QuadrantArg {
    fn list(self) -> Vec<Quadrant> {
        match self {
            Self::One(q) => vec![q],
            Self::All => Quadrant::ALL.to_vec(),
        }
    }
}

/// Everything that ends a run early, tagged with its exit code.
enum Failure {
    Lib(Error),
    Usage(String),
    Empty,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self::Lib(Error::Io(e))
    }
}

type Outcome = Result<(), Failure>;

/// `1..4`, `-3..-1`, `1,3,-1`, or a single integer.
fn parse_indices(spec: &str) -> Result<Vec<i32>, Failure> {
    let bad = || Failure::Usage(format!("cannot read index list '{spec}'"));
    let mut out = Vec::new();
    for part in spec.split(',').map(str::trim) {
        // the separator search skips a leading sign
        match part.get(1..).and_then(|rest| rest.find("..")).map(|i| i + 1) {
            Some(i) => {
                let lo: i32 = part[..i].trim().parse().map_err(|_| bad())?;
                let hi: i32 = part[i + 2..].trim().parse().map_err(|_| bad())?;
                if lo > hi {
                    return Err(bad());
                }
                // k = 0 is not an index; `-2..2` means both sequences
                out.extend((lo..=hi).filter(|&k| k != 0));
            }
            None => out.push(part.parse().map_err(|_| bad())?),
        }
    }
    Ok(out)
}

fn parse_orders(spec: &str) -> Result<Vec<usize>, Failure> {
    parse_indices(spec)?
        .into_iter()
        .map(|k| {
            usize::try_from(k)
                .ok()
                .filter(|&k| k >= 2)
                .ok_or_else(|| Failure::Usage(format!("curve order k must be at least 2, got {k}")))
        })
        .collect()
}

struct Run {
    problem: Problem,
    opts: SpectrumOptions<f64>,
    format: Format,
    out: Box<dyn Write>,
}

impl Run {
    fn new(g: &Global) -> Result<Self, Failure> {
        let source = match (&g.problem, &g.preset) {
            (Some(path), _) => ProblemSource::File(path.clone()),
            (None, Some(name)) => ProblemSource::Preset(name.parse::<Preset>()?),
            (None, None) => {
                return Err(Failure::Usage(
                    "give a problem with --problem FILE or --preset NAME".into(),
                ))
            }
        };
        let problem = source.load()?;
        let base = SpectrumOptions::default();
        let tol = Tolerances::new(
            g.tol_rel.unwrap_or(base.tol.rel),
            g.tol_abs.unwrap_or(base.tol.abs),
            g.tol_event.unwrap_or(base.tol.event),
        )?;
        let opts = SpectrumOptions {
            tol,
            a_max: g.a_max.unwrap_or(base.a_max),
            grid_per_decade: g.grid_per_decade.unwrap_or(base.grid_per_decade),
            ..base
        };
        opts.validate()?;
        let out: Box<dyn Write> = match &g.out {
            Some(path) => Box::new(BufWriter::new(File::create(path)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        };
        Ok(Self {
            problem,
            opts,
            format: g.format,
            out,
        })
    }

    fn json(&mut self, value: &impl serde::Serialize) -> Outcome {
        serde_json::to_writer_pretty(&mut self.out, value).map_err(Error::from)?;
        writeln!(self.out)?;
        Ok(())
    }
}

fn eigen(run: &mut Run, k: &str, weight: WeightSelector, sub: Option<&str>) -> Outcome {
    let (t1, t2) = match sub {
        None => run.problem.interval(),
        Some(text) => {
            let parts: Vec<f64> = text
                .split(',')
                .map(|x| x.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|_| Failure::Usage(format!("cannot read subinterval '{text}'")))?;
            match parts[..] {
                [a, b] => (a, b),
                _ => return Err(Failure::Usage(format!("subinterval needs two numbers, got '{text}'"))),
            }
        }
    };
    let mut rows = Vec::new();
    for k in parse_indices(k)? {
        let req = EigenRequest {
            which: weight,
            t1,
            t2,
            k,
        };
        rows.push((k, eigenvalue(&run.problem, &req, &run.opts.tol)?));
    }
    match run.format {
        Format::Csv => {
            writeln!(run.out, "k,lambda")?;
            for (k, l) in rows {
                match l {
                    Some(l) => writeln!(run.out, "{k},{l}")?,
                    None => writeln!(run.out, "{k},none")?,
                }
            }
        }
        Format::Json => {
            let rows: Vec<_> = rows.iter().map(|(k, l)| json!({"k": k, "lambda": l})).collect();
            run.json(&json!({"weight": weight, "interval": [t1, t2], "eigenvalues": rows}))?;
        }
    }
    Ok(())
}

fn zerofn(run: &mut Run, a: f64, s: f64, weight: WeightSelector, inverse: bool, trace: Option<&PathBuf>) -> Outcome {
    let tol = run.opts.tol;
    let crossing = if inverse {
        zero_function_inverse(&run.problem, weight, a, s, &tol)?
    } else if let Some(path) = trace {
        let (crossing, states) = zero_function_traced(&run.problem, weight, a, s, &tol)?;
        write_trace_csv(&states, BufWriter::new(File::create(path)?))?;
        crossing
    } else {
        zero_function(&run.problem, weight, a, s, &tol)?
    };
    match run.format {
        Format::Csv => {
            writeln!(run.out, "a,s,crossing")?;
            writeln!(run.out, "{a},{s},{crossing}")?;
        }
        Format::Json => run.json(&json!({
            "weight": weight, "a": a, "s": s, "inverse": inverse, "crossing": crossing.finite()
        }))?,
    }
    Ok(())
}

fn trace(run: &mut Run, k: &str, branch: BranchArg, quadrant: QuadrantArg) -> Outcome {
    let mut curves = Vec::new();
    for k in parse_orders(k)? {
        for q in quadrant.list() {
            for b in branch.list() {
                curves.push(trace_curve(&run.problem, k, b, q, &run.opts)?);
            }
        }
    }
    match run.format {
        Format::Csv => write_curves_csv(&curves, &mut run.out)?,
        Format::Json => run.json(&curves)?,
    }
    run.out.flush()?;
    let mut empty = false;
    for c in curves.iter().filter(|c| !c.status.is_nonempty()) {
        eprintln!("C_{}{} {}: {}", c.k, c.branch.symbol(), c.quadrant, c.status);
        empty = true;
    }
    if empty {
        Err(Failure::Empty)
    } else {
        Ok(())
    }
}

fn report(run: &mut Run, quadrant: QuadrantArg, k_stop: usize) -> Outcome {
    let report = build_report(&run.problem, &quadrant.list(), k_stop, &run.opts)?;
    match run.format {
        Format::Json => run.json(&report)?,
        Format::Csv => {
            writeln!(run.out, "quadrant,total,exact,symbolically_infinite")?;
            for (q, c) in &report.per_quadrant {
                let exact = matches!(c.total, Total::Exact(_));
                writeln!(run.out, "{q},{},{exact},{}", c.total.value(), c.symbolically_infinite)?;
            }
        }
    }
    Ok(())
}

fn count(run: &mut Run, quadrant: QuadrantArg, k_stop: usize) -> Outcome {
    let counts = quadrant
        .list()
        .into_iter()
        .map(|q| count_quadrant(&run.problem, q, k_stop, &run.opts))
        .collect::<Result<Vec<_>, _>>()?;
    match run.format {
        Format::Json => run.json(&counts)?,
        Format::Csv => {
            writeln!(run.out, "quadrant,k,branch,nonempty")?;
            for c in &counts {
                for level in &c.counts {
                    writeln!(
                        run.out,
                        "{},{},{},{}",
                        c.quadrant,
                        level.k,
                        level.branch,
                        level.status.is_nonempty()
                    )?;
                }
            }
        }
    }
    Ok(())
}

fn asymptote(run: &mut Run, quadrant: Quadrant, branch: Branch, a_probe: Option<f64>, probes: usize) -> Outcome {
    let check = asymptote_consistency(&run.problem, quadrant, branch, a_probe, probes, &run.opts)?;
    match run.format {
        Format::Json => run.json(&check)?,
        Format::Csv => {
            writeln!(run.out, "case,level,a,b,residual")?;
            for p in &check.probes {
                writeln!(
                    run.out,
                    "{},{},{},{},{}",
                    check.case, check.horizontal, p.a, p.b, p.residual
                )?;
            }
        }
    }
    Ok(())
}

fn presets(format: Format, out: &mut dyn Write) -> Outcome {
    match format {
        Format::Csv => {
            writeln!(out, "name,usage,description")?;
            for p in CATALOG {
                // descriptions contain commas
                writeln!(out, "{},{},\"{}\"", p.name, p.usage, p.description)?;
            }
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, CATALOG).map_err(Error::from)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn execute(cli: Cli) -> Outcome {
    if let Command::Presets = cli.command {
        let mut out: Box<dyn Write> = match &cli.global.out {
            Some(path) => Box::new(BufWriter::new(File::create(path)?)),
            None => Box::new(io::stdout().lock()),
        };
        presets(cli.global.format, &mut out)?;
        out.flush()?;
        return Ok(());
    }
    let mut run = Run::new(&cli.global)?;
    let result = match cli.command {
        Command::Eigen { k, weight, sub } => eigen(&mut run, &k, weight, sub.as_deref()),
        Command::Zerofn {
            a,
            s,
            weight,
            inverse,
            trace,
        } => zerofn(&mut run, a, s, weight, inverse, trace.as_ref()),
        Command::Trace { k, branch, quadrant } => trace(&mut run, &k, branch, quadrant),
        Command::Report { quadrant, k_stop } => report(&mut run, quadrant, k_stop),
        Command::Count { quadrant, k_stop } => count(&mut run, quadrant, k_stop),
        Command::Asymptote {
            quadrant,
            branch,
            a_probe,
            probes,
        } => asymptote(&mut run, quadrant, branch, a_probe, probes),
        Command::Presets => unreachable!(),
    };
    run.out.flush()?;
    result
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Empty) => ExitCode::from(3),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        // output cut short by the reader, e.g. `| head`
        Err(Failure::Lib(Error::Io(e))) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::NotFound { .. } => 2,
                Error::StepUnderflow { .. } | Error::Inconsistent(_) => 4,
                _ => 1,
            })
        }
    }
}
