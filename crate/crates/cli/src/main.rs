use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use macdonald_core::harness::{
    compare_golden, default_sweep, golden_text, parse_suites, run_verification, sweep,
    with_threads, Report, RunConfig,
};
use macdonald_core::macparams::PairKind;
use macdonald_core::numeric::Precision;
use macdonald_core::operators::{finite_operator, Side, TruncatedCone};
use macdonald_core::polynomials::{construct_macdonald, norms_csv, OrthogonalityData};
use macdonald_core::rootsys::CartanType;

/// Set to regenerate the file named by `--golden` instead of comparing.
const BLESS_VAR: &str = "MACDONALD_BLESS";

#[derive(Parser)]
#[command(
    name = "macdonald",
    version,
    about = "Macdonald polynomials at unitary parameters on truncated cones",
    args_conflicts_with_subcommands = true
)]
struct Cli {
    #[command(flatten)]
    run: RunArgs,

    /// Write the JSON report here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Compare against a golden report (residuals rounded to 2 digits).
    #[arg(long, value_name = "PATH")]
    golden: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Run many configs and print the pass/fail matrix.
    Sweep(SweepArgs),
    /// Print operator matrices, polynomial tables or per-weight norms.
    Export(ExportArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Root system, e.g. B3, or a family letter together with --rank.
    #[arg(long = "type", value_name = "TYPE")]
    root_type: Option<String>,

    #[arg(long)]
    rank: Option<usize>,

    #[arg(long, value_enum, default_value_t = PairArg::Self_)]
    pair: PairArg,

    /// Multiplicity on short roots, as p/q or an integer.
    #[arg(long, value_name = "P/Q", allow_hyphen_values = true)]
    g_short: Option<String>,

    /// Multiplicity on long roots; defaults to --g-short.
    #[arg(long, value_name = "P/Q", allow_hyphen_values = true)]
    g_long: Option<String>,

    #[arg(long, value_name = "N", allow_hyphen_values = true)]
    c: Option<i64>,

    /// Comma-separated suites, or all.
    #[arg(long, default_value = "all")]
    suites: String,

    #[arg(long, value_enum, default_value_t = PrecisionArg::Double)]
    precision: PrecisionArg,

    /// Worker threads; 0 lets the runtime decide.
    #[arg(long, value_name = "N", default_value_t = 0)]
    threads: usize,

    /// Accept E7 with c a proper multiple of 6.
    #[arg(long)]
    allow_degenerate: bool,
}

#[derive(Args)]
struct SweepArgs {
    /// JSON array of run configs; the shipped sweep when absent.
    #[arg(long, value_name = "PATH")]
    configs: Option<PathBuf>,

    /// Suites for the shipped sweep.
    #[arg(long, default_value = "all")]
    suites: String,

    #[arg(long, value_name = "N", default_value_t = 0)]
    threads: usize,

    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExportArgs {
    #[arg(value_enum)]
    what: ExportKind,

    #[command(flatten)]
    run: RunArgs,

    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum PairArg {
    #[value(name = "self")]
    Self_,
    Dual,
}

#[derive(Clone, Copy, ValueEnum)]
enum PrecisionArg {
    Double,
    Extended,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportKind {
    /// Every small-weight operator on the grid, as sparse text.
    Operators,
    /// Coefficient tables of the normalized polynomials.
    Polynomials,
    /// CSV of per-weight norms against the closed form.
    Norms,
}

/// A failed check or golden mismatch (exit 1); errors exit 2.
struct Failed;

impl RunArgs {
    fn config(&self) -> Result<RunConfig> {
        let Some(label) = &self.root_type else {
            bail!("--type is required");
        };
        let Some(g_short) = &self.g_short else {
            bail!("--g-short is required");
        };
        let Some(c) = self.c else {
            bail!("--c is required");
        };
        let ty = CartanType::parse(label, self.rank)?;
        let pair = match self.pair {
            PairArg::Self_ => PairKind::SelfDual,
            PairArg::Dual => PairKind::Dual,
        };
        let cfg = RunConfig {
            root_type: ty.to_string(),
            pair,
            g_short: g_short.clone(),
            g_long: self.g_long.clone().unwrap_or_else(|| g_short.clone()),
            c,
            suites: parse_suites(&self.suites)?,
            precision: match self.precision {
                PrecisionArg::Double => Precision::Double,
                PrecisionArg::Extended => Precision::Extended,
            },
            threads: self.threads,
            out: None,
            allow_degenerate: self.allow_degenerate,
            perturbation: None,
        };
        Ok(cfg.normalized()?)
    }
}

fn write_output(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn print_failures(report: &Report) {
    if let Some(e) = &report.construction_error {
        eprintln!("construction: {e}");
    }
    for s in report.suites.iter().filter(|s| !s.status.is_pass()) {
        for d in &s.diagnostics {
            eprintln!("{}: {d}", s.suite);
        }
    }
}

fn run(cli: &Cli) -> Result<std::result::Result<(), Failed>> {
    let mut cfg = cli.run.config()?;
    cfg.out = cli.out.clone();
    let report = run_verification(&cfg)?;
    write_output(cli.out.as_deref(), &report.to_json()?)?;
    let mut ok = report.passed();
    if !ok {
        print_failures(&report);
    }
    if let Some(golden) = &cli.golden {
        if std::env::var_os(BLESS_VAR).is_some() {
            std::fs::write(golden, golden_text(&report)?)
                .with_context(|| format!("cannot write {}", golden.display()))?;
            eprintln!("wrote {}", golden.display());
        } else {
            let diffs = compare_golden(&report, golden)?;
            for d in &diffs {
                eprintln!("golden: {d}");
            }
            ok &= diffs.is_empty();
        }
    }
    eprintln!("{}: {}", cfg.label(), if ok { "pass" } else { "fail" });
    Ok(if ok { Ok(()) } else { Err(Failed) })
}

fn run_sweep(args: &SweepArgs) -> Result<std::result::Result<(), Failed>> {
    let configs = match &args.configs {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .with_context(|| format!("cannot read {}", p.display()))?;
            RunConfig::list_from_json(&text)?
        }
        None => default_sweep(&parse_suites(&args.suites)?),
    };
    let report = with_threads(args.threads, || sweep(&configs))?;
    write_output(args.out.as_deref(), &report.to_json()?)?;
    for e in report.entries.iter().filter(|e| !e.status.is_pass()) {
        let suites: Vec<String> = e.failed_suites.iter().map(|s| s.to_string()).collect();
        eprintln!(
            "fail {} {} g=({},{}) c={} [{}]{}",
            e.root_type,
            e.pair,
            e.g_short,
            e.g_long,
            e.c,
            suites.join(","),
            e.error
                .as_deref()
                .map(|m| format!(" {m}"))
                .unwrap_or_default()
        );
    }
    eprintln!("sweep: {}/{} pass", report.passed, report.total);
    Ok(if report.status.is_pass() {
        Ok(())
    } else {
        Err(Failed)
    })
}

fn run_export(args: &ExportArgs) -> Result<()> {
    let cfg = args.run.config()?;
    let spec = cfg.spec()?;
    let text = with_threads(cfg.threads, || -> Result<String> {
        Ok(match args.what {
            ExportKind::Operators => {
                let grid = TruncatedCone::new(&spec, Side::PHat);
                let mut s = String::new();
                for omega in grid.frame().small_weights() {
                    s += &finite_operator(&grid, &omega)?.to_text(&grid);
                }
                s
            }
            ExportKind::Polynomials => {
                let con = construct_macdonald(&spec)?;
                let roots = con.cone.frame().roots();
                con.polynomials()
                    .iter()
                    .map(|p| p.to_text(roots))
                    .collect::<Vec<_>>()
                    .join("\n")
            }
            ExportKind::Norms => {
                let con = construct_macdonald(&spec)?;
                norms_csv(&con, &OrthogonalityData::new(&con)?)
            }
        })
    })??;
    write_output(args.out.as_deref(), &text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Some(Command::Sweep(args)) => run_sweep(args),
        Some(Command::Export(args)) => run_export(args).map(Ok),
        None => run(&cli),
    };
    match result {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(Failed)) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
