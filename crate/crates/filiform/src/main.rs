//! Command-line driver: load a catalog, run verification suites, and
//! emit human-readable or machine-readable reports.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use filiform::catalog::Catalog;
use filiform::cli::verify::{run, CheckKind, Options};
use filiform::cli::Report;

#[derive(Parser)]
#[command(name = "filiform", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification checks and report per-check status lines.
    Verify(VerifyArgs),
    /// Re-render a saved JSON report.
    Report(ReportArgs),
    /// List the catalog contents.
    List(ListArgs),
}

#[derive(Args)]
struct CatalogArg {
    /// Catalog JSON path; falls back to FILIFORM_CATALOG, then to the
    /// embedded catalog.
    #[arg(long, env = "FILIFORM_CATALOG")]
    catalog: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    catalog: CatalogArg,
    /// Restrict to these case ids (repeatable).
    #[arg(long = "case")]
    cases: Vec<String>,
    /// Restrict to these families (repeatable).
    #[arg(long = "algebra")]
    algebras: Vec<String>,
    /// Restrict to these check kinds (repeatable).
    #[arg(long = "check")]
    checks: Vec<CheckKindArg>,
    /// Run everything (the default when no filter is given).
    #[arg(long)]
    all: bool,
    /// Specializations per sampled check.
    #[arg(long, default_value_t = 3)]
    samples: usize,
    /// Seed for the specialization stream.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Treat findings as failures.
    #[arg(long)]
    strict: bool,
    /// Report format for --out (or stdout with --out -).
    #[arg(long, value_parser = ["json", "md"], default_value = "md")]
    format: String,
    /// Write the full report here; "-" for stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone)]
struct CheckKindArg(CheckKind);

impl std::str::FromStr for CheckKindArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.parse().map(CheckKindArg)
    }
}

#[derive(Args)]
struct ReportArgs {
    /// A JSON report produced by `verify --format json`.
    #[arg(long)]
    from: PathBuf,
    #[arg(long, value_parser = ["json", "md"], default_value = "md")]
    format: String,
    /// Output path; "-" for stdout (the default).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ListArgs {
    #[command(flatten)]
    catalog: CatalogArg,
}

fn load_catalog(arg: &CatalogArg) -> Result<Catalog, String> {
    match &arg.catalog {
        Some(path) => Catalog::from_path(path).map_err(|e| format!("{}: {e}", path.display())),
        None => Catalog::embedded().map_err(|e| e.to_string()),
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), String> {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(p) if p.as_os_str() == "-" => {
            print!("{text}");
            Ok(())
        }
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, String> {
    let catalog = load_catalog(&args.catalog)?;
    let opts = Options {
        cases: args.cases,
        algebras: args.algebras,
        checks: args.checks.iter().map(|c| c.0).collect(),
        samples: args.samples,
        seed: args.seed,
        jobs: args.jobs,
    };
    let results = run(&catalog, &opts).map_err(|e| e.to_string())?;
    let report = Report::new(opts.seed, opts.samples, results);
    for r in &report.results {
        println!(
            "{:8} {} {} {}{}",
            r.status.to_string(),
            r.case_id,
            r.check_kind,
            r.algebra.as_deref().unwrap_or("-"),
            if r.residuals.is_empty() {
                String::new()
            } else {
                format!(" ({} residuals)", r.residuals.len())
            }
        );
    }
    let (pass, fail, finding, skipped) = report.counts();
    println!("total: {pass} PASS, {fail} FAIL, {finding} FINDING, {skipped} SKIPPED");
    if let Some(out) = &args.out {
        let text = match args.format.as_str() {
            "json" => report.to_json(),
            _ => report.to_markdown(),
        };
        emit(&text, Some(out))?;
    }
    let bad = fail > 0 || (args.strict && finding > 0);
    Ok(if bad { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn cmd_report(args: ReportArgs) -> Result<ExitCode, String> {
    let text = std::fs::read_to_string(&args.from)
        .map_err(|e| format!("{}: {e}", args.from.display()))?;
    let report = Report::from_json(&text).map_err(|e| format!("{}: {e}", args.from.display()))?;
    let rendered = match args.format.as_str() {
        "json" => report.to_json(),
        _ => report.to_markdown(),
    };
    emit(&rendered, args.out.as_ref())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_list(args: ListArgs) -> Result<ExitCode, String> {
    let catalog = load_catalog(&args.catalog)?;
    println!("families:");
    for row in &catalog.algebras {
        let cases: Vec<String> = catalog
            .cases_for(&row.name)
            .iter()
            .map(|c| c.id.clone())
            .collect();
        let cn = catalog.cn_list.iter().any(|n| n == &row.name);
        println!(
            "  {:8} params [{}] {} {}",
            row.name,
            row.params.join(", "),
            if cn { "char-nilpotent" } else { "rank >= 1" },
            if cases.is_empty() {
                "uncovered".to_string()
            } else {
                format!("cases: {}", cases.join(", "))
            }
        );
        if !row.excluded.is_empty() {
            let polys: Vec<String> = row.excluded.iter().map(|p| p.to_string()).collect();
            println!("           excluded where any of [{}] vanishes", polys.join(", "));
        }
    }
    println!("skipped:");
    for s in &catalog.skipped {
        println!("  {:8} when {}: {}", s.algebra, s.condition, s.reason);
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Report(args) => cmd_report(args),
        Command::List(args) => cmd_list(args),
    };
    match outcome {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
