use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use cli_harness::checks::{manifest, run_checks};
use cli_harness::dynamics::{run_case, DynamicsCase};
use cli_harness::report::{analyze, check_entry, Report};
use cli_harness::specfile::parse_spec;
use cli_harness::tables::{builtin_golden, parse_golden, render_tables, reproduce_tables};
use cli_harness::{catalog, HarnessError};
use lie_core::{parse_scalar, Scalar};
use serde_json::json;

#[derive(Parser)]
#[command(name = "plhs", about = "Exact verdicts for Poisson homogeneous spaces and their volume forms")]
struct Cli {
    /// Deformation parameter, an integer or `p/q`.
    #[arg(long, global = true, default_value = "1")]
    eta: String,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 2024)]
    seed: u64,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a catalog entry or a spec file.
    Analyze {
        /// Catalog name or path to a spec file.
        target: String,
    },
    /// Recompute both quotient tables and compare with golden data.
    Tables {
        /// JSON golden file to compare against instead of the built-in data.
        #[arg(long)]
        golden: Option<PathBuf>,
        /// Print the built-in golden data as JSON and exit.
        #[arg(long)]
        emit_golden: bool,
    },
    /// Integrate a catalog flow and report the divergence verdict.
    Dynamics {
        case: String,
        #[arg(long = "t", default_value_t = 10.0)]
        horizon: f64,
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
        /// CSV output path; the trace is not written without it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every check and print the manifest.
    VerifyAll,
    /// Catalog contents.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
}

enum Outcome {
    Ok,
    Failed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = e.downcast_ref::<HarnessError>().map(HarnessError::exit_code).unwrap_or(2);
            ExitCode::from(code as u8)
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let eta = parse_scalar(&cli.eta).map_err(|e| anyhow::anyhow!("--eta: {e}"))?;
    let mut out = std::io::stdout().lock();
    match &cli.command {
        Command::Analyze { target } => cmd_analyze(cli, &eta, target, &mut out),
        Command::Tables { golden, emit_golden } => {
            if *emit_golden {
                writeln!(out, "{}", serde_json::to_string_pretty(&builtin_golden(&eta))?)?;
                return Ok(Outcome::Ok);
            }
            let records = match golden {
                Some(p) => {
                    let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                    Some(parse_golden(&text)?)
                }
                None => None,
            };
            let t = reproduce_tables(&eta, records.as_deref())?;
            if cli.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&json!({"cells": t.cells, "diffs": t.diffs, "ok": t.ok()}))?)?;
            } else {
                write!(out, "{}", render_tables(&t))?;
            }
            Ok(if t.ok() { Outcome::Ok } else { Outcome::Failed })
        }
        Command::Dynamics { case, horizon, dt, out: path } => {
            let case: DynamicsCase = case.parse()?;
            let r = run_case(case, *horizon, *dt)?;
            if let Some(p) = path {
                let f = std::fs::File::create(p).with_context(|| format!("creating {}", p.display()))?;
                r.trace.write_csv(std::io::BufWriter::new(f))?;
            }
            if cli.json {
                let v = json!({
                    "case": case.as_str(),
                    "verdict": r.verdict,
                    "passed": r.passed,
                    "final_divint": r.trace.final_divint(),
                    "max_abs_divint": r.trace.max_abs_divint(),
                    "max_constraint_drift": r.trace.max_drift(),
                    "summary": r.summary,
                });
                writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
            } else {
                writeln!(out, "{case}")?;
                for l in &r.summary {
                    writeln!(out, "  {l}")?;
                }
            }
            Ok(if r.passed { Outcome::Ok } else { Outcome::Failed })
        }
        Command::VerifyAll => {
            let checks = manifest(&eta, cli.seed);
            let results = run_checks(&checks);
            let failed = results.iter().filter(|r| !r.passed).count();
            if cli.json {
                let list: Vec<_> = results
                    .iter()
                    .map(|r| json!({"name": r.name, "anchor": r.anchor, "passed": r.passed, "detail": r.detail}))
                    .collect();
                writeln!(out, "{}", serde_json::to_string_pretty(&json!({"checks": list, "failed": failed}))?)?;
            } else {
                for r in &results {
                    writeln!(out, "{} {}  [{}]", if r.passed { "PASS" } else { "FAIL" }, r.name, r.anchor)?;
                    if let Some(d) = &r.detail {
                        writeln!(out, "     {d}")?;
                    }
                }
                writeln!(out, "{} checks, {} failed", results.len(), failed)?;
            }
            Ok(if failed == 0 { Outcome::Ok } else { Outcome::Failed })
        }
        Command::Catalog { action: CatalogAction::List } => {
            let entries = catalog::all_entries(&eta);
            if cli.json {
                let list: Vec<_> = entries.iter().map(|e| json!({"name": e.name, "anchors": e.anchors})).collect();
                let cases: Vec<_> = DynamicsCase::ALL.iter().map(|c| c.as_str()).collect();
                writeln!(out, "{}", serde_json::to_string_pretty(&json!({"entries": list, "dynamics": cases}))?)?;
            } else {
                writeln!(out, "homogeneous spaces")?;
                for e in &entries {
                    writeln!(out, "  {:<28}{}", e.name, e.anchors.join("; "))?;
                }
                writeln!(out, "dynamics cases")?;
                for c in DynamicsCase::ALL {
                    writeln!(out, "  {c}")?;
                }
            }
            Ok(Outcome::Ok)
        }
    }
}

fn cmd_analyze(cli: &Cli, eta: &Scalar, target: &str, out: &mut impl Write) -> anyhow::Result<Outcome> {
    let mut notes = Vec::new();
    let mut passed = true;
    let report: Option<Report> = if let Some(entry) = catalog::find(target, eta) {
        let (report, diff) = check_entry(&entry)?;
        passed &= diff.is_empty();
        notes.extend(diff.into_iter().map(|d| format!("golden mismatch: {d}")));
        Some(report)
    } else {
        if !std::path::Path::new(target).exists() {
            return Err(HarnessError::UnknownEntry(target.into()).into());
        }
        let text = std::fs::read_to_string(target).with_context(|| format!("reading {target}"))?;
        let doc = parse_spec(&text, eta).map_err(|e| anyhow::Error::new(HarnessError::from(e)).context(target.to_string()))?;
        if doc.coordinate_model.is_some() {
            let (model, fields) = doc.coordinate_model().map_err(HarnessError::from)?;
            let j = model.jacobi_symbolic(100, cli.seed);
            passed &= j.is_ok();
            notes.push(format!("coordinate model: Jacobi {} ({:?})", if j.is_ok() { "holds" } else { "FAILS" }, j.method));
            if let (Some(_), Some(base)) = (model.group_mult(), model.base_point()) {
                let zero = model.bracket_at(base).iter().flatten().all(num_traits::Zero::is_zero);
                notes.push(format!("coordinate model: bracket at the base point is {}", if zero { "zero" } else { "nonzero" }));
            }
            for (name, f) in &fields {
                let div = model.divergence(f, &coord_poisson::Polynomial::zero(model.dim())).map_err(HarnessError::from)?;
                notes.push(format!("field {name}: divergence {}", div.render(model.vars())));
            }
        }
        if doc.subalgebra.is_some() {
            let spec = doc.homogeneous_space().map_err(HarnessError::from)?;
            Some(analyze(&spec, Vec::new())?)
        } else {
            None
        }
    };
    if cli.json {
        let text = match &report {
            Some(r) => serde_json::to_string_pretty(r)?,
            None => serde_json::to_string_pretty(&json!({ "notes": notes }))?,
        };
        writeln!(out, "{text}")?;
    } else {
        if let Some(r) = &report {
            write!(out, "{}", r.render_text())?;
        }
        for n in &notes {
            writeln!(out, "  {n}")?;
        }
    }
    if !cli.json && report.is_none() && notes.is_empty() {
        writeln!(out, "nothing to analyze: no [subalgebra] or [coordinate_model] section")?;
    }
    Ok(if passed { Outcome::Ok } else { Outcome::Failed })
}
