use std::path::PathBuf;

use anyhow::Context;
use clap::Args;
use ftpi_core::elimination::{compare_golden, replay as replay_report, run_pipeline_ordered, EliminationReport, RuleId};
use ftpi_core::sieve::parse_csv;

use crate::output::{emit, read};
use crate::{ConfigArgs, Outcome};

#[derive(Args, Debug)]
pub struct EliminateArgs {
    /// Tuple CSV, as written by `sieve`.
    tuples: PathBuf,
    /// Directory holding `manifest.toml` and the fixture files.
    #[arg(long, default_value = "fixtures")]
    fixtures: PathBuf,
    /// Rule order, comma-separated.
    #[arg(long, value_delimiter = ',', default_value = "prime_D,L_transitivity,subdesign,DB_orbit,searches")]
    rules: Vec<RuleId>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Compare statuses and claim verdicts with a golden report.
    #[arg(long)]
    golden: Option<PathBuf>,
    /// Exit 1 when a listed fixture file is missing.
    #[arg(long)]
    strict: bool,
}

#[derive(Args, Debug)]
pub struct ReplayArgs {
    report: PathBuf,
    #[arg(long, default_value = "fixtures")]
    fixtures: PathBuf,
}

pub fn run(a: &EliminateArgs, cfg: &ConfigArgs) -> anyhow::Result<Outcome> {
    let tuples = parse_csv(&read(&a.tuples)?).with_context(|| format!("parsing {}", a.tuples.display()))?;
    let report = run_pipeline_ordered(&tuples, &a.fixtures, cfg.engine(), &a.rules)?;
    emit(&report.to_text(), a.out.as_ref())?;
    let mut outcome = Outcome::Ok;
    if a.strict {
        let missing: Vec<&str> = report
            .rows
            .iter()
            .filter(|r| r.evidence.get("missing_fixtures").is_some())
            .map(|r| r.line_id.as_str())
            .collect();
        if !missing.is_empty() {
            eprintln!("strict: missing fixtures for {}", missing.join(", "));
            outcome = Outcome::Mismatch;
        }
    }
    if let Some(g) = &a.golden {
        let golden = EliminationReport::parse(&read(g)?).with_context(|| format!("parsing {}", g.display()))?;
        let diffs = compare_golden(&report, &golden);
        if diffs.is_empty() {
            eprintln!("golden: match ({} rows)", report.rows.len());
        } else {
            for d in &diffs {
                eprintln!("golden: {d}");
            }
            outcome = Outcome::Mismatch;
        }
    }
    Ok(outcome)
}

pub fn replay(a: &ReplayArgs, cfg: &ConfigArgs) -> anyhow::Result<Outcome> {
    let report = EliminationReport::parse(&read(&a.report)?).with_context(|| format!("parsing {}", a.report.display()))?;
    let checks = replay_report(&report, &a.fixtures, cfg.engine())?;
    let mut text = format!("{}\n", cfg.header());
    let mut ok = true;
    for c in &checks {
        ok &= c.ok;
        text.push_str(&format!(
            "{} | {} | {} | {}\n",
            c.line_id,
            c.rule_id,
            if c.ok { "ok" } else { "MISMATCH" },
            c.note
        ));
    }
    text.push_str(&format!("replayed {} rows\n", checks.len()));
    emit(&text, None)?;
    Ok(if ok { Outcome::Ok } else { Outcome::Mismatch })
}
