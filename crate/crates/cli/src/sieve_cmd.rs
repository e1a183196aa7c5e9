use std::collections::BTreeSet;
use std::path::PathBuf;

use clap::Args;
use ftpi_core::sieve::{candidate_tuples, enumerate_tuples, failed_rules, parse_csv, to_csv};

use crate::output::{emit, parse_range, read};
use crate::{ConfigArgs, Outcome};

#[derive(Args, Debug)]
pub struct SieveArgs {
    /// Range of lambda, `a:b` inclusive.
    #[arg(long, value_parser = parse_range)]
    lambda: (u64, u64),
    /// Range of v, `a:b` inclusive.
    #[arg(long, value_parser = parse_range)]
    v: (u64, u64),
    /// Compare with a golden CSV; exit 1 on any difference.
    #[arg(long)]
    golden: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// List every candidate of the parametrization with its failed rules
    /// instead of the CSV.
    #[arg(long)]
    verdicts: bool,
}

pub fn run(a: &SieveArgs, cfg: &ConfigArgs) -> anyhow::Result<Outcome> {
    let ((l0, l1), (v0, v1)) = (a.lambda, a.v);
    eprintln!("{}", cfg.header());
    if a.verdicts {
        let mut text = String::new();
        for t in candidate_tuples(l0, l1, v0, v1)? {
            let failed = failed_rules(&t);
            let verdict = if failed.is_empty() { "pass".to_string() } else { format!("fail {}", failed.join(",")) };
            text.push_str(&format!("{} | {verdict}\n", t.to_csv()));
        }
        emit(&text, a.out.as_ref())?;
        return Ok(Outcome::Ok);
    }
    let tuples = enumerate_tuples(l0, l1, v0, v1)?;
    let csv = to_csv(&tuples);
    emit(&csv, a.out.as_ref())?;
    let Some(golden) = &a.golden else {
        return Ok(Outcome::Ok);
    };
    let expected = read(golden)?;
    if expected == csv {
        eprintln!("golden: match ({} rows)", tuples.len());
        return Ok(Outcome::Ok);
    }
    let want: BTreeSet<String> = parse_csv(&expected)?.iter().map(|t| t.to_csv()).collect();
    let got: BTreeSet<String> = tuples.iter().map(|t| t.to_csv()).collect();
    eprintln!("golden: mismatch ({} rows, expected {})", got.len(), want.len());
    for extra in got.difference(&want) {
        eprintln!("extra: {extra}");
    }
    for missing in want.difference(&got) {
        eprintln!("missing: {missing}");
    }
    if got == want {
        eprintln!("rows agree; formatting or order differs");
    }
    Ok(Outcome::Mismatch)
}
