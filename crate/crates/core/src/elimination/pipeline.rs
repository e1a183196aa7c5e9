//! Ordered rule application per candidate, the combined verdict per line,
//! the line-oriented report, golden comparison and replay.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::claims::{self, ClaimContext};
use super::manifest::{load_candidates, FixtureLoader, Manifest};
use super::rules::{self, RuleResult, Verdict};
use super::{Branch, Candidate, Engine, EngineConfig, Status};
use crate::error::{Error, Result};
use crate::permgroup::PermGroup;
use crate::sieve::ParameterTuple;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RuleId {
    PrimeD,
    LTransitivity,
    Subdesign,
    DbOrbit,
    Searches,
}

impl RuleId {
    pub const DEFAULT_ORDER: [RuleId; 5] = [
        RuleId::PrimeD,
        RuleId::LTransitivity,
        RuleId::Subdesign,
        RuleId::DbOrbit,
        RuleId::Searches,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleId::PrimeD => "prime_D",
            RuleId::LTransitivity => "L_transitivity",
            RuleId::Subdesign => "subdesign",
            RuleId::DbOrbit => "DB_orbit",
            RuleId::Searches => "searches",
        }
    }

    pub fn run(self, engine: &Engine, cand: &Candidate) -> Result<RuleResult> {
        Ok(match self {
            RuleId::PrimeD => rules::rule_prime_d_auto(cand),
            RuleId::LTransitivity => rules::rule_l_transitivity(cand),
            RuleId::Subdesign => rules::rule_subdesign_auto(cand)?,
            RuleId::DbOrbit => rules::rule_db_orbit(engine, cand),
            RuleId::Searches => rules::rule_searches(engine, cand),
        })
    }
}

impl FromStr for RuleId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        RuleId::DEFAULT_ORDER
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown rule `{s}`")))
    }
}

pub const FINAL_RULE: &str = "final";

#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    pub line_id: String,
    pub rule_id: String,
    pub status: Status,
    pub evidence: Value,
}

impl fmt::Display for ReportRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} | {} | {} | {}",
            self.line_id,
            self.rule_id,
            self.status,
            serde_json::to_string(&self.evidence).expect("json value")
        )
    }
}

impl FromStr for ReportRow {
    type Err = Error;
    fn from_str(line: &str) -> Result<Self> {
        let parts: Vec<&str> = line.splitn(4, " | ").collect();
        if parts.len() != 4 {
            return Err(Error::Parse(format!("report row needs four fields: `{line}`")));
        }
        Ok(ReportRow {
            line_id: parts[0].to_string(),
            rule_id: parts[1].to_string(),
            status: parts[2].parse()?,
            evidence: serde_json::from_str(parts[3]).map_err(|e| Error::Parse(format!("evidence: {e}")))?,
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct EliminationReport {
    /// Header lines without the leading `# `.
    pub header: Vec<String>,
    pub rows: Vec<ReportRow>,
}

impl EliminationReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for h in &self.header {
            out.push_str("# ");
            out.push_str(h);
            out.push('\n');
        }
        for r in &self.rows {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut report = EliminationReport::default();
        for (no, line) in text.lines().enumerate() {
            if let Some(h) = line.strip_prefix('#') {
                report.header.push(h.trim_start().to_string());
            } else if !line.trim().is_empty() {
                report.rows.push(line.parse().map_err(|e: Error| Error::ParseLine {
                    line: no + 1,
                    msg: e.to_string(),
                })?);
            }
        }
        Ok(report)
    }

    /// Final status per line, in report order.
    pub fn final_statuses(&self) -> Vec<(String, Status)> {
        self.rows
            .iter()
            .filter(|r| r.rule_id == FINAL_RULE)
            .map(|r| (r.line_id.clone(), r.status))
            .collect()
    }

    pub fn row(&self, line_id: &str, rule_id: &str) -> Option<&ReportRow> {
        self.rows.iter().find(|r| r.line_id == line_id && r.rule_id == rule_id)
    }
}

/// Combined per-branch state across all rule results.
type Survivors = BTreeMap<String, (Vec<String>, Vec<String>)>;

fn combine(cand: &Candidate, results: &[RuleResult]) -> (Status, Value, Survivors) {
    let nd = cand.d.fixtures.len();
    let nl = cand.l.fixtures.len();
    let l_excluded: Vec<bool> = (0..nl)
        .map(|i| results.iter().any(|r| r.l_verdicts[i] == Some(Verdict::Excluded)))
        .collect();
    let l_closed = nl > 0 && cand.l.missing.is_empty() && l_excluded.iter().all(|&e| e);
    let mut branches = serde_json::Map::new();
    let mut survivors_by_branch = BTreeMap::new();
    let mut all_closed = true;
    let mut unresolved_any = false;
    let mut external: Vec<String> = Vec::new();
    let push = |v: &mut Vec<String>, s: &str| {
        if !v.iter().any(|x| x == s) {
            v.push(s.to_string());
        }
    };
    for branch in Branch::BOTH {
        let bi = branch.index();
        let excluded: Vec<bool> = (0..nd)
            .map(|i| results.iter().any(|r| r.d_verdicts[bi][i] == Some(Verdict::Excluded)))
            .collect();
        let unresolved: Vec<bool> = (0..nd)
            .map(|i| !excluded[i] && results.iter().any(|r| r.d_verdicts[bi][i] == Some(Verdict::Unresolved)))
            .collect();
        let d_closed = nd > 0 && cand.d.missing.is_empty() && excluded.iter().all(|&e| e);
        let mut closed_by = Vec::new();
        if cand.kernel.excludes() == Some(branch) {
            closed_by.push("kernel fact");
            push(&mut external, cand.kernel.note().unwrap_or_default());
        } else if d_closed {
            closed_by.push("D fixtures");
            if cand.d.external {
                push(&mut external, &cand.d.basis);
            }
        } else if l_closed {
            closed_by.push("L fixtures");
            if cand.l.external {
                push(&mut external, &cand.l.basis);
            }
        }
        let survivors: Vec<String> = cand
            .d
            .fixtures
            .iter()
            .zip(excluded.iter().zip(&unresolved))
            .filter(|(_, (e, u))| !**e && !**u)
            .map(|(f, _)| f.name.clone())
            .collect();
        let open: Vec<String> = cand
            .d
            .fixtures
            .iter()
            .zip(&unresolved)
            .filter(|(_, u)| **u)
            .map(|(f, _)| f.name.clone())
            .collect();
        if closed_by.is_empty() {
            all_closed = false;
            unresolved_any |= !open.is_empty();
        }
        branches.insert(
            branch.label().into(),
            json!({"closed_by": closed_by, "survivors": survivors, "unresolved": open}),
        );
        survivors_by_branch.insert(branch.label().to_string(), (survivors, open));
    }
    let status = if all_closed {
        Status::Eliminated
    } else if !cand.prose.is_empty() || unresolved_any || nd == 0 || !cand.d.missing.is_empty() {
        Status::External
    } else {
        Status::Inconclusive
    };
    if status != Status::Eliminated {
        external = cand.prose.clone();
        if nd == 0 {
            external.push("no D fixtures: the possible groups are not supplied".into());
        }
    }
    let mut ev = json!({
        "tuple": cand.tuple.to_csv(),
        "branches": branches,
        "external": external,
    });
    if !cand.d.missing.is_empty() || !cand.l.missing.is_empty() {
        ev["missing_fixtures"] = json!([cand.d.missing.clone(), cand.l.missing.clone()].concat());
    }
    if !cand.depends_on.is_empty() {
        ev["depends_on"] = json!(cand.depends_on);
    }
    (status, ev, survivors_by_branch)
}

/// Runs the rules in `order` on one candidate and appends the final row.
pub fn evaluate(
    engine: &Engine,
    cand: &Candidate,
    order: &[RuleId],
    load: &(dyn Fn(&str) -> Result<PermGroup> + Sync),
) -> Result<Vec<ReportRow>> {
    let mut results = Vec::new();
    let mut rows = Vec::new();
    for rule in order {
        let r = rule.run(engine, cand)?;
        rows.push(ReportRow {
            line_id: cand.id.clone(),
            rule_id: r.outcome.rule_id.clone(),
            status: r.outcome.status,
            evidence: r.outcome.evidence.clone(),
        });
        results.push(r);
    }
    let (status, mut ev, survivors) = combine(cand, &results);
    if !cand.claims.is_empty() {
        let evidence: BTreeMap<String, Value> = rows
            .iter()
            .map(|r| (r.rule_id.clone(), r.evidence.clone()))
            .collect();
        let ctx = ClaimContext {
            engine,
            load,
            survivors: &survivors,
            evidence: &evidence,
        };
        ev["claims"] = json!(cand.claims.iter().map(|c| claims::evaluate(c, &ctx)).collect::<Vec<_>>());
    }
    rows.push(ReportRow {
        line_id: cand.id.clone(),
        rule_id: FINAL_RULE.to_string(),
        status,
        evidence: ev,
    });
    Ok(rows)
}

fn header(config: &EngineConfig, order: &[RuleId]) -> Vec<String> {
    vec![
        "ftpi elimination report".to_string(),
        format!("config: {config}"),
        format!(
            "rules: {}",
            order.iter().map(|r| r.as_str()).collect::<Vec<_>>().join(",")
        ),
        "columns: line_id | rule_id | status | evidence-json".to_string(),
    ]
}

/// Evaluates candidates in parallel; rows keep candidate order.
pub fn run_candidates(
    engine: &Engine,
    candidates: &[Candidate],
    order: &[RuleId],
    load: &(dyn Fn(&str) -> Result<PermGroup> + Sync),
) -> Result<EliminationReport> {
    let per_line = candidates
        .par_iter()
        .map(|c| evaluate(engine, c, order, load))
        .collect::<Result<Vec<_>>>()?;
    Ok(EliminationReport {
        header: header(&engine.config, order),
        rows: per_line.into_iter().flatten().collect(),
    })
}

/// Loads `manifest.toml` from `fixture_dir` and runs the default rule order.
pub fn run_pipeline(tuples: &[ParameterTuple], fixture_dir: &Path, config: EngineConfig) -> Result<EliminationReport> {
    run_pipeline_ordered(tuples, fixture_dir, config, &RuleId::DEFAULT_ORDER)
}

pub fn run_pipeline_ordered(
    tuples: &[ParameterTuple],
    fixture_dir: &Path,
    config: EngineConfig,
    order: &[RuleId],
) -> Result<EliminationReport> {
    let (engine, candidates, group_loader) = prepare(tuples, fixture_dir, config)?;
    run_candidates(&engine, &candidates, order, &group_loader)
}

type GroupLoader = Box<dyn Fn(&str) -> Result<PermGroup> + Sync>;

fn prepare(
    tuples: &[ParameterTuple],
    fixture_dir: &Path,
    config: EngineConfig,
) -> Result<(Engine, Vec<Candidate>, GroupLoader)> {
    let manifest_path = fixture_dir.join("manifest.toml");
    let manifest = if manifest_path.exists() {
        Manifest::load(&manifest_path)?
    } else {
        Manifest { line: Vec::new() }
    };
    let mut loader = FixtureLoader::new(fixture_dir, config.max_action_degree);
    let candidates = load_candidates(&manifest, tuples, &mut loader)?;
    let dir = fixture_dir.to_path_buf();
    let max_degree = config.max_action_degree;
    let group_loader: GroupLoader = Box::new(move |rel: &str| crate::io::load_group(&dir.join(rel), max_degree));
    Ok((Engine::new(config), candidates, group_loader))
}

/// Differences in statuses and claim verdicts between a report and a golden
/// report. Evidence text is not compared.
pub fn compare_golden(actual: &EliminationReport, golden: &EliminationReport) -> Vec<String> {
    let mut diffs = Vec::new();
    let key = |r: &ReportRow| (r.line_id.clone(), r.rule_id.clone());
    let expected: BTreeMap<_, _> = golden.rows.iter().map(|r| (key(r), r)).collect();
    let found: BTreeMap<_, _> = actual.rows.iter().map(|r| (key(r), r)).collect();
    for (k, g) in &expected {
        match found.get(k) {
            None => diffs.push(format!("{} | {}: missing row", k.0, k.1)),
            Some(a) if a.status != g.status => {
                diffs.push(format!("{} | {}: expected {}, found {}", k.0, k.1, g.status, a.status))
            }
            Some(a) => {
                let holds = |r: &ReportRow| -> Vec<Value> {
                    r.evidence["claims"]
                        .as_array()
                        .map(|c| c.iter().map(|x| x["holds"].clone()).collect())
                        .unwrap_or_default()
                };
                if holds(a) != holds(g) {
                    diffs.push(format!("{} | {}: claim verdicts differ", k.0, k.1));
                }
            }
        }
    }
    for k in found.keys() {
        if !expected.contains_key(k) {
            diffs.push(format!("{} | {}: row not in golden", k.0, k.1));
        }
    }
    diffs
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplayCheck {
    pub line_id: String,
    pub rule_id: String,
    pub ok: bool,
    pub note: String,
}

/// Re-derives every ELIMINATED row of `report` from its tuple and the named
/// fixtures, and checks status and evidence agree.
pub fn replay(report: &EliminationReport, fixture_dir: &Path, config: EngineConfig) -> Result<Vec<ReplayCheck>> {
    let mut tuples: Vec<(String, ParameterTuple)> = Vec::new();
    for r in report.rows.iter().filter(|r| r.rule_id == FINAL_RULE) {
        let csv = r.evidence["tuple"]
            .as_str()
            .ok_or_else(|| Error::Parse(format!("{}: final row lacks the tuple", r.line_id)))?;
        tuples.push((r.line_id.clone(), ParameterTuple::from_csv(csv)?));
    }
    let just: Vec<ParameterTuple> = tuples.iter().map(|(_, t)| *t).collect();
    let (engine, candidates, group_loader) = prepare(&just, fixture_dir, config)?;
    let mut checks = Vec::new();
    for ((line_id, _), cand) in tuples.iter().zip(&candidates) {
        let rows: Vec<&ReportRow> = report
            .rows
            .iter()
            .filter(|r| &r.line_id == line_id && r.status == Status::Eliminated)
            .collect();
        if rows.is_empty() {
            continue;
        }
        let order: Vec<RuleId> = report
            .rows
            .iter()
            .filter(|r| &r.line_id == line_id && r.rule_id != FINAL_RULE)
            .map(|r| r.rule_id.parse())
            .collect::<Result<_>>()?;
        let fresh = evaluate(&engine, cand, &order, &group_loader)?;
        for row in rows {
            let again = fresh.iter().find(|r| r.rule_id == row.rule_id);
            let (ok, note) = match again {
                None => (false, "rule not re-run".to_string()),
                Some(a) if a.status != row.status => (false, format!("status now {}", a.status)),
                Some(a) if a.evidence != row.evidence => (false, "evidence differs".to_string()),
                Some(_) => (true, "verified".to_string()),
            };
            checks.push(ReplayCheck {
                line_id: line_id.clone(),
                rule_id: row.rule_id.clone(),
                ok,
                note,
            });
        }
    }
    Ok(checks)
}
