//! Sub-claims recorded per line: machine-checkable statements that support
//! an argument the pipeline cannot finish on its own.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::{json, Value};

use super::Engine;
use crate::error::Result;
use crate::permgroup::PermGroup;

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Claim {
    /// D fixtures left in a branch after all rules, by name.
    Survivors { branch: String, expected: Vec<String> },
    /// Orbit lengths of a Sylow subgroup, ascending.
    SylowOrbits { fixture: String, p: u64, expected: Vec<usize> },
    NoSubgroupOfIndex { fixture: String, index: u64 },
    /// Number of L fixtures passing the pair-stabilizer refinement.
    RefinementPasses { expected: u64 },
    /// Orbits tested by the `K = 1` search for one D fixture, per action.
    SearchOrbits { fixture: String, expected: Vec<u64> },
}

/// What the claims can be checked against.
pub struct ClaimContext<'a> {
    pub engine: &'a Engine,
    pub load: &'a dyn Fn(&str) -> Result<PermGroup>,
    /// Per branch label: fixtures that survive every rule, and fixtures
    /// some rule could not decide.
    pub survivors: &'a BTreeMap<String, (Vec<String>, Vec<String>)>,
    /// Evidence per rule id.
    pub evidence: &'a BTreeMap<String, Value>,
}

fn verdict(claim: String, expected: Value, found: Value) -> Value {
    let holds = expected == found;
    json!({"claim": claim, "expected": expected, "found": found, "holds": holds})
}

fn sorted(mut v: Vec<String>) -> Vec<String> {
    v.sort();
    v
}

pub fn evaluate(claim: &Claim, ctx: &ClaimContext) -> Value {
    match claim {
        Claim::Survivors { branch, expected } => {
            // holds when the decided survivors are among the expected ones and
            // every expected one survives or is undecided
            let (survives, open) = ctx.survivors.get(branch).cloned().unwrap_or_default();
            let holds = survives.iter().all(|n| expected.contains(n))
                && expected.iter().all(|n| survives.contains(n) || open.contains(n));
            json!({
                "claim": format!("D fixtures surviving in branch {branch}"),
                "expected": sorted(expected.clone()),
                "found": {"survives": sorted(survives), "unresolved": sorted(open.clone())},
                "decided": open.is_empty(),
                "holds": holds,
            })
        }
        Claim::SylowOrbits { fixture, p, expected } => {
            let found = (ctx.load)(fixture).and_then(|g| g.sylow(*p, ctx.engine.config.max_enum_order));
            let found = match found {
                Ok(s) => {
                    let mut l = s.orbit_lengths();
                    l.sort_unstable();
                    json!(l)
                }
                Err(e) => json!(e.to_string()),
            };
            verdict(format!("Sylow {p}-subgroup orbits of {fixture}"), json!(expected), found)
        }
        Claim::NoSubgroupOfIndex { fixture, index } => {
            let found = (ctx.load)(fixture).map(|g| {
                ctx.engine
                    .lattice(fixture, &g)
                    .map(|l| json!(l.classes_of_index(*index).len()))
                    .unwrap_or_else(|| json!("order exceeds max_enum_order"))
            });
            let found = found.unwrap_or_else(|e| json!(e.to_string()));
            verdict(format!("classes of index {index} in {fixture}"), json!(0), found)
        }
        Claim::RefinementPasses { expected } => {
            let found = ctx
                .evidence
                .get("L_transitivity")
                .and_then(|e| e.get("refinement_passes"))
                .cloned()
                .unwrap_or(Value::Null);
            verdict("L fixtures passing the pair-stabilizer refinement".into(), json!(expected), found)
        }
        Claim::SearchOrbits { fixture, expected } => {
            let found: Vec<Value> = ctx
                .evidence
                .get("searches")
                .and_then(|e| e.get("fixtures"))
                .and_then(|f| f.as_array())
                .and_then(|rows| rows.iter().find(|r| r["fixture"] == json!(fixture)))
                .and_then(|r| r.get("actions"))
                .and_then(|a| a.as_array())
                .map(|acts| acts.iter().map(|a| a["orbits_tested"].clone()).collect())
                .unwrap_or_default();
            verdict(format!("orbits of length k tested for {fixture}"), json!(expected), json!(found))
        }
    }
}
