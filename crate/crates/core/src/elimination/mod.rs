//! Elimination rules over candidates, and the pipeline that runs them over
//! a list of parameter tuples.
//!
//! A candidate is a tuple together with fixture groups for `D` (the group
//! induced on the classes, degree `d`) and `L` (the class stabilizer on one
//! class, degree `c`). The kernel `K` of the action on classes is never
//! built; each rule treats the branches `K = 1` and `K != 1` separately and
//! the report states which facts come from outside the computation.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::permgroup::{LatticeOptions, PermGroup, SubgroupLattice, DEFAULT_MAX_ENUM_ORDER};
use crate::sieve::ParameterTuple;

pub mod claims;
pub mod manifest;
pub mod pipeline;
pub mod rules;
pub mod search;

pub use manifest::{load_candidates, FixtureLoader, Manifest};
pub use pipeline::{
    compare_golden, replay, run_candidates, run_pipeline, run_pipeline_ordered, EliminationReport, ReplayCheck, ReportRow,
    RuleId,
};
pub use rules::{
    rule_db_orbit, rule_l_transitivity, rule_prime_d, rule_prime_d_auto, rule_subdesign, rule_subdesign_auto,
    rule_searches, RuleResult,
};
pub use search::{search_flag_designs, FlagSearch};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "ELIMINATED")]
    Eliminated,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
    #[serde(rename = "EXTERNAL")]
    External,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Eliminated => "ELIMINATED",
            Status::Inconclusive => "INCONCLUSIVE",
            Status::External => "EXTERNAL",
        })
    }
}

impl std::str::FromStr for Status {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ELIMINATED" => Ok(Status::Eliminated),
            "INCONCLUSIVE" => Ok(Status::Inconclusive),
            "EXTERNAL" => Ok(Status::External),
            _ => Err(Error::Parse(format!("unknown status `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RuleOutcome {
    pub rule_id: String,
    pub status: Status,
    pub evidence: Value,
}

/// The two cases for the kernel of the action on classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Branch {
    Trivial,
    Nontrivial,
}

impl Branch {
    pub const BOTH: [Branch; 2] = [Branch::Trivial, Branch::Nontrivial];

    pub fn label(self) -> &'static str {
        match self {
            Branch::Trivial => "K=1",
            Branch::Nontrivial => "K!=1",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KernelInfo {
    Unknown,
    /// `K = 1` is established outside the computation.
    Trivial { note: String },
    /// `K != 1` with orbit length `c0` on points.
    Nontrivial { c0: u64, note: String },
}

impl KernelInfo {
    /// The branch this fact rules out, if any.
    pub fn excludes(&self) -> Option<Branch> {
        match self {
            KernelInfo::Unknown => None,
            KernelInfo::Trivial { .. } => Some(Branch::Nontrivial),
            KernelInfo::Nontrivial { .. } => Some(Branch::Trivial),
        }
    }

    pub fn note(&self) -> Option<&str> {
        match self {
            KernelInfo::Unknown => None,
            KernelInfo::Trivial { note } | KernelInfo::Nontrivial { note, .. } => Some(note),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    /// Path relative to the fixture directory; also the cache key.
    pub path: String,
    pub group: Arc<PermGroup>,
}

impl Fixture {
    pub fn new(name: &str, path: &str, group: PermGroup) -> Self {
        Fixture {
            name: name.to_string(),
            path: path.to_string(),
            group: Arc::new(group),
        }
    }
}

/// A fixture list and the fact that makes it exhaustive.
#[derive(Clone, Debug, Default)]
pub struct FixtureSet {
    pub fixtures: Vec<Fixture>,
    /// Why the list covers every possibility. `external` marks facts, such
    /// as a census of primitive groups, that the computation takes on trust.
    pub basis: String,
    pub external: bool,
    /// Listed fixture files that could not be found; a set with missing
    /// members never closes a branch.
    pub missing: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct Candidate {
    pub id: String,
    pub tuple: ParameterTuple,
    pub d: FixtureSet,
    pub l: FixtureSet,
    pub kernel: KernelInfo,
    /// Steps of the argument for this tuple that are not machine-checked.
    pub prose: Vec<String>,
    pub depends_on: Vec<String>,
    pub claims: Vec<claims::Claim>,
}

impl Candidate {
    /// A candidate with no fixtures.
    pub fn bare(id: &str, tuple: ParameterTuple) -> Self {
        Candidate {
            id: id.to_string(),
            tuple,
            d: FixtureSet::default(),
            l: FixtureSet::default(),
            kernel: KernelInfo::Unknown,
            prose: Vec::new(),
            depends_on: Vec::new(),
            claims: Vec::new(),
        }
    }

    /// Checks degrees, transitivity and integrality of the block count.
    pub fn validate(&self) -> Result<()> {
        let t = &self.tuple;
        let b = t
            .b_int()
            .ok_or_else(|| Error::Hypothesis(format!("{}: b is not an integer", self.id)))?;
        if t.ell == 0 || t.k % t.ell != 0 {
            return Err(Error::Hypothesis(format!("{}: ell does not divide k", self.id)));
        }
        for (set, deg, what) in [(&self.d, t.d, "D"), (&self.l, t.c, "L")] {
            for f in &set.fixtures {
                if f.group.degree() as u64 != deg {
                    return Err(Error::DegreeMismatch {
                        expected: deg as usize,
                        found: f.group.degree(),
                    });
                }
                if !f.group.is_transitive() {
                    return Err(Error::Hypothesis(format!(
                        "{}: {what} fixture {} is intransitive",
                        self.id, f.path
                    )));
                }
            }
        }
        if let KernelInfo::Nontrivial { c0, .. } = self.kernel {
            let x = kernel_x(c0, t.ell);
            if c0 == 0 || t.c % c0 != 0 || b % x != 0 {
                return Err(Error::Hypothesis(format!(
                    "{}: kernel orbit length {c0} is inconsistent with c or b",
                    self.id
                )));
            }
        }
        Ok(())
    }

    pub fn s(&self) -> u64 {
        self.tuple.k / self.tuple.ell
    }

    pub fn b(&self) -> u64 {
        self.tuple.b_int().expect("validated candidate")
    }
}

/// `c0 / gcd(c0, ell)`.
pub fn kernel_x(c0: u64, ell: u64) -> u64 {
    c0 / num_integer::gcd(c0, ell)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EngineConfig {
    pub max_enum_order: u64,
    pub max_action_degree: u64,
    /// Largest number of `s`-subsets scanned for subset-orbit arguments.
    pub max_subsets: u64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            max_enum_order: DEFAULT_MAX_ENUM_ORDER,
            max_action_degree: 100_000,
            max_subsets: 1_000_000,
        }
    }
}

impl fmt::Display for EngineConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "max_enum_order={} max_action_degree={} max_subsets={}",
            self.max_enum_order, self.max_action_degree, self.max_subsets
        )
    }
}

/// Shared engine state: configuration and subgroup lattices by key.
pub struct Engine {
    pub config: EngineConfig,
    lattices: Mutex<HashMap<String, Arc<OnceLock<Arc<SubgroupLattice>>>>>,
}

impl Engine {
    pub fn new(config: EngineConfig) -> Self {
        Engine {
            config,
            lattices: Mutex::new(HashMap::new()),
        }
    }

    pub fn in_bound(&self, g: &PermGroup) -> bool {
        g.order_u64().is_some_and(|o| o <= self.config.max_enum_order)
    }

    /// Lattice of `g`, computed once per key. `None` when `|g|` exceeds the
    /// enumeration bound.
    pub fn lattice(&self, key: &str, g: &PermGroup) -> Option<Arc<SubgroupLattice>> {
        if !self.in_bound(g) {
            return None;
        }
        let cell = {
            let mut map = self.lattices.lock().unwrap();
            map.entry(key.to_string()).or_default().clone()
        };
        let opts = LatticeOptions {
            max_enum_order: self.config.max_enum_order,
        };
        Some(
            cell.get_or_init(|| Arc::new(SubgroupLattice::compute(g, &opts).expect("order checked against bound")))
                .clone(),
        )
    }
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new(EngineConfig::default())
    }
}
