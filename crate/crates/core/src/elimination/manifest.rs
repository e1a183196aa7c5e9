//! The fixture manifest: for each known tuple, the fixture lists for `D`
//! and `L`, the facts that make them exhaustive, kernel facts, steps that
//! remain prose, and sub-claims.
//!
//! ```toml
//! [[line]]
//! id = "L6"
//! tuple = [3, 1156, 36, 99, 3179, 34, 34, 2]
//! [line.d]
//! basis = "..."
//! external = false
//! fixtures = ["groups/deg34/a34.grp", "groups/deg34/s34.grp"]
//! ```

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Deserialize;

use super::claims::Claim;
use super::{Candidate, Fixture, FixtureSet, KernelInfo};
use crate::error::{Error, Result};
use crate::io::{load_group, metadata, read_to_string};
use crate::permgroup::PermGroup;
use crate::sieve::ParameterTuple;

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetEntry {
    pub basis: String,
    #[serde(default)]
    pub external: bool,
    #[serde(default)]
    pub fixtures: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum KernelEntry {
    Trivial { note: String },
    Nontrivial { c0: u64, note: String },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineEntry {
    pub id: String,
    pub tuple: [u64; 8],
    #[serde(default)]
    pub d: Option<SetEntry>,
    #[serde(default)]
    pub l: Option<SetEntry>,
    #[serde(default)]
    pub kernel: Option<KernelEntry>,
    #[serde(default)]
    pub prose: Vec<String>,
    #[serde(default)]
    pub depends_on: Vec<String>,
    #[serde(default)]
    pub claims: Vec<Claim>,
}

impl LineEntry {
    pub fn parameter_tuple(&self) -> ParameterTuple {
        let [lambda, v, k, r, b, c, d, ell] = self.tuple;
        ParameterTuple::new(lambda, v, k, r, b, c, d, ell)
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    #[serde(default)]
    pub line: Vec<LineEntry>,
}

impl Manifest {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(format!("manifest: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&read_to_string(path)?)
    }

    pub fn find(&self, t: &ParameterTuple) -> Option<&LineEntry> {
        self.line.iter().find(|l| l.parameter_tuple() == *t)
    }
}

/// Loads fixture files relative to a directory, each file once.
pub struct FixtureLoader {
    dir: PathBuf,
    max_degree: u64,
    cache: HashMap<String, Option<Fixture>>,
}

impl FixtureLoader {
    pub fn new(dir: &Path, max_degree: u64) -> Self {
        FixtureLoader {
            dir: dir.to_path_buf(),
            max_degree,
            cache: HashMap::new(),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// `Ok(None)` for a missing file; parse failures are errors.
    pub fn get(&mut self, rel: &str) -> Result<Option<Fixture>> {
        if let Some(f) = self.cache.get(rel) {
            return Ok(f.clone());
        }
        let path = self.dir.join(rel);
        let fixture = if path.exists() {
            let group = load_group(&path, self.max_degree)?;
            let text = read_to_string(&path)?;
            let name = metadata(&text)
                .into_iter()
                .find(|(k, _)| k == "name")
                .map(|(_, v)| v)
                .unwrap_or_else(|| rel.to_string());
            Some(Fixture {
                name,
                path: rel.to_string(),
                group: Arc::new(group),
            })
        } else {
            None
        };
        self.cache.insert(rel.to_string(), fixture.clone());
        Ok(fixture)
    }

    pub fn group(&mut self, rel: &str) -> Result<PermGroup> {
        self.get(rel)?
            .map(|f| (*f.group).clone())
            .ok_or_else(|| Error::Fixture(format!("{}: no such fixture", self.dir.join(rel).display())))
    }
}

fn load_set(entry: &Option<SetEntry>, loader: &mut FixtureLoader) -> Result<FixtureSet> {
    let Some(e) = entry else {
        return Ok(FixtureSet::default());
    };
    let mut set = FixtureSet {
        fixtures: Vec::new(),
        basis: e.basis.clone(),
        external: e.external,
        missing: Vec::new(),
    };
    for rel in &e.fixtures {
        match loader.get(rel)? {
            Some(f) => set.fixtures.push(f),
            None => set.missing.push(rel.clone()),
        }
    }
    Ok(set)
}

/// Identifier for a tuple that has no manifest entry.
pub fn default_id(t: &ParameterTuple) -> String {
    format!("lambda{}_v{}_c{}_d{}", t.lambda, t.v, t.c, t.d)
}

/// One candidate per tuple; tuples absent from the manifest get no fixtures.
pub fn load_candidates(
    manifest: &Manifest,
    tuples: &[ParameterTuple],
    loader: &mut FixtureLoader,
) -> Result<Vec<Candidate>> {
    tuples
        .iter()
        .map(|t| {
            let Some(entry) = manifest.find(t) else {
                let bare = Candidate::bare(&default_id(t), *t);
                bare.validate()?;
                return Ok(bare);
            };
            let cand = Candidate {
                id: entry.id.clone(),
                tuple: *t,
                d: load_set(&entry.d, loader)?,
                l: load_set(&entry.l, loader)?,
                kernel: match &entry.kernel {
                    None => KernelInfo::Unknown,
                    Some(KernelEntry::Trivial { note }) => KernelInfo::Trivial { note: note.clone() },
                    Some(KernelEntry::Nontrivial { c0, note }) => KernelInfo::Nontrivial {
                        c0: *c0,
                        note: note.clone(),
                    },
                },
                prose: entry.prose.clone(),
                depends_on: entry.depends_on.clone(),
                claims: entry.claims.clone(),
            };
            cand.validate()?;
            Ok(cand)
        })
        .collect()
}
