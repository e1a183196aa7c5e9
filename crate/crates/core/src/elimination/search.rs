//! Exhaustive search for block-transitive 2-designs with a prescribed
//! block stabilizer index: every orbit of length `k` of every subgroup of
//! index `b` is tested as a base block.

use serde::Serialize;

use crate::design::{orbit_design_check, Design, OrbitCheck};
use crate::error::{Error, Result};
use crate::permgroup::{LatticeOptions, PermGroup, SubgroupLattice};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitTest {
    pub class: usize,
    pub block: Vec<u32>,
    /// `None` when the orbit gives a design, else the offending pair count.
    pub failure: Option<PairFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairFailure {
    pub alpha: u32,
    pub beta: u32,
    pub count: usize,
    pub expected: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FlagSearch {
    pub degree: usize,
    /// Number of conjugacy classes of subgroups of the requested index.
    pub classes: usize,
    pub orbits_tested: Vec<OrbitTest>,
    #[serde(skip)]
    pub designs: Vec<Design>,
}

impl FlagSearch {
    pub fn found(&self) -> bool {
        !self.designs.is_empty()
    }
}

/// Tests the length-`k` orbits of the given subgroups of `g` (already in
/// the action of `g`).
pub fn search_subgroups<'a>(
    g: &PermGroup,
    subgroups: impl IntoIterator<Item = &'a PermGroup>,
    k: usize,
    lambda: usize,
    max_blocks: u64,
) -> Result<FlagSearch> {
    if !g.is_transitive() {
        return Err(Error::Intransitive);
    }
    let mut out = FlagSearch {
        degree: g.degree(),
        ..FlagSearch::default()
    };
    for (class, h) in subgroups.into_iter().enumerate() {
        out.classes += 1;
        for orbit in h.orbits().into_iter().filter(|o| o.len() == k) {
            let mut block = orbit;
            block.sort_unstable();
            let failure = match orbit_design_check(g, &block, lambda, max_blocks)? {
                OrbitCheck::Design(d) => {
                    if !out.designs.contains(&d) {
                        out.designs.push(d);
                    }
                    None
                }
                OrbitCheck::NotADesign {
                    alpha,
                    beta,
                    count,
                    expected,
                    ..
                } => Some(PairFailure {
                    alpha,
                    beta,
                    count,
                    expected,
                }),
            };
            out.orbits_tested.push(OrbitTest { class, block, failure });
        }
    }
    Ok(out)
}

/// All 2-designs with `lambda` whose block set is the `g`-orbit of a
/// length-`k` orbit of a subgroup of index `b`.
pub fn search_flag_designs(
    g: &PermGroup,
    b: u64,
    k: usize,
    lambda: usize,
    opts: &LatticeOptions,
) -> Result<FlagSearch> {
    let lattice = SubgroupLattice::compute(g, opts)?;
    let reps: Vec<&PermGroup> = lattice
        .classes_of_index(b)
        .into_iter()
        .map(|c| c.representative())
        .collect();
    search_subgroups(g, reps, k, lambda, b.max(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::agl_2_3;

    #[test]
    fn affine_plane_is_found() {
        let g = agl_2_3().unwrap();
        let res = search_flag_designs(&g, 12, 3, 1, &LatticeOptions::default()).unwrap();
        assert!(res.found());
        let d = &res.designs[0];
        assert_eq!((d.v(), d.b()), (9, 12));
    }

    #[test]
    fn wrong_lambda_finds_nothing() {
        let g = agl_2_3().unwrap();
        let res = search_flag_designs(&g, 12, 3, 2, &LatticeOptions::default()).unwrap();
        assert!(!res.found());
        assert!(res.orbits_tested.iter().all(|t| t.failure.is_some()));
    }
}
