//! Action of a group on the right cosets of a subgroup.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rustc_hash::FxHashMap;

use super::{PermGroup, StabChain};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Transitive representation on right cosets `Hx`. Coset 0 is `H`.
#[derive(Clone, Debug)]
pub struct CosetAction {
    image: PermGroup,
    representatives: Vec<Permutation>,
    subgroup_chain: StabChain,
    index: FxHashMap<Permutation, u32>,
}

/// Canonical element of the right coset `Hx`: the one whose base-image
/// sequence is lexicographically least.
fn canonical_coset_element(h: &StabChain, x: &Permutation) -> Permutation {
    let mut x = x.clone();
    for level in h.levels() {
        let best = level
            .orbit()
            .iter()
            .copied()
            .min_by_key(|&p| x.apply(p))
            .expect("orbit contains the base point");
        if best != level.base_point() {
            x = level.representative(best).unwrap().then(&x);
        }
    }
    x
}

impl CosetAction {
    pub fn new(group: &PermGroup, subgroup: &PermGroup, max_degree: u64) -> Result<Self> {
        if !group.contains_group(subgroup) {
            return Err(Error::Hypothesis(
                "subgroup generators are not members of the group".into(),
            ));
        }
        let index_big: BigUint = group.order() / subgroup.order();
        let index = match index_big.to_u64() {
            Some(i) if i <= max_degree => i as usize,
            _ => {
                return Err(Error::DegreeExceeded {
                    degree: index_big.to_u128().unwrap_or(u128::MAX),
                    bound: max_degree,
                })
            }
        };
        let hchain = subgroup.chain().clone();
        let mut map: FxHashMap<Permutation, u32> = FxHashMap::default();
        let id = canonical_coset_element(&hchain, &group.identity());
        map.insert(id.clone(), 0);
        let mut reps = vec![id];
        let mut head = 0;
        while head < reps.len() {
            for g in group.generators() {
                let c = canonical_coset_element(&hchain, &reps[head].then(g));
                if !map.contains_key(&c) {
                    map.insert(c.clone(), reps.len() as u32);
                    reps.push(c);
                }
            }
            head += 1;
        }
        debug_assert_eq!(reps.len(), index);
        let mut action = CosetAction {
            image: PermGroup::trivial(reps.len()),
            representatives: reps,
            subgroup_chain: hchain,
            index: map,
        };
        let gens: Vec<Permutation> = group
            .generators()
            .iter()
            .map(|g| action.image_of(g))
            .collect();
        action.image = PermGroup::new(action.representatives.len(), gens)?;
        Ok(action)
    }

    /// The induced permutation group on cosets.
    pub fn group(&self) -> &PermGroup {
        &self.image
    }

    pub fn degree(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[Permutation] {
        &self.representatives
    }

    /// Index of the coset `Hx`.
    pub fn coset_of(&self, x: &Permutation) -> u32 {
        self.index[&canonical_coset_element(&self.subgroup_chain, x)]
    }

    /// Permutation of the cosets induced by a group element.
    pub fn image_of(&self, g: &Permutation) -> Permutation {
        let images = self
            .representatives
            .iter()
            .map(|r| self.coset_of(&r.then(g)))
            .collect();
        Permutation::from_images_unchecked(images)
    }

    /// Image of a subgroup of the acting group.
    pub fn image_of_subgroup(&self, sub: &PermGroup) -> Result<PermGroup> {
        let gens: Vec<Permutation> = sub.generators().iter().map(|g| self.image_of(g)).collect();
        PermGroup::from_generators(self.degree(), &gens)
    }
}

impl PermGroup {
    pub fn coset_action(&self, subgroup: &PermGroup, max_degree: u64) -> Result<CosetAction> {
        CosetAction::new(self, subgroup, max_degree)
    }
}
