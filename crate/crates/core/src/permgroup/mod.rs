//! Permutation groups given by generators, sealed with a stabilizer chain.

mod blocks;
mod chain;
mod coset;
mod lattice;
mod shortcut;

pub use blocks::{minimal_block, PartitionSystem};
pub use chain::{Level, StabChain};
pub use coset::CosetAction;
pub use lattice::{ElementTable, LatticeOptions, SubgroupClass, SubgroupLattice};
pub use shortcut::{alternating_shortcut, binomial, subset_orbit_lengths, subset_orbits, SubsetOrbitVerdict};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default upper bound on group orders for element-level enumeration.
pub const DEFAULT_MAX_ENUM_ORDER: u64 = 25_000;
const RANDOM_SET_STABILIZER_TRIES: usize = 40;

/// Default upper bound on the degree of induced actions.
pub const DEFAULT_MAX_ACTION_DEGREE: u64 = 100_000;

#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
    order: BigUint,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let chain = StabChain::new(degree, &generators);
        let order = chain.order();
        Ok(PermGroup {
            degree,
            generators,
            chain,
            order,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).expect("no generators")
    }

    /// Builds the group from generators and discards the identity ones.
    pub fn from_generators(degree: usize, generators: &[Permutation]) -> Result<Self> {
        let mut gens: Vec<Permutation> = Vec::new();
        for g in generators {
            if !g.is_identity() && !gens.contains(g) {
                gens.push(g.clone());
            }
        }
        PermGroup::new(degree, gens)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabChain {
        &self.chain
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }

    pub fn is_trivial(&self) -> bool {
        self.order == BigUint::from(1u32)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain.contains(g)
    }

    /// Every generator of `other` lies in `self`.
    pub fn contains_group(&self, other: &PermGroup) -> bool {
        other.degree == self.degree && other.generators.iter().all(|g| self.contains(g))
    }

    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.order == other.order && self.contains_group(other)
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        self.chain.random_element(rng)
    }

    /// Orbit of a point, sorted.
    pub fn orbit(&self, point: u32) -> Vec<u32> {
        let mut seen = vec![false; self.degree];
        let mut orbit = vec![point];
        seen[point as usize] = true;
        let mut head = 0;
        while head < orbit.len() {
            let p = orbit[head];
            head += 1;
            for g in &self.generators {
                let q = g.apply(p);
                if !seen[q as usize] {
                    seen[q as usize] = true;
                    orbit.push(q);
                }
            }
        }
        orbit.sort_unstable();
        orbit
    }

    /// All orbits, each sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree as u32 {
            if seen[p as usize] {
                continue;
            }
            let orb = self.orbit(p);
            for &q in &orb {
                seen[q as usize] = true;
            }
            out.push(orb);
        }
        out
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.orbits().iter().map(|o| o.len()).collect();
        lens.sort_unstable();
        lens
    }

    pub fn is_transitive(&self) -> bool {
        self.degree > 0 && self.orbit(0).len() == self.degree
    }

    /// Points fixed by every generator.
    pub fn fixed_points(&self) -> Vec<u32> {
        (0..self.degree as u32)
            .filter(|&p| self.generators.iter().all(|g| g.apply(p) == p))
            .collect()
    }

    /// Chain whose base begins with `prefix`.
    pub fn chain_with_base(&self, prefix: &[u32]) -> StabChain {
        StabChain::with_base_prefix(self.degree, &self.chain.strong_generators(), prefix)
    }

    /// Pointwise stabilizer of the listed points.
    pub fn pointwise_stabilizer(&self, points: &[u32]) -> PermGroup {
        let chain = self.chain_with_base(points);
        let gens = chain.stabilizer_generators(points.len());
        PermGroup::from_generators(self.degree, &gens).expect("same degree")
    }

    pub fn stabilizer(&self, point: u32) -> PermGroup {
        self.pointwise_stabilizer(&[point])
    }

    /// Largest `t` such that the stabilizer of the points `0..i` is
    /// transitive on the remaining points for every `i < t`. Zero for an
    /// intransitive group.
    pub fn transitivity_degree(&self) -> usize {
        if !self.is_transitive() {
            return 0;
        }
        let n = self.degree;
        let prefix: Vec<u32> = (0..n as u32).collect();
        let chain = self.chain_with_base(&prefix);
        chain
            .levels()
            .iter()
            .take(n)
            .enumerate()
            .take_while(|(i, level)| level.orbit().len() == n - i)
            .count()
    }

    /// Orbit of a point set under the group, together with a transversal:
    /// `reps[i]` maps `set` to `orbit[i]`.
    pub fn set_orbit(
        &self,
        set: &[u32],
        max_len: u64,
    ) -> Result<(Vec<Vec<u32>>, Vec<Permutation>)> {
        let mut start = set.to_vec();
        start.sort_unstable();
        start.dedup();
        let mut index: FxHashMap<Vec<u32>, usize> = FxHashMap::default();
        index.insert(start.clone(), 0);
        let mut orbit = vec![start];
        let mut reps = vec![self.identity()];
        let mut head = 0;
        while head < orbit.len() {
            for g in &self.generators {
                let img = g.image_of_set(&orbit[head]);
                if !index.contains_key(&img) {
                    if orbit.len() as u64 >= max_len {
                        return Err(Error::DegreeExceeded {
                            degree: orbit.len() as u128 + 1,
                            bound: max_len,
                        });
                    }
                    index.insert(img.clone(), orbit.len());
                    reps.push(reps[head].then(g));
                    orbit.push(img);
                }
            }
            head += 1;
        }
        Ok((orbit, reps))
    }

    /// Setwise stabilizer of `set`, built from Schreier generators of the
    /// set orbit until the orbit-stabilizer order is reached.
    pub fn set_stabilizer(&self, set: &[u32], max_orbit: u64) -> Result<PermGroup> {
        let (orbit, reps) = self.set_orbit(set, max_orbit)?;
        let mut index: FxHashMap<&[u32], usize> = FxHashMap::default();
        for (i, s) in orbit.iter().enumerate() {
            index.insert(s.as_slice(), i);
        }
        let target = &self.order / BigUint::from(orbit.len());
        let mut builder = SubgroupBuilder::new(self.degree);
        // uniformly random stabilizer elements usually generate quickly;
        // Schreier generators below make the result certain
        let mut rng = ChaCha8Rng::seed_from_u64(0x5e7);
        for _ in 0..RANDOM_SET_STABILIZER_TRIES {
            if builder.order() == &target {
                break;
            }
            let g = self.random_element(&mut rng);
            let j = index[g.image_of_set(&orbit[0]).as_slice()];
            builder.add(g.then(&reps[j].inverse()));
        }
        'outer: for (i, s) in orbit.iter().enumerate() {
            for g in &self.generators {
                if builder.order() == &target {
                    break 'outer;
                }
                let img = g.image_of_set(s);
                let j = index[img.as_slice()];
                let schreier = reps[i].then(g).then(&reps[j].inverse());
                builder.add(schreier);
            }
        }
        debug_assert_eq!(builder.order(), &target);
        Ok(builder.finish())
    }

    /// Permutation induced by `g` on the given orbit (listed in order).
    pub fn restrict_to(&self, points: &[u32]) -> Result<PermGroup> {
        let mut pos = vec![u32::MAX; self.degree];
        for (i, &p) in points.iter().enumerate() {
            pos[p as usize] = i as u32;
        }
        let mut gens = Vec::new();
        for g in &self.generators {
            let mut images = Vec::with_capacity(points.len());
            for &p in points {
                let q = pos[g.apply(p) as usize];
                if q == u32::MAX {
                    return Err(Error::Hypothesis(
                        "point set is not invariant under the group".into(),
                    ));
                }
                images.push(q);
            }
            gens.push(Permutation::from_images(images)?);
        }
        PermGroup::from_generators(points.len(), &gens)
    }

    /// All elements, when the order is at most `bound`.
    pub fn elements(&self, bound: u64) -> Result<Vec<Permutation>> {
        self.check_enum_bound(bound)?;
        let mut out = Vec::new();
        self.chain.for_each_element(|g| out.push(g.clone()));
        Ok(out)
    }

    pub fn check_enum_bound(&self, bound: u64) -> Result<u64> {
        match self.order_u64() {
            Some(o) if o <= bound => Ok(o),
            _ => Err(Error::BoundExceeded {
                order: self.order.to_string(),
                bound,
            }),
        }
    }
}

/// Incrementally builds a subgroup from candidate elements, keeping only
/// those that are not already members.
pub(crate) struct SubgroupBuilder {
    degree: usize,
    gens: Vec<Permutation>,
    chain: StabChain,
    order: BigUint,
}

impl SubgroupBuilder {
    pub(crate) fn new(degree: usize) -> Self {
        let chain = StabChain::new(degree, &[]);
        SubgroupBuilder {
            degree,
            gens: Vec::new(),
            order: chain.order(),
            chain,
        }
    }

    pub(crate) fn add(&mut self, g: Permutation) -> bool {
        if g.is_identity() || !self.chain.add_generator(&g) {
            return false;
        }
        self.gens.push(g);
        self.order = self.chain.order();
        true
    }

    pub(crate) fn order(&self) -> &BigUint {
        &self.order
    }

    pub(crate) fn finish(self) -> PermGroup {
        PermGroup {
            degree: self.degree,
            generators: self.gens,
            order: self.order,
            chain: self.chain,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    fn sym(n: usize) -> PermGroup {
        let cyc: Vec<u32> = (0..n as u32).collect();
        PermGroup::new(
            n,
            vec![perm(n, "(0 1)"), Permutation::from_cycles(n, &[cyc]).unwrap()],
        )
        .unwrap()
    }

    #[test]
    fn orbit_of_small_group() {
        let g = PermGroup::new(5, vec![perm(5, "(0 1 2)(3 4)")]).unwrap();
        assert_eq!(g.orbit(3), vec![3, 4]);
        assert_eq!(g.orbits(), vec![vec![0, 1, 2], vec![3, 4]]);
        assert_eq!(g.order_u64(), Some(6));
    }

    #[test]
    fn symmetric_transitivity() {
        for n in 2..=7 {
            assert_eq!(sym(n).transitivity_degree(), n);
        }
    }

    #[test]
    fn set_stabilizer_in_s4() {
        let g = sym(4);
        let h = g.set_stabilizer(&[0, 1], 1000).unwrap();
        assert_eq!(h.order_u64(), Some(4));
        let whole = g.set_stabilizer(&[0, 1, 2, 3], 1000).unwrap();
        assert!(whole.same_group(&g));
    }

    #[test]
    fn trivial_group_is_intransitive() {
        let g = PermGroup::trivial(3);
        assert_eq!(g.order_u64(), Some(1));
        assert!(!g.is_transitive());
        assert_eq!(g.transitivity_degree(), 0);
        assert_eq!(g.fixed_points(), vec![0, 1, 2]);
    }

    #[test]
    fn rejects_wrong_degree() {
        assert!(PermGroup::new(4, vec![perm(5, "(0 1)")]).is_err());
    }
}
