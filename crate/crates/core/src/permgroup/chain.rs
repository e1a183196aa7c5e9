//! Deterministic Schreier–Sims.
//!
//! Base points are taken from an optional caller-supplied prefix and are
//! otherwise chosen as the least point moved by the generator that forces
//! a new level. No randomness is involved, so the base, the strong
//! generators and every derived ordering are reproducible.

use num_bigint::BigUint;
use rand::Rng;
use rustc_hash::FxHashSet;

use crate::perm::Permutation;

#[derive(Clone, Debug)]
pub struct Level {
    base_point: u32,
    /// Strong generators that fix every earlier base point.
    generators: Vec<Permutation>,
    orbit: Vec<u32>,
    /// `transversal[p] = (u, u^-1)` with `base_point^u = p`.
    transversal: Vec<Option<(Permutation, Permutation)>>,
}

impl Level {
    fn new(base_point: u32, degree: usize) -> Self {
        Level {
            base_point,
            generators: Vec::new(),
            orbit: Vec::new(),
            transversal: vec![None; degree],
        }
    }

    pub fn base_point(&self) -> u32 {
        self.base_point
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Fundamental orbit in discovery order.
    pub fn orbit(&self) -> &[u32] {
        &self.orbit
    }

    pub fn representative(&self, point: u32) -> Option<&Permutation> {
        self.transversal[point as usize].as_ref().map(|(u, _)| u)
    }

    /// Extends the orbit and transversal to the current generators without
    /// replacing existing representatives.
    fn extend_orbit(&mut self, degree: usize) {
        if self.orbit.is_empty() {
            let id = Permutation::identity(degree);
            self.transversal[self.base_point as usize] = Some((id.clone(), id));
            self.orbit.push(self.base_point);
        }
        let mut head = 0;
        while head < self.orbit.len() {
            let p = self.orbit[head];
            head += 1;
            for s in &self.generators {
                let q = s.apply(p);
                if self.transversal[q as usize].is_none() {
                    let u = self.transversal[p as usize].as_ref().unwrap().0.then(s);
                    let inv = u.inverse();
                    self.transversal[q as usize] = Some((u, inv));
                    self.orbit.push(q);
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
    // Schreier pairs (orbit index, generator index) already sifted per level;
    // representatives never change, so a checked pair stays checked
    checked: Vec<FxHashSet<(usize, usize)>>,
}

impl StabChain {
    pub fn new(degree: usize, generators: &[Permutation]) -> Self {
        Self::with_base_prefix(degree, generators, &[])
    }

    pub fn with_base_prefix(degree: usize, generators: &[Permutation], prefix: &[u32]) -> Self {
        let mut chain = StabChain {
            degree,
            levels: prefix.iter().map(|&b| Level::new(b, degree)).collect(),
            checked: Vec::new(),
        };
        for g in generators {
            if g.is_identity() {
                continue;
            }
            let depth = match chain.first_moved_level(g) {
                Some(l) => l,
                None => {
                    let b = g.first_moved().expect("non-identity");
                    chain.levels.push(Level::new(b, degree));
                    chain.levels.len() - 1
                }
            };
            for level in &mut chain.levels[..=depth] {
                if !level.generators.contains(g) {
                    level.generators.push(g.clone());
                }
            }
        }
        for level in &mut chain.levels {
            level.extend_orbit(degree);
        }
        chain.complete();
        chain
    }

    fn first_moved_level(&self, g: &Permutation) -> Option<usize> {
        self.levels
            .iter()
            .position(|l| g.apply(l.base_point) != l.base_point)
    }

    /// Adds `g` to the group, keeping the existing base as a prefix.
    /// Returns false when `g` is already a member.
    pub fn add_generator(&mut self, g: &Permutation) -> bool {
        if self.contains(g) {
            return false;
        }
        let depth = match self.first_moved_level(g) {
            Some(l) => l,
            None => {
                let b = g.first_moved().expect("non-identity");
                self.levels.push(Level::new(b, self.degree));
                self.levels.len() - 1
            }
        };
        for level in &mut self.levels[..=depth] {
            level.generators.push(g.clone());
            level.extend_orbit(self.degree);
        }
        self.complete();
        true
    }

    fn complete(&mut self) {
        if self.levels.is_empty() {
            return;
        }
        let mut checked = std::mem::take(&mut self.checked);
        checked.resize(self.levels.len(), FxHashSet::default());
        let mut i = self.levels.len() - 1;
        loop {
            match self.unchecked_residue(i, &mut checked[i]) {
                Some((residue, j)) => {
                    if j == self.levels.len() {
                        let b = residue.first_moved().expect("non-identity residue");
                        self.levels.push(Level::new(b, self.degree));
                        checked.push(FxHashSet::default());
                    }
                    for l in i + 1..=j {
                        self.levels[l].generators.push(residue.clone());
                        self.levels[l].extend_orbit(self.degree);
                    }
                    i = j;
                }
                None if i == 0 => break,
                None => i -= 1,
            }
        }
        self.checked = checked;
    }

    /// First Schreier generator of level `i` that does not sift through the
    /// levels below, as a residue and the level where sifting stopped.
    fn unchecked_residue(&self, i: usize, checked: &mut FxHashSet<(usize, usize)>) -> Option<(Permutation, usize)> {
        let level = &self.levels[i];
        for oi in 0..level.orbit.len() {
            let beta = level.orbit[oi];
            for (si, s) in level.generators.iter().enumerate() {
                if !checked.insert((oi, si)) {
                    continue;
                }
                let image = s.apply(beta);
                let (u_beta, _) = level.transversal[beta as usize].as_ref().unwrap();
                let (_, u_image_inv) = level.transversal[image as usize].as_ref().unwrap();
                let h = u_beta.then(s).then(u_image_inv);
                if h.is_identity() {
                    continue;
                }
                let (residue, j) = self.strip_from(h, i + 1);
                if j < self.levels.len() || !residue.is_identity() {
                    return Some((residue, j));
                }
            }
        }
        None
    }

    /// Sifts `g` through the levels starting at `start`. Returns the residue
    /// and the index of the level where sifting stopped (`levels.len()` when
    /// it went all the way through).
    fn strip_from(&self, mut g: Permutation, start: usize) -> (Permutation, usize) {
        for (j, level) in self.levels.iter().enumerate().skip(start) {
            let beta = g.apply(level.base_point);
            match &level.transversal[beta as usize] {
                Some((_, u_inv)) => g = g.then(u_inv),
                None => return (g, j),
            }
        }
        let len = self.levels.len();
        (g, len)
    }

    pub fn sift(&self, g: &Permutation) -> (Permutation, usize) {
        self.strip_from(g.clone(), 0)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, j) = self.sift(g);
        j == self.levels.len() && residue.is_identity()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn order_u128(&self) -> Option<u128> {
        self.levels
            .iter()
            .try_fold(1u128, |acc, l| acc.checked_mul(l.orbit.len() as u128))
    }

    /// Generators of the stabilizer of the first `depth` base points.
    pub fn stabilizer_generators(&self, depth: usize) -> Vec<Permutation> {
        self.levels
            .get(depth)
            .map(|l| l.generators.clone())
            .unwrap_or_default()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.levels
            .first()
            .map(|l| l.generators.clone())
            .unwrap_or_default()
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in self.levels.iter().rev() {
            let p = level.orbit[rng.gen_range(0..level.orbit.len())];
            g = g.then(level.representative(p).unwrap());
        }
        g
    }

    /// Calls `f` on every group element. The caller bounds the order.
    pub fn for_each_element<F: FnMut(&Permutation)>(&self, mut f: F) {
        // every element is u_{k-1} ... u_1 u_0 with u_i a level-i representative
        let k = self.levels.len();
        let mut stack: Vec<(usize, Permutation)> = vec![(k, Permutation::identity(self.degree))];
        while let Some((depth, acc)) = stack.pop() {
            if depth == 0 {
                f(&acc);
                continue;
            }
            let level = &self.levels[depth - 1];
            for &p in level.orbit.iter().rev() {
                stack.push((depth - 1, acc.then(level.representative(p).unwrap())));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn symmetric_group_order() {
        let gens = vec![perm(5, "(0 1)"), perm(5, "(0 1 2 3 4)")];
        let chain = StabChain::new(5, &gens);
        assert_eq!(chain.order(), BigUint::from(120u32));
        assert!(chain.contains(&perm(5, "(2 4)")));
    }

    #[test]
    fn cyclic_group_membership() {
        let gens = vec![perm(6, "(0 1 2 3 4 5)")];
        let chain = StabChain::new(6, &gens);
        assert_eq!(chain.order(), BigUint::from(6u32));
        assert!(chain.contains(&perm(6, "(0 2 4)(1 3 5)")));
        assert!(!chain.contains(&perm(6, "(0 1)")));
    }

    #[test]
    fn base_prefix_is_respected() {
        let gens = vec![perm(4, "(0 1)"), perm(4, "(0 1 2 3)")];
        let chain = StabChain::with_base_prefix(4, &gens, &[3, 2]);
        assert_eq!(&chain.base()[..2], &[3, 2]);
        assert_eq!(chain.order(), BigUint::from(24u32));
    }

    #[test]
    fn element_enumeration_is_exhaustive() {
        let gens = vec![perm(4, "(0 1)"), perm(4, "(0 1 2 3)")];
        let chain = StabChain::new(4, &gens);
        let mut seen = std::collections::HashSet::new();
        chain.for_each_element(|g| {
            seen.insert(g.clone());
        });
        assert_eq!(seen.len(), 24);
    }
}
