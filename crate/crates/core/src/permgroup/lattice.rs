//! Conjugacy classes of subgroups of small groups.
//!
//! Every nontrivial subgroup `J` is `<H, Z>` for a proper subgroup `H` and
//! a cyclic subgroup `Z` of prime-power order, because `J` is generated by
//! its cyclic subgroups of prime-power order. Starting from the trivial
//! group, each class representative `H` is extended by one representative
//! `Z` of every `N_G(H)`-orbit of such cyclic subgroups. Subgroups are
//! identified by exact element sets through a 128-bit XOR fingerprint, and
//! every conjugate of a new class is registered so later joins resolve to
//! their class by lookup.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;

use super::{PermGroup, StabChain, SubgroupBuilder, DEFAULT_MAX_ENUM_ORDER};
use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Clone, Copy, Debug)]
pub struct LatticeOptions {
    pub max_enum_order: u64,
}

impl Default for LatticeOptions {
    fn default() -> Self {
        LatticeOptions {
            max_enum_order: DEFAULT_MAX_ENUM_ORDER,
        }
    }
}

/// Element lookup. An element is determined by its base images, so when
/// they pack into 128 bits the key is the packed image tuple.
#[derive(Clone, Debug)]
enum Lookup {
    Packed {
        base: Vec<u32>,
        bits: u32,
        map: FxHashMap<u128, u32>,
    },
    Full(FxHashMap<Permutation, u32>),
}

fn pack(base: &[u32], bits: u32, image: impl Fn(u32) -> u32) -> u128 {
    base.iter().fold(0u128, |acc, &b| (acc << bits) | image(b) as u128)
}

impl Lookup {
    fn new(group: &PermGroup, elems: &[Permutation]) -> Self {
        let base = group.chain().base();
        let bits = usize::BITS - group.degree().max(2).saturating_sub(1).leading_zeros();
        if base.len() as u32 * bits <= 128 {
            let map = elems
                .iter()
                .enumerate()
                .map(|(i, e)| (pack(&base, bits, |b| e.apply(b)), i as u32))
                .collect();
            Lookup::Packed { base, bits, map }
        } else {
            Lookup::Full(elems.iter().enumerate().map(|(i, e)| (e.clone(), i as u32)).collect())
        }
    }

    /// Index of the group element mapping each base point `b` to
    /// `image(b)`; `full` builds the permutation when keys do not pack.
    fn find(&self, image: impl Fn(u32) -> u32, full: impl FnOnce() -> Permutation) -> Option<u32> {
        match self {
            Lookup::Packed { base, bits, map } => map.get(&pack(base, *bits, image)).copied(),
            Lookup::Full(map) => map.get(&full()).copied(),
        }
    }
}

/// All elements of a group with an index, conjugation tables for the
/// group generators, element orders and per-element fingerprints.
#[derive(Clone, Debug)]
pub struct ElementTable {
    group: PermGroup,
    elems: Vec<Permutation>,
    lookup: Lookup,
    conj: Vec<Vec<u32>>,
    orders: Vec<u32>,
    zobrist: Vec<u128>,
    identity: u32,
}

impl ElementTable {
    pub fn new(group: &PermGroup, max_enum_order: u64) -> Result<Self> {
        group.check_enum_bound(max_enum_order)?;
        let elems = group.elements(max_enum_order)?;
        let lookup = Lookup::new(group, &elems);
        let mut table = ElementTable {
            group: group.clone(),
            elems,
            lookup,
            conj: Vec::new(),
            orders: Vec::new(),
            zobrist: Vec::new(),
            identity: 0,
        };
        table.conj = group
            .generators()
            .iter()
            .map(|g| {
                let gi = g.inverse();
                (0..table.len() as u32).map(|e| table.conjugate(e, &gi, g)).collect()
            })
            .collect();
        table.orders = table.elems.iter().map(|e| e.order() as u32).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(0x0f1a_9b1e);
        table.zobrist = (0..table.len()).map(|_| rng.gen::<u128>()).collect();
        table.identity = table.member(&group.identity());
        Ok(table)
    }

    /// Index of a known member.
    fn member(&self, g: &Permutation) -> u32 {
        self.lookup.find(|b| g.apply(b), || g.clone()).expect("element of the group")
    }

    /// Index of `g_inv x g` for `g` in the group.
    fn conjugate(&self, x: u32, g_inv: &Permutation, g: &Permutation) -> u32 {
        let xp = &self.elems[x as usize];
        self.lookup
            .find(|b| g.apply(xp.apply(g_inv.apply(b))), || g_inv.then(xp).then(g))
            .expect("conjugate of a group element")
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn element(&self, i: u32) -> &Permutation {
        &self.elems[i as usize]
    }

    pub fn index_of(&self, g: &Permutation) -> Option<u32> {
        if g.degree() != self.group.degree() {
            return None;
        }
        self.lookup
            .find(|b| g.apply(b), || g.clone())
            .filter(|&i| self.elems[i as usize] == *g)
    }

    pub fn element_order(&self, i: u32) -> u32 {
        self.orders[i as usize]
    }

    pub fn identity_index(&self) -> u32 {
        self.identity
    }

    fn product(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (&self.elems[a as usize], &self.elems[b as usize]);
        self.lookup
            .find(|p| y.apply(x.apply(p)), || x.then(y))
            .expect("product of group elements")
    }

    fn fingerprint(&self, elems: &[u32]) -> u128 {
        elems
            .iter()
            .fold(0u128, |acc, &e| acc ^ self.zobrist[e as usize])
    }

    /// Elements of `<start, gens>`, where `start` lists the elements of a
    /// subgroup (or is empty for the trivial one). The result is grown as a
    /// union of right cosets of `start`.
    fn closure(&self, start: &[u32], gens: &[u32]) -> Vec<u32> {
        let sub: Vec<u32> = if start.is_empty() { vec![self.identity] } else { start.to_vec() };
        let mut member = vec![false; self.len()];
        for &e in &sub {
            member[e as usize] = true;
        }
        let mut out = sub.clone();
        let mut reps = vec![self.identity];
        let mut head = 0;
        while head < reps.len() {
            let t = reps[head];
            head += 1;
            for &g in gens {
                let tg = self.product(t, g);
                if member[tg as usize] {
                    continue;
                }
                reps.push(tg);
                for &h in &sub {
                    let x = self.product(h, tg);
                    member[x as usize] = true;
                    out.push(x);
                }
            }
        }
        out
    }

    /// Elements of the subgroup generated by the given permutations.
    pub fn subgroup_elements(&self, gens: &[Permutation]) -> Result<Vec<u32>> {
        let idx: Vec<u32> = gens
            .iter()
            .map(|g| {
                self.index_of(g)
                    .ok_or_else(|| Error::Hypothesis("generator is not a group element".into()))
            })
            .collect::<Result<_>>()?;
        Ok(self.closure(&[], &idx))
    }

    /// Conjugacy orbit of the subgroup with the given elements. Returns the
    /// fingerprints of all conjugates and the normalizer.
    fn conjugacy_orbit(&self, elems: &[u32], order: u64) -> (Vec<u128>, PermGroup) {
        let gens = self.group.generators();
        let mut seen: FxHashMap<u128, u32> = FxHashMap::default();
        let mut keys = vec![self.fingerprint(elems)];
        seen.insert(keys[0], 0);
        let mut transversal = vec![self.group.identity()];
        let mut queue: Vec<Vec<u32>> = vec![elems.to_vec()];
        let mut edges: Vec<(u32, usize, u32)> = Vec::new();
        let mut head = 0;
        while head < queue.len() {
            let current = std::mem::take(&mut queue[head]);
            for (gi, table) in self.conj.iter().enumerate() {
                let image: Vec<u32> = current.iter().map(|&e| table[e as usize]).collect();
                let key = self.fingerprint(&image);
                match seen.get(&key) {
                    Some(&j) => edges.push((head as u32, gi, j)),
                    None => {
                        let j = keys.len() as u32;
                        seen.insert(key, j);
                        keys.push(key);
                        transversal.push(transversal[head].then(&gens[gi]));
                        queue.push(image);
                    }
                }
            }
            head += 1;
        }
        let target = self.group.order() / BigUint::from(keys.len());
        let mut builder = SubgroupBuilder::new(self.group.degree());
        // the subgroup itself is normal in its normalizer; seed with it
        let mut i = 0;
        while builder.order() < &BigUint::from(order) && i < elems.len() {
            builder.add(self.elems[elems[i] as usize].clone());
            i += 1;
        }
        for (a, gi, b) in edges {
            if builder.order() == &target {
                break;
            }
            let s = transversal[a as usize]
                .then(&gens[gi])
                .then(&transversal[b as usize].inverse());
            builder.add(s);
        }
        debug_assert_eq!(builder.order(), &target);
        (keys, builder.finish())
    }
}

/// One conjugacy class of subgroups.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    representative: PermGroup,
    elements: Vec<u32>,
    parent_order: u64,
    class_size: u64,
    normalizer: PermGroup,
}

impl SubgroupClass {
    pub fn representative(&self) -> &PermGroup {
        &self.representative
    }

    /// Element indices into the parent's [`ElementTable`].
    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn parent_order(&self) -> u64 {
        self.parent_order
    }

    pub fn index(&self) -> u64 {
        self.parent_order / self.order()
    }

    /// Number of conjugates.
    pub fn class_size(&self) -> u64 {
        self.class_size
    }

    pub fn normalizer(&self) -> &PermGroup {
        &self.normalizer
    }
}

struct Cyclic {
    generator: u32,
}

#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    table: ElementTable,
    classes: Vec<SubgroupClass>,
}

fn is_prime_power(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= n && n % p != 0 {
        p += 1;
    }
    if p * p > n {
        return true;
    }
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    m == 1
}

struct Work {
    gens: Vec<u32>,
    elems: Vec<u32>,
    normalizer: PermGroup,
    class_size: u64,
}

impl SubgroupLattice {
    pub fn compute(group: &PermGroup, opts: &LatticeOptions) -> Result<Self> {
        let table = ElementTable::new(group, opts.max_enum_order)?;
        let n = table.len();
        let parent_order = n as u64;
        let degree = group.degree();

        // cyclic subgroups of prime-power order, each once
        let mut cyc_of: Vec<u32> = vec![u32::MAX; n];
        let mut cyclics: Vec<Cyclic> = Vec::new();
        for i in 0..n as u32 {
            if cyc_of[i as usize] != u32::MAX || !is_prime_power(table.element_order(i)) {
                continue;
            }
            let id = cyclics.len() as u32;
            cyclics.push(Cyclic { generator: i });
            let ord = table.element_order(i) as u64;
            let mut power = i;
            for e in 1..ord {
                if num_integer::gcd(e, ord) == 1 {
                    cyc_of[power as usize] = id;
                }
                power = table.product(power, i);
            }
        }

        let mut known: FxHashMap<(u64, u128), u32> = FxHashMap::default();
        let mut work: Vec<Work> = Vec::new();
        let register = |elems: Vec<u32>,
                        gens: Vec<u32>,
                        known: &mut FxHashMap<(u64, u128), u32>,
                        work: &mut Vec<Work>| {
            let order = elems.len() as u64;
            let (keys, normalizer) = table.conjugacy_orbit(&elems, order);
            let id = work.len() as u32;
            for k in &keys {
                known.insert((order, *k), id);
            }
            work.push(Work {
                gens,
                elems,
                normalizer,
                class_size: keys.len() as u64,
            });
        };
        register(vec![table.identity], Vec::new(), &mut known, &mut work);

        let mut head = 0;
        while head < work.len() {
            if work[head].elems.len() as u64 == parent_order {
                head += 1;
                continue;
            }
            let mut member = vec![false; n];
            for &e in &work[head].elems {
                member[e as usize] = true;
            }
            let norm_gens: Vec<Permutation> = work[head].normalizer.generators().to_vec();
            let norm_inv: Vec<Permutation> = norm_gens.iter().map(|g| g.inverse()).collect();
            let mut done = vec![false; cyclics.len()];
            for z in 0..cyclics.len() {
                if done[z] {
                    continue;
                }
                // N_G(H)-orbit of this cyclic subgroup
                done[z] = true;
                let mut orbit = vec![z];
                let mut oh = 0;
                while oh < orbit.len() {
                    let gen = cyclics[orbit[oh]].generator;
                    oh += 1;
                    for (g, gi) in norm_gens.iter().zip(&norm_inv) {
                        let img = table.conjugate(gen, gi, g);
                        let w = cyc_of[img as usize] as usize;
                        if !done[w] {
                            done[w] = true;
                            orbit.push(w);
                        }
                    }
                }
                let zg = cyclics[z].generator;
                if member[zg as usize] {
                    continue;
                }
                let mut gens = work[head].gens.clone();
                gens.push(zg);
                let perms: Vec<Permutation> = gens.iter().map(|&g| table.element(g).clone()).collect();
                let order = StabChain::new(degree, &perms).order();
                if &order == group.order() {
                    continue;
                }
                let elems = table.closure(&work[head].elems, &gens);
                let key = (elems.len() as u64, table.fingerprint(&elems));
                if known.contains_key(&key) {
                    continue;
                }
                register(elems, gens, &mut known, &mut work);
            }
            head += 1;
        }
        if parent_order > 1 {
            let all: Vec<u32> = (0..n as u32).collect();
            let gens: Vec<u32> = group
                .generators()
                .iter()
                .map(|g| table.member(g))
                .collect();
            register(all, gens, &mut known, &mut work);
        }

        let mut classes: Vec<SubgroupClass> = work
            .into_iter()
            .map(|w| {
                let perms: Vec<Permutation> = w.gens.iter().map(|&g| table.element(g).clone()).collect();
                let mut elements = w.elems;
                elements.sort_unstable();
                SubgroupClass {
                    representative: PermGroup::from_generators(degree, &perms).expect("same degree"),
                    elements,
                    parent_order,
                    class_size: w.class_size,
                    normalizer: w.normalizer,
                }
            })
            .collect();
        classes.sort_by_key(|c| c.order());
        Ok(SubgroupLattice { table, classes })
    }

    pub fn table(&self) -> &ElementTable {
        &self.table
    }

    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn classes_of_order(&self, order: u64) -> Vec<&SubgroupClass> {
        self.classes.iter().filter(|c| c.order() == order).collect()
    }

    pub fn classes_of_index(&self, index: u64) -> Vec<&SubgroupClass> {
        self.classes.iter().filter(|c| c.index() == index).collect()
    }

    /// Classes whose index divides `m` and whose representative has an
    /// orbit of size `s` on the natural points.
    pub fn with_orbit(&self, m: u64, s: usize) -> Vec<&SubgroupClass> {
        self.classes
            .iter()
            .filter(|c| m % c.index() == 0)
            .filter(|c| c.representative.orbits().iter().any(|o| o.len() == s))
            .collect()
    }
}

impl PermGroup {
    pub fn subgroup_classes(&self, opts: &LatticeOptions) -> Result<SubgroupLattice> {
        SubgroupLattice::compute(self, opts)
    }

    /// Classes of subgroups of index dividing `m` with an orbit of size `s`.
    pub fn subgroups_with_orbit(
        &self,
        m: u64,
        s: usize,
        opts: &LatticeOptions,
    ) -> Result<Vec<SubgroupClass>> {
        let lattice = self.subgroup_classes(opts)?;
        Ok(lattice.with_orbit(m, s).into_iter().cloned().collect())
    }

    /// Normalizer of a subgroup, by a conjugacy-orbit scan.
    pub fn normalizer(&self, sub: &PermGroup, max_enum_order: u64) -> Result<PermGroup> {
        let table = ElementTable::new(self, max_enum_order)?;
        let elems = table.subgroup_elements(sub.generators())?;
        let order = elems.len() as u64;
        Ok(table.conjugacy_orbit(&elems, order).1)
    }

    /// A Sylow `p`-subgroup, grown one normalizing `p`-element at a time.
    pub fn sylow(&self, p: u64, max_enum_order: u64) -> Result<PermGroup> {
        let table = ElementTable::new(self, max_enum_order)?;
        let n = table.len() as u64;
        let mut target = 1u64;
        while n % (target * p) == 0 {
            target *= p;
        }
        let is_p_power = |mut m: u64| {
            while m % p == 0 {
                m /= p;
            }
            m == 1
        };
        let mut elems = vec![table.identity];
        let mut gens: Vec<u32> = Vec::new();
        while (elems.len() as u64) < target {
            let mut member = vec![false; table.len()];
            for &e in &elems {
                member[e as usize] = true;
            }
            let found = (0..table.len() as u32).find(|&x| {
                if member[x as usize] || !is_p_power(table.element_order(x) as u64) {
                    return false;
                }
                let xp = table.element(x);
                let xi = xp.inverse();
                gens.iter().all(|&g| member[table.conjugate(g, &xi, xp) as usize])
            });
            let x = found.expect("a p-group below Sylow order is properly normalized by a p-element");
            gens.push(x);
            elems = table.closure(&elems, &gens);
        }
        let perms: Vec<Permutation> = gens.iter().map(|&g| table.element(g).clone()).collect();
        PermGroup::from_generators(self.degree(), &perms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    fn group(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::new(n, gens.iter().map(|s| perm(n, s)).collect()).unwrap()
    }

    #[test]
    fn cyclic_six() {
        let g = group(6, &["(0 1 2 3 4 5)"]);
        let lat = g.subgroup_classes(&LatticeOptions::default()).unwrap();
        let orders: Vec<u64> = lat.classes().iter().map(|c| c.order()).collect();
        assert_eq!(orders, vec![1, 2, 3, 6]);
    }

    #[test]
    fn symmetric_four_has_eleven_classes() {
        let g = group(4, &["(0 1)", "(0 1 2 3)"]);
        let lat = g.subgroup_classes(&LatticeOptions::default()).unwrap();
        assert_eq!(lat.classes().len(), 11);
        let total: u64 = lat.classes().iter().map(|c| c.class_size()).sum();
        assert_eq!(total, 30);
    }

    #[test]
    fn alternating_five_classes() {
        let g = group(5, &["(0 1 2)", "(0 1 2 3 4)"]);
        let lat = g.subgroup_classes(&LatticeOptions::default()).unwrap();
        // 1, C2, C3, V4, C5, S3, D10, A4, A5
        assert_eq!(lat.classes().len(), 9);
        assert_eq!(lat.classes_of_order(60).len(), 1);
    }

    #[test]
    fn sylow_and_normalizer() {
        let a7 = group(7, &["(0 1 2)", "(2 3 4 5 6)"]);
        let p = a7.sylow(3, 25000).unwrap();
        assert_eq!(p.order_u64(), Some(9));
        let c6 = group(6, &["(0 1 2 3 4 5)"]);
        assert_eq!(c6.sylow(2, 100).unwrap().order_u64(), Some(2));
        let s4 = group(4, &["(0 1)", "(0 1 2 3)"]);
        let v4 = group(4, &["(0 1)(2 3)", "(0 2)(1 3)"]);
        assert_eq!(s4.normalizer(&v4, 100).unwrap().order_u64(), Some(24));
        let c2 = group(4, &["(0 1)"]);
        assert_eq!(s4.normalizer(&c2, 100).unwrap().order_u64(), Some(4));
    }

    #[test]
    fn enumeration_bound() {
        let s8 = group(8, &["(0 1)", "(0 1 2 3 4 5 6 7)"]);
        let err = s8.subgroup_classes(&LatticeOptions::default()).unwrap_err();
        assert!(matches!(err, Error::BoundExceeded { .. }));
    }
}
