//! Block designs, their verification, and the checks that tie a design to
//! a group preserving a point partition.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::permgroup::{PartitionSystem, PermGroup};

/// A point set `0..v` with a multiset of blocks. Blocks are sorted and the
/// block list is kept in sorted order, so equal multisets compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Design {
    v: usize,
    blocks: Vec<Vec<u32>>,
}

impl Design {
    pub fn new(v: usize, blocks: Vec<Vec<u32>>) -> Result<Self> {
        let mut blocks: Vec<Vec<u32>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        for b in &blocks {
            if b.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Design(format!("block {b:?} repeats a point")));
            }
            if let Some(&p) = b.last() {
                if p as usize >= v {
                    return Err(Error::Design(format!("point {p} outside 0..{v}")));
                }
            }
        }
        blocks.sort();
        Ok(Design { v, blocks })
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    /// Common block size, if uniform.
    pub fn k(&self) -> Option<usize> {
        let k = self.blocks.first()?.len();
        self.blocks.iter().all(|b| b.len() == k).then_some(k)
    }

    /// Distinct blocks with their multiplicities.
    pub fn multiplicities(&self) -> Vec<(&[u32], usize)> {
        let mut out: Vec<(&[u32], usize)> = Vec::new();
        for b in &self.blocks {
            match out.last_mut() {
                Some((last, n)) if *last == b.as_slice() => *n += 1,
                _ => out.push((b, 1)),
            }
        }
        out
    }

    /// Image of the block multiset under a point permutation.
    pub fn image(&self, g: &Permutation) -> Design {
        let blocks = self.blocks.iter().map(|b| g.image_of_set(b)).collect();
        Design::new(self.v, blocks).expect("images of valid blocks are valid")
    }

    pub fn is_preserved_by(&self, g: &Permutation) -> bool {
        g.degree() == self.v && self.image(g) == *self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DesignReport {
    pub v: usize,
    pub b: usize,
    pub k: usize,
    pub r: usize,
    pub lambda: usize,
    /// `2 < k < v`.
    pub nontrivial: bool,
    /// `b >= v`.
    pub fisher: bool,
}

impl fmt::Display for DesignReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "2-({},{},{}) b={} r={}",
            self.v, self.k, self.lambda, self.b, self.r
        )
    }
}

/// First violation found while checking the 2-design axioms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Witness {
    BlockSize { block: usize, size: usize, expected: usize },
    Replication { point: u32, count: usize, expected: usize },
    Pair { a: u32, b: u32, count: usize, expected: usize },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::BlockSize { block, size, expected } => {
                write!(f, "block {block} has size {size}, expected {expected}")
            }
            Witness::Replication { point, count, expected } => {
                write!(f, "point {point} lies in {count} blocks, expected {expected}")
            }
            Witness::Pair { a, b, count, expected } => {
                write!(f, "pair {{{a},{b}}} lies in {count} blocks, expected {expected}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwoDesignCheck {
    Design(DesignReport),
    NotADesign(Witness),
}

impl TwoDesignCheck {
    pub fn report(&self) -> Option<&DesignReport> {
        match self {
            TwoDesignCheck::Design(r) => Some(r),
            TwoDesignCheck::NotADesign(_) => None,
        }
    }
}

/// All-pairs verification of the 2-design axioms.
pub fn verify_2_design(d: &Design) -> Result<TwoDesignCheck> {
    if d.v < 2 || d.blocks.is_empty() {
        return Err(Error::Design("a design needs v >= 2 and at least one block".into()));
    }
    let k = d.blocks[0].len();
    for (i, b) in d.blocks.iter().enumerate() {
        if b.len() != k {
            return Ok(TwoDesignCheck::NotADesign(Witness::BlockSize {
                block: i,
                size: b.len(),
                expected: k,
            }));
        }
    }
    let v = d.v;
    let mut reps = vec![0usize; v];
    let mut pairs = vec![0u32; v * v];
    for b in &d.blocks {
        for (i, &x) in b.iter().enumerate() {
            reps[x as usize] += 1;
            for &y in &b[i + 1..] {
                pairs[x as usize * v + y as usize] += 1;
            }
        }
    }
    // compare against the most frequent count so a witness marks the deviation
    let mode = |counts: &mut dyn Iterator<Item = usize>| -> usize {
        let mut freq: BTreeMap<usize, usize> = BTreeMap::new();
        for c in counts {
            *freq.entry(c).or_default() += 1;
        }
        freq.into_iter().max_by_key(|&(c, n)| (n, std::cmp::Reverse(c))).unwrap().0
    };
    let lambda = mode(&mut (0..v).flat_map(|a| (a + 1..v).map(move |b| (a, b))).map(|(a, b)| pairs[a * v + b] as usize));
    for a in 0..v {
        for b in a + 1..v {
            let c = pairs[a * v + b] as usize;
            if c != lambda {
                return Ok(TwoDesignCheck::NotADesign(Witness::Pair {
                    a: a as u32,
                    b: b as u32,
                    count: c,
                    expected: lambda,
                }));
            }
        }
    }
    let r = mode(&mut reps.iter().copied());
    if let Some(p) = reps.iter().position(|&c| c != r) {
        return Ok(TwoDesignCheck::NotADesign(Witness::Replication {
            point: p as u32,
            count: reps[p],
            expected: r,
        }));
    }
    Ok(TwoDesignCheck::Design(DesignReport {
        v,
        b: d.b(),
        k,
        r,
        lambda,
        nontrivial: 2 < k && k < v,
        fisher: d.b() >= v,
    }))
}

fn check_preserves(d: &Design, g: &PermGroup) -> Result<()> {
    if g.degree() != d.v {
        return Err(Error::DegreeMismatch {
            expected: d.v,
            found: g.degree(),
        });
    }
    if let Some(i) = g.generators().iter().position(|x| !d.is_preserved_by(x)) {
        return Err(Error::NotPreserved(format!("generator {i} does not preserve the blocks")));
    }
    Ok(())
}

/// Flag-transitivity of `g` on `d`.
pub fn flag_transitive(d: &Design, g: &PermGroup) -> Result<bool> {
    if g.degree() != d.v {
        return Err(Error::DegreeMismatch {
            expected: d.v,
            found: g.degree(),
        });
    }
    let Some(k) = d.k() else { return Ok(false) };
    let flags = num_bigint::BigUint::from(d.b() as u64 * k as u64);
    if *g.order() < flags {
        return Ok(false);
    }
    check_preserves(d, g)?;
    let distinct = d.multiplicities();
    let mult = distinct[0].1;
    if distinct.iter().any(|&(_, m)| m != mult) {
        return Ok(false);
    }
    let (orbit, _) = g.set_orbit(distinct[0].0, distinct.len() as u64 + 1)?;
    if orbit.len() != distinct.len() {
        return Ok(false);
    }
    let block = distinct[0].0;
    let stab = g.set_stabilizer(block, distinct.len() as u64)?;
    let first = stab.orbit(block[0]);
    Ok(block.iter().all(|p| first.binary_search(p).is_ok()))
}

/// Minimal nontrivial invariant partitions; empty iff `g` is primitive.
pub fn invariant_partitions(g: &PermGroup) -> Result<Vec<PartitionSystem>> {
    g.block_systems()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionProfile {
    /// Distinct nonzero values of `|B ∩ Δ|`, ascending.
    pub sizes: Vec<usize>,
    /// The common value when it is unique and at least 2.
    pub ell: Option<usize>,
}

impl IntersectionProfile {
    pub fn hypothesis_c_ok(&self) -> bool {
        self.ell.is_some()
    }
}

pub fn intersection_profile(d: &Design, c: &PartitionSystem) -> Result<IntersectionProfile> {
    if c.v() != d.v {
        return Err(Error::DegreeMismatch {
            expected: d.v,
            found: c.v(),
        });
    }
    let idx = c.class_index();
    let mut sizes: Vec<usize> = Vec::new();
    for b in &d.blocks {
        let mut count = vec![0usize; c.d()];
        for &p in b {
            count[idx[p as usize]] += 1;
        }
        sizes.extend(count.into_iter().filter(|&n| n > 0));
    }
    sizes.sort_unstable();
    sizes.dedup();
    let ell = match sizes.as_slice() {
        [l] if *l >= 2 => Some(*l),
        _ => None,
    };
    Ok(IntersectionProfile { sizes, ell })
}

/// A design derived from a partitioned design, with trace multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedDesign {
    pub design: Design,
    /// Distinct multiplicities of repeated blocks, ascending.
    pub multiplicities: Vec<usize>,
    pub check: TwoDesignCheck,
}

impl DerivedDesign {
    fn from_design(design: Design) -> Result<Self> {
        let mut multiplicities: Vec<usize> = design.multiplicities().into_iter().map(|(_, m)| m).collect();
        multiplicities.sort_unstable();
        multiplicities.dedup();
        let check = verify_2_design(&design)?;
        Ok(DerivedDesign {
            design,
            multiplicities,
            check,
        })
    }

    /// Common multiplicity `θ` if it is constant and divides `lambda`.
    pub fn theta_dividing(&self, lambda: usize) -> Option<usize> {
        match self.multiplicities.as_slice() {
            [t] if lambda % t == 0 => Some(*t),
            _ => None,
        }
    }
}

fn require_hypothesis_c(d: &Design, c: &PartitionSystem) -> Result<usize> {
    let prof = intersection_profile(d, c)?;
    prof.ell.ok_or_else(|| {
        Error::Hypothesis(format!(
            "block-class intersections take sizes {:?}, not a single value >= 2",
            prof.sizes
        ))
    })
}

/// Traces `B ∩ Δ` on class `class`, relabelled to `0..c` in class order.
pub fn inner_design(d: &Design, c: &PartitionSystem, class: usize) -> Result<DerivedDesign> {
    require_hypothesis_c(d, c)?;
    let delta = c
        .classes()
        .get(class)
        .ok_or_else(|| Error::Range(format!("no class {class}")))?;
    let blocks: Vec<Vec<u32>> = d
        .blocks
        .iter()
        .filter_map(|b| {
            let t: Vec<u32> = b
                .iter()
                .filter_map(|p| delta.binary_search(p).ok().map(|i| i as u32))
                .collect();
            (!t.is_empty()).then_some(t)
        })
        .collect();
    DerivedDesign::from_design(Design::new(delta.len(), blocks)?)
}

/// Class sets `C(B)` as blocks on the point set of classes.
pub fn quotient_design(d: &Design, c: &PartitionSystem) -> Result<DerivedDesign> {
    require_hypothesis_c(d, c)?;
    let idx = c.class_index();
    let blocks: Vec<Vec<u32>> = d
        .blocks
        .iter()
        .map(|b| {
            let mut cls: Vec<u32> = b.iter().map(|&p| idx[p as usize] as u32).collect();
            cls.sort_unstable();
            cls.dedup();
            cls
        })
        .collect();
    DerivedDesign::from_design(Design::new(c.d(), blocks)?)
}

/// Number of blocks meeting both of two distinct classes.
pub fn blocks_meeting_classes(d: &Design, c: &PartitionSystem, i: usize, j: usize) -> usize {
    let idx = c.class_index();
    d.blocks
        .iter()
        .filter(|b| {
            b.iter().any(|&p| idx[p as usize] == i) && b.iter().any(|&p| idx[p as usize] == j)
        })
        .count()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitCheck {
    Design(Design),
    NotADesign { alpha: u32, beta: u32, count: usize, expected: usize, blocks: usize },
}

impl OrbitCheck {
    pub fn is_design(&self) -> bool {
        matches!(self, OrbitCheck::Design(_))
    }
}

/// Tests whether the `g`-orbit of `block` is the block set of a 2-design
/// with the given `lambda`. Only pairs `{0, β}` are counted, with `β` the
/// least point of each orbit of the stabilizer of 0.
pub fn orbit_design_check(g: &PermGroup, block: &[u32], lambda: usize, max_blocks: u64) -> Result<OrbitCheck> {
    if !g.is_transitive() {
        return Err(Error::Intransitive);
    }
    let mut block = block.to_vec();
    block.sort_unstable();
    let (orbit, _) = g.set_orbit(&block, max_blocks)?;
    let alpha = 0u32;
    let stab = g.stabilizer(alpha);
    let reps: Vec<u32> = stab
        .orbits()
        .into_iter()
        .map(|o| o[0])
        .filter(|&p| p != alpha)
        .collect();
    let mut counts: BTreeMap<u32, usize> = reps.iter().map(|&b| (b, 0)).collect();
    for b in &orbit {
        if b.binary_search(&alpha).is_ok() {
            for p in b {
                if let Some(c) = counts.get_mut(p) {
                    *c += 1;
                }
            }
        }
    }
    for (&beta, &count) in &counts {
        if count != lambda {
            return Ok(OrbitCheck::NotADesign {
                alpha,
                beta,
                count,
                expected: lambda,
                blocks: orbit.len(),
            });
        }
    }
    Ok(OrbitCheck::Design(Design::new(g.degree(), orbit)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdesign {
    /// Fixed points of `P`, ascending; point `i` of `design` is `fixed[i]`.
    pub fixed: Vec<u32>,
    pub design: Design,
    /// Fixed points per class, when a partition is given.
    pub per_class: Option<Vec<usize>>,
}

impl Subdesign {
    pub fn is_complete(&self) -> bool {
        self.design.b() > 0
    }
}

/// Restriction to the fixed points of `p`, keeping fully contained blocks.
pub fn fixed_point_subdesign(
    d: &Design,
    g: &PermGroup,
    p: &PermGroup,
    partition: Option<&PartitionSystem>,
) -> Result<Subdesign> {
    check_preserves(d, g)?;
    if !g.contains_group(p) {
        return Err(Error::Hypothesis("P is not a subgroup of G".into()));
    }
    let fixed = p.fixed_points();
    if fixed.is_empty() {
        return Err(Error::Design("P fixes no point".into()));
    }
    let blocks: Vec<Vec<u32>> = d
        .blocks
        .iter()
        .filter_map(|b| {
            b.iter()
                .map(|x| fixed.binary_search(x).ok().map(|i| i as u32))
                .collect::<Option<Vec<u32>>>()
        })
        .collect();
    let per_class = partition.map(|c| {
        c.classes()
            .iter()
            .map(|cl| cl.iter().filter(|x| fixed.binary_search(x).is_ok()).count())
            .collect()
    });
    Ok(Subdesign {
        design: Design::new(fixed.len(), blocks)?,
        fixed,
        per_class,
    })
}

/// Indices of blocks through `{a, b}` that every generator of `p` fixes
/// setwise. For a `p`-group with `p ∤ λ` fixing `a` and `b` this is nonempty.
pub fn fixed_blocks_through_pair(d: &Design, p: &PermGroup, a: u32, b: u32) -> Vec<usize> {
    d.blocks
        .iter()
        .enumerate()
        .filter(|(_, blk)| blk.binary_search(&a).is_ok() && blk.binary_search(&b).is_ok())
        .filter(|(_, blk)| p.generators().iter().all(|g| g.image_of_set(blk) == **blk))
        .map(|(i, _)| i)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{affine_group, symmetric, Field, Matrix};

    fn pairs(n: u32) -> Design {
        let mut blocks = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                blocks.push(vec![a, b]);
            }
        }
        Design::new(n as usize, blocks).unwrap()
    }

    fn agl_2_3() -> PermGroup {
        let f = Field::new(3).unwrap();
        let gl = vec![
            Matrix::from_rows(vec![vec![1, 1], vec![0, 1]]).unwrap(),
            Matrix::from_rows(vec![vec![0, 1], vec![2, 0]]).unwrap(),
            Matrix::from_rows(vec![vec![2, 0], vec![0, 1]]).unwrap(),
        ];
        affine_group(&f, 2, &gl).unwrap()
    }

    /// Lines of AG(2,3): cosets of the four one-dimensional subspaces.
    fn affine_plane() -> Design {
        let pt = |x: u32, y: u32| x + 3 * y;
        let mut blocks = Vec::new();
        for (dx, dy) in [(1, 0), (0, 1), (1, 1), (1, 2)] {
            let mut seen = std::collections::BTreeSet::new();
            for x in 0..3 {
                for y in 0..3 {
                    let line: Vec<u32> = (0..3).map(|t| pt((x + t * dx) % 3, (y + t * dy) % 3)).collect();
                    let mut s = line.clone();
                    s.sort();
                    seen.insert(s);
                }
            }
            blocks.extend(seen);
        }
        Design::new(9, blocks).unwrap()
    }

    #[test]
    fn all_pairs_is_a_design() {
        let r = verify_2_design(&pairs(5)).unwrap();
        let TwoDesignCheck::Design(r) = r else { panic!() };
        assert_eq!((r.v, r.k, r.lambda, r.r, r.b), (5, 2, 1, 4, 10));
        assert!(!r.nontrivial);
        assert!(r.fisher);
        assert!(flag_transitive(&pairs(5), &symmetric(5)).unwrap());
    }

    #[test]
    fn removing_a_block_breaks_a_pair() {
        let d = pairs(5);
        let less = Design::new(5, d.blocks()[1..].to_vec()).unwrap();
        match verify_2_design(&less).unwrap() {
            TwoDesignCheck::NotADesign(Witness::Pair { a, b, count, expected }) => {
                assert_eq!((a, b, count, expected), (0, 1, 0, 1))
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn affine_plane_is_flag_transitive() {
        let d = affine_plane();
        let r = verify_2_design(&d).unwrap();
        assert_eq!(r.report().map(|r| (r.v, r.k, r.lambda, r.b)), Some((9, 3, 1, 12)));
        let g = agl_2_3();
        assert!(flag_transitive(&d, &g).unwrap());
        match orbit_design_check(&g, &d.blocks()[0], 1, 1000).unwrap() {
            OrbitCheck::Design(e) => assert_eq!(e, d),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unpreserved_design_is_an_error() {
        let d = affine_plane();
        assert!(matches!(flag_transitive(&d, &symmetric(9)), Err(Error::NotPreserved(_))));
    }

    #[test]
    fn synthetic_partition_example() {
        let d = Design::new(6, vec![vec![0, 1, 3, 4], vec![0, 2, 3, 5]]).unwrap();
        let c = PartitionSystem::new(vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        let prof = intersection_profile(&d, &c).unwrap();
        assert_eq!(prof.sizes, vec![2]);
        assert_eq!(prof.ell, Some(2));
        let q = quotient_design(&d, &c).unwrap();
        assert_eq!(q.design.blocks(), &[vec![0, 1], vec![0, 1]]);
        assert_eq!(q.multiplicities, vec![2]);
        assert_eq!(q.check.report().map(|r| (r.v, r.k, r.lambda)), Some((2, 2, 2)));
        let inner = inner_design(&d, &c, 0).unwrap();
        assert_eq!(inner.design.blocks(), &[vec![0, 1], vec![0, 2]]);
        assert_eq!(inner.multiplicities, vec![1]);
        assert_eq!(blocks_meeting_classes(&d, &c, 0, 1), 2);
    }

    #[test]
    fn profile_failures() {
        let c = PartitionSystem::new(vec![vec![0, 1], vec![2, 3]]).unwrap();
        let prof = intersection_profile(&pairs(4), &c).unwrap();
        assert_eq!(prof.sizes, vec![1, 2]);
        assert!(!prof.hypothesis_c_ok());
        assert!(inner_design(&pairs(4), &c, 0).is_err());
        let singletons = PartitionSystem::new((0..4).map(|i| vec![i]).collect()).unwrap();
        let prof = intersection_profile(&pairs(4), &singletons).unwrap();
        assert_eq!(prof.sizes, vec![1]);
        assert!(!prof.hypothesis_c_ok());
    }

    #[test]
    fn orbit_check_pairs() {
        match orbit_design_check(&symmetric(5), &[0, 1], 1, 100).unwrap() {
            OrbitCheck::Design(d) => assert_eq!(d, pairs(5)),
            other => panic!("{other:?}"),
        }
        assert!(!orbit_design_check(&symmetric(5), &[0, 1], 2, 100).unwrap().is_design());
    }

    #[test]
    fn fixed_point_subdesigns() {
        let d = affine_plane();
        let g = agl_2_3();
        let trivial = PermGroup::trivial(9);
        let sub = fixed_point_subdesign(&d, &g, &trivial, None).unwrap();
        assert_eq!(sub.design, d);
        // translation x -> x + (1,0)
        let t = Permutation::from_images((0..9).map(|p| (p % 3 + 1) % 3 + 3 * (p / 3)).collect()).unwrap();
        let tp = PermGroup::new(9, vec![t]).unwrap();
        assert!(fixed_point_subdesign(&d, &g, &tp, None).is_err());
        // a homology fixing the line y = 0 pointwise
        let h = Permutation::from_images((0..9).map(|p| p % 3 + 3 * ((2 * (p / 3)) % 3)).collect()).unwrap();
        let hp = PermGroup::new(9, vec![h]).unwrap();
        let sub = fixed_point_subdesign(&d, &g, &hp, None).unwrap();
        assert_eq!(sub.fixed, vec![0, 1, 2]);
        assert_eq!(sub.design.b(), 1);
        let through = fixed_blocks_through_pair(&d, &hp, 0, 1);
        assert_eq!(through.len(), 1);
    }
}
