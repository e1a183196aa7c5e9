//! Block systems of transitive groups via minimal-block closure.

use super::PermGroup;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A partition of `{0, .., v-1}` into `d` classes of common size `c`.
/// Classes are sorted, and ordered by least element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartitionSystem {
    classes: Vec<Vec<u32>>,
}

impl PartitionSystem {
    pub fn new(classes: Vec<Vec<u32>>) -> Result<Self> {
        let mut classes: Vec<Vec<u32>> = classes
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        classes.sort();
        let Some(first) = classes.first() else {
            return Err(Error::Design("partition has no classes".into()));
        };
        let c = first.len();
        let v: usize = classes.iter().map(|x| x.len()).sum();
        let mut seen = vec![false; v];
        for class in &classes {
            if class.len() != c {
                return Err(Error::Design(format!(
                    "class sizes differ: {} and {}",
                    c,
                    class.len()
                )));
            }
            for &p in class {
                let p = p as usize;
                if p >= v || seen[p] {
                    return Err(Error::Design(format!(
                        "classes do not partition 0..{v} (point {p})"
                    )));
                }
                seen[p] = true;
            }
        }
        Ok(PartitionSystem { classes })
    }

    pub fn classes(&self) -> &[Vec<u32>] {
        &self.classes
    }

    /// Class size.
    pub fn c(&self) -> usize {
        self.classes[0].len()
    }

    /// Number of classes.
    pub fn d(&self) -> usize {
        self.classes.len()
    }

    pub fn v(&self) -> usize {
        self.c() * self.d()
    }

    /// `class_of[p]` is the index of the class containing `p`.
    pub fn class_index(&self) -> Vec<usize> {
        let mut idx = vec![0usize; self.v()];
        for (i, class) in self.classes.iter().enumerate() {
            for &p in class {
                idx[p as usize] = i;
            }
        }
        idx
    }

    pub fn is_invariant_under(&self, g: &Permutation) -> bool {
        let idx = self.class_index();
        self.classes.iter().all(|class| {
            let target = idx[g.apply(class[0]) as usize];
            class.iter().all(|&p| idx[g.apply(p) as usize] == target)
        })
    }
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let up = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = up;
            x = up;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi as usize] = lo;
        true
    }
}

/// Finest block system in which `a` and `b` share a block.
pub fn minimal_block(group: &PermGroup, a: u32, b: u32) -> PartitionSystem {
    let n = group.degree();
    let mut uf = UnionFind::new(n);
    uf.union(a, b);
    let mut queue = vec![(a, b)];
    while let Some((x, y)) = queue.pop() {
        for g in group.generators() {
            let (u, w) = (uf.find(g.apply(x)), uf.find(g.apply(y)));
            if uf.union(u, w) {
                queue.push((u, w));
            }
        }
    }
    let mut by_root: Vec<Vec<u32>> = vec![Vec::new(); n];
    for p in 0..n as u32 {
        let r = uf.find(p);
        by_root[r as usize].push(p);
    }
    let classes: Vec<Vec<u32>> = by_root.into_iter().filter(|c| !c.is_empty()).collect();
    PartitionSystem::new(classes).expect("blocks of a transitive group have equal size")
}

impl PermGroup {
    /// Minimal nontrivial block systems, ordered by class size and then by
    /// the block containing 0.
    pub fn block_systems(&self) -> Result<Vec<PartitionSystem>> {
        if !self.is_transitive() {
            return Err(Error::Intransitive);
        }
        let mut found: Vec<PartitionSystem> = Vec::new();
        for beta in 1..self.degree() as u32 {
            let sys = minimal_block(self, 0, beta);
            if sys.d() > 1 && !found.contains(&sys) {
                found.push(sys);
            }
        }
        let block0 = |s: &PartitionSystem| s.classes()[0].clone();
        let mut minimal: Vec<PartitionSystem> = found
            .iter()
            .filter(|p| {
                let bp = block0(p);
                !found.iter().any(|q| {
                    let bq = block0(q);
                    bq.len() < bp.len() && bq.iter().all(|x| bp.binary_search(x).is_ok())
                })
            })
            .cloned()
            .collect();
        minimal.sort_by(|x, y| (x.c(), block0(x)).cmp(&(y.c(), block0(y))));
        Ok(minimal)
    }

    pub fn is_primitive(&self) -> Result<bool> {
        Ok(self.block_systems()?.is_empty())
    }
}
