//! Orbit-stabilizer escape hatches for subgroup searches in large groups.
//!
//! A subgroup `X` with an orbit `S` of size `s` lies in the set stabilizer
//! `G_S`, so `|G : G_S|` (the length of the orbit of `S` on `s`-subsets)
//! divides `|G : X|`. When no such orbit length divides the admissible
//! index, no suitable `X` exists.

use super::PermGroup;
use crate::error::{Error, Result};

/// `n choose k`, or `None` on `u128` overflow.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) after the multiplication
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// True when neither `A_d` nor `S_d` has a subgroup of index dividing `m`
/// with an orbit of size `s`: the set stabilizer of an `s`-set has index
/// `binomial(d, s)` and is transitive on the set, so the condition is
/// exactly that `binomial(d, s)` does not divide `m`.
pub fn alternating_shortcut(d: u64, s: u64, m: u64) -> bool {
    match binomial(d, s) {
        Some(c) => c == 0 || m as u128 % c != 0,
        None => true,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetOrbitVerdict {
    pub s: usize,
    pub m: u64,
    /// Orbit lengths on `s`-subsets, ascending, with repetition.
    pub orbit_lengths: Vec<u64>,
    /// Those orbit lengths dividing `m`.
    pub dividing: Vec<u64>,
}

impl SubsetOrbitVerdict {
    /// No subgroup of index dividing `m` can have an orbit of size `s`.
    pub fn excludes(&self) -> bool {
        self.dividing.is_empty()
    }
}

fn rank(subset: &[u32], table: &[Vec<u64>]) -> u64 {
    // colex rank: sum of binomial(p_i, i+1)
    subset
        .iter()
        .enumerate()
        .map(|(i, &p)| table[p as usize][i + 1])
        .sum()
}

fn unrank(mut r: u64, s: usize, table: &[Vec<u64>]) -> Vec<u32> {
    let mut out = vec![0u32; s];
    for i in (1..=s).rev() {
        let mut p = i - 1;
        while p + 1 < table.len() && table[p + 1][i] <= r {
            p += 1;
        }
        out[i - 1] = p as u32;
        r -= table[p][i];
    }
    out
}

/// Orbit lengths of `group` on all `s`-subsets of its points, ascending.
/// Fails if there are more than `max_subsets` subsets.
pub fn subset_orbit_lengths(group: &PermGroup, s: usize, max_subsets: u64) -> Result<Vec<u64>> {
    let mut lengths: Vec<u64> = subset_orbits(group, s, max_subsets)?
        .into_iter()
        .map(|(_, l)| l)
        .collect();
    lengths.sort_unstable();
    Ok(lengths)
}

/// One representative per orbit on `s`-subsets (the colex-least member,
/// ascending) with the orbit length, by union-find over colex ranks.
pub fn subset_orbits(group: &PermGroup, s: usize, max_subsets: u64) -> Result<Vec<(Vec<u32>, u64)>> {
    let n = group.degree();
    let total = binomial(n as u64, s as u64).unwrap_or(u128::MAX);
    if total > max_subsets as u128 {
        return Err(Error::DegreeExceeded {
            degree: total,
            bound: max_subsets,
        });
    }
    let total = total as usize;
    let mut table = vec![vec![0u64; s + 1]; n + 1];
    for (p, row) in table.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            *slot = binomial(p as u64, j as u64).unwrap() as u64;
        }
    }
    let mut parent: Vec<u32> = (0..total as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            let up = parent[parent[x as usize] as usize];
            parent[x as usize] = up;
            x = up;
        }
        x
    }
    // walk all s-subsets in colex order; the running rank is the index
    let mut subset: Vec<u32> = (0..s as u32).collect();
    let mut image = vec![0u32; s];
    for r in 0..total {
        for g in group.generators() {
            for (slot, &p) in image.iter_mut().zip(&subset) {
                *slot = g.apply(p);
            }
            image.sort_unstable();
            let q = rank(&image, &table) as u32;
            let (a, b) = (find(&mut parent, r as u32), find(&mut parent, q));
            if a != b {
                parent[a.max(b) as usize] = a.min(b);
            }
        }
        // next subset in colex order
        if r + 1 < total {
            let mut i = 0;
            while i + 1 < s && subset[i] + 1 == subset[i + 1] {
                subset[i] = i as u32;
                i += 1;
            }
            subset[i] += 1;
        }
    }
    let mut counts = vec![0u64; total];
    for r in 0..total as u32 {
        let root = find(&mut parent, r);
        counts[root as usize] += 1;
    }
    // union by minimum keeps each root at the least rank of its orbit
    Ok(counts
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .map(|(r, c)| (unrank(r as u64, s, &table), c))
        .collect())
}

impl PermGroup {
    /// Necessary-condition test for a subgroup of index dividing `m` with
    /// an orbit of size `s`.
    pub fn subset_orbit_verdict(&self, s: usize, m: u64, max_subsets: u64) -> Result<SubsetOrbitVerdict> {
        let orbit_lengths = subset_orbit_lengths(self, s, max_subsets)?;
        let mut dividing: Vec<u64> = orbit_lengths.iter().copied().filter(|&l| m % l == 0).collect();
        dividing.dedup();
        Ok(SubsetOrbitVerdict {
            s,
            m,
            orbit_lengths,
            dividing,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn sym(n: usize) -> PermGroup {
        let cyc: Vec<u32> = (0..n as u32).collect();
        PermGroup::new(
            n,
            vec![
                Permutation::parse_cycles(n, "(0 1)").unwrap(),
                Permutation::from_cycles(n, &[cyc]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(11, 8), Some(165));
        assert_eq!(binomial(22, 12), Some(646646));
        assert_eq!(binomial(15, 9), Some(5005));
        assert_eq!(binomial(5, 7), Some(0));
        assert_eq!(binomial(100, 50), Some(100891344545564193334812497256));
    }

    #[test]
    fn shortcut_examples() {
        assert!(alternating_shortcut(11, 8, 385));
        assert!(alternating_shortcut(22, 12, 1694));
        assert!(alternating_shortcut(15, 9, 140));
        assert!(!alternating_shortcut(6, 2, 30));
    }

    #[test]
    fn symmetric_group_has_one_subset_orbit() {
        let g = sym(7);
        assert_eq!(subset_orbit_lengths(&g, 3, 1000).unwrap(), vec![35]);
    }

    #[test]
    fn cyclic_subset_orbits() {
        let c = PermGroup::new(
            6,
            vec![Permutation::from_cycles(6, &[vec![0, 1, 2, 3, 4, 5]]).unwrap()],
        )
        .unwrap();
        // 15 pairs split by difference: 6 + 6 + 3
        assert_eq!(subset_orbit_lengths(&c, 2, 100).unwrap(), vec![3, 6, 6]);
        let v = c.subset_orbit_verdict(2, 9, 100).unwrap();
        assert_eq!(v.dividing, vec![3]);
        assert!(!v.excludes());
    }

    #[test]
    fn representatives_lie_in_their_orbits() {
        let c = PermGroup::new(
            6,
            vec![Permutation::from_cycles(6, &[vec![0, 1, 2, 3, 4, 5]]).unwrap()],
        )
        .unwrap();
        let reps = subset_orbits(&c, 2, 100).unwrap();
        assert_eq!(reps, vec![(vec![0, 1], 6), (vec![0, 2], 6), (vec![0, 3], 3)]);
        let reps = subset_orbits(&sym(6), 3, 100).unwrap();
        assert_eq!(reps, vec![(vec![0, 1, 2], 20)]);
    }

    #[test]
    fn subset_bound_is_enforced() {
        assert!(subset_orbit_lengths(&sym(20), 10, 1000).is_err());
    }
}
