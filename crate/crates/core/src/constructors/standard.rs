//! Symmetric, alternating, cyclic and dihedral groups, plus induced
//! actions on subsets.

use rustc_hash::FxHashMap;

use crate::permgroup::binomial;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::permgroup::PermGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StandardKind {
    Sym,
    Alt,
    Cyclic,
    Dihedral,
}

fn cycle(n: usize, pts: Vec<u32>) -> Permutation {
    Permutation::from_cycles(n, &[pts]).expect("distinct points below the degree")
}

pub fn symmetric(n: usize) -> PermGroup {
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(cycle(n, vec![0, 1]));
    }
    if n >= 3 {
        gens.push(cycle(n, (0..n as u32).collect()));
    }
    PermGroup::new(n.max(1), gens).expect("valid generators")
}

/// `(0 1 2)` with an `n`-cycle for odd `n` or the cycle on `1..n` for even `n`.
pub fn alternating(n: usize) -> PermGroup {
    let mut gens = Vec::new();
    if n >= 3 {
        gens.push(cycle(n, vec![0, 1, 2]));
    }
    if n >= 4 {
        if n % 2 == 1 {
            gens.push(cycle(n, (0..n as u32).collect()));
        } else {
            gens.push(cycle(n, (1..n as u32).collect()));
        }
    }
    PermGroup::new(n.max(1), gens).expect("valid generators")
}

pub fn cyclic(n: usize) -> PermGroup {
    let gens = if n >= 2 {
        vec![cycle(n, (0..n as u32).collect())]
    } else {
        Vec::new()
    };
    PermGroup::new(n.max(1), gens).expect("valid generators")
}

/// Dihedral group of order `2n` on the vertices of an `n`-gon.
pub fn dihedral(n: usize) -> Result<PermGroup> {
    if n < 3 {
        return Err(Error::Range(format!("dihedral group needs n >= 3, got {n}")));
    }
    let reflection: Vec<u32> = (0..n as u32).map(|i| (n as u32 - i) % n as u32).collect();
    PermGroup::new(
        n,
        vec![
            cycle(n, (0..n as u32).collect()),
            Permutation::from_images(reflection)?,
        ],
    )
}

pub fn standard_group(n: usize, kind: StandardKind) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::Range("degree must be positive".into()));
    }
    Ok(match kind {
        StandardKind::Sym => symmetric(n),
        StandardKind::Alt => alternating(n),
        StandardKind::Cyclic => cyclic(n),
        StandardKind::Dihedral => dihedral(n)?,
    })
}

/// Sorted `k`-subsets of `0..n` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<u32>> {
    fn rec(start: u32, n: u32, k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for p in start..n {
            if (n - p) as usize >= k - cur.len() {
                cur.push(p);
                rec(p + 1, n, k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(0, n as u32, k, &mut Vec::new(), &mut out);
    out
}

/// Induced action on the lexicographically ordered `k`-subsets.
pub fn action_on_k_subsets(group: &PermGroup, k: usize, max_degree: u64) -> Result<PermGroup> {
    let n = group.degree();
    let count = binomial(n as u64, k as u64).unwrap_or(u128::MAX);
    if count > max_degree as u128 || k == 0 || k > n {
        return Err(Error::DegreeExceeded {
            degree: count,
            bound: max_degree,
        });
    }
    let subsets = k_subsets(n, k);
    let index: FxHashMap<&[u32], u32> = subsets
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_slice(), i as u32))
        .collect();
    let gens = group
        .generators()
        .iter()
        .map(|g| {
            let images = subsets
                .iter()
                .map(|s| index[g.image_of_set(s).as_slice()])
                .collect();
            Permutation::from_images(images)
        })
        .collect::<Result<Vec<_>>>()?;
    PermGroup::new(subsets.len(), gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(alternating(7).order_u64(), Some(2520));
        assert_eq!(alternating(8).order_u64(), Some(20160));
        assert_eq!(symmetric(6).order_u64(), Some(720));
        assert_eq!(cyclic(6).order_u64(), Some(6));
        assert_eq!(dihedral(11).unwrap().order_u64(), Some(22));
        assert_eq!(symmetric(1).order_u64(), Some(1));
        assert_eq!(alternating(2).order_u64(), Some(1));
        assert_eq!(alternating(3).order_u64(), Some(3));
    }

    #[test]
    fn dihedral_prime_degree_is_primitive() {
        let d = dihedral(11).unwrap();
        assert!(d.is_transitive());
        assert!(d.is_primitive().unwrap());
        assert!(dihedral(2).is_err());
    }

    #[test]
    fn cyclic_six_is_imprimitive() {
        assert_eq!(cyclic(6).block_systems().unwrap().len(), 2);
    }

    #[test]
    fn subset_actions() {
        let a8 = action_on_k_subsets(&alternating(8), 2, 100).unwrap();
        assert_eq!(a8.degree(), 28);
        assert!(a8.is_transitive());
        assert!(a8.is_primitive().unwrap());
        assert_eq!(a8.order_u64(), Some(20160));

        let s4 = action_on_k_subsets(&symmetric(4), 2, 100).unwrap();
        assert_eq!(s4.degree(), 6);
        assert!(!s4.is_primitive().unwrap());

        let s5 = symmetric(5);
        let same = action_on_k_subsets(&s5, 1, 100).unwrap();
        assert_eq!(same.generators(), s5.generators());

        assert!(action_on_k_subsets(&symmetric(30), 10, 1000).is_err());
    }

    #[test]
    fn subsets_are_lexicographic() {
        let s = k_subsets(4, 2);
        assert_eq!(
            s,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
    }
}
