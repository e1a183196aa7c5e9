//! Mathieu groups, coset actions named by a subgroup order, and the affine
//! groups of degree 16.

use super::classical::sl4_2_fixture;
use super::field::Field;
use super::matrix::{projective_points, Matrix};
use super::projective::affine_group;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::permgroup::{LatticeOptions, PermGroup, SubgroupLattice};

fn perm(n: usize, s: &str) -> Permutation {
    Permutation::parse_cycles(n, s).expect("valid cycle notation")
}

pub fn mathieu_11() -> PermGroup {
    PermGroup::new(
        11,
        vec![perm(11, "(0 1 2 3 4 5 6 7 8 9 10)"), perm(11, "(2 6 10 7)(3 9 4 5)")],
    )
    .unwrap()
}

pub fn mathieu_24() -> PermGroup {
    PermGroup::new(
        24,
        vec![
            perm(24, "(0 1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16 17 18 19 20 21 22)"),
            perm(24, "(2 16 9 6 8)(3 12 13 18 4)(7 17 10 11 22)(14 19 21 20 15)"),
            perm(
                24,
                "(0 23)(1 22)(2 11)(3 15)(4 17)(5 9)(6 19)(7 13)(8 20)(10 16)(12 21)(14 18)",
            ),
        ],
    )
    .unwrap()
}

/// M22 as the pointwise stabilizer of two points of M24, or M22:2 as the
/// setwise stabilizer, acting on the remaining 22 points.
pub fn mathieu_22(extended: bool) -> Result<PermGroup> {
    let m24 = mathieu_24();
    let (a, b) = (22u32, 23u32);
    let stab = if extended {
        m24.set_stabilizer(&[a, b], 1000)?
    } else {
        m24.pointwise_stabilizer(&[a, b])
    };
    let rest: Vec<u32> = (0..22).collect();
    stab.restrict_to(&rest)
}

/// Action of `group` on the cosets of the first conjugacy class (in lattice
/// order) of subgroups of order `order`.
pub fn coset_action_by_order(group: &PermGroup, order: u64, max_enum_order: u64) -> Result<PermGroup> {
    let lattice = SubgroupLattice::compute(group, &LatticeOptions { max_enum_order })?;
    let class = lattice
        .classes_of_order(order)
        .into_iter()
        .next()
        .ok_or_else(|| Error::Hypothesis(format!("no subgroup of order {order}")))?;
    let act = group.coset_action(class.representative(), u64::MAX)?;
    Ok(act.group().clone())
}

/// A subgroup of GL(4,2) together with its action on the 15 nonzero vectors.
#[derive(Clone, Debug)]
pub struct LinearSubgroup {
    pub order: u64,
    pub matrices: Vec<Matrix>,
    pub group: PermGroup,
}

fn subspace_point_sets(pts: &[Vec<u32>]) -> Vec<Vec<u32>> {
    // every proper nonzero subspace of GF(2)^4 as a set of point indices
    let index = |v: &[u32]| pts.iter().position(|p| p == v).unwrap() as u32;
    let add = |a: &[u32], b: &[u32]| -> Vec<u32> { a.iter().zip(b).map(|(x, y)| (x + y) % 2).collect() };
    let mut spaces: Vec<Vec<u32>> = Vec::new();
    let n = pts.len();
    for i in 0..n {
        spaces.push(vec![i as u32]);
        for j in i + 1..n {
            let mut line = vec![i as u32, j as u32, index(&add(&pts[i], &pts[j]))];
            line.sort_unstable();
            spaces.push(line);
        }
    }
    // hyperplanes are kernels of nonzero functionals
    for f in pts {
        let h: Vec<u32> = (0..n as u32)
            .filter(|&i| pts[i as usize].iter().zip(f).map(|(a, b)| a * b).sum::<u32>() % 2 == 0)
            .collect();
        spaces.push(h);
    }
    spaces.sort();
    spaces.dedup();
    spaces
}

fn perm_to_matrix(pts: &[Vec<u32>], g: &Permutation) -> Matrix {
    let n = pts[0].len();
    let rows = (0..n)
        .map(|j| {
            let mut e = vec![0u32; n];
            e[j] = 1;
            let i = pts.iter().position(|p| *p == e).unwrap() as u32;
            pts[g.apply(i) as usize].clone()
        })
        .collect();
    Matrix::from_rows(rows).unwrap()
}

/// Conjugacy classes of irreducible subgroups of GL(4,2), ordered by order.
pub fn irreducible_subgroups_gl4_2(max_enum_order: u64) -> Result<Vec<LinearSubgroup>> {
    let fx = sl4_2_fixture()?;
    let gl = fx.to_group(u64::MAX)?;
    let pts = projective_points(&Field::new(2)?, 4);
    let spaces = subspace_point_sets(&pts);
    let lattice = SubgroupLattice::compute(&gl, &LatticeOptions { max_enum_order })?;
    let mut out = Vec::new();
    for class in lattice.classes() {
        let h = class.representative();
        let reducible = spaces
            .iter()
            .any(|s| h.generators().iter().all(|g| g.image_of_set(s) == *s));
        if reducible {
            continue;
        }
        out.push(LinearSubgroup {
            order: class.order(),
            matrices: h.generators().iter().map(|g| perm_to_matrix(&pts, g)).collect(),
            group: h.clone(),
        });
    }
    Ok(out)
}

/// The affine group `2^4 : H` on 16 points.
pub fn affine_16(h: &LinearSubgroup) -> Result<PermGroup> {
    affine_group(&Field::new(2)?, 4, &h.matrices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{projective_line_group, LineVariant};

    #[test]
    fn mathieu_orders() {
        assert_eq!(mathieu_11().order_u64(), Some(7920));
        assert_eq!(mathieu_11().transitivity_degree(), 4);
        assert_eq!(mathieu_24().order_u64(), Some(244823040));
        let m22 = mathieu_22(false).unwrap();
        assert_eq!(m22.degree(), 22);
        assert_eq!(m22.order_u64(), Some(443520));
        assert_eq!(m22.transitivity_degree(), 3);
        let m22_2 = mathieu_22(true).unwrap();
        assert_eq!(m22_2.order_u64(), Some(887040));
        assert!(m22_2.contains_group(&m22));
    }

    #[test]
    fn psl_2_8_on_28_points() {
        let g = projective_line_group(8, LineVariant::PSL).unwrap();
        let h = coset_action_by_order(&g, 18, 25000).unwrap();
        assert_eq!(h.degree(), 28);
        assert_eq!(h.order_u64(), Some(504));
        assert!(h.is_primitive().unwrap());
    }
}
