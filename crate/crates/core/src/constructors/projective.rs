//! Groups of the projective line and affine groups over small fields.

use super::field::Field;
use super::matrix::{matrix_action, projective_points, Generator, Matrix};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::permgroup::PermGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LineVariant {
    PSL,
    PGL,
    PSigmaL,
    PGammaL,
    M10,
}

impl std::str::FromStr for LineVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "psl" => LineVariant::PSL,
            "pgl" => LineVariant::PGL,
            "psigmal" | "psl-frob" => LineVariant::PSigmaL,
            "pgammal" => LineVariant::PGammaL,
            "m10" => LineVariant::M10,
            _ => return Err(Error::Parse(format!("unknown projective line variant `{s}`"))),
        })
    }
}

fn m2(a: u32, b: u32, c: u32, d: u32) -> Generator {
    Generator::Matrix(Matrix::from_rows(vec![vec![a, b], vec![c, d]]).unwrap())
}

/// Generators for SL(2,q): a transvection, the Weyl element and a torus element.
pub fn sl2_generators(f: &Field) -> Vec<Generator> {
    let w = f.primitive_element();
    let winv = f.inv(w).unwrap();
    let mut gens = vec![m2(1, 1, 0, 1), m2(0, 1, f.neg(1), 0)];
    if f.q() > 3 {
        gens.push(m2(w, 0, 0, winv));
    }
    gens
}

pub fn projective_line_group(q: u32, variant: LineVariant) -> Result<PermGroup> {
    if variant == LineVariant::M10 && q != 9 {
        return Err(Error::UnsupportedField(q));
    }
    let f = Field::new(q)?;
    let w = f.primitive_element();
    let pts = projective_points(&f, 2);
    let mut gens = sl2_generators(&f);
    match variant {
        LineVariant::PSL => {}
        LineVariant::PGL => gens.push(m2(w, 0, 0, 1)),
        LineVariant::PSigmaL => gens.push(Generator::Frobenius),
        LineVariant::PGammaL => {
            gens.push(m2(w, 0, 0, 1));
            gens.push(Generator::Frobenius);
        }
        LineVariant::M10 => {
            // PΓL(2,9)/PSL(2,9) is a Klein four-group; M10 is the preimage
            // of the coset containing neither diagonal nor field automorphism alone
            let psl = matrix_action(&f, &gens, &pts)?;
            let diag = matrix_action(&f, &[m2(w, 0, 0, 1)], &pts)?;
            let frob = matrix_action(&f, &[Generator::Frobenius], &pts)?;
            let twisted = diag.generators()[0].then(&frob.generators()[0]);
            let mut all = psl.generators().to_vec();
            all.push(twisted);
            return PermGroup::new(pts.len(), all);
        }
    }
    matrix_action(&f, &gens, &pts)
}

/// `{x -> a x^σ + b}`: with `semilinear` the field automorphisms are included.
/// Points are the field elements in index order.
pub fn affine_line_group(q: u32, multipliers: MultiplierGroup, semilinear: bool) -> Result<PermGroup> {
    let f = Field::new(q)?;
    let w = f.primitive_element();
    let mult = match multipliers {
        MultiplierGroup::Full => w,
        MultiplierGroup::Index(i) => {
            if (q - 1) % i != 0 {
                return Err(Error::Range(format!("{i} does not divide {}", q - 1)));
            }
            f.pow(w, i as u64)
        }
    };
    let mut gens = vec![
        Permutation::from_images(f.elements().map(|x| f.add(x, 1)).collect())?,
        Permutation::from_images(f.elements().map(|x| f.mul(x, mult)).collect())?,
    ];
    if semilinear {
        gens.push(Permutation::from_images(f.elements().map(|x| f.frobenius(x)).collect())?);
    }
    gens.retain(|g| !g.is_identity());
    PermGroup::new(q as usize, gens)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MultiplierGroup {
    /// All nonzero multipliers.
    Full,
    /// The subgroup of index `i` in the multiplicative group.
    Index(u32),
}

/// Affine group `V : G0` on `GF(p)^n` where `G0` is generated by the given
/// matrices. Points are vectors in base-`p` index order.
pub fn affine_group(f: &Field, n: usize, linear: &[Matrix]) -> Result<PermGroup> {
    if f.e() != 1 {
        return Err(Error::UnsupportedField(f.q()));
    }
    let p = f.p() as usize;
    let total = p.pow(n as u32);
    let to_vec = |mut x: usize| -> Vec<u32> {
        let mut v = vec![0u32; n];
        for slot in v.iter_mut() {
            *slot = (x % p) as u32;
            x /= p;
        }
        v
    };
    let to_index = |v: &[u32]| -> u32 { v.iter().rev().fold(0, |acc, &d| acc * p as u32 + d) };
    let mut gens = Vec::new();
    let mut e0 = vec![0u32; n];
    e0[0] = 1;
    gens.push(Permutation::from_images(
        (0..total)
            .map(|x| {
                let v = to_vec(x);
                let w: Vec<u32> = v.iter().zip(&e0).map(|(a, b)| f.add(*a, *b)).collect();
                to_index(&w)
            })
            .collect(),
    )?);
    for m in linear {
        if m.dim() != n {
            return Err(Error::DegreeMismatch {
                expected: n,
                found: m.dim(),
            });
        }
        if !m.is_invertible(f) {
            return Err(Error::SingularMatrix);
        }
        gens.push(Permutation::from_images(
            (0..total)
                .map(|x| to_index(&super::matrix::vec_mul(f, &to_vec(x), m)))
                .collect(),
        )?);
    }
    gens.retain(|g| !g.is_identity());
    PermGroup::new(total, gens)
}
