//! Matrices over small finite fields and their actions on point sets.
//!
//! Vectors are rows; a matrix `M` acts by `x -> xM`, and the Frobenius
//! generator acts coordinatewise by `a -> a^p`.

use rustc_hash::FxHashMap;

use super::field::Field;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::permgroup::PermGroup;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Parse("matrix must be square and nonempty".into()));
        }
        Ok(Matrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        Matrix { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, a: u32) {
        self.data[i * self.n + j] = a;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        self.data.chunks(self.n)
    }

    pub fn mul(&self, f: &Field, other: &Matrix) -> Matrix {
        let n = self.n;
        let mut out = Matrix { n, data: vec![0; n * n] };
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0;
                for t in 0..n {
                    acc = f.add(acc, f.mul(self.get(i, t), other.get(t, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self, f: &Field) -> Result<Matrix> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| a.get(r, col) != 0).ok_or(Error::SingularMatrix)?;
            if pivot != col {
                for j in 0..n {
                    let (x, y) = (a.get(col, j), a.get(pivot, j));
                    a.set(col, j, y);
                    a.set(pivot, j, x);
                    let (x, y) = (inv.get(col, j), inv.get(pivot, j));
                    inv.set(col, j, y);
                    inv.set(pivot, j, x);
                }
            }
            let s = f.inv(a.get(col, col)).unwrap();
            for j in 0..n {
                a.set(col, j, f.mul(s, a.get(col, j)));
                inv.set(col, j, f.mul(s, inv.get(col, j)));
            }
            for r in 0..n {
                let t = a.get(r, col);
                if r == col || t == 0 {
                    continue;
                }
                for j in 0..n {
                    a.set(r, j, f.sub(a.get(r, j), f.mul(t, a.get(col, j))));
                    inv.set(r, j, f.sub(inv.get(r, j), f.mul(t, inv.get(col, j))));
                }
            }
        }
        Ok(inv)
    }

    pub fn is_invertible(&self, f: &Field) -> bool {
        self.inverse(f).is_ok()
    }
}

/// `x M` for a row vector `x`.
pub fn vec_mul(f: &Field, x: &[u32], m: &Matrix) -> Vec<u32> {
    (0..m.n)
        .map(|j| {
            x.iter()
                .enumerate()
                .fold(0, |acc, (i, &xi)| f.add(acc, f.mul(xi, m.get(i, j))))
        })
        .collect()
}

/// A generator of a semilinear group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    Matrix(Matrix),
    Frobenius,
}

impl Generator {
    pub fn apply(&self, f: &Field, x: &[u32]) -> Vec<u32> {
        match self {
            Generator::Matrix(m) => vec_mul(f, x, m),
            Generator::Frobenius => x.iter().map(|&a| f.frobenius(a)).collect(),
        }
    }
}

/// Scale `v` so its first nonzero coordinate is 1; `None` for the zero vector.
pub fn normalize(f: &Field, v: &[u32]) -> Option<Vec<u32>> {
    let lead = *v.iter().find(|&&a| a != 0)?;
    let s = f.inv(lead).unwrap();
    Some(v.iter().map(|&a| f.mul(s, a)).collect())
}

/// All normalized nonzero vectors of `GF(q)^n`, in lexicographic order.
pub fn projective_points(f: &Field, n: usize) -> Vec<Vec<u32>> {
    let q = f.q() as u64;
    let total = q.pow(n as u32);
    let mut pts: Vec<Vec<u32>> = (1..total)
        .map(|mut x| {
            let mut v = vec![0u32; n];
            for slot in v.iter_mut().rev() {
                *slot = (x % q) as u32;
                x /= q;
            }
            v
        })
        .filter(|v| normalize(f, v).as_deref() == Some(v.as_slice()))
        .collect();
    pts.sort();
    pts
}

/// Permutation group induced on `points` (normalized vectors) by the
/// generators. Fails if some image leaves the point set.
pub fn matrix_action(f: &Field, gens: &[Generator], points: &[Vec<u32>]) -> Result<PermGroup> {
    let n = points.first().map_or(0, |p| p.len());
    for g in gens {
        if let Generator::Matrix(m) = g {
            if m.dim() != n {
                return Err(Error::DegreeMismatch {
                    expected: n,
                    found: m.dim(),
                });
            }
            if !m.is_invertible(f) {
                return Err(Error::SingularMatrix);
            }
        }
    }
    let index: FxHashMap<&[u32], u32> = points
        .iter()
        .enumerate()
        .map(|(i, p)| (p.as_slice(), i as u32))
        .collect();
    let perms = gens
        .iter()
        .map(|g| {
            let images = points
                .iter()
                .map(|p| {
                    let img = normalize(f, &g.apply(f, p)).expect("invertible maps fix no nonzero vector to zero");
                    index.get(img.as_slice()).copied().ok_or_else(|| Error::NotPreserved("generator image leaves the point set".into()))
                })
                .collect::<Result<Vec<u32>>>()?;
            Permutation::from_images(images)
        })
        .collect::<Result<Vec<_>>>()?;
    PermGroup::new(points.len(), perms)
}
