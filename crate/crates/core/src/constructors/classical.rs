//! Linear, unitary and symplectic groups in their small-degree actions.

use rustc_hash::FxHashMap;

use super::field::Field;
use super::matrix::{matrix_action, projective_points, vec_mul, Generator, Matrix};
use super::projective::{sl2_generators, LineVariant};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::permgroup::PermGroup;

/// Transvections `I + E_ij` plus a torus element; generates SL(n,q).
pub fn sl_generators(f: &Field, n: usize) -> Vec<Generator> {
    if n == 2 {
        return sl2_generators(f);
    }
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut m = Matrix::identity(n);
                m.set(i, j, 1);
                gens.push(Generator::Matrix(m));
            }
        }
    }
    if f.q() > 2 {
        let w = f.primitive_element();
        let mut d = Matrix::identity(n);
        d.set(0, 0, w);
        d.set(1, 1, f.inv(w).unwrap());
        gens.push(Generator::Matrix(d));
    }
    gens
}

/// PSL, PGL, PΣL or PΓL(n,q) on the points of PG(n-1,q).
pub fn projective_linear_group(n: usize, q: u32, variant: LineVariant) -> Result<PermGroup> {
    let f = Field::new(q)?;
    let mut gens = sl_generators(&f, n);
    let w = f.primitive_element();
    let mut diag = Matrix::identity(n);
    diag.set(0, 0, w);
    match variant {
        LineVariant::PSL => {}
        LineVariant::PGL => gens.push(Generator::Matrix(diag)),
        LineVariant::PSigmaL => gens.push(Generator::Frobenius),
        LineVariant::PGammaL => {
            gens.push(Generator::Matrix(diag));
            gens.push(Generator::Frobenius);
        }
        LineVariant::M10 => return Err(Error::Hypothesis("M10 exists only on the projective line over GF(9)".into())),
    }
    matrix_action(&f, &gens, &projective_points(&f, n))
}

/// Square root of `q`, for fields carrying the involution `a -> a^r`, `r^2 = q`.
fn unitary_root(f: &Field) -> Result<u32> {
    if f.e() % 2 != 0 {
        return Err(Error::UnsupportedField(f.q()));
    }
    Ok(f.p().pow(f.e() / 2))
}

fn conj(f: &Field, a: u32, r: u32) -> u32 {
    f.pow(a, r as u64)
}

/// Points of PG(n-1, q) isotropic for the Hermitian form `sum x_i x_i^r`.
pub fn isotropic_points(f: &Field, n: usize) -> Result<Vec<Vec<u32>>> {
    let r = unitary_root(f)?;
    Ok(projective_points(f, n)
        .into_iter()
        .filter(|x| x.iter().fold(0, |acc, &a| f.add(acc, f.mul(a, conj(f, a, r)))) == 0)
        .collect())
}

/// Unitary transvections `x -> x + a h(x,u) u` for isotropic `u` and a fixed
/// nonzero `a` with `a + a^r = 0`. They generate SU(n, r).
pub fn unitary_transvections(f: &Field, n: usize) -> Result<Vec<Matrix>> {
    let r = unitary_root(f)?;
    let a = (1..f.q())
        .find(|&a| f.add(a, conj(f, a, r)) == 0)
        .expect("trace-zero elements exist");
    let mut out = Vec::new();
    for u in isotropic_points(f, n)? {
        let mut m = Matrix::identity(n);
        for j in 0..n {
            for k in 0..n {
                let t = f.mul(a, f.mul(conj(f, u[j], r), u[k]));
                m.set(j, k, f.add(m.get(j, k), t));
            }
        }
        out.push(m);
    }
    Ok(out)
}

/// Add candidate generators one at a time, keeping those that enlarge the
/// group, until its order reaches `target`.
pub fn greedy_generators<T: Clone>(
    degree: usize,
    candidates: &[(T, Permutation)],
    target: u64,
) -> Result<(Vec<T>, PermGroup)> {
    let mut kept: Vec<(T, Permutation)> = Vec::new();
    let mut group = PermGroup::trivial(degree);
    for (tag, perm) in candidates {
        if group.order_u64() == Some(target) {
            break;
        }
        if group.contains(perm) {
            continue;
        }
        kept.push((tag.clone(), perm.clone()));
        group = PermGroup::new(degree, kept.iter().map(|(_, p)| p.clone()).collect())?;
    }
    if group.order_u64() != Some(target) {
        return Err(Error::Hypothesis(format!(
            "candidates generate a group of order {}, expected {target}",
            group.order()
        )));
    }
    Ok((kept.into_iter().map(|(t, _)| t).collect(), group))
}

/// Standard symplectic form on GF(2)^(2m): coordinates `i` and `m+i` pair.
pub fn symplectic_form(m: usize, x: &[u32], y: &[u32]) -> u32 {
    (0..m).map(|i| x[i] * y[m + i] + x[m + i] * y[i]).sum::<u32>() % 2
}

/// Symplectic transvections `x -> x + B(x,u) u` over GF(2).
pub fn symplectic_transvections(m: usize) -> Vec<Matrix> {
    let n = 2 * m;
    let f = Field::new(2).unwrap();
    projective_points(&f, n)
        .into_iter()
        .map(|u| {
            let mut t = Matrix::identity(n);
            for j in 0..n {
                let mut e = vec![0u32; n];
                e[j] = 1;
                if symplectic_form(m, &e, &u) == 1 {
                    for k in 0..n {
                        t.set(j, k, (t.get(j, k) + u[k]) % 2);
                    }
                }
            }
            t
        })
        .collect()
}

/// `Q_a(x) = sum x_i x_(m+i) + B(a, x)`: the quadratic forms polarizing to
/// the symplectic form. `Q_a` has minus type exactly when `Q_0(a) = 1`.
pub fn minus_type_forms(m: usize) -> Vec<Vec<u32>> {
    let f = Field::new(2).unwrap();
    projective_points(&f, 2 * m)
        .into_iter()
        .filter(|a| (0..m).map(|i| a[i] * a[m + i]).sum::<u32>() % 2 == 1)
        .collect()
}

fn q0(m: usize, x: &[u32]) -> u32 {
    (0..m).map(|i| x[i] * x[m + i]).sum::<u32>() % 2
}

/// Action of symplectic matrices on the minus-type forms by `Q -> Q∘g^(-1)`.
pub fn minus_form_action(m: usize, mats: &[Matrix]) -> Result<PermGroup> {
    let n = 2 * m;
    let f = Field::new(2).unwrap();
    let forms = minus_type_forms(m);
    let index: FxHashMap<&[u32], u32> = forms
        .iter()
        .enumerate()
        .map(|(i, a)| (a.as_slice(), i as u32))
        .collect();
    let basis: Vec<Vec<u32>> = (0..n)
        .map(|j| {
            let mut e = vec![0; n];
            e[j] = 1;
            e
        })
        .collect();
    let mut perms = Vec::new();
    for g in mats {
        if g.dim() != n {
            return Err(Error::DegreeMismatch {
                expected: n,
                found: g.dim(),
            });
        }
        let preserves = basis.iter().all(|x| {
            basis
                .iter()
                .all(|y| symplectic_form(m, &vec_mul(&f, x, g), &vec_mul(&f, y, g)) == symplectic_form(m, x, y))
        });
        if !preserves {
            return Err(Error::NotPreserved("matrix is not symplectic".into()));
        }
        let ginv = g.inverse(&f)?;
        let images = forms
            .iter()
            .map(|a| {
                // Q_a(x g^-1) = Q_0(x) + B(a', x); read a' off the basis
                let mut a2 = vec![0u32; n];
                for (j, e) in basis.iter().enumerate() {
                    let y = vec_mul(&f, e, &ginv);
                    let val = (q0(m, &y) + symplectic_form(m, a, &y) + q0(m, e)) % 2;
                    let partner = if j < m { j + m } else { j - m };
                    a2[partner] = val;
                }
                index
                    .get(a2.as_slice())
                    .copied()
                    .ok_or_else(|| Error::NotPreserved("image is not a minus-type form".into()))
            })
            .collect::<Result<Vec<u32>>>()?;
        perms.push(Permutation::from_images(images)?);
    }
    PermGroup::from_generators(forms.len(), &perms)
}

/// Which point set a matrix fixture acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixSpace {
    Projective,
    Hermitian,
    MinusForms,
}

/// Contents of a `.mat` file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFixture {
    pub field: Field,
    pub space: MatrixSpace,
    pub generators: Vec<Generator>,
}

impl MatrixFixture {
    pub fn dimension(&self) -> Option<usize> {
        self.generators.iter().find_map(|g| match g {
            Generator::Matrix(m) => Some(m.dim()),
            Generator::Frobenius => None,
        })
    }

    pub fn points(&self) -> Result<Vec<Vec<u32>>> {
        let n = self
            .dimension()
            .ok_or_else(|| Error::Fixture("matrix fixture has no matrices".into()))?;
        match self.space {
            MatrixSpace::Projective => Ok(projective_points(&self.field, n)),
            MatrixSpace::Hermitian => isotropic_points(&self.field, n),
            MatrixSpace::MinusForms => {
                if self.field.q() != 2 || n % 2 == 1 {
                    return Err(Error::UnsupportedField(self.field.q()));
                }
                Ok(minus_type_forms(n / 2))
            }
        }
    }

    pub fn to_group(&self, max_degree: u64) -> Result<PermGroup> {
        let pts = self.points()?;
        if pts.len() as u64 > max_degree {
            return Err(Error::DegreeExceeded {
                degree: pts.len() as u128,
                bound: max_degree,
            });
        }
        match self.space {
            MatrixSpace::MinusForms => {
                let mats: Vec<Matrix> = self
                    .generators
                    .iter()
                    .filter_map(|g| match g {
                        Generator::Matrix(m) => Some(m.clone()),
                        Generator::Frobenius => None,
                    })
                    .collect();
                minus_form_action(pts[0].len() / 2, &mats)
            }
            _ => {
                let g = matrix_action(&self.field, &self.generators, &pts)?;
                PermGroup::from_generators(g.degree(), g.generators())
            }
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut field: Option<Field> = None;
        let mut space = MatrixSpace::Projective;
        let mut generators = Vec::new();
        let mut rows: Vec<Vec<u32>> = Vec::new();
        let err = |line: usize, msg: String| Error::ParseLine { line, msg };
        let flush = |rows: &mut Vec<Vec<u32>>, gens: &mut Vec<Generator>, line: usize| -> Result<()> {
            if !rows.is_empty() {
                let m = Matrix::from_rows(std::mem::take(rows)).map_err(|e| err(line, e.to_string()))?;
                gens.push(Generator::Matrix(m));
            }
            Ok(())
        };
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                flush(&mut rows, &mut generators, line_no)?;
                continue;
            }
            let mut words = line.split_whitespace();
            let first = words.next().unwrap();
            match first {
                "field" => {
                    let nums: Vec<u32> = words
                        .map(|w| w.parse().map_err(|_| err(line_no, format!("bad number `{w}`"))))
                        .collect::<Result<_>>()?;
                    if nums.len() != 2 {
                        return Err(err(line_no, "expected `field p e`".into()));
                    }
                    let q = nums[0]
                        .checked_pow(nums[1])
                        .ok_or_else(|| err(line_no, "field too large".into()))?;
                    let f = Field::new(q).map_err(|e| err(line_no, e.to_string()))?;
                    if f.p() != nums[0] {
                        return Err(err(line_no, format!("{} is not prime", nums[0])));
                    }
                    field = Some(f);
                }
                "action" => {
                    space = match words.next() {
                        Some("projective") => MatrixSpace::Projective,
                        Some("hermitian") => MatrixSpace::Hermitian,
                        Some("minus-forms") => MatrixSpace::MinusForms,
                        other => return Err(err(line_no, format!("unknown action {other:?}"))),
                    };
                }
                "frobenius" => {
                    flush(&mut rows, &mut generators, line_no)?;
                    generators.push(Generator::Frobenius);
                }
                _ => {
                    let f = field
                        .as_ref()
                        .ok_or_else(|| err(line_no, "matrix row before `field` header".into()))?;
                    let row = line
                        .split_whitespace()
                        .map(|tok| {
                            let coeffs: Vec<u32> = tok
                                .split(',')
                                .map(|c| c.parse().map_err(|_| err(line_no, format!("bad coefficient `{c}`"))))
                                .collect::<Result<_>>()?;
                            f.from_coeffs(&coeffs).map_err(|e| err(line_no, e.to_string()))
                        })
                        .collect::<Result<Vec<u32>>>()?;
                    rows.push(row);
                }
            }
        }
        flush(&mut rows, &mut generators, text.lines().count())?;
        let field = field.ok_or_else(|| err(1, "missing `field p e` header".into()))?;
        Ok(MatrixFixture {
            field,
            space,
            generators,
        })
    }

    pub fn format(&self) -> String {
        let f = &self.field;
        let mut out = format!("field {} {}\n", f.p(), f.e());
        match self.space {
            MatrixSpace::Projective => {}
            MatrixSpace::Hermitian => out.push_str("action hermitian\n"),
            MatrixSpace::MinusForms => out.push_str("action minus-forms\n"),
        }
        for g in &self.generators {
            out.push('\n');
            match g {
                Generator::Frobenius => out.push_str("frobenius\n"),
                Generator::Matrix(m) => {
                    for row in m.rows() {
                        let toks: Vec<String> = row
                            .iter()
                            .map(|&a| {
                                f.coeffs(a)
                                    .iter()
                                    .map(|c| c.to_string())
                                    .collect::<Vec<_>>()
                                    .join(",")
                            })
                            .collect();
                        out.push_str(&toks.join(" "));
                        out.push('\n');
                    }
                }
            }
        }
        out
    }
}

/// SL(4,2) generated from the elementary transvections, reduced greedily.
pub fn sl4_2_fixture() -> Result<MatrixFixture> {
    let f = Field::new(2)?;
    let pts = projective_points(&f, 4);
    let cands = sl_generators(&f, 4)
        .into_iter()
        .map(|g| {
            let p = matrix_action(&f, std::slice::from_ref(&g), &pts)?;
            Ok((g, p.generators()[0].clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    let (generators, _) = greedy_generators(pts.len(), &cands, 20160)?;
    Ok(MatrixFixture {
        field: f,
        space: MatrixSpace::Projective,
        generators,
    })
}

/// SU(3,3) on its 28 isotropic points; with `frobenius` the extension PΓU(3,3).
pub fn su3_3_fixture(frobenius: bool) -> Result<MatrixFixture> {
    let f = Field::new(9)?;
    let pts = isotropic_points(&f, 3)?;
    let cands = unitary_transvections(&f, 3)?
        .into_iter()
        .map(|m| {
            let g = Generator::Matrix(m);
            let p = matrix_action(&f, std::slice::from_ref(&g), &pts)?;
            Ok((g, p.generators()[0].clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    let (mut generators, _) = greedy_generators(pts.len(), &cands, 6048)?;
    if frobenius {
        generators.push(Generator::Frobenius);
    }
    Ok(MatrixFixture {
        field: f,
        space: MatrixSpace::Hermitian,
        generators,
    })
}

/// Sp(6,2) acting on the 28 minus-type quadratic forms.
pub fn sp6_2_fixture() -> Result<MatrixFixture> {
    let cands = symplectic_transvections(3)
        .into_iter()
        .map(|m| {
            let p = minus_form_action(3, std::slice::from_ref(&m))?;
            let perm = p
                .generators()
                .first()
                .cloned()
                .unwrap_or_else(|| Permutation::identity(28));
            Ok((Generator::Matrix(m), perm))
        })
        .collect::<Result<Vec<_>>>()?;
    let (generators, _) = greedy_generators(28, &cands, 1451520)?;
    Ok(MatrixFixture {
        field: Field::new(2)?,
        space: MatrixSpace::MinusForms,
        generators,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl4_2_on_pg32() {
        let fx = sl4_2_fixture().unwrap();
        let g = fx.to_group(1000).unwrap();
        assert_eq!(g.degree(), 15);
        assert_eq!(g.order_u64(), Some(20160));
        assert_eq!(g.transitivity_degree(), 2);
    }

    #[test]
    fn psl_3_4_family() {
        let psl = projective_linear_group(3, 4, LineVariant::PSL).unwrap();
        assert_eq!(psl.degree(), 21);
        assert_eq!(psl.order_u64(), Some(20160));
        let pgl = projective_linear_group(3, 4, LineVariant::PGL).unwrap();
        assert_eq!(pgl.order_u64(), Some(60480));
        let pss = projective_linear_group(3, 4, LineVariant::PSigmaL).unwrap();
        assert_eq!(pss.order_u64(), Some(40320));
        let pgaml = projective_linear_group(3, 4, LineVariant::PGammaL).unwrap();
        assert_eq!(pgaml.order_u64(), Some(120960));
    }

    #[test]
    fn unitary_group_on_isotropic_points() {
        let f = Field::new(9).unwrap();
        assert_eq!(isotropic_points(&f, 3).unwrap().len(), 28);
        let su = su3_3_fixture(false).unwrap().to_group(1000).unwrap();
        assert_eq!(su.degree(), 28);
        assert_eq!(su.order_u64(), Some(6048));
        let pgu = su3_3_fixture(true).unwrap().to_group(1000).unwrap();
        assert_eq!(pgu.order_u64(), Some(12096));
        assert!(pgu.is_primitive().unwrap());
    }

    #[test]
    fn symplectic_group_on_minus_forms() {
        assert_eq!(minus_type_forms(3).len(), 28);
        let sp = sp6_2_fixture().unwrap().to_group(1000).unwrap();
        assert_eq!(sp.degree(), 28);
        assert_eq!(sp.order_u64(), Some(1451520));
        assert_eq!(sp.transitivity_degree(), 2);
    }

    #[test]
    fn mat_round_trip() {
        for fx in [sl4_2_fixture().unwrap(), su3_3_fixture(true).unwrap(), sp6_2_fixture().unwrap()] {
            let text = fx.format();
            let back = MatrixFixture::parse(&text).unwrap();
            assert_eq!(back, fx);
            assert_eq!(back.format(), text);
        }
    }

    #[test]
    fn mat_parse_errors() {
        assert!(matches!(
            MatrixFixture::parse("1 0\n0 1\n"),
            Err(Error::ParseLine { line: 1, .. })
        ));
        assert!(matches!(
            MatrixFixture::parse("field 3 1\n1 0\n0 7\n"),
            Err(Error::ParseLine { line: 3, .. })
        ));
        assert!(MatrixFixture::parse("field 4 1\n").is_err());
    }
}
