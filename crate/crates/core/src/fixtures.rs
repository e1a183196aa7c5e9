//! The catalog of fixture files: every group, matrix set and design used
//! by the elimination manifest, built from the constructors.

use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::constructors::classical::{sl4_2_fixture, sp6_2_fixture, su3_3_fixture};
use crate::constructors::special::{affine_16, irreducible_subgroups_gl4_2};
use crate::constructors::{
    action_on_k_subsets, affine_group, affine_line_group, alternating, coset_action_by_order, cyclic,
    dihedral, mathieu_11, mathieu_22, projective_line_group, projective_linear_group, symmetric, Field,
    LineVariant, Matrix, MultiplierGroup,
};
use crate::design::Design;
use crate::error::{Error, Result};
use crate::io::{format_dsg, format_grp};
use crate::perm::Permutation;
use crate::permgroup::PermGroup;

/// Enumeration bound used while building fixtures.
const BUILD_ENUM_ORDER: u64 = 25000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureFile {
    /// Path relative to the fixture directory.
    pub path: String,
    pub contents: String,
}

type Builder = Box<dyn Fn() -> Result<PermGroup> + Send + Sync>;

struct GroupSpec {
    path: String,
    name: String,
    construction: String,
    build: Builder,
}

fn spec(path: &str, name: &str, construction: &str, build: Builder) -> GroupSpec {
    GroupSpec {
        path: path.to_string(),
        name: name.to_string(),
        construction: construction.to_string(),
        build,
    }
}

fn line(q: u32, v: LineVariant) -> Builder {
    Box::new(move || projective_line_group(q, v))
}

fn alt(n: usize) -> Builder {
    Box::new(move || Ok(alternating(n)))
}

fn sym(n: usize) -> Builder {
    Box::new(move || Ok(symmetric(n)))
}

fn pairs_of(group: fn() -> Result<PermGroup>) -> Builder {
    Box::new(move || action_on_k_subsets(&group()?, 2, 100_000))
}

fn cosets(group: fn() -> Result<PermGroup>, order: u64) -> Builder {
    Box::new(move || coset_action_by_order(&group()?, order, BUILD_ENUM_ORDER))
}

fn alt_sym(deg: usize) -> Vec<GroupSpec> {
    vec![
        spec(&format!("deg{deg}/a{deg}.grp"), &format!("A{deg}"), "natural action", alt(deg)),
        spec(&format!("deg{deg}/s{deg}.grp"), &format!("S{deg}"), "natural action", sym(deg)),
    ]
}

fn agl_3_2() -> Result<PermGroup> {
    let f = Field::new(2)?;
    let m = |rows: Vec<Vec<u32>>| Matrix::from_rows(rows).unwrap();
    affine_group(
        &f,
        3,
        &[
            m(vec![vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]]),
            m(vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]]),
        ],
    )
}

fn group_specs() -> Vec<GroupSpec> {
    use LineVariant::*;
    let mut out = vec![
        spec("deg8/agl_1_8.grp", "AGL(1,8)", "x -> ax+b on GF(8)", Box::new(|| affine_line_group(8, MultiplierGroup::Full, false))),
        spec("deg8/agaml_1_8.grp", "AGammaL(1,8)", "x -> ax^s+b on GF(8)", Box::new(|| affine_line_group(8, MultiplierGroup::Full, true))),
        spec("deg8/agl_3_2.grp", "AGL(3,2)", "affine maps of GF(2)^3", Box::new(agl_3_2)),
        spec("deg8/psl_2_7.grp", "PSL(2,7)", "projective line over GF(7)", line(7, PSL)),
        spec("deg8/pgl_2_7.grp", "PGL(2,7)", "projective line over GF(7)", line(7, PGL)),
    ];
    out.extend(alt_sym(8));
    out.extend([
        spec("deg10/a5_pairs.grp", "A5", "action on 2-subsets of 5 points", pairs_of(|| Ok(alternating(5)))),
        spec("deg10/s5_pairs.grp", "S5", "action on 2-subsets of 5 points", pairs_of(|| Ok(symmetric(5)))),
        spec("deg10/psl_2_9.grp", "PSL(2,9)", "projective line over GF(9)", line(9, PSL)),
        spec("deg10/psigmal_2_9.grp", "S6", "PSigmaL(2,9) on the projective line", line(9, PSigmaL)),
        spec("deg10/pgl_2_9.grp", "PGL(2,9)", "projective line over GF(9)", line(9, PGL)),
        spec("deg10/m10.grp", "M10", "index-2 overgroup of PSL(2,9) in PGammaL(2,9) other than PGL and PSigmaL", line(9, M10)),
        spec("deg10/pgaml_2_9.grp", "PGammaL(2,9)", "projective line over GF(9)", line(9, PGammaL)),
    ]);
    out.extend(alt_sym(10));
    out.extend([
        spec("deg11/c11.grp", "C11", "regular cyclic group", Box::new(|| Ok(cyclic(11)))),
        spec("deg11/d22.grp", "D22", "dihedral group of the 11-gon", Box::new(|| dihedral(11))),
        spec("deg11/f55.grp", "11:5", "x -> ax+b, a a nonzero square", Box::new(|| affine_line_group(11, MultiplierGroup::Index(2), false))),
        spec("deg11/agl_1_11.grp", "AGL(1,11)", "x -> ax+b on GF(11)", Box::new(|| affine_line_group(11, MultiplierGroup::Full, false))),
        spec("deg11/psl_2_11.grp", "PSL(2,11)", "cosets of a subgroup of order 60", cosets(|| projective_line_group(11, LineVariant::PSL), 60)),
        spec("deg11/m11.grp", "M11", "standard generators", Box::new(|| Ok(mathieu_11()))),
    ]);
    out.extend(alt_sym(11));
    out.extend([
        spec("deg15/a6_pairs.grp", "A6", "action on 2-subsets of 6 points", pairs_of(|| Ok(alternating(6)))),
        spec("deg15/s6_pairs.grp", "S6", "action on 2-subsets of 6 points", pairs_of(|| Ok(symmetric(6)))),
        spec("deg15/a7.grp", "A7", "cosets of a subgroup of order 168", cosets(|| Ok(alternating(7)), 168)),
        spec("deg15/psl_4_2.grp", "PSL(4,2)", "SL(4,2) on the points of PG(3,2)", Box::new(|| sl4_2_fixture()?.to_group(100))),
    ]);
    out.extend(alt_sym(15));
    out.extend(alt_sym(16));
    out.extend([
        spec("deg21/a7_pairs.grp", "A7", "action on 2-subsets of 7 points", pairs_of(|| Ok(alternating(7)))),
        spec("deg21/s7_pairs.grp", "S7", "action on 2-subsets of 7 points", pairs_of(|| Ok(symmetric(7)))),
        spec("deg21/pgl_2_7.grp", "PGL(2,7)", "cosets of a subgroup of order 16", cosets(|| projective_line_group(7, LineVariant::PGL), 16)),
        spec("deg21/psl_3_4.grp", "PSL(3,4)", "points of PG(2,4)", Box::new(|| projective_linear_group(3, 4, LineVariant::PSL))),
        spec("deg21/psigmal_3_4.grp", "PSigmaL(3,4)", "points of PG(2,4)", Box::new(|| projective_linear_group(3, 4, LineVariant::PSigmaL))),
        spec("deg21/pgl_3_4.grp", "PGL(3,4)", "points of PG(2,4)", Box::new(|| projective_linear_group(3, 4, LineVariant::PGL))),
        spec("deg21/pgaml_3_4.grp", "PGammaL(3,4)", "points of PG(2,4)", Box::new(|| projective_linear_group(3, 4, LineVariant::PGammaL))),
    ]);
    out.extend(alt_sym(21));
    out.extend([
        spec("deg22/m22.grp", "M22", "two-point stabilizer in M24", Box::new(|| mathieu_22(false))),
        spec("deg22/m22_2.grp", "M22:2", "stabilizer of a 2-set in M24", Box::new(|| mathieu_22(true))),
    ]);
    out.extend(alt_sym(22));
    out.extend([
        spec("deg28/pgl_2_7_pairs.grp", "PGL(2,7)", "action on 2-subsets of the projective line over GF(7)", pairs_of(|| projective_line_group(7, LineVariant::PGL))),
        spec("deg28/psl_2_8.grp", "PSL(2,8)", "cosets of a subgroup of order 18", cosets(|| projective_line_group(8, LineVariant::PSL), 18)),
        spec("deg28/pgaml_2_8.grp", "PGammaL(2,8)", "cosets of a subgroup of order 54", cosets(|| projective_line_group(8, LineVariant::PGammaL), 54)),
        spec("deg28/psl_2_27.grp", "PSL(2,27)", "projective line over GF(27)", line(27, PSL)),
        spec("deg28/pgl_2_27.grp", "PGL(2,27)", "projective line over GF(27)", line(27, PGL)),
        spec("deg28/psigmal_2_27.grp", "PSigmaL(2,27)", "projective line over GF(27)", line(27, PSigmaL)),
        spec("deg28/pgaml_2_27.grp", "PGammaL(2,27)", "projective line over GF(27)", line(27, PGammaL)),
        spec("deg28/psu_3_3.grp", "PSU(3,3)", "SU(3,3) on the isotropic points of PG(2,9)", Box::new(|| su3_3_fixture(false)?.to_group(100))),
        spec("deg28/pgammau_3_3.grp", "PGammaU(3,3)", "SU(3,3) and the field automorphism on isotropic points", Box::new(|| su3_3_fixture(true)?.to_group(100))),
        spec("deg28/a8_pairs.grp", "A8", "action on 2-subsets of 8 points", pairs_of(|| Ok(alternating(8)))),
        spec("deg28/s8_pairs.grp", "S8", "action on 2-subsets of 8 points", pairs_of(|| Ok(symmetric(8)))),
        spec("deg28/psp_6_2.grp", "PSp(6,2)", "Sp(6,2) on the minus-type quadratic forms", Box::new(|| sp6_2_fixture()?.to_group(100))),
    ]);
    out.extend(alt_sym(28));
    out.extend([
        spec("deg33/psl_2_32.grp", "PSL(2,32)", "projective line over GF(32)", line(32, PSL)),
        spec("deg33/pgaml_2_32.grp", "PGammaL(2,32)", "projective line over GF(32)", line(32, PGammaL)),
    ]);
    for d in [33, 34, 46, 76] {
        out.extend(alt_sym(d));
    }
    out.extend([
        spec("misc/s5.grp", "S5", "natural action", sym(5)),
        spec("misc/a7.grp", "A7", "natural action", alt(7)),
        spec("misc/a8.grp", "A8", "natural action", alt(8)),
        spec("misc/s6.grp", "S6", "natural action", sym(6)),
        spec("misc/translations16.grp", "2^4", "translations of GF(2)^4", Box::new(|| affine_group(&Field::new(2)?, 4, &[Matrix::identity(4)]).map(|g| translations(&g)))),
        spec("misc/agl_2_3.grp", "AGL(2,3)", "affine maps of GF(3)^2", Box::new(agl_2_3)),
    ]);
    out
}

/// The regular translation subgroup of an affine group on GF(2)^4.
fn translations(_affine: &PermGroup) -> PermGroup {
    let gens = (0..4)
        .map(|j| Permutation::from_images((0..16u32).map(|x| x ^ (1 << j)).collect()).unwrap())
        .collect();
    PermGroup::new(16, gens).unwrap()
}

pub fn agl_2_3() -> Result<PermGroup> {
    let f = Field::new(3)?;
    let m = |rows: Vec<Vec<u32>>| Matrix::from_rows(rows).unwrap();
    affine_group(
        &f,
        2,
        &[
            m(vec![vec![1, 1], vec![0, 1]]),
            m(vec![vec![0, 1], vec![2, 0]]),
            m(vec![vec![2, 0], vec![0, 1]]),
        ],
    )
}

/// Development of `{0000,1000,0100,0010,0001,1111}` in GF(2)^4.
pub fn biplane16() -> Design {
    let base = [0b0000u32, 0b0001, 0b0010, 0b0100, 0b1000, 0b1111];
    let blocks = (0..16u32).map(|t| base.iter().map(|&x| x ^ t).collect()).collect();
    Design::new(16, blocks).unwrap()
}

/// Lines of AG(2,3) with points `x + 3y`.
pub fn affine_plane9() -> Design {
    let mut blocks: Vec<Vec<u32>> = Vec::new();
    for (dx, dy) in [(1u32, 0u32), (0, 1), (1, 1), (1, 2)] {
        for x in 0..3u32 {
            for y in 0..3u32 {
                let mut l: Vec<u32> = (0..3).map(|t| (x + t * dx) % 3 + 3 * ((y + t * dy) % 3)).collect();
                l.sort_unstable();
                if !blocks.contains(&l) {
                    blocks.push(l);
                }
            }
        }
    }
    Design::new(9, blocks).unwrap()
}

fn group_file(spec: &GroupSpec, g: &PermGroup) -> FixtureFile {
    let comments = vec![
        format!("name: {}", spec.name),
        format!("degree: {}", g.degree()),
        format!("order: {}", g.order()),
        format!("construction: {}", spec.construction),
    ];
    FixtureFile {
        path: format!("groups/{}", spec.path),
        contents: format_grp(g, &comments),
    }
}

/// Every fixture file with its contents, in path order.
pub fn catalog() -> Result<Vec<FixtureFile>> {
    let specs = group_specs();
    let mut files = specs
        .par_iter()
        .map(|s| {
            let g = (s.build)().map_err(|e| Error::Fixture(format!("{}: {e}", s.path)))?;
            Ok(group_file(s, &g))
        })
        .collect::<Result<Vec<_>>>()?;
    for (i, h) in irreducible_subgroups_gl4_2(BUILD_ENUM_ORDER)?.iter().enumerate() {
        let g = affine_16(h)?;
        let s = spec(
            &format!("deg16/affine_{:02}_{}.grp", i + 1, h.order),
            &format!("2^4:H, |H| = {}", h.order),
            &format!("translations of GF(2)^4 extended by irreducible class {} of GL(4,2)", i + 1),
            Box::new(|| unreachable!()),
        );
        files.push(group_file(&s, &g));
    }
    for (name, fx, what) in [
        ("psl_4_2.mat", sl4_2_fixture()?, "SL(4,2), transvection generators"),
        ("psu_3_3.mat", su3_3_fixture(false)?, "SU(3,3), unitary transvections, Hermitian form sum x_i^4"),
        ("pgammau_3_3.mat", su3_3_fixture(true)?, "SU(3,3) with the field automorphism"),
        ("psp_6_2.mat", sp6_2_fixture()?, "Sp(6,2), symplectic transvections, acting on minus-type forms"),
    ] {
        files.push(FixtureFile {
            path: format!("matrices/{name}"),
            contents: format!("# {what}\n{}", fx.format()),
        });
    }
    files.push(FixtureFile {
        path: "designs/biplane16.dsg".into(),
        contents: format_dsg(&biplane16(), &["2-(16,6,2) developed from a difference set in GF(2)^4".into()]),
    });
    files.push(FixtureFile {
        path: "designs/affine_plane9.dsg".into(),
        contents: format_dsg(&affine_plane9(), &["lines of AG(2,3), point x + 3y".into()]),
    });
    files.sort_by(|a, b| a.path.cmp(&b.path));
    Ok(files)
}

pub fn generate(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    for f in catalog()? {
        let path = dir.join(&f.path);
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent)?;
        }
        std::fs::write(&path, &f.contents)?;
        written.push(path);
    }
    Ok(written)
}
