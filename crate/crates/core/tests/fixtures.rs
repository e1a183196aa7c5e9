mod common;

use common::fixture_dir;
use ftpi_core::elimination::Manifest;
use ftpi_core::fixtures::{catalog, generate};
use ftpi_core::io::{load_design, load_group};
use ftpi_core::constructors::MatrixFixture;

#[test]
fn checked_in_fixtures_are_regenerated_byte_for_byte() {
    let files = catalog().unwrap();
    assert!(!files.is_empty());
    for f in &files {
        let on_disk = std::fs::read_to_string(fixture_dir().join(&f.path))
            .unwrap_or_else(|e| panic!("{}: {e}", f.path));
        assert!(on_disk == f.contents, "{} differs from its generator", f.path);
    }
}

#[test]
fn generate_writes_the_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let written = generate(dir.path()).unwrap();
    assert_eq!(written.len(), catalog().unwrap().len());
    for f in catalog().unwrap() {
        assert_eq!(std::fs::read_to_string(dir.path().join(&f.path)).unwrap(), f.contents);
    }
}

#[test]
fn manifest_files_load_with_declared_degrees() {
    let manifest = Manifest::load(&fixture_dir().join("manifest.toml")).unwrap();
    assert_eq!(manifest.line.len(), 15);
    for entry in &manifest.line {
        let t = entry.parameter_tuple();
        for (set, degree) in [(&entry.d, t.d), (&entry.l, t.c)] {
            for rel in set.iter().flat_map(|s| &s.fixtures) {
                let g = load_group(&fixture_dir().join(rel), 100_000).unwrap();
                assert_eq!(g.degree() as u64, degree, "{}: {rel}", entry.id);
                assert!(g.is_transitive(), "{rel}");
            }
        }
    }
}

#[test]
fn design_and_matrix_fixtures_parse() {
    for d in ["affine_plane9.dsg", "biplane16.dsg"] {
        load_design(&fixture_dir().join("designs").join(d)).unwrap();
    }
    for entry in std::fs::read_dir(fixture_dir().join("matrices")).unwrap() {
        let path = entry.unwrap().path();
        let m = MatrixFixture::parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let g = m.to_group(100_000).unwrap();
        assert!(g.is_transitive(), "{}", path.display());
    }
}
