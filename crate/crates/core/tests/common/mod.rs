#![allow(dead_code)]

use std::collections::HashSet;
use std::path::PathBuf;

use ftpi_core::io::load_group;
use ftpi_core::sieve::{parse_csv, passes_all, ParameterTuple, Rational};
use ftpi_core::{PermGroup, Permutation};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn table1() -> Vec<ParameterTuple> {
    let text = std::fs::read_to_string(fixture_dir().join("table1.csv")).unwrap();
    parse_csv(&text).unwrap()
}

/// Line `n` of the table, 1-based.
pub fn line(n: usize) -> ParameterTuple {
    table1()[n - 1]
}

pub fn group(rel: &str) -> PermGroup {
    load_group(&fixture_dir().join(rel), 100_000).unwrap()
}

/// Every element generated by `gens`, by repeated multiplication; `None`
/// once more than `cap` elements are found.
pub fn naive_closure(degree: usize, gens: &[Permutation], cap: usize) -> Option<HashSet<Vec<u32>>> {
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Vec<u32>> = HashSet::from([id.images().to_vec()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = x.then(g);
            if seen.insert(y.images().to_vec()) {
                if seen.len() > cap {
                    return None;
                }
                frontier.push(y);
            }
        }
    }
    Some(seen)
}

pub fn random_perm<R: Rng>(rng: &mut R, degree: usize) -> Permutation {
    let mut images: Vec<u32> = (0..degree as u32).collect();
    images.shuffle(rng);
    Permutation::from_images(images).unwrap()
}

/// `count` random groups of degree 3..=8 and order at most `max_order`,
/// each with its naive element set.
pub fn random_groups(seed: u64, count: usize, max_order: usize) -> Vec<(PermGroup, HashSet<Vec<u32>>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(3..=8);
        let gens: Vec<Permutation> = (0..rng.gen_range(1..=3)).map(|_| random_perm(&mut rng, n)).collect();
        if let Some(elements) = naive_closure(n, &gens, max_order) {
            out.push((PermGroup::new(n, gens).unwrap(), elements));
        }
    }
    out
}

pub fn is_abelian(g: &PermGroup) -> bool {
    let gens = g.generators();
    gens.iter()
        .all(|a| gens.iter().all(|b| a.then(b) == b.then(a)))
}

/// Tuples with `v <= v_max` from a plain loop over `(c, d, ell, k)`,
/// keeping those that pass every sieve predicate.
pub fn brute_force_tuples(lambda: u64, v_max: u64) -> Vec<ParameterTuple> {
    let k_max = 2 * lambda * lambda * (lambda - 1);
    let mut out = Vec::new();
    for c in 2..=v_max / 2 {
        for d in 2..=v_max / c {
            let v = c * d;
            for ell in 2..=k_max {
                for k in (ell + 1..=k_max.min(v - 1)).filter(|k| k % ell == 0) {
                    // r(k-1) = lambda(v-1) with r = lambda(c-1)/(ell-1)
                    if (c - 1) * (k - 1) != (v - 1) * (ell - 1) {
                        continue;
                    }
                    let r = Rational::new(lambda * (c - 1), ell - 1);
                    let t = ParameterTuple {
                        lambda,
                        v,
                        k,
                        r,
                        b: r * Rational::from_integer(v) / Rational::from_integer(k),
                        c,
                        d,
                        ell,
                    };
                    if passes_all(&t) {
                        out.push(t);
                    }
                }
            }
        }
    }
    out
}

/// A scratch copy of the fixture directory.
pub fn fixture_copy() -> tempfile::TempDir {
    fn copy(from: &std::path::Path, to: &std::path::Path) {
        std::fs::create_dir_all(to).unwrap();
        for entry in std::fs::read_dir(from).unwrap() {
            let entry = entry.unwrap();
            let target = to.join(entry.file_name());
            if entry.file_type().unwrap().is_dir() {
                copy(&entry.path(), &target);
            } else {
                std::fs::copy(entry.path(), target).unwrap();
            }
        }
    }
    let dir = tempfile::tempdir().unwrap();
    copy(&fixture_dir(), dir.path());
    dir
}
