use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::Subcommand;
use ftpi_core::constructors::MatrixFixture;
use ftpi_core::io::{format_grp, load_group, metadata};
use ftpi_core::permgroup::{CosetAction, LatticeOptions, SubgroupLattice};
use ftpi_core::PermGroup;

use crate::output::{emit, read};
use crate::{ConfigArgs, Outcome};

#[derive(Subcommand, Debug)]
pub enum GroupCommand {
    /// Degree, order, transitivity, primitivity and minimal block systems.
    Info { file: PathBuf },
    /// Conjugacy classes of subgroups, optionally filtered.
    Subgroups {
        file: PathBuf,
        /// Keep classes whose index divides this number.
        #[arg(long)]
        index_div: Option<u64>,
        /// Keep classes with an orbit of this size on the points.
        #[arg(long)]
        orbit: Option<usize>,
        /// Keep classes with an orbit of this size on the cosets of a
        /// subgroup of order `--coset-order` (one action per class).
        #[arg(long, requires = "coset_order")]
        orbit_on_cosets: Option<usize>,
        #[arg(long)]
        coset_order: Option<u64>,
    },
    /// The action on the cosets of a subgroup of the given order, as `.grp`.
    Coset {
        file: PathBuf,
        #[arg(long)]
        order: u64,
        /// Which class of subgroups of that order, counted from 0.
        #[arg(long, default_value_t = 0)]
        class: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Loads a `.grp` or `.mat` file.
pub fn load(path: &Path, cfg: &ConfigArgs) -> anyhow::Result<PermGroup> {
    let g = if path.extension().is_some_and(|e| e == "mat") {
        MatrixFixture::parse(&read(path)?)?.to_group(cfg.max_action_degree)?
    } else {
        load_group(path, cfg.max_action_degree)?
    };
    Ok(g)
}

fn name_of(path: &Path) -> String {
    std::fs::read_to_string(path)
        .ok()
        .and_then(|t| metadata(&t).into_iter().find(|(k, _)| k == "name").map(|(_, v)| v))
        .unwrap_or_else(|| path.display().to_string())
}

fn lattice(g: &PermGroup, cfg: &ConfigArgs) -> anyhow::Result<SubgroupLattice> {
    let opts = LatticeOptions {
        max_enum_order: cfg.max_enum_order,
    };
    Ok(SubgroupLattice::compute(g, &opts)?)
}

fn lengths(g: &PermGroup) -> String {
    let mut l = g.orbit_lengths();
    l.sort_unstable();
    format!("{l:?}")
}

fn info(path: &Path, cfg: &ConfigArgs) -> anyhow::Result<String> {
    let g = load(path, cfg)?;
    let mut s = String::new();
    writeln!(s, "{}", cfg.header())?;
    writeln!(s, "name: {}", name_of(path))?;
    writeln!(s, "degree: {}", g.degree())?;
    writeln!(s, "order: {}", g.order())?;
    let transitive = g.is_transitive();
    writeln!(s, "transitive: {transitive}")?;
    if !transitive {
        writeln!(s, "orbit lengths: {}", lengths(&g))?;
        return Ok(s);
    }
    writeln!(s, "transitivity degree: {}", g.transitivity_degree())?;
    let systems = g.block_systems()?;
    writeln!(s, "primitive: {}", systems.is_empty())?;
    for p in &systems {
        writeln!(s, "block system: {} classes of size {}, block {:?}", p.d(), p.c(), p.classes()[0])?;
    }
    Ok(s)
}

fn subgroups(
    path: &Path,
    index_div: Option<u64>,
    orbit: Option<usize>,
    orbit_on_cosets: Option<usize>,
    coset_order: Option<u64>,
    cfg: &ConfigArgs,
) -> anyhow::Result<String> {
    let g = load(path, cfg)?;
    let lat = lattice(&g, cfg)?;
    let mut s = String::new();
    writeln!(s, "{}", cfg.header())?;
    writeln!(s, "group: {} (order {}), {} classes", name_of(path), g.order(), lat.classes().len())?;
    let base: Vec<_> = lat
        .classes()
        .iter()
        .filter(|c| index_div.is_none_or(|m| m % c.index() == 0))
        .filter(|c| orbit.is_none_or(|o| c.representative().orbit_lengths().contains(&o)))
        .collect();
    let Some(h) = coset_order else {
        writeln!(s, "matching classes: {}", base.len())?;
        for c in &base {
            writeln!(
                s,
                "order {} index {} conjugates {} orbits {}",
                c.order(),
                c.index(),
                c.class_size(),
                lengths(c.representative())
            )?;
        }
        return Ok(s);
    };
    let actions = lat.classes_of_order(h);
    if actions.is_empty() {
        bail!("no subgroup of order {h}");
    }
    for (i, a) in actions.iter().enumerate() {
        let act = CosetAction::new(&g, a.representative(), cfg.max_action_degree)?;
        let mut rows = Vec::new();
        for c in &base {
            let img = act.image_of_subgroup(c.representative())?;
            let l = img.orbit_lengths();
            if orbit_on_cosets.is_none_or(|o| l.contains(&o)) {
                let hits = orbit_on_cosets.map_or(0, |o| l.iter().filter(|&&x| x == o).count());
                rows.push((c, lengths(&img), hits));
            }
        }
        writeln!(s, "cosets of class {i} of order {h} (degree {}): matching classes: {}", act.degree(), rows.len())?;
        for (c, l, hits) in rows {
            write!(s, "order {} index {} conjugates {} orbits {l}", c.order(), c.index(), c.class_size())?;
            if let Some(o) = orbit_on_cosets {
                write!(s, " orbits of size {o}: {hits}")?;
            }
            writeln!(s)?;
        }
    }
    Ok(s)
}

fn coset(path: &Path, order: u64, class: usize, cfg: &ConfigArgs) -> anyhow::Result<String> {
    let g = load(path, cfg)?;
    let lat = lattice(&g, cfg)?;
    let classes = lat.classes_of_order(order);
    let a = classes
        .get(class)
        .with_context(|| format!("{} classes of subgroups of order {order}; class {class} requested", classes.len()))?;
    let act = CosetAction::new(&g, a.representative(), cfg.max_action_degree)?;
    let gv = act.group();
    let comments = vec![
        format!("name: {} on cosets of order {order}", name_of(path)),
        format!("degree: {}", gv.degree()),
        format!("order: {}", gv.order()),
        format!("construction: coset action, class {class} of subgroups of order {order}"),
    ];
    Ok(format_grp(gv, &comments))
}

pub fn run(c: &GroupCommand, cfg: &ConfigArgs) -> anyhow::Result<Outcome> {
    let text = match c {
        GroupCommand::Info { file } => info(file, cfg)?,
        GroupCommand::Subgroups {
            file,
            index_div,
            orbit,
            orbit_on_cosets,
            coset_order,
        } => subgroups(file, *index_div, *orbit, *orbit_on_cosets, *coset_order, cfg)?,
        GroupCommand::Coset { file, order, class, out } => {
            emit(&coset(file, *order, *class, cfg)?, out.as_ref())?;
            return Ok(Outcome::Ok);
        }
    };
    emit(&text, None)?;
    Ok(Outcome::Ok)
}
