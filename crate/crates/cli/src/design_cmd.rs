use std::fmt::Write as _;
use std::path::PathBuf;

use clap::Subcommand;
use ftpi_core::design::{
    flag_transitive, intersection_profile, invariant_partitions, orbit_design_check, verify_2_design, OrbitCheck,
    TwoDesignCheck,
};
use ftpi_core::io::load_design;

use crate::group_cmd::load;
use crate::output::{emit, parse_points};
use crate::{ConfigArgs, Outcome};

#[derive(Subcommand, Debug)]
pub enum DesignCommand {
    /// Check the 2-design axioms.
    Verify { file: PathBuf },
    /// Whether a group preserves the design and is transitive on flags.
    Flags {
        #[arg(long)]
        group: PathBuf,
        file: PathBuf,
    },
    /// Minimal invariant partitions of a group and their block intersection sizes.
    Partitions {
        #[arg(long)]
        group: PathBuf,
        file: PathBuf,
    },
    /// Whether the orbit of one block is the block set of a 2-design.
    OrbitCheck {
        #[arg(long)]
        group: PathBuf,
        /// Points of the base block, e.g. "0 1 4".
        #[arg(long)]
        block: String,
        #[arg(long)]
        lambda: usize,
    },
}

pub fn run(c: &DesignCommand, cfg: &ConfigArgs) -> anyhow::Result<Outcome> {
    let mut s = String::new();
    writeln!(s, "{}", cfg.header())?;
    let outcome = match c {
        DesignCommand::Verify { file } => {
            let d = load_design(file)?;
            match verify_2_design(&d)? {
                TwoDesignCheck::Design(r) => {
                    writeln!(s, "{r}")?;
                    writeln!(s, "nontrivial: {} fisher: {}", r.nontrivial, r.fisher)?;
                    Outcome::Ok
                }
                TwoDesignCheck::NotADesign(w) => {
                    writeln!(s, "not a 2-design: {w}")?;
                    Outcome::Mismatch
                }
            }
        }
        DesignCommand::Flags { group, file } => {
            let d = load_design(file)?;
            let g = load(group, cfg)?;
            let ft = flag_transitive(&d, &g)?;
            writeln!(s, "flag-transitive: {ft}")?;
            if ft {
                Outcome::Ok
            } else {
                Outcome::Mismatch
            }
        }
        DesignCommand::Partitions { group, file } => {
            let d = load_design(file)?;
            let g = load(group, cfg)?;
            let systems = invariant_partitions(&g)?;
            writeln!(s, "minimal invariant partitions: {}", systems.len())?;
            for p in &systems {
                let prof = intersection_profile(&d, p)?;
                write!(s, "{} classes of size {}: intersection sizes {:?}", p.d(), p.c(), prof.sizes)?;
                match prof.ell {
                    Some(l) => writeln!(s, ", ell = {l}")?,
                    None => writeln!(s, ", no constant ell")?,
                }
            }
            Outcome::Ok
        }
        DesignCommand::OrbitCheck { group, block, lambda } => {
            let g = load(group, cfg)?;
            let block = parse_points(block).map_err(anyhow::Error::msg)?;
            match orbit_design_check(&g, &block, *lambda, cfg.max_action_degree)? {
                OrbitCheck::Design(d) => {
                    writeln!(s, "2-({},{},{}) b={}", d.v(), block.len(), lambda, d.b())?;
                    Outcome::Ok
                }
                OrbitCheck::NotADesign {
                    alpha,
                    beta,
                    count,
                    expected,
                    blocks,
                } => {
                    writeln!(
                        s,
                        "not a 2-design: pair {{{alpha},{beta}}} lies in {count} of {blocks} blocks, expected {expected}"
                    )?;
                    Outcome::Mismatch
                }
            }
        }
    };
    emit(&s, None)?;
    Ok(outcome)
}
