//! Analysis machinery for flag-transitive point-imprimitive 2-designs:
//! a parameter sieve, a permutation-group engine, group constructors, a
//! design verifier and an elimination pipeline.

pub mod constructors;
pub mod design;
pub mod elimination;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod perm;
pub mod permgroup;
pub mod sieve;

pub use error::{Error, Result};
pub use perm::Permutation;
pub use permgroup::PermGroup;
