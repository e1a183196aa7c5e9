//! Constructors for the concrete permutation groups used as fixtures.

pub mod classical;
pub mod field;
pub mod matrix;
pub mod projective;
pub mod special;
pub mod standard;

pub use field::Field;
pub use matrix::{matrix_action, projective_points, Generator, Matrix};
pub use projective::{affine_group, affine_line_group, projective_line_group, LineVariant, MultiplierGroup};
pub use standard::{
    action_on_k_subsets, alternating, cyclic, dihedral, k_subsets, standard_group, symmetric, StandardKind,
};
pub use classical::{projective_linear_group, MatrixFixture, MatrixSpace};
pub use special::{coset_action_by_order, mathieu_11, mathieu_22, mathieu_24};
