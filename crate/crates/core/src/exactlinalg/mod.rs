//! Exact scalars over `F_p` and `Q`, and sparse rank computations.

mod field;
mod matrix;
mod rank;

pub use field::{make_field, FieldElement, FieldKind, FieldSpec};
pub use matrix::{kernel_dim, rank_of, SparseMatrix};
