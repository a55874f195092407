//! Exact Loday chain complexes `L_X(A; C)` for finite pointed simplicial sets
//! and weight-graded commutative augmented algebras, with homology dimensions
//! over prime fields and the rationals.

pub mod algebra;
pub mod error;
pub mod exactlinalg;
pub mod loday;
pub mod oracle;
pub mod simplicial;
pub mod stability;

pub use algebra::{Coefficients, GradedAlgebra};
pub use error::{Error, Result};
pub use exactlinalg::{FieldElement, FieldSpec, SparseMatrix};
pub use loday::{HomologyTable, LodayComplex, LodayOptions};
pub use simplicial::{PointedSimplicialSet, SpaceExpr};
pub use stability::{ComparisonReport, Verdict};
