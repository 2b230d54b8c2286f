//! Exact arithmetic for linear rank-metric codes.

pub mod error;
pub mod fields;
pub mod genweights;
pub mod linalg;
pub mod macwilliams;
pub mod matrix_codes;
pub mod qpolymatroid;
pub mod sample;
pub mod vector_codes;

pub use error::{Budget, Error, Result};
pub use fields::{ArithOp, Field, FieldBasis, FieldElement};
pub use linalg::{enumerate_gl, enumerate_subspaces, gaussian, gl_order, Mat, Subspace};
pub use matrix_codes::{are_equivalent, extension_exists, standard_anticode, support, Isometry, MatrixCode};
pub use qpolymatroid::{CodePolymatroid, QPolymatroid};
pub use vector_codes::{rank_weight, v_equivalent, VIsometry, VectorCode};
