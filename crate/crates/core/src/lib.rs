pub mod duality;
pub mod enveloping;
pub mod error;
pub mod field;
pub mod harness;
pub mod lie;
pub mod linalg;
pub mod outcome;
pub mod repr;

pub use error::{Error, Result};
pub use field::{koszul_sign, supertrace, Fp, Parity, Scalar};
pub use linalg::{determinant, nullspace, subspace_equal, Matrix, SparseMatrix, SubspaceBasis};
