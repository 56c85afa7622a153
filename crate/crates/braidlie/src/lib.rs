//! Exact symbolic engine for quantum Lie algebras, braided Lie algebras and
//! their enveloping algebras, built from R-matrix and finite-group data.
//!
//! Everything is computed over the exact coefficient field `Q(q, r_ij)`; all
//! identity checks compare linear maps entry by entry and report the first
//! failing basis input on mismatch.

pub mod linalg;
pub mod rmatrix;
pub mod report;
pub mod scalar;
pub mod tensor;

pub use report::{AxiomCheck, AxiomReport, Status, Witness};
pub use scalar::{Scalar, ScalarError, Var};
pub use tensor::{Tensor, TensorError};
