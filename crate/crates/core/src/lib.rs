//! Exact Weyr canonical forms and the kernels of powers of the Sylvester
//! operator `φ_AB(X) = AX − XB`.
//!
//! Everything is computed over the rationals with exact arithmetic:
//!
//! * [`matrix`] and [`poly`]: dense rational linear algebra (RREF, nullspaces,
//!   subspace intersection, characteristic polynomials, rational roots).
//! * [`weyr`]: partitions, Weyr characteristics, Weyr matrices and the
//!   similarity transform to Weyr canonical form.
//! * [`sylvester`]: the operator as a concrete linear map plus a brute-force
//!   vectorization oracle for kernel dimensions.
//! * [`kernel`]: closed-form kernel dimensions, the operator's eigenvalues and
//!   Weyr structure, centralizer dimensions and the coefficient systems that
//!   drive basis construction.
//! * [`basis`]: explicit kernel bases built from the block-embedding calculus.

pub mod basis;
pub mod error;
pub mod kernel;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod sylvester;
pub mod weyr;

pub use basis::{BasisElement, BlockType, OperatorBasisElement};
pub use error::{Error, Result};
pub use kernel::{CoefficientSolution, InvariantTable, KernelDimReport, OperatorWeyr};
pub use matrix::{Matrix, Rref};
pub use poly::Polynomial;
pub use rational::Rational;
pub use sylvester::{SylvesterOperator, Verdict};
pub use weyr::{EigenStructure, Partition, WeyrDecomposition};
