//! The Sylvester operator `φ_AB(X) = AX − XB` as a concrete linear map.
//!
//! The oracle functions here work on the vectorized operator only: they take
//! exact matrix powers of `Φ = I_n ⊗ A − Bᵀ ⊗ I_m` and row-reduce. Nothing in
//! this module knows about Weyr characteristics.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::{subspace_intersection, Matrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SylvesterOperator {
    a: Matrix,
    b: Matrix,
}

/// Outcome of checking a proposed kernel basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    WrongShape { index: usize },
    NotAnnihilated { index: usize },
    Dependent,
    CountMismatch { expected: usize, found: usize },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => write!(f, "holds"),
            Verdict::WrongShape { index } => write!(f, "element {index} has the wrong shape"),
            Verdict::NotAnnihilated { index } => {
                write!(f, "element {index} is not annihilated")
            }
            Verdict::Dependent => write!(f, "elements are linearly dependent"),
            Verdict::CountMismatch { expected, found } => {
                write!(f, "{found} elements but the kernel has dimension {expected}")
            }
        }
    }
}

impl SylvesterOperator {
    /// `a` is `m × m`, `b` is `n × n`; the operator acts on `m × n` matrices.
    pub fn new(a: Matrix, b: Matrix) -> Result<Self> {
        for m in [&a, &b] {
            if !m.is_square() {
                return Err(Error::NotSquare {
                    rows: m.rows(),
                    cols: m.cols(),
                });
            }
        }
        Ok(SylvesterOperator { a, b })
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn b(&self) -> &Matrix {
        &self.b
    }

    /// Shape `(m, n)` of the matrices the operator acts on.
    pub fn domain_shape(&self) -> (usize, usize) {
        (self.a.rows(), self.b.rows())
    }

    /// `AX − XB`.
    pub fn apply(&self, x: &Matrix) -> Result<Matrix> {
        if x.shape() != self.domain_shape() {
            let (m, n) = self.domain_shape();
            return Err(Error::ShapeMismatch(format!(
                "operator acts on {m}x{n} matrices, got {}x{}",
                x.rows(),
                x.cols()
            )));
        }
        self.a.matmul(x)?.sub(&x.matmul(&self.b)?)
    }

    /// `φ^k(X)`.
    pub fn apply_pow(&self, x: &Matrix, k: usize) -> Result<Matrix> {
        let mut y = x.clone();
        for _ in 0..k {
            if y.is_zero() {
                break;
            }
            y = self.apply(&y)?;
        }
        Ok(y)
    }

    /// `Φ = I_n ⊗ A − Bᵀ ⊗ I_m`, so that `Φ·vec(X) = vec(AX − XB)` with
    /// column-stacking `vec`.
    pub fn vectorize(&self) -> Matrix {
        let (m, n) = self.domain_shape();
        Matrix::identity(n)
            .kron(&self.a)
            .sub(&self.b.transpose().kron(&Matrix::identity(m)))
            .expect("kron shapes agree")
    }

    /// `[nullity(Φ), nullity(Φ²), …, nullity(Φ^k_max)]`.
    pub fn oracle_kernel_dims(&self, k_max: usize) -> Vec<usize> {
        let phi = self.vectorize();
        let mut power = phi.clone();
        let mut dims = Vec::with_capacity(k_max);
        for k in 1..=k_max {
            if k > 1 {
                power = power.matmul(&phi).expect("square");
            }
            dims.push(power.nullity());
        }
        dims
    }

    /// Oracle kernel dimensions up to and including the first power at which
    /// they stop growing (at most `mn + 1` powers).
    pub fn oracle_kernel_profile(&self) -> Vec<usize> {
        let phi = self.vectorize();
        let limit = phi.rows() + 1;
        let mut power = phi.clone();
        let mut dims = vec![power.nullity()];
        while dims.len() < limit {
            power = power.matmul(&phi).expect("square");
            let d = power.nullity();
            let stable = d == *dims.last().expect("non-empty");
            dims.push(d);
            if stable {
                break;
            }
        }
        dims
    }

    /// `dim(ker φ ∩ im φ^ℓ)`.
    pub fn oracle_ker_cap_im(&self, ell: usize) -> usize {
        let phi = self.vectorize();
        let kernel = phi.nullspace();
        let image = phi.pow(ell).expect("square").column_space();
        subspace_intersection(&kernel, &image)
            .expect("same ambient space")
            .cols()
    }

    /// Checks that `basis` is a basis of `ker φ^k`: every element is killed by
    /// `φ^k`, the elements are independent, and their number equals the
    /// oracle nullity of `Φ^k`.
    pub fn verify_kernel_basis(&self, k: usize, basis: &[Matrix]) -> Verdict {
        self.check_kernel_basis(k, basis, || {
            if k == 0 {
                0
            } else {
                *self.oracle_kernel_dims(k).last().expect("k >= 1")
            }
        })
    }

    /// Like [`SylvesterOperator::verify_kernel_basis`] with the expected
    /// dimension supplied by the caller.
    pub fn verify_kernel_basis_count(&self, k: usize, basis: &[Matrix], expected: usize) -> Verdict {
        self.check_kernel_basis(k, basis, || expected)
    }

    fn check_kernel_basis(&self, k: usize, basis: &[Matrix], expected: impl FnOnce() -> usize) -> Verdict {
        let (m, n) = self.domain_shape();
        if let Some(index) = basis.iter().position(|x| x.shape() != (m, n)) {
            return Verdict::WrongShape { index };
        }
        let stacked = stack_vectorized(basis, m * n);
        let phi = self.vectorize();
        let mut image = stacked.clone();
        for _ in 0..k {
            if image.is_zero() {
                break;
            }
            image = phi.matmul(&image).expect("shapes agree");
        }
        if let Some(index) = (0..basis.len()).find(|&j| (0..m * n).any(|i| !image[(i, j)].is_zero())) {
            return Verdict::NotAnnihilated { index };
        }
        if stacked.rank() != basis.len() {
            return Verdict::Dependent;
        }
        let expected = expected();
        if expected != basis.len() {
            return Verdict::CountMismatch {
                expected,
                found: basis.len(),
            };
        }
        Verdict::Holds
    }
}

/// The vectorized `elements` as the columns of an `ambient × len` matrix.
pub fn stack_vectorized(elements: &[Matrix], ambient: usize) -> Matrix {
    let mut out = Matrix::zeros(ambient, elements.len());
    for (j, x) in elements.iter().enumerate() {
        for (i, v) in x.vectorize().entries().iter().enumerate() {
            if !v.is_zero() {
                out[(i, j)] = v.clone();
            }
        }
    }
    out
}

/// Whether the vectorizations of `elements` are linearly independent.
pub fn vectorized_independent(elements: &[Matrix], ambient: usize) -> bool {
    vectorized_rank(elements, ambient) == elements.len()
}

/// Rank of the span of the vectorized `elements`.
pub fn vectorized_rank(elements: &[Matrix], ambient: usize) -> usize {
    stack_vectorized(elements, ambient).rank()
}
