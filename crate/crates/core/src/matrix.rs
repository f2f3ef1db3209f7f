//! Dense matrices over the rationals.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A dense `rows × cols` rational matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Result of Gauss–Jordan elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub pivot_columns: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivot_columns.len()
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != ncols) {
            return Err(Error::ShapeMismatch(format!(
                "row {i} has {} entries, expected {ncols}",
                r.len()
            )));
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor from integer rows. Panics on ragged input.
    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| Rational::from_int(x)).collect())
            .collect();
        Matrix::from_rows(rows).expect("ragged integer rows")
    }

    /// Builds a matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Result<Self> {
        if let Some(c) = columns.iter().find(|c| c.len() != rows) {
            return Err(Error::ShapeMismatch(format!(
                "column of length {} in a matrix with {rows} rows",
                c.len()
            )));
        }
        Ok(Matrix::from_fn(rows, columns.len(), |i, j| columns[j][i].clone()))
    }

    /// `diag(values)`.
    pub fn diagonal(values: &[Rational]) -> Self {
        let n = values.len();
        let mut m = Matrix::zeros(n, n);
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    /// The `rows × cols` matrix unit `e_{ij}` (0-based position).
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        m[(i, j)] = Rational::one();
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    /// Keeps the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.rows, cols.len(), |i, j| self[(i, cols[j])].clone())
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| &self[(i, i)]).sum()
    }

    fn ensure_same_shape(&self, other: &Matrix, op: &str) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch(format!(
                "{op} of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    fn ensure_square(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.ensure_same_shape(other, "sum")?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.ensure_same_shape(other, "difference")?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, s: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// `self − λI`.
    pub fn shift(&self, lambda: &Rational) -> Result<Matrix> {
        self.ensure_square()?;
        let mut m = self.clone();
        for i in 0..self.rows {
            m[(i, i)] -= lambda;
        }
        Ok(m)
    }

    /// Exact product; zero entries of `self` are skipped.
    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let prod = a * b;
                        out[(i, j)] += prod;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self^k` by repeated multiplication; `k = 0` gives the identity.
    pub fn pow(&self, k: usize) -> Result<Matrix> {
        self.ensure_square()?;
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..k {
            acc = acc.matmul(self)?;
        }
        Ok(acc)
    }

    /// Kronecker product: block `(i, j)` of the result is `a_ij · other`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (p, q) = other.shape();
        Matrix::from_fn(self.rows * p, self.cols * q, |i, j| {
            let a = &self[(i / p, j / q)];
            if a.is_zero() {
                Rational::zero()
            } else {
                a * &other[(i % p, j % q)]
            }
        })
    }

    /// Column-stacking vectorization, returned as an `(rows·cols) × 1` matrix.
    pub fn vectorize(&self) -> Matrix {
        Matrix::from_fn(self.rows * self.cols, 1, |i, _| {
            self[(i % self.rows, i / self.rows)].clone()
        })
    }

    /// Inverse of [`Matrix::vectorize`]: reshapes a length `rows·cols` vector.
    pub fn unvectorize(v: &[Rational], rows: usize, cols: usize) -> Result<Matrix> {
        if v.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} cannot be reshaped to {rows}x{cols}",
                v.len()
            )));
        }
        Ok(Matrix::from_fn(rows, cols, |i, j| v[j * rows + i].clone()))
    }

    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "hstack of {} and {} rows",
                self.rows, other.rows
            )));
        }
        Ok(Matrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        }))
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "vstack of {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Block-diagonal direct sum.
    pub fn block_diag(blocks: &[Matrix]) -> Matrix {
        let rows = blocks.iter().map(Matrix::rows).sum();
        let cols = blocks.iter().map(Matrix::cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    /// Panics if it does not fit.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    /// Reduced row echelon form with the pivot columns in increasing order.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..m.cols {
            if prow == m.rows {
                break;
            }
            let Some(src) = (prow..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(prow, src);
            let inv = m[(prow, col)].recip().expect("nonzero pivot");
            for j in col..m.cols {
                if !m[(prow, j)].is_zero() {
                    m[(prow, j)] *= &inv;
                }
            }
            let support: Vec<usize> = (col..m.cols).filter(|&j| !m[(prow, j)].is_zero()).collect();
            for r in 0..m.rows {
                if r == prow || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for &j in &support {
                    let delta = &factor * &m[(prow, j)];
                    m[(r, j)] -= delta;
                }
            }
            pivots.push(col);
            prow += 1;
        }
        Rref {
            reduced: m,
            pivot_columns: pivots,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// `cols − rank`.
    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Canonical nullspace basis as the columns of a `cols × nullity` matrix.
    ///
    /// One column per free variable of the RREF, in increasing order: the
    /// free variable is set to 1, the other free variables to 0, and the
    /// pivot variables are solved for.
    pub fn nullspace(&self) -> Matrix {
        let Rref {
            reduced,
            pivot_columns,
        } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivot_columns {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&j| !is_pivot[j]).collect();
        let mut basis = Matrix::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            basis[(f, k)] = Rational::one();
            for (r, &p) in pivot_columns.iter().enumerate() {
                basis[(p, k)] = -&reduced[(r, f)];
            }
        }
        basis
    }

    /// Basis of the column space: the pivot columns of `self`.
    pub fn column_space(&self) -> Matrix {
        let pivots = self.rref().pivot_columns;
        self.select_columns(&pivots)
    }

    /// `[nullity(M), nullity(M²), …, nullity(M^q)]` where `q` is the first
    /// exponent at which the nullity stops growing.
    pub fn nullity_chain(&self) -> Result<Vec<usize>> {
        self.ensure_square()?;
        let mut chain = vec![self.nullity()];
        let mut power = self.clone();
        loop {
            power = power.matmul(self)?;
            let next = power.nullity();
            if next == *chain.last().expect("non-empty") {
                return Ok(chain);
            }
            chain.push(next);
        }
    }

    pub fn determinant(&self) -> Result<Rational> {
        self.ensure_square()?;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(src) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return Ok(Rational::zero());
            };
            if src != col {
                m.swap_rows(src, col);
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det *= &pivot;
            let inv = pivot.recip().expect("nonzero pivot");
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = &m[(r, col)] * &inv;
                for j in col..n {
                    if !m[(col, j)].is_zero() {
                        let delta = &factor * &m[(col, j)];
                        m[(r, j)] -= delta;
                    }
                }
            }
        }
        Ok(det)
    }

    /// Exact inverse; errors if singular.
    pub fn inverse(&self) -> Result<Matrix> {
        self.ensure_square()?;
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(n))?;
        let rref = aug.rref();
        if rref.pivot_columns.iter().take_while(|&&p| p < n).count() < n {
            return Err(Error::Precondition("matrix is singular".into()));
        }
        Ok(rref.reduced.block(0, n, n, n))
    }

    /// Column count equals rank.
    pub fn has_independent_columns(&self) -> bool {
        self.rank() == self.cols
    }
}

/// Basis of `span(U) ∩ span(V)` as the columns of the returned matrix.
///
/// Zassenhaus construction: row-reduce `[[Uᵀ, Uᵀ], [Vᵀ, 0]]`; the rows whose
/// left half vanishes carry a basis of the intersection in their right half.
pub fn subspace_intersection(u: &Matrix, v: &Matrix) -> Result<Matrix> {
    if u.rows() != v.rows() {
        return Err(Error::ShapeMismatch(format!(
            "subspaces of ambient dimensions {} and {}",
            u.rows(),
            v.rows()
        )));
    }
    let n = u.rows();
    let ut = u.transpose();
    let top = ut.hstack(&ut)?;
    let bottom = v.transpose().hstack(&Matrix::zeros(v.cols(), n))?;
    let rref = top.vstack(&bottom)?.rref();
    let columns: Vec<Vec<Rational>> = rref
        .pivot_columns
        .iter()
        .enumerate()
        .filter(|(_, &p)| p >= n)
        .map(|(r, _)| rref.reduced.row(r)[n..].to_vec())
        .collect();
    Matrix::from_columns(n, &columns)
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|j| format!("{:>width$}", cells[i * self.cols + j]))
                .collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = Matrix::identity(3);
        let r = id.rref();
        assert_eq!(r.reduced, id);
        assert_eq!(r.pivot_columns, vec![0, 1, 2]);
        assert_eq!(r.rank(), 3);

        let z = Matrix::zeros(2, 4);
        let r = z.rref();
        assert_eq!(r.reduced, z);
        assert!(r.pivot_columns.is_empty());
    }

    #[test]
    fn rref_rank_one() {
        let m = Matrix::from_i64(&[[1, 2], [2, 4]]);
        let r = m.rref();
        assert_eq!(r.rank(), 1);
        assert_eq!(r.pivot_columns, vec![0]);
        assert_eq!(r.reduced, Matrix::from_i64(&[[1, 2], [0, 0]]));
    }

    #[test]
    fn nullspace_cases() {
        assert_eq!(Matrix::zeros(2, 2).nullspace(), Matrix::identity(2));
        assert_eq!(Matrix::identity(4).nullspace().cols(), 0);
        // x + y = 0 with y free gives (-1, 1)
        let ns = Matrix::from_i64(&[[1, 1]]).nullspace();
        assert_eq!(ns, Matrix::from_i64(&[[-1], [1]]));
    }

    #[test]
    fn kron_with_identity_is_block_diagonal() {
        let b = Matrix::from_i64(&[[1, 2], [3, 4]]);
        let k = Matrix::identity(2).kron(&b);
        assert_eq!(k, Matrix::block_diag(&[b.clone(), b]));
    }

    #[test]
    fn shape_errors() {
        let a = Matrix::zeros(2, 3);
        assert!(matches!(a.matmul(&a), Err(Error::ShapeMismatch(_))));
        assert!(matches!(a.pow(2), Err(Error::NotSquare { .. })));
        assert!(matches!(a.nullity_chain(), Err(Error::NotSquare { .. })));
        assert!(a.add(&Matrix::zeros(3, 2)).is_err());
        assert!(subspace_intersection(&Matrix::zeros(2, 1), &Matrix::zeros(3, 1)).is_err());
    }

    #[test]
    fn pow_zero_is_identity() {
        let a = Matrix::from_i64(&[[2, 1], [0, 3]]);
        assert_eq!(a.pow(0).unwrap(), Matrix::identity(2));
        assert_eq!(a.pow(2).unwrap(), Matrix::from_i64(&[[4, 5], [0, 9]]));
    }

    #[test]
    fn nullity_chain_identity_and_nilpotent() {
        assert_eq!(Matrix::identity(3).nullity_chain().unwrap(), vec![0]);
        let j3 = Matrix::from_i64(&[[0, 1, 0], [0, 0, 1], [0, 0, 0]]);
        assert_eq!(j3.nullity_chain().unwrap(), vec![1, 2, 3]);
        assert_eq!(Matrix::zeros(2, 2).nullity_chain().unwrap(), vec![2]);
    }

    #[test]
    fn inverse_and_determinant() {
        let a = Matrix::from_i64(&[[2, 1], [1, 1]]);
        assert_eq!(a.determinant().unwrap(), q(1));
        let inv = a.inverse().unwrap();
        assert_eq!(a.matmul(&inv).unwrap(), Matrix::identity(2));
        let s = Matrix::from_i64(&[[1, 2], [2, 4]]);
        assert_eq!(s.determinant().unwrap(), q(0));
        assert!(s.inverse().is_err());
        let p = Matrix::from_i64(&[[0, 1], [1, 0]]);
        assert_eq!(p.determinant().unwrap(), q(-1));
        let m = Matrix::from_i64(&[[2, 1], [1, 2]]);
        assert_eq!(m.determinant().unwrap(), q(3));
    }

    #[test]
    fn intersection_cases() {
        let id = Matrix::identity(3);
        assert_eq!(subspace_intersection(&id, &id).unwrap().cols(), 3);
        let e1 = Matrix::from_i64(&[[1], [0]]);
        let e2 = Matrix::from_i64(&[[0], [1]]);
        assert_eq!(subspace_intersection(&e1, &e2).unwrap().cols(), 0);
        // span{e1, e2} ∩ span{e1 + e2, e3} = span{e1 + e2}
        let u = Matrix::from_i64(&[[1, 0], [0, 1], [0, 0]]);
        let v = Matrix::from_i64(&[[1, 0], [1, 0], [0, 1]]);
        let w = subspace_intersection(&u, &v).unwrap();
        assert_eq!(w.cols(), 1);
        assert_eq!(w[(0, 0)], w[(1, 0)]);
        assert!(w[(2, 0)].is_zero());
    }

    #[test]
    fn vectorize_is_column_stacking() {
        let x = Matrix::from_i64(&[[1, 2, 3], [4, 5, 6]]);
        let v = x.vectorize();
        let flat: Vec<i64> = v.entries().iter().map(|r| r.to_i64().unwrap()).collect();
        assert_eq!(flat, vec![1, 4, 2, 5, 3, 6]);
        assert_eq!(Matrix::unvectorize(v.entries(), 2, 3).unwrap(), x);
    }
}
