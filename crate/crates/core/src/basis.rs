//! Block embeddings `E_ij(γ,δ) ⊠ Z` and explicit kernel bases of powers of
//! the Sylvester operator on Weyr matrices.
//!
//! Basis elements stay symbolic (a chain of blocks along one block diagonal,
//! with coefficients, and an inner position `(u, v)`) and are materialized on
//! demand.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::kernel::coefficient_solve;
use crate::matrix::Matrix;
use crate::rational::Rational;
use crate::sylvester::SylvesterOperator;
use crate::weyr::{nilpotent_weyr, offsets, EigenStructure, Partition, WeyrDecomposition};

/// A grid of blocks: block `(i, j)` is `rows[i−1] × cols[j−1]`.
///
/// The sizes need not be non-increasing, so the same type describes the
/// outer grid of a Weyr matrix, whose blocks follow the eigenvalue order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockType {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl BlockType {
    pub fn new(rows: Vec<usize>, cols: Vec<usize>) -> Result<Self> {
        if rows.iter().chain(&cols).any(|&s| s == 0) {
            return Err(Error::InvalidStructure("block sizes must be positive".into()));
        }
        Ok(BlockType { rows, cols })
    }

    pub fn from_partitions(gamma: &Partition, delta: &Partition) -> Self {
        BlockType {
            rows: gamma.parts().to_vec(),
            cols: delta.parts().to_vec(),
        }
    }

    pub fn row_sizes(&self) -> &[usize] {
        &self.rows
    }

    pub fn col_sizes(&self) -> &[usize] {
        &self.cols
    }

    /// Shape of the full matrix.
    pub fn shape(&self) -> (usize, usize) {
        (self.rows.iter().sum(), self.cols.iter().sum())
    }

    /// Shape of block `(i, j)` (1-based), if it exists.
    pub fn cell(&self, i: usize, j: usize) -> Option<(usize, usize)> {
        let r = *self.rows.get(i.checked_sub(1)?)?;
        let c = *self.cols.get(j.checked_sub(1)?)?;
        Some((r, c))
    }
}

/// `E_ij ⊠ Z`: zero except block `(i, j)` (1-based), which holds the
/// upper-left corner of `z` that fits in the cell.
pub fn block_embed(t: &BlockType, i: usize, j: usize, z: &Matrix) -> Result<Matrix> {
    let (cr, cc) = t.cell(i, j).ok_or_else(|| {
        Error::IndexOutOfRange(format!(
            "block ({i}, {j}) of a {}x{} block grid",
            t.rows.len(),
            t.cols.len()
        ))
    })?;
    let (m, n) = t.shape();
    let mut out = Matrix::zeros(m, n);
    let r0 = offsets(&t.rows)[i - 1];
    let c0 = offsets(&t.cols)[j - 1];
    for a in 0..cr.min(z.rows()) {
        for b in 0..cc.min(z.cols()) {
            out[(r0 + a, c0 + b)] = z[(a, b)].clone();
        }
    }
    Ok(out)
}

/// `Σ_t x_t · E_{r+t, s+t} ⊠ e_uv` for a block type `(γ, δ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisElement {
    pub block_type: BlockType,
    /// `(block row, block column, coefficient)`, 1-based, consecutive along
    /// one block diagonal.
    pub terms: Vec<(usize, usize, Rational)>,
    /// 1-based inner position `(u, v)`.
    pub inner: (usize, usize),
}

impl BasisElement {
    fn chain(block_type: &BlockType, r: usize, s: usize, coeffs: Vec<Rational>, inner: (usize, usize)) -> Self {
        BasisElement {
            block_type: block_type.clone(),
            terms: coeffs
                .into_iter()
                .enumerate()
                .map(|(t, x)| (r + t, s + t, x))
                .collect(),
            inner,
        }
    }

    /// `(r, s, l)`: the first block and the chain length minus one.
    pub fn rsl(&self) -> (usize, usize, usize) {
        let (r, s, _) = self.terms[0];
        (r, s, self.terms.len() - 1)
    }

    pub fn materialize(&self) -> Matrix {
        let (m, n) = self.block_type.shape();
        let (u, v) = self.inner;
        let row_off = offsets(&self.block_type.rows);
        let col_off = offsets(&self.block_type.cols);
        let mut out = Matrix::zeros(m, n);
        for (i, j, x) in &self.terms {
            let (cr, cc) = self.block_type.cell(*i, *j).expect("term inside the grid");
            if u <= cr && v <= cc {
                out[(row_off[i - 1] + u - 1, col_off[j - 1] + v - 1)] = x.clone();
            }
        }
        out
    }

    /// Divides by the sign of the first nonzero coefficient.
    fn normalize_sign(mut self) -> Self {
        if self.terms.iter().find(|t| !t.2.is_zero()).is_some_and(|t| t.2.is_negative()) {
            for t in &mut self.terms {
                t.2 = -&t.2;
            }
        }
        self
    }
}

fn block_label(i: usize, j: usize) -> String {
    if i < 10 && j < 10 {
        format!("{i}{j}")
    } else {
        format!("({i},{j})")
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut chain = String::new();
        for (idx, (i, j, x)) in self.terms.iter().enumerate() {
            let neg = x.is_negative();
            let mag = x.abs();
            if idx == 0 {
                if neg {
                    chain.push('-');
                }
            } else {
                chain.push(if neg { '-' } else { '+' });
            }
            if !mag.is_one() {
                if mag.is_integer() {
                    chain.push_str(&mag.to_string());
                } else {
                    chain.push_str(&format!("({mag})"));
                }
            }
            chain.push('E');
            chain.push_str(&block_label(*i, *j));
        }
        let (u, v) = self.inner;
        if self.terms.len() == 1 && !chain.starts_with('-') && !self.terms[0].2.is_one() {
            chain = format!("({chain})");
        }
        if self.terms.len() > 1 {
            chain = format!("({chain})");
        }
        write!(f, "{chain}⊠e{}", block_label(u, v))
    }
}

/// A basis element of `ker φ^k` for a pair of Weyr matrices, living in the
/// outer block `pair` (0-based eigenvalue indices) of the outer type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorBasisElement {
    pub pair: (usize, usize),
    pub outer: BlockType,
    pub element: BasisElement,
}

impl OperatorBasisElement {
    pub fn materialize(&self) -> Matrix {
        block_embed(&self.outer, self.pair.0 + 1, self.pair.1 + 1, &self.element.materialize())
            .expect("pair inside the outer grid")
    }
}

impl fmt::Display for OperatorBasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E{}⊠{}", block_label(self.pair.0 + 1, self.pair.1 + 1), self.element)
    }
}

/// Basis of `ker φ_γδ`: full-length unit chains ending in the last block
/// column, and truncated unit chains ending in block column `j < q` over the
/// inner columns `δ_{j+1} < v ≤ δ_j`.
pub fn kernel_basis_1(gamma: &Partition, delta: &Partition) -> Vec<BasisElement> {
    let t = BlockType::from_partitions(gamma, delta);
    let (p, q) = (gamma.len(), delta.len());
    let mut out = Vec::new();
    if p == 0 || q == 0 {
        return out;
    }
    for j in q.saturating_sub(p) + 1..=q {
        let len = q - j + 1;
        for u in 1..=gamma.part(q + 1 - j) {
            for v in 1..=delta.part(q) {
                out.push(BasisElement::chain(&t, 1, j, vec![Rational::one(); len], (u, v)));
            }
        }
    }
    for j in 1..q {
        for i in 1..=j.min(p) {
            for u in 1..=gamma.part(i) {
                for v in delta.part(j + 1) + 1..=delta.part(j) {
                    out.push(BasisElement::chain(&t, 1, j - i + 1, vec![Rational::one(); i], (u, v)));
                }
            }
        }
    }
    out
}

/// Admissible chain starts `(r, s, l)` for `ker φ^k_γδ`: first `r = 1` with
/// ascending `s`, then `s = 1` with ascending `r ≥ 2`; `l` ascending within.
pub fn chain_starts(gamma: &Partition, delta: &Partition, k: usize) -> Vec<(usize, usize, usize)> {
    let (p, q) = (gamma.len(), delta.len());
    let mut out = Vec::new();
    if p == 0 || q == 0 {
        return out;
    }
    for s in 1..=q {
        for l in 0..=(p - 1).min(q - s) {
            out.push((1, s, l));
        }
    }
    for r in 2..=k.min(p) {
        for l in 0..=(p - r).min(q - 1) {
            out.push((r, 1, l));
        }
    }
    out
}

/// Basis of `ker φ^k_γδ`, nested in `k`.
///
/// Each start `(r, s, l)` contributes the chains `Σ_t x_t E_{r+t,s+t} ⊠ e_uv`
/// for `u ≤ γ_{r+l}` and `δ_{1+k−r+s+l} < v ≤ δ_{s+l}`. The coefficients `x`
/// solve the coefficient system for `φ^{k₀−1}`, where `k₀ ≤ k` is the first
/// power at which the chain is admissible (see [`first_power`]), so the basis
/// for `k − 1` is a subset of the basis for `k`. Each chain is scaled so that
/// its first nonzero coefficient is positive.
pub fn kernel_basis_k(gamma: &Partition, delta: &Partition, k: usize) -> Result<Vec<BasisElement>> {
    build_kernel_basis(gamma, delta, k, |r, s, l, v| first_power(delta, r, s, l, v))
}

/// Basis of `ker φ^k_γδ` with every chain's coefficients solved for
/// `φ^{k−1}`, whatever power the chain first appears at.
pub fn kernel_basis_k_literal(gamma: &Partition, delta: &Partition, k: usize) -> Result<Vec<BasisElement>> {
    build_kernel_basis(gamma, delta, k, |_, _, _, _| k)
}

/// Smallest `k₀ ≥ r` with `δ_{1+k₀−r+s+l} < v`: the first power whose
/// kernel basis contains the chain `(r, s, l)` at inner column `v`.
pub fn first_power(delta: &Partition, r: usize, s: usize, l: usize, v: usize) -> usize {
    let mut k = r;
    while delta.part(1 + k - r + s + l) >= v {
        k += 1;
    }
    k
}

fn build_kernel_basis(
    gamma: &Partition,
    delta: &Partition,
    k: usize,
    power_for: impl Fn(usize, usize, usize, usize) -> usize,
) -> Result<Vec<BasisElement>> {
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    let t = BlockType::from_partitions(gamma, delta);
    let mut solutions: BTreeMap<(usize, usize, usize), Vec<Rational>> = BTreeMap::new();
    let mut out = Vec::new();
    for (r, s, l) in chain_starts(gamma, delta, k) {
        let lo = delta.part(1 + k - r + s + l);
        let hi = delta.part(s + l);
        for v in lo + 1..=hi {
            let power = power_for(r, s, l, v) - 1;
            if !solutions.contains_key(&(power, r, l)) {
                solutions.insert((power, r, l), coefficient_solve(power, r, l)?.x);
            }
            let x = &solutions[&(power, r, l)];
            for u in 1..=gamma.part(r + l) {
                out.push(BasisElement::chain(&t, r, s, x.clone(), (u, v)).normalize_sign());
            }
        }
    }
    // inner positions run row-major within each start
    let mut ordered = Vec::with_capacity(out.len());
    let mut rest = out.into_iter().peekable();
    while let Some(first) = rest.next() {
        let key = first.rsl();
        let mut group = vec![first];
        while rest.peek().is_some_and(|e| e.rsl() == key) {
            group.push(rest.next().expect("peeked"));
        }
        group.sort_by_key(|e| e.inner);
        ordered.extend(group);
    }
    Ok(ordered)
}

/// Basis of `ker φ^k_{W_A W_B}` for the Weyr matrices of the two structures.
///
/// Pairs `(i, j)` with equal eigenvalues are visited in eigenvalue order and
/// their nilpotent bases are placed in outer block `(i, j)`.
pub fn operator_kernel_basis(
    sa: &EigenStructure,
    sb: &EigenStructure,
    k: usize,
) -> Result<Vec<OperatorBasisElement>> {
    let outer = BlockType::new(sa.weights(), sb.weights())?;
    let mut out = Vec::new();
    for (i, (lambda, alpha)) in sa.blocks().iter().enumerate() {
        for (j, (mu, beta)) in sb.blocks().iter().enumerate() {
            if lambda != mu {
                continue;
            }
            for element in kernel_basis_k(alpha, beta, k)? {
                out.push(OperatorBasisElement {
                    pair: (i, j),
                    outer: outer.clone(),
                    element,
                });
            }
        }
    }
    Ok(out)
}

/// `{P·X·Q⁻¹}`: carries a kernel basis in Weyr coordinates back to the
/// original operator, where `P⁻¹AP = W_A` and `Q⁻¹BQ = W_B`.
pub fn pullback_basis(
    decomp_a: &WeyrDecomposition,
    decomp_b: &WeyrDecomposition,
    basis: &[Matrix],
) -> Result<Vec<Matrix>> {
    basis
        .iter()
        .map(|x| decomp_a.transform.matmul(x)?.matmul(&decomp_b.transform_inv))
        .collect()
}

/// The chain `Σ_t x_t E_{r+t,s+t} ⊠ e_uv` with `x` the raw solution of the
/// coefficient system for `φ^power`.
pub fn stratification_element(
    gamma: &Partition,
    delta: &Partition,
    power: usize,
    (r, s, l): (usize, usize, usize),
    inner: (usize, usize),
) -> Result<BasisElement> {
    let (p, q) = (gamma.len(), delta.len());
    if r == 0 || s == 0 || r + l > p || s + l > q {
        return Err(Error::IndexOutOfRange(format!(
            "chain ({r}, {s}, {l}) in a {p}x{q} block grid"
        )));
    }
    let (u, v) = inner;
    if u == 0 || v == 0 || u > gamma.part(r + l) || v > delta.part(s + l) {
        return Err(Error::IndexOutOfRange(format!(
            "inner position ({u}, {v}) for chain ({r}, {s}, {l})"
        )));
    }
    let x = coefficient_solve(power, r, l)?.x;
    Ok(BasisElement::chain(
        &BlockType::from_partitions(gamma, delta),
        r,
        s,
        x,
        inner,
    ))
}

/// Whether `φ^power_γδ` maps the chain onto the unit chain
/// `Σ_j E_{1+j, power−r+1+s+j} ⊠ e_uv` (blocks past the grid, or too narrow
/// for the inner position, dropped) and `φ^{power+1}` kills it.
pub fn stratification_check(gamma: &Partition, delta: &Partition, power: usize, element: &BasisElement) -> bool {
    let (r, s, l) = element.rsl();
    if power + 1 < r {
        return false;
    }
    let t = BlockType::from_partitions(gamma, delta);
    let start = power + 1 - r + s;
    let predicted = BasisElement::chain(&t, 1, start, vec![Rational::one(); l + 1], element.inner);
    let predicted = BasisElement {
        terms: predicted
            .terms
            .into_iter()
            .filter(|(_, j, _)| *j <= delta.len())
            .collect(),
        ..predicted
    };
    let op = SylvesterOperator::new(nilpotent_weyr(gamma), nilpotent_weyr(delta)).expect("square");
    let x = element.materialize();
    let Ok(image) = op.apply_pow(&x, power) else {
        return false;
    };
    let expected = if predicted.terms.is_empty() {
        Matrix::zeros(x.rows(), x.cols())
    } else {
        predicted.materialize()
    };
    image == expected && op.apply(&image).is_ok_and(|y| y.is_zero())
}
