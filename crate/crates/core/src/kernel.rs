//! Closed-form kernel dimensions for powers of the Sylvester operator.
//!
//! For nilpotent Weyr matrices with characteristics `γ` (p parts) and `δ`
//! (q parts), with parts extended by zeros past their length,
//!
//! ```text
//! dim ker φ^k = Σ_{r=2..k} Σ_{l≥0} γ_{r+l}(δ_{1+l} − δ_{2+k−r+l})
//!             + Σ_{l≥0} γ_{1+l} Σ_{s=1..k} δ_{s+l}
//! ```
//!
//! and for general `A`, `B` the dimension is the sum of this quantity over
//! all pairs of equal eigenvalues.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::{binomial, factorial, Rational};
use crate::weyr::{eigen_structure, verify_structure, EigenStructure, Partition};

/// Kernel dimensions of `φ_AB^k` for `k = 1..=k_max`, split by eigenvalue pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelDimReport {
    /// `(i, j)` (0-based indices into the two structures) with `λ_i = μ_j`,
    /// mapped to `[d(1), …, d(k_max)]`.
    pub per_pair: BTreeMap<(usize, usize), Vec<usize>>,
    pub totals: Vec<usize>,
    pub k_max: usize,
}

/// Weyr characteristic of the operator at one of its eigenvalues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorWeyr {
    pub eigenvalue: Rational,
    pub characteristic: Partition,
    pub index: usize,
}

/// Solution of the alternating-binomial system that fixes the coefficients of
/// one basis chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientSolution {
    pub power: usize,
    pub r: usize,
    pub l: usize,
    pub x: Vec<Rational>,
}

/// Operator eigenvalue ↦ operator Weyr characteristic. Two Sylvester
/// operators are similar exactly when their tables are equal.
pub type InvariantTable = BTreeMap<Rational, Partition>;

/// `dim ker φ^k_{γδ}` for the nilpotent Weyr pair `(N_γ, N_δ)`.
pub fn pair_kernel_dim(gamma: &Partition, delta: &Partition, k: usize) -> usize {
    let (p, q) = (gamma.len(), delta.len());
    if k == 0 || p == 0 || q == 0 {
        return 0;
    }
    let g = |i: usize| gamma.part(i);
    let d = |i: usize| delta.part(i);
    let mut total = 0;
    // terms with r + l > p or 1 + l > q vanish
    for r in 2..=k.min(p) {
        for l in 0..=(p - r).min(q - 1) {
            total += g(r + l) * (d(1 + l) - d(2 + k - r + l));
        }
    }
    for l in 0..p.min(q) {
        let tail: usize = (1..=k.min(q - l)).map(|s| d(s + l)).sum();
        total += g(1 + l) * tail;
    }
    total
}

/// `dim ker φ_AB^k` from the two eigen-structures.
pub fn kernel_dim(sa: &EigenStructure, sb: &EigenStructure, k: usize) -> usize {
    matching_pairs(sa, sb)
        .map(|(_, _, alpha, beta)| pair_kernel_dim(alpha, beta, k))
        .sum()
}

fn matching_pairs<'a>(
    sa: &'a EigenStructure,
    sb: &'a EigenStructure,
) -> impl Iterator<Item = (usize, usize, &'a Partition, &'a Partition)> {
    sa.blocks().iter().enumerate().flat_map(move |(i, (lambda, alpha))| {
        sb.blocks()
            .iter()
            .enumerate()
            .filter(move |(_, (mu, _))| mu == lambda)
            .map(move |(j, (_, beta))| (i, j, alpha, beta))
    })
}

pub fn kernel_dim_report(sa: &EigenStructure, sb: &EigenStructure, k_max: usize) -> KernelDimReport {
    let mut per_pair = BTreeMap::new();
    let mut totals = vec![0; k_max];
    for (i, j, alpha, beta) in matching_pairs(sa, sb) {
        let dims: Vec<usize> = (1..=k_max).map(|k| pair_kernel_dim(alpha, beta, k)).collect();
        for (t, d) in totals.iter_mut().zip(&dims) {
            *t += d;
        }
        per_pair.insert((i, j), dims);
    }
    KernelDimReport {
        per_pair,
        totals,
        k_max,
    }
}

/// Index of the eigenvalue 0 of `φ_AB`: `max{p_i + q_j − 1 : λ_i = μ_j}`,
/// or `None` when the operator is injective.
pub fn kernel_index(sa: &EigenStructure, sb: &EigenStructure) -> Option<usize> {
    matching_pairs(sa, sb)
        .map(|(_, _, alpha, beta)| alpha.len() + beta.len() - 1)
        .max()
}

/// Sorted, deduplicated differences `λ_i − μ_j`.
pub fn operator_eigenvalues(sa: &EigenStructure, sb: &EigenStructure) -> Vec<Rational> {
    let mut out: Vec<Rational> = sa
        .eigenvalues()
        .flat_map(|l| sb.eigenvalues().map(move |m| l - m))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// `ω_k` of the operator at `lambda`, straight from the closed form.
pub fn operator_weyr_part(sa: &EigenStructure, sb: &EigenStructure, lambda: &Rational, k: usize) -> usize {
    if k == 0 {
        return 0;
    }
    let mut total = 0;
    for (li, alpha) in sa.blocks() {
        for (mu, beta) in sb.blocks() {
            if &(li - lambda) != mu {
                continue;
            }
            let a = |i: usize| alpha.part(i);
            let b = |i: usize| beta.part(i);
            for l in 0..=alpha.len().min(beta.len()) {
                total += a(1 + l) * b(k + l);
                for r in 2..=k {
                    total += a(r + l) * (b(1 + k - r + l) - b(2 + k - r + l));
                }
            }
        }
    }
    total
}

/// Weyr characteristic and index of `φ_AB` at the eigenvalue `lambda`.
///
/// The parts come from the closed form for `ω_k`; they are checked against
/// the first differences of [`kernel_dim`] on the shifted structure and must
/// vanish past the index `max{p_i + q_j − 1}`.
pub fn operator_weyr(sa: &EigenStructure, sb: &EigenStructure, lambda: &Rational) -> Result<OperatorWeyr> {
    let shifted = sa.shifted(lambda);
    let index = kernel_index(&shifted, sb).ok_or_else(|| Error::NotAnEigenvalue(lambda.clone()))?;
    let mut parts = Vec::with_capacity(index);
    let mut prev = 0;
    for k in 1..=index + 1 {
        let omega = operator_weyr_part(sa, sb, lambda, k);
        let dim = kernel_dim(&shifted, sb, k);
        if dim < prev || omega != dim - prev {
            return Err(Error::Internal(format!(
                "ω_{k} = {omega} but kernel dimensions step from {prev} to {dim}"
            )));
        }
        prev = dim;
        if k <= index {
            parts.push(omega);
        } else if omega != 0 {
            return Err(Error::Internal(format!(
                "ω_{k} = {omega} is nonzero past the index {index}"
            )));
        }
    }
    let characteristic = Partition::new(parts)
        .map_err(|e| Error::Internal(format!("operator Weyr characteristic: {e}")))?;
    Ok(OperatorWeyr {
        eigenvalue: lambda.clone(),
        characteristic,
        index,
    })
}

/// `Σ_i Σ_j α_ij²`.
pub fn centralizer_dim(sa: &EigenStructure) -> usize {
    sa.blocks()
        .iter()
        .flat_map(|(_, p)| p.parts())
        .map(|x| x * x)
        .sum()
}

/// The `l × l` matrix with entry `C(m+n, m+i−j)` at 1-based `(i, j)`.
pub fn binomial_matrix(m: usize, n: usize, l: usize) -> Matrix {
    let top = (m + n) as i64;
    Matrix::from_fn(l, l, |i, j| {
        Rational::from(binomial(top, m as i64 + i as i64 - j as i64))
    })
}

/// `Π_{i=1..l} (m+n+i−1)!(i−1)! / ((m+i−1)!(n+i−1)!)`.
pub fn binomial_det_formula(m: usize, n: usize, l: usize) -> Rational {
    let f = |x: usize| factorial(x as u64);
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for i in 1..=l {
        num *= f(m + n + i - 1) * f(i - 1);
        den *= f(m + i - 1) * f(n + i - 1);
    }
    Rational::from_bigints(num, den)
}

/// Solves `Σ_j (−1)^{m+i−j} C(m+n, m+i−j) x_j = 1` for `i = 0..=l`, where
/// `m = power − r + 1` and `n = r − 1`.
///
/// These `x` make `φ^power(Σ_t x_t e_{r+t,s+t})` start with the unit chain
/// `Σ_t e_{1+t, power−r+1+s+t}`.
pub fn coefficient_solve(power: usize, r: usize, l: usize) -> Result<CoefficientSolution> {
    if r == 0 {
        return Err(Error::Precondition("r must be at least 1".into()));
    }
    if power + 1 < r {
        return Err(Error::Precondition(format!(
            "power {power} is below r − 1 = {}",
            r - 1
        )));
    }
    let system = coefficient_system(power, r, l);
    let ones = Matrix::from_fn(l + 1, 1, |_, _| Rational::one());
    let x = system.inverse().map_err(|_| {
        Error::Internal(format!("coefficient system (power {power}, r {r}, l {l}) is singular"))
    })?
    .matmul(&ones)?;
    if system.matmul(&x)? != ones {
        return Err(Error::Internal("coefficient solution fails re-substitution".into()));
    }
    Ok(CoefficientSolution {
        power,
        r,
        l,
        x: x.column(0),
    })
}

/// The `(l+1) × (l+1)` matrix `[(−1)^{m+i−j} C(m+n, m+i−j)]_{i,j=0..l}`.
pub fn coefficient_system(power: usize, r: usize, l: usize) -> Matrix {
    let m = power as i64 - r as i64 + 1;
    let top = power as i64;
    Matrix::from_fn(l + 1, l + 1, |i, j| {
        let lower = m + i as i64 - j as i64;
        let c = Rational::from(binomial(top, lower));
        if lower.rem_euclid(2) == 1 {
            -c
        } else {
            c
        }
    })
}

/// The complete similarity invariant of `φ_AB` from the two structures.
pub fn invariant_table(sa: &EigenStructure, sb: &EigenStructure) -> Result<InvariantTable> {
    operator_eigenvalues(sa, sb)
        .into_iter()
        .map(|lambda| operator_weyr(sa, sb, &lambda).map(|w| (lambda, w.characteristic)))
        .collect()
}

/// Resolves a matrix's eigen-structure: a declared one is verified against
/// the matrix, otherwise it is computed.
pub fn resolve_structure(a: &Matrix, declared: Option<&EigenStructure>) -> Result<EigenStructure> {
    match declared {
        Some(s) => {
            verify_structure(a, s)?;
            Ok(s.clone())
        }
        None => eigen_structure(a),
    }
}

/// [`invariant_table`] starting from matrices, with optional declared
/// structures.
pub fn invariant_table_for(
    a: &Matrix,
    b: &Matrix,
    declared_a: Option<&EigenStructure>,
    declared_b: Option<&EigenStructure>,
) -> Result<InvariantTable> {
    let sa = resolve_structure(a, declared_a)?;
    let sb = resolve_structure(b, declared_b)?;
    invariant_table(&sa, &sb)
}

pub fn operators_similar(t1: &InvariantTable, t2: &InvariantTable) -> bool {
    t1 == t2
}

/// First `(λ, k)` at which the two tables disagree: the smallest eigenvalue
/// whose characteristics differ (a missing eigenvalue counts as the empty
/// partition) and the first 1-based `k` where their parts differ.
pub fn similarity_witness(t1: &InvariantTable, t2: &InvariantTable) -> Option<(Rational, usize)> {
    let empty = Partition::empty();
    let mut keys: Vec<&Rational> = t1.keys().chain(t2.keys()).collect();
    keys.sort();
    keys.dedup();
    keys.into_iter().find_map(|lambda| {
        let p1 = t1.get(lambda).unwrap_or(&empty);
        let p2 = t2.get(lambda).unwrap_or(&empty);
        let len = p1.len().max(p2.len());
        (1..=len)
            .find(|&k| p1.part(k) != p2.part(k))
            .map(|k| (lambda.clone(), k))
    })
}
