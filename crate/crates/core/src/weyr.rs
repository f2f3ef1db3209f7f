//! Partitions, Weyr characteristics and Weyr canonical forms.
//!
//! The Weyr characteristic of `A` at `λ` is the sequence of first differences
//! of `nullity((A − λI)^k)`. A Weyr block `λI + N_ω` is upper block-bidiagonal
//! with superdiagonal blocks `N_{ω_i, ω_{i+1}} = (I; 0)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::{char_poly, rational_roots};
use crate::rational::Rational;

/// A non-increasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        let ok = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1]);
        if !ok {
            return Err(Error::InvalidPartition(parts));
        }
        Ok(Partition(parts))
    }

    /// The empty partition (weight 0).
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of the parts.
    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    /// The `i`-th part, 1-based, extended by zeros: `part(0)` and
    /// `part(i)` for `i > len` are 0.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    /// Conjugate partition (transposed Young diagram).
    pub fn dual(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        Partition((1..=first).map(|t| self.0.iter().filter(|&&p| p >= t).count()).collect())
    }

    /// Every partition of `n`, in reverse lexicographic order.
    pub fn all_of_weight(n: usize) -> Vec<Partition> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// Every partition of weight `1..=max_weight`.
    pub fn all_up_to_weight(max_weight: usize) -> Vec<Partition> {
        (1..=max_weight).flat_map(Partition::all_of_weight).collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Eigenvalues with their Weyr characteristics, sorted by ascending
/// eigenvalue. The index of each eigenvalue is the length of its partition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EigenStructure {
    blocks: Vec<(Rational, Partition)>,
    dim: usize,
}

impl EigenStructure {
    /// Validates and canonicalizes (sorts ascending by eigenvalue).
    pub fn new(mut blocks: Vec<(Rational, Partition)>) -> Result<Self> {
        blocks.sort_by(|a, b| a.0.cmp(&b.0));
        if let Some(w) = blocks.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidStructure(format!(
                "eigenvalue {} listed twice",
                w[0].0
            )));
        }
        if let Some((l, _)) = blocks.iter().find(|(_, p)| p.is_empty()) {
            return Err(Error::InvalidStructure(format!(
                "eigenvalue {l} has an empty characteristic"
            )));
        }
        let dim = blocks.iter().map(|(_, p)| p.weight()).sum();
        Ok(EigenStructure { blocks, dim })
    }

    /// Single eigenvalue `λ` with characteristic `p`.
    pub fn single(lambda: Rational, p: Partition) -> Result<Self> {
        EigenStructure::new(vec![(lambda, p)])
    }

    pub fn blocks(&self) -> &[(Rational, Partition)] {
        &self.blocks
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eigenvalues(&self) -> impl Iterator<Item = &Rational> {
        self.blocks.iter().map(|(l, _)| l)
    }

    pub fn characteristic(&self, lambda: &Rational) -> Option<&Partition> {
        self.blocks.iter().find(|(l, _)| l == lambda).map(|(_, p)| p)
    }

    /// Same characteristics with every eigenvalue moved by `−shift`.
    pub fn shifted(&self, shift: &Rational) -> EigenStructure {
        EigenStructure {
            blocks: self
                .blocks
                .iter()
                .map(|(l, p)| (l - shift, p.clone()))
                .collect(),
            dim: self.dim,
        }
    }

    /// Block sizes `(|α_1|, …, |α_a|)` in eigenvalue order. This is the
    /// outer block type of a Weyr matrix; it need not be non-increasing.
    pub fn weights(&self) -> Vec<usize> {
        self.blocks.iter().map(|(_, p)| p.weight()).collect()
    }
}

impl fmt::Display for EigenStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.blocks.iter().map(|(l, p)| format!("{l}: {p}")).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

/// `P⁻¹·A·P = W` with `W` the Weyr canonical form of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeyrDecomposition {
    pub structure: EigenStructure,
    pub weyr: Matrix,
    pub transform: Matrix,
    pub transform_inv: Matrix,
}

pub fn dual_partition(p: &Partition) -> Partition {
    p.dual()
}

/// Weyr characteristic of `a` at `lambda` from the nullity chain of `A − λI`.
pub fn weyr_characteristic(a: &Matrix, lambda: &Rational) -> Result<Partition> {
    let chain = a.shift(lambda)?.nullity_chain()?;
    if chain[0] == 0 {
        return Err(Error::NotAnEigenvalue(lambda.clone()));
    }
    let mut parts = Vec::with_capacity(chain.len());
    let mut prev = 0;
    for n in chain {
        parts.push(n - prev);
        prev = n;
    }
    Partition::new(parts)
        .map_err(|e| Error::Internal(format!("nullity differences are not a partition: {e}")))
}

/// All eigenvalues (ascending) with their Weyr characteristics. Fails with
/// [`Error::IrrationalSpectrum`] when the characteristic polynomial does not
/// split over the rationals.
pub fn eigen_structure(a: &Matrix) -> Result<EigenStructure> {
    let poly = char_poly(a)?;
    let (roots, split) = rational_roots(&poly)?;
    if !split {
        return Err(Error::IrrationalSpectrum {
            poly: poly.to_string(),
        });
    }
    let mut blocks = Vec::with_capacity(roots.len());
    for (lambda, mult) in roots {
        let p = weyr_characteristic(a, &lambda)?;
        if p.weight() != mult {
            return Err(Error::Internal(format!(
                "eigenvalue {lambda}: algebraic multiplicity {mult} but Weyr weight {}",
                p.weight()
            )));
        }
        blocks.push((lambda, p));
    }
    EigenStructure::new(blocks)
}

/// Checks a user-supplied structure against `a`: the weights must add up to
/// the dimension and each characteristic must match the recomputed one.
pub fn verify_structure(a: &Matrix, s: &EigenStructure) -> Result<()> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if s.dim() != a.rows() {
        return Err(Error::InvalidStructure(format!(
            "declared weights sum to {} but the matrix is {}x{}",
            s.dim(),
            a.rows(),
            a.cols()
        )));
    }
    for (lambda, declared) in s.blocks() {
        let actual = match weyr_characteristic(a, lambda) {
            Ok(p) => p,
            Err(Error::NotAnEigenvalue(_)) => Partition::empty(),
            Err(e) => return Err(e),
        };
        if &actual != declared {
            return Err(Error::InvalidStructure(format!(
                "declared characteristic {declared} at {lambda}, recomputed {actual}"
            )));
        }
    }
    Ok(())
}

/// Offsets of the stages of a partition: stage `i` (0-based) occupies
/// `offsets[i]..offsets[i] + parts[i]`.
pub(crate) fn offsets(parts: &[usize]) -> Vec<usize> {
    let mut acc = 0;
    parts
        .iter()
        .map(|&p| {
            let o = acc;
            acc += p;
            o
        })
        .collect()
}

/// The nilpotent Weyr matrix `N_γ`.
pub fn nilpotent_weyr(gamma: &Partition) -> Matrix {
    let n = gamma.weight();
    let off = offsets(gamma.parts());
    let mut m = Matrix::zeros(n, n);
    for i in 0..gamma.len().saturating_sub(1) {
        for t in 0..gamma.parts()[i + 1] {
            m[(off[i] + t, off[i + 1] + t)] = Rational::one();
        }
    }
    m
}

/// `⊕_i (λ_i I + N_{α_i})` in the structure's eigenvalue order.
pub fn weyr_matrix(s: &EigenStructure) -> Matrix {
    let blocks: Vec<Matrix> = s
        .blocks()
        .iter()
        .map(|(lambda, p)| {
            let mut b = nilpotent_weyr(p);
            for i in 0..b.rows() {
                b[(i, i)] = lambda.clone();
            }
            b
        })
        .collect();
    Matrix::block_diag(&blocks)
}

/// Computes the eigen-structure and a Weyr-adapted basis of `a`.
pub fn weyr_transform(a: &Matrix) -> Result<WeyrDecomposition> {
    let s = eigen_structure(a)?;
    weyr_transform_with(a, &s)
}

/// Builds the Weyr decomposition for a known (or declared) structure.
///
/// For each eigenvalue with characteristic `ω` of length `q`, and
/// `N = A − λI`, stages are filled from `k = q` down to `1`. Stage `k`
/// needs `ω_k` vectors of `ker N^k` independent modulo `ker N^{k−1}`: the
/// first `ω_{k+1}` are the images under `N` of the stage `k+1` vectors,
/// the rest are taken greedily from the canonical basis of `ker N^k`.
/// Columns are ordered stage-major, which makes `N` act as the
/// superdiagonal `(I; 0)` blocks.
pub fn weyr_transform_with(a: &Matrix, s: &EigenStructure) -> Result<WeyrDecomposition> {
    verify_structure(a, s)?;
    let n = a.rows();
    let mut columns: Vec<Vec<Rational>> = Vec::with_capacity(n);
    for (lambda, omega) in s.blocks() {
        let nil = a.shift(lambda)?;
        let q = omega.len();
        let mut kernels = vec![Matrix::zeros(n, 0)];
        let mut power = Matrix::identity(n);
        for _ in 1..=q {
            power = power.matmul(&nil)?;
            kernels.push(power.nullspace());
        }
        let mut stages: Vec<Vec<Vec<Rational>>> = vec![Vec::new(); q + 1];
        for k in (1..=q).rev() {
            let mut chosen: Vec<Vec<Rational>> = if k < q {
                stages[k + 1]
                    .iter()
                    .map(|v| apply(&nil, v))
                    .collect::<Result<_>>()?
            } else {
                Vec::new()
            };
            let lower = kernels[k - 1].columns();
            let mut spanning = lower.clone();
            spanning.extend(chosen.iter().cloned());
            let mut rank = Matrix::from_columns(n, &spanning)?.rank();
            if rank != spanning.len() {
                return Err(Error::Internal(format!(
                    "propagated stage {k} vectors are dependent for eigenvalue {lambda}"
                )));
            }
            for cand in kernels[k].columns() {
                if chosen.len() == omega.part(k) {
                    break;
                }
                spanning.push(cand.clone());
                let r = Matrix::from_columns(n, &spanning)?.rank();
                if r > rank {
                    rank = r;
                    chosen.push(cand);
                } else {
                    spanning.pop();
                }
            }
            if chosen.len() != omega.part(k) {
                return Err(Error::Internal(format!(
                    "stage {k} of eigenvalue {lambda}: found {} vectors, need {}",
                    chosen.len(),
                    omega.part(k)
                )));
            }
            stages[k] = chosen;
        }
        for stage in stages.into_iter().skip(1) {
            columns.extend(stage);
        }
    }
    let p = Matrix::from_columns(n, &columns)?;
    let p_inv = p.inverse()?;
    let w = weyr_matrix(s);
    if p_inv.matmul(a)?.matmul(&p)? != w {
        return Err(Error::Internal("P⁻¹AP differs from the Weyr matrix".into()));
    }
    Ok(WeyrDecomposition {
        structure: s.clone(),
        weyr: w,
        transform: p,
        transform_inv: p_inv,
    })
}

fn apply(m: &Matrix, v: &[Rational]) -> Result<Vec<Rational>> {
    Ok(m.matmul(&Matrix::from_columns(m.cols(), &[v.to_vec()])?)?.column(0))
}
