//! Random inputs with known rational spectra.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use weyrkit::weyr::weyr_matrix;
use weyrkit::{EigenStructure, Matrix, Partition, Rational};

pub fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

pub fn part(p: &[usize]) -> Partition {
    Partition::new(p.to_vec()).unwrap()
}

pub fn example_a() -> Matrix {
    Matrix::from_i64(&[
        [4, 2, 0, 2, 2],
        [1, 3, 1, 0, 1],
        [-2, -2, 1, -1, -2],
        [-1, -2, -1, 1, 0],
        [-1, -1, 0, -1, 1],
    ])
}

pub fn example_b() -> Matrix {
    Matrix::from_i64(&[
        [5, 4, 2, 3, 1],
        [-1, 0, -1, -1, -1],
        [-2, -4, 0, -2, -2],
        [-1, 0, 0, 1, 1],
        [2, 4, 2, 2, 4],
    ])
}

/// A uniformly chosen partition of a weight in `1..=max_weight`.
pub fn random_partition(rng: &mut impl Rng, max_weight: usize) -> Partition {
    let w = rng.gen_range(1..=max_weight);
    Partition::all_of_weight(w).choose(rng).unwrap().clone()
}

/// Up to three distinct eigenvalues drawn from `pool`, total weight at most
/// `max_dim`.
pub fn random_structure(rng: &mut impl Rng, max_dim: usize, pool: &[i64]) -> EigenStructure {
    let count = rng.gen_range(1..=3.min(max_dim).min(pool.len()));
    let eigenvalues: Vec<i64> = pool.choose_multiple(rng, count).copied().collect();
    let mut budget = max_dim;
    let mut blocks = Vec::new();
    for (idx, lambda) in eigenvalues.into_iter().enumerate() {
        let reserve = count - idx - 1;
        let p = random_partition(rng, budget - reserve);
        budget -= p.weight();
        blocks.push((q(lambda), p));
    }
    EigenStructure::new(blocks).unwrap()
}

/// A product of integer elementary matrices, so its inverse is integral too.
pub fn random_unimodular(rng: &mut impl Rng, n: usize) -> Matrix {
    let mut p = Matrix::identity(n);
    if n < 2 {
        return p;
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = q(*[-2, -1, 1, 2].choose(rng).unwrap());
        let mut e = Matrix::identity(n);
        e[(i, j)] = c;
        p = p.matmul(&e).unwrap();
    }
    p
}

/// `P·M·P⁻¹` for a random unimodular `P`.
pub fn conjugate(rng: &mut impl Rng, m: &Matrix) -> Matrix {
    let p = random_unimodular(rng, m.rows());
    p.matmul(m).unwrap().matmul(&p.inverse().unwrap()).unwrap()
}

/// A random matrix with the given eigen-structure.
pub fn realize(rng: &mut impl Rng, s: &EigenStructure) -> Matrix {
    conjugate(rng, &weyr_matrix(s))
}
