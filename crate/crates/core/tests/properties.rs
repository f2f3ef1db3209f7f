//! Algebraic invariants under random inputs.

mod common;

use common::{q, random_structure, realize};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use weyrkit::basis::{block_embed, kernel_basis_k};
use weyrkit::kernel::{
    invariant_table, kernel_dim, operator_eigenvalues, operator_weyr, operators_similar, pair_kernel_dim,
};
use weyrkit::matrix::subspace_intersection;
use weyrkit::poly::char_poly;
use weyrkit::weyr::{eigen_structure, weyr_transform};
use weyrkit::{BlockType, Matrix, Partition, Rational, SylvesterOperator};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| Rational::new(n, d))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(small_rational(), rows * cols)
        .prop_map(move |v| Matrix::from_fn(rows, cols, |i, j| v[i * cols + j].clone()))
}

fn any_matrix() -> impl Strategy<Value = Matrix> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| matrix(r, c))
}

fn square() -> impl Strategy<Value = Matrix> {
    (1usize..=4).prop_flat_map(|n| matrix(n, n))
}

fn partition() -> impl Strategy<Value = Partition> {
    (1usize..=7, any::<prop::sample::Index>()).prop_map(|(w, idx)| {
        let all = Partition::all_of_weight(w);
        all[idx.index(all.len())].clone()
    })
}

/// Literal evaluation of the double sum with all indices running as written.
fn naive_pair_kernel_dim(g: &Partition, d: &Partition, k: usize) -> usize {
    let bound = g.len().min(d.len());
    let mut total = 0i64;
    for r in 2..=k {
        for l in 0..=bound {
            total += g.part(r + l) as i64 * (d.part(1 + l) as i64 - d.part(2 + k - r + l) as i64);
        }
    }
    for l in 0..=bound {
        let tail: usize = (1..=k).map(|s| d.part(s + l)).sum();
        total += (g.part(1 + l) * tail) as i64;
    }
    usize::try_from(total).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rref_is_idempotent(m in any_matrix()) {
        let once = m.rref().reduced;
        prop_assert_eq!(once.rref().reduced, once.clone());
    }

    #[test]
    fn rank_plus_nullity(m in any_matrix()) {
        prop_assert_eq!(m.rank() + m.nullity(), m.cols());
        let ns = m.nullspace();
        prop_assert!(m.matmul(&ns).unwrap().is_zero());
        prop_assert_eq!(ns.rank(), ns.cols());
    }

    #[test]
    fn cayley_hamilton(a in square()) {
        prop_assert!(char_poly(&a).unwrap().eval_matrix(&a).unwrap().is_zero());
    }

    #[test]
    fn intersection_dimension(u in matrix(4, 2), v in matrix(4, 3)) {
        let cap = subspace_intersection(&u, &v).unwrap();
        let sum = u.hstack(&v).unwrap().rank();
        prop_assert_eq!(cap.cols() + sum, u.rank() + v.rank());
        // the intersection lies in both spans
        prop_assert_eq!(u.hstack(&cap).unwrap().rank(), u.rank());
        prop_assert_eq!(v.hstack(&cap).unwrap().rank(), v.rank());
    }

    #[test]
    fn vectorization_commutes(a in matrix(3, 3), b in matrix(2, 2), x in matrix(3, 2)) {
        let op = SylvesterOperator::new(a, b).unwrap();
        let direct = op.apply(&x).unwrap().vectorize();
        prop_assert_eq!(op.vectorize().matmul(&x.vectorize()).unwrap(), direct);
        prop_assert_eq!(Matrix::unvectorize(x.vectorize().entries(), 3, 2).unwrap(), x);
    }

    #[test]
    fn dual_is_an_involution(p in partition()) {
        prop_assert_eq!(p.dual().dual(), p.clone());
        prop_assert_eq!(p.dual().weight(), p.weight());
    }

    #[test]
    fn tightened_sum_matches_literal(g in partition(), d in partition(), k in 1usize..=14) {
        prop_assert_eq!(pair_kernel_dim(&g, &d, k), naive_pair_kernel_dim(&g, &d, k));
    }

    #[test]
    fn kernel_dim_at_one_is_a_dot_product(g in partition(), d in partition()) {
        let dot: usize = g.parts().iter().zip(d.parts()).map(|(a, b)| a * b).sum();
        prop_assert_eq!(pair_kernel_dim(&g, &d, 1), dot);
    }

    #[test]
    fn basis_counts_match_formula(g in partition(), d in partition(), k in 1usize..=8) {
        prop_assert_eq!(kernel_basis_k(&g, &d, k).unwrap().len(), pair_kernel_dim(&g, &d, k));
    }

    #[test]
    fn block_embed_is_linear(z1 in matrix(3, 3), z2 in matrix(3, 3), i in 1usize..=3, j in 1usize..=2) {
        let t = BlockType::new(vec![2, 3, 1], vec![3, 2]).unwrap();
        let sum = block_embed(&t, i, j, &z1.add(&z2).unwrap()).unwrap();
        let parts = block_embed(&t, i, j, &z1).unwrap().add(&block_embed(&t, i, j, &z2).unwrap()).unwrap();
        prop_assert_eq!(sum, parts);
    }

    #[test]
    fn structures_survive_conjugation(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_structure(&mut rng, 6, &[-2, 0, 1, 3]);
        let a = realize(&mut rng, &s);
        prop_assert_eq!(eigen_structure(&a).unwrap(), s.clone());
        let d = weyr_transform(&a).unwrap();
        prop_assert_eq!(d.transform_inv.matmul(&a).unwrap().matmul(&d.transform).unwrap(), d.weyr);
        prop_assert_eq!(d.structure, s);
    }

    #[test]
    fn operator_weyr_sums_to_full_dimension(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sa = random_structure(&mut rng, 6, &[-1, 0, 1, 2]);
        let sb = random_structure(&mut rng, 6, &[-1, 0, 1, 2]);
        let mut total = 0;
        for lambda in operator_eigenvalues(&sa, &sb) {
            let w = operator_weyr(&sa, &sb, &lambda).unwrap();
            prop_assert_eq!(w.index, w.characteristic.len());
            let shifted = sa.shifted(&lambda);
            for k in 1..=w.index {
                let step = kernel_dim(&shifted, &sb, k) - kernel_dim(&shifted, &sb, k - 1);
                prop_assert_eq!(w.characteristic.part(k), step);
            }
            total += w.characteristic.weight();
        }
        prop_assert_eq!(total, sa.dim() * sb.dim());
    }

    #[test]
    fn tables_are_similarity_invariant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sa = random_structure(&mut rng, 4, &[0, 1, 2]);
        let sb = random_structure(&mut rng, 4, &[0, 1, 2]);
        let (a1, a2) = (realize(&mut rng, &sa), realize(&mut rng, &sa));
        let (b1, b2) = (realize(&mut rng, &sb), realize(&mut rng, &sb));
        let t1 = invariant_table(&eigen_structure(&a1).unwrap(), &eigen_structure(&b1).unwrap()).unwrap();
        let t2 = invariant_table(&eigen_structure(&a2).unwrap(), &eigen_structure(&b2).unwrap()).unwrap();
        prop_assert!(operators_similar(&t1, &t2));
        prop_assert!(t1.contains_key(&q(0)) == sa.eigenvalues().any(|l| sb.characteristic(l).is_some()));
    }
}
