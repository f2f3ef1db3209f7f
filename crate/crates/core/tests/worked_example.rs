//! Golden values for the 5×5 pair with the single eigenvalue 2 and Weyr
//! characteristics (2,2,1) and (3,2).

mod common;

use common::{example_a, example_b, part, q};
use weyrkit::basis::{kernel_basis_k, operator_kernel_basis, pullback_basis};
use weyrkit::kernel::{
    centralizer_dim, invariant_table, kernel_dim, kernel_dim_report, kernel_index, operator_eigenvalues,
    operator_weyr,
};
use weyrkit::poly::{char_poly, Polynomial};
use weyrkit::weyr::{eigen_structure, weyr_characteristic, weyr_transform};
use weyrkit::{Matrix, SylvesterOperator};

#[test]
fn weyr_characteristics_and_nullities() {
    let (a, b) = (example_a(), example_b());
    assert_eq!(char_poly(&a).unwrap(), Polynomial::linear_power(&q(2), 5));
    assert_eq!(char_poly(&b).unwrap(), Polynomial::linear_power(&q(2), 5));
    assert_eq!(a.shift(&q(2)).unwrap().nullity_chain().unwrap(), vec![2, 4, 5]);
    assert_eq!(b.shift(&q(2)).unwrap().nullity_chain().unwrap(), vec![3, 5]);
    assert_eq!(weyr_characteristic(&a, &q(2)).unwrap(), part(&[2, 2, 1]));
    assert_eq!(weyr_characteristic(&b, &q(2)).unwrap(), part(&[3, 2]));
    let sa = eigen_structure(&a).unwrap();
    assert_eq!(sa.blocks(), &[(q(2), part(&[2, 2, 1]))]);
}

#[test]
fn kernel_dimensions_formula_and_oracle() {
    let sa = eigen_structure(&example_a()).unwrap();
    let sb = eigen_structure(&example_b()).unwrap();
    let formula: Vec<usize> = (1..=5).map(|k| kernel_dim(&sa, &sb, k)).collect();
    assert_eq!(formula, vec![10, 18, 23, 25, 25]);
    let op = SylvesterOperator::new(example_a(), example_b()).unwrap();
    assert_eq!(op.oracle_kernel_dims(5), formula);
    assert_eq!(op.oracle_kernel_profile(), vec![10, 18, 23, 25, 25]);

    let report = kernel_dim_report(&sa, &sb, 4);
    assert_eq!(report.totals, vec![10, 18, 23, 25]);
    assert_eq!(report.per_pair[&(0, 0)], vec![10, 18, 23, 25]);
    assert_eq!(kernel_index(&sa, &sb), Some(4));
}

#[test]
fn operator_structure() {
    let sa = eigen_structure(&example_a()).unwrap();
    let sb = eigen_structure(&example_b()).unwrap();
    assert_eq!(operator_eigenvalues(&sa, &sb), vec![q(0)]);
    let w = operator_weyr(&sa, &sb, &q(0)).unwrap();
    assert_eq!(w.characteristic, part(&[10, 8, 5, 2]));
    assert_eq!(w.index, 4);
    let table = invariant_table(&sa, &sb).unwrap();
    assert_eq!(table.len(), 1);
    assert_eq!(table[&q(0)], part(&[10, 8, 5, 2]));
}

#[test]
fn kernel_meets_images() {
    let op = SylvesterOperator::new(example_a(), example_b()).unwrap();
    let caps: Vec<usize> = (0..5).map(|ell| op.oracle_ker_cap_im(ell)).collect();
    assert_eq!(caps, vec![10, 8, 5, 2, 0]);
}

#[test]
fn centralizer_of_a() {
    let sa = eigen_structure(&example_a()).unwrap();
    assert_eq!(centralizer_dim(&sa), 9);
    let commutant = SylvesterOperator::new(example_a(), example_a()).unwrap();
    assert_eq!(commutant.oracle_kernel_dims(1), vec![9]);
}

#[test]
fn weyr_transforms_round_trip() {
    for m in [example_a(), example_b()] {
        let d = weyr_transform(&m).unwrap();
        assert_eq!(d.transform_inv.matmul(&m).unwrap().matmul(&d.transform).unwrap(), d.weyr);
        assert_eq!(d.transform.matmul(&d.transform_inv).unwrap(), Matrix::identity(5));
    }
}

#[test]
fn bases_in_both_coordinates() {
    let (a, b) = (example_a(), example_b());
    let (da, db) = (weyr_transform(&a).unwrap(), weyr_transform(&b).unwrap());
    let weyr_op = SylvesterOperator::new(da.weyr.clone(), db.weyr.clone()).unwrap();
    let op = SylvesterOperator::new(a, b).unwrap();
    for (k, count) in [(1, 10), (2, 18), (3, 23), (4, 25)] {
        let basis: Vec<Matrix> = operator_kernel_basis(&da.structure, &db.structure, k)
            .unwrap()
            .iter()
            .map(|e| e.materialize())
            .collect();
        assert_eq!(basis.len(), count);
        assert!(weyr_op.verify_kernel_basis(k, &basis).holds());
        let original = pullback_basis(&da, &db, &basis).unwrap();
        assert!(op.verify_kernel_basis(k, &original).holds(), "k = {k}");
    }
}

#[test]
fn dimension_table_rows() {
    let (g, d) = (part(&[2, 2, 1]), part(&[3, 2]));
    let labels = |k| -> Vec<String> {
        kernel_basis_k(&g, &d, k).unwrap().iter().map(ToString::to_string).collect()
    };
    let k1 = labels(1);
    assert_eq!(
        k1,
        [
            "E11⊠e13", "E11⊠e23", "(E11+E22)⊠e11", "(E11+E22)⊠e12", "(E11+E22)⊠e21", "(E11+E22)⊠e22",
            "E12⊠e11", "E12⊠e12", "E12⊠e21", "E12⊠e22",
        ]
    );
    let k2 = labels(2);
    assert_eq!(k2.len(), 18);
    assert!(k1.iter().all(|l| k2.contains(l)));
    for l in ["E21⊠e13", "E21⊠e23", "(E21+2E32)⊠e11", "(E21+2E32)⊠e12"] {
        assert!(k2.contains(&l.to_string()), "{l}");
    }
    assert!(labels(3).contains(&"E31⊠e13".to_string()));
}
