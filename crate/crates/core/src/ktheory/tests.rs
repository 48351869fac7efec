use super::*;
use crate::quad::{build_example_alpha_beta, build_example_mn, parse_cycles};

fn z(n: i64) -> BigInt {
    BigInt::from(n)
}

#[test]
fn smith_of_h22_presentation() {
    let b = ck_matrix(2, 2).unwrap();
    let m = b.a.add(&b.b).sub(&IntegerMatrix::identity(4));
    let s = smith_normal_form(&m);
    assert_eq!(s.diagonal(), vec![z(1), z(1), z(1), z(3)]);
}

#[test]
fn k_groups_examples() {
    assert_eq!(k_groups(2, 2).unwrap().to_string(), "K0 = Z/3, K1 = 0");
    assert_eq!(k_groups(2, 5).unwrap().k0.invariant_factors, vec![z(24)]);
    let b = ck_matrix(2, 3).unwrap();
    let m = b.a.add(&b.b).sub(&IntegerMatrix::identity(6));
    assert_eq!(cokernel(&m).to_string(), "Z/8");
    assert_eq!(kernel_rank(&m), 0);
}

// Regression snapshot; no closed form to compare against.
#[test]
fn k_groups_3_3_snapshot() {
    assert_eq!(
        k_groups(3, 3).unwrap().to_string(),
        "K0 = Z/2 ⊕ Z/2 ⊕ Z/2 ⊕ Z/10, K1 = 0"
    );
}

#[test]
fn lambda_circ_of_h22_is_a_plus_b() {
    let spec = build_example_mn(2, 2).unwrap();
    let b = ck_matrix(2, 2).unwrap();
    for route in [LambdaRoute::PerGenerator, LambdaRoute::Aggregate] {
        let lc = lambda_circ_matrix(&spec, 3, route).unwrap();
        assert_eq!(lc.matrix, b.a.add(&b.b));
        assert!(lc.reports.iter().all(|r| r.pass));
        assert_eq!(
            k_groups_of_endomorphism(&lc.matrix).unwrap(),
            k_groups(2, 2).unwrap()
        );
    }
}

#[test]
fn lambda_circ_of_permutation_module() {
    let s = parse_cycles(3, "(123)").unwrap();
    let spec = build_example_alpha_beta(3, &s, &s).unwrap();
    let lc = lambda_circ_matrix(&spec, 3, LambdaRoute::PerGenerator).unwrap();
    // Column sums are 2: each idempotent maps to one class per generator.
    for c in 0..lc.matrix.cols() {
        let sum: BigInt = (0..lc.matrix.rows())
            .map(|r| lc.matrix[(r, c)].clone())
            .sum();
        assert_eq!(sum, z(2));
    }
    let g = k_groups_of_endomorphism(&lc.matrix).unwrap();
    assert!(g.k0.order().is_some());
}

#[test]
fn mixed_basis_needs_the_aggregate_route() {
    let spec = build_example_mn(2, 2).unwrap();
    let mixed = spec.remix_basis(Leg::One, &unitary_3_4()).unwrap();
    assert!(matches!(
        lambda_circ_matrix(&mixed, 3, LambdaRoute::PerGenerator),
        Err(Error::AssumptionsViolated(_))
    ));
    let lc = lambda_circ_matrix(&mixed, 3, LambdaRoute::Aggregate).unwrap();
    assert_eq!(
        k_groups_of_endomorphism(&lc.matrix).unwrap(),
        k_groups(2, 2).unwrap()
    );
}

fn unitary_3_4() -> ExactMatrix {
    use crate::exact::GaussianRational as Q;
    let a = Q::from_ratio(3, 5);
    let b = Q::from_parts(0, 1, 4, 5);
    ExactMatrix::from_rows(vec![vec![a.clone(), b.clone()], vec![b, a]])
}

#[test]
fn zero_idempotent_has_zero_class() {
    let spec = build_example_mn(2, 2).unwrap();
    let lc = lambda_circ_matrix(&spec, 3, LambdaRoute::PerGenerator).unwrap();
    let zero_col = IntegerMatrix::zeros(4, 1);
    assert_eq!(lc.matrix.mul(&zero_col), zero_col);
}
