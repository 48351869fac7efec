use super::*;
use crate::quad::{build_example_alpha_beta, build_example_mn, parse_cycles};

fn h22(depth: usize) -> TruncatedFock {
    build_fock(&build_example_mn(2, 2).unwrap(), depth).unwrap()
}

fn example1(depth: usize) -> TruncatedFock {
    let s = parse_cycles(3, "(123)").unwrap();
    let t = parse_cycles(3, "(132)").unwrap();
    build_fock(&build_example_alpha_beta(3, &s, &t).unwrap(), depth).unwrap()
}

fn q(n: i64) -> Q {
    Q::from(n)
}

fn sum(ops: impl IntoIterator<Item = FockOperator>, fock: &TruncatedFock) -> FockOperator {
    ops.into_iter().fold(fock.zero(), |acc, x| &acc + &x)
}

#[test]
fn level_dimensions() {
    let f = h22(3);
    assert_eq!(f.level_dims(), vec![4, 4, 16, 64]);
    assert!(
        f.checks().all_pass(),
        "{:?}",
        f.checks().failures().collect::<Vec<_>>()
    );
    let f = example1(4);
    assert_eq!(f.level_dims(), vec![6, 3, 6, 12, 24]);
    assert!(f.checks().all_pass());
}

#[test]
fn level3_words_of_h23() {
    let f = build_fock(&build_example_mn(2, 3).unwrap(), 3).unwrap();
    let dims: Vec<usize> = FockLayout::components_at(3)
        .map(|c| f.layout().dim(c))
        .collect();
    assert_eq!(dims, vec![24, 36, 36, 54]);
    assert!(f.checks().get("associativity").unwrap().pass);
}

#[test]
fn depth_below_two_is_rejected() {
    let s = build_example_mn(2, 2).unwrap();
    assert!(matches!(build_fock(&s, 1), Err(Error::DepthTooSmall(1, 2))));
}

#[test]
fn cap_is_enforced_before_building() {
    let s = build_example_mn(2, 2).unwrap();
    assert!(matches!(
        build_fock_with_cap(&s, 3, 40),
        Err(Error::TooLarge { cap: 40, .. })
    ));
    assert!(build_fock_with_cap(&s, 3, 200).is_ok());
}

#[test]
fn dense_ambient_budget_is_enforced() {
    let s = build_example_mn(5, 5).unwrap();
    let cap = super::ambient_dim_cap(&s);
    assert!(cap < 625);
    assert!(matches!(build_fock(&s, 2), Err(Error::TooLarge { dim: 625, cap: c }) if c == cap));
}

#[test]
fn creation_on_level0_unit() {
    let f = h22(3);
    let spec = f.spec().clone();
    let u1 = &spec.basis_u[0];
    let v = f.level0_vector(&f.unit(Leg::One), &vec![Q::zero(); 2]);
    assert_eq!(f.s(u1).apply(&v), f.level1_vector(u1));
}

#[test]
fn annihilation_on_level1_is_b1_inner_product() {
    let f = h22(3);
    let spec = f.spec().clone();
    let (u1, u2) = (&spec.basis_u[0], &spec.basis_u[1]);
    let s1 = f.s(u1).adjoint();
    assert!(algebra::is_zero_vec(&s1.apply(&f.level1_vector(u2))));
    for a in 0..4 {
        let e = f.h_basis(a);
        let expected = f.level0_vector(&spec.inner_b_of(Leg::One, u1, &e), &[Q::zero(), Q::zero()]);
        assert_eq!(s1.apply(&f.level1_vector(&e)), expected);
    }
}

#[test]
fn adjoint_case_split_by_leading_letter() {
    let f = example1(3);
    let spec = f.spec().clone();
    let xi = vec![q(1), q(2), Q::i()];
    let sstar = f.s(&xi).adjoint();
    for comp in 2..f.layout().num_components() {
        let (level, word) = FockLayout::word(comp);
        let tail = FockLayout::component(level - 1, &word[1..]);
        for a in 0..3 {
            for b in 0..f.layout().dim(tail) {
                let y = basis_vector(f.layout().dim(tail), b);
                let (target, v) = f.tensor_class(word[0], &f.h_basis(a), tail, &y);
                assert_eq!(target, comp);
                let got = sstar.apply(&f.layout().inject(comp, &v));
                let expected = match word[0] {
                    Leg::One => {
                        let c = spec.inner_b_of(Leg::One, &xi, &f.h_basis(a));
                        let y2 = f
                            .left_action(Leg::One, &c)
                            .apply(&f.layout().inject(tail, &y));
                        y2
                    }
                    Leg::Two => vec![Q::zero(); f.total_dim()],
                };
                assert_eq!(got, expected, "word {}", word_label(&word));
            }
        }
    }
}

#[test]
fn mixed_annihilation_vanishes_above_level0() {
    let f = h22(3);
    let spec = f.spec().clone();
    for xi in &spec.basis_u {
        for zeta in &spec.basis_v {
            let ts = &f.t(zeta).adjoint() * &f.s(xi);
            assert!(ts.restrict_cols(1, 3).is_zero());
            let st = &f.s(xi).adjoint() * &f.t(zeta);
            assert!(st.restrict_cols(1, 3).is_zero());
        }
    }
}

#[test]
fn creation_is_a_right_module_map() {
    for f in [h22(3), example1(3)] {
        let xi: Vec<Q> = (0..f.dim_h()).map(|k| q(k as i64 + 1)).collect();
        for j in 0..f.spec().dim_a() {
            let a = basis_vector(f.spec().dim_a(), j);
            let r = f.right_action_a(&a);
            for op in [f.s(&xi), f.t(&xi)] {
                assert!((&(&op * &r) - &(&r * &op)).is_zero());
            }
        }
    }
}

#[test]
fn creation_is_linear() {
    let f = example1(3);
    let (x, y) = (vec![q(1), q(0), q(2)], vec![Q::i(), q(1), q(0)]);
    let (c, d) = (Q::from_ratio(1, 2), Q::from_parts(0, 1, 3, 1));
    let combo: Vec<Q> = x.iter().zip(&y).map(|(a, b)| &c * a + &d * b).collect();
    let lhs = f.s(&combo);
    let rhs = &f.s(&x).scale(&c) + &f.s(&y).scale(&d);
    assert_eq!(lhs, rhs);
}

#[test]
fn left_action_unit_and_multiplicativity() {
    let f = h22(3);
    let spec = f.spec().clone();
    let one = f.left_action(Leg::One, &f.unit(Leg::One));
    for xi in &spec.basis_u {
        assert_eq!(&one * &f.s(xi), f.s(xi));
    }
    let (z, z2) = (vec![q(2), Q::i()], vec![q(-1), q(3)]);
    assert_eq!(
        &f.left_action(Leg::One, &z) * &f.left_action(Leg::One, &z2),
        f.left_action(Leg::One, &algebra::mul(&z, &z2))
    );
    for leg in Leg::BOTH {
        for e in f.idempotents(leg) {
            assert!(!f.left_action(leg, &e).is_zero());
        }
    }
}

#[test]
fn lifted_operator_sandwich() {
    let f = h22(3);
    let spec = f.spec().clone();
    let w = vec![q(1), q(-2)];
    let l = spec.phi_of(Leg::Two, &w);
    let lbar = f.lift(&l).unwrap();
    let k = f.depth();
    for zeta in &spec.basis_u {
        for xi in &spec.basis_u {
            let lhs = &(&f.s(zeta).adjoint() * &lbar) * &f.s(xi);
            let b = spec.inner_b_of(Leg::One, zeta, &l.mul_vec(xi));
            let rhs = f.left_action(Leg::One, &b);
            assert!((&lhs - &rhs).restrict_cols(0, k - 1).is_zero());
        }
    }
}

#[test]
fn projections_decompose_identity() {
    let f = h22(3);
    let spec = f.spec().clone();
    let (p, ps, pt) = f.projections();
    for (n, pn) in p.iter().enumerate() {
        assert!(pn.is_projection());
        for (m, pm) in p.iter().enumerate() {
            if n != m {
                assert!((pn * pm).is_zero());
            }
        }
    }
    assert_eq!(&(&ps + &pt) + &(&p[0] + &p[1]), f.identity());

    let k = f.depth();
    let ss = sum(spec.basis_u.iter().map(|u| &f.s(u) * &f.s(u).adjoint()), &f);
    let tt = sum(spec.basis_v.iter().map(|v| &f.t(v) * &f.t(v).adjoint()), &f);
    assert!((&ss - &(&p[1] + &ps)).restrict_cols(0, k - 1).is_zero());
    let lhs = &(&ss + &tt) + &p[0];
    let rhs = &f.identity() + &p[1];
    assert!((&lhs - &rhs).restrict_cols(0, k - 1).is_zero());
}

#[test]
fn gauge_grading() {
    let f = h22(3);
    let spec = f.spec().clone();
    let xis = vec![spec.basis_u[0].clone(), spec.basis_v[1].clone()];
    let r = f.gauge_check(&xis, &f.idempotents(Leg::One), &f.idempotents(Leg::Two));
    assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
    let u = f.gauge_unitary();
    let u2 = &u * &u;
    assert_eq!(&u2 * &u2, f.identity());
}

#[test]
fn degree_zero_part_examples() {
    let f = h22(3);
    let spec = f.spec().clone();
    let s = f.s(&spec.basis_u[0]);
    assert!(s.degree_zero_part().is_zero());
    assert_eq!(s.degree(), Some(Degree::Homogeneous(1)));
    let z = f.left_action(Leg::One, &[q(1), q(2)]);
    assert_eq!(z.degree_zero_part(), z);
    let st = &s * &f.t(&spec.basis_v[0]).adjoint();
    assert_eq!(st.degree_zero_part(), st);
    let mixed = &s + &z;
    assert_eq!(mixed.degree_zero_part().degree_zero_part(), z);
}

#[test]
fn truncation_is_monotone() {
    let (f3, f4) = (h22(3), h22(4));
    let xi = f3.spec().basis_u[1].clone();
    let (a, b) = (f3.s(&xi), f4.s(&xi));
    for ((r, c), m) in a.blocks() {
        assert_eq!(b.block(*r, *c), Some(m));
    }
    let z = vec![q(3), q(1)];
    let (a, b) = (f3.left_action(Leg::Two, &z), f4.left_action(Leg::Two, &z));
    for ((r, c), m) in a.blocks() {
        assert_eq!(b.block(*r, *c), Some(m));
    }
}
