use super::*;
use crate::fock::build_fock;
use crate::quad::{build_example_alpha_beta, build_example_mn, parse_cycles, QuadModuleSpec};
use crate::report::all_pass;

fn mn(m: usize, n: usize, depth: usize) -> TruncatedFock {
    build_fock(&build_example_mn(m, n).unwrap(), depth).unwrap()
}

fn example1_spec() -> QuadModuleSpec {
    let s = parse_cycles(3, "(123)").unwrap();
    let t = parse_cycles(3, "(132)").unwrap();
    build_example_alpha_beta(3, &s, &t).unwrap()
}

fn failures(reports: &[IdentityWindowReport]) -> Vec<String> {
    reports
        .iter()
        .filter(|r| !r.pass)
        .map(|r| r.to_string())
        .collect()
}

#[test]
fn generators_need_depth_three() {
    let f = mn(2, 2, 2);
    assert!(matches!(
        make_generators(&f),
        Err(Error::DepthTooSmall(2, 3))
    ));
}

#[test]
fn expansion_of_creation_operators() {
    let f = mn(2, 2, 3);
    let gen = make_generators(&f).unwrap();
    assert!(all_pass(&gen.expansion), "{:?}", failures(&gen.expansion));
    assert_eq!(gen.window, (2, 2));
    // u₀ + u₁ is the all-ones vector, so its creation operator is S₀ + S₁.
    let ones = vec![Q::one(); 4];
    assert_eq!(f.s(&ones), &gen.s[0] + &gen.s[1]);

    let f = build_fock(&example1_spec(), 3).unwrap();
    let gen = make_generators(&f).unwrap();
    assert_eq!((gen.s.len(), gen.t.len()), (1, 1));
    assert!(all_pass(&gen.expansion));
}

#[test]
fn section4_relations_hold() {
    for f in [
        mn(2, 2, 4),
        mn(2, 3, 3),
        build_fock(&example1_spec(), 3).unwrap(),
    ] {
        let gen = make_generators(&f).unwrap();
        let reports = verify_section4(&gen);
        assert_eq!(reports.len(), 12);
        assert!(all_pass(&reports), "{:?}", failures(&reports));
    }
}

#[test]
fn swapped_coefficient_images_break_intertwining() {
    let f = mn(2, 2, 3);
    let mut gen = make_generators(&f).unwrap();
    gen.phi1.swap(0, 1);
    let reports = verify_section4(&gen);
    let bad: Vec<&IdentityWindowReport> = reports.iter().filter(|r| !r.pass).collect();
    assert!(bad.iter().any(|r| r.id.starts_with("phi1_")));
    for r in bad {
        let w = r.witness.as_ref().unwrap();
        assert!(!w.value.is_empty());
    }
}

#[test]
fn relations_h_hold() {
    for f in [mn(2, 2, 3), build_fock(&example1_spec(), 3).unwrap()] {
        let gen = make_generators(&f).unwrap();
        let reports = verify_relations_h(&gen);
        assert!(all_pass(&reports), "{:?}", failures(&reports));
    }
}

#[test]
fn unit_decomposition_fails_below_level_two() {
    let f = mn(2, 2, 3);
    let gen = make_generators(&f).unwrap();
    let ss = gen.sum(gen.s.iter().chain(&gen.t).map(|x| x * &x.adjoint()));
    let residual = &ss - &f.identity();
    assert!(!residual.restrict_cols(0, 1).is_zero());
    assert!(residual.restrict_cols(2, 3).is_zero());
}

#[test]
fn bcirc_of_mn_is_the_full_diagonal() {
    let spec = build_example_mn(2, 3).unwrap();
    let model = build_bcirc(&spec);
    assert_eq!(model.dim(), 6);
    assert!(model.is_commutative());
    let mins = model.minimal_idempotents().unwrap();
    assert_eq!(mins.len(), 6);
    for p in &mins {
        assert_eq!(&p.mul(p), p);
    }
    assert!(model.contains(&ExactMatrix::identity(6)));
    let mut off = ExactMatrix::zeros(6, 6);
    off[(0, 1)] = Q::one();
    assert!(!model.contains(&off));
}

#[test]
fn bcirc_of_example1_merges_coordinates() {
    let spec = example1_spec();
    let model = build_bcirc(&spec);
    assert!(model.is_commutative());
    let mins = model.minimal_idempotents().unwrap();
    assert_eq!(mins.len(), model.dim());
    let total = mins
        .iter()
        .fold(ExactMatrix::zeros(3, 3), |acc, p| acc.add(p));
    assert_eq!(total, ExactMatrix::identity(3));
    let coeffs = model.decompose(&ExactMatrix::identity(3)).unwrap().unwrap();
    assert!(coeffs.iter().all(|c| c.is_one()));
}

#[test]
fn pi_reproduces_lifts() {
    let f = mn(2, 2, 3);
    let gen = make_generators(&f).unwrap();
    let model = build_bcirc(f.spec());
    for l in &model.basis {
        let img = compute_pi(&gen, &model, l).unwrap();
        assert!(all_pass(&img.reports), "{:?}", failures(&img.reports));
    }
    let r = verify_pi_multiplicative(&gen, &model);
    assert!(r.pass, "{r}");
}

#[test]
fn pi_rejects_operators_outside_bcirc() {
    let f = mn(2, 2, 3);
    let gen = make_generators(&f).unwrap();
    let model = build_bcirc(f.spec());
    let mut l = ExactMatrix::zeros(4, 4);
    l[(0, 3)] = Q::one();
    assert!(matches!(
        compute_pi(&gen, &model, &l),
        Err(Error::NotInBCirc(_))
    ));
}

#[test]
fn section5_core_holds() {
    for f in [
        mn(2, 2, 3),
        mn(2, 3, 3),
        build_fock(&example1_spec(), 3).unwrap(),
    ] {
        let gen = make_generators(&f).unwrap();
        let model = build_bcirc(f.spec());
        let reports = verify_section5_core(&gen, &model).unwrap();
        assert!(all_pass(&reports), "{:?}", failures(&reports));
    }
}

#[test]
fn filtration_dimensions() {
    let f = mn(2, 2, 4);
    let gen = make_generators(&f).unwrap();
    let model = build_bcirc(f.spec());
    let dims = core_filtration_dims(&gen, &model, 2).unwrap();
    assert_eq!(dims[0], 4);
    assert!(dims.windows(2).all(|w| w[0] <= w[1]), "{dims:?}");
    assert!(core_filtration_dims(&gen, &model, 4).is_err());
}

#[test]
fn every_mutation_is_detected() {
    let spec = build_example_mn(2, 2).unwrap();
    assert_eq!(first_failure(&spec, 3), None);
    let catalogue = mutation_catalogue();
    assert_eq!(catalogue.len(), 10);
    for m in &catalogue {
        let out = run_mutation(&spec, m, 3);
        assert!(out.detected, "{} not detected", m.name);
        assert!(!out.witness.unwrap().is_empty());
    }
}
