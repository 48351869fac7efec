//! Identities for creation operators, their adjoints and lifted operators
//! that hold on the whole Fock module, before any generator is fixed.

use crate::algebra::{self, basis_vector};
use crate::exact::{ExactMatrix, GaussianRational};
use crate::fock::{FockOperator, TruncatedFock};
use crate::quad::Leg;
use crate::report::IdentityWindowReport;

use super::{failure, sample_elements, window_check};

type Q = GaussianRational;

fn creation(fock: &TruncatedFock, leg: Leg, xi: &[Q]) -> FockOperator {
    match leg {
        Leg::One => fock.s(xi),
        Leg::Two => fock.t(xi),
    }
}

fn letter(leg: Leg) -> &'static str {
    match leg {
        Leg::One => "s",
        Leg::Two => "t",
    }
}

/// Operators `L` on `H` used for lifts: identity, `φ₁(z)`, `φ₂(w)` and
/// `φ₁(z)φ₂(w)` for generic `z`, `w`.
fn sample_operators(fock: &TruncatedFock) -> Vec<(String, ExactMatrix)> {
    let spec = fock.spec();
    let z = sample_elements(spec.dim_b(Leg::One)).pop().unwrap();
    let w = sample_elements(spec.dim_b(Leg::Two)).pop().unwrap();
    let (pz, pw) = (spec.phi_of(Leg::One, &z), spec.phi_of(Leg::Two, &w));
    vec![
        ("L=1".into(), ExactMatrix::identity(spec.dim_h)),
        ("L=φ1(z)".into(), pz.clone()),
        ("L=φ2(w)".into(), pw.clone()),
        ("L=φ1(z)φ2(w)".into(), pz.mul(&pw)),
    ]
}

/// `s_ξ*` on level 1 as the matrix `ξ' ↦ ⟨ξ|ξ'⟩_B1 ⊕ 0`, and the `t` analogue.
fn level1_adjoint_formula(fock: &TruncatedFock, leg: Leg, xi: &[Q]) -> FockOperator {
    let spec = fock.spec();
    let (d1, d2) = (spec.dim_b(Leg::One), spec.dim_b(Leg::Two));
    let n = spec.dim_h;
    let m = ExactMatrix::from_fn(d1 + d2, n, |r, c| {
        let ip = spec.inner_b_of(leg, xi, &basis_vector(n, c));
        match (leg, r < d1) {
            (Leg::One, true) => ip[r].clone(),
            (Leg::Two, false) => ip[r - d1].clone(),
            _ => Q::from(0),
        }
    });
    let mut op = FockOperator::zero(fock.layout());
    op.set_block(0, 1, m);
    op
}

/// Right module maps, adjoint formulas, linearity, transport of `L` and
/// `z`, the sandwich identity and the coefficient homomorphisms.
pub fn verify_fock_identities(fock: &TruncatedFock) -> Vec<IdentityWindowReport> {
    let spec = fock.spec();
    let k = fock.depth();
    let exact = (0, k - 1);
    let full = (0, k);
    let n = spec.dim_h;
    let vectors = sample_elements(n);
    let a_elems = sample_elements(spec.dim_a());
    let ops = sample_operators(fock);
    let lifts: Vec<(String, FockOperator)> = ops
        .iter()
        .filter_map(|(label, l)| fock.lift(l).ok().map(|op| (label.clone(), op)))
        .collect();
    let mut out = Vec::new();
    if lifts.len() != ops.len() {
        out.push(failure(
            "lift_defined",
            "L ⊗ 1 descends to every tensor level",
            full,
            "a sample operator does not descend".into(),
        ));
    }

    for leg in Leg::BOTH {
        let x = letter(leg);
        let b = leg.number();
        let creators: Vec<FockOperator> = vectors.iter().map(|v| creation(fock, leg, v)).collect();

        out.push(window_check(
            &format!("{x}_right_module_map"),
            &format!("{x}_ξ(ζa) = ({x}_ξ ζ)a"),
            exact,
            creators.iter().enumerate().flat_map(|(i, c)| {
                a_elems.iter().enumerate().map(move |(j, a)| {
                    let r = fock.right_action_a(a);
                    (format!("ξ{i}, a{j}"), &(c * &r) - &(&r * c))
                })
            }),
        ));

        out.push(window_check(
            &format!("{x}_adjoint_level1"),
            &format!("{x}_ξ* ξ' = ⟨ξ|ξ'⟩_B{b} in summand B{b} of level 0"),
            (1, 1),
            creators
                .iter()
                .zip(&vectors)
                .enumerate()
                .map(|(i, (c, v))| {
                    (
                        format!("ξ{i}"),
                        &c.adjoint() - &level1_adjoint_formula(fock, leg, v),
                    )
                }),
        ));

        out.push(window_check(
            &format!("{x}_adjoint_same_leg"),
            &format!("{x}_ξ* {x}_ζ = φ̄{b}(⟨ξ|ζ⟩_B{b})"),
            exact,
            vectors.iter().enumerate().flat_map(|(i, xi)| {
                let ca = creators[i].adjoint();
                vectors.iter().enumerate().map(move |(j, zeta)| {
                    let coeff = spec.inner_b_of(leg, xi, zeta);
                    let lhs = &ca * &creation(fock, leg, zeta);
                    (format!("ξ{i}, ζ{j}"), &lhs - &fock.left_action(leg, &coeff))
                })
            }),
        ));

        let y = letter(leg.other());
        out.push(window_check(
            &format!("{x}_adjoint_other_leg"),
            &format!("{x}_ξ* {y}_ζ = 0 above level 0"),
            (1, k),
            creators.iter().enumerate().flat_map(|(i, c)| {
                let ca = c.adjoint();
                vectors.iter().enumerate().map(move |(j, zeta)| {
                    (
                        format!("ξ{i}, ζ{j}"),
                        &ca * &creation(fock, leg.other(), zeta),
                    )
                })
            }),
        ));

        let (c1, c2) = (Q::from_parts(1, 2, 0, 1), Q::from_parts(-1, 1, 3, 1));
        out.push(window_check(
            &format!("{x}_linear"),
            &format!("{x}_(cξ+dζ) = c {x}_ξ + d {x}_ζ"),
            full,
            (0..vectors.len()).flat_map(|i| {
                let creators = &creators;
                let vectors = &vectors;
                let (c1, c2) = (c1.clone(), c2.clone());
                (0..vectors.len()).map(move |j| {
                    let combo = algebra::add(
                        &algebra::scale(&c1, &vectors[i]),
                        &algebra::scale(&c2, &vectors[j]),
                    );
                    let rhs = &creators[i].scale(&c1) + &creators[j].scale(&c2);
                    (format!("ξ{i}, ζ{j}"), &creation(fock, leg, &combo) - &rhs)
                })
            }),
        ));

        let coeffs = sample_elements(spec.dim_b(leg));
        out.push(window_check(
            &format!("{x}_transport"),
            &format!("{x}_(Lξϕ{b}(z)) = L̄ {x}_ξ φ̄{b}(z)"),
            exact,
            lifts.iter().flat_map(|(label, lbar)| {
                let l = &ops.iter().find(|(n, _)| n == label).unwrap().1;
                let coeffs = &coeffs;
                let creators = &creators;
                vectors.iter().enumerate().flat_map(move |(i, xi)| {
                    coeffs.iter().enumerate().map(move |(j, z)| {
                        let moved = spec.varphi_of(leg, z).mul_vec(&l.mul_vec(xi));
                        let rhs = &(lbar * &creators[i]) * &fock.left_action(leg, z);
                        (
                            format!("{label}, ξ{i}, z{j}"),
                            &creation(fock, leg, &moved) - &rhs,
                        )
                    })
                })
            }),
        ));

        out.push(window_check(
            &format!("{x}_sandwich"),
            &format!("{x}_ζ* L̄ {x}_ξ = φ̄{b}(⟨ζ|Lξ⟩_B{b})"),
            exact,
            lifts.iter().flat_map(|(label, lbar)| {
                let l = &ops.iter().find(|(n, _)| n == label).unwrap().1;
                let creators = &creators;
                let vectors = &vectors;
                (0..vectors.len()).flat_map(move |i| {
                    (0..vectors.len()).map(move |j| {
                        let coeff = spec.inner_b_of(leg, &vectors[j], &l.mul_vec(&vectors[i]));
                        let lhs = &(&creators[j].adjoint() * lbar) * &creators[i];
                        (
                            format!("{label}, ζ{j}, ξ{i}"),
                            &lhs - &fock.left_action(leg, &coeff),
                        )
                    })
                })
            }),
        ));

        let elems = sample_elements(spec.dim_b(leg));
        out.push(window_check(
            &format!("phi_bar{b}_homomorphism"),
            &format!("φ̄{b}(z)φ̄{b}(z') = φ̄{b}(zz'), φ̄{b}(z)* = φ̄{b}(z*)"),
            full,
            elems.iter().enumerate().flat_map(|(i, z)| {
                let pz = fock.left_action(leg, z);
                let star = (
                    format!("z{i}*"),
                    &pz.adjoint() - &fock.left_action(leg, &algebra::star(z)),
                );
                let elems = &elems;
                std::iter::once(star).chain(elems.iter().enumerate().map(move |(j, w)| {
                    let prod = &pz * &fock.left_action(leg, w);
                    (
                        format!("z{i}, z{j}"),
                        &prod - &fock.left_action(leg, &algebra::mul(z, w)),
                    )
                }))
            }),
        ));
        let zero_image = fock
            .idempotents(leg)
            .iter()
            .position(|e| fock.left_action(leg, e).is_zero());
        out.push(IdentityWindowReport::new(
            format!("phi_bar{b}_faithful"),
            format!("φ̄{b}(e) ≠ 0 for each minimal idempotent e"),
            full,
            zero_image.map(|j| crate::report::EntryWitness::note(format!("φ̄{b}(e{j}) = 0"))),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::build_fock;
    use crate::quad::{build_example_alpha_beta, build_example_mn, parse_cycles};

    fn assert_all_pass(fock: &TruncatedFock) {
        let reports = verify_fock_identities(fock);
        assert_eq!(reports.len(), 18);
        let bad: Vec<String> = reports
            .iter()
            .filter(|r| !r.pass)
            .map(ToString::to_string)
            .collect();
        assert!(bad.is_empty(), "{bad:#?}");
    }

    #[test]
    fn hold_for_h22_and_h23() {
        assert_all_pass(&build_fock(&build_example_mn(2, 2).unwrap(), 3).unwrap());
        assert_all_pass(&build_fock(&build_example_mn(2, 3).unwrap(), 3).unwrap());
    }

    #[test]
    fn hold_for_permutation_module() {
        let (s, t) = (
            parse_cycles(3, "(123)").unwrap(),
            parse_cycles(3, "(132)").unwrap(),
        );
        let spec = build_example_alpha_beta(3, &s, &t).unwrap();
        assert_all_pass(&build_fock(&spec, 3).unwrap());
    }

    #[test]
    fn level1_formula_distinguishes_legs() {
        let fock = build_fock(&build_example_mn(2, 2).unwrap(), 2).unwrap();
        let u = fock.spec().basis_u[0].clone();
        let wrong = &fock.s(&u).adjoint() - &level1_adjoint_formula(&fock, Leg::Two, &u);
        assert!(wrong.restrict_cols(1, 1).witness().is_some());
    }
}
