//! Axiom, finite-type and strongly-finite-type checks. Every identity is
//! multilinear, so checking it on basis tuples is exact.

use num_traits::Zero;

use super::{Leg, QuadModuleSpec};
use crate::algebra::{self, basis_vector, format_vec, AlgebraHom};
use crate::error::{Error, Result};
use crate::exact::{
    gram_adjoint, psd_check, Definiteness, ExactMatrix, GaussianRational, GramForm,
};
use crate::report::ValidationReport;

type Q = GaussianRational;

fn e(n: usize, j: usize) -> Vec<Q> {
    basis_vector(n, j)
}

fn mismatch(lhs: &[Q], rhs: &[Q]) -> String {
    format!("lhs={} rhs={}", format_vec(lhs), format_vec(rhs))
}

fn first_failure<I, F>(iter: I, f: F) -> Option<String>
where
    I: IntoIterator,
    F: FnMut(I::Item) -> Option<String>,
{
    iter.into_iter().find_map(f)
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)))
}

fn triples(n: usize, d: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    pairs(n).flat_map(move |(a, b)| (0..d).map(move |c| (a, b, c)))
}

fn label(leg: Leg) -> usize {
    leg.number()
}

/// Family of matrices representing a unital homomorphism of `ℂ^d`.
fn family_homomorphism(ops: &[ExactMatrix], unital: bool) -> Option<String> {
    let d = ops.len();
    let n = ops[0].rows();
    for j in 0..d {
        for k in 0..d {
            let prod = ops[j].mul(&ops[k]);
            let expected = if j == k {
                ops[j].clone()
            } else {
                ExactMatrix::zeros(n, n)
            };
            if prod != expected {
                return Some(format!(
                    "idempotents e{j}, e{k}: product of actions is not the action of the product"
                ));
            }
        }
    }
    if unital {
        let sum = algebra::act(ops, &vec![Q::from(1); d]);
        if sum != ExactMatrix::identity(n) {
            return Some("action of the unit is not the identity".into());
        }
    }
    None
}

/// Positivity: every coordinate Gram is PSD and the scalarized Gram is definite.
fn positivity(t: &super::InnerTensor, d: usize) -> Option<String> {
    for c in 0..d {
        let g = t.component_gram(c);
        match psd_check(&g) {
            Ok(Definiteness::Indefinite) => {
                return Some(format!("coordinate {c} of the form is indefinite"))
            }
            Err(_) => return Some(format!("coordinate {c} of the form is not Hermitian")),
            Ok(_) => {}
        }
    }
    match psd_check(&t.scalar_gram()) {
        Ok(Definiteness::PositiveDefinite) => None,
        _ => {
            let k = t.scalar_gram().kernel_basis();
            Some(format!(
                "nonzero vector with zero norm: {}",
                k.first().map(|v| format_vec(v)).unwrap_or_default()
            ))
        }
    }
}

fn conjugate_symmetry(t: &super::InnerTensor) -> Option<String> {
    first_failure(pairs(t.dim_h()), |(a, b)| {
        let lhs = algebra::star(t.entry(a, b));
        (lhs != t.entry(b, a))
            .then(|| format!("xi=e{a}, eta=e{b}: {}", mismatch(&lhs, t.entry(b, a))))
    })
}

/// `⟨ξ|η·x⟩ = ⟨ξ|η⟩·κ(x)` with `η·x = ops(x) η`.
fn right_linearity(
    spec: &QuadModuleSpec,
    t: &super::InnerTensor,
    t_dim: usize,
    ops: &[ExactMatrix],
    kappa: impl Fn(&[Q]) -> Vec<Q>,
) -> Option<String> {
    let n = spec.dim_h;
    first_failure(triples(n, ops.len()), |(a, b, j)| {
        let xj = e(ops.len(), j);
        let eta = ops[j].mul_vec(&e(n, b));
        let lhs = t.eval(&e(n, a), &eta, t_dim);
        let rhs = algebra::mul(t.entry(a, b), &kappa(&xj));
        (lhs != rhs).then(|| format!("xi=e{a}, eta=e{b}, x=e{j}: {}", mismatch(&lhs, &rhs)))
    })
}

fn commute(x: &[ExactMatrix], y: &[ExactMatrix], xn: &str, yn: &str) -> Option<String> {
    for (j, a) in x.iter().enumerate() {
        for (k, b) in y.iter().enumerate() {
            let c = a.mul(b).sub(&b.mul(a));
            if let Some((r, col, v)) = c.first_nonzero() {
                return Some(format!(
                    "{xn}(e{j}) and {yn}(e{k}) do not commute: commutator[{r}][{col}] = {v}"
                ));
            }
        }
    }
    None
}

fn span_rank(values: Vec<Vec<Q>>, d: usize) -> usize {
    if values.is_empty() {
        return 0;
    }
    ExactMatrix::from_columns(d, &values).rank()
}

/// Checks the quad-module axioms on basis elements.
pub fn validate_axioms(spec: &QuadModuleSpec) -> Result<ValidationReport> {
    spec.check_dimensions()?;
    let n = spec.dim_h;
    let da = spec.dim_a();
    let mut r = ValidationReport::new();

    // homomorphism structure of the given maps and actions
    for leg in Leg::BOTH {
        let i = label(leg);
        let emb = spec.embed(leg);
        let w = emb
            .multiplicativity_defect()
            .map(|(j, k)| format!("a=e{j}, a'=e{k}"))
            .or_else(|| (!emb.is_unital()).then(|| "embedding does not preserve the unit".into()));
        r.push(
            &format!("embed{i}_unital_homomorphism"),
            &format!("ι{i}(aa') = ι{i}(a)ι{i}(a'), ι{i}(1) = 1"),
            w,
        );
        let psi = spec.psi(leg);
        let w = psi
            .multiplicativity_defect()
            .map(|(j, k)| format!("a=e{j}, a'=e{k}: ψ{i}(aa') differs from ψ{i}(a)ψ{i}(a')"));
        r.push(
            &format!("psi{i}_multiplicative"),
            &format!("b ψ{i}(aa') = b ψ{i}(a)ψ{i}(a')"),
            w,
        );
    }
    r.push(
        "rightA_action",
        "ξ(aa') = (ξa)a', ξ1 = ξ",
        family_homomorphism(&spec.right_a, true),
    );
    for leg in Leg::BOTH {
        let i = label(leg);
        r.push(
            &format!("varphi{i}_action"),
            &format!("ξϕ{i}(bb') = (ξϕ{i}(b))ϕ{i}(b'), ξϕ{i}(1) = ξ"),
            family_homomorphism(spec.varphi(leg), true),
        );
        r.push(
            &format!("phi{i}_action"),
            &format!("φ{i}(bb') = φ{i}(b)φ{i}(b'), φ{i}(1) = 1"),
            family_homomorphism(spec.phi(leg), true),
        );
    }

    // inner product axioms
    r.push(
        "innerA_right_linear",
        "⟨ξ|ηa⟩_A = ⟨ξ|η⟩_A a",
        right_linearity(spec, &spec.inner_a, da, &spec.right_a, |x| x.to_vec()),
    );
    r.push(
        "innerA_conjugate_symmetric",
        "⟨ξ|η⟩_A* = ⟨η|ξ⟩_A",
        conjugate_symmetry(&spec.inner_a),
    );
    r.push(
        "innerA_positive",
        "⟨ξ|ξ⟩_A ≥ 0, ⟨ξ|ξ⟩_A = 0 ⇔ ξ = 0",
        positivity(&spec.inner_a, da),
    );
    for leg in Leg::BOTH {
        let i = label(leg);
        let t = spec.inner_b(leg);
        let d = spec.dim_b(leg);
        r.push(
            &format!("innerB{i}_right_linear"),
            &format!("⟨ξ|ηϕ{i}(b)⟩_B{i} = ⟨ξ|η⟩_B{i} b"),
            right_linearity(spec, t, d, spec.varphi(leg), |x| x.to_vec()),
        );
        r.push(
            &format!("innerB{i}_conjugate_symmetric"),
            &format!("⟨ξ|η⟩_B{i}* = ⟨η|ξ⟩_B{i}"),
            conjugate_symmetry(t),
        );
        r.push(
            &format!("innerB{i}_positive"),
            &format!("⟨ξ|ξ⟩_B{i} ≥ 0, ⟨ξ|ξ⟩_B{i} = 0 ⇔ ξ = 0"),
            positivity(t, d),
        );
    }

    // bimodule commutation
    r.push(
        "bimodule_commutation_phi1_varphi2",
        "[φ1(z)ξ]ϕ2(w) = φ1(z)[ξϕ2(w)]",
        commute(&spec.phi1, &spec.varphi2, "φ1", "ϕ2"),
    );
    r.push(
        "bimodule_commutation_phi2_varphi1",
        "[φ2(w)ξ]ϕ1(z) = φ2(w)[ξϕ1(z)]",
        commute(&spec.phi2, &spec.varphi1, "φ2", "ϕ1"),
    );
    for leg in Leg::BOTH {
        let i = label(leg);
        r.push(
            &format!("bimodule_commutation_phi{i}_varphi{i}"),
            &format!("[φ{i}(b)ξ]ϕ{i}(b') = φ{i}(b)[ξϕ{i}(b')]"),
            commute(
                spec.phi(leg),
                spec.varphi(leg),
                &format!("φ{i}"),
                &format!("ϕ{i}"),
            ),
        );
    }
    for leg in Leg::BOTH {
        let i = label(leg);
        r.push(
            &format!("phi{i}_right_A_linear"),
            &format!("φ{i}(b)(ξa) = (φ{i}(b)ξ)a"),
            commute(spec.phi(leg), &spec.right_a, &format!("φ{i}"), "R_A"),
        );
    }

    // ψ-compatibility of the right actions
    for leg in Leg::BOTH {
        let i = label(leg);
        let psi = spec.psi(leg);
        let d = spec.dim_b(leg);
        let w = first_failure(
            (0..d).flat_map(|j| (0..da).map(move |a| (j, a))),
            |(j, a)| {
                let zpsi = algebra::mul(&e(d, j), &psi.apply(&e(da, a)));
                let lhs = spec.varphi_of(leg, &zpsi);
                let rhs = spec.right_a[a].mul(&spec.varphi(leg)[j]);
                (lhs != rhs)
                    .then(|| format!("z=e{j}, a=e{a}: ξϕ{i}(zψ{i}(a)) differs from [ξϕ{i}(z)]a"))
            },
        );
        r.push(
            &format!("psi{i}_compatibility"),
            &format!("ξϕ{i}(zψ{i}(a)) = [ξϕ{i}(z)]a"),
            w,
        );
    }

    // left actions agree on A
    let w = first_failure(0..da, |a| {
        let ea = e(da, a);
        let l1 = spec.phi_of(Leg::One, &spec.embed(Leg::One).apply(&ea));
        let l2 = spec.phi_of(Leg::Two, &spec.embed(Leg::Two).apply(&ea));
        (l1 != l2).then(|| {
            let (row, col, _) = l1.sub(&l2).first_nonzero().expect("nonzero difference");
            format!("a=e{a}: φ1(a) and φ2(a) differ at entry ({row}, {col})")
        })
    });
    r.push("left_action_agreement", "φ_A(a) = φ1(a) = φ2(a)", w);

    // inner products and ψ
    for leg in Leg::BOTH {
        let i = label(leg);
        let psi = spec.psi(leg);
        r.push(
            &format!("innerB{i}_psi_compatibility"),
            &format!("⟨ξ|ηa⟩_B{i} = ⟨ξ|η⟩_B{i} ψ{i}(a)"),
            right_linearity(
                spec,
                spec.inner_b(leg),
                spec.dim_b(leg),
                &spec.right_a,
                |x| psi.apply(x),
            ),
        );
    }

    // faithfulness and adjointability of the left actions
    let g = GramForm::new(spec.scalar_gram_a()).ok();
    for leg in Leg::BOTH {
        let i = label(leg);
        let w = spec
            .phi(leg)
            .iter()
            .position(ExactMatrix::is_zero)
            .map(|j| format!("φ{i}(e{j}) = 0"));
        r.push(
            &format!("phi{i}_faithful"),
            &format!("φ{i}(b) = 0 ⇒ b = 0"),
            w,
        );

        let d = spec.dim_b(leg);
        let mut w = None;
        'outer: for j in 0..d {
            let b = e(d, j);
            let op = spec.phi_of(leg, &b);
            let op_star = spec.phi_of(leg, &algebra::star(&b));
            let forms = [
                ("A", &spec.inner_a, da),
                ("B1", &spec.inner_b1, spec.dim_b(Leg::One)),
                ("B2", &spec.inner_b2, spec.dim_b(Leg::Two)),
            ];
            for (name, t, td) in forms {
                for (x, y) in pairs(n) {
                    let lhs = t.eval(&op.mul_vec(&e(n, x)), &e(n, y), td);
                    let rhs = t.eval(&e(n, x), &op_star.mul_vec(&e(n, y)), td);
                    if lhs != rhs {
                        w = Some(format!(
                            "b=e{j}, xi=e{x}, eta=e{y} in ⟨·|·⟩_{name}: {}",
                            mismatch(&lhs, &rhs)
                        ));
                        break 'outer;
                    }
                }
            }
            if let Some(g) = &g {
                match gram_adjoint(&op, g, g) {
                    Ok(adj) if adj == op_star => {}
                    Ok(_) => {
                        w = Some(format!("b=e{j}: Gram adjoint of φ{i}(b) is not φ{i}(b*)"));
                        break;
                    }
                    Err(err) => {
                        w = Some(format!("b=e{j}: {err}"));
                        break;
                    }
                }
            }
        }
        r.push(
            &format!("phi{i}_adjoint"),
            &format!("φ{i}(b)* = φ{i}(b*)"),
            w,
        );
    }

    // fullness
    let full = |t: &super::InnerTensor, d: usize| -> Option<String> {
        let vals: Vec<Vec<Q>> = pairs(n).map(|(a, b)| t.entry(a, b).to_vec()).collect();
        let rank = span_rank(vals, d);
        (rank < d)
            .then(|| format!("inner-product values span a {rank}-dimensional subspace of {d}"))
    };
    r.push("fullness_A", "span ⟨H|H⟩_A = A", full(&spec.inner_a, da));
    r.push(
        "fullness_B1",
        "span ⟨H|H⟩_B1 = B1",
        full(&spec.inner_b1, spec.dim_b(Leg::One)),
    );
    r.push(
        "fullness_B2",
        "span ⟨H|H⟩_B2 = B2",
        full(&spec.inner_b2, spec.dim_b(Leg::Two)),
    );

    Ok(r)
}

/// Preimage of `b` under the embedding `ι_leg`, if `b` lies in `A`.
pub(crate) fn pull_back(spec: &QuadModuleSpec, leg: Leg, b: &[Q]) -> Option<Vec<Q>> {
    let emb = spec.embed(leg);
    let x = emb.matrix.solve(b)?;
    (emb.apply(&x) == b).then_some(x)
}

/// Checks the finite basis conditions for `{u_i}` and `{v_k}`.
pub fn verify_finite_type(spec: &QuadModuleSpec) -> Result<ValidationReport> {
    spec.check_dimensions()?;
    let n = spec.dim_h;
    let mut r = ValidationReport::new();

    for leg in Leg::BOTH {
        let i = label(leg);
        let basis = spec.basis(leg);
        let w = first_failure(0..n, |x| {
            let xi = e(n, x);
            let mut acc = vec![Q::zero(); n];
            for u in basis {
                let c = spec.inner_b_of(leg, u, &xi);
                acc = algebra::add(&acc, &spec.varphi_of(leg, &c).mul_vec(u));
            }
            (acc != xi).then(|| format!("xi=e{x}: {}", mismatch(&acc, &xi)))
        });
        let sym = if leg == Leg::One { "u" } else { "v" };
        r.push(
            &format!("basis_reconstruction_{sym}"),
            &format!("Σ {sym}_j ϕ{i}(⟨{sym}_j|ξ⟩_B{i}) = ξ"),
            w,
        );
    }

    for leg in Leg::BOTH {
        let i = label(leg);
        let o = label(leg.other());
        let basis = spec.basis(leg);
        let d_other = spec.dim_b(leg.other());
        let sym = if leg == Leg::One { "u" } else { "v" };
        let w = first_failure(0..d_other, |c| {
            let op = spec.phi_of(leg.other(), &e(d_other, c));
            first_failure(pairs(basis.len()), |(p, q)| {
                let val = spec.inner_b_of(leg, &basis[p], &op.mul_vec(&basis[q]));
                pull_back(spec, leg, &val).is_none().then(|| {
                    format!(
                        "{sym}{p}, {sym}{q}, b=e{c}: value {} is not in A",
                        format_vec(&val)
                    )
                })
            })
        });
        r.push(
            &format!("{sym}{sym}_in_A"),
            &format!("⟨{sym}_p|φ{o}(b){sym}_q⟩_B{i} ∈ A"),
            w,
        );
    }

    for leg in Leg::BOTH {
        let i = label(leg);
        let o = label(leg.other());
        let basis = spec.basis(leg);
        let sym = if leg == Leg::One { "u" } else { "v" };
        let w = first_failure(pairs(n), |(x, y)| {
            let inner_other = spec.inner_b_of(leg.other(), &e(n, x), &e(n, y));
            let op = spec.phi_of(leg.other(), &inner_other);
            let mut acc = vec![Q::zero(); spec.dim_b(leg)];
            for u in basis {
                acc = algebra::add(&acc, &spec.inner_b_of(leg, u, &op.mul_vec(u)));
            }
            let rhs = spec.embed(leg).apply(&spec.inner_a_of(&e(n, x), &e(n, y)));
            (acc != rhs).then(|| format!("xi=e{x}, eta=e{y}: {}", mismatch(&acc, &rhs)))
        });
        r.push(
            &format!("trace_formula_{sym}"),
            &format!("Σ ⟨{sym}_j|φ{o}(⟨ξ|η⟩_B{o}){sym}_j⟩_B{i} = ⟨ξ|η⟩_A"),
            w,
        );
    }
    Ok(r)
}

/// The maps `λ₁: B₁ → A` and `λ₂: B₂ → A`, as `dim A × dim B_i` matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lambda {
    pub lambda1: AlgebraHom,
    pub lambda2: AlgebraHom,
}

impl Lambda {
    pub fn get(&self, leg: Leg) -> &AlgebraHom {
        match leg {
            Leg::One => &self.lambda1,
            Leg::Two => &self.lambda2,
        }
    }

    pub fn apply(&self, leg: Leg, b: &[Q]) -> Vec<Q> {
        self.get(leg).apply(b)
    }
}

/// `λ₁(z) = Σ_k ⟨v_k|φ₁(z)v_k⟩_B₂` and `λ₂(w) = Σ_i ⟨u_i|φ₂(w)u_i⟩_B₁`,
/// each pulled back into `A`, together with their defining identities.
pub fn derive_lambda(spec: &QuadModuleSpec) -> Result<(Lambda, ValidationReport)> {
    spec.check_dimensions()?;
    let n = spec.dim_h;
    let da = spec.dim_a();
    let build = |leg: Leg| -> Result<AlgebraHom> {
        let d = spec.dim_b(leg);
        let other = leg.other();
        let mut cols = Vec::with_capacity(d);
        for j in 0..d {
            let op = spec.phi_of(leg, &e(d, j));
            let mut acc = vec![Q::zero(); spec.dim_b(other)];
            for v in spec.basis(other) {
                acc = algebra::add(&acc, &spec.inner_b_of(other, v, &op.mul_vec(v)));
            }
            let a = pull_back(spec, other, &acc).ok_or_else(|| {
                Error::Precondition(format!(
                    "λ{}(e{j}) = {} does not lie in A",
                    label(leg),
                    format_vec(&acc)
                ))
            })?;
            cols.push(a);
        }
        Ok(AlgebraHom::new(ExactMatrix::from_columns(da, &cols)))
    };
    let lambda = Lambda {
        lambda1: build(Leg::One)?,
        lambda2: build(Leg::Two)?,
    };

    let mut r = ValidationReport::new();
    for leg in Leg::BOTH {
        let i = label(leg);
        let lam = lambda.get(leg);
        let d = spec.dim_b(leg);
        if let Some(j) = (0..d).find(|&j| algebra::is_zero_vec(&lam.matrix.col(j))) {
            return Err(Error::LambdaNotFaithful(format!("λ{i}(e{j}) = 0")));
        }
        let w = (0..d).find_map(|j| {
            let col = lam.matrix.col(j);
            col.iter()
                .any(|c| !c.is_zero() && !c.is_positive_real())
                .then(|| format!("λ{i}(e{j}) = {} is not positive", format_vec(&col)))
        });
        r.push(
            &format!("lambda{i}_faithful_positive"),
            &format!("λ{i}(b*b) > 0 for b ≠ 0"),
            w,
        );

        let psi = spec.psi(leg);
        let w = first_failure(
            (0..d).flat_map(|j| (0..da).map(move |a| (j, a))),
            |(j, a)| {
                let lhs = lam.apply(&algebra::mul(&e(d, j), &psi.apply(&e(da, a))));
                let rhs = algebra::mul(&lam.apply(&e(d, j)), &e(da, a));
                (lhs != rhs).then(|| format!("b=e{j}, a=e{a}: {}", mismatch(&lhs, &rhs)))
            },
        );
        r.push(
            &format!("lambda{i}_psi"),
            &format!("λ{i}(bψ{i}(a)) = λ{i}(b)a"),
            w,
        );

        let w = first_failure(pairs(n), |(x, y)| {
            let lhs = lam.apply(&spec.inner_b_of(leg, &e(n, x), &e(n, y)));
            let rhs = spec.inner_a_of(&e(n, x), &e(n, y));
            (lhs != rhs).then(|| format!("xi=e{x}, eta=e{y}: {}", mismatch(&lhs, &rhs)))
        });
        r.push(
            &format!("lambda{i}_inner"),
            &format!("λ{i}(⟨ξ|η⟩_B{i}) = ⟨ξ|η⟩_A"),
            w,
        );
    }
    Ok((lambda, r))
}

/// Checks `z = Σ e_j ψ₁(λ₁(e_j* z))` and the `B₂` analogue on idempotents.
pub fn verify_strongly_finite_type(
    spec: &QuadModuleSpec,
    e_basis: &[Vec<Q>],
    f_basis: &[Vec<Q>],
) -> Result<ValidationReport> {
    let (lambda, _) = derive_lambda(spec)?;
    let mut r = ValidationReport::new();
    for (leg, coeff) in [(Leg::One, e_basis), (Leg::Two, f_basis)] {
        let i = label(leg);
        let d = spec.dim_b(leg);
        if let Some(bad) = coeff.iter().position(|b| b.len() != d) {
            return Err(Error::DimensionMismatch(format!(
                "coefficient basis for B{i}, element {bad}: expected length {d}"
            )));
        }
        let psi = spec.psi(leg);
        let w = first_failure(0..d, |j| {
            let z = e(d, j);
            let mut acc = vec![Q::zero(); d];
            for b in coeff {
                let inner = lambda.apply(leg, &algebra::mul(&algebra::star(b), &z));
                acc = algebra::add(&acc, &algebra::mul(b, &psi.apply(&inner)));
            }
            (acc != z).then(|| format!("z=e{j}: {}", mismatch(&acc, &z)))
        });
        let (x, letter) = if leg == Leg::One {
            ("z", "e")
        } else {
            ("w", "f")
        };
        r.push(
            &format!("B{i}_right_A_basis"),
            &format!("{x} = Σ {letter}_j ψ{i}(λ{i}({letter}_j* {x}))"),
            w,
        );
    }
    Ok(r)
}

/// Right `A`-module bases `{u_i ϕ₁(e_j)}` and `{v_k ϕ₂(f_l)}` of `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightABasis {
    pub from_u: Vec<Vec<Q>>,
    pub from_v: Vec<Vec<Q>>,
    pub report: ValidationReport,
}

pub fn derive_right_a_basis(
    spec: &QuadModuleSpec,
    e_basis: &[Vec<Q>],
    f_basis: &[Vec<Q>],
) -> Result<RightABasis> {
    if spec.dim_h == 0 {
        return Err(Error::Precondition("zero module has no basis".into()));
    }
    let sft = verify_strongly_finite_type(spec, e_basis, f_basis)?;
    if !sft.all_pass() {
        return Err(Error::Precondition(
            "module is not of strongly finite type for the given bases".into(),
        ));
    }
    let n = spec.dim_h;
    let mut report = ValidationReport::new();
    let mut families = Vec::new();
    for (leg, coeff) in [(Leg::One, e_basis), (Leg::Two, f_basis)] {
        let family: Vec<Vec<Q>> = spec
            .basis(leg)
            .iter()
            .flat_map(|u| coeff.iter().map(move |b| spec.varphi_of(leg, b).mul_vec(u)))
            .collect();
        let w = first_failure(0..n, |x| {
            let xi = e(n, x);
            let mut acc = vec![Q::zero(); n];
            for w in &family {
                let a = spec.inner_a_of(w, &xi);
                acc = algebra::add(&acc, &spec.right_action(&a).mul_vec(w));
            }
            (acc != xi).then(|| format!("xi=e{x}: {}", mismatch(&acc, &xi)))
        });
        let name = if leg == Leg::One {
            "u_i ϕ1(e_j)"
        } else {
            "v_k ϕ2(f_l)"
        };
        report.push(
            &format!("right_A_reconstruction_{}", leg.number()),
            &format!("ξ = Σ ({name})·⟨{name}|ξ⟩_A"),
            w,
        );
        families.push(family);
    }
    let from_v = families.pop().expect("two families");
    let from_u = families.pop().expect("two families");
    Ok(RightABasis {
        from_u,
        from_v,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{build_example_alpha_beta, build_example_mn, parse_cycles};
    use num_traits::One;

    fn cyc(d: usize, s: &str) -> Vec<usize> {
        parse_cycles(d, s).unwrap()
    }

    fn idempotents(d: usize) -> Vec<Vec<Q>> {
        (0..d).map(|j| e(d, j)).collect()
    }

    #[test]
    fn example_mn_is_valid() {
        for (m, n) in [(2, 2), (2, 3), (3, 2)] {
            let s = build_example_mn(m, n).unwrap();
            let r = validate_axioms(&s).unwrap();
            assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
            let f = verify_finite_type(&s).unwrap();
            assert!(f.all_pass(), "{:?}", f.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn commuting_cycles_are_valid() {
        let s = build_example_alpha_beta(3, &cyc(3, "(123)"), &cyc(3, "(132)")).unwrap();
        assert!(validate_axioms(&s).unwrap().all_pass());
        assert!(verify_finite_type(&s).unwrap().all_pass());
        let s = build_example_alpha_beta(3, &cyc(3, "(123)"), &cyc(3, "(123)")).unwrap();
        assert!(validate_axioms(&s).unwrap().all_pass());
    }

    #[test]
    fn noncommuting_permutations_break_left_action_agreement() {
        let s = build_example_alpha_beta(3, &cyc(3, "(12)"), &cyc(3, "(23)")).unwrap();
        let r = validate_axioms(&s).unwrap();
        let c = r.get("left_action_agreement").unwrap();
        assert!(!c.pass);
        assert!(c.witness.as_deref().unwrap().starts_with("a=e"));
    }

    #[test]
    fn truncated_basis_breaks_reconstruction() {
        let mut s = build_example_mn(2, 2).unwrap();
        s.basis_u.pop();
        let r = verify_finite_type(&s).unwrap();
        let c = r.get("basis_reconstruction_u").unwrap();
        assert!(!c.pass);
        assert!(c.witness.is_some());
    }

    #[test]
    fn lambda_values_for_mn() {
        let s = build_example_mn(2, 2).unwrap();
        let (lam, r) = derive_lambda(&s).unwrap();
        assert!(r.all_pass());
        // λ₂(1) = Σ_i ⟨u_i|u_i⟩ = M
        assert_eq!(lam.apply(Leg::Two, &vec![Q::one(); 2]), vec![Q::from(2)]);
        let s = build_example_mn(3, 4).unwrap();
        let (lam, _) = derive_lambda(&s).unwrap();
        for k in 0..4 {
            assert_eq!(lam.apply(Leg::One, &e(4, k)), vec![Q::one()]);
        }
    }

    #[test]
    fn lambda_for_permutations_is_alpha_and_beta() {
        let sigma = cyc(3, "(123)");
        let tau = cyc(3, "(132)");
        let s = build_example_alpha_beta(3, &sigma, &tau).unwrap();
        let (lam, r) = derive_lambda(&s).unwrap();
        assert!(r.all_pass());
        assert_eq!(lam.lambda1, AlgebraHom::permutation(&sigma));
        assert_eq!(lam.lambda2, AlgebraHom::permutation(&tau));
    }

    #[test]
    fn strongly_finite_type() {
        let s = build_example_mn(2, 3).unwrap();
        assert!(
            verify_strongly_finite_type(&s, &idempotents(3), &idempotents(2))
                .unwrap()
                .all_pass()
        );

        let s = build_example_alpha_beta(3, &cyc(3, "(123)"), &cyc(3, "(123)")).unwrap();
        let one = vec![vec![Q::one(); 3]];
        assert!(verify_strongly_finite_type(&s, &one, &one)
            .unwrap()
            .all_pass());

        let zero = vec![vec![Q::zero(); 3]];
        let r = verify_strongly_finite_type(&s, &zero, &one).unwrap();
        let c = r.get("B1_right_A_basis").unwrap();
        assert!(!c.pass);
        assert!(c.witness.as_deref().unwrap().starts_with("z=e0"));
    }

    #[test]
    fn right_a_bases() {
        let s = build_example_mn(2, 2).unwrap();
        let b = derive_right_a_basis(&s, &idempotents(2), &idempotents(2)).unwrap();
        assert_eq!(b.from_u.len(), 4);
        assert!(b.report.all_pass());

        let s = build_example_alpha_beta(3, &cyc(3, "(123)"), &cyc(3, "(123)")).unwrap();
        let one = vec![vec![Q::one(); 3]];
        let b = derive_right_a_basis(&s, &one, &one).unwrap();
        assert_eq!(b.from_u.len(), 1);
        assert!(b.report.all_pass());
    }

    #[test]
    fn scalarized_grams_agree() {
        let s = build_example_mn(2, 3).unwrap();
        let (lam, _) = derive_lambda(&s).unwrap();
        let n = s.dim_h;
        for leg in Leg::BOTH {
            let g = ExactMatrix::from_fn(n, n, |a, b| {
                algebra::trace(&lam.apply(leg, s.inner_b(leg).entry(a, b)))
            });
            assert_eq!(g, s.scalar_gram_a());
        }
    }

    #[test]
    fn validation_is_deterministic() {
        let s = build_example_alpha_beta(3, &cyc(3, "(12)"), &cyc(3, "(23)")).unwrap();
        assert_eq!(validate_axioms(&s).unwrap(), validate_axioms(&s).unwrap());
    }
}
