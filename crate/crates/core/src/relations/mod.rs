//! Operator relations on the truncated Fock module, checked as exact
//! matrix identities on declared level windows.
//!
//! Window conventions for depth `K`: identities that hold exactly on the
//! Fock module use `[0, K-1]` (the last level is cut off by truncation);
//! `S*T` orthogonality uses `[1, K]`; identities that only hold modulo
//! operators supported on levels 0 and 1 use `[2, K]`.

mod bcirc;
mod fock_identities;
mod mutations;

use num_traits::{One, Zero};

pub use bcirc::{
    build_bcirc, compute_pi, core_filtration_dims, verify_pi_multiplicative, BCircModel, PiImage,
};
pub use fock_identities::verify_fock_identities;
pub use mutations::{first_failure, mutation_catalogue, run_mutation, Mutation, MutationOutcome};

use crate::algebra::basis_vector;
use crate::error::{Error, Result};
use crate::exact::{gram_adjoint, ExactMatrix, GaussianRational};
use crate::fock::{FockOperator, TruncatedFock};
use crate::quad::pull_back;
use crate::quad::Leg;
use crate::report::{EntryWitness, IdentityWindowReport};

type Q = GaussianRational;

/// `S_i = s_{u_i}`, `T_k = t_{v_k}` and the coefficient maps `Φ₁`, `Φ₂`
/// stored by their values on minimal idempotents.
#[derive(Clone, Debug)]
pub struct GeneratorFamily<'a> {
    pub fock: &'a TruncatedFock,
    pub basis_u: Vec<Vec<Q>>,
    pub basis_v: Vec<Vec<Q>>,
    pub s: Vec<FockOperator>,
    pub t: Vec<FockOperator>,
    pub phi1: Vec<FockOperator>,
    pub phi2: Vec<FockOperator>,
    /// Quotient window `[2, K-1]`.
    pub window: (usize, usize),
    /// `s_ξ = Σ s_i φ̄₁(⟨u_i|ξ⟩_B1)` and its `t` analogue on basis vectors.
    pub expansion: Vec<IdentityWindowReport>,
}

/// Checks `residual = 0` on the column window for each labelled case and
/// reports the first failing entry.
pub fn window_check(
    id: &str,
    citation: &str,
    window: (usize, usize),
    cases: impl IntoIterator<Item = (String, FockOperator)>,
) -> IdentityWindowReport {
    for (label, residual) in cases {
        if let Some(mut w) = residual.restrict_cols(window.0, window.1).witness() {
            w.note = Some(label);
            return IdentityWindowReport::new(id, citation, window, Some(w));
        }
    }
    IdentityWindowReport::new(id, citation, window, None)
}

fn failure(id: &str, citation: &str, window: (usize, usize), note: String) -> IdentityWindowReport {
    IdentityWindowReport::new(id, citation, window, Some(EntryWitness::note(note)))
}

/// Minimal idempotents plus one element with distinct complex coordinates.
pub fn sample_elements(dim: usize) -> Vec<Vec<Q>> {
    let mut out: Vec<Vec<Q>> = (0..dim).map(|j| basis_vector(dim, j)).collect();
    out.push(
        (0..dim)
            .map(|j| Q::from_parts(j as i64 + 1, 1, (j % 2) as i64, 1))
            .collect(),
    );
    out
}

pub fn make_generators(fock: &TruncatedFock) -> Result<GeneratorFamily<'_>> {
    let k = fock.depth();
    if k < 3 {
        return Err(Error::DepthTooSmall(k, 3));
    }
    let spec = fock.spec();
    let basis_u = spec.basis_u.clone();
    let basis_v = spec.basis_v.clone();
    let s = basis_u.iter().map(|u| fock.s(u)).collect();
    let t = basis_v.iter().map(|v| fock.t(v)).collect();
    let phi1 = fock
        .idempotents(Leg::One)
        .iter()
        .map(|e| fock.left_action(Leg::One, e))
        .collect();
    let phi2 = fock
        .idempotents(Leg::Two)
        .iter()
        .map(|e| fock.left_action(Leg::Two, e))
        .collect();
    let mut gen = GeneratorFamily {
        fock,
        basis_u,
        basis_v,
        s,
        t,
        phi1,
        phi2,
        window: (2, k - 1),
        expansion: Vec::new(),
    };
    let n = fock.dim_h();
    let exact = gen.exact_window();
    gen.expansion = Leg::BOTH
        .into_iter()
        .map(|leg| {
            let (id, citation) = match leg {
                Leg::One => ("s_expansion", "s_ξ = Σ s_i φ̄₁(⟨u_i|ξ⟩_B1)"),
                Leg::Two => ("t_expansion", "t_ξ = Σ t_k φ̄₂(⟨v_k|ξ⟩_B2)"),
            };
            let g = &gen;
            window_check(
                id,
                citation,
                exact,
                (0..n).map(move |a| {
                    let xi = basis_vector(n, a);
                    let lhs = match leg {
                        Leg::One => fock.s(&xi),
                        Leg::Two => fock.t(&xi),
                    };
                    let rhs = g.sum((0..g.count(leg)).map(|i| {
                        let c = g.inner(leg, &g.basis(leg)[i], &xi);
                        &g.creators(leg)[i] * &g.phi(leg, &c)
                    }));
                    (format!("ξ=e{a}"), &lhs - &rhs)
                }),
            )
        })
        .collect();
    Ok(gen)
}

impl<'a> GeneratorFamily<'a> {
    pub fn depth(&self) -> usize {
        self.fock.depth()
    }

    /// `[0, K-1]`.
    pub fn exact_window(&self) -> (usize, usize) {
        (0, self.depth() - 1)
    }

    /// `[1, K]`.
    pub fn orthogonality_window(&self) -> (usize, usize) {
        (1, self.depth())
    }

    /// `[2, K]`.
    pub fn compact_window(&self) -> (usize, usize) {
        (2, self.depth())
    }

    pub fn creators(&self, leg: Leg) -> &[FockOperator] {
        match leg {
            Leg::One => &self.s,
            Leg::Two => &self.t,
        }
    }

    pub fn basis(&self, leg: Leg) -> &[Vec<Q>] {
        match leg {
            Leg::One => &self.basis_u,
            Leg::Two => &self.basis_v,
        }
    }

    pub fn count(&self, leg: Leg) -> usize {
        self.basis(leg).len()
    }

    /// `Φ_leg(b)`.
    pub fn phi(&self, leg: Leg, b: &[Q]) -> FockOperator {
        let images = match leg {
            Leg::One => &self.phi1,
            Leg::Two => &self.phi2,
        };
        self.sum(
            b.iter()
                .zip(images)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, op)| op.scale(c)),
        )
    }

    /// `Φ_leg(ι_leg(a))` for `a ∈ A`.
    pub fn phi_a(&self, leg: Leg, a: &[Q]) -> FockOperator {
        self.phi(leg, &self.fock.spec().embed(leg).apply(a))
    }

    pub fn inner(&self, leg: Leg, x: &[Q], y: &[Q]) -> Vec<Q> {
        self.fock.spec().inner_b_of(leg, x, y)
    }

    pub fn sum(&self, ops: impl IntoIterator<Item = FockOperator>) -> FockOperator {
        ops.into_iter().fold(self.fock.zero(), |acc, x| &acc + &x)
    }

    fn range_sum(&self, leg: Leg) -> FockOperator {
        self.sum(self.creators(leg).iter().map(|x| x * &x.adjoint()))
    }

    /// `Σ S_i Φ₁(⟨u_i|L u_j⟩_B1) S_j* + Σ T_k Φ₂(⟨v_k|L v_l⟩_B2) T_l*`.
    pub fn pi_formula(&self, l: &ExactMatrix) -> FockOperator {
        let mut terms = Vec::new();
        for leg in Leg::BOTH {
            let x = self.creators(leg);
            let b = self.basis(leg);
            for j in 0..b.len() {
                let lb = l.mul_vec(&b[j]);
                let xs = x[j].adjoint();
                for i in 0..b.len() {
                    let c = self.inner(leg, &b[i], &lb);
                    if c.iter().all(Zero::is_zero) {
                        continue;
                    }
                    terms.push(&(&x[i] * &self.phi(leg, &c)) * &xs);
                }
            }
        }
        self.sum(terms)
    }

    /// `Φ_{leg_b}(b) X_j - Σ_i X_i Φ_gen(⟨x_i|φ_{leg_b}(b) x_j⟩)` where `X`
    /// are the creators of `gen`.
    fn intertwining_residual(&self, leg_b: Leg, b: &[Q], gen: Leg, j: usize) -> FockOperator {
        let spec = self.fock.spec();
        let x = self.creators(gen);
        let basis = self.basis(gen);
        let moved = spec.phi_of(leg_b, b).mul_vec(&basis[j]);
        let lhs = &self.phi(leg_b, b) * &x[j];
        let rhs = self.sum((0..basis.len()).map(|i| {
            let c = self.inner(gen, &basis[i], &moved);
            &x[i] * &self.phi(gen, &c)
        }));
        &lhs - &rhs
    }

    fn intertwining_report(&self, id: &str, leg_b: Leg, gen: Leg) -> IdentityWindowReport {
        let (b, x, xs) = (leg_b.number(), sym(gen), basis_sym(gen));
        let citation = format!(
            "Φ{b}(b){x}_j = Σ {x}_i Φ{g}(⟨{xs}_i|φ{b}(b){xs}_j⟩_B{g})",
            g = gen.number()
        );
        let d = self.fock.spec().dim_b(leg_b);
        let cases = sample_elements(d)
            .into_iter()
            .enumerate()
            .flat_map(move |(bi, elt)| {
                (0..self.count(gen)).map(move |j| {
                    (
                        format!("b=sample{bi}, j={j}"),
                        self.intertwining_residual(leg_b, &elt, gen, j),
                    )
                })
            });
        window_check(id, &citation, self.exact_window(), cases)
    }

    fn inner_product_report(&self, id: &str, leg: Leg) -> IdentityWindowReport {
        let (x, xs, g) = (sym(leg), basis_sym(leg), leg.number());
        let citation = format!("{x}_i*{x}_j = Φ{g}(⟨{xs}_i|{xs}_j⟩_B{g})");
        let n = self.count(leg);
        let cases = (0..n).flat_map(move |i| {
            (0..n).map(move |j| {
                let lhs = &self.creators(leg)[i].adjoint() * &self.creators(leg)[j];
                let c = self.inner(leg, &self.basis(leg)[i], &self.basis(leg)[j]);
                (format!("i={i}, j={j}"), &lhs - &self.phi(leg, &c))
            })
        });
        window_check(id, &citation, self.exact_window(), cases)
    }

    fn orthogonality_report(&self, id: &str, first: Leg) -> IdentityWindowReport {
        let second = first.other();
        let citation = format!("{}_j*{}_l = 0", sym(first), sym(second));
        let cases = (0..self.count(first)).flat_map(move |j| {
            (0..self.count(second)).map(move |l| {
                (
                    format!("j={j}, l={l}"),
                    &self.creators(first)[j].adjoint() * &self.creators(second)[l],
                )
            })
        });
        window_check(id, &citation, self.orthogonality_window(), cases)
    }

    fn unit_report(&self, id: &str) -> IdentityWindowReport {
        let lhs = &self.range_sum(Leg::One) + &self.range_sum(Leg::Two);
        window_check(
            id,
            "Σ S_iS_i* + Σ T_kT_k* = 1",
            self.compact_window(),
            [("".to_string(), &lhs - &self.fock.identity())],
        )
    }

    /// `X_i* Φ_{leg_b}(b) X_j = Φ_gen(⟨x_i|φ_{leg_b}(b)x_j⟩)`.
    fn compression_report(&self, id: &str, leg_b: Leg, gen: Leg) -> IdentityWindowReport {
        let (x, xs, b, g) = (sym(gen), basis_sym(gen), leg_b.number(), gen.number());
        let citation = format!("{x}_i* Φ{b}(b) {x}_j = ⟨{xs}_i|φ{b}(b){xs}_j⟩_B{g}");
        let spec = self.fock.spec();
        let d = spec.dim_b(leg_b);
        let n = self.count(gen);
        let cases = sample_elements(d)
            .into_iter()
            .enumerate()
            .flat_map(move |(bi, elt)| {
                let op = self.phi(leg_b, &elt);
                let l = spec.phi_of(leg_b, &elt);
                (0..n).flat_map(move |i| {
                    let (op, l) = (op.clone(), l.clone());
                    (0..n).map(move |j| {
                        let x = self.creators(gen);
                        let lhs = &(&x[i].adjoint() * &op) * &x[j];
                        let c =
                            self.inner(gen, &self.basis(gen)[i], &l.mul_vec(&self.basis(gen)[j]));
                        (
                            format!("b=sample{bi}, i={i}, j={j}"),
                            &lhs - &self.phi(gen, &c),
                        )
                    })
                })
            });
        window_check(id, &citation, self.exact_window(), cases)
    }
}

fn sym(leg: Leg) -> &'static str {
    match leg {
        Leg::One => "S",
        Leg::Two => "T",
    }
}

fn basis_sym(leg: Leg) -> &'static str {
    match leg {
        Leg::One => "u",
        Leg::Two => "v",
    }
}

/// Orthogonality, range sums, inner-product and intertwining relations of
/// the generators on the Fock module.
pub fn verify_section4(gen: &GeneratorFamily<'_>) -> Vec<IdentityWindowReport> {
    let f = gen.fock;
    let k = gen.depth();
    let (p, ps, pt) = f.projections();
    let (ss, tt) = (gen.range_sum(Leg::One), gen.range_sum(Leg::Two));
    vec![
        gen.orthogonality_report("s_star_t_orthogonal", Leg::One),
        gen.orthogonality_report("t_star_s_orthogonal", Leg::Two),
        window_check(
            "s_range_sum",
            "Σ s_i s_i* = P₁ + P_s",
            (0, k),
            [(String::new(), &ss - &(&p[1] + &ps))],
        ),
        window_check(
            "t_range_sum",
            "Σ t_k t_k* = P₁ + P_t",
            (0, k),
            [(String::new(), &tt - &(&p[1] + &pt))],
        ),
        window_check(
            "range_sum_with_corrections",
            "Σ s_i s_i* + Σ t_k t_k* + P₀ = 1 + P₁",
            (0, k),
            [(
                String::new(),
                &(&(&ss + &tt) + &p[0]) - &(&f.identity() + &p[1]),
            )],
        ),
        gen.unit_report("unit_decomposition"),
        gen.inner_product_report("s_star_s", Leg::One),
        gen.inner_product_report("t_star_t", Leg::Two),
        gen.intertwining_report("phi1_s_intertwining", Leg::One, Leg::One),
        gen.intertwining_report("phi1_t_intertwining", Leg::One, Leg::Two),
        gen.intertwining_report("phi2_s_intertwining", Leg::Two, Leg::One),
        gen.intertwining_report("phi2_t_intertwining", Leg::Two, Leg::Two),
    ]
}

/// The eight relations (H) with the coefficient maps implicit, and the
/// compressions `S_i* z S_j`, `S_i* w S_j`, `T_k* z T_l`, `T_k* w T_l`.
pub fn verify_relations_h(gen: &GeneratorFamily<'_>) -> Vec<IdentityWindowReport> {
    vec![
        gen.unit_report("H_unit"),
        gen.orthogonality_report("H_s_t_orthogonal", Leg::One),
        gen.inner_product_report("H_s_inner", Leg::One),
        gen.inner_product_report("H_t_inner", Leg::Two),
        gen.intertwining_report("H_z_s", Leg::One, Leg::One),
        gen.intertwining_report("H_z_t", Leg::One, Leg::Two),
        gen.intertwining_report("H_w_s", Leg::Two, Leg::One),
        gen.intertwining_report("H_w_t", Leg::Two, Leg::Two),
        gen.compression_report("s_star_z_s", Leg::One, Leg::One),
        gen.compression_report("s_star_w_s", Leg::Two, Leg::One),
        gen.compression_report("t_star_z_t", Leg::One, Leg::Two),
        gen.compression_report("t_star_w_t", Leg::Two, Leg::Two),
    ]
}

/// `X_j* Φ_other(b) X_j` lands in `A`, for `b` minimal idempotents.
fn membership_report(gen: &GeneratorFamily<'_>, id: &str, leg: Leg) -> IdentityWindowReport {
    let spec = gen.fock.spec();
    let other = leg.other();
    let (x, xs) = (sym(leg), basis_sym(leg));
    let citation = format!("{x}_j* b {x}_j ∈ A for b ∈ B{}", other.number());
    let window = gen.exact_window();
    let mut cases = Vec::new();
    for (bi, b) in gen.fock.idempotents(other).iter().enumerate() {
        let l = spec.phi_of(other, b);
        for j in 0..gen.count(leg) {
            let xj = &gen.basis(leg)[j];
            let c = gen.inner(leg, xj, &l.mul_vec(xj));
            let Some(a) = pull_back(spec, leg, &c) else {
                return failure(
                    id,
                    &citation,
                    window,
                    format!("⟨{xs}_{j}|φ{}(e{bi}){xs}_{j}⟩ is not in A", other.number()),
                );
            };
            let lhs =
                &(&gen.creators(leg)[j].adjoint() * &gen.phi(other, b)) * &gen.creators(leg)[j];
            cases.push((format!("b=e{bi}, j={j}"), &lhs - &gen.phi_a(leg, &a)));
        }
    }
    window_check(id, &citation, window, cases)
}

/// `Σ_j X_j* ⟨ξ|η⟩_B(other) X_j = ⟨ξ|η⟩_A` with `A` realized through `leg_a`.
fn trace_report(
    gen: &GeneratorFamily<'_>,
    id: &str,
    leg: Leg,
    leg_a: Leg,
    window: (usize, usize),
) -> IdentityWindowReport {
    let spec = gen.fock.spec();
    let other = leg.other();
    let x = sym(leg);
    let citation = format!(
        "Σ {x}_j* ⟨ξ|η⟩_B{} {x}_j = ⟨ξ|η⟩_A in Φ{}(A)",
        other.number(),
        leg_a.number()
    );
    let n = spec.dim_h;
    let xs = gen.creators(leg);
    let cases = (0..n).flat_map(move |a| {
        (0..n).map(move |b| {
            let (ea, eb) = (basis_vector(n, a), basis_vector(n, b));
            let inner = gen.phi(other, &spec.inner_b_of(other, &ea, &eb));
            let lhs = gen.sum(xs.iter().map(|xj| &(&xj.adjoint() * &inner) * xj));
            let rhs = gen.phi_a(leg_a, &spec.inner_a_of(&ea, &eb));
            (format!("ξ=e{a}, η=e{b}"), &lhs - &rhs)
        })
    });
    window_check(id, &citation, window, cases)
}

/// Expansions of coefficient elements through the generators, the
/// membership and trace formulas, and the degree-zero projection.
pub fn verify_section5_core(
    gen: &GeneratorFamily<'_>,
    model: &BCircModel,
) -> Result<Vec<IdentityWindowReport>> {
    let spec = gen.fock.spec();
    let f = gen.fock;
    let exact = gen.exact_window();
    let central = (1, gen.depth() - 1);
    let compact = gen.compact_window();
    let mut out = vec![
        membership_report(gen, "s_star_w_s_in_A", Leg::One),
        membership_report(gen, "t_star_z_t_in_A", Leg::Two),
        trace_report(gen, "s_trace_formula", Leg::One, Leg::One, exact),
        trace_report(gen, "s_trace_formula_central", Leg::One, Leg::Two, central),
        trace_report(gen, "t_trace_formula", Leg::Two, Leg::Two, exact),
        trace_report(gen, "t_trace_formula_central", Leg::Two, Leg::One, central),
    ];

    let g_a = crate::exact::GramForm::new(spec.scalar_gram_a())?;
    for leg in Leg::BOTH {
        let name = match leg {
            Leg::One => "z",
            Leg::Two => "w",
        };
        let g = leg.number();
        let samples = sample_elements(spec.dim_b(leg));
        out.push(window_check(
            &format!("{name}_expansion"),
            &format!("{name} = Σ S_i⟨u_i|φ{g}({name})u_j⟩S_j* + Σ T_k⟨v_k|φ{g}({name})v_l⟩T_l*"),
            compact,
            samples.iter().enumerate().map(|(bi, b)| {
                (
                    format!("{name}=sample{bi}"),
                    &gen.phi(leg, b) - &gen.pi_formula(&spec.phi_of(leg, b)),
                )
            }),
        ));
        let mut cases = Vec::new();
        for (bi, b) in samples.iter().enumerate() {
            let adj = gram_adjoint(&spec.phi_of(leg, b), &g_a, &g_a)?;
            let star = crate::algebra::star(b);
            cases.push((
                format!("{name}=sample{bi}"),
                &gen.phi(leg, &star) - &gen.pi_formula(&adj),
            ));
        }
        out.push(window_check(
            &format!("{name}_star_expansion"),
            &format!("{name}* = Σ S_i⟨u_i|φ{g}({name})*u_j⟩S_j* + Σ T_k⟨v_k|φ{g}({name})*v_l⟩T_l*"),
            compact,
            cases,
        ));
    }

    let (s1, s2) = (
        sample_elements(spec.dim_b(Leg::One)),
        sample_elements(spec.dim_b(Leg::Two)),
    );
    let pairs: Vec<(usize, usize)> = (0..s1.len())
        .flat_map(|a| (0..s2.len()).map(move |b| (a, b)))
        .collect();
    out.push(window_check(
        "zw_expansion",
        "zw = Σ S_i⟨u_i|φ1(z)φ2(w)u_j⟩S_j* + Σ T_k⟨v_k|φ1(z)φ2(w)v_l⟩T_l*",
        compact,
        pairs.iter().map(|&(a, b)| {
            let lhs = &gen.phi(Leg::One, &s1[a]) * &gen.phi(Leg::Two, &s2[b]);
            let l = spec
                .phi_of(Leg::One, &s1[a])
                .mul(&spec.phi_of(Leg::Two, &s2[b]));
            (
                format!("z=sample{a}, w=sample{b}"),
                &lhs - &gen.pi_formula(&l),
            )
        }),
    ));
    out.push(window_check(
        "wz_expansion",
        "wz = Σ S_i⟨u_i|φ2(w)φ1(z)u_j⟩S_j* + Σ T_k⟨v_k|φ2(w)φ1(z)v_l⟩T_l*",
        compact,
        pairs.iter().map(|&(a, b)| {
            let lhs = &gen.phi(Leg::Two, &s2[b]) * &gen.phi(Leg::One, &s1[a]);
            let l = spec
                .phi_of(Leg::Two, &s2[b])
                .mul(&spec.phi_of(Leg::One, &s1[a]));
            (
                format!("z=sample{a}, w=sample{b}"),
                &lhs - &gen.pi_formula(&l),
            )
        }),
    ));

    out.push(window_check(
        "b_circ_reconstruction",
        "x = Σ S_i⟨u_i|φ∘(x)u_j⟩S_j* + Σ T_k⟨v_k|φ∘(x)v_l⟩T_l* for x ∈ B∘",
        compact,
        model.words.iter().zip(&model.basis).map(|(word, l)| {
            let lhs = word.iter().fold(f.identity(), |acc, &(leg, j)| {
                &acc * &gen.phi(leg, &basis_vector(spec.dim_b(leg), j))
            });
            (bcirc::word_label(word), &lhs - &gen.pi_formula(l))
        }),
    ));

    // Words S_μ b S_ν*: degree-zero part keeps exactly the balanced ones.
    let mut cases = Vec::new();
    let creators: Vec<&FockOperator> = gen.s.iter().chain(&gen.t).collect();
    for (bi, l) in model.basis.iter().enumerate() {
        let b = f.lift(l)?;
        for (mi, x) in creators.iter().enumerate() {
            let unbalanced = *x * &b;
            cases.push((format!("S{mi} b{bi}"), unbalanced.degree_zero_part()));
            for (ni, y) in creators.iter().enumerate() {
                let balanced = &(*x * &b) * &y.adjoint();
                cases.push((
                    format!("S{mi} b{bi} S{ni}*"),
                    &balanced.degree_zero_part() - &balanced,
                ));
            }
        }
    }
    out.push(window_check(
        "fixed_point_algebra",
        "E(S_μ b S_ν*) = δ_{|μ|,|ν|} S_μ b S_ν*",
        (0, gen.depth()),
        cases,
    ));
    Ok(out)
}

/// Unit element of `B_leg` scaled to a Fock operator, for convenience in
/// examples.
pub fn unit_phi(gen: &GeneratorFamily<'_>, leg: Leg) -> FockOperator {
    gen.phi(leg, &vec![Q::one(); gen.fock.spec().dim_b(leg)])
}

#[cfg(test)]
mod tests;
