//! Cuntz–Krieger presentation of the `H_{M,N}` algebra, its matrix, and the
//! isometry relations of the permutation module.

use serde::{Deserialize, Serialize};

use crate::algebra::basis_vector;
use crate::error::{Error, Result};
use crate::exact::ExactMatrix;
use crate::fock::{build_fock, FockOperator, TruncatedFock};
use crate::ktheory::IntegerMatrix;
use crate::quad::{build_example_alpha_beta, Leg};
use crate::relations::{build_bcirc, make_generators, window_check, GeneratorFamily};
use crate::report::{EntryWitness, IdentityWindowReport};

/// `e_(i,k)`, `S_(i,k) = e_(i,k) S_i` and `T_(i,k) = e_(i,k) T_k`, stored
/// at index `i·N + k`.
#[derive(Clone, Debug)]
pub struct CkGenerators<'a> {
    pub m: usize,
    pub n: usize,
    pub gen: GeneratorFamily<'a>,
    pub idem: Vec<FockOperator>,
    pub s_idx: Vec<FockOperator>,
    pub t_idx: Vec<FockOperator>,
    /// Relations among `S_i`, `T_k`, `e_(i,k)` checked while building.
    pub reports: Vec<IdentityWindowReport>,
}

/// Fock module of `H_{M,N}` at depth `k`.
pub fn build_ck_fock(m: usize, n: usize, k: usize) -> Result<TruncatedFock> {
    if k < 3 {
        return Err(Error::DepthTooSmall(k, 3));
    }
    build_fock(&crate::quad::build_example_mn(m, n)?, k)
}

impl CkGenerators<'_> {
    fn idx(&self, i: usize, k: usize) -> usize {
        i * self.n + k
    }

    /// `S_(·)` then `T_(·)`, the order of the rows of `H_{M,N}`.
    pub fn partial_isometries(&self) -> impl Iterator<Item = &FockOperator> {
        self.s_idx.iter().chain(&self.t_idx)
    }

    fn range(&self, x: &FockOperator) -> FockOperator {
        x * &x.adjoint()
    }

    fn range_pair(&self, c: usize) -> FockOperator {
        &self.range(&self.s_idx[c]) + &self.range(&self.t_idx[c])
    }
}

/// Builds the indexed generators on a Fock module of some `H_{M,N}`.
pub fn build_ck_generators(fock: &TruncatedFock) -> Result<CkGenerators<'_>> {
    let spec = fock.spec();
    let (m, n) = (spec.basis_u.len(), spec.basis_v.len());
    if spec.dim_h != m * n {
        return Err(Error::AssumptionsViolated(format!(
            "expected dim H = {m}·{n}, found {}",
            spec.dim_h
        )));
    }
    let gen = make_generators(fock)?;
    let model = build_bcirc(spec);
    let mins = model.minimal_idempotents()?;
    let coords: Vec<ExactMatrix> = (0..m * n)
        .map(|x| ExactMatrix::diagonal(&basis_vector(m * n, x)))
        .collect();
    if mins != coords {
        return Err(Error::AssumptionsViolated(
            "minimal idempotents of B∘ are not the coordinate projections".into(),
        ));
    }
    let idem: Vec<FockOperator> = mins.iter().map(|p| gen.pi_formula(p)).collect();
    let s_idx = (0..m * n).map(|x| &idem[x] * &gen.s[x / n]).collect();
    let t_idx = (0..m * n).map(|x| &idem[x] * &gen.t[x % n]).collect();
    let mut ck = CkGenerators {
        m,
        n,
        gen,
        idem,
        s_idx,
        t_idx,
        reports: Vec::new(),
    };
    ck.reports = build_reports(&ck);
    Ok(ck)
}

fn build_reports(ck: &CkGenerators<'_>) -> Vec<IdentityWindowReport> {
    let g = &ck.gen;
    let f = g.fock;
    let w = g.compact_window();
    let (m, n) = (ck.m, ck.n);
    let pairs = || (0..m * n).flat_map(|a| (0..m * n).map(move |b| (a, b)));
    let unit = g.sum(g.s.iter().chain(&g.t).map(|x| ck.range(x)));
    vec![
        window_check(
            "ck_generator_unit",
            "Σ S_iS_i* + Σ T_kT_k* = 1",
            w,
            [(String::new(), &unit - &f.identity())],
        ),
        window_check(
            "ck_s_isometries",
            "S_i*S_j = δ_ij",
            g.window,
            (0..m)
                .flat_map(|i| (0..m).map(move |j| (i, j)))
                .map(|(i, j)| {
                    let lhs = &g.s[i].adjoint() * &g.s[j];
                    let rhs = if i == j { f.identity() } else { f.zero() };
                    (format!("i={i}, j={j}"), &lhs - &rhs)
                }),
        ),
        window_check(
            "ck_t_isometries",
            "T_k*T_l = δ_kl",
            g.window,
            (0..n)
                .flat_map(|k| (0..n).map(move |l| (k, l)))
                .map(|(k, l)| {
                    let lhs = &g.t[k].adjoint() * &g.t[l];
                    let rhs = if k == l { f.identity() } else { f.zero() };
                    (format!("k={k}, l={l}"), &lhs - &rhs)
                }),
        ),
        window_check(
            "e_s_relation",
            "e_(i,k) S_j = δ_ij Σ_h S_j e_(h,k)",
            w,
            (0..m * n)
                .flat_map(|c| (0..m).map(move |j| (c, j)))
                .map(|(c, j)| {
                    let (i, k) = (c / n, c % n);
                    let lhs = &ck.idem[c] * &g.s[j];
                    let rhs = if i == j {
                        g.sum((0..m).map(|h| &g.s[j] * &ck.idem[ck.idx(h, k)]))
                    } else {
                        f.zero()
                    };
                    (format!("(i,k)=({i},{k}), j={j}"), &lhs - &rhs)
                }),
        ),
        window_check(
            "e_t_relation",
            "e_(i,k) T_l = δ_kl Σ_m T_l e_(i,m)",
            w,
            (0..m * n)
                .flat_map(|c| (0..n).map(move |l| (c, l)))
                .map(|(c, l)| {
                    let (i, k) = (c / n, c % n);
                    let lhs = &ck.idem[c] * &g.t[l];
                    let rhs = if k == l {
                        g.sum((0..n).map(|h| &g.t[l] * &ck.idem[ck.idx(i, h)]))
                    } else {
                        f.zero()
                    };
                    (format!("(i,k)=({i},{k}), l={l}"), &lhs - &rhs)
                }),
        ),
        window_check(
            "e_orthogonal",
            "e_a e_b = δ_ab e_a",
            w,
            pairs().map(|(a, b)| {
                let prod = &ck.idem[a] * &ck.idem[b];
                let rhs = if a == b { ck.idem[a].clone() } else { f.zero() };
                (format!("a={a}, b={b}"), &prod - &rhs)
            }),
        ),
        window_check(
            "e_sum",
            "Σ e_(i,k) = 1",
            w,
            [(
                String::new(),
                &g.sum(ck.idem.iter().cloned()) - &f.identity(),
            )],
        ),
    ]
}

/// Partial-isometry law and the relations of the indexed generators on
/// `[2, K]`. Source projections `X*X` vanish on level `K` by truncation,
/// so those relations use `[2, K-1]`.
pub fn verify_ck_relations(ck: &CkGenerators<'_>) -> Vec<IdentityWindowReport> {
    let g = &ck.gen;
    let f = g.fock;
    let w = g.compact_window();
    let (m, n) = (ck.m, ck.n);
    let labelled = |c: usize| format!("(i,k)=({},{})", c / n, c % n);
    let all_ranges = g.sum((0..m * n).map(|c| ck.range_pair(c)));
    vec![
        window_check(
            "partial_isometry",
            "X X* X = X",
            w,
            ck.partial_isometries()
                .enumerate()
                .map(|(a, x)| (format!("generator {a}"), &(&ck.range(x) * x) - x)),
        ),
        window_check(
            "idempotent_range",
            "e_(i,k) = S_(i,k)S_(i,k)* + T_(i,k)T_(i,k)*",
            w,
            (0..m * n).map(|c| (labelled(c), &ck.idem[c] - &ck.range_pair(c))),
        ),
        window_check(
            "s_splitting",
            "S_i = Σ_k S_(i,k)",
            w,
            (0..m).map(|i| {
                (
                    format!("i={i}"),
                    &g.s[i] - &g.sum((0..n).map(|k| ck.s_idx[ck.idx(i, k)].clone())),
                )
            }),
        ),
        window_check(
            "t_splitting",
            "T_k = Σ_i T_(i,k)",
            w,
            (0..n).map(|k| {
                (
                    format!("k={k}"),
                    &g.t[k] - &g.sum((0..m).map(|i| ck.t_idx[ck.idx(i, k)].clone())),
                )
            }),
        ),
        window_check(
            "ck_unit",
            "Σ S_(i,k)S_(i,k)* + Σ T_(i,k)T_(i,k)* = 1",
            w,
            [(String::new(), &all_ranges - &f.identity())],
        ),
        window_check(
            "ck_s_source",
            "S_(i,k)*S_(i,k) = Σ_j (S_(j,k)S_(j,k)* + T_(j,k)T_(j,k)*)",
            g.window,
            (0..m * n).map(|c| {
                let k = c % n;
                let lhs = &ck.s_idx[c].adjoint() * &ck.s_idx[c];
                (
                    labelled(c),
                    &lhs - &g.sum((0..m).map(|j| ck.range_pair(ck.idx(j, k)))),
                )
            }),
        ),
        window_check(
            "ck_t_source",
            "T_(i,k)*T_(i,k) = Σ_l (S_(i,l)S_(i,l)* + T_(i,l)T_(i,l)*)",
            g.window,
            (0..m * n).map(|c| {
                let i = c / n;
                let lhs = &ck.t_idx[c].adjoint() * &ck.t_idx[c];
                (
                    labelled(c),
                    &lhs - &g.sum((0..n).map(|l| ck.range_pair(ck.idx(i, l)))),
                )
            }),
        ),
    ]
}

/// `A = E_M ⊗ I_N`, `B = I_M ⊗ E_N`, `H = [[A, A], [B, B]]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CkMatrixBundle {
    pub a: IntegerMatrix,
    pub b: IntegerMatrix,
    pub h: IntegerMatrix,
}

pub fn ck_matrix(m: usize, n: usize) -> Result<CkMatrixBundle> {
    if m < 2 || n < 2 {
        return Err(Error::InvalidParameter(format!(
            "need M, N >= 2, got M={m}, N={n}"
        )));
    }
    let a = IntegerMatrix::ones(m).kron(&IntegerMatrix::identity(n));
    let b = IntegerMatrix::identity(m).kron(&IntegerMatrix::ones(n));
    let mn = m * n;
    let mut h = IntegerMatrix::zeros(2 * mn, 2 * mn);
    for r in 0..mn {
        for c in 0..mn {
            for off in [0, mn] {
                h[(r, c + off)] = a[(r, c)].clone();
                h[(r + mn, c + off)] = b[(r, c)].clone();
            }
        }
    }
    Ok(CkMatrixBundle { a, b, h })
}

/// `X_a* X_a = Σ_b H[a][b] X_b X_b*` over the generators in row order of
/// `H`, with every range projection nonzero.
pub fn verify_ck_matrix(ck: &CkGenerators<'_>, bundle: &CkMatrixBundle) -> IdentityWindowReport {
    let g = &ck.gen;
    let w = g.window;
    let gens: Vec<&FockOperator> = ck.partial_isometries().collect();
    let ranges: Vec<FockOperator> = gens.iter().map(|x| ck.range(x)).collect();
    let (id, citation) = ("ck_matrix_rows", "X_a*X_a = Σ_b H[a][b] X_bX_b*");
    if bundle.h.rows() != gens.len() {
        return IdentityWindowReport::new(
            id,
            citation,
            w,
            Some(EntryWitness::note(format!(
                "matrix has {} rows for {} generators",
                bundle.h.rows(),
                gens.len()
            ))),
        );
    }
    if let Some(b) = ranges
        .iter()
        .position(|r| r.restrict_cols(w.0, w.1).is_zero())
    {
        return IdentityWindowReport::new(
            id,
            citation,
            w,
            Some(EntryWitness::note(format!(
                "range of generator {b} vanishes"
            ))),
        );
    }
    window_check(
        id,
        citation,
        w,
        gens.iter().enumerate().map(|(a, x)| {
            let rhs = g.sum(
                (0..gens.len())
                    .filter(|&b| !num_traits::Zero::is_zero(&bundle.h[(a, b)]))
                    .map(|b| ranges[b].clone()),
            );
            (format!("row {a}"), &(&x.adjoint() * x) - &rhs)
        }),
    )
}

/// Least `p` within the Wielandt bound `(n-1)² + 1` with `m^p > 0`
/// entrywise, computed with boolean powers.
pub fn is_aperiodic(m: &IntegerMatrix) -> (bool, Option<usize>) {
    let n = m.rows();
    if n == 0 || !m.is_square() {
        return (false, None);
    }
    let base: Vec<Vec<bool>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| num_traits::Signed::is_positive(&m[(r, c)]))
                .collect()
        })
        .collect();
    let mut power = base.clone();
    let bound = (n - 1) * (n - 1) + 1;
    for p in 1..=bound {
        if power.iter().all(|row| row.iter().all(|&x| x)) {
            return (true, Some(p));
        }
        power = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| (0..n).any(|k| power[r][k] && base[k][c]))
                    .collect()
            })
            .collect();
    }
    (false, None)
}

/// Merges indices whose columns coincide. Classes are ordered by their
/// smallest index; entry `[c][c']` sums the rows of class `c` at the
/// representative column of `c'`.
pub fn column_amalgamation(m: &IntegerMatrix) -> IntegerMatrix {
    let n = m.cols();
    let column = |c: usize| -> Vec<_> { (0..m.rows()).map(|r| m[(r, c)].clone()).collect() };
    let mut classes: Vec<(usize, Vec<usize>)> = Vec::new();
    for c in 0..n {
        let col = column(c);
        match classes.iter_mut().find(|(rep, _)| column(*rep) == col) {
            Some((_, members)) => members.push(c),
            None => classes.push((c, vec![c])),
        }
    }
    let k = classes.len();
    let mut out = IntegerMatrix::zeros(k, k);
    for (ci, (_, members)) in classes.iter().enumerate() {
        for (cj, (rep, _)) in classes.iter().enumerate() {
            for &r in members {
                out[(ci, cj)] += &m[(r, *rep)];
            }
        }
    }
    out
}

/// Which automorphism `U* x U` (and `V* x V`) implements on `A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConventionFinding {
    pub u_matches_alpha: bool,
    pub u_matches_beta: bool,
    pub v_matches_alpha: bool,
    pub v_matches_beta: bool,
}

impl std::fmt::Display for ConventionFinding {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = |a: bool, b: bool| match (a, b) {
            (true, true) => "α(x) and β(x)",
            (true, false) => "α(x)",
            (false, true) => "β(x)",
            (false, false) => "neither α(x) nor β(x)",
        };
        write!(
            f,
            "U*xU = {}; V*xV = {}",
            name(self.u_matches_alpha, self.u_matches_beta),
            name(self.v_matches_alpha, self.v_matches_beta)
        )
    }
}

#[derive(Clone, Debug)]
pub struct Prop71Report {
    pub reports: Vec<IdentityWindowReport>,
    pub finding: ConventionFinding,
}

/// Isometries `U = S₁`, `V = T₁` of the permutation module `ℂ^d` with
/// `α(e_j) = e_σ(j)`, `β(e_j) = e_τ(j)`.
pub fn verify_prop_7_1(d: usize, sigma: &[usize], tau: &[usize], k: usize) -> Result<Prop71Report> {
    let spec = build_example_alpha_beta(d, sigma, tau)?;
    let fock = build_fock(&spec, k)?;
    let gen = make_generators(&fock)?;
    let (u, v) = (&gen.s[0], &gen.t[0]);
    let id = fock.identity();
    let (uu, vv) = (u * &u.adjoint(), v * &v.adjoint());
    let compact = gen.compact_window();
    let exact = gen.exact_window();
    // Level 0 is B₁ ⊕ B₂, where U*U is the projection onto B₁.
    let isometric = (1, k - 1);
    let x_ops: Vec<FockOperator> = (0..d)
        .map(|j| gen.phi_a(Leg::One, &basis_vector(d, j)))
        .collect();
    let commute = |name: &str, citation: &str, p: &FockOperator| {
        window_check(
            name,
            citation,
            compact,
            x_ops
                .iter()
                .enumerate()
                .map(|(j, x)| (format!("x=e{j}"), &(p * x) - &(x * p))),
        )
    };
    let reports = vec![
        window_check(
            "uu_vv_unit",
            "UU* + VV* = 1",
            compact,
            [(String::new(), &(&uu + &vv) - &id)],
        ),
        window_check(
            "u_isometry",
            "U*U = 1",
            isometric,
            [(String::new(), &(&u.adjoint() * u) - &id)],
        ),
        window_check(
            "v_isometry",
            "V*V = 1",
            isometric,
            [(String::new(), &(&v.adjoint() * v) - &id)],
        ),
        commute("uu_range_commutes", "UU*x = xUU*", &uu),
        commute("vv_range_commutes", "VV*x = xVV*", &vv),
    ];

    let permuted = |p: &[usize], j: usize| basis_vector(d, p[j]);
    let matches = |x: &FockOperator, p: &[usize]| {
        (0..d).all(|j| {
            let lhs = &(&x.adjoint() * &x_ops[j]) * x;
            (&lhs - &gen.phi_a(Leg::One, &permuted(p, j)))
                .restrict_cols(exact.0, exact.1)
                .is_zero()
        })
    };
    let finding = ConventionFinding {
        u_matches_alpha: matches(u, sigma),
        u_matches_beta: matches(u, tau),
        v_matches_alpha: matches(v, sigma),
        v_matches_beta: matches(v, tau),
    };
    Ok(Prop71Report { reports, finding })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ktheory::cokernel;
    use crate::quad::parse_cycles;
    use crate::report::all_pass;

    fn mat(rows: &[Vec<i64>]) -> IntegerMatrix {
        IntegerMatrix::from_rows(rows).unwrap()
    }

    fn failures(r: &[IdentityWindowReport]) -> Vec<String> {
        r.iter()
            .filter(|x| !x.pass)
            .map(ToString::to_string)
            .collect()
    }

    #[test]
    fn ck_matrix_2_2() {
        let b = ck_matrix(2, 2).unwrap();
        let expected = mat(&[
            vec![2, 1, 1, 0],
            vec![1, 2, 0, 1],
            vec![1, 0, 2, 1],
            vec![0, 1, 1, 2],
        ]);
        assert_eq!(b.a.add(&b.b), expected);
        // Kronecker oracle: A[(i,k),(j,l)] = δ_kl, B[(i,k),(j,l)] = δ_ij.
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(b.a[(r, c)], i64::from(r % 2 == c % 2).into());
                assert_eq!(b.b[(r, c)], i64::from(r / 2 == c / 2).into());
            }
        }
        for r in 0..8 {
            for c in 0..4 {
                assert_eq!(b.h[(r, c)], b.h[(r, c + 4)]);
            }
        }
        assert!(ck_matrix(1, 3).is_err());
    }

    #[test]
    fn ck_matrix_row_sums() {
        let b = ck_matrix(2, 3).unwrap();
        assert_eq!((b.h.rows(), b.h.cols()), (12, 12));
        for r in 0..6 {
            let sum: num_bigint::BigInt = b.a.row(r).iter().sum();
            assert_eq!(sum, 2.into());
        }
    }

    #[test]
    fn aperiodicity() {
        assert_eq!(
            is_aperiodic(&mat(&[vec![0, 1], vec![1, 1]])),
            (true, Some(2))
        );
        assert_eq!(is_aperiodic(&IntegerMatrix::identity(3)), (false, None));
        assert_eq!(is_aperiodic(&mat(&[vec![0, 1], vec![1, 0]])), (false, None));
        let h = ck_matrix(2, 2).unwrap().h;
        let (ok, p) = is_aperiodic(&h);
        assert!(ok && p.unwrap() <= 50);
    }

    #[test]
    fn amalgamation() {
        for (m, n) in [(2, 2), (2, 3)] {
            let b = ck_matrix(m, n).unwrap();
            assert_eq!(column_amalgamation(&b.h), b.a.add(&b.b));
        }
        let distinct = mat(&[vec![1, 2], vec![3, 4]]);
        assert_eq!(column_amalgamation(&distinct), distinct);
        let b = ck_matrix(2, 2).unwrap();
        let i8 = IntegerMatrix::identity(8);
        let i4 = IntegerMatrix::identity(4);
        assert_eq!(cokernel(&b.h.sub(&i8)), cokernel(&b.a.add(&b.b).sub(&i4)));
    }

    #[test]
    fn ck_generators_2_2() {
        let fock = build_ck_fock(2, 2, 3).unwrap();
        let ck = build_ck_generators(&fock).unwrap();
        assert_eq!((ck.idem.len(), ck.s_idx.len(), ck.t_idx.len()), (4, 4, 4));
        assert!(all_pass(&ck.reports), "{:?}", failures(&ck.reports));
        let rel = verify_ck_relations(&ck);
        assert!(all_pass(&rel), "{:?}", failures(&rel));
        let r = verify_ck_matrix(&ck, &ck_matrix(2, 2).unwrap());
        assert!(r.pass, "{r}");
    }

    #[test]
    fn ck_matrix_crosscheck_rejects_wrong_matrix() {
        let fock = build_ck_fock(2, 2, 3).unwrap();
        let ck = build_ck_generators(&fock).unwrap();
        let mut bundle = ck_matrix(2, 2).unwrap();
        bundle.h = bundle.h.transpose();
        bundle.h[(0, 1)] = 1.into();
        bundle.h[(0, 0)] = 0.into();
        assert!(!verify_ck_matrix(&ck, &bundle).pass);
    }

    #[test]
    fn prop_7_1_relations() {
        let s = parse_cycles(3, "(123)").unwrap();
        let t = parse_cycles(3, "(132)").unwrap();
        let r = verify_prop_7_1(3, &s, &t, 3).unwrap();
        assert!(all_pass(&r.reports), "{:?}", failures(&r.reports));
        assert!(
            r.finding.u_matches_beta && !r.finding.u_matches_alpha,
            "{}",
            r.finding
        );

        let r = verify_prop_7_1(3, &s, &s, 3).unwrap();
        assert!(all_pass(&r.reports), "{:?}", failures(&r.reports));

        let id = parse_cycles(1, "()").unwrap();
        let r = verify_prop_7_1(1, &id, &id, 3).unwrap();
        assert!(all_pass(&r.reports));
        assert!(r.finding.u_matches_alpha && r.finding.u_matches_beta);
    }
}
