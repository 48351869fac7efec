//! The coefficient algebra `B∘` generated by both left actions on `H`,
//! the map `π` into the Fock operators, and the core filtration.

use num_traits::Zero;

use super::{window_check, GeneratorFamily};
use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, GaussianRational, SpanBasis, SparseVec};
use crate::fock::FockOperator;
use crate::quad::{Leg, QuadModuleSpec};
use crate::report::{EntryWitness, IdentityWindowReport};

type Q = GaussianRational;

/// Linear basis of `B∘ ⊂ L(H)`. Each basis element is a product of minimal
/// idempotents of `B₁`, `B₂` recorded in `words`.
#[derive(Clone, Debug)]
pub struct BCircModel {
    pub dim_h: usize,
    pub basis: Vec<ExactMatrix>,
    pub words: Vec<Vec<(Leg, usize)>>,
    span: SpanBasis,
}

fn flatten(m: &ExactMatrix) -> SparseVec {
    m.entries()
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(k, x)| (k, x.clone()))
        .collect()
}

pub(crate) fn word_label(word: &[(Leg, usize)]) -> String {
    word.iter()
        .map(|(leg, j)| format!("φ{}(e{j})", leg.number()))
        .collect()
}

/// Closes the left actions of minimal idempotents under multiplication.
pub fn build_bcirc(spec: &QuadModuleSpec) -> BCircModel {
    let gens: Vec<((Leg, usize), ExactMatrix)> = Leg::BOTH
        .into_iter()
        .flat_map(|leg| {
            spec.phi(leg)
                .iter()
                .enumerate()
                .map(move |(j, m)| ((leg, j), m.clone()))
        })
        .collect();
    let mut model = BCircModel {
        dim_h: spec.dim_h,
        basis: Vec::new(),
        words: Vec::new(),
        span: SpanBasis::new(),
    };
    for (label, m) in &gens {
        model.push(vec![*label], m.clone());
    }
    let mut next = 0;
    while next < model.basis.len() {
        for (label, g) in &gens {
            let prod = model.basis[next].mul(g);
            let mut word = model.words[next].clone();
            word.push(*label);
            model.push(word, prod);
        }
        next += 1;
    }
    model
}

impl BCircModel {
    fn push(&mut self, word: Vec<(Leg, usize)>, m: ExactMatrix) {
        if self.span.insert(flatten(&m)) {
            self.basis.push(m);
            self.words.push(word);
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, l: &ExactMatrix) -> bool {
        l.rows() == self.dim_h && l.cols() == self.dim_h && self.span.contains(flatten(l))
    }

    pub fn is_commutative(&self) -> bool {
        self.basis
            .iter()
            .enumerate()
            .all(|(i, x)| self.basis[i + 1..].iter().all(|y| x.mul(y) == y.mul(x)))
    }

    fn is_diagonal(&self) -> bool {
        let n = self.dim_h;
        self.basis
            .iter()
            .all(|m| (0..n).all(|r| (0..n).all(|c| r == c || m[(r, c)].is_zero())))
    }

    /// Minimal projections of `B∘`. Requires every element to be diagonal
    /// in the coordinates of `H`; they are then the indicator projections of
    /// coordinate classes on which all elements agree.
    pub fn minimal_idempotents(&self) -> Result<Vec<ExactMatrix>> {
        if !self.is_diagonal() {
            return Err(Error::AssumptionsViolated(
                "B∘ is not diagonal in the coordinates of H".into(),
            ));
        }
        let n = self.dim_h;
        let signature =
            |a: usize| -> Vec<Q> { self.basis.iter().map(|m| m[(a, a)].clone()).collect() };
        let mut classes: Vec<(Vec<Q>, Vec<usize>)> = Vec::new();
        for a in 0..n {
            let sig = signature(a);
            if sig.iter().all(Zero::is_zero) {
                continue;
            }
            match classes.iter_mut().find(|(s, _)| *s == sig) {
                Some((_, members)) => members.push(a),
                None => classes.push((sig, vec![a])),
            }
        }
        Ok(classes
            .into_iter()
            .map(|(_, members)| {
                let mut d = vec![Q::zero(); n];
                for a in members {
                    d[a] = Q::from(1);
                }
                ExactMatrix::diagonal(&d)
            })
            .collect())
    }

    /// Coefficients of `y` over `minimal_idempotents`, if `y` is diagonal
    /// and constant on each class.
    pub fn decompose(&self, y: &ExactMatrix) -> Result<Option<Vec<Q>>> {
        let mins = self.minimal_idempotents()?;
        let n = self.dim_h;
        let coeffs: Vec<Q> = mins
            .iter()
            .map(|p| {
                let a = (0..n)
                    .find(|&a| !p[(a, a)].is_zero())
                    .expect("nonempty class");
                y[(a, a)].clone()
            })
            .collect();
        let mut rebuilt = ExactMatrix::zeros(n, n);
        for (c, p) in coeffs.iter().zip(&mins) {
            rebuilt.add_assign(&p.scale(c));
        }
        Ok((&rebuilt == y).then_some(coeffs))
    }
}

/// `π(L)` together with its consistency reports.
#[derive(Clone, Debug)]
pub struct PiImage {
    pub op: FockOperator,
    pub reports: Vec<IdentityWindowReport>,
}

/// `π(L) = Σ S_i Φ₁(⟨u_i|Lu_j⟩) S_j* + Σ T_k Φ₂(⟨v_k|Lv_l⟩) T_l*` for
/// `L ∈ B∘`.
pub fn compute_pi(
    gen: &GeneratorFamily<'_>,
    model: &BCircModel,
    l: &ExactMatrix,
) -> Result<PiImage> {
    if !model.contains(l) {
        return Err(Error::NotInBCirc(format!(
            "{}x{} operator outside a span of dimension {}",
            l.rows(),
            l.cols(),
            model.dim()
        )));
    }
    let op = gen.pi_formula(l);
    let mut reports = Vec::new();
    for leg in Leg::BOTH {
        let (x, xs, g) = match leg {
            Leg::One => ("S", "u", 1),
            Leg::Two => ("T", "v", 2),
        };
        let n = gen.count(leg);
        let op = &op;
        reports.push(window_check(
            &format!("pi_compression_{}", x.to_lowercase()),
            &format!("{x}_h* π(L) {x}_h' = Φ{g}(⟨{xs}_h|L{xs}_h'⟩_B{g})"),
            gen.window,
            (0..n).flat_map(move |h| {
                (0..n).map(move |h2| {
                    let c = gen.creators(leg);
                    let lhs = &(&c[h].adjoint() * op) * &c[h2];
                    let coeff = gen.inner(leg, &gen.basis(leg)[h], &l.mul_vec(&gen.basis(leg)[h2]));
                    (format!("h={h}, h'={h2}"), &lhs - &gen.phi(leg, &coeff))
                })
            }),
        ));
    }
    let lift = gen.fock.lift(l)?;
    reports.push(window_check(
        "pi_lift",
        "π(L) = L ⊗ 1 on the Fock module",
        gen.compact_window(),
        [(String::new(), &op - &lift)],
    ));
    let injective = l.is_zero() || !op.restrict_cols(gen.window.0, gen.window.1).is_zero();
    reports.push(IdentityWindowReport::new(
        "pi_injective",
        "π(L) = 0 implies L = 0",
        gen.window,
        (!injective).then(|| EntryWitness::note("nonzero L with π(L) vanishing on the window")),
    ));
    Ok(PiImage { op, reports })
}

/// `π(L)π(L') = π(LL')` on basis pairs of `B∘`.
pub fn verify_pi_multiplicative(
    gen: &GeneratorFamily<'_>,
    model: &BCircModel,
) -> IdentityWindowReport {
    let images: Vec<FockOperator> = model.basis.iter().map(|l| gen.pi_formula(l)).collect();
    let n = model.dim();
    let (images, basis) = (&images, &model.basis);
    window_check(
        "pi_multiplicative",
        "π(L)π(L') = π(LL')",
        gen.compact_window(),
        (0..n).flat_map(move |a| {
            (0..n).map(move |b| {
                let lhs = &images[a] * &images[b];
                let rhs = gen.pi_formula(&basis[a].mul(&basis[b]));
                (format!("L=b{a}, L'=b{b}"), &lhs - &rhs)
            })
        }),
    )
}

fn words(letters: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..letters).map(move |x| {
                    let mut w = w.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// Dimensions of `span{S_μ b S_ν* : |μ| = |ν| = m, b ∈ B∘}` for `m = 0..=n`,
/// with `S` ranging over all `S_i` then all `T_k`, measured on column
/// levels `[n+1, K]`.
pub fn core_filtration_dims(
    gen: &GeneratorFamily<'_>,
    model: &BCircModel,
    n: usize,
) -> Result<Vec<usize>> {
    let k = gen.depth();
    if n + 1 > k {
        return Err(Error::Precondition(format!(
            "filtration index {n} needs depth at least {}",
            n + 1
        )));
    }
    let creators: Vec<&FockOperator> = gen.s.iter().chain(&gen.t).collect();
    let lifts = model
        .basis
        .iter()
        .map(|l| gen.fock.lift(l))
        .collect::<Result<Vec<_>>>()?;
    let product = |w: &[usize]| {
        w.iter()
            .fold(gen.fock.identity(), |acc, &x| &acc * creators[x])
    };
    let mut dims = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let ws = words(creators.len(), m);
        let heads: Vec<FockOperator> = ws.iter().map(|w| product(w)).collect();
        let mut span = SpanBasis::new();
        for nu in &heads {
            let tail = nu.adjoint().restrict_cols(n + 1, k);
            for b in &lifts {
                let right = b * &tail;
                for mu in &heads {
                    span.insert((mu * &right).to_sparse());
                }
            }
        }
        dims.push(span.dim());
    }
    Ok(dims)
}
