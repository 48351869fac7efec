//! Truncated Fock module `F₀ ⊕ F₁ ⊕ … ⊕ F_K` with creation operators, left
//! actions, projections and the gauge grading.

mod operator;
mod space;

use std::sync::Arc;

use num_traits::{One, Zero};

pub use operator::{Degree, FockLayout, FockOperator};
pub use space::{left_multiplier, relative_tensor, RelTensorSpace};

use crate::algebra::{self, act, basis_vector};
use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, GaussianRational, GramForm};
use crate::quad::{derive_lambda, Lambda, Leg, QuadModuleSpec};
use crate::report::ValidationReport;

type Q = GaussianRational;

/// Default cap on the ambient dimension of a truncation.
pub const DEFAULT_MAX_DIM: usize = 20_000;

/// Budget on exact entries of the dense ambient forms of one component,
/// `ambient² × (dim A + dim B₁ + dim B₂)`.
pub const MAX_AMBIENT_ENTRIES: usize = 1 << 22;

/// Largest ambient dimension of one component that fits the entry budget.
pub fn ambient_dim_cap(spec: &QuadModuleSpec) -> usize {
    let width = spec.dim_a() + spec.dim_b(Leg::One) + spec.dim_b(Leg::Two);
    ((MAX_AMBIENT_ENTRIES / width) as f64).sqrt() as usize
}

/// Cap from `QUADMOD_MAX_DIM`, falling back to [`DEFAULT_MAX_DIM`].
pub fn max_dim_from_env() -> usize {
    std::env::var("QUADMOD_MAX_DIM")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_DIM)
}

/// Which creation family: `s_ξ` prepends over `B₁`, `t_ξ` over `B₂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Creation {
    S,
    T,
}

impl Creation {
    pub fn leg(self) -> Leg {
        match self {
            Creation::S => Leg::One,
            Creation::T => Leg::Two,
        }
    }
}

#[derive(Debug)]
pub struct TruncatedFock {
    spec: QuadModuleSpec,
    lambda: Lambda,
    depth: usize,
    /// Component spaces; index 0 (level 0) is `None`.
    spaces: Vec<Option<RelTensorSpace>>,
    layout: Arc<FockLayout>,
    checks: ValidationReport,
}

pub fn build_fock(spec: &QuadModuleSpec, depth: usize) -> Result<TruncatedFock> {
    build_fock_with_cap(spec, depth, max_dim_from_env())
}

/// Builds levels `0..=depth`. Fails with `TooLarge` before constructing a
/// level whose ambient size would push the running total past `cap`, or
/// whose components exceed [`ambient_dim_cap`].
pub fn build_fock_with_cap(
    spec: &QuadModuleSpec,
    depth: usize,
    cap: usize,
) -> Result<TruncatedFock> {
    if depth < 2 {
        return Err(Error::DepthTooSmall(depth, 2));
    }
    spec.check_dimensions()?;
    let (lambda, mut checks) = derive_lambda(spec)?;
    let (d1, d2) = (spec.dim_b(Leg::One), spec.dim_b(Leg::Two));
    let h = RelTensorSpace::from_spec(spec)?;
    let n = h.dim;

    let mut total = d1 + d2 + n;
    if total > cap {
        return Err(Error::TooLarge { dim: total, cap });
    }
    let amb_cap = ambient_dim_cap(spec);
    let mut spaces: Vec<Option<RelTensorSpace>> = vec![None, Some(h.clone())];
    for level in 2..=depth {
        let predicted: usize = FockLayout::components_at(level - 1)
            .map(|c| n * spaces[c].as_ref().map_or(0, |s| s.dim))
            .sum::<usize>()
            * 2;
        if total + predicted > cap {
            return Err(Error::TooLarge {
                dim: total + predicted,
                cap,
            });
        }
        for comp in FockLayout::components_at(level) {
            let (_, word) = FockLayout::word(comp);
            let tail = FockLayout::component(level - 1, &word[1..]);
            let y = spaces[tail].as_ref().expect("lower level built");
            let ambient = n * y.dim;
            if ambient > amb_cap {
                return Err(Error::TooLarge {
                    dim: ambient,
                    cap: amb_cap,
                });
            }
            let w = relative_tensor(&h, word[0], y, spec, &lambda)?;
            let tag = word_label(&word);
            for c in &w.checks.checks {
                checks.push(
                    &format!("{}[{tag}]", c.name),
                    &c.citation,
                    c.witness.clone(),
                );
            }
            total += w.dim;
            spaces.push(Some(w));
        }
    }

    let mut grams = vec![level0_gram(spec, &lambda)?];
    grams.extend(spaces[1..].iter().map(|s| s.as_ref().unwrap().gram.clone()));
    let layout = Arc::new(FockLayout::new(depth, grams)?);

    let mut fock = TruncatedFock {
        spec: spec.clone(),
        lambda,
        depth,
        spaces,
        layout,
        checks: ValidationReport::new(),
    };
    checks.extend(fock.associativity_check()?);
    fock.checks = checks;
    Ok(fock)
}

/// `⟨b₁⊕b₂|b₁'⊕b₂'⟩_A = λ₁(b₁*b₁') + λ₂(b₂*b₂')`, scalarized.
fn level0_gram(spec: &QuadModuleSpec, lambda: &Lambda) -> Result<GramForm> {
    let mut diag = Vec::new();
    for leg in Leg::BOTH {
        for j in 0..spec.dim_b(leg) {
            diag.push(algebra::trace(
                &lambda.apply(leg, &basis_vector(spec.dim_b(leg), j)),
            ));
        }
    }
    GramForm::new(ExactMatrix::diagonal(&diag))
}

pub fn word_label(word: &[Leg]) -> String {
    if word.is_empty() {
        return "-".into();
    }
    word.iter().map(|l| l.number().to_string()).collect()
}

impl TruncatedFock {
    pub fn spec(&self) -> &QuadModuleSpec {
        &self.spec
    }

    pub fn lambda(&self) -> &Lambda {
        &self.lambda
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn layout(&self) -> &Arc<FockLayout> {
        &self.layout
    }

    /// Construction checks: λ-faithfulness, balancing, descent of the
    /// actions and associativity (skipped when the triple product exceeds
    /// [`ambient_dim_cap`]).
    pub fn checks(&self) -> &ValidationReport {
        &self.checks
    }

    pub fn level_dims(&self) -> Vec<usize> {
        self.layout.level_dims()
    }

    pub fn total_dim(&self) -> usize {
        self.layout.total_dim()
    }

    pub fn space(&self, comp: usize) -> Option<&RelTensorSpace> {
        self.spaces[comp].as_ref()
    }

    fn h(&self) -> &RelTensorSpace {
        self.spaces[1].as_ref().unwrap()
    }

    fn dim_b(&self, leg: Leg) -> usize {
        self.spec.dim_b(leg)
    }

    /// Offset of the `B_leg` summand inside level 0.
    fn level0_offset(&self, leg: Leg) -> usize {
        match leg {
            Leg::One => 0,
            Leg::Two => self.dim_b(Leg::One),
        }
    }

    /// Level-0 vector `b₁ ⊕ b₂` as a global vector.
    pub fn level0_vector(&self, b1: &[Q], b2: &[Q]) -> Vec<Q> {
        let local: Vec<Q> = b1.iter().chain(b2).cloned().collect();
        self.layout.inject(0, &local)
    }

    /// A vector of `H = F₁` as a global vector.
    pub fn level1_vector(&self, xi: &[Q]) -> Vec<Q> {
        self.layout.inject(1, xi)
    }

    /// Class of `ξ ⊗ (vector of component tail)` in the component of the
    /// word `leg · word(tail)`.
    pub fn tensor_class(&self, leg: Leg, xi: &[Q], tail: usize, y: &[Q]) -> (usize, Vec<Q>) {
        let (level, word) = FockLayout::word(tail);
        assert!(level >= 1);
        let mut w = vec![leg];
        w.extend(word);
        let target = FockLayout::component(level + 1, &w);
        let space = self.space(target).expect("target level within truncation");
        let m = left_multiplier(space, xi, self.layout.dim(tail));
        (target, m.mul_vec(y))
    }

    /// `s_ξ` or `t_ξ`. Level `K` is mapped to 0.
    pub fn creation(&self, kind: Creation, xi: &[Q]) -> FockOperator {
        assert_eq!(xi.len(), self.h().dim);
        let leg = kind.leg();
        let mut op = FockOperator::zero(&self.layout);

        // Level 0: b₁ ⊕ b₂ ↦ ξϕ_leg(b_leg).
        let mut b0 = ExactMatrix::zeros(self.h().dim, self.layout.dim(0));
        let off = self.level0_offset(leg);
        for j in 0..self.dim_b(leg) {
            let col = self.h().right(leg)[j].mul_vec(xi);
            for (r, v) in col.into_iter().enumerate() {
                b0[(r, off + j)] = v;
            }
        }
        op.set_block(1, 0, b0);

        for level in 1..self.depth {
            for src in FockLayout::components_at(level) {
                let (_, word) = FockLayout::word(src);
                let mut w = vec![leg];
                w.extend(word);
                let target = FockLayout::component(level + 1, &w);
                let space = self.space(target).unwrap();
                op.set_block(
                    target,
                    src,
                    left_multiplier(space, xi, self.layout.dim(src)),
                );
            }
        }
        op
    }

    pub fn s(&self, xi: &[Q]) -> FockOperator {
        self.creation(Creation::S, xi)
    }

    pub fn t(&self, xi: &[Q]) -> FockOperator {
        self.creation(Creation::T, xi)
    }

    /// `φ̄_leg(b)`: `b·` on the `B_leg` summand of level 0, `φ_leg(b)` above.
    pub fn left_action(&self, leg: Leg, b: &[Q]) -> FockOperator {
        assert_eq!(b.len(), self.dim_b(leg));
        let mut op = FockOperator::zero(&self.layout);
        let mut d0 = vec![Q::zero(); self.layout.dim(0)];
        let off = self.level0_offset(leg);
        d0[off..off + b.len()].clone_from_slice(b);
        op.set_block(0, 0, ExactMatrix::diagonal(&d0));
        for comp in 1..self.layout.num_components() {
            let space = self.space(comp).unwrap();
            op.set_block(comp, comp, act(space.left(leg), b));
        }
        op
    }

    /// Right action of `a ∈ A`: `ψ₁(a) ⊕ ψ₂(a)` on level 0, the module
    /// action above.
    pub fn right_action_a(&self, a: &[Q]) -> FockOperator {
        let mut op = FockOperator::zero(&self.layout);
        let mut d0 = self.spec.psi(Leg::One).apply(a);
        d0.extend(self.spec.psi(Leg::Two).apply(a));
        op.set_block(0, 0, ExactMatrix::diagonal(&d0));
        for comp in 1..self.layout.num_components() {
            op.set_block(comp, comp, act(&self.space(comp).unwrap().right_a, a));
        }
        op
    }

    /// `L̄`: zero on level 0, `L` on level 1 and `L ⊗ 1` above. Fails with
    /// `NotBalanced` if `L ⊗ 1` does not preserve the null space.
    pub fn lift(&self, l: &ExactMatrix) -> Result<FockOperator> {
        let n = self.h().dim;
        if l.rows() != n || l.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "lift: expected {n}x{n}, got {}x{}",
                l.rows(),
                l.cols()
            )));
        }
        let mut op = FockOperator::zero(&self.layout);
        op.set_block(1, 1, l.clone());
        for comp in 2..self.layout.num_components() {
            let (level, word) = FockLayout::word(comp);
            let space = self.space(comp).unwrap();
            let tail = FockLayout::component(level - 1, &word[1..]);
            let amb = l.kron(&ExactMatrix::identity(self.layout.dim(tail)));
            if let Some(k) = space.descent_defect(&amb) {
                return Err(Error::NotBalanced(format!(
                    "L ⊗ 1 moves null vector {k} in word {}",
                    word_label(&word)
                )));
            }
            op.set_block(comp, comp, space.descend(&amb));
        }
        Ok(op)
    }

    /// Projection onto level `n`.
    pub fn level_projection(&self, n: usize) -> FockOperator {
        let mut op = FockOperator::zero(&self.layout);
        for c in FockLayout::components_at(n) {
            op.set_block(c, c, ExactMatrix::identity(self.layout.dim(c)));
        }
        op
    }

    /// Projection onto the words of level `>= 2` whose first letter is `leg`.
    pub fn leading_projection(&self, leg: Leg) -> FockOperator {
        let mut op = FockOperator::zero(&self.layout);
        for c in 2..self.layout.num_components() {
            if FockLayout::word(c).1[0] == leg {
                op.set_block(c, c, ExactMatrix::identity(self.layout.dim(c)));
            }
        }
        op
    }

    /// `(P_0..P_K, P_s, P_t)`.
    pub fn projections(&self) -> (Vec<FockOperator>, FockOperator, FockOperator) {
        (
            (0..=self.depth).map(|n| self.level_projection(n)).collect(),
            self.leading_projection(Leg::One),
            self.leading_projection(Leg::Two),
        )
    }

    pub fn identity(&self) -> FockOperator {
        FockOperator::identity(&self.layout)
    }

    pub fn zero(&self) -> FockOperator {
        FockOperator::zero(&self.layout)
    }

    /// `u_{1/4}`: multiplication by `i^n` on level `n`.
    pub fn gauge_unitary(&self) -> FockOperator {
        FockOperator::scalar_per_level(&self.layout, |n| Q::i_pow(n as i64))
    }

    /// Compares the two bracketings `(H⊗₁H)⊗₂H` and `H⊗₁(H⊗₂H)` through the
    /// map `[e_a ⊗ [e_b ⊗ e_c]] ↦ [[e_a ⊗ e_b] ⊗ e_c]`.
    fn associativity_check(&self) -> Result<ValidationReport> {
        let mut report = ValidationReport::new();
        let citation = "(H⊗₁H)⊗₂H ≅ H⊗₁(H⊗₂H)";
        let h = self.h();
        let n = h.dim;
        let space = |level: usize, word: &[Leg]| {
            self.spaces[FockLayout::component(level, word)]
                .as_ref()
                .unwrap()
        };
        let x12 = space(2, &[Leg::One]);
        let y23 = space(2, &[Leg::Two]);
        let cap = ambient_dim_cap(&self.spec);
        if x12.dim * n > cap || n * y23.dim > cap {
            return Ok(report);
        }
        let right = relative_tensor(x12, Leg::Two, h, &self.spec, &self.lambda)?;
        let built;
        let left = if self.depth >= 3 {
            space(3, &[Leg::One, Leg::Two])
        } else {
            built = relative_tensor(h, Leg::One, y23, &self.spec, &self.lambda)?;
            &built
        };

        if right.dim != left.dim {
            report.push(
                "associativity",
                citation,
                Some(format!("dimensions {} vs {}", right.dim, left.dim)),
            );
            return Ok(report);
        }
        let mut phi = ExactMatrix::zeros(right.dim, left.dim);
        for (p, &amb) in left.quotient_basis.iter().enumerate() {
            let (a, m) = (amb / y23.dim, amb % y23.dim);
            let bc = y23.quotient_basis[m];
            let (b, c) = (bc / n, bc % n);
            let q = x12.quotient_map.mul_vec(&basis_vector(n * n, a * n + b));
            let mut v = vec![Q::zero(); right.ambient_dim];
            for (r, coeff) in q.into_iter().enumerate() {
                v[r * n + c] = coeff;
            }
            let col = right.quotient_map.mul_vec(&v);
            for (r, x) in col.into_iter().enumerate() {
                phi[(r, p)] = x;
            }
        }
        let pull = |g: &ExactMatrix| phi.conj_transpose().mul(g).mul(&phi);
        let mut witness = None;
        if pull(right.gram.matrix()) != *left.gram.matrix() {
            witness = Some("scalar Gram differs".to_string());
        }
        for leg in Leg::BOTH {
            for q in 0..self.dim_b(leg) {
                let (gr, gl) = (
                    right.inner_b(leg).component_gram(q),
                    left.inner_b(leg).component_gram(q),
                );
                if witness.is_none() && pull(&gr) != gl {
                    witness = Some(format!(
                        "B{}-valued product differs in coordinate {q}",
                        leg.number()
                    ));
                }
            }
        }
        if witness.is_none() && phi.rank() != left.dim {
            witness = Some("comparison map is not invertible".into());
        }
        report.push("associativity", citation, witness);
        Ok(report)
    }

    /// Checks `u s_ξ u* = i s_ξ` and `u t_ξ u* = i t_ξ` for the given
    /// vectors, `u φ̄_i(b) u* = φ̄_i(b)` for the given elements, and `u⁴ = 1`.
    pub fn gauge_check(&self, xis: &[Vec<Q>], b1: &[Vec<Q>], b2: &[Vec<Q>]) -> ValidationReport {
        let u = self.gauge_unitary();
        let us = u.adjoint();
        let i = Q::i();
        let mut report = ValidationReport::new();
        let witness =
            |lhs: FockOperator, rhs: FockOperator| (&lhs - &rhs).witness().map(|w| w.to_string());
        for (k, xi) in xis.iter().enumerate() {
            for kind in [Creation::S, Creation::T] {
                let op = self.creation(kind, xi);
                let name = match kind {
                    Creation::S => format!("gauge_s[{k}]"),
                    Creation::T => format!("gauge_t[{k}]"),
                };
                report.push(
                    &name,
                    "u s u* = i s",
                    witness(&(&u * &op) * &us, op.scale(&i)),
                );
            }
        }
        for (leg, family) in [(Leg::One, b1), (Leg::Two, b2)] {
            for (k, b) in family.iter().enumerate() {
                let op = self.left_action(leg, b);
                report.push(
                    &format!("gauge_phi{}[{k}]", leg.number()),
                    "u φ̄(b) u* = φ̄(b)",
                    witness(&(&u * &op) * &us, op),
                );
            }
        }
        let u2 = &u * &u;
        report.push(
            "gauge_period",
            "u⁴ = 1",
            witness(&u2 * &u2, self.identity()),
        );
        report
    }

    /// Minimal-idempotent samples for gauge and faithfulness checks.
    pub fn idempotents(&self, leg: Leg) -> Vec<Vec<Q>> {
        (0..self.dim_b(leg))
            .map(|j| basis_vector(self.dim_b(leg), j))
            .collect()
    }

    /// Unit of `B_leg`.
    pub fn unit(&self, leg: Leg) -> Vec<Q> {
        vec![Q::one(); self.dim_b(leg)]
    }

    /// Coordinates of the `j`th basis vector of `H`.
    pub fn h_basis(&self, j: usize) -> Vec<Q> {
        basis_vector(self.h().dim, j)
    }

    pub fn dim_h(&self) -> usize {
        self.h().dim
    }
}

#[cfg(test)]
mod tests;
