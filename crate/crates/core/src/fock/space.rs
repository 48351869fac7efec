//! Relative tensor products `X ⊗_{B_i} Y` realized as quotients of the
//! algebraic tensor product by the null space of the scalarized inner product.

use num_traits::Zero;

use crate::algebra::{self, act};

use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, GaussianRational, GramForm};
use crate::quad::{InnerTensor, Lambda, Leg, QuadModuleSpec};
use crate::report::ValidationReport;

type Q = GaussianRational;

fn leg_index(leg: Leg) -> usize {
    leg.number() - 1
}

/// A finite-dimensional quad module presented on a coordinate basis, with
/// its quotient data relative to the ambient algebraic tensor product.
#[derive(Clone, Debug)]
pub struct RelTensorSpace {
    pub dim: usize,
    pub ambient_dim: usize,
    /// Ambient indices whose classes form the quotient basis.
    pub quotient_basis: Vec<usize>,
    /// `dim × ambient_dim`; sends an ambient vector to its class.
    pub quotient_map: ExactMatrix,
    /// Basis of the ambient null space.
    pub kernel: Vec<Vec<Q>>,
    /// `τ ∘ ⟨·|·⟩_A` on the quotient basis.
    pub gram: GramForm,
    pub inner_a: InnerTensor,
    pub inner_b: [InnerTensor; 2],
    /// Left actions `φ₁`, `φ₂` indexed by minimal idempotents.
    pub left_b: [Vec<ExactMatrix>; 2],
    /// Right actions `ϕ₁`, `ϕ₂` indexed by minimal idempotents.
    pub right_b: [Vec<ExactMatrix>; 2],
    pub right_a: Vec<ExactMatrix>,
    pub checks: ValidationReport,
}

impl RelTensorSpace {
    /// `H` itself, with the identity quotient.
    pub fn from_spec(spec: &QuadModuleSpec) -> Result<Self> {
        spec.check_dimensions()?;
        let n = spec.dim_h;
        let gram = GramForm::new(spec.scalar_gram_a())?;
        Ok(Self {
            dim: n,
            ambient_dim: n,
            quotient_basis: (0..n).collect(),
            quotient_map: ExactMatrix::identity(n),
            kernel: Vec::new(),
            gram,
            inner_a: spec.inner_a.clone(),
            inner_b: [spec.inner_b1.clone(), spec.inner_b2.clone()],
            left_b: [spec.phi1.clone(), spec.phi2.clone()],
            right_b: [spec.varphi1.clone(), spec.varphi2.clone()],
            right_a: spec.right_a.clone(),
            checks: ValidationReport::new(),
        })
    }

    pub fn inner_b(&self, leg: Leg) -> &InnerTensor {
        &self.inner_b[leg_index(leg)]
    }

    pub fn left(&self, leg: Leg) -> &[ExactMatrix] {
        &self.left_b[leg_index(leg)]
    }

    pub fn right(&self, leg: Leg) -> &[ExactMatrix] {
        &self.right_b[leg_index(leg)]
    }

    /// Class of an ambient operator: `Q · op · E_P`.
    pub fn descend(&self, op: &ExactMatrix) -> ExactMatrix {
        let cols = op.submatrix(&(0..op.rows()).collect::<Vec<_>>(), &self.quotient_basis);
        self.quotient_map.mul(&cols)
    }

    /// First ambient null vector that `op` does not map into the null space.
    pub fn descent_defect(&self, op: &ExactMatrix) -> Option<usize> {
        self.kernel.iter().position(|k| {
            let image = apply_sparse(op, &support(k));
            !algebra::is_zero_vec(&apply_sparse(&self.quotient_map, &support(&image)))
        })
    }
}

fn support(v: &[Q]) -> Vec<(usize, &Q)> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect()
}

/// `m v` for `v` given by its nonzero entries.
fn apply_sparse(m: &ExactMatrix, v: &[(usize, &Q)]) -> Vec<Q> {
    (0..m.rows())
        .map(|r| {
            v.iter().fold(Q::zero(), |acc, &(j, x)| {
                let a = &m[(r, j)];
                if a.is_zero() {
                    acc
                } else {
                    acc + &(a * x)
                }
            })
        })
        .collect()
}

/// Ambient inner-product tensor of `X ⊗_leg Y` with values in `B_j`:
/// `⟨x⊗y|x'⊗y'⟩ = ⟨y|φ_leg^Y(⟨x|x'⟩^X_{B_leg}) y'⟩^Y`.
fn ambient_tensor(
    x: &RelTensorSpace,
    leg: Leg,
    y: &RelTensorSpace,
    target: &InnerTensor,
    tdim: usize,
) -> InnerTensor {
    let (dx, dy) = (x.dim, y.dim);
    let comps: Vec<ExactMatrix> = (0..tdim).map(|q| target.component_gram(q)).collect();
    let zero = vec![Q::zero(); tdim];
    let mut rows = vec![vec![zero.clone(); dx * dy]; dx * dy];
    for a in 0..dx {
        for c in 0..dx {
            let coeff = x.inner_b(leg).entry(a, c);
            if algebra::is_zero_vec(coeff) {
                continue;
            }
            let m = act(y.left(leg), coeff);
            for (q, g) in comps.iter().enumerate() {
                let p = g.mul(&m);
                for b in 0..dy {
                    for d in 0..dy {
                        let v = &p[(b, d)];
                        if !v.is_zero() {
                            rows[a * dy + b][c * dy + d][q] = v.clone();
                        }
                    }
                }
            }
        }
    }
    InnerTensor::from_rows(rows)
}

fn map_tensor(t: &InnerTensor, f: impl Fn(&[Q]) -> Vec<Q>) -> InnerTensor {
    InnerTensor::from_fn(t.dim_h(), |i, j| f(t.entry(i, j)))
}

fn restrict_tensor(t: &InnerTensor, basis: &[usize]) -> InnerTensor {
    InnerTensor::from_fn(basis.len(), |i, j| t.entry(basis[i], basis[j]).to_vec())
}

/// `X ⊗_{B_leg} Y`: `X` supplies the right action `ϕ_leg` and the
/// `B_leg`-valued form, `Y` the left action `φ_leg`. The result carries the
/// left actions of `X`, the right actions of `Y`, and
/// `⟨·|·⟩_A = λ_leg(⟨·|·⟩_{B_leg})`.
pub fn relative_tensor(
    x: &RelTensorSpace,
    leg: Leg,
    y: &RelTensorSpace,
    spec: &QuadModuleSpec,
    lambda: &Lambda,
) -> Result<RelTensorSpace> {
    let (dx, dy) = (x.dim, y.dim);
    let amb = dx * dy;
    let db = [spec.dim_b(Leg::One), spec.dim_b(Leg::Two)];

    let amb_b = [
        ambient_tensor(x, leg, y, y.inner_b(Leg::One), db[0]),
        ambient_tensor(x, leg, y, y.inner_b(Leg::Two), db[1]),
    ];
    let amb_a = map_tensor(&amb_b[leg_index(leg)], |v| lambda.apply(leg, v));

    let mut checks = ValidationReport::new();
    let other = map_tensor(&amb_b[leg_index(leg.other())], |v| {
        lambda.apply(leg.other(), v)
    });
    let w = (0..amb)
        .flat_map(|i| (0..amb).map(move |j| (i, j)))
        .find(|&(i, j)| amb_a.entry(i, j) != other.entry(i, j))
        .map(|(i, j)| format!("ambient pair ({i}, {j})"));
    checks.push("lambda_consistency", "λ1(⟨·|·⟩_B1) = λ2(⟨·|·⟩_B2)", w);
    let recursive = ambient_tensor(x, leg, y, &y.inner_a, spec.dim_a());
    let w = (0..amb)
        .flat_map(|i| (0..amb).map(move |j| (i, j)))
        .find(|&(i, j)| amb_a.entry(i, j) != recursive.entry(i, j))
        .map(|(i, j)| format!("ambient pair ({i}, {j})"));
    checks.push(
        "recursive_A_inner",
        "⟨x⊗y|x'⊗y'⟩_A = ⟨y|φ(⟨x|x'⟩_B)y'⟩_A",
        w,
    );

    let g = amb_a.scalar_gram();
    let (_, pivots) = g.rref();
    if pivots.is_empty() {
        return Err(Error::DegenerateQuotient);
    }
    let all: Vec<usize> = (0..amb).collect();
    let gp = g.submatrix(&pivots, &pivots);
    let quotient_map = gp.inverse()?.mul(&g.submatrix(&pivots, &all));
    let kernel = g.kernel_basis();

    let mut space = RelTensorSpace {
        dim: pivots.len(),
        ambient_dim: amb,
        quotient_basis: pivots.clone(),
        quotient_map,
        kernel,
        gram: GramForm::new(gp)?,
        inner_a: restrict_tensor(&amb_a, &pivots),
        inner_b: [
            restrict_tensor(&amb_b[0], &pivots),
            restrict_tensor(&amb_b[1], &pivots),
        ],
        left_b: [Vec::new(), Vec::new()],
        right_b: [Vec::new(), Vec::new()],
        right_a: Vec::new(),
        checks: ValidationReport::new(),
    };

    let id_x = ExactMatrix::identity(dx);
    let id_y = ExactMatrix::identity(dy);
    let mut defects = Vec::new();
    let mut descend = |op: ExactMatrix, what: String, space: &RelTensorSpace| -> ExactMatrix {
        if let Some(k) = space.descent_defect(&op) {
            defects.push(format!("{what} moves null vector {k}"));
        }
        space.descend(&op)
    };
    let mut left_b = [Vec::new(), Vec::new()];
    let mut right_b = [Vec::new(), Vec::new()];
    for l in Leg::BOTH {
        let li = leg_index(l);
        for (j, op) in x.left(l).iter().enumerate() {
            left_b[li].push(descend(
                op.kron(&id_y),
                format!("φ{}(e{j})⊗1", l.number()),
                &space,
            ));
        }
        for (j, op) in y.right(l).iter().enumerate() {
            right_b[li].push(descend(
                id_x.kron(op),
                format!("1⊗ϕ{}(e{j})", l.number()),
                &space,
            ));
        }
    }
    let right_a: Vec<ExactMatrix> = y
        .right_a
        .iter()
        .enumerate()
        .map(|(j, op)| descend(id_x.kron(op), format!("1⊗R(e{j})"), &space))
        .collect();
    checks.push(
        "actions_descend",
        "actions preserve the null space of the balanced form",
        defects.first().cloned(),
    );

    let w = (0..db[leg_index(leg)]).find_map(|j| {
        let diff = x.right(leg)[j].kron(&id_y).sub(&id_x.kron(&y.left(leg)[j]));
        let r = space.quotient_map.mul(&diff);
        r.first_nonzero()
            .map(|(row, col, v)| format!("b=e{j}: class entry ({row}, {col}) = {v}"))
    });
    checks.push(
        "balanced",
        &format!("[ξϕ{0}(b)⊗η] = [ξ⊗φ{0}(b)η]", leg.number()),
        w,
    );

    space.left_b = left_b;
    space.right_b = right_b;
    space.right_a = right_a;
    space.checks = checks;
    Ok(space)
}

/// Class of `ξ ⊗ y` in `W = X ⊗ Y` as a `dim W × dim Y` matrix acting on `y`.
pub fn left_multiplier(w: &RelTensorSpace, xi: &[Q], dy: usize) -> ExactMatrix {
    let mut out = ExactMatrix::zeros(w.dim, dy);
    for (a, c) in xi.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let block = w.quotient_map.block(0, a * dy, w.dim, dy);
        out.add_assign(&block.scale(c));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::basis_vector;
    use crate::quad::{build_example_alpha_beta, build_example_mn, derive_lambda, parse_cycles};

    fn tensor_dims(spec: &QuadModuleSpec) -> (usize, usize) {
        let (lam, _) = derive_lambda(spec).unwrap();
        let h = RelTensorSpace::from_spec(spec).unwrap();
        let w1 = relative_tensor(&h, Leg::One, &h, spec, &lam).unwrap();
        let w2 = relative_tensor(&h, Leg::Two, &h, spec, &lam).unwrap();
        assert!(w1.checks.all_pass(), "{:?}", w1.checks);
        assert!(w2.checks.all_pass(), "{:?}", w2.checks);
        (w1.dim, w2.dim)
    }

    // Oracle: rank of the balanced Gram on the ambient tensor, computed
    // directly from the defining formula with plain loops.
    fn oracle_rank(spec: &QuadModuleSpec, leg: Leg) -> usize {
        let (lam, _) = derive_lambda(spec).unwrap();
        let n = spec.dim_h;
        let mut g = ExactMatrix::zeros(n * n, n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let inner = spec.inner_b_of(leg, &basis_vector(n, a), &basis_vector(n, c));
                        let op = spec.phi_of(leg, &inner);
                        let val = spec.inner_b_of(
                            leg,
                            &basis_vector(n, b),
                            &op.mul_vec(&basis_vector(n, d)),
                        );
                        g[(a * n + b, c * n + d)] = algebra::trace(&lam.apply(leg, &val));
                    }
                }
            }
        }
        g.rank()
    }

    #[test]
    fn dims_for_mn() {
        let s = build_example_mn(2, 2).unwrap();
        assert_eq!(tensor_dims(&s), (8, 8));
        assert_eq!(oracle_rank(&s, Leg::One), 8);
        let s = build_example_mn(2, 3).unwrap();
        assert_eq!(tensor_dims(&s), (12, 18));
        assert_eq!(oracle_rank(&s, Leg::One), 12);
        assert_eq!(oracle_rank(&s, Leg::Two), 18);
    }

    #[test]
    fn dims_for_permutations() {
        let c = parse_cycles(3, "(123)").unwrap();
        let s = build_example_alpha_beta(3, &c, &c).unwrap();
        assert_eq!(tensor_dims(&s), (3, 3));
        assert_eq!(oracle_rank(&s, Leg::One), 3);
    }

    #[test]
    fn quotient_map_fixes_basis_and_kills_kernel() {
        let s = build_example_mn(2, 2).unwrap();
        let (lam, _) = derive_lambda(&s).unwrap();
        let h = RelTensorSpace::from_spec(&s).unwrap();
        let w = relative_tensor(&h, Leg::One, &h, &s, &lam).unwrap();
        for (p, &amb) in w.quotient_basis.iter().enumerate() {
            assert_eq!(
                w.quotient_map.mul_vec(&basis_vector(16, amb)),
                basis_vector(w.dim, p)
            );
        }
        assert_eq!(w.kernel.len(), 16 - w.dim);
        for k in &w.kernel {
            assert!(algebra::is_zero_vec(&w.quotient_map.mul_vec(k)));
        }
    }
}
