//! Diagonal commutative algebras ℂ^d and linear maps between them.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::{ExactMatrix, GaussianRational};

type Q = GaussianRational;

/// The algebra ℂ^d with coordinatewise product; minimal idempotents are the
/// standard basis vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinDimCommAlgebra {
    pub dim: usize,
    pub label: String,
}

impl FinDimCommAlgebra {
    pub fn new(dim: usize, label: impl Into<String>) -> Self {
        Self {
            dim,
            label: label.into(),
        }
    }

    pub fn unit(&self) -> Vec<Q> {
        vec![Q::one(); self.dim]
    }

    pub fn zero(&self) -> Vec<Q> {
        vec![Q::zero(); self.dim]
    }

    pub fn idempotent(&self, j: usize) -> Vec<Q> {
        basis_vector(self.dim, j)
    }

    pub fn idempotents(&self) -> Vec<Vec<Q>> {
        (0..self.dim).map(|j| self.idempotent(j)).collect()
    }
}

/// Linear map ℂ^s → ℂ^t stored as a `t × s` matrix whose column `j` is the
/// image of the `j`-th minimal idempotent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraHom {
    pub matrix: ExactMatrix,
}

impl AlgebraHom {
    pub fn new(matrix: ExactMatrix) -> Self {
        Self { matrix }
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, x: &[Q]) -> Vec<Q> {
        self.matrix.mul_vec(x)
    }

    /// First pair of idempotents `(j, k)` with `h(e_j e_k) ≠ h(e_j) h(e_k)`.
    pub fn multiplicativity_defect(&self) -> Option<(usize, usize)> {
        let n = self.source_dim();
        let images: Vec<Vec<Q>> = (0..n).map(|j| self.matrix.col(j)).collect();
        for j in 0..n {
            for k in 0..n {
                let lhs = if j == k {
                    images[j].clone()
                } else {
                    vec![Q::zero(); self.target_dim()]
                };
                if lhs != mul(&images[j], &images[k]) {
                    return Some((j, k));
                }
            }
        }
        None
    }

    pub fn is_unital(&self) -> bool {
        let ones = vec![Q::one(); self.source_dim()];
        self.apply(&ones).iter().all(One::is_one)
    }

    /// Permutation automorphism sending `e_j` to `e_{perm[j]}`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = ExactMatrix::zeros(n, n);
        for (j, &p) in perm.iter().enumerate() {
            m[(p, j)] = Q::one();
        }
        Self::new(m)
    }

    pub fn compose(&self, inner: &Self) -> Self {
        Self::new(self.matrix.mul(&inner.matrix))
    }
}

pub fn basis_vector(n: usize, j: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[j] = Q::one();
    v
}

/// Coordinatewise product.
pub fn mul(x: &[Q], y: &[Q]) -> Vec<Q> {
    x.iter().zip(y).map(|(a, b)| a * b).collect()
}

/// Coordinatewise conjugation (the involution of ℂ^d).
pub fn star(x: &[Q]) -> Vec<Q> {
    x.iter().map(Q::conj).collect()
}

pub fn add(x: &[Q], y: &[Q]) -> Vec<Q> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn sub(x: &[Q], y: &[Q]) -> Vec<Q> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn scale(c: &Q, x: &[Q]) -> Vec<Q> {
    x.iter().map(|a| c * a).collect()
}

/// Scalarization τ: coordinate sum.
pub fn trace(x: &[Q]) -> Q {
    x.iter().fold(Q::zero(), |acc, a| acc + a)
}

pub fn is_zero_vec(x: &[Q]) -> bool {
    x.iter().all(Zero::is_zero)
}

/// `Σ_j b_j ops[j]` for a family of matrices indexed by minimal idempotents.
pub fn act(ops: &[ExactMatrix], b: &[Q]) -> ExactMatrix {
    assert_eq!(ops.len(), b.len(), "algebra element length");
    let n = ops.first().map_or(0, ExactMatrix::rows);
    let m = ops.first().map_or(0, ExactMatrix::cols);
    let mut out = ExactMatrix::zeros(n, m);
    for (op, c) in ops.iter().zip(b) {
        if c.is_zero() {
            continue;
        }
        if c.is_one() {
            out.add_assign(op);
        } else {
            out.add_assign(&op.scale(c));
        }
    }
    out
}

pub fn format_vec(v: &[Q]) -> String {
    let cells: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", cells.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_homs_are_unital_and_multiplicative() {
        let h = AlgebraHom::permutation(&[1, 2, 0]);
        assert!(h.is_unital());
        assert_eq!(h.multiplicativity_defect(), None);
        assert_eq!(h.apply(&basis_vector(3, 0)), basis_vector(3, 1));
    }

    #[test]
    fn non_multiplicative_map_is_detected() {
        // e_0 ↦ e_0 + e_1 is not idempotent-preserving into ℂ² scaled by 2
        let m = ExactMatrix::from_i64(&[&[2], &[0]]);
        assert_eq!(AlgebraHom::new(m).multiplicativity_defect(), Some((0, 0)));
    }

    #[test]
    fn diagonal_algebra_unit() {
        let b = FinDimCommAlgebra::new(3, "B");
        let x = vec![Q::from(2), Q::i(), Q::from(-1)];
        assert_eq!(mul(&b.unit(), &x), x);
        assert_eq!(trace(&b.unit()), Q::from(3));
        assert_eq!(star(&x)[1], -Q::i());
    }
}
