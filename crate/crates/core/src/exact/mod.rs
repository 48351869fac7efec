//! Exact arithmetic over the Gaussian rationals ℚ[i].

mod matrix;
mod scalar;
mod span;
mod wire;

pub use matrix::ExactMatrix;
pub use scalar::{GaussianRational, Rational};
pub use span::{SpanBasis, SparseVec};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hermitian matrix used as an inner product on a coordinate space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramForm(ExactMatrix);

impl GramForm {
    pub fn new(m: ExactMatrix) -> Result<Self> {
        if !m.is_hermitian() {
            return Err(Error::NotHermitian);
        }
        Ok(Self(m))
    }

    pub fn identity(n: usize) -> Self {
        Self(ExactMatrix::identity(n))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ExactMatrix {
        self.0
    }

    /// `xᴴ G y`.
    pub fn pair(&self, x: &[GaussianRational], y: &[GaussianRational]) -> GaussianRational {
        let gy = self.0.mul_vec(y);
        let mut acc = GaussianRational::zero();
        for (a, b) in x.iter().zip(&gy) {
            if !a.is_zero() && !b.is_zero() {
                acc += &(a.conj() * b);
            }
        }
        acc
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Definiteness {
    PositiveDefinite,
    PositiveSemidefiniteWithKernel,
    Indefinite,
}

pub fn conj_transpose(m: &ExactMatrix) -> ExactMatrix {
    m.conj_transpose()
}

/// `T* = G_dom⁻¹ Tᴴ G_cod`, the adjoint of `t: dom → cod` for the two forms.
pub fn gram_adjoint(t: &ExactMatrix, g_dom: &GramForm, g_cod: &GramForm) -> Result<ExactMatrix> {
    if t.cols() != g_dom.dim() || t.rows() != g_cod.dim() {
        return Err(Error::DimensionMismatch(format!(
            "operator {}x{} against grams {} and {}",
            t.rows(),
            t.cols(),
            g_dom.dim(),
            g_cod.dim()
        )));
    }
    let inv = g_dom.matrix().inverse()?;
    Ok(inv.mul(&t.conj_transpose()).mul(g_cod.matrix()))
}

pub fn kernel_basis(m: &ExactMatrix) -> Vec<Vec<GaussianRational>> {
    m.kernel_basis()
}

/// Classifies a Hermitian form by exact LDLᴴ with symmetric pivoting.
pub fn psd_check(g: &ExactMatrix) -> Result<Definiteness> {
    if !g.is_hermitian() {
        return Err(Error::NotHermitian);
    }
    let n = g.rows();
    let mut a = g.clone();
    let mut active: Vec<usize> = (0..n).collect();
    let mut rank = 0;
    while !active.is_empty() {
        if active.iter().any(|&i| a[(i, i)].is_negative_real()) {
            return Ok(Definiteness::Indefinite);
        }
        let Some(pos) = active.iter().position(|&i| a[(i, i)].is_positive_real()) else {
            // zero diagonal with a nonzero off-diagonal entry
            let nonzero = active
                .iter()
                .any(|&i| active.iter().any(|&j| !a[(i, j)].is_zero()));
            if nonzero {
                return Ok(Definiteness::Indefinite);
            }
            break;
        };
        let p = active.remove(pos);
        let d = a[(p, p)].clone();
        let dinv = d.inv().expect("positive pivot");
        let col: Vec<GaussianRational> = active.iter().map(|&i| a[(i, p)].clone()).collect();
        for (ii, &i) in active.iter().enumerate() {
            if col[ii].is_zero() {
                continue;
            }
            let li = &col[ii] * &dinv;
            for (jj, &j) in active.iter().enumerate() {
                if !col[jj].is_zero() {
                    let delta = &li * &col[jj].conj();
                    a[(i, j)] -= &delta;
                }
            }
        }
        rank += 1;
    }
    Ok(if rank == n {
        Definiteness::PositiveDefinite
    } else {
        Definiteness::PositiveSemidefiniteWithKernel
    })
}
