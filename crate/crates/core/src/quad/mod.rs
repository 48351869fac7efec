//! Finite-dimensional Hilbert C*-quad modules over diagonal algebras.
//!
//! A module is stored as structure tensors on a coordinate space `H = ℂ^n`.
//! Actions are families of `n × n` matrices indexed by the minimal
//! idempotents of the acting algebra, so the action of `b = Σ b_j e_j` is
//! `Σ b_j ops[j]` and a right action `ξ·b` is computed as `ops(b) ξ`.
//! Inner products are tensors `T[a][b] ∈ ℂ^d` with
//! `⟨x|y⟩ = Σ conj(x_a) y_b T[a][b]`.

mod examples;
mod validate;

pub use examples::{build_example_alpha_beta, build_example_mn, parse_cycles};
pub(crate) use validate::pull_back;
pub use validate::{
    derive_lambda, derive_right_a_basis, validate_axioms, verify_finite_type,
    verify_strongly_finite_type, Lambda, RightABasis,
};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{act, AlgebraHom, FinDimCommAlgebra};
use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, GaussianRational};

type Q = GaussianRational;

pub const SCHEMA_VERSION: &str = "quadmod-spec-v1";

/// Which of the two coefficient algebras `B₁`, `B₂` is meant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Leg {
    One,
    Two,
}

impl Leg {
    pub const BOTH: [Leg; 2] = [Leg::One, Leg::Two];

    pub fn other(self) -> Leg {
        match self {
            Leg::One => Leg::Two,
            Leg::Two => Leg::One,
        }
    }

    /// 1 or 2, for labels.
    pub fn number(self) -> usize {
        match self {
            Leg::One => 1,
            Leg::Two => 2,
        }
    }
}

/// Sesquilinear algebra-valued form on `H`, conjugate-linear in the first slot.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct InnerTensor(Vec<Vec<Vec<Q>>>);

impl InnerTensor {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Vec<Q>) -> Self {
        Self((0..n).map(|a| (0..n).map(|b| f(a, b)).collect()).collect())
    }

    /// Takes `T[a][b]` as given; shape is checked by the spec loader.
    pub fn from_rows(rows: Vec<Vec<Vec<Q>>>) -> Self {
        Self(rows)
    }

    pub fn dim_h(&self) -> usize {
        self.0.len()
    }

    pub fn entry(&self, a: usize, b: usize) -> &[Q] {
        &self.0[a][b]
    }

    pub fn entry_mut(&mut self, a: usize, b: usize) -> &mut Vec<Q> {
        &mut self.0[a][b]
    }

    /// `⟨x|y⟩ = Σ conj(x_a) y_b T[a][b]`.
    pub fn eval(&self, x: &[Q], y: &[Q], alg_dim: usize) -> Vec<Q> {
        let mut out = vec![Q::zero(); alg_dim];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            let xc = xa.conj();
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let c = &xc * yb;
                for (o, t) in out.iter_mut().zip(&self.0[a][b]) {
                    if !t.is_zero() {
                        *o += &(&c * t);
                    }
                }
            }
        }
        out
    }

    /// Gram matrix of coordinate `c` of the form.
    pub fn component_gram(&self, c: usize) -> ExactMatrix {
        let n = self.dim_h();
        ExactMatrix::from_fn(n, n, |a, b| self.0[a][b][c].clone())
    }

    /// Gram matrix of `τ ∘ ⟨·|·⟩` with τ the coordinate sum.
    pub fn scalar_gram(&self) -> ExactMatrix {
        let n = self.dim_h();
        ExactMatrix::from_fn(n, n, |a, b| {
            self.0[a][b].iter().fold(Q::zero(), |acc, t| acc + t)
        })
    }

    fn check_shape(&self, n: usize, d: usize, field: &str) -> Result<()> {
        let ok = self.0.len() == n
            && self
                .0
                .iter()
                .all(|row| row.len() == n && row.iter().all(|v| v.len() == d));
        if ok {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "{field}: expected {n}x{n} array of length-{d} vectors"
            )))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDims {
    #[serde(rename = "A")]
    pub a: usize,
    #[serde(rename = "B1")]
    pub b1: usize,
    #[serde(rename = "B2")]
    pub b2: usize,
}

/// Structure-tensor description of a quad module over `(A; B₁, B₂)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadModuleSpec {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub algebras: AlgebraDims,
    pub embed1: ExactMatrix,
    pub embed2: ExactMatrix,
    pub psi1: ExactMatrix,
    pub psi2: ExactMatrix,
    #[serde(rename = "dimH")]
    pub dim_h: usize,
    #[serde(rename = "rightA")]
    pub right_a: Vec<ExactMatrix>,
    pub varphi1: Vec<ExactMatrix>,
    pub varphi2: Vec<ExactMatrix>,
    pub phi1: Vec<ExactMatrix>,
    pub phi2: Vec<ExactMatrix>,
    #[serde(rename = "innerA")]
    pub inner_a: InnerTensor,
    #[serde(rename = "innerB1")]
    pub inner_b1: InnerTensor,
    #[serde(rename = "innerB2")]
    pub inner_b2: InnerTensor,
    #[serde(rename = "basisU")]
    pub basis_u: Vec<Vec<Q>>,
    #[serde(rename = "basisV")]
    pub basis_v: Vec<Vec<Q>>,
}

impl QuadModuleSpec {
    pub fn algebra_a(&self) -> FinDimCommAlgebra {
        FinDimCommAlgebra::new(self.algebras.a, "A")
    }

    pub fn algebra_b(&self, leg: Leg) -> FinDimCommAlgebra {
        match leg {
            Leg::One => FinDimCommAlgebra::new(self.algebras.b1, "B1"),
            Leg::Two => FinDimCommAlgebra::new(self.algebras.b2, "B2"),
        }
    }

    pub fn dim_a(&self) -> usize {
        self.algebras.a
    }

    pub fn dim_b(&self, leg: Leg) -> usize {
        match leg {
            Leg::One => self.algebras.b1,
            Leg::Two => self.algebras.b2,
        }
    }

    pub fn embed(&self, leg: Leg) -> AlgebraHom {
        AlgebraHom::new(match leg {
            Leg::One => self.embed1.clone(),
            Leg::Two => self.embed2.clone(),
        })
    }

    pub fn psi(&self, leg: Leg) -> AlgebraHom {
        AlgebraHom::new(match leg {
            Leg::One => self.psi1.clone(),
            Leg::Two => self.psi2.clone(),
        })
    }

    /// Right action family `ϕ_i`.
    pub fn varphi(&self, leg: Leg) -> &[ExactMatrix] {
        match leg {
            Leg::One => &self.varphi1,
            Leg::Two => &self.varphi2,
        }
    }

    /// Left action family `φ_i`.
    pub fn phi(&self, leg: Leg) -> &[ExactMatrix] {
        match leg {
            Leg::One => &self.phi1,
            Leg::Two => &self.phi2,
        }
    }

    pub fn inner_b(&self, leg: Leg) -> &InnerTensor {
        match leg {
            Leg::One => &self.inner_b1,
            Leg::Two => &self.inner_b2,
        }
    }

    /// `{u_i}` for leg one, `{v_k}` for leg two.
    pub fn basis(&self, leg: Leg) -> &[Vec<Q>] {
        match leg {
            Leg::One => &self.basis_u,
            Leg::Two => &self.basis_v,
        }
    }

    pub fn basis_mut(&mut self, leg: Leg) -> &mut Vec<Vec<Q>> {
        match leg {
            Leg::One => &mut self.basis_u,
            Leg::Two => &mut self.basis_v,
        }
    }

    /// Copy with basis `x'_i = Σ_j U[j][i] x_j` on `leg`. `U` must be unitary.
    pub fn remix_basis(&self, leg: Leg, u: &ExactMatrix) -> Result<Self> {
        let n = self.basis(leg).len();
        if u.rows() != n || u.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "mixing matrix is {}x{}, basis has {n} elements",
                u.rows(),
                u.cols()
            )));
        }
        if u.mul(&u.conj_transpose()) != ExactMatrix::identity(n) {
            return Err(Error::InvalidParameter(
                "mixing matrix is not unitary".into(),
            ));
        }
        let old = self.basis(leg);
        let mixed = (0..n)
            .map(|i| {
                (0..self.dim_h)
                    .map(|a| (0..n).fold(Q::zero(), |acc, j| acc + &u[(j, i)] * &old[j][a]))
                    .collect()
            })
            .collect();
        let mut out = self.clone();
        *out.basis_mut(leg) = mixed;
        Ok(out)
    }

    pub fn right_action(&self, a: &[Q]) -> ExactMatrix {
        act(&self.right_a, a)
    }

    pub fn varphi_of(&self, leg: Leg, b: &[Q]) -> ExactMatrix {
        act(self.varphi(leg), b)
    }

    pub fn phi_of(&self, leg: Leg, b: &[Q]) -> ExactMatrix {
        act(self.phi(leg), b)
    }

    pub fn inner_a_of(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        self.inner_a.eval(x, y, self.dim_a())
    }

    pub fn inner_b_of(&self, leg: Leg, x: &[Q], y: &[Q]) -> Vec<Q> {
        self.inner_b(leg).eval(x, y, self.dim_b(leg))
    }

    /// Gram of `τ ∘ ⟨·|·⟩_A` on the coordinate basis of `H`.
    pub fn scalar_gram_a(&self) -> ExactMatrix {
        self.inner_a.scalar_gram()
    }

    /// Structural consistency of all tensors with `dimH` and algebra dims.
    pub fn check_dimensions(&self) -> Result<()> {
        let n = self.dim_h;
        if n == 0 {
            return Err(Error::DimensionMismatch("dimH must be positive".into()));
        }
        let AlgebraDims { a, b1, b2 } = self.algebras;
        if a == 0 || b1 == 0 || b2 == 0 {
            return Err(Error::DimensionMismatch(
                "algebra dimensions must be positive".into(),
            ));
        }
        let mat = |m: &ExactMatrix, r: usize, c: usize, field: &str| -> Result<()> {
            if m.rows() == r && m.cols() == c {
                Ok(())
            } else {
                Err(Error::DimensionMismatch(format!(
                    "{field}: expected {r}x{c}, found {}x{}",
                    m.rows(),
                    m.cols()
                )))
            }
        };
        mat(&self.embed1, b1, a, "embed1")?;
        mat(&self.embed2, b2, a, "embed2")?;
        mat(&self.psi1, b1, a, "psi1")?;
        mat(&self.psi2, b2, a, "psi2")?;
        let family = |ops: &[ExactMatrix], d: usize, field: &str| -> Result<()> {
            if ops.len() != d {
                return Err(Error::DimensionMismatch(format!(
                    "{field}: expected {d} matrices, found {}",
                    ops.len()
                )));
            }
            ops.iter()
                .enumerate()
                .try_for_each(|(j, m)| mat(m, n, n, &format!("{field}[{j}]")))
        };
        family(&self.right_a, a, "rightA")?;
        family(&self.varphi1, b1, "varphi1")?;
        family(&self.varphi2, b2, "varphi2")?;
        family(&self.phi1, b1, "phi1")?;
        family(&self.phi2, b2, "phi2")?;
        self.inner_a.check_shape(n, a, "innerA")?;
        self.inner_b1.check_shape(n, b1, "innerB1")?;
        self.inner_b2.check_shape(n, b2, "innerB2")?;
        for (field, basis) in [("basisU", &self.basis_u), ("basisV", &self.basis_v)] {
            if basis.is_empty() {
                return Err(Error::DimensionMismatch(format!(
                    "{field} must be nonempty"
                )));
            }
            if let Some(j) = basis.iter().position(|v| v.len() != n) {
                return Err(Error::DimensionMismatch(format!(
                    "{field}[{j}]: expected length {n}"
                )));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    /// Parses and dimension-checks a `quadmod-spec-v1` document.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::ParseError {
                context: format!("line {} column {}", e.line(), e.column()),
                message: e.to_string(),
            })?;
        let found = value
            .get("schema")
            .and_then(serde_json::Value::as_str)
            .unwrap_or("<missing>");
        if found != SCHEMA_VERSION {
            return Err(Error::SchemaVersionMismatch {
                expected: SCHEMA_VERSION.into(),
                found: found.into(),
            });
        }
        let spec: Self = serde_json::from_value(value).map_err(|e| Error::ParseError {
            context: "document".into(),
            message: e.to_string(),
        })?;
        spec.check_dimensions().map_err(|e| match e {
            Error::DimensionMismatch(m) => Error::ParseError {
                context: m.split(':').next().unwrap_or("document").to_string(),
                message: m,
            },
            other => other,
        })?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let spec = build_example_mn(2, 3).unwrap();
        let text = spec.to_json();
        assert_eq!(QuadModuleSpec::from_json(&text).unwrap(), spec);
    }

    #[test]
    fn schema_mismatch() {
        let mut v: serde_json::Value =
            serde_json::from_str(&build_example_mn(2, 2).unwrap().to_json()).unwrap();
        v["schema"] = "quadmod-spec-v0".into();
        let err = QuadModuleSpec::from_json(&v.to_string()).unwrap_err();
        assert!(matches!(err, Error::SchemaVersionMismatch { .. }));
    }

    #[test]
    fn malformed_tensor_reports_field() {
        let mut spec = build_example_mn(2, 2).unwrap();
        spec.varphi1.pop();
        let err = QuadModuleSpec::from_json(&spec.to_json()).unwrap_err();
        match err {
            Error::ParseError { context, .. } => assert_eq!(context, "varphi1"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_error_has_position() {
        let err = QuadModuleSpec::from_json("{\n  \"schema\": ").unwrap_err();
        match err {
            Error::ParseError { context, .. } => assert!(context.starts_with("line 2")),
            other => panic!("unexpected {other:?}"),
        }
    }
}
