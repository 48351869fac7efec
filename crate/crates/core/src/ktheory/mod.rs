//! Integer K-theory: Smith normal form, the endomorphism `λ∘` of
//! `K₀(B∘)`, and the groups `Coker(id − λ∘)`, `Ker(id − λ∘)`.

mod integer;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

pub use integer::{
    cokernel, kernel_rank, smith_normal_form, FGAbelianGroup, IntegerMatrix, SmithForm,
};

use crate::ck::ck_matrix;
use crate::error::{Error, Result};
use crate::exact::ExactMatrix;
use crate::fock::{build_fock, FockOperator};
use crate::quad::{Leg, QuadModuleSpec};
use crate::relations::{build_bcirc, make_generators, window_check, BCircModel, GeneratorFamily};
use crate::report::IdentityWindowReport;

/// How the class of `λ∘(p)` is assembled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum LambdaRoute {
    /// Class of each `λ_{1,i}(p)`, `λ_{2,k}(p)` separately; each must be a
    /// projection in `B∘`.
    #[default]
    PerGenerator,
    /// Decomposes the sum `Σ λ_{1,i}(p) + Σ λ_{2,k}(p)` over minimal
    /// idempotents; only the total ranges need to commute with `B∘`.
    Aggregate,
}

/// Matrix of `λ∘` on `K₀(B∘) ≅ Z^m`; column `p` holds the class of `λ∘(p)`.
#[derive(Clone, Debug)]
pub struct LambdaCirc {
    pub matrix: IntegerMatrix,
    pub route: LambdaRoute,
    pub reports: Vec<IdentityWindowReport>,
}

/// `K₀` and `K₁`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KGroups {
    pub k0: FGAbelianGroup,
    pub k1: FGAbelianGroup,
}

impl std::fmt::Display for KGroups {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "K0 = {}, K1 = {}", self.k0, self.k1)
    }
}

/// `K₀ = Coker(id − λ)`, `K₁ = Z^{rank Ker(id − λ)}`.
pub fn k_groups_of_endomorphism(lambda: &IntegerMatrix) -> Result<KGroups> {
    if !lambda.is_square() {
        return Err(Error::DimensionMismatch("λ∘ must be square".into()));
    }
    let m = IntegerMatrix::identity(lambda.rows()).sub(lambda);
    Ok(KGroups {
        k0: cokernel(&m),
        k1: FGAbelianGroup::free(kernel_rank(&m)),
    })
}

/// K-groups of the algebra of `H_{M,N}` from `A_{M,N} + B_{M,N}`.
pub fn k_groups(m: usize, n: usize) -> Result<KGroups> {
    let bundle = ck_matrix(m, n)?;
    k_groups_of_endomorphism(&bundle.a.add(&bundle.b))
}

fn violated(what: &str, w: Option<String>) -> Result<()> {
    match w {
        Some(w) => Err(Error::AssumptionsViolated(format!("{what}: {w}"))),
        None => Ok(()),
    }
}

fn first_witness(r: &IdentityWindowReport) -> Option<String> {
    (!r.pass).then(|| {
        r.witness
            .as_ref()
            .map(ToString::to_string)
            .unwrap_or_default()
    })
}

/// Nonnegative integer coefficients of `y` over the minimal idempotents.
fn integer_class(model: &BCircModel, y: &ExactMatrix, what: &str) -> Result<Vec<BigInt>> {
    let coeffs = model
        .decompose(y)?
        .ok_or_else(|| Error::AssumptionsViolated(format!("{what} is not in B∘")))?;
    coeffs
        .iter()
        .map(|c| {
            let re = c.re();
            if !c.im().is_zero() || !re.is_integer() || re.is_negative() {
                return Err(Error::AssumptionsViolated(format!(
                    "{what} has coefficient {c}, not a nonnegative integer"
                )));
            }
            Ok(re.to_integer())
        })
        .collect()
}

pub fn lambda_circ_from(
    gen: &GeneratorFamily<'_>,
    model: &BCircModel,
    route: LambdaRoute,
) -> Result<LambdaCirc> {
    let spec = gen.fock.spec();
    let mins = model.minimal_idempotents()?;
    let pis: Vec<FockOperator> = mins.iter().map(|p| gen.pi_formula(p)).collect();
    let window = gen.window;
    let mut reports = Vec::new();

    match route {
        LambdaRoute::PerGenerator => {
            for leg in Leg::BOTH {
                for (i, x) in gen.creators(leg).iter().enumerate() {
                    let r = window_check(
                        "partial_isometry",
                        "X X* X = X",
                        window,
                        [(
                            format!("X{}_{i}", leg.number()),
                            &(&(x * &x.adjoint()) * x) - x,
                        )],
                    );
                    violated("(i) generator is not a partial isometry", first_witness(&r))?;
                    let range = x * &x.adjoint();
                    let r = window_check(
                        "range_commutes",
                        "X X* p = p X X*",
                        window,
                        pis.iter().enumerate().map(|(c, p)| {
                            (
                                format!("X{}_{i}, p{c}", leg.number()),
                                &(&range * p) - &(p * &range),
                            )
                        }),
                    );
                    violated(
                        "(ii) range projection does not commute with B∘",
                        first_witness(&r),
                    )?;
                }
            }
        }
        LambdaRoute::Aggregate => {
            for leg in Leg::BOTH {
                let range = gen.sum(gen.creators(leg).iter().map(|x| x * &x.adjoint()));
                let r = window_check(
                    "range_sum_commutes",
                    "(Σ X X*) p = p (Σ X X*)",
                    window,
                    pis.iter().enumerate().map(|(c, p)| {
                        (
                            format!("leg {}, p{c}", leg.number()),
                            &(&range * p) - &(p * &range),
                        )
                    }),
                );
                violated(
                    "summed range projection does not commute with B∘",
                    first_witness(&r),
                )?;
            }
        }
    }

    let m = mins.len();
    let mut matrix = IntegerMatrix::zeros(m, m);
    let mut crosscheck = Vec::new();
    for (c, p) in mins.iter().enumerate() {
        let mut total = ExactMatrix::zeros(spec.dim_h, spec.dim_h);
        for leg in Leg::BOTH {
            for (i, b) in gen.basis(leg).iter().enumerate() {
                let coeff = gen.inner(leg, b, &p.mul_vec(b));
                let y = spec.phi_of(leg, &coeff);
                let x = &gen.creators(leg)[i];
                crosscheck.push((
                    format!("p{c}, X{}_{i}", leg.number()),
                    &(&(&x.adjoint() * &pis[c]) * x) - &gen.phi(leg, &coeff),
                ));
                match route {
                    LambdaRoute::PerGenerator => {
                        let what = format!("λ_{{{},{i}}}(p{c})", leg.number());
                        if y.mul(&y) != y {
                            return Err(Error::AssumptionsViolated(format!(
                                "{what} is not a projection"
                            )));
                        }
                        for (r, k) in integer_class(model, &y, &what)?.into_iter().enumerate() {
                            matrix[(r, c)] += k;
                        }
                    }
                    LambdaRoute::Aggregate => total.add_assign(&y),
                }
            }
        }
        if route == LambdaRoute::Aggregate {
            for (r, k) in integer_class(model, &total, &format!("λ∘(p{c})"))?
                .into_iter()
                .enumerate()
            {
                matrix[(r, c)] = k;
            }
        }
    }
    reports.push(window_check(
        "lambda_fock_crosscheck",
        "X* π(p) X = Φ(⟨x|p x⟩)",
        gen.window,
        crosscheck,
    ));
    Ok(LambdaCirc {
        matrix,
        route,
        reports,
    })
}

/// Builds the Fock module at `depth` and computes `λ∘`.
pub fn lambda_circ_matrix(
    spec: &QuadModuleSpec,
    depth: usize,
    route: LambdaRoute,
) -> Result<LambdaCirc> {
    let fock = build_fock(spec, depth)?;
    let gen = make_generators(&fock)?;
    let model = build_bcirc(spec);
    lambda_circ_from(&gen, &model, route)
}

#[cfg(test)]
mod tests;
