//! The two concrete families: `H_{M,N} = ℂ^M ⊗ ℂ^N` and the permutation
//! module `H_{α,β} = ℂ^d`.

use num_traits::{One, Zero};

use super::{AlgebraDims, InnerTensor, QuadModuleSpec, SCHEMA_VERSION};
use crate::algebra::{basis_vector, AlgebraHom};
use crate::error::{Error, Result};
use crate::exact::{ExactMatrix, GaussianRational};

type Q = GaussianRational;

fn projector(n: usize, keep: impl Fn(usize) -> bool) -> ExactMatrix {
    let d: Vec<Q> = (0..n)
        .map(|x| if keep(x) { Q::one() } else { Q::zero() })
        .collect();
    ExactMatrix::diagonal(&d)
}

/// `H_{M,N}` over `(ℂ; ℂ^N, ℂ^M)`. Coordinate `(i, k)` of `ℂ^M ⊗ ℂ^N` sits
/// at index `i·N + k`.
pub fn build_example_mn(m: usize, n: usize) -> Result<QuadModuleSpec> {
    if m < 2 || n < 2 {
        return Err(Error::InvalidParameter(format!(
            "H_{{M,N}} needs M, N >= 2, got M={m}, N={n}"
        )));
    }
    let dim = m * n;
    let first = |x: usize| x / n;
    let second = |x: usize| x % n;
    let ones = |d: usize| ExactMatrix::from_fn(d, 1, |_, _| Q::one());

    // B₁ = ℂ^N acts on the second factor, B₂ = ℂ^M on the first.
    let act1: Vec<ExactMatrix> = (0..n).map(|k| projector(dim, |x| second(x) == k)).collect();
    let act2: Vec<ExactMatrix> = (0..m).map(|i| projector(dim, |x| first(x) == i)).collect();

    let delta = |a: usize, b: usize, v: Vec<Q>| {
        if a == b {
            v
        } else {
            vec![Q::zero(); v.len()]
        }
    };
    let inner_a = InnerTensor::from_fn(dim, |a, b| delta(a, b, vec![Q::one()]));
    let inner_b1 = InnerTensor::from_fn(dim, |a, b| delta(a, b, basis_vector(n, second(a))));
    let inner_b2 = InnerTensor::from_fn(dim, |a, b| delta(a, b, basis_vector(m, first(a))));

    let basis_u = (0..m)
        .map(|i| {
            (0..dim)
                .map(|x| if first(x) == i { Q::one() } else { Q::zero() })
                .collect()
        })
        .collect();
    let basis_v = (0..n)
        .map(|k| {
            (0..dim)
                .map(|x| if second(x) == k { Q::one() } else { Q::zero() })
                .collect()
        })
        .collect();

    Ok(QuadModuleSpec {
        schema: SCHEMA_VERSION.into(),
        name: Some(format!("H_{{{m},{n}}}")),
        algebras: AlgebraDims { a: 1, b1: n, b2: m },
        embed1: ones(n),
        embed2: ones(m),
        psi1: ones(n),
        psi2: ones(m),
        dim_h: dim,
        right_a: vec![ExactMatrix::identity(dim)],
        varphi1: act1.clone(),
        varphi2: act2.clone(),
        phi1: act1,
        phi2: act2,
        inner_a,
        inner_b1,
        inner_b2,
        basis_u,
        basis_v,
    })
}

fn check_permutation(d: usize, p: &[usize], what: &str) -> Result<()> {
    let mut seen = vec![false; d];
    if p.len() != d
        || p.iter()
            .any(|&x| x >= d || std::mem::replace(&mut seen[x], true))
    {
        return Err(Error::InvalidParameter(format!(
            "{what} is not a permutation of {{1..{d}}}"
        )));
    }
    Ok(())
}

fn inverse(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (j, &x) in p.iter().enumerate() {
        inv[x] = j;
    }
    inv
}

/// `H_{α,β} = ℂ^d` over `(ℂ^d; ℂ^d, ℂ^d)` with `α(e_j) = e_{σ(j)}` and
/// `β(e_j) = e_{τ(j)}`. Permutations are 0-based images. The right
/// `A`-actions on `B₁`, `B₂` are `α⁻¹`, `β⁻¹`.
pub fn build_example_alpha_beta(
    d: usize,
    sigma: &[usize],
    tau: &[usize],
) -> Result<QuadModuleSpec> {
    if d == 0 {
        return Err(Error::InvalidParameter("d must be positive".into()));
    }
    check_permutation(d, sigma, "sigma")?;
    check_permutation(d, tau, "tau")?;
    let sigma_inv = inverse(sigma);
    let tau_inv = inverse(tau);
    let p = |j: usize| projector(d, |x| x == j);

    let right_a: Vec<ExactMatrix> = (0..d).map(p).collect();
    let varphi1 = (0..d).map(|j| p(sigma[j])).collect();
    let varphi2 = (0..d).map(|j| p(tau[j])).collect();
    let phi1 = (0..d).map(|j| p(tau[sigma[j]])).collect();
    let phi2 = (0..d).map(|j| p(sigma[tau[j]])).collect();

    let zero = vec![Q::zero(); d];
    let inner_a = InnerTensor::from_fn(d, |a, b| {
        if a == b {
            basis_vector(d, a)
        } else {
            zero.clone()
        }
    });
    let inner_b1 = InnerTensor::from_fn(d, |a, b| {
        if a == b {
            basis_vector(d, sigma_inv[a])
        } else {
            zero.clone()
        }
    });
    let inner_b2 = InnerTensor::from_fn(d, |a, b| {
        if a == b {
            basis_vector(d, tau_inv[a])
        } else {
            zero.clone()
        }
    });
    let unit = vec![Q::one(); d];

    Ok(QuadModuleSpec {
        schema: SCHEMA_VERSION.into(),
        name: Some(format!("H_alpha_beta(d={d})")),
        algebras: AlgebraDims { a: d, b1: d, b2: d },
        embed1: ExactMatrix::identity(d),
        embed2: ExactMatrix::identity(d),
        psi1: AlgebraHom::permutation(&sigma_inv).matrix,
        psi2: AlgebraHom::permutation(&tau_inv).matrix,
        dim_h: d,
        right_a,
        varphi1,
        varphi2,
        phi1,
        phi2,
        inner_a,
        inner_b1,
        inner_b2,
        basis_u: vec![unit.clone()],
        basis_v: vec![unit],
    })
}

/// Parses cycle notation over `{1..d}` into 0-based images: `(123)(45)`,
/// `(1,2,3)` or `()` for the identity. Disjointness is required.
pub fn parse_cycles(d: usize, text: &str) -> Result<Vec<usize>> {
    let bad = |msg: &str| Error::InvalidParameter(format!("permutation {text:?}: {msg}"));
    let mut perm: Vec<usize> = (0..d).collect();
    let mut used = vec![false; d];
    let s = text.trim();
    if s.is_empty() || s == "id" {
        return Ok(perm);
    }
    let mut rest = s;
    while !rest.is_empty() {
        let body_end = rest.find(')').ok_or_else(|| bad("unclosed cycle"))?;
        if !rest.starts_with('(') {
            return Err(bad("expected '('"));
        }
        let body = &rest[1..body_end];
        let points: Vec<usize> = if body.contains(',') {
            body.split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| bad("bad point")))
                .collect::<Result<_>>()?
        } else {
            body.chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| {
                    c.to_digit(10)
                        .map(|x| x as usize)
                        .ok_or_else(|| bad("bad point"))
                })
                .collect::<Result<_>>()?
        };
        for &x in &points {
            if x == 0 || x > d {
                return Err(bad("point out of range"));
            }
            if std::mem::replace(&mut used[x - 1], true) {
                return Err(bad("cycles are not disjoint"));
            }
        }
        for (j, &x) in points.iter().enumerate() {
            let next = points[(j + 1) % points.len()];
            perm[x - 1] = next - 1;
        }
        rest = rest[body_end + 1..].trim_start();
    }
    Ok(perm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::Leg;

    #[test]
    fn mn_shapes() {
        let s = build_example_mn(2, 2).unwrap();
        assert_eq!(s.dim_h, 4);
        assert_eq!(s.basis_u.len(), 2);
        assert_eq!(s.basis_v.len(), 2);
        assert!(s.check_dimensions().is_ok());
    }

    #[test]
    fn mn_inner_products_of_bases() {
        let s = build_example_mn(2, 3).unwrap();
        assert_eq!(s.dim_h, 6);
        let u = &s.basis_u;
        assert!(s
            .inner_b_of(Leg::One, &u[0], &u[1])
            .iter()
            .all(Zero::is_zero));

        let s = build_example_mn(3, 2).unwrap();
        let v = &s.basis_v;
        for k in 0..2 {
            for l in 0..2 {
                let expected = if k == l {
                    vec![Q::one(); 3]
                } else {
                    vec![Q::zero(); 3]
                };
                assert_eq!(s.inner_b_of(Leg::Two, &v[k], &v[l]), expected);
            }
        }
    }

    #[test]
    fn mn_rejects_small_parameters() {
        assert!(matches!(
            build_example_mn(1, 3),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            build_example_mn(2, 1),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn alpha_beta_trivial_d1() {
        let s = build_example_alpha_beta(1, &[0], &[0]).unwrap();
        assert_eq!(s.dim_h, 1);
        assert_eq!(s.phi1[0], ExactMatrix::identity(1));
    }

    #[test]
    fn alpha_beta_rejects_non_permutation() {
        assert!(build_example_alpha_beta(3, &[0, 0, 1], &[0, 1, 2]).is_err());
    }

    #[test]
    fn cycle_parsing() {
        assert_eq!(parse_cycles(3, "(123)").unwrap(), vec![1, 2, 0]);
        assert_eq!(parse_cycles(3, "(132)").unwrap(), vec![2, 0, 1]);
        assert_eq!(parse_cycles(3, "(12)").unwrap(), vec![1, 0, 2]);
        assert_eq!(parse_cycles(3, "(1,3)(2)").unwrap(), vec![2, 1, 0]);
        assert_eq!(parse_cycles(3, "()").unwrap(), vec![0, 1, 2]);
        assert!(parse_cycles(3, "(14)").is_err());
        assert!(parse_cycles(3, "(12)(23)").is_err());
    }
}
