//! Single-entry corruptions of a quad module, used to confirm that the
//! verification pipeline notices broken input.

use crate::exact::GaussianRational;
use crate::fock::build_fock;
use crate::quad::{derive_lambda, validate_axioms, verify_finite_type, QuadModuleSpec};
use crate::report::ValidationReport;

use super::{make_generators, verify_relations_h, verify_section4};

type Q = GaussianRational;

/// A named corruption of a spec.
#[derive(Clone, Copy)]
pub struct Mutation {
    pub name: &'static str,
    pub description: &'static str,
    apply: fn(&mut QuadModuleSpec),
}

impl Mutation {
    pub fn apply(&self, spec: &QuadModuleSpec) -> QuadModuleSpec {
        let mut out = spec.clone();
        (self.apply)(&mut out);
        out
    }
}

impl std::fmt::Debug for Mutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Mutation")
            .field("name", &self.name)
            .finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MutationOutcome {
    pub name: String,
    pub detected: bool,
    pub witness: Option<String>,
}

/// Ten corruptions, each touching one entry of one structure tensor.
/// Entries refer to coordinates that exist whenever every algebra has
/// dimension at least 2 and `H` has dimension at least 2.
pub fn mutation_catalogue() -> Vec<Mutation> {
    fn bump(x: &mut Q) {
        *x = &*x + &Q::from(1);
    }
    vec![
        Mutation {
            name: "phi1_diagonal_entry",
            description: "φ₁(e₀)[0,0] += 1",
            apply: |s| bump(&mut s.phi1[0][(0, 0)]),
        },
        Mutation {
            name: "phi2_off_diagonal_entry",
            description: "φ₂(e₀)[0,1] += 1",
            apply: |s| bump(&mut s.phi2[0][(0, 1)]),
        },
        Mutation {
            name: "varphi1_diagonal_entry",
            description: "ϕ₁(e₀)[1,1] += 1",
            apply: |s| bump(&mut s.varphi1[0][(1, 1)]),
        },
        Mutation {
            name: "varphi2_diagonal_entry",
            description: "ϕ₂(e₀)[0,0] += 1",
            apply: |s| bump(&mut s.varphi2[0][(0, 0)]),
        },
        Mutation {
            name: "right_a_diagonal_entry",
            description: "ρ(e₀)[0,0] += 1",
            apply: |s| bump(&mut s.right_a[0][(0, 0)]),
        },
        Mutation {
            name: "inner_a_off_diagonal",
            description: "⟨e₀|e₁⟩_A coordinate 0 += 1",
            apply: |s| bump(&mut s.inner_a.entry_mut(0, 1)[0]),
        },
        Mutation {
            name: "inner_b1_diagonal",
            description: "⟨e₀|e₀⟩_B1 coordinate 0 += 1",
            apply: |s| bump(&mut s.inner_b1.entry_mut(0, 0)[0]),
        },
        Mutation {
            name: "inner_b2_diagonal",
            description: "⟨e₀|e₀⟩_B2 coordinate 1 += 1",
            apply: |s| bump(&mut s.inner_b2.entry_mut(0, 0)[1]),
        },
        Mutation {
            name: "basis_u_entry",
            description: "u₀ coordinate 0 += 1",
            apply: |s| bump(&mut s.basis_u[0][0]),
        },
        Mutation {
            name: "embed1_entry",
            description: "ι₁ matrix [0,0] += 1",
            apply: |s| bump(&mut s.embed1[(0, 0)]),
        },
    ]
}

fn first_failed_check(stage: &str, report: &ValidationReport) -> Option<String> {
    report.failures().next().map(|c| {
        format!(
            "{stage}: {} ({})",
            c.name,
            c.witness.as_deref().unwrap_or("no witness")
        )
    })
}

type Stage = fn(&QuadModuleSpec) -> crate::Result<ValidationReport>;

/// Runs axioms, finite type, `λ`, the Fock construction and the generator
/// relations in order; returns a description of the first failure.
pub fn first_failure(spec: &QuadModuleSpec, depth: usize) -> Option<String> {
    let stages: [(&str, Stage); 3] = [
        ("axioms", validate_axioms),
        ("finite_type", verify_finite_type),
        ("lambda", |s| derive_lambda(s).map(|(_, r)| r)),
    ];
    for (stage, run) in stages {
        match run(spec) {
            Err(e) => return Some(format!("{stage}: {e}")),
            Ok(r) => {
                if let Some(w) = first_failed_check(stage, &r) {
                    return Some(w);
                }
            }
        }
    }
    let fock = match build_fock(spec, depth) {
        Ok(f) => f,
        Err(e) => return Some(format!("fock: {e}")),
    };
    if let Some(w) = first_failed_check("fock", fock.checks()) {
        return Some(w);
    }
    let gen = match make_generators(&fock) {
        Ok(g) => g,
        Err(e) => return Some(format!("generators: {e}")),
    };
    gen.expansion
        .iter()
        .cloned()
        .chain(verify_section4(&gen))
        .chain(verify_relations_h(&gen))
        .find(|r| !r.pass)
        .map(|r| format!("relations: {r}"))
}

pub fn run_mutation(spec: &QuadModuleSpec, mutation: &Mutation, depth: usize) -> MutationOutcome {
    let witness = first_failure(&mutation.apply(spec), depth);
    MutationOutcome {
        name: mutation.name.to_string(),
        detected: witness.is_some(),
        witness,
    }
}
