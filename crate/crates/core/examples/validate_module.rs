//! Axioms, finite type and λ for the matrix module H_{2,3}, and a
//! permutation pair whose left actions do not commute.

use quadmod::quad::{
    build_example_alpha_beta, build_example_mn, derive_lambda, parse_cycles, validate_axioms,
    verify_finite_type,
};

fn main() -> quadmod::Result<()> {
    let spec = build_example_mn(2, 3)?;
    println!("H_{{2,3}}: dim H = {}", spec.dim_h);
    for report in [validate_axioms(&spec)?, verify_finite_type(&spec)?] {
        for c in &report.checks {
            println!("  {} {}", if c.pass { "PASS" } else { "FAIL" }, c.name);
        }
    }
    let (_, lambda_report) = derive_lambda(&spec)?;
    println!("  λ derived: {}", lambda_report.all_pass());

    let d = 3;
    let bad = build_example_alpha_beta(d, &parse_cycles(d, "(12)")?, &parse_cycles(d, "(23)")?)?;
    let report = validate_axioms(&bad)?;
    for c in report.failures() {
        println!(
            "perm (12),(23): FAIL {}: {}",
            c.name,
            c.witness.as_deref().unwrap_or("")
        );
    }
    Ok(())
}
