//! Truncated Fock module of H_{2,2}: level dimensions, creation operator
//! identities and the gauge action.

use quadmod::fock::build_fock;
use quadmod::quad::build_example_mn;
use quadmod::relations::verify_fock_identities;

fn main() -> quadmod::Result<()> {
    let spec = build_example_mn(2, 2)?;
    let fock = build_fock(&spec, 3)?;
    println!(
        "level dims {:?}, total {}",
        fock.level_dims(),
        fock.total_dim()
    );
    println!("construction checks pass: {}", fock.checks().all_pass());
    for r in verify_fock_identities(&fock) {
        println!("{r}");
    }
    let xis: Vec<_> = (0..spec.dim_h).map(|j| fock.h_basis(j)).collect();
    let gauge = fock.gauge_check(
        &xis,
        &fock.idempotents(quadmod::quad::Leg::One),
        &fock.idempotents(quadmod::quad::Leg::Two),
    );
    println!(
        "gauge action: {}",
        if gauge.all_pass() { "PASS" } else { "FAIL" }
    );
    Ok(())
}
