//! Generators on the Fock module of H_{2,2}, the relations they satisfy
//! modulo compacts, and the core representation π.

use quadmod::fock::build_fock;
use quadmod::quad::build_example_mn;
use quadmod::relations::{
    build_bcirc, compute_pi, make_generators, verify_pi_multiplicative, verify_relations_h,
    verify_section5_core,
};

fn main() -> quadmod::Result<()> {
    let spec = build_example_mn(2, 2)?;
    let fock = build_fock(&spec, 4)?;
    let gen = make_generators(&fock)?;
    println!("quotient window {:?}", gen.window);
    for r in verify_relations_h(&gen) {
        println!("{r}");
    }
    let model = build_bcirc(&spec);
    println!("core algebra dimension {}", model.dim());
    for r in verify_section5_core(&gen, &model)? {
        println!("{r}");
    }
    let e = model.minimal_idempotents()?;
    let pi = compute_pi(&gen, &model, &e[0])?;
    for r in &pi.reports {
        println!("π(e0): {r}");
    }
    println!("{}", verify_pi_multiplicative(&gen, &model));
    Ok(())
}
