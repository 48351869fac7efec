//! Cuntz–Krieger data of H_{2,3} and the convention check for a
//! permutation module.

use quadmod::ck::{
    build_ck_fock, build_ck_generators, ck_matrix, column_amalgamation, is_aperiodic,
    verify_ck_matrix, verify_ck_relations, verify_prop_7_1,
};
use quadmod::quad::parse_cycles;

fn main() -> quadmod::Result<()> {
    let bundle = ck_matrix(2, 3)?;
    println!("H =\n{}", bundle.h);
    println!("aperiodic: {:?}", is_aperiodic(&bundle.h));
    println!(
        "amalgamation equals A + B: {}",
        column_amalgamation(&bundle.h) == bundle.a.add(&bundle.b)
    );

    let fock = build_ck_fock(2, 3, 3)?;
    let ck = build_ck_generators(&fock)?;
    for r in verify_ck_relations(&ck) {
        println!("{r}");
    }
    println!("{}", verify_ck_matrix(&ck, &bundle));

    let d = 3;
    let r = verify_prop_7_1(d, &parse_cycles(d, "(123)")?, &parse_cycles(d, "(132)")?, 3)?;
    println!("permutation module: {}", r.finding);
    Ok(())
}
