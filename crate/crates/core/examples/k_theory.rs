//! K-groups of the matrix modules H_{2,N}, a Smith normal form, and λ∘
//! computed from the Fock generators.

use quadmod::ktheory::{
    k_groups, k_groups_of_endomorphism, lambda_circ_matrix, smith_normal_form, IntegerMatrix,
    LambdaRoute,
};
use quadmod::quad::build_example_mn;

fn main() -> quadmod::Result<()> {
    for n in 2..=8 {
        println!("H_{{2,{n}}}: {}", k_groups(2, n)?);
    }

    let m = IntegerMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]])?;
    let snf = smith_normal_form(&m);
    println!("Smith diagonal of\n{m}is {:?}", snf.diagonal());
    assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.d);

    let lc = lambda_circ_matrix(&build_example_mn(2, 2)?, 3, LambdaRoute::PerGenerator)?;
    println!("λ∘ =\n{}", lc.matrix);
    println!("from λ∘: {}", k_groups_of_endomorphism(&lc.matrix)?);
    Ok(())
}
