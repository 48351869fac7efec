//! Gram adjoints, definiteness and kernels over ℚ[i].

use quadmod::algebra::format_vec;
use quadmod::exact::{
    gram_adjoint, kernel_basis, psd_check, ExactMatrix, GaussianRational as Q, GramForm,
};

fn show(label: &str, m: &ExactMatrix) {
    println!("{label}:");
    for r in 0..m.rows() {
        println!("  {}", format_vec(m.row(r)));
    }
}

fn main() -> quadmod::Result<()> {
    let g = GramForm::new(ExactMatrix::from_rows(vec![
        vec![Q::from(2), Q::from_parts(0, 1, 1, 1)],
        vec![Q::from_parts(0, 1, -1, 1), Q::from(3)],
    ]))?;
    show("G", g.matrix());
    println!("definiteness: {:?}", psd_check(g.matrix())?);

    let t = ExactMatrix::from_i64(&[&[1, 2], &[0, 1]]);
    let t_star = gram_adjoint(&t, &g, &g)?;
    show("adjoint of T for G", &t_star);

    let x = vec![Q::from(1), Q::from_parts(1, 2, 0, 1)];
    let y = vec![Q::from_parts(0, 1, 1, 1), Q::from(-1)];
    let lhs = g.pair(&t.mul_vec(&x), &y);
    let rhs = g.pair(&x, &t_star.mul_vec(&y));
    println!("⟨Tx|y⟩ = {lhs}, ⟨x|T*y⟩ = {rhs}");
    assert_eq!(lhs, rhs);

    let degenerate = ExactMatrix::from_i64(&[&[1, 1], &[1, 1]]);
    println!("degenerate form: {:?}", psd_check(&degenerate)?);
    for v in kernel_basis(&degenerate) {
        println!("kernel vector: {}", format_vec(&v));
    }
    Ok(())
}
