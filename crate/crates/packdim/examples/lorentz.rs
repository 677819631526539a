//! Reflections in the separation-3 form and the curvature quadruple relation.

use packdim::lorentz::{
    from_ints, mat_vec, product, quadruple_form, reflection_matrix, separation, solve_fourth, SeparationForm,
    GENERATOR_NORMALS,
};
use packdim::scalar::QuadSurd;

fn main() -> packdim::Result<()> {
    let form = SeparationForm::<QuadSurd>::boyd_mallows();
    let e1 = from_ints::<QuadSurd>([1, 0, 0, 0]);
    for n in GENERATOR_NORMALS {
        let nv = from_ints::<QuadSurd>(n);
        let t = reflection_matrix(&nv, &form)?;
        let image: Vec<String> = mat_vec(&t, &e1).iter().map(|x| x.to_string()).collect();
        println!("n = {n:?}  n∘n = {}  R(n) e1 = {image:?}", product(&nv, &nv, &form));
    }

    let f = SeparationForm::<f64>::boyd_mallows();
    println!("separation of two radius-½ disks √2 apart: {}", separation(&0.5, &0.5, &2f64.sqrt())?);
    // The two base disks have curvature 2 and the two lines curvature 0.
    let (lo, hi) = solve_fourth(&[2.0, 2.0, 0.0, 0.0], 3, &f)?;
    println!("replacing a line in (2, 2, 0, 0): curvature {lo} or {hi}");
    println!("K(2, 2, 0, {hi}) = {}", quadruple_form(&[2.0, 2.0, 0.0, hi], &f));
    Ok(())
}
