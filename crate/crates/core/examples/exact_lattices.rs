//! Canonical forms: rational row echelon form, Hermite and Smith normal
//! forms, and the integrality test behind torus subgroup membership.

use inertia_strata::exact::{
    canonical_rref, format_vector, hermite_normal_form, rat, smith_hermite, torus_integrality,
    IntLattice, QMatrix,
};

fn main() -> inertia_strata::Result<()> {
    let m = QMatrix::from_i64(&[&[2, 4, 6], &[1, 2, 4]]);
    for row in canonical_rref(&m).row_vecs() {
        println!("rref row: {}", format_vector(&row));
    }

    let weights = vec![vec![2, 4], vec![6, 8]];
    println!("hnf: {:?}", hermite_normal_form(&weights, 2));
    let sh = smith_hermite(&weights, 2);
    println!("invariant factors: {:?}", sh.invariant_factors);

    // the annihilator of the subgroup {θ : 2θ₁ + 4θ₂ ∈ Z, 6θ₁ + 8θ₂ ∈ Z}
    let ann = IntLattice::from_generators(2, &weights)?;
    for theta in [[rat(1, 2), rat(0, 1)], [rat(1, 4), rat(1, 4)]] {
        println!(
            "({}) in subgroup: {}",
            format_vector(&theta),
            torus_integrality(&ann, &theta)?
        );
    }
    Ok(())
}
