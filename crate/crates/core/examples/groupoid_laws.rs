//! The action groupoid: source, target, composition and inverses.
//! The inverse of `(g, p)` is `(g⁻¹, g·p)`; the naive `(g⁻¹, p)` breaks
//! `s∘i = t` whenever `g` moves `p`.

use inertia_strata::actions::{ActionGroupoid, GroupElement, Morphism};
use inertia_strata::exact::{format_vector, rat};
use inertia_strata::fixtures;

fn main() -> inertia_strata::Result<()> {
    let model = fixtures::get("s3-perm")?.config().build_model()?;
    let gpd = ActionGroupoid::new(&model);
    let p = vec![rat(1, 1), rat(2, 1), rat(3, 1)];
    let a = Morphism {
        group: GroupElement::Finite(1),
        point: p,
    };
    println!(
        "source ({}), target ({})",
        format_vector(&gpd.source(&a)),
        format_vector(&gpd.target(&a)?)
    );
    let i = gpd.inverse(&a)?;
    println!("inverse ({}, ({}))", i.group, format_vector(&i.point));
    println!("law violations: {:?}", gpd.violations(&a)?);
    println!(
        "with the naive inverse: {:?}",
        gpd.violations_with(&a, |m| gpd.verbatim_inverse(m))?
    );
    Ok(())
}
