//! Partition a Cartan subgroup by fixed sets in `G × M` and list the
//! connected components of each class.

use inertia_strata::actions::{ClosedSubgroup, Model, TorusLinearAction};
use inertia_strata::cartan::{class_components, TildePartition};
use inertia_strata::groups::TorusSubgroup;

fn main() -> inertia_strata::Result<()> {
    // the circle acting on C with weight 2: the class of -1 is a single point
    let model = Model::Torus(TorusLinearAction::new(1, vec![vec![2]], 0)?);
    let carrier = ClosedSubgroup::Torus(TorusSubgroup::full(1));
    let partition = TildePartition::new(&model, &carrier)?;
    for class in partition.classes(2)? {
        let comps = class_components(&class, 2)?;
        println!(
            "class of {} (signature {:?}, bullet {}): {} components",
            class.member,
            class.signature,
            class.bullet,
            comps.components().len()
        );
        for c in comps.components() {
            println!("  {} dim {}", c.representative, c.dim);
        }
    }
    Ok(())
}
