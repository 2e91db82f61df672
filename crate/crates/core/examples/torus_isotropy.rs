//! Isotropy subgroups of a torus acting on C² by weights and their
//! component groups.

use inertia_strata::actions::TorusLinearAction;
use inertia_strata::exact::{format_vector, rat};

fn main() -> inertia_strata::Result<()> {
    // T² on C² with weights (2, 0) and (1, 1)
    let a = TorusLinearAction::new(2, vec![vec![2, 0], vec![1, 1]], 0)?;
    for support in a.closed_supports() {
        let k = a.support_isotropy(&support);
        println!(
            "support {:?}: dim {}, {} components, annihilator {:?}",
            support,
            k.dim(),
            k.component_data().component_count(),
            k.annihilator().basis()
        );
    }
    let x = vec![rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1)];
    println!(
        "isotropy of ({}): dim {}",
        format_vector(&x),
        a.isotropy(&x).dim()
    );
    Ok(())
}
