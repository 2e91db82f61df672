//! Generate a matrix group, then inspect conjugacy classes and centralizers.

use inertia_strata::exact::QMatrix;
use inertia_strata::groups::FiniteGroup;

fn main() -> inertia_strata::Result<()> {
    let swap = QMatrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
    let cycle = QMatrix::from_i64(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
    let g = FiniteGroup::generate(&[swap, cycle], 1024)?;
    println!("order {}", g.order());
    for class in g.conjugacy_partition() {
        let x = class[0];
        println!(
            "class {:?}: element order {}, centralizer order {}",
            class,
            g.element_order(x),
            g.centralizer(x).order()
        );
    }
    Ok(())
}
