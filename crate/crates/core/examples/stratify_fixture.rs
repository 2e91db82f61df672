//! Stratify a built-in model and print its pieces, loop space components
//! and strata of the inertia space.
//!
//! `cargo run --example stratify_fixture -- d4-signed`

use inertia_strata::fixtures;
use inertia_strata::strata::Stratification;

fn main() -> inertia_strata::Result<()> {
    let name = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "t2-cp2-chart1".into());
    let config = fixtures::get(&name)?.config();
    let s = Stratification::new(config.build_model()?, config.options.engine())?;
    for p in &s.pieces {
        println!(
            "piece {} dim {}: isotropy {}, cartan {}, {}",
            p.id,
            p.dim,
            p.isotropy,
            p.cartan,
            p.class_component()
        );
    }
    println!(
        "{} loop space components, {} strata",
        s.components.len(),
        s.strata.len()
    );
    for (kind, report) in s.verify_frontier() {
        println!(
            "frontier on {kind}: {}",
            if report.passed() { "ok" } else { "FAILS" }
        );
    }
    Ok(())
}
