//! Grouping loop points by isotropy alone is too coarse. For the circle
//! acting on C every loop at the origin has isotropy T¹, but only the
//! identity loop `(e, 0)` lies in the closure of the free part, so the
//! frontier condition fails there.

use inertia_strata::fixtures;
use inertia_strata::strata::{closure_poset, isotropy_only_comparison, Stratification};

fn main() -> inertia_strata::Result<()> {
    for name in ["t1-c", "s3-perm"] {
        let config = fixtures::get(name)?.config();
        let s = Stratification::new(config.build_model()?, config.options.engine())?;
        let cmp = isotropy_only_comparison(&s, &closure_poset(&s));
        println!(
            "{name}: {} isotropy parts vs {} pieces, isotropy-only frontier {}, refinement needed {}",
            cmp.isotropy_parts,
            s.pieces.len(),
            if cmp.isotropy_only.passed() { "holds" } else { "fails" },
            cmp.refinement_needed
        );
        for f in &cmp.isotropy_only.failures {
            println!(
                "  parts {} / {}: {:?} at {}",
                f.part_a, f.part_b, f.kind, f.witness
            );
        }
    }
    Ok(())
}
