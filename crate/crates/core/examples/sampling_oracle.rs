//! Cross-check the exact strata against brute-force sampling on a
//! rational grid.

use inertia_strata::fixtures;
use inertia_strata::strata::{sampling_oracle, Stratification};

fn main() -> inertia_strata::Result<()> {
    for name in ["z2-line", "t1-c-plus-r", "s3-perm"] {
        let config = fixtures::get(name)?.config();
        let s = Stratification::new(config.build_model()?, config.options.engine())?;
        let r = sampling_oracle(&s, 4, 1 << 22)?;
        println!(
            "{name}: {} samples, {} oracle strata, {}/{} components hit, {}",
            r.samples,
            r.oracle_strata,
            r.engine_components_hit,
            r.engine_components,
            if r.passed() { "agrees" } else { "MISMATCH" }
        );
    }
    Ok(())
}
