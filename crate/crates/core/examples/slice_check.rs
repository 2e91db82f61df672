//! Compare the pieces met near a point with those of its linear slice
//! representation.

use inertia_strata::exact::parse_vector;
use inertia_strata::fixtures;
use inertia_strata::strata::{slice_consistency, Stratification};

fn main() -> inertia_strata::Result<()> {
    let config = fixtures::get("s3-perm")?.config();
    let s = Stratification::new(config.build_model()?, config.options.engine())?;
    for text in ["1,2,3", "1,1,0", "0,0,0"] {
        let r = slice_consistency(&s, &parse_vector(text)?, 1024)?;
        println!(
            "x = ({text}): stabilizer {:?}, {} centralizer rows, {}",
            r.stabilizer,
            r.rows.len(),
            if r.passed() {
                "consistent"
            } else {
                "INCONSISTENT"
            }
        );
    }
    Ok(())
}
