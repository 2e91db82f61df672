//! Closure order of the strata as Graphviz, plus connected components of
//! the inertia space.

use inertia_strata::fixtures;
use inertia_strata::strata::{closure_poset, inertia_components, to_dot, Stratification};

fn main() -> inertia_strata::Result<()> {
    let config = fixtures::get("s3-perm")?.config();
    let s = Stratification::new(config.build_model()?, config.options.engine())?;
    let poset = closure_poset(&s);
    let (count, of_stratum) = inertia_components(&s, &poset);
    println!("// {count} connected components: {of_stratum:?}");
    print!("{}", to_dot(&s, &poset));
    Ok(())
}
