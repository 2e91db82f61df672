//! Load a model from JSON and print the strata report the CLI would write.

use inertia_strata::config::ModelConfig;
use inertia_strata::report::{self, Analysis};

const MODEL: &str = r#"{
  "kind": "torus-linear",
  "name": "circle-on-c2",
  "torus": { "rank": 1, "weights": [[1], [2]] },
  "options": { "denominator_bound": 4 }
}"#;

fn main() -> inertia_strata::Result<()> {
    let config = ModelConfig::parse(MODEL)?;
    let analysis = Analysis::new(config)?;
    print!("{}", report::render(&report::strata(&analysis)));

    let bad = r#"{ "kind": "torus-linear", "torus": { "rank": 2, "weights": [[1]] } }"#;
    println!("rejected: {}", ModelConfig::parse(bad).unwrap_err());
    Ok(())
}
