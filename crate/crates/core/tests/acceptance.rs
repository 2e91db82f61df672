//! One line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::time::Instant;

use common::Outcome;

const SEED: u64 = 0x1e27_1a00;

fn main() {
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        (
            "circle on C: pieces, frontier, isotropy-only witness",
            Box::new(common::criterion_1),
        ),
        (
            "CP2 chart: diagonal isotropy, classes, chart isomorphism",
            Box::new(common::criterion_2),
        ),
        (
            "S3: strata are orbit types, oracle at D=6",
            Box::new(|| common::criterion_3(6)),
        ),
        (
            "partition lemmas on fixtures and random models",
            Box::new(|| common::criterion_4(SEED)),
        ),
        (
            "groupoid axioms and the verbatim inverse",
            Box::new(|| common::criterion_5(SEED)),
        ),
        ("scalar invariance", Box::new(|| common::criterion_6(SEED))),
        ("slice consistency", Box::new(common::criterion_7)),
        (
            "determinism of strata reports",
            Box::new(common::criterion_8),
        ),
        ("H0 counts", Box::new(common::criterion_9)),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {title}: {detail} ({secs:.1}s)", i + 1),
            Err(reason) => {
                failed += 1;
                println!("criterion {}: FAIL  {title}: {reason} ({secs:.1}s)", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
