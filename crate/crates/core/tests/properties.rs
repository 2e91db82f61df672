mod common;

use common::*;
use inertia_strata::actions::Model;
use inertia_strata::exact::{format_rational, parse_rational, rat, Rational};
use inertia_strata::strata::{EngineOptions, Stratification};
use proptest::prelude::*;

fn engine(model: &Model) -> Stratification {
    Stratification::new(model.clone(), EngineOptions::default()).unwrap()
}

fn model_for(seed: u64, torus: bool) -> Model {
    let mut r = rng(seed);
    if torus {
        random_torus_model(&mut r)
    } else {
        random_signed_permutation_group(&mut r)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn rationals_round_trip(p in -1000i64..1000, q in 1i64..1000) {
        let x = rat(p, q);
        prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
    }

    #[test]
    fn stratum_is_conjugation_invariant(seed in any::<u64>(), torus in any::<bool>()) {
        let model = model_for(seed, torus);
        let s = engine(&model);
        let mut r = rng(seed ^ 0x5eed);
        for _ in 0..10 {
            let p = random_loop_point(&model, &mut r);
            let g = random_acting_element(&model, &mut r);
            let (k, y) = model.act_on_gxm(&g, p.group_part(), p.point_part()).unwrap();
            // the component in the loop space may move; the stratum may not
            let (_, a) = s.stratum_of_point(p.group_part(), p.point_part()).unwrap();
            let (_, b) = s.stratum_of_point(&k, &y).unwrap();
            prop_assert_eq!(s.components[a].stratum, s.components[b].stratum);
        }
    }

    #[test]
    fn frontier_holds_on_random_models(seed in any::<u64>(), torus in any::<bool>()) {
        let s = engine(&model_for(seed, torus));
        for (name, r) in s.verify_frontier() {
            prop_assert!(r.passed(), "{} frontier fails", name);
        }
    }

    #[test]
    fn loop_points_scale_into_their_closure(seed in any::<u64>(), torus in any::<bool>(), t in 0i64..=6) {
        let model = model_for(seed, torus);
        let s = engine(&model);
        let mut r = rng(seed);
        let p = random_loop_point(&model, &mut r);
        let (pid, _) = s.stratum_of_point(p.group_part(), p.point_part()).unwrap();
        let y: Vec<Rational> = p.point_part().iter().map(|v| v * rat(t, 6)).collect();
        prop_assert!(s.pieces[pid].components.iter().any(|&c| s.closure_contains(c, p.group_part(), &y)));
    }

    #[test]
    fn partition_lemmas_on_random_models(seed in any::<u64>(), torus in any::<bool>()) {
        let model = model_for(seed, torus);
        let bad = partition_lemma_violations("random", &model, &mut rng(seed));
        prop_assert!(bad.is_empty(), "{:?}", bad);
    }
}
