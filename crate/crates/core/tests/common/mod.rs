//! Shared generators and the acceptance criteria, each returning a one-line
//! summary or the reason it failed.

#![allow(dead_code)]

use std::collections::BTreeSet;

use inertia_strata::actions::{ActionGroupoid, FiniteLinearAction, Morphism, TorusLinearAction};
use inertia_strata::actions::{ClosedSubgroup, GroupElement, LoopPoint, Model, PointQ};
use inertia_strata::cartan::{class_components, normalizer_class_action, TildePartition};
use inertia_strata::exact::{rat, QMatrix, Rational};
use inertia_strata::fixtures;
use inertia_strata::groups::{FiniteGroup, TorusElement, TorusSubgroup};
use inertia_strata::report::{self, Analysis};
use inertia_strata::strata::{
    closure_poset, inertia_components, isotropy_only_comparison, sampling_oracle,
    slice_consistency, EngineOptions, Stratification,
};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Outcome = std::result::Result<String, String>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fixture_model(name: &str) -> Model {
    fixtures::get(name).unwrap().config().build_model().unwrap()
}

pub fn fixture_strata(name: &str) -> Stratification {
    Stratification::new(fixture_model(name), EngineOptions::default()).unwrap()
}

pub fn fixture_names() -> Vec<&'static str> {
    fixtures::all().iter().map(|f| f.name).collect()
}

/// `p/q` with `q ≤ 4` and `|p/q| ≤ 2`, zero about a quarter of the time.
pub fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    if rng.gen_bool(0.25) {
        return Rational::zero();
    }
    let q = rng.gen_range(1..=4);
    rat(rng.gen_range(-2 * q..=2 * q), q)
}

pub fn random_signed_permutation_group(rng: &mut ChaCha8Rng) -> Model {
    loop {
        let gens: Vec<QMatrix> = (0..rng.gen_range(1..=2))
            .map(|_| {
                let mut perm = [0usize, 1, 2];
                perm.shuffle(rng);
                let rows: Vec<Vec<i64>> = (0..3)
                    .map(|r| {
                        (0..3)
                            .map(|c| {
                                if perm[c] == r {
                                    if rng.gen_bool(0.5) {
                                        -1
                                    } else {
                                        1
                                    }
                                } else {
                                    0
                                }
                            })
                            .collect()
                    })
                    .collect();
                let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
                QMatrix::from_i64(&refs)
            })
            .collect();
        if let Ok(g) = FiniteGroup::generate(&gens, 16) {
            return Model::Finite(FiniteLinearAction::new(g));
        }
    }
}

pub fn random_torus_model(rng: &mut ChaCha8Rng) -> Model {
    let rank = rng.gen_range(1..=2);
    let nc = rng.gen_range(1..=3);
    let weights = (0..nc)
        .map(|_| (0..rank).map(|_| rng.gen_range(-3..=3)).collect())
        .collect();
    Model::Torus(TorusLinearAction::new(rank, weights, rng.gen_range(0..=1)).unwrap())
}

/// Ten random models of each kind, reproducible from `seed`.
pub fn random_models(seed: u64) -> Vec<(String, Model)> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    for i in 0..10 {
        out.push((
            format!("random-finite-{i}"),
            random_signed_permutation_group(&mut r),
        ));
        out.push((format!("random-torus-{i}"), random_torus_model(&mut r)));
    }
    out
}

fn group_elements(model: &Model) -> Vec<GroupElement> {
    match model {
        Model::Finite(a) => (0..a.group().order()).map(GroupElement::Finite).collect(),
        Model::Torus(a) => {
            let k = a.rank();
            (0..4usize.pow(k as u32))
                .map(|mut i| {
                    GroupElement::Torus(TorusElement::new(
                        (0..k)
                            .map(|_| {
                                let c = rat((i % 4) as i64, 4);
                                i /= 4;
                                c
                            })
                            .collect(),
                    ))
                })
                .collect()
        }
    }
}

/// Group elements that act exactly: everything for finite groups, quarter
/// turns for tori.
pub fn random_acting_element(model: &Model, rng: &mut ChaCha8Rng) -> GroupElement {
    group_elements(model).choose(rng).unwrap().clone()
}

pub fn random_point(model: &Model, rng: &mut ChaCha8Rng) -> PointQ {
    (0..model.dim()).map(|_| small_rational(rng)).collect()
}

pub fn random_loop_point(model: &Model, rng: &mut ChaCha8Rng) -> LoopPoint {
    match model {
        Model::Finite(a) => {
            let h = rng.gen_range(0..a.group().order());
            let fix = a.fixed_space(h);
            let basis = fix.basis();
            let mut x = vec![Rational::zero(); a.dim()];
            for r in 0..basis.rows() {
                let c = small_rational(rng);
                for (xi, b) in x.iter_mut().zip(basis.row(r)) {
                    *xi += &c * b;
                }
            }
            model.loop_point(GroupElement::Finite(h), x).unwrap()
        }
        Model::Torus(a) => {
            let q = rng.gen_range(1..=4);
            let theta =
                TorusElement::new((0..a.rank()).map(|_| rat(rng.gen_range(0..q), q)).collect());
            let mut x = Vec::with_capacity(a.dim());
            for w in a.weights() {
                let fixed = theta.pair(w).denom() == &1.into();
                if fixed {
                    x.push(small_rational(rng));
                    x.push(small_rational(rng));
                } else {
                    x.push(Rational::zero());
                    x.push(Rational::zero());
                }
            }
            for _ in 0..a.real_dim() {
                x.push(small_rational(rng));
            }
            model.loop_point(GroupElement::Torus(theta), x).unwrap()
        }
    }
}

/// Elements of a closed subgroup: all members, or its points with
/// coordinates in `(1/12)Z`.
fn subgroup_samples(model: &Model, sub: &ClosedSubgroup) -> Vec<GroupElement> {
    match sub {
        ClosedSubgroup::Finite(s) => s
            .members()
            .iter()
            .copied()
            .map(GroupElement::Finite)
            .collect(),
        ClosedSubgroup::Torus(t) => {
            let k = match model {
                Model::Torus(a) => a.rank(),
                _ => unreachable!(),
            };
            (0..12usize.pow(k as u32))
                .map(|mut i| {
                    TorusElement::new(
                        (0..k)
                            .map(|_| {
                                let c = rat((i % 12) as i64, 12);
                                i /= 12;
                                c
                            })
                            .collect(),
                    )
                })
                .filter(|e| t.contains(e).unwrap())
                .map(GroupElement::Torus)
                .collect()
        }
    }
}

fn same_identity_component(bullet: &ClosedSubgroup, a: &GroupElement, b: &GroupElement) -> bool {
    match (bullet, a, b) {
        (ClosedSubgroup::Finite(_), x, y) => x == y,
        (ClosedSubgroup::Torus(t), GroupElement::Torus(x), GroupElement::Torus(y)) => {
            t.identity_component().contains(&x.sub(y)).unwrap()
        }
        _ => false,
    }
}

/// Violations of the class-level and component-level lemmas on one model.
pub fn partition_lemma_violations(name: &str, model: &Model, rng: &mut ChaCha8Rng) -> Vec<String> {
    let mut bad = Vec::new();
    let s = match Stratification::new(model.clone(), EngineOptions::default()) {
        Ok(s) => s,
        Err(e) => return vec![format!("{name}: engine failed: {e}")],
    };
    let mut carriers: BTreeSet<(ClosedSubgroup, ClosedSubgroup)> = BTreeSet::new();
    for p in &s.pieces {
        carriers.insert((p.cartan.clone(), p.isotropy.clone()));
    }
    for (carrier, parent) in &carriers {
        let partition = TildePartition::new(model, carrier).unwrap();
        let classes = partition.classes(2).unwrap();
        let samples = subgroup_samples(model, carrier);
        // (a) every element lies in exactly one class
        for t in &samples {
            let hits: Vec<usize> = (0..classes.len())
                .filter(|&i| classes[i].contains(t))
                .collect();
            if hits.len() != 1 {
                bad.push(format!(
                    "{name}: {t} lies in {} classes of {carrier}",
                    hits.len()
                ));
            } else if classes[hits[0]].signature != partition.signature(t) {
                bad.push(format!("{name}: {t} has the wrong class signature"));
            }
        }
        let comps: Vec<_> = classes
            .iter()
            .map(|c| class_components(c, 2).unwrap())
            .collect();
        let member_of = |ci: usize, k: usize, t: &GroupElement| {
            classes[ci].contains(t) && comps[ci].component_of(t) == Some(k)
        };
        for (ci, cc) in comps.iter().enumerate() {
            let bullet = &classes[ci].bullet;
            // (b) open in the bullet group, closure a union of bullet components
            if classes[ci]
                .excluded
                .iter()
                .any(|e| e.contains_subgroup(bullet))
            {
                bad.push(format!(
                    "{name}: class {ci} of {carrier} excludes its whole bullet group"
                ));
            }
            let reps: Vec<&GroupElement> =
                cc.components().iter().map(|c| &c.representative).collect();
            for t in samples.iter().filter(|t| bullet.contains(t)) {
                let in_closure = (0..reps.len()).any(|k| cc.closure_contains(k, t));
                let expected = match bullet {
                    ClosedSubgroup::Finite(_) => classes[ci].contains(t),
                    ClosedSubgroup::Torus(_) => {
                        reps.iter().any(|r| same_identity_component(bullet, r, t))
                    }
                };
                if in_closure != expected {
                    bad.push(format!(
                        "{name}: closure of class {ci} of {carrier} wrong at {t}"
                    ));
                }
            }
        }
        // (c) component frontier and (f) equal dimensions are disjoint
        for (ca, cca) in comps.iter().enumerate() {
            for a in 0..cca.components().len() {
                let members: Vec<&GroupElement> =
                    samples.iter().filter(|t| member_of(ca, a, t)).collect();
                for (cb, ccb) in comps.iter().enumerate() {
                    for b in 0..ccb.components().len() {
                        if (ca, a) == (cb, b) {
                            continue;
                        }
                        let inside = members
                            .iter()
                            .filter(|t| ccb.closure_contains(b, t))
                            .count();
                        if inside != 0 && inside != members.len() {
                            bad.push(format!("{name}: class component ({ca},{a}) meets the closure of ({cb},{b}) partially"));
                        }
                        if inside != 0 && cca.components()[a].dim == ccb.components()[b].dim {
                            bad.push(format!("{name}: equal-dimension class components ({ca},{a}), ({cb},{b}) touch"));
                        }
                    }
                }
            }
        }
        // (e) normalizer dichotomy
        let normalizer = match (model, parent, carrier) {
            (Model::Finite(a), ClosedSubgroup::Finite(k), ClosedSubgroup::Finite(t)) => {
                ClosedSubgroup::Finite(a.group().normalizer_within(k, t))
            }
            _ => parent.clone(),
        };
        match normalizer_class_action(model, &normalizer, &partition, 2) {
            Ok(action) if action.dichotomy_holds => {}
            Ok(_) => bad.push(format!("{name}: normalizer dichotomy fails on {carrier}")),
            Err(e) => bad.push(format!("{name}: normalizer action failed: {e}")),
        }
    }
    // (c) and (f) on components of the loop space
    for a in &s.components {
        for b in &s.components {
            if a.id == b.id {
                continue;
            }
            let r = &a.representative;
            if s.closure_contains(b.id, r.group_part(), r.point_part()) && a.dim >= b.dim {
                bad.push(format!(
                    "{name}: component {} in closure of {} without losing dimension",
                    a.id, b.id
                ));
            }
        }
    }
    for (level, report) in s.verify_frontier() {
        for f in &report.failures {
            bad.push(format!(
                "{name}: frontier on {level}: {:?} {} vs {} at {}",
                f.kind, f.part_a, f.part_b, f.witness
            ));
        }
    }
    // (d) conjugation equivariance
    for _ in 0..20 {
        let p = random_loop_point(model, rng);
        let g = random_acting_element(model, rng);
        let (h2, x2) = model
            .act_on_gxm(&g, p.group_part(), p.point_part())
            .unwrap();
        let (pa, ca) = s.stratum_of_point(p.group_part(), p.point_part()).unwrap();
        let (pb, cb) = s.stratum_of_point(&h2, &x2).unwrap();
        if pa != pb || s.components[ca].stratum != s.components[cb].stratum {
            bad.push(format!(
                "{name}: {p} and its translate by {g} land in different strata"
            ));
        }
        let k = model.isotropy_in_gxm(&p).unwrap();
        let k2 = model
            .isotropy_in_gxm(&model.loop_point(h2, x2).unwrap())
            .unwrap();
        let expected = match (&k, model, &g) {
            (ClosedSubgroup::Finite(k), Model::Finite(a), GroupElement::Finite(g)) => {
                ClosedSubgroup::Finite(a.group().conjugate_subgroup(*g, k))
            }
            _ => k.clone(),
        };
        if k2 != expected {
            bad.push(format!(
                "{name}: isotropy of a translate of {p} is not conjugate"
            ));
        }
    }
    bad
}

pub fn criterion_1() -> Outcome {
    let a = Analysis::new(fixtures::get("t1-c").unwrap().config()).map_err(|e| e.to_string())?;
    let mut dims: Vec<usize> = a.strata.pieces.iter().map(|p| p.dim).collect();
    dims.sort_unstable();
    if dims != [0, 1, 2] {
        return Err(format!("piece dimensions {dims:?}"));
    }
    let (_, verify_pass) = report::verify(&a);
    if !verify_pass {
        return Err("frontier check failed".into());
    }
    let cmp = isotropy_only_comparison(&a.strata, &a.poset);
    if cmp.isotropy_only.passed() {
        return Err("isotropy-only partition unexpectedly satisfies the frontier condition".into());
    }
    let witnesses: Vec<String> = cmp
        .isotropy_only
        .failures
        .iter()
        .map(|f| f.witness.to_string())
        .collect();
    if !witnesses.iter().any(|w| w == "(e, 0)") {
        return Err(format!("witnesses {witnesses:?}"));
    }
    Ok("3 pieces of dims 0,1,2; frontier PASS; isotropy-only FAIL at (e, 0)".into())
}

fn strata_isomorphic(a: &Stratification, b: &Stratification) -> bool {
    let (pa, pb) = (closure_poset(a), closure_poset(b));
    let n = a.strata.len();
    if n != b.strata.len() {
        return false;
    }
    fn extend(
        a: &Stratification,
        b: &Stratification,
        pa: &[Vec<usize>],
        pb: &[Vec<usize>],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let i = map.len();
        if i == a.strata.len() {
            return true;
        }
        for j in 0..b.strata.len() {
            if used[j] || a.strata[i].dim != b.strata[j].dim {
                continue;
            }
            let consistent = (0..i).all(|k| {
                pa[i].contains(&k) == pb[j].contains(&map[k])
                    && pa[k].contains(&i) == pb[map[k]].contains(&j)
            });
            if consistent {
                map.push(j);
                used[j] = true;
                if extend(a, b, pa, pb, map, used) {
                    return true;
                }
                map.pop();
                used[j] = false;
            }
        }
        false
    }
    extend(
        a,
        b,
        &pa.above,
        &pb.above,
        &mut Vec::new(),
        &mut vec![false; n],
    )
}

pub fn criterion_2() -> Outcome {
    let model = fixture_model("t2-cp2-chart1");
    let x: Vec<Rational> = [1, 0, 0, 0].iter().map(|&v| rat(v, 1)).collect();
    let k = model.isotropy_of_point(&x).map_err(|e| e.to_string())?;
    let diagonal =
        ClosedSubgroup::Torus(TorusSubgroup::from_annihilator(2, &[vec![-1, 1]]).unwrap());
    if k != diagonal {
        return Err(format!("isotropy of support-1 points is {k}"));
    }
    let classes = TildePartition::new(&model, &k).unwrap().classes(2).unwrap();
    let e = GroupElement::Torus(TorusElement::zero(2));
    let q = |a: i64, b: i64| GroupElement::Torus(TorusElement::new(vec![rat(a, b), rat(a, b)]));
    let identity_class = classes.iter().filter(|c| c.contains(&e)).count() == 1
        && classes
            .iter()
            .any(|c| c.contains(&e) && !c.contains(&q(1, 4)));
    let rest = classes.iter().any(|c| {
        !c.contains(&e)
            && [q(1, 4), q(1, 2), q(2, 3), q(5, 6)]
                .iter()
                .all(|t| c.contains(t))
    });
    if classes.len() != 2 || !identity_class || !rest {
        return Err(format!("{} classes on the diagonal circle", classes.len()));
    }
    let charts: Vec<Stratification> = ["t2-cp2-chart1", "t2-cp2-chart2", "t2-cp2-chart3"]
        .iter()
        .map(|n| fixture_strata(n))
        .collect();
    if !strata_isomorphic(&charts[0], &charts[1]) || !strata_isomorphic(&charts[0], &charts[2]) {
        return Err("chart closure posets are not isomorphic".into());
    }
    Ok("isotropy ann[(1,-1)], classes {e} and K minus e; charts 1-3 isomorphic".into())
}

pub fn criterion_3(denominator_bound: usize) -> Outcome {
    let s = fixture_strata("s3-perm");
    let r = sampling_oracle(&s, denominator_bound, 1 << 22).map_err(|e| e.to_string())?;
    if !r.passed() {
        return Err(format!("oracle mismatches: {:?}", r.mismatches));
    }
    let poset = closure_poset(&s);
    let cmp = isotropy_only_comparison(&s, &poset);
    if !cmp.coincides_with_orbit_types || !cmp.orbit_cartan.passed() {
        return Err("strata differ from orbit types or frontier fails".into());
    }
    Ok(format!(
        "{} samples at D={}, {} strata over {} orbit types, frontier PASS",
        r.samples,
        denominator_bound,
        r.oracle_strata,
        r.orbit_types.unwrap_or(0)
    ))
}

pub fn criterion_4(seed: u64) -> Outcome {
    let mut r = rng(seed);
    let mut models: Vec<(String, Model)> = fixture_names()
        .into_iter()
        .map(|n| (n.to_string(), fixture_model(n)))
        .collect();
    models.extend(random_models(seed));
    let mut bad = Vec::new();
    for (name, model) in &models {
        bad.extend(partition_lemma_violations(name, model, &mut r));
    }
    if bad.is_empty() {
        Ok(format!("{} models, zero violations", models.len()))
    } else {
        Err(format!("{} violations, first: {}", bad.len(), bad[0]))
    }
}

pub fn criterion_5(seed: u64) -> Outcome {
    let mut r = rng(seed);
    for name in fixture_names() {
        let model = fixture_model(name);
        let gpd = ActionGroupoid::new(&model);
        let mut verbatim_fails = false;
        let mut nontrivial = false;
        for _ in 0..100 {
            let p = random_point(&model, &mut r);
            let h: Vec<GroupElement> = (0..3)
                .map(|_| random_acting_element(&model, &mut r))
                .collect();
            if !gpd
                .associative_on(&p, [&h[0], &h[1], &h[2]])
                .map_err(|e| e.to_string())?
            {
                return Err(format!("{name}: associativity fails at {p:?}"));
            }
            let a = Morphism {
                group: h[0].clone(),
                point: p.clone(),
            };
            let v = gpd.violations(&a).map_err(|e| e.to_string())?;
            if !v.is_empty() {
                return Err(format!("{name}: {v:?}"));
            }
            nontrivial |= gpd.target(&a).unwrap() != p;
            let verbatim = gpd
                .violations_with(&a, |m| gpd.verbatim_inverse(m))
                .map_err(|e| e.to_string())?;
            verbatim_fails |= verbatim.contains(&"s∘i = t");
        }
        if nontrivial && !verbatim_fails {
            return Err(format!("{name}: the verbatim inverse never broke s∘i = t"));
        }
    }
    Ok("100 triples per fixture; laws hold; verbatim (g⁻¹, p) breaks s∘i = t".into())
}

pub fn criterion_6(seed: u64) -> Outcome {
    let mut r = rng(seed);
    let scales = [rat(0, 1), rat(1, 3), rat(1, 2)];
    for name in fixture_names() {
        let s = fixture_strata(name);
        let model = s.model().clone();
        for _ in 0..100 {
            let p = random_loop_point(&model, &mut r);
            let (pid, _) = s
                .stratum_of_point(p.group_part(), p.point_part())
                .map_err(|e| e.to_string())?;
            for t in &scales {
                let y: Vec<Rational> = p.point_part().iter().map(|v| v * t).collect();
                if !model.loop_contains(p.group_part(), &y).unwrap() {
                    return Err(format!("{name}: scaling {p} by {t} leaves the loop space"));
                }
                if !s.pieces[pid]
                    .components
                    .iter()
                    .any(|&c| s.closure_contains(c, p.group_part(), &y))
                {
                    return Err(format!(
                        "{name}: scaling {p} by {t} leaves the closure of its piece"
                    ));
                }
            }
        }
    }
    Ok("100 points per fixture, t in {0, 1/3, 1/2}".into())
}

pub fn criterion_7() -> Outcome {
    let mut checked = 0;
    for name in ["s3-perm", "d4-signed", "q8-gl4"] {
        let s = fixture_strata(name);
        for flat in s.model().flats().unwrap() {
            let r = slice_consistency(&s, &flat.witness, 1024).map_err(|e| e.to_string())?;
            if !r.passed() {
                return Err(format!("{name}: mismatch at {:?}", flat.witness));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} flat representatives"))
}

pub fn criterion_8() -> Outcome {
    let dir =
        std::env::temp_dir().join(format!("inertia-strata-determinism-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    for name in fixture_names() {
        let mut outputs = Vec::new();
        for run in 0..2 {
            let path = dir.join(format!("{name}-{run}.json"));
            let status = std::process::Command::new(env!("CARGO_BIN_EXE_inertia-strata"))
                .args(["strata", "--fixture", name, "--json"])
                .arg(&path)
                .output()
                .map_err(|e| e.to_string())?
                .status;
            if !status.success() {
                return Err(format!("{name}: {status}"));
            }
            outputs.push(std::fs::read(&path).map_err(|e| e.to_string())?);
        }
        if outputs[0] != outputs[1] {
            return Err(format!("{name}: reports differ"));
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok("byte-identical strata reports on every fixture".into())
}

pub fn criterion_9() -> Outcome {
    let mut got = Vec::new();
    for (name, expected) in [("t1-c", 1), ("z2-trivial", 2), ("z2-line", 2)] {
        let s = fixture_strata(name);
        let (count, _) = inertia_components(&s, &closure_poset(&s));
        if count != expected {
            return Err(format!("{name}: {count} components, expected {expected}"));
        }
        got.push(format!("{name}={count}"));
    }
    Ok(got.join(", "))
}
