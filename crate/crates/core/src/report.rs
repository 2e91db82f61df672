//! Deterministic JSON reports. Every report carries `"schema": 1`; keys are
//! emitted in a fixed order and rationals are strings. No timings, so equal
//! inputs give byte-identical output.

use serde_json::{json, Value};

use crate::config::ModelConfig;
use crate::strata::{
    closure_poset, inertia_components, isotropy_only_comparison, ClosurePoset, FrontierKind,
    FrontierReport, IsotropyComparison, OracleReport, SliceReport, Stratification,
};

pub const SCHEMA: u32 = 1;

/// A stratification together with the data every report needs.
pub struct Analysis {
    pub config: ModelConfig,
    pub strata: Stratification,
    pub poset: ClosurePoset,
}

impl Analysis {
    pub fn new(config: ModelConfig) -> crate::Result<Self> {
        let strata = Stratification::new(config.build_model()?, config.options.engine())?;
        let poset = closure_poset(&strata);
        Ok(Analysis {
            config,
            strata,
            poset,
        })
    }

    fn header(&self, command: &str) -> serde_json::Map<String, Value> {
        let mut m = serde_json::Map::new();
        m.insert("schema".into(), json!(SCHEMA));
        m.insert("command".into(), json!(command));
        m.insert(
            "model".into(),
            serde_json::to_value(&self.config).expect("config serializes"),
        );
        m
    }
}

pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value");
    s.push('\n');
    s
}

fn frontier_json(level: &str, r: &FrontierReport) -> Value {
    json!({
        "level": level,
        "parts": r.parts,
        "pairs_checked": r.pairs_checked,
        "pass": r.passed(),
    })
}

fn witnesses_json(level: &str, r: &FrontierReport) -> Vec<Value> {
    r.failures
        .iter()
        .map(|f| {
            json!({
                "level": level,
                "part": f.part_a,
                "closure_of": f.part_b,
                "kind": match f.kind {
                    FrontierKind::Mixed => "mixed",
                    FrontierKind::DimensionNotDecreasing => "dimension-not-decreasing",
                },
                "witness": f.witness.to_string(),
            })
        })
        .collect()
}

fn pieces_json(s: &Stratification) -> Value {
    s.pieces
        .iter()
        .map(|p| {
            json!({
                "id": p.id,
                "isotropy": p.isotropy.to_string(),
                "cartan": p.cartan.to_string(),
                "class_component": p.class_component(),
                "dim": p.dim,
                "representative": p.representative.to_string(),
                "lambda_m_components": p.components.len(),
                "lambda_x_strata": p.strata.len(),
            })
        })
        .collect()
}

/// Frontier on components, strata and pieces; passes when all three pass.
pub fn frontier(a: &Analysis) -> (Value, bool) {
    let checks = a.strata.verify_frontier();
    let pass = checks.iter().all(|(_, r)| r.passed());
    let v = json!({
        "pass": pass,
        "checks": checks.iter().map(|(l, r)| frontier_json(l, r)).collect::<Vec<_>>(),
        "witnesses": checks.iter().flat_map(|(l, r)| witnesses_json(l, r)).collect::<Vec<_>>(),
    });
    (v, pass)
}

fn h0_json(a: &Analysis) -> Value {
    let (count, membership) = inertia_components(&a.strata, &a.poset);
    json!({ "count": count, "membership": membership })
}

fn comparison_json(a: &Analysis, c: &IsotropyComparison) -> Value {
    let finite = matches!(a.strata.model(), crate::actions::Model::Finite(_));
    json!({
        "isotropy_only": {
            "pass": c.isotropy_only.passed(),
            "parts": c.isotropy_parts,
            "refinement_needed": c.refinement_needed,
            "witnesses": witnesses_json("isotropy", &c.isotropy_only),
        },
        "orbit_cartan": { "pass": c.orbit_cartan.passed(), "parts": c.orbit_cartan.parts },
        "finite_orbit_type": {
            "applicable": finite,
            "coincides": if finite { json!(c.coincides_with_orbit_types) } else { Value::Null },
        },
    })
}

pub fn strata(a: &Analysis) -> Value {
    let s = &a.strata;
    let mut m = a.header("strata");
    m.insert("pieces".into(), pieces_json(s));
    m.insert(
        "lambda_m_components".into(),
        s.components
            .iter()
            .map(|c| {
                json!({
                    "id": c.id,
                    "piece": c.piece,
                    "stratum": c.stratum,
                    "dim": c.dim,
                    "representative": c.representative.to_string(),
                })
            })
            .collect(),
    );
    m.insert(
        "lambda_x_strata".into(),
        s.strata
            .iter()
            .map(|st| {
                json!({
                    "id": st.id,
                    "piece": st.piece,
                    "dim": st.dim,
                    "components": st.components,
                    "representative": st.representative.to_string(),
                })
            })
            .collect(),
    );
    m.insert("closure_edges".into(), json!(a.poset.covering_edges()));
    m.insert("frontier".into(), frontier(a).0);
    m.insert("components_h0".into(), h0_json(a));
    let cmp = isotropy_only_comparison(s, &a.poset);
    m.insert("comparisons".into(), comparison_json(a, &cmp));
    Value::Object(m)
}

pub fn verify(a: &Analysis) -> (Value, bool) {
    let mut m = a.header("verify");
    let (f, pass) = frontier(a);
    m.insert("frontier".into(), f);
    (Value::Object(m), pass)
}

pub fn poset(a: &Analysis) -> Value {
    let mut m = a.header("poset");
    m.insert(
        "strata".into(),
        a.strata
            .strata
            .iter()
            .map(|st| json!({ "id": st.id, "dim": st.dim, "in_closure_of": a.poset.above[st.id] }))
            .collect(),
    );
    m.insert("closure_edges".into(), json!(a.poset.covering_edges()));
    Value::Object(m)
}

pub fn components(a: &Analysis) -> Value {
    let mut m = a.header("components");
    m.insert("components_h0".into(), h0_json(a));
    Value::Object(m)
}

/// Passes when the isotropy-only partition fails the frontier condition,
/// i.e. when the refinement is needed. `expect_fail` inverts that.
pub fn compare_isotropy(a: &Analysis) -> (Value, bool) {
    let cmp = isotropy_only_comparison(&a.strata, &a.poset);
    let mut m = a.header("compare-isotropy");
    m.insert("comparisons".into(), comparison_json(a, &cmp));
    let finite_ok = !matches!(a.strata.model(), crate::actions::Model::Finite(_))
        || cmp.coincides_with_orbit_types;
    let pass = cmp.isotropy_only.passed() && cmp.orbit_cartan.passed() && finite_ok;
    (Value::Object(m), pass)
}

pub fn oracle(a: &Analysis, r: &OracleReport) -> Value {
    let mut m = a.header("oracle");
    m.insert(
        "oracle".into(),
        json!({
            "pass": r.passed(),
            "denominator_bound": r.denominator_bound,
            "samples": r.samples,
            "oracle_components": r.oracle_components,
            "oracle_strata": r.oracle_strata,
            "engine_components": r.engine_components,
            "engine_components_hit": r.engine_components_hit,
            "orbit_types": r.orbit_types,
            "mismatches": r.mismatches,
        }),
    );
    Value::Object(m)
}

fn slice_json(point: &str, r: &SliceReport) -> Value {
    let side = |v: &[((Vec<usize>, usize), usize)]| -> Vec<Value> {
        v.iter()
            .map(|((k, h), d)| json!({ "isotropy": k, "h": h, "dim": d }))
            .collect()
    };
    json!({
        "pass": r.passed(),
        "point": point,
        "stabilizer": r.stabilizer,
        "rows": r.rows.iter().map(|row| json!({
            "h": row.h,
            "global": side(&row.global),
            "local": side(&row.local),
        })).collect::<Vec<_>>(),
    })
}

/// Slice checks at several points, each labelled by its formatted point.
pub fn slices(a: &Analysis, checks: &[(String, SliceReport)]) -> (Value, bool) {
    let pass = checks.iter().all(|(_, r)| r.passed());
    let mut m = a.header("slice-check");
    m.insert("pass".into(), json!(pass));
    m.insert(
        "slices".into(),
        checks.iter().map(|(p, r)| slice_json(p, r)).collect(),
    );
    (Value::Object(m), pass)
}
