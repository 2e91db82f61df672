use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::actions::{ClosedSubgroup, LoopPoint};

use super::Stratification;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FrontierKind {
    /// Part `a` meets the closure of part `b` without lying inside it.
    Mixed,
    /// `a ⊆ closure(b)` but `dim a ≥ dim b`.
    DimensionNotDecreasing,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrontierFailure {
    pub part_a: usize,
    pub part_b: usize,
    pub kind: FrontierKind,
    pub witness: LoopPoint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrontierReport {
    pub parts: usize,
    pub pairs_checked: usize,
    pub failures: Vec<FrontierFailure>,
}

impl FrontierReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn part_closure_contains(s: &Stratification, part: &[usize], p: &LoopPoint) -> bool {
    part.iter()
        .any(|&c| s.closure_contains(c, p.group_part(), p.point_part()))
}

fn part_dim(s: &Stratification, part: &[usize]) -> usize {
    part.iter().map(|&c| s.components[c].dim).max().unwrap_or(0)
}

/// Checks the condition of frontier on a partition of `Λ M` given as lists of
/// component indices: `closure(b) ∩ a` must be empty or all of `a`, and
/// proper frontier must drop dimension.
pub fn frontier_report(s: &Stratification, parts: &[Vec<usize>]) -> FrontierReport {
    let n = parts.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let mut failures: Vec<FrontierFailure> = pairs
        .par_iter()
        .filter_map(|&(a, b)| {
            let reps: Vec<&LoopPoint> = parts[a]
                .iter()
                .map(|&c| &s.components[c].representative)
                .collect();
            let inside: Vec<bool> = reps
                .iter()
                .map(|r| part_closure_contains(s, &parts[b], r))
                .collect();
            let first_in = inside.iter().position(|&x| x)?;
            let witness = reps[first_in].clone();
            if inside.iter().any(|&x| !x) {
                return Some(FrontierFailure {
                    part_a: a,
                    part_b: b,
                    kind: FrontierKind::Mixed,
                    witness,
                });
            }
            if part_dim(s, &parts[a]) >= part_dim(s, &parts[b]) {
                return Some(FrontierFailure {
                    part_a: a,
                    part_b: b,
                    kind: FrontierKind::DimensionNotDecreasing,
                    witness,
                });
            }
            None
        })
        .collect();
    failures.sort_by_key(|f| (f.part_a, f.part_b));
    FrontierReport {
        parts: n,
        pairs_checked: pairs.len(),
        failures,
    }
}

impl Stratification {
    pub fn component_parts(&self) -> Vec<Vec<usize>> {
        (0..self.components.len()).map(|c| vec![c]).collect()
    }

    pub fn stratum_parts(&self) -> Vec<Vec<usize>> {
        self.strata.iter().map(|s| s.components.clone()).collect()
    }

    pub fn piece_parts(&self) -> Vec<Vec<usize>> {
        self.pieces.iter().map(|p| p.components.clone()).collect()
    }

    /// Components grouped by the conjugacy class of their isotropy group only,
    /// ordered by first component; also returns the class of each part.
    pub fn isotropy_parts(&self) -> (Vec<Vec<usize>>, Vec<ClosedSubgroup>) {
        let mut by_class: BTreeMap<ClosedSubgroup, Vec<usize>> = BTreeMap::new();
        for p in &self.pieces {
            by_class
                .entry(self.isotropy_class(p.id))
                .or_default()
                .extend(p.components.iter().copied());
        }
        let mut parts: Vec<(ClosedSubgroup, Vec<usize>)> = by_class.into_iter().collect();
        parts.iter_mut().for_each(|(_, v)| v.sort_unstable());
        parts.sort_by_key(|(_, v)| v[0]);
        parts.into_iter().map(|(k, v)| (v, k)).unzip()
    }

    /// Frontier on components, strata and pieces together.
    pub fn verify_frontier(&self) -> Vec<(&'static str, FrontierReport)> {
        vec![
            ("components", frontier_report(self, &self.component_parts())),
            ("strata", frontier_report(self, &self.stratum_parts())),
            ("pieces", frontier_report(self, &self.piece_parts())),
        ]
    }
}

/// `above[a]` lists the strata `b ≠ a` with `a ⊆ closure(b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosurePoset {
    pub above: Vec<Vec<usize>>,
}

impl ClosurePoset {
    pub fn relation(&self, a: usize, b: usize) -> bool {
        self.above[a].contains(&b)
    }

    /// Edges `b → a` of the transitive reduction.
    pub fn covering_edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for (a, ups) in self.above.iter().enumerate() {
            for &b in ups {
                let skip = ups.iter().any(|&m| m != b && self.relation(m, b));
                if !skip {
                    edges.push((b, a));
                }
            }
        }
        edges.sort_unstable();
        edges
    }
}

pub fn closure_poset(s: &Stratification) -> ClosurePoset {
    let parts = s.stratum_parts();
    let above = (0..parts.len())
        .into_par_iter()
        .map(|a| {
            let rep = &s.strata[a].representative;
            (0..parts.len())
                .filter(|&b| b != a && part_closure_contains(s, &parts[b], rep))
                .collect()
        })
        .collect();
    ClosurePoset { above }
}

/// Graphviz rendering of the poset on `Λ X` strata, one node per stratum.
pub fn to_dot(s: &Stratification, poset: &ClosurePoset) -> String {
    let mut out = String::from("digraph strata {\n  rankdir=BT;\n");
    for st in &s.strata {
        let p = &s.pieces[st.piece];
        out.push_str(&format!(
            "  s{} [label=\"{} / {} / {}\"];\n",
            st.id,
            p.isotropy,
            p.class_component().replace('"', "'"),
            st.dim
        ));
    }
    for (b, a) in poset.covering_edges() {
        out.push_str(&format!("  s{b} -> s{a};\n"));
    }
    out.push_str("}\n");
    out
}

/// Connected components of `Λ X`: the number and the component of each stratum.
pub fn inertia_components(s: &Stratification, poset: &ClosurePoset) -> (usize, Vec<usize>) {
    let n = s.strata.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (a, ups) in poset.above.iter().enumerate() {
        for &b in ups {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut labels: BTreeMap<usize, usize> = BTreeMap::new();
    let membership: Vec<usize> = (0..n)
        .map(|x| {
            let r = find(&mut parent, x);
            let next = labels.len();
            *labels.entry(r).or_insert(next)
        })
        .collect();
    (labels.len(), membership)
}

#[derive(Clone, Debug)]
pub struct IsotropyComparison {
    pub orbit_cartan: FrontierReport,
    pub isotropy_only: FrontierReport,
    pub isotropy_parts: usize,
    /// Isotropy types alone fail the frontier condition while the refinement passes.
    pub refinement_needed: bool,
    /// No stratum lies in the closure of another stratum of the same isotropy
    /// type, i.e. strata are the connected pieces of the orbit-type partition.
    pub coincides_with_orbit_types: bool,
}

pub fn isotropy_only_comparison(s: &Stratification, poset: &ClosurePoset) -> IsotropyComparison {
    let orbit_cartan = frontier_report(s, &s.stratum_parts());
    let (parts, _) = s.isotropy_parts();
    let isotropy_only = frontier_report(s, &parts);
    let classes: Vec<ClosedSubgroup> = s
        .strata
        .iter()
        .map(|st| s.isotropy_class(st.piece))
        .collect();
    let coincides = poset
        .above
        .iter()
        .enumerate()
        .all(|(a, ups)| ups.iter().all(|&b| classes[a] != classes[b]));
    IsotropyComparison {
        refinement_needed: !isotropy_only.passed() && orbit_cartan.passed(),
        isotropy_parts: parts.len(),
        orbit_cartan,
        isotropy_only,
        coincides_with_orbit_types: coincides,
    }
}
