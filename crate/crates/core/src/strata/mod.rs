//! Orbit Cartan type pieces of the loop space `Λ M = {(h, x) : hx = x}`,
//! their connected components, the strata of the inertia space `Λ X`, and
//! the checks run on them.

mod closure;
mod finite;
mod oracle;
mod orbit;
mod slice;
#[cfg(test)]
pub(crate) mod test_models;
mod torus;

pub use closure::{
    closure_poset, frontier_report, inertia_components, isotropy_only_comparison, to_dot,
    ClosurePoset, FrontierFailure, FrontierKind, FrontierReport, IsotropyComparison,
};
pub use oracle::{sampling_oracle, OracleReport};
pub use orbit::{orbit_canonical, OrbitKey};
pub use slice::{slice_consistency, SliceReport};

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::actions::{ClosedSubgroup, GroupElement, LoopPoint, Model};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::groups::FiniteSubgroup;

use finite::{canonical_pair, FinitePiece, PairKey};
use torus::TorusPiece;

/// Tunables of the engine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EngineOptions {
    /// Largest bullet-group dimension for which class components are computed.
    pub arrangement_dim_cap: usize,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            arrangement_dim_cap: 2,
        }
    }
}

#[derive(Clone, Debug)]
enum Detail {
    Finite(FinitePiece),
    Torus(TorusPiece),
}

/// One orbit Cartan type piece.
#[derive(Clone, Debug)]
pub struct Piece {
    pub id: usize,
    /// Canonical representative of the isotropy class.
    pub isotropy: ClosedSubgroup,
    pub cartan: ClosedSubgroup,
    pub representative: LoopPoint,
    pub dim: usize,
    /// Indices into `Stratification::components`.
    pub components: Vec<usize>,
    /// Indices into `Stratification::strata`.
    pub strata: Vec<usize>,
    detail: Detail,
}

impl Piece {
    /// Human readable class-component label.
    pub fn class_component(&self) -> String {
        match &self.detail {
            Detail::Finite(p) => format!("{{{}}}", GroupElement::Finite(p.h)),
            Detail::Torus(t) => {
                let c = &t.components.components()[t.component];
                format!(
                    "component {} of class [{}]",
                    c.index,
                    self.representative.group_part()
                )
            }
        }
    }

    /// Number of chambers of the flat part (1 for torus pieces).
    pub fn chamber_count(&self) -> usize {
        match &self.detail {
            Detail::Finite(p) => p.chambers.len(),
            Detail::Torus(_) => 1,
        }
    }
}

/// A connected component of `Λ M`.
#[derive(Clone, Debug)]
pub struct LmComponent {
    pub id: usize,
    pub piece: usize,
    pub stratum: usize,
    pub representative: LoopPoint,
    pub dim: usize,
    /// Finite pieces: coset index and chamber.
    coset: usize,
    chamber: usize,
}

/// A stratum of `Λ X`: a `G`-orbit of components.
#[derive(Clone, Debug)]
pub struct LxStratum {
    pub id: usize,
    pub piece: usize,
    pub components: Vec<usize>,
    pub representative: LoopPoint,
    pub dim: usize,
}

#[derive(Clone, Debug)]
pub struct Stratification {
    model: Model,
    options: EngineOptions,
    pub pieces: Vec<Piece>,
    pub components: Vec<LmComponent>,
    pub strata: Vec<LxStratum>,
    finite_index: BTreeMap<PairKey, usize>,
}

impl Stratification {
    pub fn new(model: Model, options: EngineOptions) -> Result<Self> {
        let mut details: Vec<(usize, Detail)> = match &model {
            Model::Finite(a) => {
                let keys: Vec<PairKey> = finite::realized_pairs(a)?.into_iter().collect();
                let built: Vec<FinitePiece> = keys
                    .par_iter()
                    .map(|k| FinitePiece::build(a, k))
                    .collect::<Result<Vec<_>>>()?;
                built
                    .into_iter()
                    .map(|p| (p.dim(), Detail::Finite(p)))
                    .collect()
            }
            Model::Torus(a) => torus::enumerate(&model, a, options.arrangement_dim_cap)?
                .into_iter()
                .map(|p| (p.dim, Detail::Torus(p)))
                .collect(),
        };
        details.sort_by(|a, b| {
            a.0.cmp(&b.0)
                .then_with(|| sort_key(&a.1).cmp(&sort_key(&b.1)))
        });
        let mut s = Stratification {
            model,
            options,
            pieces: Vec::new(),
            components: Vec::new(),
            strata: Vec::new(),
            finite_index: BTreeMap::new(),
        };
        for (dim, detail) in details {
            s.push_piece(dim, detail);
        }
        Ok(s)
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn options(&self) -> &EngineOptions {
        &self.options
    }

    fn push_piece(&mut self, dim: usize, detail: Detail) {
        let id = self.pieces.len();
        let (isotropy, cartan, representative) = match (&self.model, &detail) {
            (Model::Finite(a), Detail::Finite(p)) => {
                self.finite_index.insert((p.k.members().to_vec(), p.h), id);
                let x = p.point(&p.chambers[0].witness);
                (
                    ClosedSubgroup::Finite(p.k.clone()),
                    ClosedSubgroup::Finite(a.group().subgroup_generated(&[p.h])),
                    LoopPoint::unchecked(GroupElement::Finite(p.h), x),
                )
            }
            (Model::Torus(a), Detail::Torus(t)) => (
                ClosedSubgroup::Torus(t.k.clone()),
                ClosedSubgroup::Torus(t.cartan.clone()),
                LoopPoint::unchecked(
                    GroupElement::Torus(t.representative.clone()),
                    a.support_witness(&t.support),
                ),
            ),
            _ => unreachable!(),
        };
        let mut piece = Piece {
            id,
            isotropy,
            cartan,
            representative,
            dim,
            components: Vec::new(),
            strata: Vec::new(),
            detail,
        };
        match (&self.model, &piece.detail) {
            (Model::Finite(a), Detail::Finite(p)) => {
                let g = a.group();
                let first = self.components.len();
                for (ci, &g0) in p.cosets.iter().enumerate() {
                    for (ch, chamber) in p.chambers.iter().enumerate() {
                        let x = a.act(g0, &p.point(&chamber.witness));
                        self.components.push(LmComponent {
                            id: self.components.len(),
                            piece: id,
                            stratum: usize::MAX,
                            representative: LoopPoint::unchecked(
                                GroupElement::Finite(g.conj(g0, p.h)),
                                x,
                            ),
                            dim,
                            coset: ci,
                            chamber: ch,
                        });
                    }
                }
                let per_coset = p.chambers.len();
                for orbit in &p.chamber_orbits {
                    let sid = self.strata.len();
                    let mut members = Vec::new();
                    for ci in 0..p.cosets.len() {
                        for &ch in orbit {
                            let cid = first + ci * per_coset + ch;
                            self.components[cid].stratum = sid;
                            members.push(cid);
                        }
                    }
                    members.sort_unstable();
                    self.strata.push(LxStratum {
                        id: sid,
                        piece: id,
                        representative: self.components[first + orbit[0]].representative.clone(),
                        components: members,
                        dim,
                    });
                    piece.strata.push(sid);
                }
                piece.components = (first..self.components.len()).collect();
            }
            (Model::Torus(_), Detail::Torus(_)) => {
                let cid = self.components.len();
                let sid = self.strata.len();
                self.components.push(LmComponent {
                    id: cid,
                    piece: id,
                    stratum: sid,
                    representative: piece.representative.clone(),
                    dim,
                    coset: 0,
                    chamber: 0,
                });
                self.strata.push(LxStratum {
                    id: sid,
                    piece: id,
                    components: vec![cid],
                    representative: piece.representative.clone(),
                    dim,
                });
                piece.components = vec![cid];
                piece.strata = vec![sid];
            }
            _ => unreachable!(),
        }
        self.pieces.push(piece);
    }

    /// The piece and `Λ M` component containing a loop point.
    pub fn stratum_of_point(&self, h: &GroupElement, x: &[Rational]) -> Result<(usize, usize)> {
        if !self.model.loop_contains(h, x)? {
            return Err(Error::NotInLoopSpace);
        }
        match (&self.model, h) {
            (Model::Finite(a), GroupElement::Finite(l)) => {
                let g = a.group();
                let k = g.centralizer_in(&a.isotropy(x), *l);
                let key = canonical_pair(g, &k, *l);
                let pid = *self.finite_index.get(&key).ok_or(Error::NotAMember)?;
                let Detail::Finite(p) = &self.pieces[pid].detail else {
                    unreachable!()
                };
                let g0 = (0..g.order())
                    .find(|&y| g.conj(y, p.h) == *l && g.conjugate_subgroup(y, &p.k) == k)
                    .expect("canonical pair is conjugate");
                let coset = p.coset_of(g, g0);
                let g0 = p.cosets[coset];
                let back = a.act(g.inv(g0), x);
                let chamber = p.chamber_of_point(&back).ok_or(Error::NotAMember)?;
                let cid = self.pieces[pid].components[coset * p.chambers.len() + chamber];
                Ok((pid, cid))
            }
            (Model::Torus(a), GroupElement::Torus(theta)) => {
                let found =
                    torus::locate(&self.model, a, theta, x, self.options.arrangement_dim_cap)?
                        .ok_or(Error::NotAMember)?;
                let pid = self
                    .pieces
                    .iter()
                    .position(|p| match &p.detail {
                        Detail::Torus(t) => {
                            (t.support.clone(), t.coset, t.signature.clone(), t.component) == found
                        }
                        _ => false,
                    })
                    .ok_or(Error::NotAMember)?;
                Ok((pid, self.pieces[pid].components[0]))
            }
            _ => Err(Error::NotAMember),
        }
    }

    /// Whether the loop point `(l, z)` lies in the closure of component `cid`.
    pub fn closure_contains(&self, cid: usize, l: &GroupElement, z: &[Rational]) -> bool {
        let comp = &self.components[cid];
        let piece = &self.pieces[comp.piece];
        match (&self.model, &piece.detail, l) {
            (Model::Finite(a), Detail::Finite(p), GroupElement::Finite(li)) => {
                let g = a.group();
                let g0 = p.cosets[comp.coset];
                if g.conj(g0, p.h) != *li {
                    return false;
                }
                p.chamber_closure_contains(comp.chamber, &a.act(g.inv(g0), z))
            }
            (Model::Torus(a), Detail::Torus(t), GroupElement::Torus(_)) => {
                a.support(z)
                    .iter()
                    .all(|j| t.support.binary_search(j).is_ok())
                    && t.components.closure_contains(t.component, l)
            }
            _ => false,
        }
    }

    /// Canonical `G`-conjugacy class label of a piece's isotropy group.
    pub fn isotropy_class(&self, pid: usize) -> ClosedSubgroup {
        match (&self.model, &self.pieces[pid].detail) {
            (Model::Finite(a), Detail::Finite(p)) => {
                let g = a.group();
                let min = (0..g.order())
                    .map(|y| g.conjugate_subgroup(y, &p.k))
                    .min()
                    .unwrap();
                ClosedSubgroup::Finite(min)
            }
            (_, Detail::Torus(t)) => ClosedSubgroup::Torus(t.k.clone()),
            _ => unreachable!(),
        }
    }

    /// `(piece, isotropy, group part)` descriptor used by the slice check:
    /// canonical conjugacy class of the pair plus dimension.
    pub(crate) fn finite_descriptor(&self, pid: usize) -> Option<(PairKey, usize)> {
        match &self.pieces[pid].detail {
            Detail::Finite(p) => Some(((p.k.members().to_vec(), p.h), self.pieces[pid].dim)),
            Detail::Torus(_) => None,
        }
    }

    pub(crate) fn finite_piece_members(&self, pid: usize) -> Option<(&FiniteSubgroup, usize)> {
        match &self.pieces[pid].detail {
            Detail::Finite(p) => Some((&p.k, p.h)),
            Detail::Torus(_) => None,
        }
    }
}

fn sort_key(d: &Detail) -> (Vec<usize>, usize, Option<crate::groups::TorusElement>) {
    match d {
        Detail::Finite(p) => (p.k.members().to_vec(), p.h, None),
        Detail::Torus(t) => (t.support.clone(), t.coset, Some(t.representative.clone())),
    }
}

#[cfg(test)]
mod tests {
    use super::test_models::*;
    use super::*;
    use crate::exact::rat;

    fn dims(s: &Stratification) -> Vec<usize> {
        s.pieces.iter().map(|p| p.dim).collect()
    }

    #[test]
    fn circle_on_plane_has_three_pieces() {
        let s = strata(torus(1, &[&[1]], 0));
        let mut d = dims(&s);
        d.sort_unstable();
        assert_eq!(d, vec![0, 1, 2]);
        assert_eq!(s.components.len(), 3);
        assert_eq!(s.strata.len(), 3);
        let (pid, _) = s
            .stratum_of_point(&tel(&[(0, 1)]), &[rat(1, 1), rat(0, 1)])
            .unwrap();
        assert_eq!(s.pieces[pid].dim, 2);
        let (pid, _) = s
            .stratum_of_point(&tel(&[(1, 3)]), &[rat(0, 1), rat(0, 1)])
            .unwrap();
        assert_eq!(s.pieces[pid].dim, 1);
        let (pid, _) = s
            .stratum_of_point(&tel(&[(0, 1)]), &[rat(0, 1), rat(0, 1)])
            .unwrap();
        assert_eq!(s.pieces[pid].dim, 0);
    }

    #[test]
    fn circle_frontier_and_isotropy_only() {
        let s = strata(torus(1, &[&[1]], 0));
        for (_, r) in s.verify_frontier() {
            assert!(r.passed(), "{r:?}");
        }
        let poset = closure_poset(&s);
        assert_eq!(inertia_components(&s, &poset).0, 1);
        let cmp = isotropy_only_comparison(&s, &poset);
        assert!(cmp.orbit_cartan.passed());
        assert!(!cmp.isotropy_only.passed());
        assert!(cmp.refinement_needed);
        let witnesses: Vec<String> = cmp
            .isotropy_only
            .failures
            .iter()
            .map(|f| f.witness.to_string())
            .collect();
        assert!(witnesses.contains(&"(e, 0)".to_string()), "{witnesses:?}");
    }

    #[test]
    fn reflection_on_line() {
        let s = strata(z2_line());
        assert_eq!(s.pieces.len(), 3);
        let regular = s.pieces.iter().find(|p| p.dim == 1).unwrap();
        assert_eq!(regular.components.len(), 2);
        assert_eq!(regular.strata.len(), 1);
        let poset = closure_poset(&s);
        assert_eq!(inertia_components(&s, &poset).0, 2);
        for (_, r) in s.verify_frontier() {
            assert!(r.passed());
        }
        let (a, _) = s
            .stratum_of_point(&GroupElement::Finite(0), &[rat(0, 1)])
            .unwrap();
        let (b, _) = s
            .stratum_of_point(&GroupElement::Finite(1), &[rat(0, 1)])
            .unwrap();
        assert_ne!(a, b);
        assert!(s
            .stratum_of_point(&GroupElement::Finite(1), &[rat(1, 2)])
            .is_err());
    }

    #[test]
    fn trivial_reflection() {
        let s = strata(z2_trivial());
        assert_eq!(dims(&s), vec![1, 1]);
        let poset = closure_poset(&s);
        assert_eq!(inertia_components(&s, &poset).0, 2);
        let cmp = isotropy_only_comparison(&s, &poset);
        assert!(cmp.orbit_cartan.passed() && cmp.isotropy_only.passed());
    }

    #[test]
    fn chart_with_diagonal_isotropy() {
        let s = strata(torus(2, &[&[1, -1], &[0, 1]], 0));
        let (pid, _) = s
            .stratum_of_point(
                &tel(&[(1, 4), (1, 4)]),
                &[rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1)],
            )
            .unwrap();
        let p = &s.pieces[pid];
        assert_eq!(p.dim, 3);
        assert_eq!(p.isotropy.to_string(), "ann[(1,-1)]");
        for (_, r) in s.verify_frontier() {
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn permutation_model() {
        let s = strata(s3());
        let m = s3();
        let t = match &m {
            Model::Finite(a) => a.group().index_of(&perm(&[1, 0, 2])).unwrap(),
            _ => unreachable!(),
        };
        let (pid, _) = s
            .stratum_of_point(&GroupElement::Finite(t), &[rat(1, 1), rat(1, 1), rat(0, 1)])
            .unwrap();
        assert_eq!(s.pieces[pid].dim, 2);
        assert!(matches!(&s.pieces[pid].isotropy, ClosedSubgroup::Finite(k) if k.order() == 2));
        for (_, r) in s.verify_frontier() {
            assert!(r.passed(), "{r:?}");
        }
        let cmp = isotropy_only_comparison(&s, &closure_poset(&s));
        assert!(cmp.coincides_with_orbit_types);
    }

    #[test]
    fn oracle_matches_small_models() {
        for (model, d) in [
            (z2_line(), 3),
            (s3(), 2),
            (torus(1, &[&[1]], 0), 4),
            (z2_trivial(), 3),
        ] {
            let s = strata(model);
            let r = sampling_oracle(&s, d, 1 << 20).unwrap();
            assert!(r.passed(), "{:?}", r.mismatches);
            assert_eq!(r.engine_components_hit, r.engine_components);
        }
    }

    #[test]
    fn oracle_budget() {
        let s = strata(s3());
        assert!(matches!(
            sampling_oracle(&s, 6, 10),
            Err(Error::SampleBudgetExceeded { .. })
        ));
    }

    #[test]
    fn repeated_runs_agree() {
        let a = strata(torus(2, &[&[1, 0], &[0, 1], &[1, 1]], 0));
        let b = strata(torus(2, &[&[1, 0], &[0, 1], &[1, 1]], 0));
        assert_eq!(a.pieces.len(), b.pieces.len());
        assert_eq!(dims(&a), dims(&b));
    }
}
