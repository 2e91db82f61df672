//! Cartan subgroups, the `∼` partition of a Cartan subgroup by fixed sets
//! in `G × M`, bullet groups and connected components of classes.
//!
//! Two elements are equivalent when they have the same centralizer in `G`
//! and the same fixed subspace in `M`, i.e. the same fixed set in `G × M`
//! under the diagonal action.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{One, Signed};

use crate::actions::{ClosedSubgroup, GroupElement, Model};
use crate::arrangement::{AffineForm, ToricArrangement};
use crate::error::{Error, Result};
use crate::exact::rational::{dot_int, frac, from_int};
use crate::exact::{QMatrix, Rational};
use crate::groups::{ComponentData, TorusElement, TorusSubgroup};

/// A topologically cyclic subgroup generated by the identity component of
/// `parent` and `element`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanSubgroup {
    pub parent: ClosedSubgroup,
    pub element: GroupElement,
    pub carrier: ClosedSubgroup,
}

pub fn cartan_subgroup(
    model: &Model,
    parent: &ClosedSubgroup,
    h: &GroupElement,
) -> Result<CartanSubgroup> {
    if !parent.contains(h) {
        return Err(Error::NotAMember);
    }
    let carrier = match (model, parent, h) {
        (Model::Finite(m), ClosedSubgroup::Finite(_), GroupElement::Finite(i)) => {
            ClosedSubgroup::Finite(m.group().subgroup_generated(&[*i]))
        }
        (Model::Torus(_), ClosedSubgroup::Torus(k), GroupElement::Torus(t)) => {
            ClosedSubgroup::Torus(k.identity_component().generate(t)?)
        }
        _ => return Err(Error::NotAMember),
    };
    Ok(CartanSubgroup {
        parent: parent.clone(),
        element: h.clone(),
        carrier,
    })
}

/// The isotropy groups of a Cartan subgroup acting on `G × M`.
#[derive(Clone, Debug)]
pub struct TildePartition {
    carrier: ClosedSubgroup,
    groups: Vec<ClosedSubgroup>,
}

/// One `∼` class: the elements lying in exactly the isotropy groups listed
/// in `signature`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TildeClass {
    pub member: GroupElement,
    pub signature: Vec<usize>,
    pub bullet: ClosedSubgroup,
    pub excluded: Vec<ClosedSubgroup>,
}

impl TildeClass {
    pub fn contains(&self, t: &GroupElement) -> bool {
        self.bullet.contains(t) && !self.excluded.iter().any(|h| h.contains(t))
    }
}

pub fn tilde_isotropy_groups(
    model: &Model,
    cartan: &CartanSubgroup,
) -> Result<Vec<ClosedSubgroup>> {
    Ok(TildePartition::new(model, &cartan.carrier)?.groups)
}

impl TildePartition {
    pub fn new(model: &Model, carrier: &ClosedSubgroup) -> Result<Self> {
        let mut groups = BTreeSet::new();
        match (model, carrier) {
            (Model::Finite(m), ClosedSubgroup::Finite(t)) => {
                let g = m.group();
                let flats = m.flats()?;
                for k in 0..g.order() {
                    let zk = g.centralizer_in(t, k);
                    for f in &flats {
                        let ClosedSubgroup::Finite(gy) = &f.stabilizer else {
                            unreachable!()
                        };
                        groups.insert(ClosedSubgroup::Finite(zk.intersect(gy)));
                    }
                }
            }
            (Model::Torus(m), ClosedSubgroup::Torus(t)) => {
                for s in m.closed_supports() {
                    groups.insert(ClosedSubgroup::Torus(t.meet(&m.support_isotropy(&s))?));
                }
            }
            _ => return Err(Error::NotAMember),
        }
        Ok(TildePartition {
            carrier: carrier.clone(),
            groups: groups.into_iter().collect(),
        })
    }

    pub fn carrier(&self) -> &ClosedSubgroup {
        &self.carrier
    }

    pub fn isotropy_groups(&self) -> &[ClosedSubgroup] {
        &self.groups
    }

    pub fn signature(&self, t: &GroupElement) -> Vec<usize> {
        (0..self.groups.len())
            .filter(|&i| self.groups[i].contains(t))
            .collect()
    }

    fn class_with_signature(
        &self,
        member: GroupElement,
        signature: Vec<usize>,
    ) -> Result<TildeClass> {
        let mut bullet = self.carrier.clone();
        for &i in &signature {
            bullet = bullet.meet(&self.groups[i])?;
        }
        let excluded = (0..self.groups.len())
            .filter(|i| signature.binary_search(i).is_err())
            .map(|i| self.groups[i].clone())
            .collect();
        Ok(TildeClass {
            member,
            signature,
            bullet,
            excluded,
        })
    }

    pub fn class_of(&self, t: &GroupElement) -> Result<TildeClass> {
        if !self.carrier.contains(t) {
            return Err(Error::NotAMember);
        }
        self.class_with_signature(t.clone(), self.signature(t))
    }

    /// Every nonempty class, ordered by signature.
    pub fn classes(&self, dim_cap: usize) -> Result<Vec<TildeClass>> {
        let mut out = Vec::new();
        match &self.carrier {
            ClosedSubgroup::Finite(t) => {
                let mut seen = BTreeSet::new();
                for &x in t.members() {
                    let sig = self.signature(&GroupElement::Finite(x));
                    if seen.insert(sig.clone()) {
                        out.push(self.class_with_signature(GroupElement::Finite(x), sig)?);
                    }
                }
            }
            ClosedSubgroup::Torus(_) => {
                let mut bullets: BTreeSet<ClosedSubgroup> = BTreeSet::new();
                bullets.insert(self.carrier.clone());
                loop {
                    let current: Vec<ClosedSubgroup> = bullets.iter().cloned().collect();
                    let mut grew = false;
                    for b in &current {
                        for h in &self.groups {
                            grew |= bullets.insert(b.meet(h)?);
                        }
                    }
                    if !grew {
                        break;
                    }
                }
                for b in bullets {
                    let sig: Vec<usize> = (0..self.groups.len())
                        .filter(|&i| self.groups[i].contains_subgroup(&b))
                        .collect();
                    let probe = self.class_with_signature(
                        GroupElement::Torus(TorusElement::zero(0)),
                        sig.clone(),
                    )?;
                    if probe.bullet != b {
                        continue;
                    }
                    let comps = class_components(&probe, dim_cap)?;
                    if let Some(first) = comps.components().first() {
                        out.push(self.class_with_signature(first.representative.clone(), sig)?);
                    }
                }
            }
        }
        out.sort_by(|a, b| a.signature.cmp(&b.signature));
        Ok(out)
    }
}

pub fn tilde_class_of(
    model: &Model,
    cartan: &CartanSubgroup,
    t: &GroupElement,
) -> Result<TildeClass> {
    TildePartition::new(model, &cartan.carrier)?.class_of(t)
}

/// The meet of the isotropy groups containing the class.
pub fn bullet_group(class: &TildeClass) -> &ClosedSubgroup {
    &class.bullet
}

/// A connected component of a class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassComponent {
    pub index: usize,
    pub representative: GroupElement,
    pub dim: usize,
    /// Component of the bullet group containing this piece.
    pub coset: usize,
    /// Chamber-union index inside that bullet component.
    pub cell: usize,
}

/// Components of a class together with the data needed to locate elements.
#[derive(Clone, Debug)]
pub struct ClassComponents {
    class: TildeClass,
    components: Vec<ClassComponent>,
    torus: Option<(ComponentData, Vec<CosetArrangement>)>,
}

#[derive(Clone, Debug)]
struct CosetArrangement {
    /// `None` when the whole bullet component is excluded.
    arrangement: Option<ToricArrangement>,
}

/// Exclusions of codimension at least two are kept as `A u + β ∈ Z^m`.
fn in_codim2(points: &[(Vec<Vec<i64>>, Vec<Rational>)], u: &[Rational]) -> bool {
    points.iter().any(|(a, b)| {
        a.iter()
            .zip(b)
            .all(|(row, beta)| (dot_int(row, u) + beta).is_integer())
    })
}

fn int_rank(rows: &[Vec<i64>], cols: usize) -> usize {
    if cols == 0 || rows.is_empty() {
        return 0;
    }
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    QMatrix::from_i64(&refs).rank()
}

/// Restricts the exclusion `b ∈ H` to the coset `r + Σ u_i v_i`.
fn coset_exclusion(h: &TorusSubgroup, data: &ComponentData, rep: &TorusElement) -> Exclusion {
    let d = data.dim;
    let rows = h.annihilator().basis();
    let alpha: Vec<Vec<i64>> = rows
        .iter()
        .map(|w| {
            data.component_basis
                .iter()
                .map(|v| w.iter().zip(v).map(|(a, b)| a * b).sum())
                .collect()
        })
        .collect();
    let beta: Vec<Rational> = rows.iter().map(|w| rep.pair(w)).collect();
    match int_rank(&alpha, d) {
        0 => {
            if beta.iter().all(Rational::is_integer) {
                Exclusion::Whole
            } else {
                Exclusion::Empty
            }
        }
        1 => {
            let first = alpha.iter().find(|a| a.iter().any(|&x| x != 0)).unwrap();
            let g = first.iter().fold(0i64, |acc, &x| acc.gcd(&x));
            let lead = first.iter().position(|&x| x != 0).unwrap();
            let sign = first[lead].signum();
            let prim: Vec<i64> = first.iter().map(|&x| sign * x / g).collect();
            let mults: Vec<i64> = alpha.iter().map(|a| a[lead] / prim[lead]).collect();
            let (k, m) = mults
                .iter()
                .enumerate()
                .find(|(_, &m)| m != 0)
                .map(|(k, &m)| (k, m))
                .unwrap();
            let mut offsets: Vec<Rational> = (0..m.abs())
                .map(|n| frac(&((from_int(n) - &beta[k]) / from_int(m))))
                .filter(|x| {
                    mults
                        .iter()
                        .zip(&beta)
                        .all(|(&mw, bw)| (from_int(mw) * x + bw).is_integer())
                })
                .collect();
            offsets.sort();
            offsets.dedup();
            Exclusion::Lines(offsets.into_iter().map(|x| (prim.clone(), x)).collect())
        }
        _ => Exclusion::Points(alpha, beta),
    }
}

enum Exclusion {
    Empty,
    Whole,
    Lines(Vec<(Vec<i64>, Rational)>),
    Points(Vec<Vec<i64>>, Vec<Rational>),
}

/// Moves `u` off the codimension two exclusions while staying in the cell.
fn nudge(
    cons: &[AffineForm],
    points: &[(Vec<Vec<i64>>, Vec<Rational>)],
    u: &[Rational],
) -> Option<Vec<Rational>> {
    if !in_codim2(points, u) {
        return Some(u.to_vec());
    }
    for scale in 1..40 {
        let n = from_int(1i64 << scale);
        for t in 1..=(u.len() as i64 * (points.len() as i64 + 1) + 1) {
            let mut power = Rational::one();
            let p: Vec<Rational> = u
                .iter()
                .map(|x| {
                    let v = x + &power / &n;
                    power *= from_int(t);
                    v
                })
                .collect();
            if cons.iter().all(|c| c.eval(&p).is_positive()) && !in_codim2(points, &p) {
                return Some(p);
            }
        }
    }
    None
}

pub fn class_components(class: &TildeClass, dim_cap: usize) -> Result<ClassComponents> {
    match &class.bullet {
        ClosedSubgroup::Finite(b) => {
            let components = b
                .members()
                .iter()
                .map(|&x| GroupElement::Finite(x))
                .filter(|x| class.contains(x))
                .enumerate()
                .map(|(index, representative)| ClassComponent {
                    index,
                    representative,
                    dim: 0,
                    coset: 0,
                    cell: 0,
                })
                .collect();
            Ok(ClassComponents {
                class: class.clone(),
                components,
                torus: None,
            })
        }
        ClosedSubgroup::Torus(b) => {
            let data = b.component_data();
            if data.dim > dim_cap {
                return Err(Error::UnsupportedBulletDimension {
                    dim: data.dim,
                    cap: dim_cap,
                });
            }
            let mut cosets = Vec::new();
            let mut components = Vec::new();
            for (c, rep) in data.coset_reps.iter().enumerate() {
                let mut families = Vec::new();
                let mut points = Vec::new();
                let mut whole = false;
                for h in &class.excluded {
                    let ClosedSubgroup::Torus(h) = h else {
                        return Err(Error::NotAMember);
                    };
                    match coset_exclusion(h, &data, rep) {
                        Exclusion::Empty => {}
                        Exclusion::Whole => whole = true,
                        Exclusion::Lines(l) => families.extend(l),
                        Exclusion::Points(a, beta) => points.push((a, beta)),
                    }
                }
                if whole {
                    cosets.push(CosetArrangement { arrangement: None });
                    continue;
                }
                let arr = ToricArrangement::new(data.dim, &families);
                for (cell, comp) in arr.components().iter().enumerate() {
                    let cons = arr.cell_constraints(comp.cells[0]);
                    let u = nudge(&cons, &points, &comp.representative)
                        .ok_or(Error::WitnessSearchExhausted { dim: data.dim })?;
                    components.push(ClassComponent {
                        index: components.len(),
                        representative: GroupElement::Torus(data.element(c, &u)),
                        dim: data.dim,
                        coset: c,
                        cell,
                    });
                }
                cosets.push(CosetArrangement {
                    arrangement: Some(arr),
                });
            }
            Ok(ClassComponents {
                class: class.clone(),
                components,
                torus: Some((data, cosets)),
            })
        }
    }
}

impl ClassComponents {
    pub fn class(&self) -> &TildeClass {
        &self.class
    }

    pub fn components(&self) -> &[ClassComponent] {
        &self.components
    }

    /// The component containing `t`, `None` if `t` is outside the class.
    pub fn component_of(&self, t: &GroupElement) -> Option<usize> {
        if !self.class.contains(t) {
            return None;
        }
        match (&self.torus, t) {
            (None, _) => self.components.iter().position(|c| &c.representative == t),
            (Some((data, cosets)), GroupElement::Torus(theta)) => {
                let (c, u) = data.locate(theta)?;
                let cell = cosets[c].arrangement.as_ref()?.component_of(&u)?;
                self.components
                    .iter()
                    .position(|k| k.coset == c && k.cell == cell)
            }
            _ => None,
        }
    }

    /// Whether `t` lies in the closure of component `index` (inside the bullet group).
    pub fn closure_contains(&self, index: usize, t: &GroupElement) -> bool {
        let comp = &self.components[index];
        match (&self.torus, t) {
            (None, _) => &comp.representative == t,
            (Some((data, cosets)), GroupElement::Torus(theta)) => match data.locate(theta) {
                Some((c, u)) if c == comp.coset => cosets[c]
                    .arrangement
                    .as_ref()
                    .is_some_and(|a| data.dim == 0 || a.closure_contains(comp.cell, &u)),
                _ => false,
            },
            _ => false,
        }
    }
}

/// The component of the class of `h` that contains `h`.
pub fn star_component(
    model: &Model,
    cartan: &CartanSubgroup,
    h: &GroupElement,
    dim_cap: usize,
) -> Result<(ClassComponents, usize)> {
    let class = tilde_class_of(model, cartan, h)?;
    let comps = class_components(&class, dim_cap)?;
    let idx = comps.component_of(h).ok_or(Error::NotAMember)?;
    Ok((comps, idx))
}

/// How conjugation by the elements of a normalizing subgroup permutes classes.
#[derive(Clone, Debug)]
pub struct ClassAction {
    pub classes: Vec<TildeClass>,
    /// For each acting element, the image index of every class.
    pub permutations: Vec<(GroupElement, Vec<usize>)>,
    /// Components of all classes, flattened in class order.
    pub components: Vec<GroupElement>,
    /// For each acting element, the image index of every component
    /// (finite Cartan subgroups only, where components are single elements).
    pub component_permutations: Vec<(GroupElement, Vec<usize>)>,
    /// Every image class either equals its source or is disjoint from it.
    pub dichotomy_holds: bool,
}

pub fn normalizer_class_action(
    model: &Model,
    normalizer: &ClosedSubgroup,
    partition: &TildePartition,
    dim_cap: usize,
) -> Result<ClassAction> {
    let classes = partition.classes(dim_cap)?;
    let identity: Vec<usize> = (0..classes.len()).collect();
    match (model, normalizer, partition.carrier()) {
        (Model::Finite(m), ClosedSubgroup::Finite(n), ClosedSubgroup::Finite(t)) => {
            let g = m.group();
            let sets: Vec<BTreeSet<usize>> = classes
                .iter()
                .map(|c| {
                    t.members()
                        .iter()
                        .copied()
                        .filter(|&x| c.contains(&GroupElement::Finite(x)))
                        .collect()
                })
                .collect();
            let mut permutations = Vec::new();
            let mut component_permutations = Vec::new();
            let components: Vec<usize> = sets.iter().flatten().copied().collect();
            let mut holds = true;
            for &y in n.members() {
                let cperm = components
                    .iter()
                    .map(|&x| {
                        components
                            .iter()
                            .position(|&z| z == g.conj(y, x))
                            .ok_or(Error::NotAMember)
                    })
                    .collect::<Result<Vec<_>>>()?;
                component_permutations.push((GroupElement::Finite(y), cperm));
                let mut perm = Vec::with_capacity(classes.len());
                for set in &sets {
                    let image: BTreeSet<usize> = set.iter().map(|&x| g.conj(y, x)).collect();
                    if !image.iter().all(|&x| t.contains(x)) {
                        return Err(Error::NotAMember);
                    }
                    match sets.iter().position(|s| *s == image) {
                        Some(j) => perm.push(j),
                        None => {
                            holds = false;
                            perm.push(usize::MAX);
                        }
                    }
                }
                permutations.push((GroupElement::Finite(y), perm));
            }
            Ok(ClassAction {
                classes,
                permutations,
                components: components.into_iter().map(GroupElement::Finite).collect(),
                component_permutations,
                dichotomy_holds: holds,
            })
        }
        (Model::Torus(_), ClosedSubgroup::Torus(_), _) => {
            let mut components = Vec::new();
            for c in &classes {
                components.extend(
                    class_components(c, dim_cap)?
                        .components
                        .into_iter()
                        .map(|k| k.representative),
                );
            }
            let ident: Vec<usize> = (0..components.len()).collect();
            Ok(ClassAction {
                classes,
                permutations: vec![(model.identity(), identity)],
                components,
                component_permutations: vec![(model.identity(), ident)],
                dichotomy_holds: true,
            })
        }
        _ => Err(Error::NotAMember),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::{FiniteLinearAction, TorusLinearAction};
    use crate::exact::{rat, QMatrix};
    use crate::groups::{FiniteGroup, FiniteSubgroup};

    fn perm(p: &[usize]) -> QMatrix {
        let n = p.len();
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|r| (0..n).map(|c| i64::from(p[c] == r)).collect())
            .collect();
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        QMatrix::from_i64(&refs)
    }

    fn torus(rank: usize, weights: &[&[i64]]) -> Model {
        Model::Torus(
            TorusLinearAction::new(rank, weights.iter().map(|w| w.to_vec()).collect(), 0).unwrap(),
        )
    }

    fn tel(c: &[(i64, i64)]) -> GroupElement {
        GroupElement::Torus(TorusElement::new(
            c.iter().map(|&(p, q)| rat(p, q)).collect(),
        ))
    }

    fn full(rank: usize) -> ClosedSubgroup {
        ClosedSubgroup::Torus(TorusSubgroup::full(rank))
    }

    fn s3_on_point() -> (Model, usize, usize) {
        let g = FiniteGroup::generate(&[perm(&[1, 0, 2]), perm(&[1, 2, 0])], 100).unwrap();
        let t = g.index_of(&perm(&[1, 0, 2])).unwrap();
        let c = g.index_of(&perm(&[1, 2, 0])).unwrap();
        let rep = vec![QMatrix::identity(0); g.order()];
        (
            Model::Finite(FiniteLinearAction::with_rep(g, rep).unwrap()),
            t,
            c,
        )
    }

    #[test]
    fn cartan_examples() {
        let (m, _, c) = s3_on_point();
        let Model::Finite(f) = &m else { unreachable!() };
        let whole = ClosedSubgroup::Finite(f.group().whole());
        let k = cartan_subgroup(&m, &whole, &GroupElement::Finite(c)).unwrap();
        let ClosedSubgroup::Finite(carrier) = &k.carrier else {
            unreachable!()
        };
        assert_eq!(carrier.order(), 3);

        let chart1 = torus(2, &[&[-1, 1], &[0, 1]]);
        let diag =
            ClosedSubgroup::Torus(TorusSubgroup::from_annihilator(2, &[vec![-1, 1]]).unwrap());
        let k = cartan_subgroup(&chart1, &diag, &tel(&[(1, 2), (1, 2)])).unwrap();
        assert_eq!(k.carrier, diag);
        let t1 = torus(1, &[&[1]]);
        let k = cartan_subgroup(&t1, &full(1), &tel(&[(0, 1)])).unwrap();
        assert_eq!(k.carrier, full(1));
    }

    #[test]
    fn isotropy_group_lists() {
        let z2 = FiniteGroup::generate(&[QMatrix::from_i64(&[&[-1]])], 10).unwrap();
        let m = Model::Finite(FiniteLinearAction::new(z2.clone()));
        let k = cartan_subgroup(
            &m,
            &ClosedSubgroup::Finite(z2.whole()),
            &GroupElement::Finite(1),
        )
        .unwrap();
        let hs = tilde_isotropy_groups(&m, &k).unwrap();
        assert_eq!(hs.len(), 2);
        assert!(
            hs.contains(&ClosedSubgroup::Finite(FiniteSubgroup::from_members(vec![
                0
            ])))
        );

        let t1 = torus(1, &[&[1]]);
        let k = cartan_subgroup(&t1, &full(1), &tel(&[(0, 1)])).unwrap();
        let hs = tilde_isotropy_groups(&t1, &k).unwrap();
        assert_eq!(hs.len(), 2);
        assert!(hs.contains(&ClosedSubgroup::Torus(TorusSubgroup::trivial(1))));

        let trivial = Model::Finite(
            FiniteLinearAction::with_rep(z2.clone(), vec![QMatrix::identity(1); 2]).unwrap(),
        );
        let k = cartan_subgroup(
            &trivial,
            &ClosedSubgroup::Finite(z2.whole()),
            &GroupElement::Finite(1),
        )
        .unwrap();
        assert_eq!(
            tilde_isotropy_groups(&trivial, &k).unwrap(),
            vec![k.carrier.clone()]
        );
        let class = tilde_class_of(&trivial, &k, &GroupElement::Finite(1)).unwrap();
        assert_eq!(bullet_group(&class), &k.carrier);
    }

    #[test]
    fn circle_classes() {
        let t1 = torus(1, &[&[1]]);
        let k = cartan_subgroup(&t1, &full(1), &tel(&[(0, 1)])).unwrap();
        let e = tilde_class_of(&t1, &k, &tel(&[(0, 1)])).unwrap();
        assert_eq!(e.bullet, ClosedSubgroup::Torus(TorusSubgroup::trivial(1)));
        assert_eq!(class_components(&e, 2).unwrap().components().len(), 1);
        let third = tilde_class_of(&t1, &k, &tel(&[(1, 3)])).unwrap();
        assert_eq!(third.bullet, full(1));
        let comps = class_components(&third, 2).unwrap();
        assert_eq!(comps.components().len(), 1);
        assert_eq!(comps.component_of(&tel(&[(1, 3)])), Some(0));
        assert!(comps.closure_contains(0, &tel(&[(0, 1)])));
        let (_, star) = star_component(&t1, &k, &tel(&[(1, 3)]), 2).unwrap();
        assert_eq!(star, 0);

        let t2 = torus(1, &[&[2]]);
        let k = cartan_subgroup(&t2, &full(1), &tel(&[(0, 1)])).unwrap();
        let class = tilde_class_of(&t2, &k, &tel(&[(1, 4)])).unwrap();
        let comps = class_components(&class, 2).unwrap();
        let reps: Vec<_> = comps
            .components()
            .iter()
            .map(|c| c.representative.clone())
            .collect();
        assert_eq!(reps, vec![tel(&[(1, 4)]), tel(&[(3, 4)])]);
        assert_eq!(comps.component_of(&tel(&[(2, 3)])), Some(1));
        assert!(comps.closure_contains(0, &tel(&[(1, 2)])));
        assert!(!comps.closure_contains(0, &tel(&[(3, 4)])));
    }

    #[test]
    fn diagonal_circle_in_chart_one() {
        let chart1 = torus(2, &[&[-1, 1], &[0, 1]]);
        let diag =
            ClosedSubgroup::Torus(TorusSubgroup::from_annihilator(2, &[vec![-1, 1]]).unwrap());
        let h = tel(&[(1, 2), (1, 2)]);
        let k = cartan_subgroup(&chart1, &diag, &h).unwrap();
        let class = tilde_class_of(&chart1, &k, &h).unwrap();
        assert_eq!(class.bullet, diag);
        let (comps, idx) = star_component(&chart1, &k, &h, 2).unwrap();
        assert_eq!(comps.components().len(), 1);
        assert!(comps.class().contains(&tel(&[(1, 3), (1, 3)])));
        assert!(!comps.class().contains(&tel(&[(0, 1), (0, 1)])));
        assert_eq!(comps.components()[idx].dim, 1);
        let classes = TildePartition::new(&chart1, &k.carrier)
            .unwrap()
            .classes(2)
            .unwrap();
        assert_eq!(classes.len(), 2);
    }

    #[test]
    fn finite_classes_and_normalizer() {
        let (m, t, c) = s3_on_point();
        let Model::Finite(f) = &m else { unreachable!() };
        let whole = ClosedSubgroup::Finite(f.group().whole());
        let k = cartan_subgroup(&m, &whole, &GroupElement::Finite(c)).unwrap();
        let class = tilde_class_of(&m, &k, &GroupElement::Finite(c)).unwrap();
        let comps = class_components(&class, 2).unwrap();
        assert_eq!(comps.components().len(), 2);
        let part = TildePartition::new(&m, &k.carrier).unwrap();
        let action = normalizer_class_action(&m, &whole, &part, 2).unwrap();
        assert!(action.dichotomy_holds);
        let (_, perm) = action
            .permutations
            .iter()
            .find(|(g, _)| *g == GroupElement::Finite(t))
            .unwrap();
        assert_eq!(action.classes.len(), 2);
        assert_eq!(perm, &vec![0, 1]);
        // (12) swaps the singleton components {(123)} and {(132)} of one class
        let sq = f.group().mul(c, c);
        let (_, cperm) = action
            .component_permutations
            .iter()
            .find(|(g, _)| *g == GroupElement::Finite(t))
            .unwrap();
        let i = action
            .components
            .iter()
            .position(|x| *x == GroupElement::Finite(c))
            .unwrap();
        let j = action
            .components
            .iter()
            .position(|x| *x == GroupElement::Finite(sq))
            .unwrap();
        assert_eq!((cperm[i], cperm[j]), (j, i));
        let (_, ident) = action
            .component_permutations
            .iter()
            .find(|(g, _)| *g == GroupElement::Finite(c))
            .unwrap();
        assert_eq!(ident, &(0..action.components.len()).collect::<Vec<_>>());
    }
}
