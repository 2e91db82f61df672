use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::exact::rational::from_int;
use crate::exact::{kernel_subspace, QMatrix, QSubspace, Rational};
use crate::groups::{FiniteGroup, FiniteSubgroup};

use super::{ClosedSubgroup, FixedLocus, Flat};

/// A finite group acting linearly on `Q^n`.
#[derive(Clone, Debug)]
pub struct FiniteLinearAction {
    group: FiniteGroup,
    rep: Vec<QMatrix>,
    fixed: Vec<QSubspace>,
}

const WITNESS_TRIES: i64 = 4096;

impl FiniteLinearAction {
    /// The defining representation: each element acts by its own matrix.
    pub fn new(group: FiniteGroup) -> Self {
        let rep = group.elements().to_vec();
        Self::build(group, rep)
    }

    /// Acts through `rep`, which must be a homomorphism on element indices.
    pub fn with_rep(group: FiniteGroup, rep: Vec<QMatrix>) -> Result<Self> {
        if rep.len() != group.order() {
            return Err(Error::DimensionMismatch {
                expected: group.order(),
                found: rep.len(),
            });
        }
        let n = rep.first().map_or(0, QMatrix::rows);
        if let Some(bad) = rep.iter().find(|r| r.rows() != n || r.cols() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.rows(),
            });
        }
        let ok = rep[0] == QMatrix::identity(n)
            && group
                .generator_indices()
                .iter()
                .all(|&s| (0..group.order()).all(|x| rep[x].mul(&rep[s]) == rep[group.mul(x, s)]));
        if !ok {
            return Err(Error::Config("representation is not a homomorphism".into()));
        }
        Ok(Self::build(group, rep))
    }

    /// Acts with generator `i` of the group sent to `images[i]`; the images
    /// are extended along words and must define a homomorphism.
    pub fn from_generator_images(
        group: FiniteGroup,
        dim: usize,
        images: &[QMatrix],
    ) -> Result<Self> {
        let gens = group.generator_indices().to_vec();
        if images.len() != gens.len() {
            return Err(Error::DimensionMismatch {
                expected: gens.len(),
                found: images.len(),
            });
        }
        if let Some(bad) = images.iter().find(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.rows(),
            });
        }
        let mut rep: Vec<Option<QMatrix>> = vec![None; group.order()];
        rep[0] = Some(QMatrix::identity(dim));
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (s, img) in gens.iter().zip(images) {
                let y = group.mul(x, *s);
                if rep[y].is_none() {
                    rep[y] = Some(rep[x].as_ref().unwrap().mul(img));
                    queue.push_back(y);
                }
            }
        }
        let rep = rep
            .into_iter()
            .map(|r| r.expect("generators reach every element"))
            .collect();
        Self::with_rep(group, rep)
    }

    fn build(group: FiniteGroup, rep: Vec<QMatrix>) -> Self {
        let fixed = rep
            .iter()
            .map(|r| kernel_subspace(&r.sub(&QMatrix::identity(r.rows()))))
            .collect();
        FiniteLinearAction { group, rep, fixed }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.rep.first().map_or(0, QMatrix::rows)
    }

    pub fn rep(&self, g: usize) -> &QMatrix {
        &self.rep[g]
    }

    pub fn act(&self, g: usize, x: &[Rational]) -> Vec<Rational> {
        self.rep[g].mul_vec(x)
    }

    pub fn fixed_space(&self, g: usize) -> QSubspace {
        self.fixed[g].clone()
    }

    /// Common fixed space of a subgroup.
    pub fn fixed_space_of(&self, s: &FiniteSubgroup) -> QSubspace {
        s.members()
            .iter()
            .fold(QSubspace::full(self.dim()), |acc, &g| {
                acc.meet(&self.fixed[g])
            })
    }

    pub fn isotropy(&self, x: &[Rational]) -> FiniteSubgroup {
        FiniteSubgroup::from_members(
            (0..self.group.order())
                .filter(|&g| self.act(g, x) == x)
                .collect(),
        )
    }

    /// `{g : flat ⊆ Fix(g)}`.
    pub fn stabilizer_of(&self, flat: &QSubspace) -> FiniteSubgroup {
        FiniteSubgroup::from_members(
            (0..self.group.order())
                .filter(|&g| self.fixed[g].contains_subspace(flat))
                .collect(),
        )
    }

    /// `g·V` for a subspace `V`.
    pub fn translate(&self, g: usize, v: &QSubspace) -> QSubspace {
        let image: Vec<Vec<Rational>> = v
            .basis()
            .row_vecs()
            .iter()
            .map(|b| self.act(g, b))
            .collect();
        QSubspace::span(self.dim(), &image)
    }

    /// Intersection closure of the fixed spaces, ordered by decreasing
    /// dimension then basis.
    pub fn flats(&self) -> Result<Vec<Flat>> {
        let mut family: BTreeSet<QSubspace> = self.fixed.iter().cloned().collect();
        loop {
            let current: Vec<QSubspace> = family.iter().cloned().collect();
            let mut grew = false;
            for (i, a) in current.iter().enumerate() {
                for b in &current[i + 1..] {
                    grew |= family.insert(a.meet(b));
                }
            }
            if !grew {
                break;
            }
        }
        let mut spaces: Vec<QSubspace> = family.into_iter().collect();
        spaces.sort_by(|a, b| b.dim().cmp(&a.dim()).then_with(|| a.cmp(b)));
        spaces
            .iter()
            .map(|f| {
                let smaller: Vec<&QSubspace> = spaces
                    .iter()
                    .filter(|s| s.dim() < f.dim() && f.contains_subspace(s))
                    .collect();
                let witness = generic_point(f, &smaller)?;
                Ok(Flat {
                    locus: FixedLocus::Subspace(f.clone()),
                    stabilizer: ClosedSubgroup::Finite(self.stabilizer_of(f)),
                    witness,
                    dim: f.dim(),
                })
            })
            .collect()
    }
}

/// A point of `flat` outside every subspace in `avoid`, taken on the
/// moment curve `t ↦ Σ t^i b_i` over the flat's basis. A proper subspace
/// meets that curve in fewer than `dim` points, so the search is finite.
pub(crate) fn generic_point(flat: &QSubspace, avoid: &[&QSubspace]) -> Result<Vec<Rational>> {
    let d = flat.dim();
    for t in 1..=WITNESS_TRIES {
        let mut power = from_int(1);
        let coords: Vec<Rational> = (0..d)
            .map(|_| {
                let c = power.clone();
                power *= from_int(t);
                c
            })
            .collect();
        let p = flat.point(&coords);
        if avoid.iter().all(|s| !s.contains(&p)) {
            return Ok(p);
        }
    }
    Err(Error::WitnessSearchExhausted { dim: d })
}
