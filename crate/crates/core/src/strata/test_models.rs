use crate::actions::{FiniteLinearAction, GroupElement, Model, TorusLinearAction};
use crate::exact::{rat, QMatrix};
use crate::groups::{FiniteGroup, TorusElement};

use super::{EngineOptions, Stratification};

pub fn perm(p: &[usize]) -> QMatrix {
    let n = p.len();
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|r| (0..n).map(|c| i64::from(p[c] == r)).collect())
        .collect();
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    QMatrix::from_i64(&refs)
}

pub fn s3() -> Model {
    let g = FiniteGroup::generate(&[perm(&[1, 0, 2]), perm(&[1, 2, 0])], 100).unwrap();
    Model::Finite(FiniteLinearAction::new(g))
}

pub fn z2_line() -> Model {
    let g = FiniteGroup::generate(&[QMatrix::from_i64(&[&[-1]])], 10).unwrap();
    Model::Finite(FiniteLinearAction::new(g))
}

pub fn z2_trivial() -> Model {
    let g = FiniteGroup::generate(&[QMatrix::from_i64(&[&[-1]])], 10).unwrap();
    let rep = vec![QMatrix::identity(1); 2];
    Model::Finite(FiniteLinearAction::with_rep(g, rep).unwrap())
}

pub fn torus(rank: usize, weights: &[&[i64]], real_dim: usize) -> Model {
    Model::Torus(
        TorusLinearAction::new(rank, weights.iter().map(|w| w.to_vec()).collect(), real_dim)
            .unwrap(),
    )
}

pub fn tel(c: &[(i64, i64)]) -> GroupElement {
    GroupElement::Torus(TorusElement::new(
        c.iter().map(|&(p, q)| rat(p, q)).collect(),
    ))
}

pub fn strata(model: Model) -> Stratification {
    Stratification::new(model, EngineOptions::default()).unwrap()
}
