use std::collections::BTreeSet;

use crate::actions::{FiniteLinearAction, GroupElement, Model};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::groups::{FiniteGroup, FiniteSubgroup};

use super::finite::{canonical_pair, PairKey};
use super::{EngineOptions, Stratification};

/// Local piece descriptors at `(h, x)` computed in the full model and in the
/// model restricted to the stabilizer `G_x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceRow {
    pub h: usize,
    /// `(canonical pair, dimension)` of pieces whose closure contains `(h, x)`.
    pub global: Vec<(PairKey, usize)>,
    /// The same for pieces of the `G_x` model through `h`, pushed into `G`.
    pub local: Vec<(PairKey, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceReport {
    pub stabilizer: Vec<usize>,
    pub rows: Vec<SliceRow>,
}

impl SliceReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.global == r.local)
    }
}

pub fn slice_consistency(
    s: &Stratification,
    x: &[Rational],
    order_cap: usize,
) -> Result<SliceReport> {
    let Model::Finite(a) = s.model() else {
        return Err(Error::Config("slice check needs a finite model".into()));
    };
    let g = a.group();
    let gx = a.isotropy(x);
    let mats: Vec<_> = gx.members().iter().map(|&m| a.rep(m).clone()).collect();
    let parent_mats: Vec<_> = gx.members().iter().map(|&m| g.element(m).clone()).collect();
    // the restricted group is generated on the parent's defining matrices and acts through `rep`
    let sub = FiniteGroup::generate_with_degree(g.degree(), &parent_mats, order_cap)?;
    let to_parent: Vec<usize> = sub
        .elements()
        .iter()
        .map(|m| g.index_of(m).expect("subgroup element"))
        .collect();
    let rep: Vec<_> = to_parent
        .iter()
        .map(|&p| mats[gx.members().binary_search(&p).expect("member")].clone())
        .collect();
    let local_model = Model::Finite(FiniteLinearAction::with_rep(sub.clone(), rep)?);
    let local = Stratification::new(
        local_model,
        EngineOptions {
            ..s.options().clone()
        },
    )?;

    let push = |k: &FiniteSubgroup, h: usize| -> PairKey {
        let members =
            FiniteSubgroup::from_members(k.members().iter().map(|&m| to_parent[m]).collect());
        canonical_pair(g, &members, to_parent[h])
    };

    let mut rows = Vec::new();
    for &h in gx.members() {
        let mut global: BTreeSet<(PairKey, usize)> = BTreeSet::new();
        for piece in &s.pieces {
            if piece
                .components
                .iter()
                .any(|&c| s.closure_contains(c, &GroupElement::Finite(h), x))
            {
                global.insert(s.finite_descriptor(piece.id).expect("finite piece"));
            }
        }
        let h_local = to_parent
            .iter()
            .position(|&p| p == h)
            .expect("in stabilizer");
        let mut near: BTreeSet<(PairKey, usize)> = BTreeSet::new();
        for piece in &local.pieces {
            let (k, hp) = local.finite_piece_members(piece.id).expect("finite piece");
            if (0..sub.order()).any(|y| sub.conj(y, hp) == h_local) {
                near.insert((push(k, hp), piece.dim));
            }
        }
        rows.push(SliceRow {
            h,
            global: global.into_iter().collect(),
            local: near.into_iter().collect(),
        });
    }
    Ok(SliceReport {
        stabilizer: gx.members().to_vec(),
        rows,
    })
}
