//! Pieces of the loop space of a torus action.
//!
//! For a closed support `S` the points with isotropy `K = H_S` form a
//! connected open subset of `Fix(K)`. Each piece is that set times one
//! connected component of a `∼` class lying in a component `cK°` of `K`,
//! where classes are taken in the Cartan subgroup `⟨K°, c⟩`.

use crate::actions::{ClosedSubgroup, GroupElement, Model, TorusLinearAction};
use crate::cartan::{class_components, ClassComponents, TildePartition};
use crate::error::Result;
use crate::groups::{TorusElement, TorusSubgroup};

#[derive(Clone, Debug)]
pub struct TorusPiece {
    pub support: Vec<usize>,
    pub k: TorusSubgroup,
    /// Component of `K` holding the group parts.
    pub coset: usize,
    pub cartan: TorusSubgroup,
    pub signature: Vec<usize>,
    pub components: ClassComponents,
    pub component: usize,
    pub representative: TorusElement,
    pub dim: usize,
}

pub fn enumerate(
    model: &Model,
    action: &TorusLinearAction,
    dim_cap: usize,
) -> Result<Vec<TorusPiece>> {
    let mut out = Vec::new();
    for s in action.closed_supports() {
        let k = action.support_isotropy(&s);
        let identity = k.identity_component();
        let data = k.component_data();
        for (coset, c) in data.coset_reps.iter().enumerate() {
            let cartan = identity.generate(c)?;
            let partition = TildePartition::new(model, &ClosedSubgroup::Torus(cartan.clone()))?;
            for class in partition.classes(dim_cap)? {
                let comps = class_components(&class, dim_cap)?;
                for comp in comps.components() {
                    let GroupElement::Torus(r) = &comp.representative else {
                        unreachable!()
                    };
                    if !identity.contains(&r.sub(c))? {
                        continue;
                    }
                    out.push(TorusPiece {
                        support: s.clone(),
                        k: k.clone(),
                        coset,
                        cartan: cartan.clone(),
                        signature: class.signature.clone(),
                        components: comps.clone(),
                        component: comp.index,
                        representative: r.clone(),
                        dim: comp.dim + 2 * s.len() + action.real_dim(),
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Locates the piece data `(support, coset, signature, component)` of a loop point.
pub fn locate(
    model: &Model,
    action: &TorusLinearAction,
    theta: &TorusElement,
    x: &[crate::exact::Rational],
    dim_cap: usize,
) -> Result<Option<(Vec<usize>, usize, Vec<usize>, usize)>> {
    let s = action.closure(&action.support(x));
    let k = action.support_isotropy(&s);
    let Some((coset, _)) = k.component_data().locate(theta) else {
        return Ok(None);
    };
    let cartan = k.identity_component().generate(theta)?;
    let partition = TildePartition::new(model, &ClosedSubgroup::Torus(cartan))?;
    let t = GroupElement::Torus(theta.clone());
    let class = partition.class_of(&t)?;
    let comps = class_components(&class, dim_cap)?;
    Ok(comps
        .component_of(&t)
        .map(|c| (s, coset, class.signature, c)))
}
