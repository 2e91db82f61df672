//! Linear action models, their fixed-point and isotropy calculus, the loop
//! space `{(h, x) : hx = x}` and the action groupoid structure maps.

mod finite;
mod groupoid;
mod torus;

use std::fmt;

use num_traits::Zero;

pub use finite::FiniteLinearAction;
pub use groupoid::{ActionGroupoid, Morphism};
pub use torus::TorusLinearAction;

use crate::error::{Error, Result};
use crate::exact::{format_vector, QSubspace, Rational};
use crate::groups::{FiniteSubgroup, TorusElement, TorusSubgroup};

/// A point of the model space. Complex coordinates of torus models are
/// stored as consecutive `(re, im)` pairs, followed by the real coordinates.
pub type PointQ = Vec<Rational>;

/// Formats a point as `0` when it vanishes, else `(a,b,…)`.
pub fn format_point(x: &[Rational]) -> String {
    if x.iter().all(Zero::is_zero) {
        "0".to_string()
    } else {
        format!("({})", format_vector(x))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupElement {
    /// Index into the finite group's element list.
    Finite(usize),
    Torus(TorusElement),
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Finite(0) => write!(f, "e"),
            GroupElement::Finite(i) => write!(f, "g{i}"),
            GroupElement::Torus(t) if t.is_zero() => write!(f, "e"),
            GroupElement::Torus(t) => write!(f, "{t}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClosedSubgroup {
    Finite(FiniteSubgroup),
    Torus(TorusSubgroup),
}

impl ClosedSubgroup {
    pub fn contains(&self, g: &GroupElement) -> bool {
        match (self, g) {
            (ClosedSubgroup::Finite(s), GroupElement::Finite(i)) => s.contains(*i),
            (ClosedSubgroup::Torus(s), GroupElement::Torus(t)) => s.contains(t).unwrap_or(false),
            _ => false,
        }
    }

    /// Whether `other ⊆ self`.
    pub fn contains_subgroup(&self, other: &ClosedSubgroup) -> bool {
        match (self, other) {
            (ClosedSubgroup::Finite(a), ClosedSubgroup::Finite(b)) => b.is_subgroup_of(a),
            (ClosedSubgroup::Torus(a), ClosedSubgroup::Torus(b)) => a.contains_subgroup(b),
            _ => false,
        }
    }

    pub fn meet(&self, other: &ClosedSubgroup) -> Result<ClosedSubgroup> {
        match (self, other) {
            (ClosedSubgroup::Finite(a), ClosedSubgroup::Finite(b)) => {
                Ok(ClosedSubgroup::Finite(a.intersect(b)))
            }
            (ClosedSubgroup::Torus(a), ClosedSubgroup::Torus(b)) => {
                Ok(ClosedSubgroup::Torus(a.meet(b)?))
            }
            _ => Err(Error::NotAMember),
        }
    }

    /// Dimension as a Lie group.
    pub fn dim(&self) -> usize {
        match self {
            ClosedSubgroup::Finite(_) => 0,
            ClosedSubgroup::Torus(t) => t.dim(),
        }
    }
}

impl fmt::Display for ClosedSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedSubgroup::Finite(s) => {
                let names: Vec<String> = s
                    .members()
                    .iter()
                    .map(|&i| GroupElement::Finite(i).to_string())
                    .collect();
                write!(f, "{{{}}}", names.join(","))
            }
            ClosedSubgroup::Torus(t) => {
                let k = t.rank();
                let basis = t.annihilator().basis();
                if basis.is_empty() {
                    return write!(f, "T^{k}");
                }
                if basis.len() == k
                    && (0..k).all(|i| (0..k).all(|j| basis[i][j] == i64::from(i == j)))
                {
                    return write!(f, "{{e}}");
                }
                let rows: Vec<String> = t
                    .annihilator()
                    .basis()
                    .iter()
                    .map(|r| {
                        format!(
                            "({})",
                            r.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
                        )
                    })
                    .collect();
                write!(f, "ann[{}]", rows.join(","))
            }
        }
    }
}

/// The locus fixed by a group element or subgroup.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FixedLocus {
    Subspace(QSubspace),
    /// Fixed complex coordinates; the real summand is always fixed.
    Support(Vec<usize>),
}

/// A pair `(h, x)` with `hx = x`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LoopPoint {
    group_part: GroupElement,
    point_part: PointQ,
}

impl LoopPoint {
    pub fn group_part(&self) -> &GroupElement {
        &self.group_part
    }

    pub fn point_part(&self) -> &[Rational] {
        &self.point_part
    }

    /// Builds without checking; callers guarantee `hx = x`.
    pub(crate) fn unchecked(group_part: GroupElement, point_part: PointQ) -> Self {
        LoopPoint {
            group_part,
            point_part,
        }
    }
}

impl fmt::Display for LoopPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {})",
            self.group_part,
            format_point(&self.point_part)
        )
    }
}

/// An orbit-type flat with its generic stabilizer and a point lying in no
/// smaller flat.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flat {
    pub locus: FixedLocus,
    pub stabilizer: ClosedSubgroup,
    pub witness: PointQ,
    pub dim: usize,
}

#[derive(Clone, Debug)]
pub enum Model {
    Finite(FiniteLinearAction),
    Torus(TorusLinearAction),
}

impl Model {
    pub fn dim(&self) -> usize {
        match self {
            Model::Finite(m) => m.dim(),
            Model::Torus(m) => m.dim(),
        }
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            Model::Finite(_) => GroupElement::Finite(0),
            Model::Torus(m) => GroupElement::Torus(TorusElement::zero(m.rank())),
        }
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        match (self, a, b) {
            (Model::Finite(m), GroupElement::Finite(x), GroupElement::Finite(y)) => {
                Ok(GroupElement::Finite(m.group().mul(*x, *y)))
            }
            (Model::Torus(_), GroupElement::Torus(x), GroupElement::Torus(y)) => {
                Ok(GroupElement::Torus(x.add(y)))
            }
            _ => Err(Error::NotAMember),
        }
    }

    pub fn inv(&self, a: &GroupElement) -> Result<GroupElement> {
        match (self, a) {
            (Model::Finite(m), GroupElement::Finite(x)) => {
                Ok(GroupElement::Finite(m.group().inv(*x)))
            }
            (Model::Torus(_), GroupElement::Torus(x)) => Ok(GroupElement::Torus(x.neg())),
            _ => Err(Error::NotAMember),
        }
    }

    /// `g k g⁻¹`.
    pub fn conj(&self, g: &GroupElement, k: &GroupElement) -> Result<GroupElement> {
        self.mul(&self.mul(g, k)?, &self.inv(g)?)
    }

    fn check_point(&self, x: &[Rational]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.len(),
            });
        }
        Ok(())
    }

    pub fn act(&self, g: &GroupElement, x: &[Rational]) -> Result<PointQ> {
        self.check_point(x)?;
        match (self, g) {
            (Model::Finite(m), GroupElement::Finite(i)) => Ok(m.act(*i, x)),
            (Model::Torus(m), GroupElement::Torus(t)) => m.act(t, x),
            _ => Err(Error::NotAMember),
        }
    }

    pub fn fixed_set(&self, g: &GroupElement) -> Result<FixedLocus> {
        match (self, g) {
            (Model::Finite(m), GroupElement::Finite(i)) => {
                Ok(FixedLocus::Subspace(m.fixed_space(*i)))
            }
            (Model::Torus(m), GroupElement::Torus(t)) => {
                Ok(FixedLocus::Support(m.fixed_coordinates(t)?))
            }
            _ => Err(Error::NotAMember),
        }
    }

    pub fn isotropy_of_point(&self, x: &[Rational]) -> Result<ClosedSubgroup> {
        self.check_point(x)?;
        Ok(match self {
            Model::Finite(m) => ClosedSubgroup::Finite(m.isotropy(x)),
            Model::Torus(m) => ClosedSubgroup::Torus(m.isotropy(x)),
        })
    }

    pub fn flats(&self) -> Result<Vec<Flat>> {
        match self {
            Model::Finite(m) => m.flats(),
            Model::Torus(m) => Ok(m.flats()),
        }
    }

    /// Whether `hx = x` exactly.
    pub fn loop_contains(&self, h: &GroupElement, x: &[Rational]) -> Result<bool> {
        self.check_point(x)?;
        match (self, h) {
            (Model::Finite(m), GroupElement::Finite(i)) => Ok(m.act(*i, x) == x),
            (Model::Torus(m), GroupElement::Torus(t)) => m.fixes(t, x),
            _ => Err(Error::NotAMember),
        }
    }

    pub fn loop_point(&self, h: GroupElement, x: PointQ) -> Result<LoopPoint> {
        if !self.loop_contains(&h, &x)? {
            return Err(Error::NotInLoopSpace);
        }
        Ok(LoopPoint {
            group_part: h,
            point_part: x,
        })
    }

    /// The diagonal action `g·(k, y) = (g k g⁻¹, g y)`.
    pub fn act_on_gxm(
        &self,
        g: &GroupElement,
        k: &GroupElement,
        y: &[Rational],
    ) -> Result<(GroupElement, PointQ)> {
        Ok((self.conj(g, k)?, self.act(g, y)?))
    }

    /// Isotropy of a loop point under the diagonal action: `Z_{G_x}(h)`.
    pub fn isotropy_in_gxm(&self, p: &LoopPoint) -> Result<ClosedSubgroup> {
        match (self, self.isotropy_of_point(&p.point_part)?, &p.group_part) {
            (Model::Finite(m), ClosedSubgroup::Finite(gx), GroupElement::Finite(h)) => {
                Ok(ClosedSubgroup::Finite(m.group().centralizer_in(&gx, *h)))
            }
            (Model::Torus(_), iso @ ClosedSubgroup::Torus(_), _) => Ok(iso),
            _ => Err(Error::NotAMember),
        }
    }
}
