use crate::error::{Error, Result};

use super::{format_point, GroupElement, Model, PointQ};

/// An arrow `(g, p) : p → g p` of the action groupoid.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Morphism {
    pub group: GroupElement,
    pub point: PointQ,
}

/// Structure maps of the action groupoid `G ⋉ M`.
#[derive(Clone, Copy, Debug)]
pub struct ActionGroupoid<'a> {
    model: &'a Model,
}

impl<'a> ActionGroupoid<'a> {
    pub fn new(model: &'a Model) -> Self {
        ActionGroupoid { model }
    }

    pub fn source(&self, a: &Morphism) -> PointQ {
        a.point.clone()
    }

    pub fn target(&self, a: &Morphism) -> Result<PointQ> {
        self.model.act(&a.group, &a.point)
    }

    pub fn unit(&self, p: &[crate::exact::Rational]) -> Morphism {
        Morphism {
            group: self.model.identity(),
            point: p.to_vec(),
        }
    }

    /// `(g, p) ↦ (g⁻¹, g p)`.
    pub fn inverse(&self, a: &Morphism) -> Result<Morphism> {
        Ok(Morphism {
            group: self.model.inv(&a.group)?,
            point: self.target(a)?,
        })
    }

    /// `(g, p) ↦ (g⁻¹, p)`, which keeps the source fixed and so fails
    /// `s ∘ i = t` as soon as `g p ≠ p`.
    pub fn verbatim_inverse(&self, a: &Morphism) -> Result<Morphism> {
        Ok(Morphism {
            group: self.model.inv(&a.group)?,
            point: a.point.clone(),
        })
    }

    /// `((g, h p), (h, p)) ↦ (g h, p)`.
    pub fn compose(&self, a: &Morphism, b: &Morphism) -> Result<Morphism> {
        let tb = self.target(b)?;
        if a.point != tb {
            return Err(Error::NonComposable {
                source_point: format_point(&a.point),
                target_point: format_point(&tb),
            });
        }
        Ok(Morphism {
            group: self.model.mul(&a.group, &b.group)?,
            point: b.point.clone(),
        })
    }

    /// Names of the groupoid laws that fail at `a`, using `inverse` as the
    /// inversion map.
    pub fn violations_with(
        &self,
        a: &Morphism,
        inverse: impl Fn(&Morphism) -> Result<Morphism>,
    ) -> Result<Vec<&'static str>> {
        let mut bad = Vec::new();
        let ia = inverse(a)?;
        let (s, t) = (self.source(a), self.target(a)?);
        if self.source(&ia) != t {
            bad.push("s∘i = t");
        }
        if self.target(&ia)? != s {
            bad.push("t∘i = s");
        }
        if self.compose(&ia, a).ok() != Some(self.unit(&s)) {
            bad.push("i(a)·a = u(s(a))");
        }
        if self.compose(a, &ia).ok() != Some(self.unit(&t)) {
            bad.push("a·i(a) = u(t(a))");
        }
        if self.compose(a, &self.unit(&s)).ok().as_ref() != Some(a)
            || self.compose(&self.unit(&t), a).ok().as_ref() != Some(a)
        {
            bad.push("unit laws");
        }
        Ok(bad)
    }

    pub fn violations(&self, a: &Morphism) -> Result<Vec<&'static str>> {
        self.violations_with(a, |x| self.inverse(x))
    }

    /// Associativity on the composable chain `p → h₁p → h₂h₁p → h₃h₂h₁p`.
    pub fn associative_on(&self, p: &PointQ, h: [&GroupElement; 3]) -> Result<bool> {
        let c = Morphism {
            group: h[0].clone(),
            point: p.clone(),
        };
        let b = Morphism {
            group: h[1].clone(),
            point: self.target(&c)?,
        };
        let a = Morphism {
            group: h[2].clone(),
            point: self.target(&b)?,
        };
        Ok(
            self.compose(&self.compose(&a, &b)?, &c)?
                == self.compose(&a, &self.compose(&b, &c)?)?,
        )
    }
}
