use num_traits::{One, Zero};

use crate::actions::{GroupElement, LoopPoint, Model};
use crate::error::{Error, Result};
use crate::exact::{left_integer_kernel, IntMatrix, Rational};
use crate::groups::TorusElement;

/// A complete invariant of the `G`-orbit of a loop point.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OrbitKey {
    /// Smallest `(g h g⁻¹, g x)` over the group.
    Finite {
        group_part: usize,
        point: Vec<Rational>,
    },
    /// Torus orbits are separated by the support, the moduli `|z_j|²` and
    /// the monomials `Π z_j^{m_j}` over a basis of the weight relations on
    /// the support; the group part is fixed by conjugation.
    Torus {
        group_part: TorusElement,
        reals: Vec<Rational>,
        support: Vec<usize>,
        moduli: Vec<Rational>,
        monomials: Vec<(Rational, Rational)>,
    },
}

type Complex = (Rational, Rational);

fn cmul(a: &Complex, b: &Complex) -> Complex {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

fn cpow(z: &Complex, m: i64) -> Complex {
    let base = if m < 0 {
        let n = &z.0 * &z.0 + &z.1 * &z.1;
        (&z.0 / &n, -&z.1 / &n)
    } else {
        z.clone()
    };
    let mut acc = (Rational::one(), Rational::zero());
    for _ in 0..m.unsigned_abs() {
        acc = cmul(&acc, &base);
    }
    acc
}

pub fn orbit_canonical(model: &Model, p: &LoopPoint) -> Result<OrbitKey> {
    match (model, p.group_part()) {
        (Model::Finite(a), GroupElement::Finite(h)) => {
            let g = a.group();
            let (group_part, point) = (0..g.order())
                .map(|y| (g.conj(y, *h), a.act(y, p.point_part())))
                .min()
                .unwrap();
            Ok(OrbitKey::Finite { group_part, point })
        }
        (Model::Torus(a), GroupElement::Torus(theta)) => {
            let x = p.point_part();
            let support = a.support(x);
            let z: Vec<Complex> = support
                .iter()
                .map(|&j| (x[2 * j].clone(), x[2 * j + 1].clone()))
                .collect();
            let moduli = z.iter().map(|c| &c.0 * &c.0 + &c.1 * &c.1).collect();
            // integer relations m with Σ m_j w_j = 0 over the support
            let w: IntMatrix = support.iter().map(|&j| a.weights()[j].clone()).collect();
            let relations = left_integer_kernel(&w, a.rank());
            let monomials = relations
                .iter()
                .map(|m| {
                    z.iter()
                        .zip(m)
                        .fold((Rational::one(), Rational::zero()), |acc, (zj, &mj)| {
                            cmul(&acc, &cpow(zj, mj))
                        })
                })
                .collect();
            Ok(OrbitKey::Torus {
                group_part: theta.clone(),
                reals: x[2 * a.complex_dim()..].to_vec(),
                support,
                moduli,
                monomials,
            })
        }
        _ => Err(Error::NotAMember),
    }
}
