use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::rational::{dot_int, frac, from_int};
use crate::exact::{
    format_vector, smith_hermite, torus_integrality, IntLattice, IntMatrix, QMatrix, Rational,
};

/// A point of `T^k = R^k / Z^k` with rational coordinates in `[0,1)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorusElement {
    coords: Vec<Rational>,
}

impl TorusElement {
    pub fn new(coords: Vec<Rational>) -> Self {
        TorusElement {
            coords: coords.iter().map(frac).collect(),
        }
    }

    pub fn zero(rank: usize) -> Self {
        TorusElement {
            coords: vec![Rational::zero(); rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &TorusElement) -> TorusElement {
        TorusElement::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn neg(&self) -> TorusElement {
        TorusElement::new(self.coords.iter().map(|a| -a).collect())
    }

    pub fn sub(&self, other: &TorusElement) -> TorusElement {
        self.add(&other.neg())
    }

    /// `w·θ` as a rational (not reduced).
    pub fn pair(&self, weight: &[i64]) -> Rational {
        dot_int(weight, &self.coords)
    }
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", format_vector(&self.coords))
    }
}

/// A closed subgroup `{θ : λ·θ ∈ Z for all λ in the annihilator}`.
///
/// The annihilator is kept in Hermite form, so equal subgroups compare equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorusSubgroup {
    annihilator: IntLattice,
}

/// Identity component and component group of a closed torus subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentData {
    /// Dimension of the identity component.
    pub dim: usize,
    /// Nontrivial invariant factors of the component group.
    pub factors: Vec<i64>,
    /// One element per component, sorted; the first is the identity.
    pub coset_reps: Vec<TorusElement>,
    /// Integer vectors `v_i` with `u ↦ Σ u_i v_i` identifying `T^dim` with
    /// the identity component.
    pub component_basis: Vec<Vec<i64>>,
    moduli: Vec<i64>,
    right_inverse: QMatrix,
    labels: Vec<Vec<i64>>,
}

impl TorusSubgroup {
    pub fn from_annihilator(rank: usize, rows: &[Vec<i64>]) -> Result<Self> {
        Ok(TorusSubgroup {
            annihilator: IntLattice::from_generators(rank, rows)?,
        })
    }

    pub fn from_lattice(annihilator: IntLattice) -> Self {
        TorusSubgroup { annihilator }
    }

    pub fn full(rank: usize) -> Self {
        TorusSubgroup {
            annihilator: IntLattice::zero(rank),
        }
    }

    pub fn trivial(rank: usize) -> Self {
        TorusSubgroup {
            annihilator: IntLattice::full(rank),
        }
    }

    pub fn rank(&self) -> usize {
        self.annihilator.ambient_dim()
    }

    pub fn annihilator(&self) -> &IntLattice {
        &self.annihilator
    }

    pub fn contains(&self, theta: &TorusElement) -> Result<bool> {
        torus_integrality(&self.annihilator, theta.coords())
    }

    /// Whether `other ⊆ self`.
    pub fn contains_subgroup(&self, other: &TorusSubgroup) -> bool {
        self.annihilator
            .basis()
            .iter()
            .all(|row| other.annihilator.contains(row))
    }

    pub fn meet(&self, other: &TorusSubgroup) -> Result<TorusSubgroup> {
        self.check_rank(other.rank())?;
        Ok(TorusSubgroup {
            annihilator: self.annihilator.join(&other.annihilator),
        })
    }

    /// Smallest closed subgroup containing `self` and `theta`.
    pub fn generate(&self, theta: &TorusElement) -> Result<TorusSubgroup> {
        self.check_rank(theta.rank())?;
        Ok(TorusSubgroup {
            annihilator: self.annihilator.integral_on(theta.coords()),
        })
    }

    pub fn identity_component(&self) -> TorusSubgroup {
        TorusSubgroup {
            annihilator: self.annihilator.saturation(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rank() - self.annihilator.rank()
    }

    fn check_rank(&self, found: usize) -> Result<()> {
        if found != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found,
            });
        }
        Ok(())
    }

    pub fn component_data(&self) -> ComponentData {
        let k = self.rank();
        let a: IntMatrix = self.annihilator.basis().clone();
        let rho = a.len();
        let snf = smith_hermite(&a, k);
        let moduli: Vec<i64> = snf.invariant_factors.iter().take(rho).copied().collect();
        debug_assert!(moduli.iter().all(|&d| d > 0));
        let right = to_q(&snf.right);
        let right_inverse = right.inverse().expect("unimodular");
        let component_basis: Vec<Vec<i64>> = (rho..k)
            .map(|c| snf.right.iter().map(|row| row[c]).collect())
            .collect();
        let mut labelled: Vec<(TorusElement, Vec<i64>)> = Vec::new();
        let mut label = vec![0i64; rho];
        loop {
            let mut phi = vec![Rational::zero(); k];
            for i in 0..rho {
                phi[i] = from_int(label[i]) / from_int(moduli[i]);
            }
            labelled.push((TorusElement::new(right.mul_vec(&phi)), label.clone()));
            let mut i = 0;
            while i < rho {
                label[i] += 1;
                if label[i] < moduli[i] {
                    break;
                }
                label[i] = 0;
                i += 1;
            }
            if i == rho {
                break;
            }
        }
        labelled.sort();
        ComponentData {
            dim: k - rho,
            factors: moduli.iter().copied().filter(|&d| d > 1).collect(),
            coset_reps: labelled.iter().map(|(e, _)| e.clone()).collect(),
            labels: labelled.into_iter().map(|(_, l)| l).collect(),
            component_basis,
            moduli,
            right_inverse,
        }
    }
}

fn to_q(m: &IntMatrix) -> QMatrix {
    let refs: Vec<&[i64]> = m.iter().map(Vec::as_slice).collect();
    QMatrix::from_i64(&refs)
}

impl ComponentData {
    /// Component index and identity-component coordinates `u ∈ [0,1)^dim`
    /// with `θ = coset_reps[c] + Σ u_i v_i`; `None` if `θ` is not a member.
    pub fn locate(&self, theta: &TorusElement) -> Option<(usize, Vec<Rational>)> {
        let phi = self.right_inverse.mul_vec(theta.coords());
        let rho = self.moduli.len();
        let mut label = Vec::with_capacity(rho);
        for i in 0..rho {
            let scaled = &phi[i] * from_int(self.moduli[i]);
            if !scaled.is_integer() {
                return None;
            }
            let v = i64::try_from(&scaled.to_integer()).ok()?;
            label.push(v.rem_euclid(self.moduli[i]));
        }
        let c = self.labels.iter().position(|l| *l == label)?;
        let u = phi[rho..].iter().map(frac).collect();
        Some((c, u))
    }

    /// `coset_reps[c] + Σ u_i v_i`.
    pub fn element(&self, component: usize, u: &[Rational]) -> TorusElement {
        let mut coords = self.coset_reps[component].coords().to_vec();
        for (ui, v) in u.iter().zip(&self.component_basis) {
            for (x, &vj) in coords.iter_mut().zip(v) {
                *x += ui * from_int(vj);
            }
        }
        TorusElement::new(coords)
    }

    pub fn component_count(&self) -> usize {
        self.coset_reps.len()
    }
}
