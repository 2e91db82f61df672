use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::rational::{frac, from_int};
use crate::exact::{rat, IntLattice, Rational};
use crate::groups::{TorusElement, TorusSubgroup};

use super::{ClosedSubgroup, FixedLocus, Flat};

/// A torus `T^k` acting on `C^{n_c} ⊕ R^{n_r}`: coordinate `j` is rotated
/// by the angle `w_j·θ` (in turns), the real summand is fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusLinearAction {
    rank: usize,
    weights: Vec<Vec<i64>>,
    real_dim: usize,
}

impl TorusLinearAction {
    pub fn new(rank: usize, weights: Vec<Vec<i64>>, real_dim: usize) -> Result<Self> {
        if let Some(bad) = weights.iter().find(|w| w.len() != rank) {
            return Err(Error::DimensionMismatch {
                expected: rank,
                found: bad.len(),
            });
        }
        Ok(TorusLinearAction {
            rank,
            weights,
            real_dim,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    pub fn complex_dim(&self) -> usize {
        self.weights.len()
    }

    pub fn real_dim(&self) -> usize {
        self.real_dim
    }

    pub fn dim(&self) -> usize {
        2 * self.weights.len() + self.real_dim
    }

    /// Nonzero complex coordinates of `x`.
    pub fn support(&self, x: &[Rational]) -> Vec<usize> {
        (0..self.complex_dim())
            .filter(|&j| !(x[2 * j].is_zero() && x[2 * j + 1].is_zero()))
            .collect()
    }

    /// Integer span of the weights indexed by `s`.
    pub fn weight_lattice(&self, s: &[usize]) -> IntLattice {
        let gens: Vec<Vec<i64>> = s.iter().map(|&j| self.weights[j].clone()).collect();
        IntLattice::from_generators(self.rank, &gens).expect("weights have rank entries")
    }

    /// `{θ : w_j·θ ∈ Z for j ∈ s}`, the isotropy of any point with support `s`.
    pub fn support_isotropy(&self, s: &[usize]) -> TorusSubgroup {
        TorusSubgroup::from_lattice(self.weight_lattice(s))
    }

    /// Coordinates fixed by the whole isotropy group of support `s`.
    pub fn closure(&self, s: &[usize]) -> Vec<usize> {
        let l = self.weight_lattice(s);
        (0..self.complex_dim())
            .filter(|&j| l.contains(&self.weights[j]))
            .collect()
    }

    pub fn is_closed(&self, s: &[usize]) -> bool {
        self.closure(s) == s
    }

    /// Closed supports in order of size, then lexicographically.
    pub fn closed_supports(&self) -> Vec<Vec<usize>> {
        let n = self.complex_dim();
        assert!(n < 24, "too many complex coordinates to enumerate supports");
        let mut out: Vec<Vec<usize>> = (0u32..1 << n)
            .map(|mask| (0..n).filter(|j| mask & (1 << j) != 0).collect::<Vec<_>>())
            .filter(|s| self.is_closed(s))
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    pub fn fixed_coordinates(&self, theta: &TorusElement) -> Result<Vec<usize>> {
        self.check_rank(theta)?;
        Ok((0..self.complex_dim())
            .filter(|&j| theta.pair(&self.weights[j]).is_integer())
            .collect())
    }

    pub fn fixes(&self, theta: &TorusElement, x: &[Rational]) -> Result<bool> {
        let fixed = self.fixed_coordinates(theta)?;
        Ok(self
            .support(x)
            .iter()
            .all(|j| fixed.binary_search(j).is_ok()))
    }

    pub fn isotropy(&self, x: &[Rational]) -> TorusSubgroup {
        self.support_isotropy(&self.support(x))
    }

    /// Exact rotation; only quarter turns (or zero coordinates) are exact.
    pub fn act(&self, theta: &TorusElement, x: &[Rational]) -> Result<Vec<Rational>> {
        self.check_rank(theta)?;
        let mut y = x.to_vec();
        for j in 0..self.complex_dim() {
            let (re, im) = (&x[2 * j], &x[2 * j + 1]);
            if re.is_zero() && im.is_zero() {
                continue;
            }
            let turn = frac(&theta.pair(&self.weights[j]));
            let (a, b) = if turn.is_zero() {
                (re.clone(), im.clone())
            } else if turn == rat(1, 4) {
                (-im, re.clone())
            } else if turn == rat(1, 2) {
                (-re, -im)
            } else if turn == rat(3, 4) {
                (im.clone(), -re)
            } else {
                return Err(Error::InexactRotation(theta.to_string()));
            };
            y[2 * j] = a;
            y[2 * j + 1] = b;
        }
        Ok(y)
    }

    fn check_rank(&self, theta: &TorusElement) -> Result<()> {
        if theta.rank() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                found: theta.rank(),
            });
        }
        Ok(())
    }

    /// A point with support exactly `s` and zero real part.
    pub fn support_witness(&self, s: &[usize]) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.dim()];
        for &j in s {
            x[2 * j] = from_int(1);
        }
        x
    }

    pub fn flats(&self) -> Vec<Flat> {
        self.closed_supports()
            .into_iter()
            .map(|s| Flat {
                dim: 2 * s.len() + self.real_dim,
                stabilizer: ClosedSubgroup::Torus(self.support_isotropy(&s)),
                witness: self.support_witness(&s),
                locus: FixedLocus::Support(s),
            })
            .collect()
    }
}
