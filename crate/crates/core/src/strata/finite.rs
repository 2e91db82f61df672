//! Pieces of the loop space of a finite linear action.
//!
//! A piece is the `G`-saturation of `{h} × V(K, h)`, where `K = Z_{G_x}(h)` is
//! the isotropy of a loop point and `V(K, h)` is the set of points of
//! `Fix(K)` not fixed by any further element of `Z_G(h)`. Pieces are indexed
//! by `G`-conjugacy classes of pairs `(K, h)`.

use std::collections::BTreeSet;

use crate::actions::FiniteLinearAction;
use crate::arrangement::{chambers, generic_point, in_closure, sign_vector, AffineForm, Chamber};
use crate::error::{Error, Result};
use crate::exact::{kernel_subspace, QMatrix, QSubspace, Rational};
use crate::groups::{FiniteGroup, FiniteSubgroup};

/// `(sorted members of K, h)`.
pub type PairKey = (Vec<usize>, usize);

#[derive(Clone, Debug)]
pub struct FinitePiece {
    pub k: FiniteSubgroup,
    pub h: usize,
    /// `Fix(K)`; chamber data lives in its pivot coordinates.
    pub fix: QSubspace,
    pub hyperplanes: Vec<AffineForm>,
    pub chambers: Vec<Chamber>,
    /// `{g : g h g⁻¹ = h, g K g⁻¹ = K}`.
    pub stab: FiniteSubgroup,
    /// Smallest element of each left coset `g·Stab`, sorted.
    pub cosets: Vec<usize>,
    /// Orbits of `Stab` on chambers, each sorted, ordered by first chamber.
    pub chamber_orbits: Vec<Vec<usize>>,
}

/// Smallest `G`-conjugate of the pair.
pub fn canonical_pair(g: &FiniteGroup, k: &FiniteSubgroup, h: usize) -> PairKey {
    (0..g.order())
        .map(|x| (g.conjugate_subgroup(x, k).members().to_vec(), g.conj(x, h)))
        .min()
        .expect("nonempty group")
}

/// Realized pairs `(Z_{G_F}(h), h)` over flats `F` and `h ∈ G_F`, up to conjugacy.
pub fn realized_pairs(action: &FiniteLinearAction) -> Result<BTreeSet<PairKey>> {
    let g = action.group();
    let mut out = BTreeSet::new();
    for flat in action.flats()? {
        let crate::actions::ClosedSubgroup::Finite(gf) = &flat.stabilizer else {
            unreachable!()
        };
        for &h in gf.members() {
            out.insert(canonical_pair(g, &g.centralizer_in(gf, h), h));
        }
    }
    Ok(out)
}

fn canonical_form(mut f: AffineForm) -> AffineForm {
    if let Some(c) = f
        .coeffs
        .iter()
        .find(|c| !num_traits::Zero::is_zero(*c))
        .cloned()
    {
        let s = num_traits::Signed::abs(&c) / c;
        f.coeffs.iter_mut().for_each(|x| *x = &*x * &s);
        f.constant = &f.constant * &s;
    }
    f
}

/// Linear forms on the pivot coordinates of `fix` that cut out `sub`.
fn forms_for(fix: &QSubspace, sub: &QSubspace) -> Vec<Vec<Rational>> {
    let d = fix.dim();
    let rows: Vec<Vec<Rational>> = sub
        .basis()
        .row_vecs()
        .iter()
        .map(|v| fix.coordinates(v).expect("subspace of flat"))
        .collect();
    let m = if rows.is_empty() {
        QMatrix::zeros(1, d)
    } else {
        QMatrix::from_rows(d, rows).expect("consistent width")
    };
    kernel_subspace(&m).basis().row_vecs()
}

impl FinitePiece {
    pub fn build(action: &FiniteLinearAction, key: &PairKey) -> Result<Self> {
        let g = action.group();
        let k = FiniteSubgroup::from_members(key.0.clone());
        let h = key.1;
        let fix = action.fixed_space_of(&k);
        let d = fix.dim();
        let mut hyper: BTreeSet<AffineForm> = BTreeSet::new();
        let mut small: BTreeSet<QSubspace> = BTreeSet::new();
        for &y in g.centralizer(h).members() {
            if k.contains(y) {
                continue;
            }
            let e = fix.meet(&action.fixed_space(y));
            match d - e.dim() {
                0 => {
                    return Err(Error::Config(format!(
                        "pair ({:?}, {h}) is not realized",
                        key.0
                    )))
                }
                1 => {
                    let n = forms_for(&fix, &e).remove(0);
                    hyper.insert(canonical_form(AffineForm::linear(n)));
                }
                _ => {
                    small.insert(e);
                }
            }
        }
        let hyperplanes: Vec<AffineForm> = hyper.into_iter().collect();
        let avoid: Vec<Vec<Vec<Rational>>> = small.iter().map(|e| forms_for(&fix, e)).collect();
        let mut chambers = chambers(d, &[], &hyperplanes);
        for ch in &mut chambers {
            let strict: Vec<AffineForm> = hyperplanes
                .iter()
                .zip(&ch.signs)
                .map(|(f, &s)| {
                    AffineForm::linear(
                        f.coeffs
                            .iter()
                            .map(|c| c * Rational::from_integer(s.into()))
                            .collect(),
                    )
                })
                .collect();
            ch.witness = generic_point(d, &ch.witness, &strict, &avoid)
                .ok_or(Error::WitnessSearchExhausted { dim: d })?;
        }
        let stab = FiniteSubgroup::from_members(
            (0..g.order())
                .filter(|&x| g.conj(x, h) == h && g.conjugate_subgroup(x, &k) == k)
                .collect(),
        );
        let cosets: BTreeSet<usize> = (0..g.order())
            .map(|x| stab.members().iter().map(|&s| g.mul(x, s)).min().unwrap())
            .collect();
        let mut piece = FinitePiece {
            k,
            h,
            fix,
            hyperplanes,
            chambers,
            stab,
            cosets: cosets.into_iter().collect(),
            chamber_orbits: Vec::new(),
        };
        piece.chamber_orbits = piece.orbits(action);
        Ok(piece)
    }

    fn orbits(&self, action: &FiniteLinearAction) -> Vec<Vec<usize>> {
        let n = self.chambers.len();
        let mut orbit_of = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for c in 0..n {
            if orbit_of[c] != usize::MAX {
                continue;
            }
            let p = self.point(&self.chambers[c].witness);
            let mut orbit: BTreeSet<usize> = BTreeSet::new();
            for &s in self.stab.members() {
                let image = action.act(s, &p);
                orbit.insert(
                    self.chamber_of_point(&image)
                        .expect("stabilizer permutes chambers"),
                );
            }
            for &o in &orbit {
                orbit_of[o] = out.len();
            }
            out.push(orbit.into_iter().collect());
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.fix.dim()
    }

    /// Point of `M` with the given flat coordinates.
    pub fn point(&self, coords: &[Rational]) -> Vec<Rational> {
        self.fix.point(coords)
    }

    /// Chamber of a point of `V(K, h)`; `None` off the flat or on a hyperplane.
    pub fn chamber_of_point(&self, x: &[Rational]) -> Option<usize> {
        let c = self.fix.coordinates(x)?;
        let s = sign_vector(&self.hyperplanes, &c)?;
        self.chambers.iter().position(|ch| ch.signs == s)
    }

    /// Whether `x` lies in the closure of chamber `c` (inside `Fix(K)`).
    pub fn chamber_closure_contains(&self, c: usize, x: &[Rational]) -> bool {
        match self.fix.coordinates(x) {
            Some(coords) => in_closure(&self.chambers[c].signs, &self.hyperplanes, &coords),
            None => false,
        }
    }

    pub fn coset_of(&self, g: &FiniteGroup, x: usize) -> usize {
        let rep = self
            .stab
            .members()
            .iter()
            .map(|&s| g.mul(x, s))
            .min()
            .unwrap();
        self.cosets.binary_search(&rep).expect("coset listed")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2_line() -> FiniteLinearAction {
        FiniteLinearAction::new(FiniteGroup::generate(&[QMatrix::from_i64(&[&[-1]])], 10).unwrap())
    }

    #[test]
    fn z2_on_the_line() {
        let a = z2_line();
        let pairs: Vec<PairKey> = realized_pairs(&a).unwrap().into_iter().collect();
        assert_eq!(pairs, vec![(vec![0], 0), (vec![0, 1], 0), (vec![0, 1], 1)]);
        let regular = FinitePiece::build(&a, &pairs[0]).unwrap();
        assert_eq!(
            (regular.dim(), regular.chambers.len(), regular.cosets.len()),
            (1, 2, 1)
        );
        assert_eq!(regular.chamber_orbits, vec![vec![0, 1]]);
        let origin = FinitePiece::build(&a, &pairs[2]).unwrap();
        assert_eq!((origin.dim(), origin.chambers.len()), (0, 1));
    }
}
