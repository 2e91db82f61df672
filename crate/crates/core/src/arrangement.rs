//! Chambers of rational hyperplane arrangements.
//!
//! Two settings are covered: central arrangements inside a flat (finite
//! group models) and periodic arrangements on a low dimensional torus,
//! handled on the unit cube with opposite facets glued together.

use num_traits::{One, Signed, Zero};

use crate::exact::rational::from_int;
use crate::exact::Rational;

/// The affine form `coeffs·u + constant`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineForm {
    pub coeffs: Vec<Rational>,
    pub constant: Rational,
}

impl AffineForm {
    pub fn linear(coeffs: Vec<Rational>) -> Self {
        AffineForm {
            coeffs,
            constant: Rational::zero(),
        }
    }

    pub fn eval(&self, u: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .zip(u)
            .fold(self.constant.clone(), |acc, (a, x)| acc + a * x)
    }

    fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Positive rescaling making the first nonzero coefficient ±1.
    fn normalized(&self) -> AffineForm {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            Some(c) => {
                let s = c.abs().recip();
                AffineForm {
                    coeffs: self.coeffs.iter().map(|x| x * &s).collect(),
                    constant: &self.constant * &s,
                }
            }
            None => self.clone(),
        }
    }

    fn scaled(&self, s: &Rational) -> AffineForm {
        AffineForm {
            coeffs: self.coeffs.iter().map(|x| x * s).collect(),
            constant: &self.constant * s,
        }
    }

    fn add(&self, other: &AffineForm) -> AffineForm {
        AffineForm {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
            constant: &self.constant + &other.constant,
        }
    }

    /// Substitutes `u_axis = value`, dropping that variable.
    pub fn restrict(&self, axis: usize, value: &Rational) -> AffineForm {
        let mut coeffs = self.coeffs.clone();
        let a = coeffs.remove(axis);
        AffineForm {
            coeffs,
            constant: &self.constant + a * value,
        }
    }
}

pub fn sign(x: &Rational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn prune(forms: Vec<AffineForm>) -> Option<Vec<AffineForm>> {
    let mut out = Vec::with_capacity(forms.len());
    for f in forms {
        if f.is_constant() {
            if !f.constant.is_positive() {
                return None;
            }
            continue;
        }
        out.push(f.normalized());
    }
    out.sort();
    out.dedup();
    Some(out)
}

/// A point with every form strictly positive, by Fourier–Motzkin
/// elimination and back substitution.
pub fn strict_feasible(dim: usize, constraints: &[AffineForm]) -> Option<Vec<Rational>> {
    let mut levels = vec![prune(constraints.to_vec())?];
    for var in (0..dim).rev() {
        let current = levels.last().unwrap();
        let mut lower = Vec::new();
        let mut upper = Vec::new();
        let mut next = Vec::new();
        for f in current {
            match sign(&f.coeffs[var]) {
                0 => next.push(f.clone()),
                1 => lower.push(f.scaled(&f.coeffs[var].recip())),
                _ => upper.push(f.scaled(&(-f.coeffs[var].recip()))),
            }
        }
        for l in &lower {
            for u in &upper {
                next.push(l.add(u));
            }
        }
        levels.push(prune(next)?);
    }
    let mut point = vec![Rational::zero(); dim];
    for var in 0..dim {
        let forms = &levels[dim - var - 1];
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        for f in forms {
            let a = &f.coeffs[var];
            if a.is_zero() {
                continue;
            }
            let mut rest = f.constant.clone();
            for (j, x) in point.iter().enumerate().take(var) {
                rest += &f.coeffs[j] * x;
            }
            let bound = -rest / a;
            if a.is_positive() {
                lo = Some(lo.map_or(bound.clone(), |l| l.max(bound)));
            } else {
                hi = Some(hi.map_or(bound.clone(), |h| h.min(bound)));
            }
        }
        point[var] = match (lo, hi) {
            (Some(l), Some(h)) => (l + h) / from_int(2),
            (Some(l), None) => l + Rational::one(),
            (None, Some(h)) => h - Rational::one(),
            (None, None) => Rational::zero(),
        };
    }
    debug_assert!(constraints.iter().all(|c| c.eval(&point).is_positive()));
    Some(point)
}

/// An open chamber: its sign vector on the hyperplanes and an interior point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chamber {
    pub signs: Vec<i8>,
    pub witness: Vec<Rational>,
}

/// Chambers of `hyperplanes` inside the open region `{base > 0}`, sorted by
/// sign vector with `+` before `-`.
pub fn chambers(dim: usize, base: &[AffineForm], hyperplanes: &[AffineForm]) -> Vec<Chamber> {
    let Some(start) = strict_feasible(dim, base) else {
        return Vec::new();
    };
    let mut current = vec![Chamber {
        signs: Vec::new(),
        witness: start,
    }];
    for (i, h) in hyperplanes.iter().enumerate() {
        let mut next = Vec::new();
        for ch in current {
            let here = sign(&h.eval(&ch.witness));
            for side in [1i8, -1] {
                let witness = if here == side {
                    Some(ch.witness.clone())
                } else {
                    let mut cons = base.to_vec();
                    for (j, s) in ch.signs.iter().enumerate() {
                        cons.push(hyperplanes[j].scaled(&from_int(i64::from(*s))));
                    }
                    cons.push(h.scaled(&from_int(i64::from(side))));
                    strict_feasible(dim, &cons)
                };
                if let Some(w) = witness {
                    let mut signs = ch.signs.clone();
                    signs.push(side);
                    next.push(Chamber { signs, witness: w });
                }
            }
        }
        current = next;
        debug_assert!(current.iter().all(|c| c.signs.len() == i + 1));
    }
    current.sort_by_key(|c| c.signs.iter().map(|&s| s < 0).collect::<Vec<_>>());
    current
}

/// Whether `point` lies in the closure of the chamber with sign vector `signs`.
pub fn in_closure(signs: &[i8], hyperplanes: &[AffineForm], point: &[Rational]) -> bool {
    signs
        .iter()
        .zip(hyperplanes)
        .all(|(&s, h)| i64::from(sign(&h.eval(point))) * i64::from(s) >= 0)
}

/// Sign vector of a point, `None` when it lies on some hyperplane.
pub fn sign_vector(hyperplanes: &[AffineForm], point: &[Rational]) -> Option<Vec<i8>> {
    hyperplanes
        .iter()
        .map(|h| match sign(&h.eval(point)) {
            0 => None,
            s => Some(s),
        })
        .collect()
}

/// A point near `start` satisfying every strict constraint and lying in
/// none of the `avoid` subspaces (each given by linear forms that all vanish
/// on it). Candidates run along the moment curve `start + (1, t, t², …)/N`,
/// which meets any proper subspace in fewer than `dim` values of `t`.
pub fn generic_point(
    dim: usize,
    start: &[Rational],
    strict: &[AffineForm],
    avoid: &[Vec<Vec<Rational>>],
) -> Option<Vec<Rational>> {
    let ok = |p: &[Rational]| {
        strict.iter().all(|c| c.eval(p).is_positive())
            && avoid.iter().all(|forms| {
                !forms.iter().all(|f| {
                    f.iter()
                        .zip(p)
                        .fold(Rational::zero(), |a, (x, y)| a + x * y)
                        .is_zero()
                })
            })
    };
    if ok(start) {
        return Some(start.to_vec());
    }
    let tries = dim.max(1) * (avoid.len() + 1) + 1;
    for scale in 0..40 {
        let n = from_int(1i64 << scale);
        for t in 1..=tries as i64 {
            let mut power = Rational::one();
            let p: Vec<Rational> = start
                .iter()
                .map(|s| {
                    let v = s + &power / &n;
                    power *= from_int(t);
                    v
                })
                .collect();
            if ok(&p) {
                return Some(p);
            }
        }
    }
    None
}

/// A periodic arrangement on `R^d / Z^d`: each family `α·u ≡ c (mod 1)`
/// contributes every parallel hyperplane meeting the closed unit cube.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricArrangement {
    dim: usize,
    lines: Vec<AffineForm>,
    chambers: Vec<Chamber>,
    components: Vec<ToricComponent>,
}

/// A connected component of the torus minus the arrangement, as a set of
/// cube chambers plus a representative in `[0,1)^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricComponent {
    pub cells: Vec<usize>,
    pub representative: Vec<Rational>,
}

pub(crate) fn cube_base(dim: usize) -> Vec<AffineForm> {
    let mut base = Vec::new();
    for i in 0..dim {
        let mut e = vec![Rational::zero(); dim];
        e[i] = Rational::one();
        base.push(AffineForm::linear(e.clone()));
        base.push(AffineForm {
            coeffs: e.iter().map(|x| -x).collect(),
            constant: Rational::one(),
        });
    }
    base
}

impl ToricArrangement {
    pub fn new(dim: usize, families: &[(Vec<i64>, Rational)]) -> Self {
        let mut lines = Vec::new();
        for (alpha, offset) in families {
            assert_eq!(alpha.len(), dim);
            if alpha.iter().all(|&a| a == 0) {
                continue;
            }
            let lo: i64 = alpha.iter().filter(|&&a| a < 0).sum();
            let hi: i64 = alpha.iter().filter(|&&a| a > 0).sum();
            let first = (from_int(lo) - offset).ceil().to_integer();
            let last = (from_int(hi) - offset).floor().to_integer();
            let first = i64::try_from(&first).unwrap();
            let last = i64::try_from(&last).unwrap();
            for m in first..=last {
                let form = AffineForm {
                    coeffs: alpha.iter().map(|&a| from_int(a)).collect(),
                    constant: -(offset + from_int(m)),
                };
                lines.push(form.normalized());
            }
        }
        lines.sort();
        lines.dedup();
        let chambers = chambers(dim, &cube_base(dim), &lines);
        let mut arr = ToricArrangement {
            dim,
            lines,
            chambers,
            components: Vec::new(),
        };
        arr.components = arr.glue();
        arr
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lines(&self) -> &[AffineForm] {
        &self.lines
    }

    pub fn chambers(&self) -> &[Chamber] {
        &self.chambers
    }

    pub fn components(&self) -> &[ToricComponent] {
        &self.components
    }

    /// Strict inequalities cutting out chamber `cell` inside the open cube.
    pub fn cell_constraints(&self, cell: usize) -> Vec<AffineForm> {
        let mut cons = cube_base(self.dim);
        for (l, &s) in self.lines.iter().zip(&self.chambers[cell].signs) {
            cons.push(l.scaled(&from_int(i64::from(s))));
        }
        cons
    }

    fn chamber_of(&self, point: &[Rational]) -> Option<usize> {
        let s = sign_vector(&self.lines, point)?;
        self.chambers.iter().position(|c| c.signs == s)
    }

    fn glue(&self) -> Vec<ToricComponent> {
        let n = self.chambers.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for axis in 0..self.dim {
            let zero = Rational::zero();
            let restricted: Vec<AffineForm> =
                self.lines.iter().map(|l| l.restrict(axis, &zero)).collect();
            if restricted
                .iter()
                .any(|f| f.is_constant() && f.constant.is_zero())
            {
                continue;
            }
            let facet_lines: Vec<AffineForm> = restricted
                .into_iter()
                .filter(|f| !f.is_constant())
                .collect();
            for facet in chambers(self.dim - 1, &cube_base(self.dim - 1), &facet_lines) {
                let mut low = facet.witness.clone();
                low.insert(axis, Rational::zero());
                let mut high = facet.witness.clone();
                high.insert(axis, Rational::one());
                if let (Some(a), Some(b)) = (self.chamber_of(&low), self.chamber_of(&high)) {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
        let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
        for c in 0..n {
            let r = find(&mut parent, c);
            match groups.iter_mut().find(|(root, _)| *root == r) {
                Some((_, cells)) => cells.push(c),
                None => groups.push((r, vec![c])),
            }
        }
        let mut comps: Vec<ToricComponent> = groups
            .into_iter()
            .map(|(_, cells)| {
                let representative = cells
                    .iter()
                    .map(|&c| self.chambers[c].witness.clone())
                    .min()
                    .unwrap();
                ToricComponent {
                    cells,
                    representative,
                }
            })
            .collect();
        comps.sort_by(|a, b| a.representative.cmp(&b.representative));
        comps
    }

    fn lifts(&self, u: &[Rational]) -> Vec<Vec<Rational>> {
        let mut out = vec![Vec::new()];
        for x in u {
            let mut next = Vec::new();
            for p in &out {
                let mut a = p.clone();
                a.push(x.clone());
                next.push(a);
                if x.is_zero() {
                    let mut b = p.clone();
                    b.push(Rational::one());
                    next.push(b);
                }
            }
            out = next;
        }
        out
    }

    /// Whether `u` (coordinates in `[0,1)^d`) lies in the arrangement.
    pub fn excluded(&self, u: &[Rational]) -> bool {
        self.lifts(u)
            .iter()
            .any(|q| sign_vector(&self.lines, q).is_none())
    }

    /// Index of the component containing `u`, `None` if `u` is excluded.
    pub fn component_of(&self, u: &[Rational]) -> Option<usize> {
        if self.excluded(u) {
            return None;
        }
        let cell = self.chamber_of(&self.lifts(u)[0])?;
        self.components.iter().position(|c| c.cells.contains(&cell))
    }

    pub fn closure_contains(&self, component: usize, u: &[Rational]) -> bool {
        let comp = &self.components[component];
        self.lifts(u).iter().any(|q| {
            comp.cells
                .iter()
                .any(|&c| in_closure(&self.chambers[c].signs, &self.lines, q))
        })
    }
}

/// Reduces coordinates into `[0,1)`.
pub fn reduce_mod_one(u: &[Rational]) -> Vec<Rational> {
    u.iter().map(crate::exact::rational::frac).collect()
}
