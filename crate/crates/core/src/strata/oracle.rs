//! Brute-force cross-check of the engine on all small rational loop points.
//!
//! Finite models: isotropy and conjugacy canonicalization by enumeration in
//! scaled integer arithmetic, chambers by sign vectors against normals of
//! the excluded hyperplanes. Torus models: components of a class by
//! convex cells of a fine grid in cube coordinates, glued across the cube
//! faces.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::actions::{FiniteLinearAction, GroupElement, Model, TorusLinearAction};
use crate::error::{Error, Result};
use crate::exact::rational::from_int;
use crate::exact::{kernel_subspace, rat, QMatrix, QSubspace, Rational};
use crate::groups::TorusElement;

use super::Stratification;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub denominator_bound: usize,
    pub samples: usize,
    pub oracle_components: usize,
    pub oracle_strata: usize,
    /// Engine components hit by at least one sample.
    pub engine_components_hit: usize,
    pub engine_components: usize,
    /// Finite models: number of sampled orbit types (conjugacy classes of
    /// isotropy groups in `G × M`). Each engine stratum must lie in one.
    pub orbit_types: Option<usize>,
    pub mismatches: Vec<String>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// `{p/q : 1 ≤ q ≤ d, |p| ≤ q}`, sorted.
fn sample_values(d: usize) -> Vec<Rational> {
    let set: BTreeSet<Rational> = (1..=d as i64)
        .flat_map(|q| (-q..=q).map(move |p| rat(p, q)))
        .collect();
    set.into_iter().collect()
}

fn lcm_upto(n: usize) -> i64 {
    (1..=n as i64).fold(1, |a, b| a.lcm(&b))
}

pub fn sampling_oracle(s: &Stratification, d: usize, budget: usize) -> Result<OracleReport> {
    if d == 0 {
        return Err(Error::Config("denominator bound must be at least 1".into()));
    }
    match s.model() {
        Model::Finite(a) => finite_oracle(s, a, d, budget),
        Model::Torus(a) => torus_oracle(s, a, d, budget),
    }
}

fn bijection_mismatches<L: Ord + std::fmt::Debug>(pairs: &[(L, usize)], what: &str) -> Vec<String> {
    let mut fwd: BTreeMap<&L, BTreeSet<usize>> = BTreeMap::new();
    let mut back: BTreeMap<usize, BTreeSet<&L>> = BTreeMap::new();
    for (l, e) in pairs {
        fwd.entry(l).or_default().insert(*e);
        back.entry(*e).or_default().insert(l);
    }
    let mut out = Vec::new();
    for (l, es) in &fwd {
        if es.len() > 1 {
            out.push(format!("oracle {what} {l:?} spans engine {what}s {es:?}"));
        }
    }
    for (e, ls) in &back {
        if ls.len() > 1 {
            out.push(format!(
                "engine {what} {e} merges {} oracle labels",
                ls.len()
            ));
        }
    }
    out
}

fn summarize(
    d: usize,
    samples: usize,
    s: &Stratification,
    lm: Vec<(impl Ord + std::fmt::Debug + Clone, usize)>,
    lx: Vec<(impl Ord + std::fmt::Debug + Clone, usize)>,
) -> OracleReport {
    let mut mismatches = bijection_mismatches(&lm, "component");
    mismatches.extend(bijection_mismatches(&lx, "stratum"));
    let oracle_components = lm
        .iter()
        .map(|(l, _)| l.clone())
        .collect::<BTreeSet<_>>()
        .len();
    let oracle_strata = lx
        .iter()
        .map(|(l, _)| l.clone())
        .collect::<BTreeSet<_>>()
        .len();
    let hit = lm.iter().map(|(_, e)| *e).collect::<BTreeSet<_>>().len();
    OracleReport {
        denominator_bound: d,
        samples,
        oracle_components,
        oracle_strata,
        engine_components_hit: hit,
        engine_components: s.components.len(),
        orbit_types: None,
        mismatches,
    }
}

type IntVec = Vec<i64>;

/// Scaled integer copy of a finite action: `ρ(g) = mats[g] / dens[g]`.
struct IntAction {
    mats: Vec<Vec<IntVec>>,
    dens: Vec<i64>,
}

impl IntAction {
    fn new(a: &FiniteLinearAction) -> Self {
        let order = a.group().order();
        let n = a.dim();
        let mut mats = Vec::with_capacity(order);
        let mut dens = Vec::with_capacity(order);
        for g in 0..order {
            let r = a.rep(g);
            let den = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .fold(num_bigint::BigInt::from(1), |acc, (i, j)| {
                    acc.lcm(r[(i, j)].denom())
                });
            let den_q = Rational::from_integer(den.clone());
            mats.push(
                (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| i64::try_from(&(&r[(i, j)] * &den_q).to_integer()).unwrap())
                            .collect()
                    })
                    .collect(),
            );
            dens.push(i64::try_from(&den).unwrap());
        }
        IntAction { mats, dens }
    }

    /// `ρ(g) y` up to the positive factor `dens[g]`.
    fn act(&self, g: usize, y: &[i64]) -> IntVec {
        self.mats[g]
            .iter()
            .map(|row| row.iter().zip(y).map(|(a, b)| a * b).sum())
            .collect()
    }

    fn fixes(&self, g: usize, y: &[i64]) -> bool {
        self.act(g, y)
            .iter()
            .zip(y)
            .all(|(a, b)| *a == self.dens[g] * b)
    }

    fn stabilizer(&self, y: &[i64]) -> Vec<usize> {
        (0..self.mats.len()).filter(|&g| self.fixes(g, y)).collect()
    }
}

type PairLabel = (Vec<usize>, usize);

fn conj_pair(a: &FiniteLinearAction, g: usize, k: &[usize], h: usize) -> PairLabel {
    let grp = a.group();
    let mut ks: Vec<usize> = k.iter().map(|&x| grp.conj(g, x)).collect();
    ks.sort_unstable();
    (ks, grp.conj(g, h))
}

/// Primitive integer normals (within `Fix(K)`) of the codimension-one loci
/// `Fix(K) ∩ Fix(g)`, `g ∈ Z_G(h) ∖ K`.
fn normals(a: &FiniteLinearAction, key: &PairLabel) -> Vec<IntVec> {
    let grp = a.group();
    let n = a.dim();
    let mut fix = QSubspace::full(n);
    for &k in &key.0 {
        fix = fix.meet(&kernel_subspace(&a.rep(k).sub(&QMatrix::identity(n))));
    }
    let mut out: BTreeSet<IntVec> = BTreeSet::new();
    for g in 0..grp.order() {
        if grp.mul(g, key.1) != grp.mul(key.1, g) || key.0.binary_search(&g).is_ok() {
            continue;
        }
        let e = fix.meet(&kernel_subspace(&a.rep(g).sub(&QMatrix::identity(n))));
        if e.dim() + 1 != fix.dim() {
            continue;
        }
        let normal = fix.meet(&e.annihilator());
        let v = normal.basis().row(0).to_vec();
        let den = v
            .iter()
            .fold(num_bigint::BigInt::from(1), |acc, x| acc.lcm(x.denom()));
        let mut iv: IntVec = v
            .iter()
            .map(|x| {
                i64::try_from(&(x * Rational::from_integer(den.clone())).to_integer()).unwrap()
            })
            .collect();
        let g = iv.iter().fold(0i64, |acc, x| acc.gcd(x));
        let lead = iv.iter().find(|x| **x != 0).copied().unwrap_or(1).signum();
        iv.iter_mut().for_each(|x| *x = *x / g * lead);
        out.insert(iv);
    }
    out.into_iter().collect()
}

type LmLabel = (Vec<usize>, usize, Vec<i8>);

fn finite_oracle(
    s: &Stratification,
    a: &FiniteLinearAction,
    d: usize,
    budget: usize,
) -> Result<OracleReport> {
    let vals = sample_values(d);
    let l = lcm_upto(d);
    let ints: Vec<i64> = vals
        .iter()
        .map(|v| i64::try_from(&(v * from_int(l)).to_integer()).unwrap())
        .collect();
    let n = a.dim();
    let total = (0..n)
        .try_fold(1usize, |acc, _| acc.checked_mul(ints.len()))
        .unwrap_or(usize::MAX);
    if total > budget {
        return Err(Error::SampleBudgetExceeded { budget });
    }
    let ia = IntAction::new(a);
    let grp = a.group();
    let order = grp.order();
    let decode = |mut i: usize| -> IntVec {
        let mut v = vec![0; n];
        for slot in v.iter_mut() {
            *slot = ints[i % ints.len()];
            i /= ints.len();
        }
        v
    };
    let pair_of = |h: usize, y: &[i64]| -> (Vec<usize>, PairLabel) {
        let stab = ia.stabilizer(y);
        let k: Vec<usize> = stab
            .iter()
            .copied()
            .filter(|&g| grp.mul(g, h) == grp.mul(h, g))
            .collect();
        let canon = (0..order).map(|g| conj_pair(a, g, &k, h)).min().unwrap();
        (k, canon)
    };
    // pass 1: canonical pairs present in the sample
    let keys: BTreeSet<PairLabel> = (0..total)
        .into_par_iter()
        .flat_map_iter(|i| {
            let y = decode(i);
            ia.stabilizer(&y)
                .into_iter()
                .map(move |h| pair_of(h, &decode(i)).1)
        })
        .collect();
    let normal_map: HashMap<PairLabel, Vec<IntVec>> =
        keys.iter().map(|k| (k.clone(), normals(a, k))).collect();
    let lm_label = |h: usize, y: &[i64]| -> LmLabel {
        let (k, canon) = pair_of(h, y);
        let g0 = (0..order)
            .find(|&g| conj_pair(a, g, &canon.0, canon.1) == (k.clone(), h))
            .unwrap();
        let back = ia.act(grp.inv(g0), y);
        let signs = normal_map[&canon]
            .iter()
            .map(|nv| {
                nv.iter()
                    .zip(&back)
                    .map(|(p, q)| p * q)
                    .sum::<i64>()
                    .signum() as i8
            })
            .collect();
        (k, h, signs)
    };
    let orbit_type = |k: &[usize]| -> Vec<usize> {
        (0..order)
            .map(|g| {
                let mut c: Vec<usize> = k.iter().map(|&x| grp.conj(g, x)).collect();
                c.sort_unstable();
                c
            })
            .min()
            .unwrap()
    };
    let rows: Vec<(LmLabel, LmLabel, usize, usize)> = (0..total)
        .into_par_iter()
        .map(|i| -> Result<Vec<_>> {
            let y = decode(i);
            let x: Vec<Rational> = y.iter().map(|&v| rat(v, l)).collect();
            let mut out = Vec::new();
            for h in ia.stabilizer(&y) {
                let lm = lm_label(h, &y);
                let lx = (0..order)
                    .map(|g| lm_label(grp.conj(g, h), &ia.act(g, &y)))
                    .min()
                    .unwrap();
                let (_, cid) = s.stratum_of_point(&GroupElement::Finite(h), &x)?;
                out.push((lm, lx, cid, s.components[cid].stratum));
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let samples = rows.len();
    let mut types: BTreeMap<usize, BTreeSet<Vec<usize>>> = BTreeMap::new();
    for r in &rows {
        types.entry(r.3).or_default().insert(orbit_type(&r.0 .0));
    }
    let lm: Vec<(LmLabel, usize)> = rows.iter().map(|r| (r.0.clone(), r.2)).collect();
    let lx: Vec<(LmLabel, usize)> = rows.into_iter().map(|r| (r.1, r.3)).collect();
    let mut report = summarize(d, samples, s, lm, lx);
    for (sid, ts) in &types {
        if ts.len() > 1 {
            report.mismatches.push(format!(
                "engine stratum {sid} spans {} orbit types",
                ts.len()
            ));
        }
    }
    report.orbit_types = Some(types.values().flatten().collect::<BTreeSet<_>>().len());
    Ok(report)
}

/// Components of classes with one fixed-coordinate pattern `F`, coset by
/// coset of the identity component of `{θ : w_j · θ ∈ Z for j ∈ F}`.
///
/// Points of a coset are `θ₀ + Σ U_i dirs_i / N`, `U ∈ [0, N)^d`. Off the
/// excluded walls the cube splits into convex cells indexed by `⌊w_j · θ⌋`
/// over the free weights; cells are glued through points on the faces
/// `U_i = 0`. `N` is a multiple of every vertex denominator times 6, so each
/// cell and each piece of face holds a grid point.
struct CellGrid<'a> {
    a: &'a TorusLinearAction,
    n: i64,
    dirs: Vec<Vec<i64>>,
    free: Vec<usize>,
    /// `w_j · dirs_i` for free `j`.
    slopes: Vec<Vec<i64>>,
    cosets: Vec<CosetCells>,
}

struct CosetCells {
    base: TorusElement,
    root: HashMap<Vec<i64>, usize>,
}

impl<'a> CellGrid<'a> {
    fn new(
        a: &'a TorusLinearAction,
        sample_lcm: i64,
        dirs: Vec<Vec<i64>>,
        fixed: &[usize],
    ) -> Self {
        let free: Vec<usize> = (0..a.complex_dim())
            .filter(|j| fixed.binary_search(j).is_err())
            .collect();
        let slopes: Vec<Vec<i64>> = free
            .iter()
            .map(|&j| {
                dirs.iter()
                    .map(|v| a.weights()[j].iter().zip(v).map(|(x, y)| x * y).sum())
                    .collect()
            })
            .collect();
        let mut m = 1i64;
        for s in &slopes {
            for c in s.iter().filter(|c| **c != 0) {
                m = m.lcm(c);
            }
        }
        if dirs.len() == 2 {
            for (i, s) in slopes.iter().enumerate() {
                for r in &slopes[i + 1..] {
                    let det = s[0] * r[1] - s[1] * r[0];
                    if det != 0 {
                        m = m.lcm(&det);
                    }
                }
            }
        }
        CellGrid {
            a,
            n: 6 * sample_lcm * m,
            dirs,
            free,
            slopes,
            cosets: Vec::new(),
        }
    }

    fn values(&self, base: &[i64], u: &[i64]) -> Vec<i64> {
        base.iter()
            .zip(&self.slopes)
            .map(|(b, s)| b + s.iter().zip(u).map(|(x, y)| x * y).sum::<i64>())
            .collect()
    }

    fn cell(&self, vals: &[i64]) -> Option<Vec<i64>> {
        if vals.iter().any(|v| v.rem_euclid(self.n) == 0) {
            return None;
        }
        Some(
            vals.iter()
                .map(|v| Integer::div_floor(v, &self.n))
                .collect(),
        )
    }

    fn scaled_base(&self, base: &TorusElement) -> Vec<i64> {
        self.free
            .iter()
            .map(|&j| {
                i64::try_from(&(base.pair(&self.a.weights()[j]) * from_int(self.n)).to_integer())
                    .expect("grid contains base")
            })
            .collect()
    }

    fn build(&self, base: TorusElement) -> CosetCells {
        let b = self.scaled_base(&base);
        let d = self.dirs.len();
        let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
        let mut parent: Vec<usize> = Vec::new();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut intern = |c: Vec<i64>, parent: &mut Vec<usize>| -> usize {
            *index.entry(c).or_insert_with(|| {
                parent.push(parent.len());
                parent.len() - 1
            })
        };
        let total = (self.n as usize).pow(d as u32);
        for idx in 0..total {
            let mut rest = idx;
            let u: Vec<i64> = (0..d)
                .map(|_| {
                    let x = (rest % self.n as usize) as i64;
                    rest /= self.n as usize;
                    x
                })
                .collect();
            let vals = self.values(&b, &u);
            let Some(cell) = self.cell(&vals) else {
                continue;
            };
            let zeros: Vec<usize> = (0..d).filter(|&i| u[i] == 0).collect();
            let id = intern(cell.clone(), &mut parent);
            for mask in 1..(1usize << zeros.len()) {
                let mut shifted = cell.clone();
                for (bit, &i) in zeros.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        for (x, s) in shifted.iter_mut().zip(&self.slopes) {
                            *x += s[i];
                        }
                    }
                }
                let other = intern(shifted, &mut parent);
                let (ra, rb) = (find(&mut parent, id), find(&mut parent, other));
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let root = index
            .iter()
            .map(|(c, &i)| (c.clone(), find(&mut parent, i)))
            .collect();
        CosetCells { base, root }
    }

    fn grid_coords(&self, base: &TorusElement, theta: &TorusElement) -> Option<Vec<i64>> {
        let diff = theta.sub(base);
        let target: Vec<i64> = diff
            .coords()
            .iter()
            .map(|c| i64::try_from(&(c * from_int(self.n)).to_integer()).unwrap())
            .collect();
        let solves = |u: &[i64]| {
            (0..target.len()).all(|j| {
                (self
                    .dirs
                    .iter()
                    .zip(u)
                    .map(|(v, ui)| v[j] * ui)
                    .sum::<i64>()
                    - target[j])
                    .rem_euclid(self.n)
                    == 0
            })
        };
        match self.dirs.len() {
            0 => diff.is_zero().then(Vec::new),
            1 => (0..self.n).map(|t| vec![t]).find(|u| solves(u)),
            // two directions only arise as the standard basis of the 2-torus
            _ => Some(target.iter().map(|x| x.rem_euclid(self.n)).collect()),
        }
    }

    /// `(coset index, component id)` of a point in one of these classes.
    fn component(&mut self, theta: &TorusElement) -> (usize, usize) {
        let ci = match self
            .cosets
            .iter()
            .position(|c| self.grid_coords(&c.base, theta).is_some())
        {
            Some(ci) => ci,
            None => {
                let c = self.build(theta.clone());
                self.cosets.push(c);
                self.cosets.len() - 1
            }
        };
        let c = &self.cosets[ci];
        let u = self.grid_coords(&c.base, theta).unwrap();
        let cell = self
            .cell(&self.values(&self.scaled_base(&c.base), &u))
            .expect("sample lies in its class");
        (ci, c.root[&cell])
    }
}

/// Primitive integer vectors spanning the common kernel of `rows` in `Z^k`,
/// `k ≤ 2`; a single vector is found by search.
fn kernel_directions(rows: &[Vec<i64>], k: usize, bound: i64) -> Option<Vec<Vec<i64>>> {
    let kills = |v: &[i64]| {
        rows.iter()
            .all(|w| w.iter().zip(v).map(|(a, b)| a * b).sum::<i64>() == 0)
    };
    let standard: Vec<Vec<i64>> = (0..k)
        .map(|i| (0..k).map(|j| i64::from(i == j)).collect())
        .collect();
    if standard.iter().all(|v| kills(v)) {
        return Some(standard);
    }
    if k == 1 {
        return Some(Vec::new());
    }
    let mut best: Option<Vec<i64>> = None;
    for x in -bound..=bound {
        for y in -bound..=bound {
            let v = vec![x, y];
            let lead_ok = x > 0 || (x == 0 && y > 0);
            if lead_ok
                && x.gcd(&y) == 1
                && kills(&v)
                && best
                    .as_ref()
                    .is_none_or(|b| x.abs() + y.abs() < b[0].abs() + b[1].abs())
            {
                best = Some(v);
            }
        }
    }
    Some(best.map_or_else(Vec::new, |v| vec![v]))
}

type TorusLabel = (Vec<Vec<i64>>, Vec<usize>, usize, usize);

fn torus_oracle(
    s: &Stratification,
    a: &TorusLinearAction,
    d: usize,
    budget: usize,
) -> Result<OracleReport> {
    let k = a.rank();
    if k > 2 {
        return Err(Error::Config(
            "sampling oracle supports torus rank at most 2".into(),
        ));
    }
    let angles: Vec<Rational> = sample_values(d)
        .into_iter()
        .filter(|v| !v.is_negative() && *v < from_int(1))
        .collect();
    // the action rotates each coordinate, so a zero and two distinct nonzero values per slot suffice
    let zvals: Vec<(Rational, Rational)> = vec![
        (Rational::zero(), Rational::zero()),
        (from_int(1), Rational::zero()),
        (rat(-1, 2), rat(1, d as i64)),
    ];
    let rvals = [Rational::zero(), rat(1, d as i64)];
    let nc = a.complex_dim();
    let npoints = zvals.len().pow(nc as u32) * rvals.len().pow(a.real_dim() as u32);
    let ngroup = angles.len().pow(k as u32);
    if npoints.saturating_mul(ngroup) > budget {
        return Err(Error::SampleBudgetExceeded { budget });
    }
    let wmax = a
        .weights()
        .iter()
        .flatten()
        .map(|w| w.abs())
        .max()
        .unwrap_or(1)
        .max(1);
    let l = lcm_upto(d);
    let thetas: Vec<TorusElement> = (0..ngroup)
        .map(|mut i| {
            TorusElement::new(
                (0..k)
                    .map(|_| {
                        let v = angles[i % angles.len()].clone();
                        i /= angles.len();
                        v
                    })
                    .collect(),
            )
        })
        .collect();
    let points: Vec<Vec<Rational>> = (0..npoints)
        .map(|mut i| {
            let mut x = Vec::with_capacity(a.dim());
            for _ in 0..nc {
                let (re, im) = zvals[i % zvals.len()].clone();
                i /= zvals.len();
                x.push(re);
                x.push(im);
            }
            for _ in 0..a.real_dim() {
                x.push(rvals[i % rvals.len()].clone());
                i /= rvals.len();
            }
            x
        })
        .collect();
    let mut grids: BTreeMap<Vec<usize>, CellGrid> = BTreeMap::new();
    let mut rows: Vec<(TorusLabel, usize)> = Vec::new();
    for x in &points {
        let supp: Vec<usize> = (0..nc)
            .filter(|&j| !(x[2 * j].is_zero() && x[2 * j + 1].is_zero()))
            .collect();
        let ann = a.support_isotropy(&supp).annihilator().basis().clone();
        for theta in &thetas {
            let fixed: Vec<usize> = (0..nc)
                .filter(|&j| theta.pair(&a.weights()[j]).is_integer())
                .collect();
            if !supp.iter().all(|j| fixed.binary_search(j).is_ok()) {
                continue;
            }
            if !grids.contains_key(&fixed) {
                let rows_f: Vec<Vec<i64>> = fixed.iter().map(|&j| a.weights()[j].clone()).collect();
                let dirs = kernel_directions(&rows_f, k, 4 * wmax)
                    .ok_or_else(|| Error::Config("no kernel direction".into()))?;
                grids.insert(fixed.clone(), CellGrid::new(a, l, dirs, &fixed));
            }
            let (ci, comp) = grids.get_mut(&fixed).unwrap().component(theta);
            let (_, cid) = s.stratum_of_point(&GroupElement::Torus(theta.clone()), x)?;
            rows.push(((ann.clone(), fixed, ci, comp), cid));
        }
    }
    let samples = rows.len();
    let lx: Vec<(TorusLabel, usize)> = rows
        .iter()
        .map(|(l, c)| (l.clone(), s.components[*c].stratum))
        .collect();
    Ok(summarize(d, samples, s, rows, lx))
}
