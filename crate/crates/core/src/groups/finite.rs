use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::QMatrix;

/// A finite subgroup of `GL(n, Q)` with full multiplication table.
///
/// Elements are numbered breadth-first from the identity (index 0); within
/// one breadth-first level they are sorted by matrix entries.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    degree: usize,
    elements: Vec<QMatrix>,
    index: HashMap<QMatrix, usize>,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    generators: Vec<usize>,
}

/// A subgroup as a sorted set of element indices of its parent.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteSubgroup {
    members: Vec<usize>,
}

impl FiniteGroup {
    pub fn generate(generators: &[QMatrix], order_cap: usize) -> Result<Self> {
        let degree = generators.first().map_or(0, QMatrix::rows);
        Self::generate_with_degree(degree, generators, order_cap)
    }

    pub fn trivial(degree: usize) -> Self {
        Self::generate_with_degree(degree, &[], 1).expect("trivial group")
    }

    pub fn generate_with_degree(
        degree: usize,
        generators: &[QMatrix],
        order_cap: usize,
    ) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if !g.is_square() {
                return Err(Error::NonSquareGenerator {
                    index: i,
                    rows: g.rows(),
                    cols: g.cols(),
                });
            }
            if g.rows() != degree {
                return Err(Error::DimensionMismatch {
                    expected: degree,
                    found: g.rows(),
                });
            }
            if g.inverse().is_none() {
                return Err(Error::NonInvertibleGenerator { index: i });
            }
        }
        let mut elements = vec![QMatrix::identity(degree)];
        let mut index: HashMap<QMatrix, usize> = HashMap::new();
        index.insert(elements[0].clone(), 0);
        let mut frontier = vec![0usize];
        while !frontier.is_empty() {
            let mut level: BTreeSet<QMatrix> = BTreeSet::new();
            for &e in &frontier {
                for g in generators {
                    let p = elements[e].mul(g);
                    if !index.contains_key(&p) {
                        level.insert(p);
                    }
                }
            }
            frontier.clear();
            for m in level {
                if elements.len() >= order_cap {
                    return Err(Error::OrderCapExceeded { cap: order_cap });
                }
                index.insert(m.clone(), elements.len());
                frontier.push(elements.len());
                elements.push(m);
            }
        }
        let mul: Vec<Vec<usize>> = elements
            .par_iter()
            .map(|a| elements.iter().map(|b| index[&a.mul(b)]).collect())
            .collect();
        let inv = (0..elements.len())
            .map(|a| {
                mul[a]
                    .iter()
                    .position(|&p| p == 0)
                    .expect("finite group has inverses")
            })
            .collect();
        let gen_idx = generators.iter().map(|g| index[g]).collect();
        Ok(FiniteGroup {
            degree,
            elements,
            index,
            mul,
            inv,
            generators: gen_idx,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn element(&self, i: usize) -> &QMatrix {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[QMatrix] {
        &self.elements
    }

    /// Indices of the generators used to build the group.
    pub fn generator_indices(&self) -> &[usize] {
        &self.generators
    }

    pub fn index_of(&self, m: &QMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `g x g⁻¹`.
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul[self.mul[g][x]][self.inv[g]]
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut p = a;
        while p != 0 {
            p = self.mul[p][a];
            k += 1;
        }
        k
    }

    pub fn whole(&self) -> FiniteSubgroup {
        FiniteSubgroup {
            members: (0..self.order()).collect(),
        }
    }

    pub fn trivial_subgroup(&self) -> FiniteSubgroup {
        FiniteSubgroup { members: vec![0] }
    }

    /// Smallest subgroup containing `gens`.
    pub fn subgroup_generated(&self, gens: &[usize]) -> FiniteSubgroup {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(a) = stack.pop() {
            for &g in gens {
                let p = self.mul[a][g];
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        FiniteSubgroup::from_flags(&seen)
    }

    /// Conjugacy classes, each sorted, ordered by smallest member.
    pub fn conjugacy_partition(&self) -> Vec<Vec<usize>> {
        self.conjugacy_partition_in(&self.whole())
    }

    /// Classes of `sub` under conjugation by `sub`.
    pub fn conjugacy_partition_in(&self, sub: &FiniteSubgroup) -> Vec<Vec<usize>> {
        let mut done = vec![false; self.order()];
        let mut classes = Vec::new();
        for &x in &sub.members {
            if done[x] {
                continue;
            }
            let class: BTreeSet<usize> = sub.members.iter().map(|&g| self.conj(g, x)).collect();
            for &c in &class {
                done[c] = true;
            }
            classes.push(class.into_iter().collect());
        }
        classes
    }

    pub fn centralizer(&self, x: usize) -> FiniteSubgroup {
        self.centralizer_in(&self.whole(), x)
    }

    /// `{y ∈ sub : yx = xy}`.
    pub fn centralizer_in(&self, sub: &FiniteSubgroup, x: usize) -> FiniteSubgroup {
        FiniteSubgroup {
            members: sub
                .members
                .iter()
                .copied()
                .filter(|&y| self.mul[y][x] == self.mul[x][y])
                .collect(),
        }
    }

    pub fn normalizer_in(&self, s: &FiniteSubgroup) -> FiniteSubgroup {
        self.normalizer_within(&self.whole(), s)
    }

    /// `{y ∈ within : y s y⁻¹ = s}`.
    pub fn normalizer_within(&self, within: &FiniteSubgroup, s: &FiniteSubgroup) -> FiniteSubgroup {
        FiniteSubgroup {
            members: within
                .members
                .iter()
                .copied()
                .filter(|&y| s.members.iter().all(|&m| s.contains(self.conj(y, m))))
                .collect(),
        }
    }

    pub fn conjugate_subgroup(&self, g: usize, s: &FiniteSubgroup) -> FiniteSubgroup {
        let mut members: Vec<usize> = s.members.iter().map(|&m| self.conj(g, m)).collect();
        members.sort_unstable();
        FiniteSubgroup { members }
    }

    /// Checks associativity on every triple (or `samples` random-ish triples
    /// for large groups), identity and inverse laws.
    pub fn check_axioms(&self) -> bool {
        let n = self.order();
        let triples: Vec<(usize, usize, usize)> = if n <= 64 {
            (0..n)
                .flat_map(|a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))))
                .collect()
        } else {
            (0..4096)
                .map(|i| {
                    (
                        (i * 7919) % n,
                        (i * 104_729 + 1) % n,
                        (i * 1_299_709 + 2) % n,
                    )
                })
                .collect()
        };
        triples
            .iter()
            .all(|&(a, b, c)| self.mul[self.mul[a][b]][c] == self.mul[a][self.mul[b][c]])
            && (0..n).all(|a| {
                self.mul[0][a] == a && self.mul[a][0] == a && self.mul[a][self.inv[a]] == 0
            })
    }
}

impl FiniteSubgroup {
    pub fn from_members(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        FiniteSubgroup { members }
    }

    fn from_flags(flags: &[bool]) -> Self {
        FiniteSubgroup {
            members: flags
                .iter()
                .enumerate()
                .filter(|(_, &f)| f)
                .map(|(i, _)| i)
                .collect(),
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &FiniteSubgroup) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    pub fn intersect(&self, other: &FiniteSubgroup) -> FiniteSubgroup {
        FiniteSubgroup {
            members: self
                .members
                .iter()
                .copied()
                .filter(|&m| other.contains(m))
                .collect(),
        }
    }

    pub fn is_closed(&self, g: &FiniteGroup) -> bool {
        self.contains(0)
            && self.members.iter().all(|&a| {
                self.contains(g.inv(a)) && self.members.iter().all(|&b| self.contains(g.mul(a, b)))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(p: &[usize]) -> QMatrix {
        let n = p.len();
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|r| (0..n).map(|c| i64::from(p[c] == r)).collect())
            .collect();
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        QMatrix::from_i64(&refs)
    }

    fn s3() -> FiniteGroup {
        FiniteGroup::generate(&[perm(&[1, 0, 2]), perm(&[1, 2, 0])], 100).unwrap()
    }

    #[test]
    fn generation() {
        let c4 = FiniteGroup::generate(&[QMatrix::from_i64(&[&[0, -1], &[1, 0]])], 100).unwrap();
        assert_eq!(c4.order(), 4);
        assert!(c4.check_axioms());
        assert_eq!(s3().order(), 6);
        assert!(s3().check_axioms());
        let err =
            FiniteGroup::generate(&[QMatrix::from_i64(&[&[2, 0], &[0, 1]])], 100).unwrap_err();
        assert!(matches!(err, Error::OrderCapExceeded { cap: 100 }));
        let err =
            FiniteGroup::generate(&[QMatrix::from_i64(&[&[1, 1], &[1, 1]])], 100).unwrap_err();
        assert!(matches!(err, Error::NonInvertibleGenerator { index: 0 }));
    }

    #[test]
    fn classes() {
        let c4 = FiniteGroup::generate(&[QMatrix::from_i64(&[&[0, -1], &[1, 0]])], 100).unwrap();
        assert_eq!(c4.conjugacy_partition().len(), 4);
        let g = s3();
        // brute force: x ~ y iff some g with gxg⁻¹ = y
        let part = g.conjugacy_partition();
        for class in &part {
            for &x in class {
                for y in 0..6 {
                    let conj = (0..6).any(|h| g.conj(h, x) == y);
                    assert_eq!(conj, class.contains(&y));
                }
            }
        }
        let mut sizes: Vec<usize> = part.iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(FiniteGroup::trivial(2).conjugacy_partition(), vec![vec![0]]);
    }

    #[test]
    fn centralizers_and_normalizers() {
        let g = s3();
        let t = g.index_of(&perm(&[1, 0, 2])).unwrap();
        let r = g.index_of(&perm(&[1, 2, 0])).unwrap();
        assert_eq!(g.centralizer(t), FiniteSubgroup::from_members(vec![0, t]));
        assert_eq!(g.centralizer(0), g.whole());
        let rot = g.subgroup_generated(&[r]);
        assert_eq!(rot.order(), 3);
        assert_eq!(g.normalizer_in(&rot), g.whole());
        let refl = g.subgroup_generated(&[t]);
        assert_eq!(g.normalizer_in(&refl), refl);
        assert_eq!(g.normalizer_in(&g.trivial_subgroup()), g.whole());
        for x in 0..6 {
            assert!(g.subgroup_generated(&[x]).is_subgroup_of(&g.centralizer(x)));
            assert!(g.centralizer(x).is_closed(&g));
        }
    }

    #[test]
    fn deterministic_order() {
        let a = s3();
        let b = s3();
        assert_eq!(a.elements(), b.elements());
        assert_eq!(a.element(0), &QMatrix::identity(3));
    }
}
