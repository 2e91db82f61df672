use num_integer::Integer;

use super::rational::{dot_int, is_integer, Rational};
use crate::error::{Error, Result};

/// Integer matrix as a list of rows.
pub type IntMatrix = Vec<Vec<i64>>;

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

fn axpy_row(target: &mut [i64], q: i64, source: &[i64]) {
    for (t, s) in target.iter_mut().zip(source) {
        *t -= q * s;
    }
}

/// Row-style Hermite normal form `H = U·A` with `U` unimodular.
///
/// Pivots are positive, entries above a pivot lie in `[0, pivot)` and zero
/// rows are moved to the bottom, so `H` is unique for the row lattice.
pub fn hnf_with_transform(a: &IntMatrix, cols: usize) -> (IntMatrix, IntMatrix) {
    let m = a.len();
    let mut h = a.clone();
    let mut u = identity(m);
    let mut row = 0;
    for col in 0..cols {
        if row == m {
            break;
        }
        loop {
            let Some(p) = (row..m)
                .filter(|&r| h[r][col] != 0)
                .min_by_key(|&r| h[r][col].abs())
            else {
                break;
            };
            h.swap(p, row);
            u.swap(p, row);
            let mut clean = true;
            for r in row + 1..m {
                if h[r][col] != 0 {
                    let q = num_integer::Integer::div_floor(&h[r][col], &h[row][col]);
                    let (hp, ur) = (h[row].clone(), u[row].clone());
                    axpy_row(&mut h[r], q, &hp);
                    axpy_row(&mut u[r], q, &ur);
                    clean &= h[r][col] == 0;
                }
            }
            if clean {
                break;
            }
        }
        if h[row][col] == 0 {
            continue;
        }
        if h[row][col] < 0 {
            h[row].iter_mut().for_each(|x| *x = -*x);
            u[row].iter_mut().for_each(|x| *x = -*x);
        }
        for r in 0..row {
            let q = num_integer::Integer::div_floor(&h[r][col], &h[row][col]);
            if q != 0 {
                let (hp, ur) = (h[row].clone(), u[row].clone());
                axpy_row(&mut h[r], q, &hp);
                axpy_row(&mut u[r], q, &ur);
            }
        }
        row += 1;
    }
    (h, u)
}

/// Nonzero rows of the Hermite normal form of the row lattice of `a`.
pub fn hermite_normal_form(a: &IntMatrix, cols: usize) -> IntMatrix {
    let (h, _) = hnf_with_transform(a, cols);
    h.into_iter()
        .filter(|r| r.iter().any(|&x| x != 0))
        .collect()
}

/// Basis (in Hermite form) of `{y ∈ Z^m : y·A = 0}` for an `m × cols` matrix.
pub fn left_integer_kernel(a: &IntMatrix, cols: usize) -> IntMatrix {
    let (h, u) = hnf_with_transform(a, cols);
    let kernel: IntMatrix = h
        .iter()
        .zip(u)
        .filter(|(row, _)| row.iter().all(|&x| x == 0))
        .map(|(_, urow)| urow)
        .collect();
    hermite_normal_form(&kernel, a.len())
}

/// Smith and Hermite data of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithHermite {
    /// Diagonal of the Smith form, `min(rows, cols)` entries with
    /// `d₁ | d₂ | …` (trailing zeros for rank deficiency).
    pub invariant_factors: Vec<i64>,
    /// Hermite normal form of the row lattice (nonzero rows).
    pub hnf: IntMatrix,
    /// Unimodular row transform, `rows × rows`.
    pub left: IntMatrix,
    /// Unimodular column transform, `cols × cols`.
    pub right: IntMatrix,
}

/// Smith normal form with transforms: `left · m · right = diag(invariant_factors)`.
pub fn smith_hermite(m: &IntMatrix, cols: usize) -> SmithHermite {
    let rows = m.len();
    let mut d = m.clone();
    let mut left = identity(rows);
    let mut right = identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if d[i][j] != 0 && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            d.swap(t, pi);
            left.swap(t, pi);
            for row in d.iter_mut() {
                row.swap(t, pj);
            }
            for row in right.iter_mut() {
                row.swap(t, pj);
            }
            let mut dirty = false;
            for i in t + 1..rows {
                if d[i][t] != 0 {
                    let q = num_integer::Integer::div_floor(&d[i][t], &d[t][t]);
                    let (dt, lt) = (d[t].clone(), left[t].clone());
                    axpy_row(&mut d[i], q, &dt);
                    axpy_row(&mut left[i], q, &lt);
                    dirty |= d[i][t] != 0;
                }
            }
            for j in t + 1..cols {
                if d[t][j] != 0 {
                    let q = num_integer::Integer::div_floor(&d[t][j], &d[t][t]);
                    for row in d.iter_mut() {
                        row[j] -= q * row[t];
                    }
                    for row in right.iter_mut() {
                        row[j] -= q * row[t];
                    }
                    dirty |= d[t][j] != 0;
                }
            }
            if dirty {
                continue;
            }
            let pivot = d[t][t];
            let offending = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| d[i][j] % pivot != 0));
            match offending {
                Some(i) => {
                    let (di, li) = (d[i].clone(), left[i].clone());
                    axpy_row(&mut d[t], -1, &di);
                    axpy_row(&mut left[t], -1, &li);
                }
                None => break,
            }
        }
        if d[t][t] < 0 {
            d[t].iter_mut().for_each(|x| *x = -*x);
            left[t].iter_mut().for_each(|x| *x = -*x);
        }
    }
    SmithHermite {
        invariant_factors: (0..rows.min(cols)).map(|i| d[i][i]).collect(),
        hnf: hermite_normal_form(m, cols),
        left,
        right,
    }
}

/// A sublattice of `Z^n` stored by its Hermite basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntLattice {
    ambient: usize,
    basis: IntMatrix,
}

impl IntLattice {
    pub fn from_generators(ambient: usize, generators: &[Vec<i64>]) -> Result<Self> {
        if let Some(bad) = generators.iter().find(|g| g.len() != ambient) {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                found: bad.len(),
            });
        }
        Ok(IntLattice {
            ambient,
            basis: hermite_normal_form(&generators.to_vec(), ambient),
        })
    }

    pub fn zero(ambient: usize) -> Self {
        IntLattice {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        IntLattice {
            ambient,
            basis: identity(ambient),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let mut rest = v.to_vec();
        for row in &self.basis {
            let p = row.iter().position(|&x| x != 0).unwrap();
            if rest[p] % row[p] != 0 {
                return false;
            }
            let q = rest[p] / row[p];
            axpy_row(&mut rest, q, row);
        }
        rest.iter().all(|&x| x == 0)
    }

    /// Lattice generated by both.
    pub fn join(&self, other: &IntLattice) -> IntLattice {
        let mut gens = self.basis.clone();
        gens.extend(other.basis.iter().cloned());
        IntLattice {
            ambient: self.ambient,
            basis: hermite_normal_form(&gens, self.ambient),
        }
    }

    /// Integer vectors orthogonal to the lattice (the integer kernel).
    pub fn orthogonal(&self) -> IntLattice {
        let transposed: IntMatrix = (0..self.ambient)
            .map(|c| self.basis.iter().map(|r| r[c]).collect())
            .collect();
        IntLattice {
            ambient: self.ambient,
            basis: left_integer_kernel(&transposed, self.basis.len()),
        }
    }

    /// `(Q ⊗ Λ) ∩ Z^n`.
    pub fn saturation(&self) -> IntLattice {
        self.orthogonal().orthogonal()
    }

    /// `{λ ∈ Λ : λ·θ ∈ Z}`.
    pub fn integral_on(&self, theta: &[Rational]) -> IntLattice {
        // y·(Bθ) ∈ Z  <=>  y·p + t·N = 0 for integers t, with p = N·Bθ.
        let values: Vec<Rational> = self.basis.iter().map(|row| dot_int(row, theta)).collect();
        let n = values
            .iter()
            .fold(num_bigint::BigInt::from(1), |acc, v| acc.lcm(v.denom()));
        let n: i64 = i64::try_from(&n).expect("denominator overflow");
        let mut column: IntMatrix = values
            .iter()
            .map(|v| {
                vec![i64::try_from(&(v * Rational::from_integer(n.into())).to_integer()).unwrap()]
            })
            .collect();
        column.push(vec![n]);
        let kernel = left_integer_kernel(&column, 1);
        let gens: IntMatrix = kernel
            .iter()
            .map(|y| {
                (0..self.ambient)
                    .map(|c| self.basis.iter().zip(y).map(|(row, yi)| row[c] * yi).sum())
                    .collect()
            })
            .collect();
        IntLattice {
            ambient: self.ambient,
            basis: hermite_normal_form(&gens, self.ambient),
        }
    }
}

/// Whether `λ·θ ∈ Z` for every generator `λ` of the lattice.
pub fn torus_integrality(lattice: &IntLattice, theta: &[Rational]) -> Result<bool> {
    if theta.len() != lattice.ambient {
        return Err(Error::DimensionMismatch {
            expected: lattice.ambient,
            found: theta.len(),
        });
    }
    Ok(lattice
        .basis
        .iter()
        .all(|row| is_integer(&dot_int(row, theta))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use proptest::prelude::*;

    fn matmul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
        let inner = b.len();
        let cols = b.first().map_or(0, |r| r.len());
        a.iter()
            .map(|row| {
                (0..cols)
                    .map(|c| (0..inner).map(|k| row[k] * b[k][c]).sum())
                    .collect()
            })
            .collect()
    }

    fn det(m: &IntMatrix) -> i64 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|j| {
                let minor: IntMatrix = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum()
    }

    #[test]
    fn smith_examples() {
        assert_eq!(
            smith_hermite(&vec![vec![2, 0], vec![0, 3]], 2).invariant_factors,
            vec![1, 6]
        );
        assert_eq!(
            smith_hermite(&vec![vec![1, 0], vec![0, 0]], 2).invariant_factors,
            vec![1, 0]
        );
    }

    /// Oracle for [[2,4],[4,8]]: subtract 2×row0 from row1, then 2×col0 from col1.
    #[test]
    fn smith_matches_elementary_operation_oracle() {
        let m = vec![vec![2, 4], vec![4, 8]];
        let oracle_left = vec![vec![1, 0], vec![-2, 1]];
        let oracle_right = vec![vec![1, -2], vec![0, 1]];
        let oracle = matmul(&matmul(&oracle_left, &m), &oracle_right);
        assert_eq!(oracle, vec![vec![2, 0], vec![0, 0]]);
        let s = smith_hermite(&m, 2);
        assert_eq!(s.invariant_factors, vec![2, 0]);
        assert_eq!(matmul(&matmul(&s.left, &m), &s.right), oracle);
        assert_eq!(det(&s.left).abs(), 1);
        assert_eq!(det(&s.right).abs(), 1);
    }

    #[test]
    fn integrality_examples() {
        let diag = IntLattice::from_generators(2, &[vec![1, -1]]).unwrap();
        assert!(torus_integrality(&diag, &[rat(1, 2), rat(1, 2)]).unwrap());
        let two = IntLattice::from_generators(1, &[vec![2]]).unwrap();
        assert!(torus_integrality(&two, &[rat(1, 2)]).unwrap());
        assert!(!torus_integrality(&two, &[rat(1, 3)]).unwrap());
        let chart = IntLattice::from_generators(2, &[vec![-1, 1], vec![0, 1]]).unwrap();
        assert!(!torus_integrality(&chart, &[rat(1, 3), rat(1, 3)]).unwrap());
        assert!(torus_integrality(&chart, &[rat(1, 3)]).is_err());
    }

    #[test]
    fn lattice_membership_and_saturation() {
        let l = IntLattice::from_generators(2, &[vec![2, 0], vec![0, 2]]).unwrap();
        assert!(l.contains(&[4, -2]));
        assert!(!l.contains(&[1, 0]));
        let l = IntLattice::from_generators(2, &[vec![2, 2]]).unwrap();
        assert_eq!(
            l.saturation(),
            IntLattice::from_generators(2, &[vec![1, 1]]).unwrap()
        );
        let int = IntLattice::full(2).integral_on(&[rat(1, 3), rat(1, 3)]);
        // {λ : (λ₁+λ₂)/3 ∈ Z}
        for a in -4..5 {
            for b in -4..5 {
                assert_eq!(int.contains(&[a, b]), (a + b) % 3 == 0);
            }
        }
    }

    fn int_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..4, 1usize..4)
            .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-5i64..6, c), r))
    }

    proptest! {
        #[test]
        fn smith_is_diagonal_and_divisible(m in int_matrix()) {
            let cols = m[0].len();
            let s = smith_hermite(&m, cols);
            let d = matmul(&matmul(&s.left, &m), &s.right);
            for (i, row) in d.iter().enumerate() {
                for (j, &x) in row.iter().enumerate() {
                    if i != j { prop_assert_eq!(x, 0); }
                }
            }
            prop_assert_eq!(det(&s.left).abs(), 1);
            prop_assert_eq!(det(&s.right).abs(), 1);
            let f = &s.invariant_factors;
            for w in f.windows(2) {
                prop_assert!(w[0] >= 0);
                if w[0] != 0 { prop_assert_eq!(w[1] % w[0], 0); } else { prop_assert_eq!(w[1], 0); }
            }
        }

        #[test]
        fn hnf_is_canonical(m in int_matrix()) {
            let cols = m[0].len();
            let h = hermite_normal_form(&m, cols);
            prop_assert_eq!(hermite_normal_form(&h, cols), h.clone());
            let l = IntLattice::from_generators(cols, &m).unwrap();
            for row in &m { prop_assert!(l.contains(row)); }
        }
    }
}
