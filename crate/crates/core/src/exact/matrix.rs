use std::fmt;

use num_traits::{One, Zero};

use super::rational::{format_rational, Rational};
use crate::error::{Error, Result};

/// Dense rational matrix, row major.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|r| self.row(r).iter().map(format_rational).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in &rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row.iter().cloned());
        }
        Ok(QMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| Rational::from_integer(x.into()))
                    .collect()
            })
            .collect();
        Self::from_rows(cols, rows).expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        let r = canonical_rref(self);
        (0..r.rows)
            .filter(|&i| r.row(i).iter().any(|x| !x.is_zero()))
            .count()
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<QMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = Rational::one();
        }
        let red = canonical_rref(&aug);
        for i in 0..n {
            if red[(i, i)] != Rational::one() {
                return None;
            }
        }
        let mut inv = Self::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = red[(r, n + c)].clone();
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        &mut self.data[r * self.cols + c]
    }
}

/// Reduced row echelon form with leading ones; zero rows are kept at the
/// bottom so the shape is preserved.
pub fn canonical_rref(m: &QMatrix) -> QMatrix {
    let mut a = m.clone();
    let mut pivot_row = 0;
    for col in 0..a.cols {
        if pivot_row == a.rows {
            break;
        }
        let Some(p) = (pivot_row..a.rows).find(|&r| !a[(r, col)].is_zero()) else {
            continue;
        };
        a.swap_rows(pivot_row, p);
        let inv = a[(pivot_row, col)].recip();
        for c in col..a.cols {
            let v = &a[(pivot_row, c)] * &inv;
            a[(pivot_row, c)] = v;
        }
        for r in 0..a.rows {
            if r == pivot_row || a[(r, col)].is_zero() {
                continue;
            }
            let factor = a[(r, col)].clone();
            for c in col..a.cols {
                let delta = &factor * &a[(pivot_row, c)];
                a[(r, c)] -= delta;
            }
        }
        pivot_row += 1;
    }
    a
}

/// A rational subspace of `Q^n`, stored by its canonical RREF basis.
///
/// Two subspaces are equal iff their bases are identical.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct QSubspace {
    ambient: usize,
    basis: QMatrix,
}

impl QSubspace {
    pub fn span(ambient: usize, vectors: &[Vec<Rational>]) -> Self {
        let m = QMatrix::from_rows(ambient, vectors.to_vec()).expect("vector length");
        let red = canonical_rref(&m);
        let rows = red
            .row_vecs()
            .into_iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        QSubspace {
            ambient,
            basis: QMatrix::from_rows(ambient, rows).unwrap(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        QSubspace {
            ambient,
            basis: QMatrix::identity(ambient),
        }
    }

    pub fn zero(ambient: usize) -> Self {
        QSubspace {
            ambient,
            basis: QMatrix::zeros(0, ambient),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &QMatrix {
        &self.basis
    }

    fn pivots(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|r| self.basis.row(r).iter().position(|x| !x.is_zero()).unwrap())
            .collect()
    }

    /// Coordinates of `v` in the canonical basis, `None` when `v` is outside.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(v.len(), self.ambient);
        let coords: Vec<Rational> = self.pivots().iter().map(|&p| v[p].clone()).collect();
        (self.point(&coords) == v).then_some(coords)
    }

    /// The point with the given coordinates in the canonical basis.
    pub fn point(&self, coords: &[Rational]) -> Vec<Rational> {
        assert_eq!(coords.len(), self.dim());
        let mut out = vec![Rational::zero(); self.ambient];
        for (r, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, b) in out.iter_mut().zip(self.basis.row(r)) {
                *o += c * b;
            }
        }
        out
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &QSubspace) -> bool {
        other.basis.row_vecs().iter().all(|r| self.contains(r))
    }

    /// Linear forms vanishing exactly on this subspace (canonical basis).
    pub fn annihilator(&self) -> QSubspace {
        kernel_subspace(&self.basis)
    }

    pub fn meet(&self, other: &QSubspace) -> QSubspace {
        subspace_meet_join(self, other)
            .expect("ambient dimension")
            .0
    }
}

/// Null space of `m` as a canonical subspace of `Q^cols`.
pub fn kernel_subspace(m: &QMatrix) -> QSubspace {
    let red = canonical_rref(m);
    let n = m.cols();
    let mut pivots = Vec::new();
    for r in 0..red.rows() {
        if let Some(p) = red.row(r).iter().position(|x| !x.is_zero()) {
            pivots.push(p);
        }
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let vectors: Vec<Vec<Rational>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -red[(r, f)].clone();
            }
            v
        })
        .collect();
    QSubspace::span(n, &vectors)
}

/// Intersection and sum of two subspaces of the same ambient space.
pub fn subspace_meet_join(a: &QSubspace, b: &QSubspace) -> Result<(QSubspace, QSubspace)> {
    if a.ambient != b.ambient {
        return Err(Error::DimensionMismatch {
            expected: a.ambient,
            found: b.ambient,
        });
    }
    let n = a.ambient;
    let mut normals = a.annihilator().basis.row_vecs();
    normals.extend(b.annihilator().basis.row_vecs());
    let meet = if normals.is_empty() {
        QSubspace::full(n)
    } else {
        kernel_subspace(&QMatrix::from_rows(n, normals)?)
    };
    let mut gens = a.basis.row_vecs();
    gens.extend(b.basis.row_vecs());
    Ok((meet, QSubspace::span(n, &gens)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use proptest::prelude::*;

    #[test]
    fn rref_examples() {
        let m = QMatrix::from_i64(&[&[2, 4], &[1, 2]]);
        assert_eq!(canonical_rref(&m), QMatrix::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(canonical_rref(&QMatrix::identity(3)), QMatrix::identity(3));
        let swap = QMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(canonical_rref(&swap), QMatrix::identity(2));
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_subspace(&QMatrix::from_i64(&[&[1, -1], &[0, 0]]));
        assert_eq!(k, QSubspace::span(2, &[vec![rat(1, 1), rat(1, 1)]]));
        let rot = QMatrix::from_i64(&[&[-1, -1], &[1, -1]]);
        assert_eq!(kernel_subspace(&rot).dim(), 0);
        assert_eq!(kernel_subspace(&QMatrix::zeros(2, 2)), QSubspace::full(2));
    }

    #[test]
    fn meet_join_examples() {
        let diag = QSubspace::span(2, &[vec![rat(1, 1), rat(1, 1)]]);
        let x = QSubspace::span(2, &[vec![rat(1, 1), rat(0, 1)]]);
        let y = QSubspace::span(2, &[vec![rat(0, 1), rat(1, 1)]]);
        assert_eq!(
            subspace_meet_join(&QSubspace::full(2), &diag).unwrap().0,
            diag
        );
        let (m, j) = subspace_meet_join(&x, &y).unwrap();
        assert_eq!(m, QSubspace::zero(2));
        assert_eq!(j, QSubspace::full(2));
        assert!(subspace_meet_join(&x, &QSubspace::full(3)).is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let m = QMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        assert_eq!(m.mul(&m.inverse().unwrap()), QMatrix::identity(2));
        assert!(QMatrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    fn small_matrix() -> impl Strategy<Value = QMatrix> {
        (1usize..4, 1usize..5).prop_flat_map(|(r, c)| {
            prop::collection::vec((-4i64..5, 1i64..4), r * c).prop_map(move |v| {
                let rows = v
                    .chunks(c)
                    .map(|ch| ch.iter().map(|&(n, d)| rat(n, d)).collect())
                    .collect();
                QMatrix::from_rows(c, rows).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rref_idempotent(m in small_matrix()) {
            let once = canonical_rref(&m);
            prop_assert_eq!(canonical_rref(&once), once);
        }

        #[test]
        fn rank_nullity(m in small_matrix()) {
            prop_assert_eq!(m.rank() + kernel_subspace(&m).dim(), m.cols());
            let k = kernel_subspace(&m);
            for v in k.basis().row_vecs() {
                prop_assert!(m.mul_vec(&v).iter().all(|x| x.is_zero()));
            }
        }

        #[test]
        fn modular_dimension(a in small_matrix(), b in small_matrix()) {
            let n = a.cols();
            prop_assume!(b.cols() == n);
            let sa = QSubspace::span(n, &a.row_vecs());
            let sb = QSubspace::span(n, &b.row_vecs());
            let (meet, join) = subspace_meet_join(&sa, &sb).unwrap();
            prop_assert_eq!(sa.dim() + sb.dim(), meet.dim() + join.dim());
            prop_assert!(sa.contains_subspace(&meet) && sb.contains_subspace(&meet));
            prop_assert!(join.contains_subspace(&sa) && join.contains_subspace(&sb));
        }
    }
}
