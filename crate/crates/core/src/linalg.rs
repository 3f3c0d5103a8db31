//! Dense matrices over the rationals.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    #[serde(with = "crate::json::rational_grid")]
    data: Vec<Vec<Rational>>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![vec![Rational::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows of equal length. `cols` is used when there
    /// are no rows.
    pub fn from_rows(data: Vec<Vec<Rational>>, cols: usize) -> Result<Self> {
        if let Some(bad) = data.iter().find(|r| r.len() != cols) {
            return Err(Error::DegreeMismatch { expected: cols as u32, found: bad.len() as u32 });
        }
        Ok(Matrix { rows: data.len(), cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r][c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                t.data[j][i] = v.clone();
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self.data[i][j] == self.data[j][i]))
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DegreeMismatch { expected: self.cols as u32, found: other.rows as u32 });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for (k, a) in self.data[i].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].recip();
            for v in m[r].iter_mut().skip(c) {
                *v *= &inv;
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                    if !p.is_zero() {
                        *v -= &f * p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (Matrix { rows: self.rows, cols: self.cols, data: m }, pivots)
    }

    pub fn rank(&self) -> usize {
        // eliminate along the shorter side
        if self.rows > self.cols {
            return self.transpose().rank();
        }
        self.rref().1.len()
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::Degenerate("non-square matrix has no inverse".into()));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i][j] = self.data[i][j].clone();
            }
            aug.data[i][n + i] = Rational::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Degenerate("singular matrix".into()));
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            inv.data[i] = r.data[i][n..].to_vec();
        }
        Ok(inv)
    }

    /// Some solution of `self · x = b`, or `None` if the system is
    /// inconsistent. Free variables are set to zero.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows, "dimension mismatch");
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for (i, bi) in b.iter().enumerate() {
            aug.data[i][..self.cols].clone_from_slice(&self.data[i]);
            aug.data[i][self.cols] = bi.clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = r.data[i][self.cols].clone();
        }
        Some(x)
    }

    /// Rows forming a basis of the row space, chosen greedily top-down.
    pub fn independent_rows(&self) -> Vec<usize> {
        self.transpose().rref().1
    }
}

/// Left inverse of a full-column-rank matrix, built from a square invertible
/// subset of its rows.
#[derive(Clone, Debug)]
pub struct LeftInverse {
    matrix: Matrix,
    rows: Vec<usize>,
    inv: Matrix,
}

impl LeftInverse {
    pub fn new(matrix: Matrix) -> Result<Self> {
        let rows = matrix.independent_rows();
        if rows.len() != matrix.cols() {
            return Err(Error::Degenerate(format!("matrix has rank {} < {} columns", rows.len(), matrix.cols())));
        }
        let sub = Matrix::from_rows(rows.iter().map(|&r| matrix.row(r).to_vec()).collect(), matrix.cols())?;
        let inv = sub.inverse()?;
        Ok(LeftInverse { matrix, rows, inv })
    }

    /// The unique `x` with `matrix · x = b`, or `None` when `b` lies outside
    /// the column space.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        let picked: Vec<Rational> = self.rows.iter().map(|&r| b[r].clone()).collect();
        let x = self.inv.mul_vec(&picked);
        (self.matrix.mul_vec(&x) == b).then_some(x)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect(), cols).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(m(&[&[0, 0], &[0, 0]]).rank(), 0);
        assert_eq!(m(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]).rank(), 3);
        assert_eq!(m(&[&[1], &[2], &[3]]).rank(), 1);
    }

    #[test]
    fn inverse_and_solve() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(2));
        assert_eq!(a.solve(&[rat(3), rat(2)]), Some(vec![rat(1), rat(1)]));
        assert!(m(&[&[1, 1], &[1, 1]]).inverse().is_err());
        assert_eq!(m(&[&[1, 1], &[1, 1]]).solve(&[rat(1), rat(2)]), None);
    }

    #[test]
    fn left_inverse_detects_out_of_span() {
        let a = m(&[&[1, 0], &[1, 1], &[0, 1]]);
        let li = LeftInverse::new(a).unwrap();
        assert_eq!(li.solve(&[rat(1), rat(3), rat(2)]), Some(vec![rat(1), rat(2)]));
        assert_eq!(li.solve(&[rat(1), rat(0), rat(2)]), None);
        assert!(LeftInverse::new(m(&[&[1, 2], &[2, 4]])).is_err());
    }

    proptest! {
        #[test]
        fn rank_is_transpose_invariant(v in prop::collection::vec(-3i64..=3, 12)) {
            let a = Matrix::from_rows(v.chunks(4).map(|r| r.iter().map(|&x| rat(x)).collect()).collect(), 4).unwrap();
            prop_assert_eq!(a.rank(), a.transpose().rank());
            prop_assert_eq!(a.rank(), a.rref().1.len());
        }

        #[test]
        fn solve_solves(v in prop::collection::vec(-3i64..=3, 9), x in prop::collection::vec(-3i64..=3, 3)) {
            let a = Matrix::from_rows(v.chunks(3).map(|r| r.iter().map(|&x| rat(x)).collect()).collect(), 3).unwrap();
            let x: Vec<Rational> = x.into_iter().map(rat).collect();
            let b = a.mul_vec(&x);
            let y = a.solve(&b).unwrap();
            prop_assert_eq!(a.mul_vec(&y), b);
        }
    }
}
