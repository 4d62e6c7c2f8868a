//! Dense square-ish matrices over exact scalars.
//!
//! Just what the lattice and isometry code needs: multiplication, transpose,
//! matrix-vector application and row access for rank-one updates. Row-major.

use std::ops::{AddAssign, Mul};

use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [T] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn map<U: Clone + Zero>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + AddAssign<T> + PartialEq,
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    pub fn identity(n: usize, one: T) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, one.clone());
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if *a == T::zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * other.get(k, j);
                    out.data[i * other.cols + j] += prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        let mut out = vec![T::zero(); self.rows];
        for i in 0..self.rows {
            let row = self.row(i);
            let mut acc = T::zero();
            for (a, b) in row.iter().zip(v) {
                acc += a * b;
            }
            out[i] = acc;
        }
        out
    }
}

/// Dot product of two coordinate slices.
pub fn dot<T>(a: &[T], b: &[T]) -> T
where
    T: Zero + AddAssign<T>,
    for<'x> &'x T: Mul<&'x T, Output = T>,
{
    assert_eq!(a.len(), b.len(), "dot dimension mismatch");
    let mut acc = T::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, Int};

    #[test]
    fn multiply_against_hand_computation() {
        let a: Matrix<Int> = Matrix::from_rows(vec![
            vec![int(1), int(2)],
            vec![int(3), int(4)],
        ]);
        let b: Matrix<Int> = Matrix::from_rows(vec![
            vec![int(0), int(1)],
            vec![int(1), int(1)],
        ]);
        let ab = a.mul(&b);
        assert_eq!(ab, Matrix::from_rows(vec![
            vec![int(2), int(3)],
            vec![int(4), int(7)],
        ]));
        assert_eq!(a.mul_vec(&[int(1), int(-1)]), vec![int(-1), int(-1)]);
        assert_eq!(a.transpose().get(0, 1), &int(3));
    }
}
