//! Dense square-ish matrices over a scalar field, just enough for
//! left-multiplication maps and small linear solves.

use std::ops::{Index, IndexMut};

use crate::scalar::{Scalar, ToleranceContext};

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul_vec(&self, x: &[S]) -> Vec<S> {
        assert_eq!(x.len(), self.cols, "vector length must match column count");
        (0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .zip(x)
                    .fold(S::zero(), |acc, (m, v)| acc + m.clone() * v.clone())
            })
            .collect()
    }

    /// Solves `self · x = rhs` by Gaussian elimination with partial
    /// pivoting. Returns `None` when the matrix is singular: exactly in
    /// exact mode, or when a pivot falls below `ctx` relative to the largest
    /// entry in float mode.
    pub fn solve(&self, rhs: &[S], ctx: &ToleranceContext) -> Option<Vec<S>> {
        assert_eq!(self.rows, self.cols, "solve needs a square matrix");
        assert_eq!(rhs.len(), self.rows);
        let n = self.rows;
        let scale = self
            .data
            .iter()
            .map(|c| c.to_f64().abs())
            .fold(0.0, f64::max);
        let mut a = self.data.clone();
        let mut b = rhs.to_vec();

        for col in 0..n {
            let pivot = (col..n)
                .filter(|&r| !a[r * n + col].is_zero())
                .max_by(|&r, &s| {
                    a[r * n + col]
                        .to_f64()
                        .abs()
                        .total_cmp(&a[s * n + col].to_f64().abs())
                })?;
            if a[pivot * n + col].is_negligible(ctx, scale) {
                return None;
            }
            if pivot != col {
                for k in 0..n {
                    a.swap(pivot * n + k, col * n + k);
                }
                b.swap(pivot, col);
            }
            let p = a[col * n + col].clone();
            for r in col + 1..n {
                let factor = a[r * n + col].clone() / p.clone();
                if factor.is_zero() {
                    continue;
                }
                for k in col..n {
                    let delta = factor.clone() * a[col * n + k].clone();
                    a[r * n + k] = a[r * n + k].clone() - delta;
                }
                b[r] = b[r].clone() - factor * b[col].clone();
            }
        }

        let mut x = vec![S::zero(); n];
        for r in (0..n).rev() {
            let mut acc = b[r].clone();
            for k in r + 1..n {
                acc = acc - a[r * n + k].clone() * x[k].clone();
            }
            x[r] = acc / a[r * n + r].clone();
        }
        Some(x)
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;

    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn solves_exactly() {
        let mut m = Matrix::<Rational>::zeros(3, 3);
        let entries = [[0, 2, 1], [1, 1, 0], [3, 0, -1]];
        for (i, row) in entries.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = Rational::from_i64(v);
            }
        }
        let x: Vec<Rational> = [1, -2, 5].iter().map(|&v| Rational::from_i64(v)).collect();
        let b = m.mul_vec(&x);
        assert_eq!(m.solve(&b, &ToleranceContext::exact()).unwrap(), x);
    }

    #[test]
    fn detects_singular() {
        let mut m = Matrix::<f64>::zeros(2, 2);
        m[(0, 0)] = 1.0;
        m[(0, 1)] = 2.0;
        m[(1, 0)] = 2.0;
        m[(1, 1)] = 4.0;
        assert!(m.solve(&[1.0, 1.0], &ToleranceContext::default()).is_none());
    }
}
