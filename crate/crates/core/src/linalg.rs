//! Dense exact Gaussian elimination.

use crate::scalars::Scalar;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<S>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(p) = (rank..self.rows).find(|&r| !self.get(r, c).is_zero()) else {
                continue;
            };
            if p != rank {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, rank * self.cols + j);
                }
            }
            let inv = self.get(rank, c).inverse().expect("nonzero pivot");
            for j in c..self.cols {
                let v = self.get(rank, j).clone() * inv.clone();
                self.set(rank, j, v);
            }
            let pivot_row: Vec<S> = self.row(rank).to_vec();
            for r in 0..self.rows {
                if r == rank {
                    continue;
                }
                let f = self.get(r, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    if pivot_row[j].is_zero() {
                        continue;
                    }
                    let v = self.get(r, j).clone() - f.clone() * pivot_row[j].clone();
                    self.set(r, j, v);
                }
            }
            pivots.push(c);
            rank += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{x : A x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<S>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![S::zero(); self.cols];
                v[f] = S::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -m.get(r, f).clone();
                }
                v
            })
            .collect()
    }

    /// One solution of `A x = b` (free variables set to zero), or `None`.
    pub fn solve(&self, b: &[S]) -> Option<Vec<S>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![S::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }

    pub fn mul_vec(&self, x: &[S]) -> Vec<S> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, Rational};

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        let cols = rows[0].len();
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect(), cols)
    }

    #[test]
    fn rank_and_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(a.mul_vec(&ns[0]).iter().all(|x| x == &int(0)));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = m(&[&[1, 1], &[1, -1]]);
        let x = a.solve(&[int(3), int(1)]).unwrap();
        assert_eq!(x, vec![int(2), int(1)]);
        let b = m(&[&[1, 1], &[2, 2]]);
        assert!(b.solve(&[int(1), int(3)]).is_none());
        assert_eq!(b.solve(&[int(1), int(2)]).unwrap(), vec![int(1), int(0)]);
    }

    #[test]
    fn full_rank_has_trivial_nullspace() {
        let a = m(&[&[2, 0], &[0, 3], &[1, 1]]);
        assert_eq!(a.rank(), 2);
        assert!(a.nullspace().is_empty());
    }
}
