//! Dense Gaussian elimination over `Q` or `F_p`.

use crate::error::{Error, Result};
use crate::scalar::{Ring, Scalar};

/// Row-major matrix over a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    ring: Ring,
    cols: usize,
    rows: Vec<Vec<Scalar>>,
}

/// Solution set `particular + span(kernel)` of an affine system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<Scalar>,
    pub kernel: Vec<Vec<Scalar>>,
}

/// Field used to eliminate over a ring; integers are handled over their fraction field.
pub fn field_of(ring: Ring) -> Ring {
    match ring {
        Ring::Integer => Ring::Rational,
        r => r,
    }
}

impl Matrix {
    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Result<Matrix> {
        if !ring.is_field() {
            return Err(Error::UnsupportedInput("elimination needs a field".into()));
        }
        Ok(Matrix { ring, cols, rows: vec![vec![ring.zero(); cols]; rows] })
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.rows[r][c] = v;
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.rows[r][c]
    }

    /// Reduces in place to reduced row echelon form, returning the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows.len() {
                break;
            }
            let Some(pr) = (r..self.rows.len()).find(|&i| !self.rows[i][c].is_zero()) else {
                continue;
            };
            self.rows.swap(r, pr);
            let inv = self.rows[r][c].inv().expect("field element");
            for v in self.rows[r].iter_mut() {
                *v = v.mul(&inv);
            }
            let pivot_row = self.rows[r].clone();
            for (i, row) in self.rows.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row).skip(c) {
                    if !pv.is_zero() {
                        *v = v.sub(&f.mul(pv));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        // drop zero rows
        self.rows.truncate(r);
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{v : Mv = 0}`, one vector per free column, in increasing free-column order.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.ring.zero(); self.cols];
                v[f] = self.ring.one();
                for (row, &pc) in m.rows.iter().zip(&pivots) {
                    v[pc] = row[f].neg();
                }
                v
            })
            .collect()
    }

    /// Solves `Mv = rhs`; `None` when the system is inconsistent.
    pub fn solve(&self, rhs: &[Scalar]) -> Option<AffineSolution> {
        assert_eq!(rhs.len(), self.rows.len(), "right-hand side length");
        let mut aug = self.clone();
        aug.cols += 1;
        for (row, b) in aug.rows.iter_mut().zip(rhs) {
            row.push(b.clone());
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut particular = vec![self.ring.zero(); self.cols];
        for (row, &pc) in aug.rows.iter().zip(&pivots) {
            particular[pc] = row[self.cols].clone();
        }
        Some(AffineSolution { particular, kernel: self.kernel() })
    }
}

/// Row-reduces a list of vectors so that each has leading entry 1 and the leading
/// positions are cleared in every other vector.
pub fn echelon_basis(ring: Ring, vectors: &[Vec<Scalar>], len: usize) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let mut m = Matrix { ring, cols: len, rows: vectors.to_vec() };
    m.rref();
    m.rows
}
